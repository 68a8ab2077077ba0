// Command-line front end. Talks to the library only through the C API.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dyadic_tent/dyadic_tent.h"
#include "json.hpp"

namespace {

using Json = nlohmann::json;

constexpr int kExitInputError = 2;

struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<unsigned> depth;
  std::optional<std::string> p, q, input, kind, norm;
  std::optional<int> dim;
  std::optional<double> a, lambda;
  std::optional<std::string> output;
  unsigned oracle_limit = 4;
  double tolerance = 1e-12;
  std::string format = "json";
};

struct Owned {
  char* text = nullptr;
  ~Owned() { dt_string_free(text); }
};

template <class T>
void put(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

std::optional<std::uint64_t> seed_from_environment() {
  const char* env = std::getenv("DYADIC_TENT_SEED");
  if (!env || !*env) return std::nullopt;
  std::uint64_t value = 0;
  std::istringstream in(env);
  if (!(in >> value) || !in.eof()) throw std::invalid_argument("DYADIC_TENT_SEED must be a non-negative integer");
  return value;
}

Json config_json(const Options& o) {
  Json j = Json::object();
  j["seed"] = o.seed ? *o.seed : seed_from_environment().value_or(1);
  put(j, "trials", o.trials);
  put(j, "depth", o.depth);
  put(j, "p", o.p);
  put(j, "q", o.q);
  put(j, "input", o.input);
  put(j, "kind", o.kind);
  put(j, "norm", o.norm);
  put(j, "dim", o.dim);
  put(j, "a", o.a);
  put(j, "lambda", o.lambda);
  j["oracle_limit"] = o.oracle_limit;
  j["tolerance"] = o.tolerance;
  return j;
}

int emit(const Options& o, const char* report, int exit_code) {
  std::string text = report;
  if (o.format == "csv") {
    Owned csv;
    if (dt_report_to_csv(report, &csv.text) != DT_OK) {
      std::cerr << "error: " << dt_last_error() << "\n";
      return kExitInputError;
    }
    text = csv.text;
  }
  if (o.output) {
    std::ofstream out(*o.output, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << *o.output << "\n";
      return kExitInputError;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return exit_code;
}

int run(const std::string& command, const Options& o) {
  Json config;
  try {
    config = config_json(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  Owned report;
  int exit_code = kExitInputError;
  if (dt_run(command.c_str(), config.dump().c_str(), &report.text, &exit_code) != DT_OK) {
    std::cerr << "error: " << dt_last_error() << "\n";
    return kExitInputError;
  }
  return emit(o, report.text, exit_code);
}

int replay(const Options& o) {
  if (!o.input) {
    std::cerr << "error: replay requires --input <report.json>\n";
    return kExitInputError;
  }
  std::ifstream in(*o.input, std::ios::binary);
  if (!in) {
    std::cerr << "error: " << *o.input << ": cannot open file\n";
    return kExitInputError;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Owned report;
  int exit_code = kExitInputError;
  if (dt_replay(buffer.str().c_str(), &report.text, &exit_code) != DT_OK) {
    std::cerr << "error: " << dt_last_error() << "\n";
    return kExitInputError;
  }
  return emit(o, report.text, exit_code);
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "RNG seed (default: $DYADIC_TENT_SEED or 1)");
  sub->add_option("--trials", o.trials, "corpus size or sample count")->check(CLI::NonNegativeNumber);
  sub->add_option("--depth", o.depth, "maximum tree depth for generated inputs");
  sub->add_option("--p", o.p, "exponent p (number or inf)");
  sub->add_option("--q", o.q, "exponent q (number or inf)");
  sub->add_option("--input", o.input, "input JSON file");
  sub->add_option("--output", o.output, "write the report here instead of stdout");
  sub->add_option("--oracle-limit", o.oracle_limit, "maximum depth for brute-force oracles")->capture_default_str();
  sub->add_option("--tolerance", o.tolerance, "absolute tolerance for identities")->capture_default_str();
  sub->add_option("--kind", o.kind, "oscillation kind for jnp: l1 or l2");
  sub->add_option("--norm", o.norm, "body for net: linf, l2 or l1");
  sub->add_option("--dim", o.dim, "dimension for net")->check(CLI::Range(1, 3));
  sub->add_option("--a", o.a, "net radius")->check(CLI::PositiveNumber);
  sub->add_option("--lambda", o.lambda, "weak-type level")->check(CLI::PositiveNumber);
  sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyadic tent-space norms, Haar analysis and covering experiments"};
  app.set_version_flag("--version", std::string(dt_version()));
  app.require_subcommand(1);

  Options options;
  const std::pair<const char*, const char*> commands[] = {
      {"norm", "X^{p,q} norm of a dyadic sequence (--input)"},
      {"jnp", "dyadic John-Nirenberg norm of a step function (--input)"},
      {"duality", "Holder inequality and dual extremizer sweep"},
      {"haar", "Haar coefficients and oscillation identities"},
      {"atoms", "chain atom synthesis and greedy decomposition"},
      {"orlicz", "exponential-square and L log^{1/2} L measurements"},
      {"overlap", "overlap, coloring and discrete duality of ball families"},
      {"weaktype", "weak-type bound for the maximal function"},
      {"net", "separated nets in convex bodies"},
      {"selftest", "all randomized suites"},
      {"replay", "re-run the command recorded in a report (--input)"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "replay") return replay(options);
  return run(command, options);
}
