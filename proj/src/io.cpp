#include "dyadic_tent/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dyadic_tent {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& field(const Json& object, const char* key, const std::string& where) {
  if (!object.is_object()) fail(where, "expected a JSON object");
  auto it = object.find(key);
  if (it == object.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::uint64_t as_unsigned(const Json& value, const std::string& where) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  fail(where, "expected a non-negative integer");
}

double as_number(const Json& value, const std::string& where) {
  if (!value.is_number()) fail(where, "expected a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) fail(where, "expected a finite number");
  return v;
}

const Json& as_array(const Json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "expected an array");
  return value;
}

std::string at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

DyadicIndex index_at(const Json& entry, const std::string& where) {
  const auto level = as_unsigned(field(entry, "level", where), where + ".level");
  const auto index = as_unsigned(field(entry, "index", where), where + ".index");
  try {
    return {static_cast<unsigned>(std::min<std::uint64_t>(level, kMaxLevel + 1)), index};
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

}  // namespace

Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) +
                     ": malformed JSON (" + e.what() + ")");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path);
}

DyadicSequence sequence_from_json(const Json& j) {
  const auto& entries = as_array(field(j, "entries", "sequence"), "entries");
  DyadicSequence g;
  std::set<DyadicIndex> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto where = at("entries", i);
    const auto index = index_at(entries[i], where);
    if (!seen.insert(index).second)
      fail(where, "duplicate entry for (level, index) = " + index.to_string());
    g.set(index, as_number(field(entries[i], "value", where), where + ".value"));
  }
  return g;
}

Json sequence_to_json(const DyadicSequence& g) {
  Json entries = Json::array();
  for (const auto& [index, value] : g)
    entries.push_back({{"level", index.level()}, {"index", index.position()}, {"value", value}});
  return {{"entries", entries}};
}

StepFunction step_function_from_json(const Json& j) {
  const auto depth = as_unsigned(field(j, "depth", "step function"), "depth");
  if (depth > 30) fail("depth", "step function depth is limited to 30");
  const auto& values = as_array(field(j, "values", "step function"), "values");
  if (values.size() != (std::size_t{1} << depth))
    fail("values", "expected " + std::to_string(std::size_t{1} << depth) + " numbers for depth " +
                       std::to_string(depth) + ", got " + std::to_string(values.size()));
  std::vector<double> v;
  v.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v.push_back(as_number(values[i], at("values", i)));
  return {static_cast<unsigned>(depth), std::move(v)};
}

Json step_function_to_json(const StepFunction& f) { return {{"depth", f.depth()}, {"values", f.values()}}; }

double parse_dyadic_rational(std::string_view text) {
  auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw InputError("dyadic rational '" + std::string(text) + "': expected k/2^j");
    return v;
  };
  std::uint64_t numerator = 0;
  std::uint64_t exponent = 0;
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    numerator = number(text);
  } else {
    numerator = number(text.substr(0, slash));
    const auto denominator = text.substr(slash + 1);
    if (denominator.substr(0, 2) != "2^")
      throw InputError("dyadic rational '" + std::string(text) + "': denominator must be 2^j");
    exponent = number(denominator.substr(2));
  }
  if (exponent > 52 || numerator >= (std::uint64_t{1} << exponent))
    throw InputError("dyadic rational '" + std::string(text) + "' must lie in [0,1) with j <= 52");
  return std::ldexp(static_cast<double>(numerator), -static_cast<int>(exponent));
}

std::string format_dyadic_rational(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("dyadic rational must lie in [0,1)");
  if (x == 0.0) return "0/2^0";
  int exponent = 0;
  double scaled = x;
  while (scaled != std::floor(scaled)) {
    scaled *= 2.0;
    ++exponent;
    if (exponent > 1074) throw std::invalid_argument("not a dyadic rational");
  }
  if (exponent > 52) throw std::invalid_argument("dyadic rational needs more than 52 bits");
  return std::to_string(static_cast<std::uint64_t>(scaled)) + "/2^" + std::to_string(exponent);
}

ChainAtom atom_from_json(const Json& j) {
  ChainAtom atom;
  const auto& x = field(j, "x", "atom");
  if (!x.is_string()) fail("atom.x", "expected a string \"k/2^j\"");
  atom.point = parse_dyadic_rational(x.get<std::string>());
  atom.lambda = as_number(field(j, "lambda", "atom"), "atom.lambda");
  if (!(atom.lambda > 0.0)) fail("atom.lambda", "must be positive");
  const auto& signs = as_array(field(j, "signs", "atom"), "atom.signs");
  for (std::size_t i = 0; i < signs.size(); ++i) {
    const auto where = at("atom.signs", i);
    const auto index = index_at(signs[i], where);
    if (!index.contains_point(atom.point))
      fail(where, "interval " + index.to_string() + " does not contain the atom point");
    const auto& s = field(signs[i], "sign", where);
    if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1))
      fail(where + ".sign", "expected +1 or -1");
    if (!atom.signs.emplace(index.level(), s.get<int>()).second)
      fail(where, "duplicate sign for level " + std::to_string(index.level()));
  }
  return atom;
}

Json atom_to_json(const ChainAtom& atom) {
  Json signs = Json::array();
  for (const auto& [level, sign] : atom.signs) {
    const auto index = atom.interval_at(level);
    signs.push_back({{"level", level}, {"index", index.position()}, {"sign", sign}});
  }
  return {{"x", format_dyadic_rational(atom.point)}, {"lambda", atom.lambda}, {"signs", signs}};
}

BallFamily family_from_json(const Json& j) {
  const auto& norm = field(j, "norm", "family");
  if (!norm.is_string()) fail("norm", "expected \"linf\", \"l2\" or \"l1\"");
  const auto name = norm.get<std::string>();
  const auto dim = as_unsigned(field(j, "dim", "family"), "dim");
  if (dim < 1 || dim > 3) fail("dim", "dimension must be 1, 2 or 3");
  const int n = static_cast<int>(dim);
  BallFamily family;
  if (name == "linf") family.body = ConvexBody::linf(n);
  else if (name == "l2") family.body = ConvexBody::l2(n);
  else if (name == "l1") family.body = ConvexBody::l1(n);
  else fail("norm", "unknown norm \"" + name + "\" (expected linf, l2 or l1)");

  const auto& balls = as_array(field(j, "balls", "family"), "balls");
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const auto where = at("balls", i);
    KBall ball;
    const auto& center = as_array(field(balls[i], "center", where), where + ".center");
    if (center.size() != dim)
      fail(where + ".center", "expected " + std::to_string(dim) + " coordinates");
    for (std::size_t d = 0; d < dim; ++d) ball.center[d] = as_number(center[d], at(where + ".center", d));
    ball.radius = as_number(field(balls[i], "radius", where), where + ".radius");
    if (!(ball.radius > 0.0)) fail(where + ".radius", "must be positive");
    if (balls[i].contains("weight")) ball.weight = as_number(balls[i]["weight"], where + ".weight");
    family.balls.push_back(ball);
  }
  return family;
}

Json point_to_json(const Point& x, int dim) {
  Json out = Json::array();
  for (int d = 0; d < dim; ++d) out.push_back(x[d]);
  return out;
}

Json family_to_json(const BallFamily& family) {
  Json balls = Json::array();
  for (const auto& b : family.balls)
    balls.push_back({{"center", point_to_json(b.center, family.body.dim())}, {"radius", b.radius}, {"weight", b.weight}});
  return {{"norm", family.body.name()}, {"dim", family.body.dim()}, {"balls", balls}};
}

Json index_to_json(const DyadicIndex& index) {
  return {{"level", index.level()}, {"index", index.position()}};
}

Json indices_to_json(const std::vector<DyadicIndex>& indices) {
  Json out = Json::array();
  for (const auto& i : indices) out.push_back(index_to_json(i));
  return out;
}

Json norm_report_to_json(const NormReport& report) {
  return {{"value", report.value}, {"witness", indices_to_json(report.witness)}};
}

}  // namespace dyadic_tent
