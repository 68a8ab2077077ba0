#include "dyadic_tent/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dyadic_tent/corpus.hpp"

namespace dyadic_tent {

namespace {

constexpr std::size_t kMaxCounterexamplesPerCheck = 5;

class Violations {
public:
  void add(const std::string& check, Json detail) {
    const auto n = ++counts_[check];
    if (n <= kMaxCounterexamplesPerCheck) list_.push_back({{"check", check}, {"counterexample", std::move(detail)}});
  }
  bool empty() const { return counts_.empty(); }
  const Json& list() const { return list_; }
  Json counts() const {
    Json out = Json::object();
    for (const auto& [k, v] : counts_) out[k] = v;
    return out;
  }

private:
  Json list_ = Json::array();
  std::map<std::string, std::size_t> counts_;
};

Rng suite_rng(const ExperimentConfig& config, std::uint64_t salt) {
  return Rng(config.seed * 0x9E3779B97F4A7C15ull + salt);
}

int trials_or(const ExperimentConfig& config, int fallback) {
  const int t = config.trials.value_or(fallback);
  if (t < 0) throw InputError("--trials must be non-negative");
  return t;
}

unsigned depth_or(const ExperimentConfig& config, unsigned fallback) { return config.depth.value_or(fallback); }

const Json& require_input(const ExperimentConfig& config, const std::string& command) {
  if (config.input_data.is_null()) throw InputError(command + " requires --input <file>");
  return config.input_data;
}

const std::vector<Exponent>& sweep_exponents() {
  static const std::vector<Exponent> values{Exponent(1.0), Exponent(1.5), Exponent(2.0), Exponent(3.0),
                                            Exponent::infinity()};
  return values;
}

Json exponent_json(const Exponent& e) { return e.to_string(); }

// X^{p,q} oracles: brute force over antichains and the cone formula.
void suite_oracles(const ExperimentConfig& config, int trials, Json& results, Violations& violations) {
  Rng rng = suite_rng(config, 1);
  const unsigned depth = std::min(depth_or(config, 4), config.oracle_limit);
  const std::vector<Exponent> ps{Exponent(1.0), Exponent(1.5), Exponent(2.0), Exponent(3.0)};
  const std::vector<Exponent> qs{Exponent(1.0), Exponent(2.0), Exponent::infinity()};
  std::size_t checks = 0;
  for (int t = 0; t < trials; ++t) {
    const auto g = random_sequence(rng, depth);
    for (const auto& p : ps) {
      const auto fast = xpq_norm(g, p, Exponent::infinity());
      const auto slow = brute_force_xp_infty(g, p, config.oracle_limit);
      const double via_witness = evaluate_witness(g, fast, p, Exponent::infinity());
      ++checks;
      if (std::abs(fast.value - slow.value) > config.tolerance ||
          std::abs(via_witness - fast.value) > config.tolerance)
        violations.add("antichain_oracle", {{"g", sequence_to_json(g)},
                                            {"p", exponent_json(p)},
                                            {"reduction", fast.value},
                                            {"brute_force", slow.value},
                                            {"witness_value", via_witness}});
    }
    for (const auto& q : qs) {
      const double fast = xpq_norm(g, Exponent::infinity(), q).value;
      const double cone = cone_sup(g, q);
      ++checks;
      if (std::abs(fast - cone) > config.tolerance)
        violations.add("cone_formula", {{"g", sequence_to_json(g)}, {"q", exponent_json(q)},
                                        {"reduction", fast}, {"cone", cone}});
    }
  }
  results["oracles"] = {{"trials", trials}, {"max_depth", depth}, {"checks", checks}};
}

// Norm axioms and the truncation definition.
void suite_norm_axioms(const ExperimentConfig& config, int trials, Json& results, Violations& violations) {
  Rng rng = suite_rng(config, 2);
  const unsigned depth = depth_or(config, 5);
  std::size_t checks = 0;
  for (int t = 0; t < trials; ++t) {
    const auto f = random_sequence(rng, depth);
    const auto g = random_sequence(rng, depth);
    const double scale = rng.uniform(-3.0, 3.0);
    for (const auto& p : sweep_exponents())
      for (const auto& q : sweep_exponents()) {
        ++checks;
        const double nf = xpq_norm(f, p, q).value;
        const double ng = xpq_norm(g, p, q).value;
        const double sum = xpq_norm(f + g, p, q).value;
        const double scaled = xpq_norm(scale * f, p, q).value;
        Json where = {{"f", sequence_to_json(f)}, {"g", sequence_to_json(g)},
                      {"p", exponent_json(p)}, {"q", exponent_json(q)}};
        if (sum > nf + ng + config.tolerance) violations.add("triangle_inequality", where);
        if (std::abs(scaled - std::abs(scale) * nf) > config.tolerance * std::max(1.0, nf))
          violations.add("homogeneity", where);
        if (std::abs(xpq_norm_by_truncation(f, p, q) - nf) > config.tolerance)
          violations.add("truncation_supremum", where);
        double previous = 0.0;
        for (unsigned i = 0; i <= f.depth(); ++i) {
          const double v = xpq_norm(restrict(f, i), p, q).value;
          if (v < previous - config.tolerance) violations.add("truncation_monotonicity", where);
          previous = v;
        }
        DyadicSequence bigger;
        for (const auto& [index, value] : f) bigger.set(index, value * (1.0 + rng.uniform()));
        if (xpq_norm(bigger, p, q).value < nf - config.tolerance) violations.add("entrywise_monotonicity", where);
      }
  }
  results["norm_axioms"] = {{"trials", trials}, {"max_depth", depth}, {"checks", checks}};
}

void suite_duality(const ExperimentConfig& config, int trials, Json& results, Violations& violations) {
  Rng rng = suite_rng(config, 3);
  const unsigned depth = depth_or(config, 5);
  std::vector<std::pair<Exponent, Exponent>> pairs;
  if (config.p || config.q) {
    pairs.emplace_back(Exponent::parse(config.p.value_or("2")), Exponent::parse(config.q.value_or("2")));
  } else {
    for (const auto& p : sweep_exponents())
      for (const auto& q : sweep_exponents()) pairs.emplace_back(p, q);
  }
  struct Tally {
    std::size_t holder_failures = 0, extremizer_failures = 0;
    double max_ratio = 0.0, max_gap = 0.0, max_extremizer_norm = 0.0;
  };
  std::vector<Tally> tallies(pairs.size());
  for (int t = 0; t < trials; ++t) {
    const auto f = random_sequence(rng, depth);
    const auto g = random_sequence(rng, depth);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& [p, q] = pairs[k];
      auto& tally = tallies[k];
      const auto h = holder_check(f, g, p, q, config.tolerance);
      if (h.norm_f * h.norm_g > 0.0) tally.max_ratio = std::max(tally.max_ratio, h.pairing_abs / (h.norm_f * h.norm_g));
      if (!h.holds) {
        ++tally.holder_failures;
        violations.add("holder_inequality", {{"f", sequence_to_json(f)}, {"g", sequence_to_json(g)},
                                             {"p", exponent_json(p)}, {"q", exponent_json(q)},
                                             {"pairing", h.pairing_abs}, {"norm_f", h.norm_f}, {"norm_g", h.norm_g}});
      }
      const auto extremal = dual_extremizer(g, p, q);
      const double norm_extremal = xpq_norm(extremal, p, q).value;
      const double target = xpq_norm(g, p.conjugate(), q.conjugate()).value;
      const double achieved = pairing(extremal, g);
      tally.max_gap = std::max(tally.max_gap, target - achieved);
      tally.max_extremizer_norm = std::max(tally.max_extremizer_norm, norm_extremal);
      if (norm_extremal > 1.0 + config.tolerance || achieved < target - kExtremizerTolerance) {
        ++tally.extremizer_failures;
        violations.add("dual_extremizer", {{"g", sequence_to_json(g)}, {"p", exponent_json(p)},
                                           {"q", exponent_json(q)}, {"norm_f", norm_extremal},
                                           {"pairing", achieved}, {"dual_norm", target}});
      }
    }
  }
  Json table = Json::array();
  for (std::size_t k = 0; k < pairs.size(); ++k)
    table.push_back({{"p", exponent_json(pairs[k].first)},
                     {"q", exponent_json(pairs[k].second)},
                     {"holder_failures", tallies[k].holder_failures},
                     {"extremizer_failures", tallies[k].extremizer_failures},
                     {"max_pairing_ratio", tallies[k].max_ratio},
                     {"max_extremizer_gap", tallies[k].max_gap},
                     {"max_extremizer_norm", tallies[k].max_extremizer_norm}});
  results["duality"] = {{"trials", trials}, {"max_depth", depth}, {"pairs", table}};
}

void suite_haar(const ExperimentConfig& config, int trials, Json& results, Violations& violations) {
  Rng rng = suite_rng(config, 4);
  const unsigned depth = depth_or(config, 8);
  const double tol = config.tolerance;
  std::size_t intervals = 0;
  double max_l1_over_l2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto f = random_step_function(rng, 1, std::max(1u, depth));
    const auto expansion = haar_transform(f);
    const auto back = inverse_haar(expansion, f.depth());
    double reconstruction = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) reconstruction = std::max(reconstruction, std::abs(back[k] - f[k]));
    if (reconstruction > tol) violations.add("haar_round_trip", {{"f", step_function_to_json(f)}, {"error", reconstruction}});

    double parseval = expansion.mean * expansion.mean;
    for (const auto& [index, c] : expansion.coefficients) parseval += c * c * index.length();
    const double energy = f.l2_norm() * f.l2_norm();
    if (std::abs(parseval - energy) > tol) violations.add("parseval", {{"f", step_function_to_json(f)}, {"energy", energy}, {"haar", parseval}});

    for (unsigned level = 0; level <= f.depth(); ++level)
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << level); ++k) {
        const DyadicIndex index(level, k);
        ++intervals;
        const double l1 = oscillation(f, index, OscillationKind::l1);
        const double l2 = oscillation(f, index, OscillationKind::l2_direct);
        const double l2h = oscillation(f, index, OscillationKind::l2_haar);
        if (std::abs(l2 - l2h) > tol)
          violations.add("osc2_haar_formula", {{"f", step_function_to_json(f)}, {"interval", index_to_json(index)}});
        if (l1 > l2 + tol) violations.add("osc_le_osc2", {{"f", step_function_to_json(f)}, {"interval", index_to_json(index)}});
        if (l2 > 0) max_l1_over_l2 = std::max(max_l1_over_l2, l1 / l2);
        if (level < f.depth()) {
          const auto id = haar_osc_identity_check(f, index, tol);
          if (!id.holds)
            violations.add("haar_oscillation_identity", {{"f", step_function_to_json(f)}, {"interval", index_to_json(index)},
                                                         {"coefficient_term", id.coefficient_term},
                                                         {"oscillation_term", id.oscillation_term}});
        }
      }
    const auto sq = square_function_and_slinfty(f);
    if (std::abs(sq.sl_infinity - sq.cone_value) > tol)
      violations.add("slinfty_cone_formula", {{"f", step_function_to_json(f)}, {"max_square", sq.sl_infinity}, {"cone", sq.cone_value}});
    for (double p : {2.5, 3.0, 4.0})
      if (!satisfies_osc2_growth(jn_oscillation_sequence(f, p, JnKind::l2), p, tol))
        violations.add("osc2_growth_predicate", {{"f", step_function_to_json(f)}, {"p", p}});
  }
  results["haar"] = {{"trials", trials}, {"max_depth", depth}, {"intervals_checked", intervals},
                     {"max_osc_over_osc2", max_l1_over_l2}};
}

void suite_multiplier(const ExperimentConfig& config, int trials, Json& results, Violations& violations) {
  Rng rng = suite_rng(config, 5);
  const unsigned depth = std::min(3u, config.oracle_limit);
  double max_gap = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto a = random_sequence(rng, depth);
    const auto r = haar_multiplier_norm(a);
    const double oracle = brute_force_xp_infty(a, Exponent(2.0), config.oracle_limit).value;
    max_gap = std::max({max_gap, std::abs(r.value - oracle), std::abs(r.rayleigh - r.value)});
    if (std::abs(r.value - oracle) > kExtremizerTolerance || std::abs(r.rayleigh - r.value) > kExtremizerTolerance)
      violations.add("haar_multiplier_norm", {{"a", sequence_to_json(a)}, {"value", r.value},
                                              {"oracle", oracle}, {"rayleigh", r.rayleigh}});
  }
  results["multiplier"] = {{"trials", trials}, {"max_depth", depth}, {"max_gap", max_gap}};
}

void suite_atoms(const ExperimentConfig& config, int trials, Json& results, Violations& violations) {
  Rng rng = suite_rng(config, 6);
  const unsigned depth = depth_or(config, 4);
  double max_ratio = 0.0;
  double min_power_ratio = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const auto atoms = random_atoms(rng, depth, 6);
    double lambda_sum = 0.0;
    for (const auto& atom : atoms) lambda_sum += atom.lambda;
    const auto f = synthesize(atoms, depth);
    const double norm = xpq_norm(f, Exponent(1.0), Exponent::infinity()).value;
    if (norm > lambda_sum + config.tolerance)
      violations.add("synthesis_bound", {{"norm", norm}, {"lambda_sum", lambda_sum}});
    for (double p : {1.5, 2.0, 3.0}) {
      const auto fp = power_scale_sequence(atoms, depth, p);
      const double np = std::pow(xpq_norm(fp, Exponent(p), Exponent::infinity()).value, p);
      if (np > lambda_sum * (1.0 + config.tolerance) + config.tolerance)
        violations.add("power_scale_bound", {{"p", p}, {"norm_p", np}, {"lambda_sum", lambda_sum}});
      if (lambda_sum > 0) min_power_ratio = std::min(min_power_ratio, np / lambda_sum);
    }

    const auto g = random_sequence(rng, depth);
    const auto d = decompose_greedy(g);
    if (synthesize(d.atoms, g.depth()) != g) violations.add("decompose_round_trip", {{"g", sequence_to_json(g)}});
    if (d.norm > d.lambda_sum + config.tolerance)
      violations.add("decomposition_bound", {{"g", sequence_to_json(g)}, {"norm", d.norm}, {"lambda_sum", d.lambda_sum}});
    max_ratio = std::max(max_ratio, d.ratio);
  }
  results["atoms"] = {{"trials", trials}, {"max_depth", depth}, {"max_lambda_over_norm", max_ratio},
                      {"min_power_norm_over_lambda", trials > 0 ? Json(min_power_ratio) : Json(nullptr)}};
}

void suite_orlicz(const ExperimentConfig& config, int trials, Json& results, Violations& violations) {
  Rng rng = suite_rng(config, 7);
  const unsigned depth = depth_or(config, 6);
  double max_ratio = 0.0;
  double min_c = std::numeric_limits<double>::infinity();
  double max_c = 0.0;
  for (const auto kind : {YoungKind::l_log_half, YoungKind::exp_square})
    if (!check_young_function(YoungFunction(kind), kind == YoungKind::exp_square ? 3.0 : 10.0))
      violations.add("young_function", {{"name", YoungFunction(kind).name()}});
  for (int t = 0; t < trials; ++t) {
    const auto f = random_mean_zero_step_function(rng, 1, std::max(1u, depth));
    const auto r = embedding_checks(f);
    if (r.ratio) max_ratio = std::max(max_ratio, *r.ratio);
    if (r.exp_square_constant) {
      min_c = std::min(min_c, *r.exp_square_constant);
      max_c = std::max(max_c, *r.exp_square_constant);
    }
    const double s = rng.uniform(0.5, 4.0);
    const YoungFunction phi(YoungKind::l_log_half);
    auto scaled_values = f.values();
    for (auto& v : scaled_values) v *= s;
    const double lhs = luxemburg_norm(StepFunction(f.depth(), scaled_values), phi);
    const double rhs = s * luxemburg_norm(f, phi);
    if (std::abs(lhs - rhs) > kExtremizerTolerance * std::max(1.0, rhs))
      violations.add("luxemburg_homogeneity", {{"f", step_function_to_json(f)}, {"scale", s}});
  }
  results["orlicz"] = {{"trials", trials},
                       {"max_depth", depth},
                       {"max_x12_over_llogl", max_ratio},
                       {"min_exp_square_constant", trials > 0 ? Json(min_c) : Json(nullptr)},
                       {"max_exp_square_constant", trials > 0 ? Json(max_c) : Json(nullptr)}};
}

Json family_analysis(const BallFamily& family, Violations& violations) {
  const auto overlap = total_overlap(family);
  const auto coloring = color_family(family);
  if (!is_proper_coloring(family, coloring.color)) violations.add("proper_coloring", family_to_json(family));
  if (coloring.colors > coloring.max_back_degree + 1) violations.add("coloring_degeneracy", family_to_json(family));
  Json out = {{"total_overlap", static_cast<long long>(overlap.value)},
              {"overlap_witness", point_to_json(overlap.witness, family.body.dim())},
              {"overlap_lower_bound", overlap.lower_bound},
              {"colors", coloring.colors},
              {"coloring", coloring.color},
              {"max_back_degree", coloring.max_back_degree},
              {"degeneracy", coloring.degeneracy},
              {"chromatic_number", coloring.chromatic_number ? Json(*coloring.chromatic_number) : Json(nullptr)}};
  if (family.body.is_box())
    out["essential_overlap"] = essential_overlap(family, std::vector<double>(family.size(), 1.0));
  if (family.size() <= kIndependentSetLimit) {
    const auto s1 = s1_discrete_norm(family);
    out["s1"] = {{"value", s1.value}, {"members", s1.members}};
    const auto duality = discrete_duality_check(family, family.weights(), family.weights());
    out["duality_ratio"] = duality.ratio ? Json(*duality.ratio) : Json(nullptr);
  }
  const auto t1 = t1_discrete_norm(family);
  out["t1"] = {{"value", t1.value}, {"witness", point_to_json(t1.witness, family.body.dim())},
               {"lower_bound", t1.lower_bound}};
  const auto vitali = vitali_select(family);
  if (!vitali.cover_ok) violations.add("vitali_cover", family_to_json(family));
  out["vitali"] = {{"selected", vitali.selected}, {"cover_ok", vitali.cover_ok},
                   {"dilation_constant", vitali.dilation_constant}};
  const auto piercing = piercing_heuristic(family);
  Json points = Json::array();
  for (const auto& x : piercing.points) points.push_back(point_to_json(x, family.body.dim()));
  out["piercing"] = {{"anchor", piercing.anchor}, {"subfamily", piercing.subfamily},
                     {"points", points}, {"verified", piercing.verified}};
  return out;
}

void suite_overlap(const ExperimentConfig& config, int trials, Json& results, Violations& violations) {
  Rng rng = suite_rng(config, 8);
  Json per_dim = Json::object();
  double overall_colors = 0.0, overall_duality = 0.0;
  for (int dim : {1, 2}) {
    const auto body = ConvexBody::linf(dim);
    double max_colors_ratio = 0.0, max_duality = 0.0, max_piercing = 0.0;
    int chromatic_gap = 0;
    std::size_t essential_mismatches = 0;
    const int count = trials / 2 + (dim == 1 ? trials % 2 : 0);
    for (int t = 0; t < count; ++t) {
      const auto family = random_family(rng, body, 12);
      const auto overlap = total_overlap(family);
      const auto coloring = color_family(family);
      if (!is_proper_coloring(family, coloring.color)) violations.add("proper_coloring", family_to_json(family));
      if (coloring.colors > coloring.max_back_degree + 1)
        violations.add("coloring_degeneracy", family_to_json(family));
      max_colors_ratio = std::max(max_colors_ratio, coloring.colors / (overlap.value + 1.0));
      if (coloring.chromatic_number) chromatic_gap = std::max(chromatic_gap, coloring.colors - *coloring.chromatic_number);
      const double essential = essential_overlap(family, std::vector<double>(family.size(), 1.0));
      if (essential != overlap.value) ++essential_mismatches;
      if (essential > overlap.value || overlap.value > std::pow(2.0, dim) * essential)
        violations.add("essential_overlap_sandwich", family_to_json(family));

      std::vector<double> f(family.size()), g(family.size());
      for (auto& v : f) v = 1.0 - rng.uniform();
      for (auto& v : g) v = 1.0 - rng.uniform();
      const auto d = discrete_duality_check(family, f, g);
      if (d.ratio) max_duality = std::max(max_duality, *d.ratio);

      const auto vitali = vitali_select(family);
      if (!vitali.cover_ok) violations.add("vitali_cover", family_to_json(family));
      const auto piercing = piercing_heuristic(family);
      if (!piercing.verified) violations.add("piercing_verification", family_to_json(family));
      max_piercing = std::max(max_piercing, static_cast<double>(piercing.points.size()));
    }
    per_dim[std::to_string(dim)] = {{"families", count},
                                    {"max_colors_over_overlap_plus_one", max_colors_ratio},
                                    {"max_duality_ratio", max_duality},
                                    {"max_greedy_minus_chromatic", chromatic_gap},
                                    {"max_piercing_points", max_piercing},
                                    {"essential_overlap_differs", essential_mismatches}};
    overall_colors = std::max(overall_colors, max_colors_ratio);
    overall_duality = std::max(overall_duality, max_duality);
  }
  results["overlap"] = {{"trials", trials}, {"body", "linf"}, {"per_dimension", per_dim},
                        {"max_colors_over_overlap_plus_one", overall_colors},
                        {"max_duality_ratio", overall_duality}};
}

std::vector<double> lambda_levels(const BallFamily& family, double p) {
  double top = 0.0;
  for (const auto& b : family.balls) top = std::max(top, std::abs(b.weight) / std::pow(volume(family.body, b), 1.0 / p));
  std::vector<double> out;
  for (double fraction : {0.1, 0.3, 0.5, 0.8, 1.2}) out.push_back(fraction * top);
  return out;
}

Json weak_type_json(const WeakTypeReport& r) {
  return {{"p", r.p}, {"lambda", r.lambda}, {"measure", r.level_set_measure}, {"lhs", r.lhs},
          {"sp_norm_p", r.sp_norm_p}, {"bound", r.bound}, {"exact", r.exact}, {"holds", r.holds}};
}

void suite_weaktype(const ExperimentConfig& config, int trials, Json& results, Violations& violations) {
  Rng rng = suite_rng(config, 9);
  std::size_t checks = 0;
  double max_fraction = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int dim = 1 + t % 2;
    const auto family = random_family(rng, ConvexBody::linf(dim), 10);
    for (double p : {1.0, 2.0})
      for (double lambda : lambda_levels(family, p)) {
        if (lambda <= 0) continue;
        const auto r = maximal_weak_type(family, p, lambda);
        ++checks;
        if (r.bound > 0) max_fraction = std::max(max_fraction, r.lhs / r.bound);
        if (!r.holds) violations.add("weak_type_bound", {{"family", family_to_json(family)}, {"report", weak_type_json(r)}});
      }
  }
  results["weaktype"] = {{"trials", trials}, {"checks", checks}, {"max_lhs_over_bound", max_fraction}};
}

Json net_json(const ConvexBody& body, const NetReport& r) {
  Json points = Json::array();
  for (const auto& x : r.points) points.push_back(point_to_json(x, body.dim()));
  return {{"norm", body.name()}, {"dim", body.dim()}, {"a", r.a}, {"cardinality", r.points.size()},
          {"points", points}, {"separated", r.separated}, {"cover_ok", r.cover_ok},
          {"cover_samples", r.samples}, {"cover_failures", r.cover_failures},
          {"bound_3n", r.bound_3n}, {"bound_5n", r.bound_5n}, {"within_5n", r.within_5n},
          {"exceeds_3n", r.exceeds_3n}};
}

ConvexBody body_from_name(const std::string& name, int dim) {
  if (name == "linf") return ConvexBody::linf(dim);
  if (name == "l2") return ConvexBody::l2(dim);
  if (name == "l1") return ConvexBody::l1(dim);
  throw InputError("unknown norm '" + name + "' (expected linf, l2 or l1)");
}

void suite_net(const ExperimentConfig& config, Json& results, Violations& violations) {
  std::vector<std::string> norms{"linf", "l2", "l1"};
  std::vector<int> dims{1, 2};
  std::vector<double> radii{0.5, 1.0, 2.0};
  if (config.norm) norms = {*config.norm};
  if (config.dim) dims = {*config.dim};
  if (config.a) radii = {*config.a};
  const int samples = trials_or(config, 2000);
  Json table = Json::array();
  std::size_t exceed = 0;
  std::uint64_t salt = 10;
  for (const auto& name : norms)
    for (int dim : dims)
      for (double a : radii) {
        const auto body = body_from_name(name, dim);
        const auto r = separated_net(body, a, kDefaultNetSteps, static_cast<std::size_t>(samples),
                                     config.seed * 0x9E3779B97F4A7C15ull + salt++);
        auto row = net_json(body, r);
        if (!r.cover_ok) violations.add("net_cone_cover", row);
        if (!r.separated) violations.add("net_separation", row);
        if (!r.within_5n) violations.add("net_packing_bound", row);
        if (r.exceeds_3n) ++exceed;
        table.push_back(std::move(row));
      }
  results["net"] = {{"configurations", table}, {"exceeding_3n", exceed}};
}

ExperimentOutcome finish(const std::string& command, const ExperimentConfig& config, Json results,
                         const Violations& violations) {
  ExperimentOutcome out;
  results["violation_counts"] = violations.counts();
  out.report = {{"command", command}, {"config", config_to_json(config)}, {"results", std::move(results)},
                {"violations", violations.list()}};
  out.exit_code = violations.empty() ? kExitOk : kExitViolation;
  return out;
}

ExperimentOutcome run_norm(const ExperimentConfig& config) {
  const auto g = sequence_from_json(require_input(config, "norm"));
  const auto p = Exponent::parse(config.p.value_or("1"));
  const auto q = Exponent::parse(config.q.value_or("inf"));
  Violations violations;
  const auto report = xpq_norm(g, p, q);
  if (report.witness_kind != WitnessKind::none) {
    const double w = evaluate_witness(g, report, p, q);
    if (std::abs(w - report.value) > config.tolerance)
      violations.add("witness_value", {{"value", report.value}, {"witness_value", w}});
  }
  if (q.is_infinite() && !p.is_infinite() && g.depth() <= config.oracle_limit) {
    const double oracle = brute_force_xp_infty(g, p, config.oracle_limit).value;
    if (std::abs(oracle - report.value) > config.tolerance)
      violations.add("antichain_oracle", {{"value", report.value}, {"brute_force", oracle}});
  }
  if (p.is_infinite() && g.depth() <= 20) {
    const double cone = cone_sup(g, q);
    if (std::abs(cone - report.value) > config.tolerance)
      violations.add("cone_formula", {{"value", report.value}, {"cone", cone}});
  }
  return finish("norm", config, norm_report_to_json(report), violations);
}

JnKind jn_kind(const ExperimentConfig& config) {
  const auto kind = config.kind.value_or("l1");
  if (kind == "l1" || kind == "L1") return JnKind::l1;
  if (kind == "l2" || kind == "L2") return JnKind::l2;
  throw InputError("unknown oscillation kind '" + kind + "' (expected l1 or l2)");
}

ExperimentOutcome run_jnp(const ExperimentConfig& config) {
  const auto f = step_function_from_json(require_input(config, "jnp"));
  const auto p = Exponent::parse(config.p.value_or("2"));
  const auto kind = jn_kind(config);
  Violations violations;
  const auto report = jnp_dyadic_norm(f, p, kind);
  Json results = norm_report_to_json(report);
  results["kind"] = kind == JnKind::l1 ? "l1" : "l2";
  results["p"] = p.to_string();
  const double l1 = jnp_dyadic_norm(f, p, JnKind::l1).value;
  const double l2 = jnp_dyadic_norm(f, p, JnKind::l2).value;
  results["l2_over_l1"] = l1 > 0 ? Json(l2 / l1) : Json(nullptr);
  if (l1 > l2 + config.tolerance) violations.add("jn_l1_le_l2", {{"l1", l1}, {"l2", l2}});
  return finish("jnp", config, std::move(results), violations);
}

ExperimentOutcome run_haar(const ExperimentConfig& config) {
  Violations violations;
  Json results = Json::object();
  if (config.input_data.is_null()) {
    suite_haar(config, trials_or(config, 500), results, violations);
    suite_multiplier(config, trials_or(config, 200), results, violations);
    return finish("haar", config, std::move(results), violations);
  }
  const auto f = step_function_from_json(config.input_data);
  const auto expansion = haar_transform(f);
  results["mean"] = expansion.mean;
  results["coefficients"] = sequence_to_json(expansion.coefficients);
  Json osc = Json::array();
  for (unsigned level = 0; level <= f.depth(); ++level)
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << level); ++k) {
      const DyadicIndex index(level, k);
      Json row = {{"level", level}, {"index", k},
                  {"l1", oscillation(f, index, OscillationKind::l1)},
                  {"l2_direct", oscillation(f, index, OscillationKind::l2_direct)},
                  {"l2_haar", oscillation(f, index, OscillationKind::l2_haar)}};
      if (level < f.depth()) {
        const auto id = haar_osc_identity_check(f, index, config.tolerance);
        row["identity_holds"] = id.holds;
        if (!id.holds) violations.add("haar_oscillation_identity", {{"interval", index_to_json(index)}});
      }
      osc.push_back(std::move(row));
    }
  results["oscillations"] = osc;
  const auto sq = square_function_and_slinfty(f);
  results["square_function"] = step_function_to_json(sq.square);
  results["sl_infinity"] = sq.sl_infinity;
  results["sl_infinity_cone"] = sq.cone_value;
  if (std::abs(sq.sl_infinity - sq.cone_value) > config.tolerance)
    violations.add("slinfty_cone_formula", {{"max_square", sq.sl_infinity}, {"cone", sq.cone_value}});
  return finish("haar", config, std::move(results), violations);
}

ExperimentOutcome run_atoms(const ExperimentConfig& config) {
  Violations violations;
  Json results = Json::object();
  if (config.input_data.is_null()) {
    suite_atoms(config, trials_or(config, 300), results, violations);
    return finish("atoms", config, std::move(results), violations);
  }
  const auto& input = config.input_data;
  if (input.is_object() && input.contains("atoms")) {
    if (!input["atoms"].is_array()) throw InputError("atoms: expected an array");
    std::vector<ChainAtom> atoms;
    unsigned deepest = 0;
    for (std::size_t i = 0; i < input["atoms"].size(); ++i) {
      try {
        atoms.push_back(atom_from_json(input["atoms"][i]));
      } catch (const InputError& e) {
        throw InputError("atoms[" + std::to_string(i) + "]: " + e.what());
      }
      if (!atoms.back().signs.empty()) deepest = std::max(deepest, atoms.back().signs.rbegin()->first);
    }
    unsigned depth = deepest;
    if (input.contains("depth")) {
      if (!input["depth"].is_number_unsigned()) throw InputError("depth: expected a non-negative integer");
      depth = input["depth"].get<unsigned>();
    }
    if (config.depth) depth = *config.depth;
    const auto f = synthesize(atoms, depth);
    double lambda_sum = 0.0;
    for (const auto& a : atoms) lambda_sum += a.lambda;
    const double norm = xpq_norm(f, Exponent(1.0), Exponent::infinity()).value;
    if (norm > lambda_sum + config.tolerance)
      violations.add("synthesis_bound", {{"norm", norm}, {"lambda_sum", lambda_sum}});
    results = {{"sequence", sequence_to_json(f)}, {"norm", norm}, {"lambda_sum", lambda_sum}};
    return finish("atoms", config, std::move(results), violations);
  }
  const auto g = sequence_from_json(input);
  const auto d = decompose_greedy(g);
  Json atoms = Json::array();
  for (const auto& a : d.atoms) atoms.push_back(atom_to_json(a));
  const bool exact = synthesize(d.atoms, g.depth()) == g;
  if (!exact) violations.add("decompose_round_trip", sequence_to_json(g));
  results = {{"atoms", atoms}, {"lambda_sum", d.lambda_sum}, {"norm", d.norm}, {"ratio", d.ratio},
             {"round_trip_exact", exact}};
  return finish("atoms", config, std::move(results), violations);
}

Json embedding_json(const EmbeddingReport& r) {
  return {{"mean_subtracted", r.mean_subtracted},
          {"removed_mean", r.removed_mean},
          {"sl_infinity", r.sl_infinity},
          {"exp_square_constant", r.exp_square_constant ? Json(*r.exp_square_constant) : Json(nullptr)},
          {"x12_norm", r.x12_norm},
          {"l_log_half_norm", r.l_log_half_norm},
          {"ratio", r.ratio ? Json(*r.ratio) : Json(nullptr)}};
}

ExperimentOutcome run_orlicz(const ExperimentConfig& config) {
  Violations violations;
  Json results = Json::object();
  if (config.input_data.is_null()) {
    suite_orlicz(config, trials_or(config, 200), results, violations);
  } else {
    const auto f = step_function_from_json(config.input_data);
    results = embedding_json(embedding_checks(f));
    results["luxemburg_exp_square"] = luxemburg_norm(f, YoungFunction(YoungKind::exp_square));
  }
  return finish("orlicz", config, std::move(results), violations);
}

ExperimentOutcome run_overlap(const ExperimentConfig& config) {
  Violations violations;
  Json results = Json::object();
  if (config.input_data.is_null()) {
    suite_overlap(config, trials_or(config, 500), results, violations);
  } else {
    auto family = family_from_json(config.input_data);
    family.validate();
    results = family_analysis(family, violations);
  }
  return finish("overlap", config, std::move(results), violations);
}

ExperimentOutcome run_weaktype(const ExperimentConfig& config) {
  Violations violations;
  Json results = Json::object();
  if (config.input_data.is_null()) {
    suite_weaktype(config, trials_or(config, 200), results, violations);
    return finish("weaktype", config, std::move(results), violations);
  }
  auto family = family_from_json(config.input_data);
  family.validate();
  const double p = Exponent::parse(config.p.value_or("1")).value();
  if (std::isinf(p)) throw InputError("weaktype needs a finite --p");
  std::vector<double> levels = config.lambda ? std::vector<double>{*config.lambda} : lambda_levels(family, p);
  Json rows = Json::array();
  for (double lambda : levels) {
    if (!(lambda > 0)) continue;
    const auto r = maximal_weak_type(family, p, lambda);
    if (!r.holds) violations.add("weak_type_bound", weak_type_json(r));
    rows.push_back(weak_type_json(r));
  }
  results["levels"] = rows;
  return finish("weaktype", config, std::move(results), violations);
}

ExperimentOutcome run_net(const ExperimentConfig& config) {
  Violations violations;
  Json results = Json::object();
  suite_net(config, results, violations);
  return finish("net", config, std::move(results), violations);
}

ExperimentOutcome run_duality(const ExperimentConfig& config) {
  Violations violations;
  Json results = Json::object();
  suite_duality(config, trials_or(config, 1000), results, violations);
  return finish("duality", config, std::move(results), violations);
}

ExperimentOutcome run_selftest(const ExperimentConfig& config) {
  Violations violations;
  Json results = Json::object();
  // Corpus sizes follow the acceptance criteria; --trials overrides all of them.
  auto n = [&](int fallback) { return trials_or(config, fallback); };
  ExperimentConfig base = config;
  base.depth.reset();
  suite_oracles(base, n(500), results, violations);
  suite_norm_axioms(base, n(100), results, violations);
  suite_duality(base, n(1000), results, violations);
  suite_haar(base, n(500), results, violations);
  suite_multiplier(base, n(200), results, violations);
  suite_atoms(base, n(300), results, violations);
  suite_orlicz(base, n(200), results, violations);
  suite_overlap(base, n(500), results, violations);
  suite_weaktype(base, n(200), results, violations);
  ExperimentConfig net = base;
  net.trials.reset();
  suite_net(net, results, violations);
  return finish("selftest", config, std::move(results), violations);
}

template <class T>
void put_optional(Json& j, const char* key, const std::optional<T>& value) {
  j[key] = value ? Json(*value) : Json(nullptr);
}

template <class T>
std::optional<T> get_optional(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  try {
    return j[key].get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("config.") + key + ": unexpected type");
  }
}

}  // namespace

Json config_to_json(const ExperimentConfig& config) {
  Json j = Json::object();
  j["seed"] = config.seed;
  put_optional(j, "trials", config.trials);
  put_optional(j, "depth", config.depth);
  put_optional(j, "p", config.p);
  put_optional(j, "q", config.q);
  put_optional(j, "input", config.input_path);
  j["input_data"] = config.input_data;
  j["oracle_limit"] = config.oracle_limit;
  j["tolerance"] = config.tolerance;
  put_optional(j, "kind", config.kind);
  put_optional(j, "norm", config.norm);
  put_optional(j, "dim", config.dim);
  put_optional(j, "a", config.a);
  put_optional(j, "lambda", config.lambda);
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("config: expected a JSON object");
  ExperimentConfig c;
  c.seed = get_optional<std::uint64_t>(j, "seed").value_or(1);
  c.trials = get_optional<int>(j, "trials");
  c.depth = get_optional<unsigned>(j, "depth");
  c.p = get_optional<std::string>(j, "p");
  c.q = get_optional<std::string>(j, "q");
  c.input_path = get_optional<std::string>(j, "input");
  if (j.contains("input_data")) c.input_data = j["input_data"];
  c.oracle_limit = get_optional<unsigned>(j, "oracle_limit").value_or(kDefaultOracleDepth);
  c.tolerance = get_optional<double>(j, "tolerance").value_or(kIdentityTolerance);
  c.kind = get_optional<std::string>(j, "kind");
  c.norm = get_optional<std::string>(j, "norm");
  c.dim = get_optional<int>(j, "dim");
  c.a = get_optional<double>(j, "a");
  c.lambda = get_optional<double>(j, "lambda");
  if (c.oracle_limit > kMaxOracleDepth)
    throw InputError("oracle limit " + std::to_string(c.oracle_limit) + " exceeds the supported maximum " +
                     std::to_string(kMaxOracleDepth));
  if (!(c.tolerance >= 0.0)) throw InputError("tolerance must be non-negative");
  return c;
}

const std::vector<std::string>& experiment_commands() {
  static const std::vector<std::string> commands{"norm",    "jnp",      "duality", "haar", "atoms", "orlicz",
                                                 "overlap", "weaktype", "net",     "selftest"};
  return commands;
}

ExperimentOutcome run_experiment(const std::string& command, const ExperimentConfig& given) {
  ExperimentConfig config = given;
  if (config.input_data.is_null() && config.input_path) config.input_data = read_json_file(*config.input_path);
  if (config.oracle_limit > kMaxOracleDepth)
    throw InputError("oracle limit " + std::to_string(config.oracle_limit) + " exceeds the supported maximum " +
                     std::to_string(kMaxOracleDepth));
  if (command == "norm") return run_norm(config);
  if (command == "jnp") return run_jnp(config);
  if (command == "duality") return run_duality(config);
  if (command == "haar") return run_haar(config);
  if (command == "atoms") return run_atoms(config);
  if (command == "orlicz") return run_orlicz(config);
  if (command == "overlap") return run_overlap(config);
  if (command == "weaktype") return run_weaktype(config);
  if (command == "net") return run_net(config);
  if (command == "selftest") return run_selftest(config);
  throw InputError("unknown command '" + command + "'");
}

ExperimentOutcome replay_report(const Json& report) {
  if (!report.is_object() || !report.contains("command") || !report["command"].is_string() ||
      !report.contains("config"))
    throw InputError("replay: expected a report with \"command\" and \"config\"");
  return run_experiment(report["command"].get<std::string>(), config_from_json(report["config"]));
}

namespace {

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ',' << j.dump() << '\n';
  }
}

}  // namespace

std::string report_to_csv(const Json& report) {
  std::ostringstream out;
  out << "path,value\n";
  flatten(report, "", out);
  return out.str();
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace dyadic_tent
