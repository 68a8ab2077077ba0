#define DYADIC_TENT_BUILDING
#include "dyadic_tent/dyadic_tent.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "dyadic_tent/atoms.hpp"
#include "dyadic_tent/experiments.hpp"
#include "dyadic_tent/geometry.hpp"
#include "dyadic_tent/haar.hpp"
#include "dyadic_tent/io.hpp"
#include "dyadic_tent/xpq.hpp"

struct dt_sequence {
  dyadic_tent::DyadicSequence value;
};
struct dt_step_function {
  dyadic_tent::StepFunction value;
};
struct dt_family {
  dyadic_tent::BallFamily value;
};

namespace {

thread_local std::string last_error;

dt_status fail(dt_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
dt_status guard(F&& body) {
  last_error.clear();
  try {
    body();
    return DT_OK;
  } catch (const dyadic_tent::InputError& e) {
    return fail(DT_INVALID_ARGUMENT, e.what());
  } catch (const std::length_error& e) {
    return fail(DT_LIMIT_EXCEEDED, e.what());
  } catch (const std::domain_error& e) {
    return fail(DT_DOMAIN_ERROR, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(DT_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(DT_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DT_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(DT_INTERNAL_ERROR, e.what());
  }
}

template <class... Ptrs>
bool any_null(Ptrs... ptrs) {
  return ((ptrs == nullptr) || ...);
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dyadic_tent::Exponent exponent(double r) {
  if (std::isinf(r) && r > 0) return dyadic_tent::Exponent::infinity();
  return dyadic_tent::Exponent(r);
}

#define DT_REQUIRE(...) \
  if (any_null(__VA_ARGS__)) return fail(DT_NULL_POINTER, "null pointer argument")

}  // namespace

extern "C" {

const char* dt_version(void) { return "1.0.0"; }

const char* dt_last_error(void) { return last_error.c_str(); }

void dt_string_free(char* s) { std::free(s); }

dt_status dt_sequence_create(dt_sequence** out) {
  DT_REQUIRE(out);
  return guard([&] { *out = new dt_sequence{}; });
}

dt_status dt_sequence_from_json(const char* json, dt_sequence** out) {
  DT_REQUIRE(json, out);
  return guard([&] {
    auto g = dyadic_tent::sequence_from_json(dyadic_tent::parse_json(json, "<json>"));
    *out = new dt_sequence{std::move(g)};
  });
}

dt_status dt_sequence_to_json(const dt_sequence* g, char** json) {
  DT_REQUIRE(g, json);
  return guard([&] { *json = copy_string(dyadic_tent::sequence_to_json(g->value).dump()); });
}

dt_status dt_sequence_set(dt_sequence* g, unsigned level, uint64_t index, double value) {
  DT_REQUIRE(g);
  return guard([&] { g->value.set(dyadic_tent::DyadicIndex(level, index), value); });
}

dt_status dt_sequence_get(const dt_sequence* g, unsigned level, uint64_t index, double* value) {
  DT_REQUIRE(g, value);
  return guard([&] { *value = g->value[dyadic_tent::DyadicIndex(level, index)]; });
}

dt_status dt_sequence_depth(const dt_sequence* g, unsigned* depth) {
  DT_REQUIRE(g, depth);
  return guard([&] { *depth = g->value.depth(); });
}

void dt_sequence_destroy(dt_sequence* g) { delete g; }

dt_status dt_xpq_norm(const dt_sequence* g, double p, double q, double* value) {
  DT_REQUIRE(g, value);
  return guard([&] { *value = dyadic_tent::xpq_norm(g->value, exponent(p), exponent(q)).value; });
}

dt_status dt_xpq_norm_report(const dt_sequence* g, double p, double q, char** json) {
  DT_REQUIRE(g, json);
  return guard([&] {
    const auto report = dyadic_tent::xpq_norm(g->value, exponent(p), exponent(q));
    *json = copy_string(dyadic_tent::norm_report_to_json(report).dump());
  });
}

dt_status dt_xp_infty_brute_force(const dt_sequence* g, double p, unsigned limit, double* value) {
  DT_REQUIRE(g, value);
  return guard([&] { *value = dyadic_tent::brute_force_xp_infty(g->value, exponent(p), limit).value; });
}

dt_status dt_cone_sup(const dt_sequence* g, double q, double* value) {
  DT_REQUIRE(g, value);
  return guard([&] { *value = dyadic_tent::cone_sup(g->value, exponent(q)); });
}

dt_status dt_pairing(const dt_sequence* f, const dt_sequence* g, double* value) {
  DT_REQUIRE(f, g, value);
  return guard([&] { *value = dyadic_tent::pairing(f->value, g->value); });
}

dt_status dt_dual_extremizer(const dt_sequence* g, double p, double q, dt_sequence** out) {
  DT_REQUIRE(g, out);
  return guard([&] { *out = new dt_sequence{dyadic_tent::dual_extremizer(g->value, exponent(p), exponent(q))}; });
}

dt_status dt_step_function_create(unsigned depth, const double* values, size_t count, dt_step_function** out) {
  DT_REQUIRE(values, out);
  return guard([&] {
    *out = new dt_step_function{dyadic_tent::StepFunction(depth, std::vector<double>(values, values + count))};
  });
}

void dt_step_function_destroy(dt_step_function* f) { delete f; }

dt_status dt_haar_transform(const dt_step_function* f, double* mean, dt_sequence** coefficients) {
  DT_REQUIRE(f, mean, coefficients);
  return guard([&] {
    auto expansion = dyadic_tent::haar_transform(f->value);
    *coefficients = new dt_sequence{std::move(expansion.coefficients)};
    *mean = expansion.mean;
  });
}

dt_status dt_oscillation(const dt_step_function* f, unsigned level, uint64_t index, int kind, double* value) {
  DT_REQUIRE(f, value);
  if (kind < 0 || kind > 2) return fail(DT_INVALID_ARGUMENT, "oscillation kind must be 0, 1 or 2");
  return guard([&] {
    const dyadic_tent::DyadicIndex interval(level, index);
    if (interval.level() > f->value.depth()) throw std::invalid_argument("interval finer than the step function");
    *value = dyadic_tent::oscillation(f->value, interval, static_cast<dyadic_tent::OscillationKind>(kind));
  });
}

dt_status dt_jnp_norm(const dt_step_function* f, double p, int kind, double* value) {
  DT_REQUIRE(f, value);
  if (kind != 0 && kind != 1) return fail(DT_INVALID_ARGUMENT, "JN kind must be 0 (L1) or 1 (L2)");
  return guard([&] {
    *value = dyadic_tent::jnp_dyadic_norm(f->value, exponent(p), kind == 0 ? dyadic_tent::JnKind::l1
                                                                           : dyadic_tent::JnKind::l2)
                 .value;
  });
}

dt_status dt_sl_infinity(const dt_step_function* f, double* value) {
  DT_REQUIRE(f, value);
  return guard([&] { *value = dyadic_tent::square_function_and_slinfty(f->value).sl_infinity; });
}

dt_status dt_haar_multiplier_norm(const dt_sequence* a, double* value) {
  DT_REQUIRE(a, value);
  return guard([&] { *value = dyadic_tent::haar_multiplier_norm(a->value).value; });
}

dt_status dt_luxemburg_norm(const dt_step_function* f, int young, double* value) {
  DT_REQUIRE(f, value);
  if (young != 0 && young != 1) return fail(DT_INVALID_ARGUMENT, "Young function must be 0 or 1");
  return guard([&] {
    const dyadic_tent::YoungFunction phi(young == 0 ? dyadic_tent::YoungKind::l_log_half
                                                    : dyadic_tent::YoungKind::exp_square);
    *value = dyadic_tent::luxemburg_norm(f->value, phi);
  });
}

dt_status dt_family_from_json(const char* json, dt_family** out) {
  DT_REQUIRE(json, out);
  return guard([&] {
    auto family = dyadic_tent::family_from_json(dyadic_tent::parse_json(json, "<json>"));
    family.validate();
    *out = new dt_family{std::move(family)};
  });
}

void dt_family_destroy(dt_family* family) { delete family; }

dt_status dt_family_total_overlap(const dt_family* family, double* value) {
  DT_REQUIRE(family, value);
  return guard([&] { *value = dyadic_tent::total_overlap(family->value).value; });
}

dt_status dt_family_color_count(const dt_family* family, int* colors) {
  DT_REQUIRE(family, colors);
  return guard([&] { *colors = dyadic_tent::color_family(family->value).colors; });
}

dt_status dt_family_s1(const dt_family* family, double* value) {
  DT_REQUIRE(family, value);
  return guard([&] { *value = dyadic_tent::s1_discrete_norm(family->value).value; });
}

dt_status dt_family_t1(const dt_family* family, double* value) {
  DT_REQUIRE(family, value);
  return guard([&] { *value = dyadic_tent::t1_discrete_norm(family->value).value; });
}

dt_status dt_run(const char* command, const char* config_json, char** report_json, int* exit_code) {
  DT_REQUIRE(command, report_json, exit_code);
  *exit_code = dyadic_tent::kExitInputError;
  return guard([&] {
    dyadic_tent::ExperimentConfig config;
    if (config_json) config = dyadic_tent::config_from_json(dyadic_tent::parse_json(config_json, "<config>"));
    const auto outcome = dyadic_tent::run_experiment(command, config);
    *report_json = copy_string(dyadic_tent::dump_report(outcome.report));
    *exit_code = outcome.exit_code;
  });
}

dt_status dt_replay(const char* report, char** report_json, int* exit_code) {
  DT_REQUIRE(report, report_json, exit_code);
  *exit_code = dyadic_tent::kExitInputError;
  return guard([&] {
    const auto outcome = dyadic_tent::replay_report(dyadic_tent::parse_json(report, "<report>"));
    *report_json = copy_string(dyadic_tent::dump_report(outcome.report));
    *exit_code = outcome.exit_code;
  });
}

dt_status dt_report_to_csv(const char* report, char** csv) {
  DT_REQUIRE(report, csv);
  return guard([&] { *csv = copy_string(dyadic_tent::report_to_csv(dyadic_tent::parse_json(report, "<report>"))); });
}

}  // extern "C"
