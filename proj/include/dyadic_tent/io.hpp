#pragma once

// JSON encodings of sequences, step functions, atoms, ball families and norm
// reports.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dyadic_tent/atoms.hpp"
#include "dyadic_tent/dyadic.hpp"
#include "dyadic_tent/geometry.hpp"
#include "dyadic_tent/haar.hpp"
#include "dyadic_tent/xpq.hpp"

namespace dyadic_tent {

using Json = nlohmann::json;

/// Malformed input; what() names the offending line or field.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses text, reporting the line and column of a syntax error.
Json parse_json(std::string_view text, std::string_view source = "input");
Json read_json_file(const std::string& path);

/// {"entries":[{"level":j,"index":k,"value":v}, ...]}; duplicates are rejected.
DyadicSequence sequence_from_json(const Json& j);
Json sequence_to_json(const DyadicSequence& g);

/// {"depth": d, "values": [2^d numbers]}
StepFunction step_function_from_json(const Json& j);
Json step_function_to_json(const StepFunction& f);

/// Exact "k/2^j" strings for dyadic rationals in [0,1).
double parse_dyadic_rational(std::string_view text);
std::string format_dyadic_rational(double x);

/// {"x": "k/2^j", "lambda": l, "signs": [{"level":j,"index":k,"sign":+-1}, ...]}
ChainAtom atom_from_json(const Json& j);
Json atom_to_json(const ChainAtom& atom);

/// {"norm": "linf"|"l2"|"l1", "dim": n, "balls": [{"center": [..], "radius": r, "weight": w}, ...]}
BallFamily family_from_json(const Json& j);
Json family_to_json(const BallFamily& family);

Json index_to_json(const DyadicIndex& index);
Json indices_to_json(const std::vector<DyadicIndex>& indices);
Json point_to_json(const Point& x, int dim);

/// {"value": v, "witness": [{"level":j,"index":k}, ...]}
Json norm_report_to_json(const NormReport& report);

}  // namespace dyadic_tent
