#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricount/counting.hpp"

namespace toricount {

// One system as written in a problem file: the support characters plus the
// Cartier data, either as covectors keyed by position in the file's
// maximal-cone list or as prescribed values at the rays.
struct SystemInput {
  std::vector<IntVec> support;
  std::map<int, IntVec> cartier;          // maximal-cone position -> m
  std::optional<std::vector<Int>> ray_values;
};

struct ProblemFile {
  int rank = 0;
  std::vector<IntVec> rays;
  std::vector<std::vector<int>> maximal_cones;
  std::vector<SystemInput> systems;
  std::optional<Int> expected_total;  // informative only
};

// ParseError on malformed JSON, non-integral numbers, or values that are
// neither integers nor decimal strings. Integers beyond 2^53 - 1 in
// magnitude should be written as decimal strings.
ProblemFile parse_problem(const std::string& text);
std::string serialize_problem(const ProblemFile& p);

struct BuiltProblem {
  Fan fan;
  std::vector<SystemDatum> data;
};

// Assembles the fan and the system data; `validate_fan` toggles the
// pairwise common-face check (everything else is always checked).
BuiltProblem build_problem(const ProblemFile& p, bool validate_fan = true);

// Bare support families for torus-only counting: {"rank": n, "supports":
// [[[.,.],...], ...]}.
struct SupportsFile {
  int rank = 0;
  std::vector<PointSet> supports;
};
SupportsFile parse_supports(const std::string& text);

std::string report_to_json(const ComponentReport& report, const Fan& f);
std::string report_to_text(const ComponentReport& report, const Fan& f, bool explain);

}  // namespace toricount
