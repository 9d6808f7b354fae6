#pragma once

// Brute-force reference implementations for the test suite. Built only with
// CSEA_BUILD_ORACLE; nothing on the mining path links against them.

#include "csea/description.hpp"
#include "csea/pattern_enum.hpp"

#include <stdexcept>
#include <vector>

namespace csea::oracle
{

class GuardExceeded : public std::length_error
{
public:
    using std::length_error::length_error;
};

/// Exhaustive minimum of f(X, U) over all 2^|candidates| subsets (|candidates| <= 20).
double brute_force_dl(const CoverInstance& inst);

/// Every distinct non-empty intersection of neighborhood entities with at
/// least `min_vertices` members, checked closed, sorted by U
/// (at most 15 entities).
std::vector<ClosedPattern> brute_force_closed_patterns(const ErModel& er, std::size_t min_vertices);

/// Tightest intervals by scanning every chain bound against raw ĉ values.
std::vector<IntervalBound> scan_tightest(const ErModel& er, const std::vector<VertexIndex>& vertices);

/// Greedy upper bound: repeatedly add the candidate that lowers f the most.
double greedy_dl(const CoverInstance& inst);

}  // namespace csea::oracle
