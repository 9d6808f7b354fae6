#pragma once

#include "csea/background.hpp"
#include "csea/description.hpp"
#include "csea/pattern_enum.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace csea
{

struct ScoredPattern
{
    ClosedPattern pattern;
    double ic = 0.0;
    double dl = 0.0;
    double si = 0.0;
    /// Chosen entries index into pattern.covering.
    Description best_description;
    std::size_t nodes = 0;
    bool dl_exact = true;
};

/// IC(U, S) in bits on the tail-probability scale. Intervals on the same
/// attribute are intersected before taking the probability.
double information_content(const ClosedPattern& p, const BackgroundModel& m);

/// Interval [low, high] on raw counts; `high` unset means unbounded.
struct CountInterval
{
    std::size_t attribute = 0;
    std::int64_t low = 0;
    std::optional<std::int64_t> high;
};

/// IC on raw counts: -log2 prod((1-p)^k - (1-p)^(l+1)). Infinite when some
/// cell has zero probability.
double information_content_counts(const VertexSet& vertices, const std::vector<CountInterval>& s,
                                  const BackgroundModel& m);

/// The DL instance of a pattern: its covering entities as candidates.
CoverInstance cover_instance(const ClosedPattern& p, const ErModel& er);

ScoredPattern score_pattern(ClosedPattern p, const ErModel& er, const BackgroundModel& m,
                            const DlOptions& options = {});

/// Strict ranking order: higher si, then higher ic, then lexicographic U.
bool ranks_before(const ScoredPattern& a, const ScoredPattern& b);

/// Keeps the best min(top_k, size) patterns in ranking order.
std::vector<ScoredPattern> rank_patterns(std::vector<ScoredPattern> scored, std::size_t top_k);

/// Scores every pattern (DL by branch and bound) on `jobs` threads and ranks.
std::vector<ScoredPattern> score_and_rank(std::vector<ClosedPattern> patterns, const ErModel& er,
                                          const BackgroundModel& m, std::size_t top_k, unsigned jobs = 1,
                                          const DlOptions& options = {});

}  // namespace csea
