#pragma once

#include "csea/background.hpp"
#include "csea/graph.hpp"
#include "csea/interestingness.hpp"
#include "csea/pattern_enum.hpp"

#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace csea
{

struct MiningConfig
{
    int max_radius = 3;
    int bins = 5;
    std::size_t min_vertices = 5;
    std::size_t top_k = 500;
    double tol = 1e-8;
    std::size_t max_iter = 10'000;
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    /// Per-pattern branch-and-bound budget; unset means exact.
    std::optional<std::chrono::milliseconds> dl_budget;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

struct MiningSummary
{
    std::size_t pattern_count = 0;
    std::size_t reported = 0;
    std::size_t bnb_nodes = 0;
    std::size_t inexact = 0;
    double seconds = 0.0;
};

struct MiningResult
{
    ErModel er;
    std::vector<ScoredPattern> ranked;
    MiningSummary summary;
};

/// Tail transform, binning, ER transform, closed enumeration, exact DL and
/// ranking. `trace` receives the branch-and-bound node log when set.
MiningResult mine(const AttributedGraph& g, const BackgroundModel& m, const MiningConfig& config,
                  std::ostream* trace = nullptr);

/// One JSON object (no trailing newline) in the pattern-file schema.
std::string pattern_record_json(const ScoredPattern& p, const ErModel& er, const AttributedGraph& g);

/// Newline-terminated records in rank order.
std::string patterns_to_jsonl(const MiningResult& r, const AttributedGraph& g);

struct CenterRef
{
    std::string center;
    int d = 0;
};

struct RecordInterval
{
    std::string attribute;
    Side side = Side::Lower;
    double bound = 1.0;
};

/// A parsed pattern-file line.
struct PatternRecord
{
    std::vector<std::string> vertices;
    std::vector<RecordInterval> intervals;
    std::vector<CenterRef> covering;
    std::vector<CenterRef> centers;
    std::vector<std::string> exceptions;
    double ic = 0.0;
    double dl = 0.0;
    double si = 0.0;
};

PatternRecord parse_pattern_record(const std::string& line);
std::vector<PatternRecord> read_pattern_records(std::istream& in);

}  // namespace csea
