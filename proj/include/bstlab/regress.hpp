#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace bstlab {

struct RegressionBounds {
    int max_n = 10;        // exhaustive searches stop here
    int sample_n_lo = 6;   // sampled search size range (gadget-counter)
    int sample_n_hi = 14;
    int samples = 400;     // sampled search attempts
    std::uint64_t base_seed = 1;
};

struct RegressionOutcome {
    bool found = false;
    nlohmann::json fixture;
    std::string summary;
};

/// Searches for a permutation avoiding (3,2,1) whose Greedy trace (empty
/// history) contains (3,2,1); exhaustive over the avoiders by size.
RegressionOutcome search_pattern_counter(const RegressionBounds& bounds);

/// Searches for a separable permutation and a flat block deflation where a
/// region is touched by plain Greedy but the contracted run misses the
/// matching point, or vice versa; exhaustive by size.
RegressionOutcome search_decomp_counter(const RegressionBounds& bounds);

/// Samples path preorders with random initial trees, looking for an
/// access-free box of the touch matrix that contains every pattern of S_3.
RegressionOutcome search_gadget_counter(const RegressionBounds& bounds);

RegressionOutcome search_regression(const std::string& target, const RegressionBounds& bounds);

/// Re-runs the phenomenon a stored fixture describes; empty optional when
/// it reproduces, otherwise a description of the failure.
std::optional<std::string> verify_fixture(const nlohmann::json& fixture);

/// Loads (or searches and stores) the fixture for a target under dir, then
/// verifies it and re-runs the search. Returns a human-readable status;
/// ok=false when anything failed.
struct RegressionRun {
    bool ok = false;
    std::string detail;
};
RegressionRun run_regression(const std::string& target, const std::string& dir,
                             const RegressionBounds& bounds, bool allow_store);

} // namespace bstlab
