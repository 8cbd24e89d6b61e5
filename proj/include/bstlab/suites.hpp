#pragma once

#include "bstlab/opt.hpp"
#include "bstlab/rgreedy.hpp"
#include "bstlab/sequences.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bstlab {

/// One experiment outcome. The CSV schema is fixed:
/// suite,alg,class,n,k,seed,cost,rhs,pass,ms
struct ExperimentRecord {
    std::string suite;
    std::string alg;
    std::string klass;
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;
    double cost = 0.0;
    std::optional<double> rhs;
    bool pass = true;
    double ms = 0.0;
};

struct SuiteParams {
    int n = 64;
    int k = 2;
    int seeds = 10;          // records per configuration
    int samples = 100;       // sampling suites
    std::uint64_t base_seed = 1;
    std::uint64_t node_cap = 50'000'000;
    std::string fixture_dir = "fixtures";
};

/// Samples a permutation avoiding the given size-3 pattern, built from the
/// preorder and 3-increasing generators via reversal and complementation.
AccessSequence gen_avoiding_s3(const std::vector<int>& pattern, int n, std::uint64_t seed);

/// Runs one named suite; throws std::invalid_argument for unknown names.
/// Known suites: preorder-bound, sequential, decomp-theorem, input-revealing,
/// gadget-capture, gadget-monotone, gadget-alt, opt-decomp, split-safe,
/// kdecomp-equiv, perturbed-grid, hidden-elements, hardness-survey,
/// cole-showcase, regressions.
std::vector<ExperimentRecord> run_suite(const std::string& name, const SuiteParams& params);

std::vector<std::string> suite_names();

/// Records sorted by key; wall time is the only unstable column.
void sort_records(std::vector<ExperimentRecord>& records);
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
void write_json_lines(std::ostream& out, const std::vector<ExperimentRecord>& records);

// Shared checks between the suites and the acceptance runner.

struct DecompCase {
    DecompositionBound bound;
    bool satisfied = false;
};
DecompCase run_decomp_case(int n, int k, std::uint64_t seed);

struct InputRevealingCase {
    bool greedy_ok = false; // trace avoids P (x) Cap
    bool right_ok = false;  // GreedyRight trace avoids P (x) (1,2)
    bool left_ok = false;   // GreedyLeft trace avoids P (x) (2,1)
};
InputRevealingCase run_input_revealing_case(const std::vector<int>& pattern, int n,
                                            std::uint64_t seed);

} // namespace bstlab
