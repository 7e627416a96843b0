#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubeavoid/cube.hpp"
#include "cubeavoid/search.hpp"
#include "cubeavoid/structure.hpp"

namespace cubeavoid {

// Used-cell counters for every structure family touched by the greedy plan.
// A structure is overloaded once its counter reaches its threshold:
// theta*n^2 for layers and full blocks, theta*n^2/2 for half blocks,
// epsilon*n for lines/transversal-sets/symbol-sets, epsilon*n/2 for half
// structures.
struct OverloadTracker {
    OverloadTracker(const CarriedIndex& carried, const Params& p);

    void mark_subcube_used(const Subcube& sc, const LatinCube& cube);
    bool cell_used(const Cell& c) const { return used[cell_index(c)] != 0; }

    std::size_t cell_index(const Cell& c) const {
        return (static_cast<std::size_t>(c.i - 1) * n + (c.j - 1)) * n + (c.k - 1);
    }
    std::size_t line_index(int a, int b) const {
        return static_cast<std::size_t>(a - 1) * n + (b - 1);
    }

    const CarriedIndex* carried;
    int n;
    double layer_thr, half_block_thr, line_thr, half_line_thr;

    std::vector<std::uint8_t> used;                                     // per cell
    std::vector<int> row_layer, col_layer, file_layer;                  // n each
    std::vector<int> row_block, file_block, symbol_block;               // n each
    std::vector<int> symcol_block, symfile_block;                       // n each
    std::vector<int> first_hcb, second_hcb;                             // 4n each
    std::vector<int> first_htb, second_htb;                             // 4n each
    std::vector<int> first_hsrb, second_hsrb;                           // 4n each
    std::vector<int> row, col, file, ts;                                // n^2 each
    std::vector<int> sym_row, sym_col, sym_file;                        // n^2 each
    std::vector<int> half_col, half_ts, half_ss;                        // 2n^2 each

private:
    void mark_cell(const Cell& c, Symbol s);
};

// One plan step: the conflict it repairs, the subcube swapped for it, and the
// conflict cell's symbols before/after the swap (used to detect stale plans).
struct SwapPlanEntry {
    Cell conflict;
    Subcube sc;
    Symbol before = 0;
    Symbol after = 0;
};

struct SwapPlan {
    std::vector<SwapPlanEntry> entries;
};

// Evaluates the full acceptance condition list for one candidate subcube
// around `conflict`: layer/block/half-block overloads, line/set/half-set
// overloads, and the per-cell conflict/used checks. Returns the first failed
// sub-condition's code, or nullopt when the candidate passes.
std::optional<std::string> candidate_passes(const Subcube& sc, const Cell& conflict,
                                            const OverloadTracker& tracker,
                                            const std::vector<std::uint8_t>& conflict_flags,
                                            const LatinCube& cube);

struct PlanResult {
    bool ok = false;
    SwapPlan plan;
    std::optional<OverloadTracker> tracker;  // final counters, for the bounds audit

    std::optional<Cell> stuck;
    int stuck_candidates = 0;
    std::map<std::string, int> stuck_eliminations;
    std::map<std::string, int> eliminations;  // accumulated over the whole run
};

// Greedy one-pass construction: conflicts in row-major order; among passing
// candidates, pick the one minimizing the worst post-increment
// counter/threshold ratio, ties by canonical subcube order. No backtracking;
// recovery is the caller's restart loop.
PlanResult build_swap_plan(const LatinCube& cube, const ForbiddenCube& forbidden, const Params& p,
                           const CarriedIndex& carried, std::uint64_t seed);

// Swaps on every plan subcube. Throws if entries overlap, are not subcubes of
// `cube`, or record symbols that no longer match (stale plan).
LatinCube apply_plan(const LatinCube& cube, const SwapPlan& plan);

// Used-cell caps that the proof's accounting guarantees whenever the input
// satisfied the sparsity conditions; returns violated cap descriptions.
std::vector<std::string> bookkeeping_violations(const OverloadTracker& tracker, const Params& p);

// Remaining-candidate lower bound of the greedy choice argument:
// alpha*n - 21*kappa*n - 7*epsilon*n - (90*kappa/epsilon)*n
// - (24*theta/epsilon)*n - (544*kappa/theta)*n - 25. Positive means the
// one-pass construction is guaranteed to finish.
double candidate_slack(const Params& p, double n);

struct RestartReport {
    int restart = 0;
    std::string phase;  // "isotopy" or "plan"
    int isotopy_attempts = 0;
    ConditionSummary isotopy_best;
    std::optional<Cell> stuck;
    int stuck_candidates = 0;
    std::map<std::string, int> stuck_eliminations;
    std::map<std::string, int> eliminations;
};

struct SolveInfo {
    int restart_used = 0;
    int attempts_used = 0;
    long long conflicts_after_isotopy = 0;
    int plan_size = 0;
    Isotopy sigma;
    std::vector<std::string> bookkeeping;
    std::vector<std::string> regime_warnings;
};

struct SolveResult {
    bool ok = false;
    std::optional<LatinCube> cube;
    SolveInfo info;
    std::vector<RestartReport> failures;
};

// Full pipeline: sparse isotopy search, greedy plan, swap. Up to `restarts`
// outer retries on fresh isotopies; deterministic given seed (independent of
// `jobs`, which only parallelizes restart waves).
SolveResult solve(const ForbiddenCube& forbidden, const Params& p, std::uint64_t seed,
                  int restarts = 10, int attempts_per_restart = 100, int jobs = 1);

}  // namespace cubeavoid
