#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubeavoid/cube.hpp"
#include "cubeavoid/structure.hpp"

namespace cubeavoid {

// The five dimensionless constants steering the pipeline. `paper` is the
// published regime (only meaningful at astronomically large n); `desk` is a
// relaxed preset for orders that fit in memory. Desk runs void the guarantee
// and rely on retry.
struct Params {
    double alpha = 0;    // per-cell allowed-subcube richness: >= alpha*n required
    double gamma = 0;    // instance density m <= gamma*n in the guarantee regime
    double kappa = 0;    // conflict cap per line/set: <= kappa*n required
    double epsilon = 0;  // per-line used-cell overload threshold epsilon*n
    double theta = 0;    // per-layer/block used-cell overload threshold theta*n^2

    static Params paper();
    static Params desk();

    // Guarantee-regime diagnostics (advisory, never hard errors).
    std::vector<std::string> regime_warnings(double n) const;
};

// Left-hand side of the resampling success bound, evaluated in log space via
// lgamma. below_one means random isotopies are guaranteed to succeed with
// positive probability.
struct UnionBoundResult {
    double log_value = 0;
    double value = 0;
    bool below_one = false;
};

// Throws if 1/2 - alpha - 2*gamma <= 0 (the second term's regime).
UnionBoundResult union_bound_total(const Params& p, double n);

// Exact conflict counters for an isotopic image L against A, plus per-cell
// allowed-subcube counts. Line ids: row (i,k), column (j,k), file (i,j) each
// (a-1)*n+(b-1); symbol-set ids (layer-1)*n+(symbol-1) per layer kind;
// transversal-set ids are base-catalog ids.
struct ConflictStats {
    int n = 0;
    long long total = 0;
    std::vector<int> per_row, per_col, per_file;
    std::vector<int> sym_row, sym_col, sym_file;
    std::vector<int> per_ts;
    std::vector<int> allowed;  // per cell, image coordinates
    std::vector<std::uint8_t> conflict;
    std::vector<Cell> conflict_cells;

    int max_line_conflicts() const;
    int max_symset_conflicts() const;
    int max_ts_conflicts() const;
    int min_allowed() const;
};

// True iff after swapping on sc none of its eight cells is a conflict.
bool is_allowed(const Subcube& sc, const LatinCube& cube, const ForbiddenCube& forbidden);

ConflictStats conflict_stats(const LatinCube& cube, const ForbiddenCube& forbidden,
                             const CarriedIndex& carried);

// Conditions on an isotopic image: every row, column, file, symbol-set and
// transversal-set has at most kappa*n conflicts, and every cell lies on at
// least alpha*n allowed subcubes.
bool meets_sparsity_conditions(const ConflictStats& stats, const Params& p, int n);

struct ConditionSummary {
    int max_row = 0, max_col = 0, max_file = 0, max_symset = 0, max_ts = 0;
    int min_allowed = 0;
    double kappa_n = 0, alpha_n = 0;
};

ConditionSummary summarize_conditions(const ConflictStats& stats, const Params& p, int n);

struct IsotopySearchResult {
    bool ok = false;
    int attempts_used = 0;
    std::optional<LatinCube> cube;
    std::optional<Isotopy> sigma;
    std::optional<ConflictStats> stats;
    // On failure: the least-violating attempt's summary.
    ConditionSummary best;
    int best_attempt = 0;
};

// Draws i.i.d. uniform permutation quadruples (seeded, one derived stream per
// attempt) and accepts the first image of the starting cube meeting the
// sparsity conditions. Deterministic given (forbidden, params, seed).
IsotopySearchResult find_good_isotopy(const ForbiddenCube& forbidden, const Params& p,
                                      const StructureIndex& idx, std::uint64_t seed,
                                      int max_attempts);

}  // namespace cubeavoid
