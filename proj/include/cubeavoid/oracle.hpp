#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cubeavoid/cube.hpp"

namespace cubeavoid {

enum class DensityModel { per_cell_uniform, adversarial_line_packing };

// Seeded description of a random forbidden array. per_cell_uniform fills each
// cell with probability m/n (then 1..m symbols, uniform); the adversarial
// model packs cells toward the multiplicity frontier to stress the solver.
struct InstanceSpec {
    int n = 0;
    int m = 0;
    DensityModel model = DensityModel::per_cell_uniform;
    std::uint64_t seed = 0;
};

// Deterministic generation; the result always satisfies the per-cell and
// per-line multiplicity conditions (draws violating them are rejected).
ForbiddenCube generate_instance(const InstanceSpec& spec);

// Exhaustive avoidance search for tiny orders. A nullopt witness with
// `exhausted` set certifies that no Latin cube avoids the array.
struct AvoidSearchResult {
    std::optional<LatinCube> witness;
    bool exhausted = false;
    long long nodes = 0;
};

// Lexicographic cell order with forward checking on row/column/file
// availability minus the forbidden set. Complete for n <= exhaustive_bound;
// larger orders are rejected (use the main pipeline instead).
AvoidSearchResult backtracking_avoid(const ForbiddenCube& forbidden, int exhaustive_bound = 6);

struct FlaggedSubcube {
    Subcube sc;
    bool mixed = false;  // one symbol <= n/2 and one > n/2
};

// All subcubes through `cell` found by scanning every (i2,j2,k2) against the
// eight defining equalities. Monochromatic ones are included, flagged.
std::vector<FlaggedSubcube> brute_subcubes(const LatinCube& cube, const Cell& cell);

}  // namespace cubeavoid
