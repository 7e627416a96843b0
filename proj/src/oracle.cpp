#include "cubeavoid/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "cubeavoid/rng.hpp"

namespace cubeavoid {

namespace {

struct LineCounts {
    LineCounts(int n) : n_(n), row(sz(n), 0), col(sz(n), 0), file(sz(n), 0) {}
    static std::size_t sz(int n) { return static_cast<std::size_t>(n) * n * n; }
    std::size_t at(int a, int b, Symbol s) const {
        return (static_cast<std::size_t>(a - 1) * n_ + (b - 1)) * n_ + (s - 1);
    }
    bool admits(int i, int j, int k, Symbol s, int m) const {
        return row[at(i, k, s)] < m && col[at(j, k, s)] < m && file[at(i, j, s)] < m;
    }
    void bump(int i, int j, int k, Symbol s) {
        ++row[at(i, k, s)];
        ++col[at(j, k, s)];
        ++file[at(i, j, s)];
    }
    int n_;
    std::vector<int> row, col, file;
};

}  // namespace

ForbiddenCube generate_instance(const InstanceSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("instance order must be positive");
    if (spec.m > spec.n) throw std::invalid_argument("infeasible spec: m > n");
    ForbiddenCube out(spec.n, spec.m);
    if (spec.m == 0) return out;
    const int n = spec.n, m = spec.m;
    LineCounts counts(n);
    SplitMix64 g(derive_seed(spec.seed, 0x67656eULL));

    if (spec.model == DensityModel::per_cell_uniform) {
        const double fill = static_cast<double>(m) / n;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k) {
                    if (g.unit() >= fill) continue;
                    int want = 1 + static_cast<int>(g.below(m));
                    for (int d = 0; d < want; ++d) {
                        Symbol s = 1 + static_cast<int>(g.below(n));
                        if (static_cast<int>(out.set_at(i, j, k).size()) >= m) break;
                        if (out.contains(i, j, k, s) || !counts.admits(i, j, k, s, m)) continue;
                        out.add(i, j, k, s);
                        counts.bump(i, j, k, s);
                    }
                }
    } else {
        // Pack cells as full as the line caps allow, in shuffled order.
        std::vector<std::size_t> order(static_cast<std::size_t>(n) * n * n);
        for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
        for (std::size_t c = order.size() - 1; c > 0; --c)
            std::swap(order[c], order[g.below(c + 1)]);
        for (std::size_t flat : order) {
            int i = static_cast<int>(flat / (n * n)) + 1;
            int j = static_cast<int>((flat / n) % n) + 1;
            int k = static_cast<int>(flat % n) + 1;
            int misses = 0;
            while (static_cast<int>(out.set_at(i, j, k).size()) < m && misses < 4 * n) {
                Symbol s = 1 + static_cast<int>(g.below(n));
                if (out.contains(i, j, k, s) || !counts.admits(i, j, k, s, m)) {
                    ++misses;
                    continue;
                }
                out.add(i, j, k, s);
                counts.bump(i, j, k, s);
            }
        }
    }
    out.validate();
    return out;
}

AvoidSearchResult backtracking_avoid(const ForbiddenCube& forbidden, int exhaustive_bound) {
    const int n = forbidden.order();
    if (n > exhaustive_bound)
        throw std::invalid_argument(
            "order exceeds the exhaustive search bound; use the swap pipeline for larger cubes");
    if (n > 62) throw std::invalid_argument("order too large for mask search");

    std::vector<std::uint64_t> row(static_cast<std::size_t>(n) * n, 0);
    std::vector<std::uint64_t> col(row.size(), 0), file(row.size(), 0);
    std::vector<std::uint64_t> banned(static_cast<std::size_t>(n) * n * n, 0);
    auto li = [n](int a, int b) { return static_cast<std::size_t>(a) * n + b; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (Symbol s : forbidden.set_at(i + 1, j + 1, k + 1))
                    banned[(static_cast<std::size_t>(i) * n + j) * n + k] |= 1ULL << (s - 1);

    LatinCube cube(n);
    AvoidSearchResult res;
    std::vector<int> chosen(static_cast<std::size_t>(n) * n * n, -1);

    // iterative DFS over cells in lexicographic order
    long long pos = 0;
    const long long total = static_cast<long long>(n) * n * n;
    while (true) {
        if (pos == total) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        cube.set(i + 1, j + 1, k + 1,
                                 chosen[(static_cast<std::size_t>(i) * n + j) * n + k] + 1);
            res.witness = cube;
            res.exhausted = false;
            return res;
        }
        int i = static_cast<int>(pos / (n * n));
        int j = static_cast<int>((pos / n) % n);
        int k = static_cast<int>(pos % n);
        std::size_t flat = static_cast<std::size_t>(pos);
        std::uint64_t used = row[li(i, k)] | col[li(j, k)] | file[li(i, j)] | banned[flat];
        int from = chosen[flat];
        if (from >= 0) {  // undo the previous choice before advancing it
            std::uint64_t bit = 1ULL << from;
            row[li(i, k)] &= ~bit;
            col[li(j, k)] &= ~bit;
            file[li(i, j)] &= ~bit;
            used = row[li(i, k)] | col[li(j, k)] | file[li(i, j)] | banned[flat];
        }
        int next = -1;
        for (int s = from + 1; s < n; ++s)
            if (!(used & (1ULL << s))) {
                next = s;
                break;
            }
        if (next == -1) {
            chosen[flat] = -1;
            if (pos == 0) {
                res.exhausted = true;
                return res;
            }
            --pos;
            continue;
        }
        ++res.nodes;
        chosen[flat] = next;
        std::uint64_t bit = 1ULL << next;
        row[li(i, k)] |= bit;
        col[li(j, k)] |= bit;
        file[li(i, j)] |= bit;
        ++pos;
    }
}

std::vector<FlaggedSubcube> brute_subcubes(const LatinCube& cube, const Cell& cell) {
    const int n = cube.order();
    std::vector<FlaggedSubcube> out;
    Symbol x1 = cube.at(cell.i, cell.j, cell.k);
    for (int i2 = 1; i2 <= n; ++i2) {
        if (i2 == cell.i) continue;
        for (int j2 = 1; j2 <= n; ++j2) {
            if (j2 == cell.j) continue;
            if (cube.at(i2, j2, cell.k) != x1) continue;
            Symbol x2 = cube.at(cell.i, j2, cell.k);
            if (cube.at(i2, cell.j, cell.k) != x2) continue;
            for (int k2 = 1; k2 <= n; ++k2) {
                if (k2 == cell.k) continue;
                if (cube.at(cell.i, cell.j, k2) != x2) continue;
                if (cube.at(cell.i, j2, k2) == x1 && cube.at(i2, cell.j, k2) == x1 &&
                    cube.at(i2, j2, k2) == x2) {
                    FlaggedSubcube f;
                    f.sc = Subcube::canonical(cell.i, i2, cell.j, j2, cell.k, k2);
                    f.mixed = (x1 <= n / 2) != (x2 <= n / 2);
                    out.push_back(f);
                }
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const FlaggedSubcube& a, const FlaggedSubcube& b) { return a.sc < b.sc; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const FlaggedSubcube& a, const FlaggedSubcube& b) {
                              return a.sc == b.sc;
                          }),
              out.end());
    return out;
}

}  // namespace cubeavoid
