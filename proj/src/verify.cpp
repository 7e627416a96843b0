#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cubeavoid/rng.hpp"
#include "cubeavoid/structure.hpp"

namespace cubeavoid {

namespace {

// Layer kinds; a layer is viewed as an n x n matrix M(a,b).
enum class LayerKind { row, column, file };

Symbol layer_at(const LatinCube& L, LayerKind kind, int v, int a, int b) {
    switch (kind) {
        case LayerKind::row: return L.at(v, a, b);
        case LayerKind::column: return L.at(a, v, b);
        default: return L.at(a, b, v);
    }
}

Cell layer_cell(LayerKind kind, int v, int a, int b) {
    switch (kind) {
        case LayerKind::row: return {v, a, b};
        case LayerKind::column: return {a, v, b};
        default: return {a, b, v};
    }
}

constexpr LayerKind kKinds[3] = {LayerKind::row, LayerKind::column, LayerKind::file};

struct Checker {
    StructureReport report;

    PropertyCheck& start(const std::string& name) {
        report.checks.push_back({name, true, "", {}});
        return report.checks.back();
    }

    void fail(PropertyCheck& c, const std::string& detail, const Cell& witness = {}) {
        c.pass = false;
        if (c.detail.empty()) c.detail = detail;
        if (witness != Cell{} && c.counterexample.size() < 4) c.counterexample.push_back(witness);
    }
};

bool class_low(Symbol s, int t) { return s <= t; }

// Number of class-mixing 4-cycles through matrix position (a,b) of the n x n
// Latin square M. One-class intercalates are a residue outside the catalogs
// (same convention as for subcubes) and are not counted.
int count_mixed_cycles_at(const std::vector<Symbol>& M, int n, int t, int a, int b) {
    auto at = [&](int x, int y) { return M[static_cast<std::size_t>(x - 1) * n + (y - 1)]; };
    int count = 0;
    Symbol s = at(a, b);
    for (int a2 = 1; a2 <= n; ++a2) {
        if (a2 == a) continue;
        int b2 = 0;
        for (int y = 1; y <= n; ++y)
            if (at(a2, y) == s) {
                b2 = y;
                break;
            }
        if (b2 == b) continue;
        if (at(a, b2) == at(a2, b) && class_low(s, t) != class_low(at(a, b2), t)) ++count;
    }
    return count;
}

std::vector<Symbol> layer_matrix(const LatinCube& L, LayerKind kind, int v) {
    const int n = L.order();
    std::vector<Symbol> M(static_cast<std::size_t>(n) * n);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            M[static_cast<std::size_t>(a - 1) * n + (b - 1)] = layer_at(L, kind, v, a, b);
    return M;
}

// Brute-force scan for all subcubes through (i1,j1,k1), testing the eight
// symbol equalities directly. Independent of the constructive route.
void brute_scan(const LatinCube& L, const Cell& c, std::vector<Subcube>& mixed,
                std::vector<Subcube>& mono) {
    const int n = L.order();
    const int t = n / 2;
    mixed.clear();
    mono.clear();
    Symbol x1 = L.at(c.i, c.j, c.k);
    for (int i2 = 1; i2 <= n; ++i2) {
        if (i2 == c.i) continue;
        for (int j2 = 1; j2 <= n; ++j2) {
            if (j2 == c.j) continue;
            if (L.at(i2, j2, c.k) != x1) continue;
            Symbol x2 = L.at(c.i, j2, c.k);
            if (L.at(i2, c.j, c.k) != x2) continue;
            for (int k2 = 1; k2 <= n; ++k2) {
                if (k2 == c.k) continue;
                if (L.at(c.i, c.j, k2) != x2) continue;
                if (L.at(c.i, j2, k2) == x1 && L.at(i2, c.j, k2) == x1 &&
                    L.at(i2, j2, k2) == x2) {
                    Subcube sc = Subcube::canonical(c.i, i2, c.j, j2, c.k, k2);
                    (class_low(x1, t) != class_low(x2, t) ? mixed : mono).push_back(sc);
                }
            }
        }
    }
    auto dedupe = [](std::vector<Subcube>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(mixed);
    dedupe(mono);
}

void check_latin(Checker& ck, const LatinCube& L) {
    auto& c = ck.start("latin");
    if (!is_latin(L)) ck.fail(c, "a line is not a permutation of 1..n");
}

void check_quadrants(Checker& ck, const LatinCube& L) {
    const int n = L.order();
    const int t = n / 2;
    auto& c = ck.start("quadrant-symbol-classes");
    for (LayerKind kind : kKinds)
        for (int v = 1; v <= n; ++v) {
            bool klass[2][2];
            for (int ah = 0; ah < 2; ++ah)
                for (int bh = 0; bh < 2; ++bh) {
                    std::set<Symbol> syms;
                    for (int a = 1 + ah * t; a <= t + ah * t; ++a)
                        for (int b = 1 + bh * t; b <= t + bh * t; ++b)
                            syms.insert(layer_at(L, kind, v, a, b));
                    bool low = class_low(*syms.begin(), t);
                    for (Symbol s : syms)
                        if (class_low(s, t) != low)
                            ck.fail(c, "quadrant mixes symbol classes", layer_cell(kind, v, 1 + ah * t, 1 + bh * t));
                    if (static_cast<int>(syms.size()) != t)
                        ck.fail(c, "quadrant does not carry a full class", layer_cell(kind, v, 1 + ah * t, 1 + bh * t));
                    klass[ah][bh] = low;
                }
            if (klass[0][0] != klass[1][1] || klass[0][1] != klass[1][0] ||
                klass[0][0] == klass[0][1])
                ck.fail(c, "opposite quadrants must share a class, adjacent must differ",
                        layer_cell(kind, v, 1, 1));
        }
}

void check_octants(Checker& ck, const LatinCube& L) {
    const int n = L.order();
    const int t = n / 2;
    auto& c = ck.start("octant-symbol-classes");
    for (int oc = 0; oc < 8; ++oc) {
        int ih = oc & 1, jh = (oc >> 1) & 1, kh = (oc >> 2) & 1;
        std::set<Symbol> syms;
        for (int i = 1 + ih * t; i <= t + ih * t; ++i)
            for (int j = 1 + jh * t; j <= t + jh * t; ++j)
                for (int k = 1 + kh * t; k <= t + kh * t; ++k) syms.insert(L.at(i, j, k));
        bool low = class_low(*syms.begin(), t);
        bool pure = static_cast<int>(syms.size()) == t;
        for (Symbol s : syms) pure = pure && class_low(s, t) == low;
        if (!pure) ck.fail(c, "octant is not monochromatic in one class",
                           {1 + ih * t, 1 + jh * t, 1 + kh * t});
        // opposite octant must carry the other class
        std::set<Symbol> opp;
        for (int i = 1 + (1 - ih) * t; i <= t + (1 - ih) * t; ++i)
            for (int j = 1 + (1 - jh) * t; j <= t + (1 - jh) * t; ++j)
                for (int k = 1 + (1 - kh) * t; k <= t + (1 - kh) * t; ++k)
                    opp.insert(L.at(i, j, k));
        if (class_low(*opp.begin(), t) == low)
            ck.fail(c, "opposite octants share a symbol class", {1 + ih * t, 1 + jh * t, 1 + kh * t});
    }
}

void check_four_cycles(Checker& ck, const LatinCube& L, const std::vector<Cell>* sample) {
    const int n = L.order();
    const int t = n / 2;
    auto& c = ck.start("four-cycles-per-cell");
    for (LayerKind kind : kKinds)
        for (int v = 1; v <= n; ++v) {
            auto M = layer_matrix(L, kind, v);
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= n; ++b) {
                    Cell cell = layer_cell(kind, v, a, b);
                    if (sample && !std::binary_search(sample->begin(), sample->end(), cell))
                        continue;
                    int cnt = count_mixed_cycles_at(M, n, t, a, b);
                    if (cnt != t)
                        ck.fail(c, "cell not in exactly t class-mixing layer 4-cycles", cell);
                }
        }
}

void check_cycle_determination(Checker& ck, const LatinCube& L) {
    const int n = L.order();
    const int t = n / 2;
    auto& c = ck.start("four-cycle-unique-determination");
    for (LayerKind kind : kKinds)
        for (int v = 1; v <= n; ++v) {
            auto M = layer_matrix(L, kind, v);
            auto at = [&](int x, int y) { return M[static_cast<std::size_t>(x - 1) * n + (y - 1)]; };
            // two cells of the same layer line whose other coordinate changes
            // halves sit in adjacent quadrants
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= t; ++b)
                    for (int b2 = t + 1; b2 <= n; ++b2) {
                        int found = 0;
                        for (int a2 = 1; a2 <= n; ++a2)
                            if (a2 != a && at(a2, b2) == at(a, b) && at(a2, b) == at(a, b2))
                                ++found;
                        if (found != 1)
                            ck.fail(c, "same-line adjacent-quadrant pair completes to " +
                                           std::to_string(found) + " cycles",
                                    layer_cell(kind, v, a, b));
                    }
            for (int b = 1; b <= n; ++b)
                for (int a = 1; a <= t; ++a)
                    for (int a2 = t + 1; a2 <= n; ++a2) {
                        int found = 0;
                        for (int b2 = 1; b2 <= n; ++b2)
                            if (b2 != b && at(a2, b2) == at(a, b) && at(a, b2) == at(a2, b))
                                ++found;
                        if (found != 1)
                            ck.fail(c, "same-line adjacent-quadrant pair completes to " +
                                           std::to_string(found) + " cycles",
                                    layer_cell(kind, v, a, b));
                    }
        }
}

void check_cycle_intersections(Checker& ck, const LatinCube& L) {
    const int n = L.order();
    auto& c = ck.start("four-cycle-intersections");
    for (LayerKind kind : kKinds)
        for (int v = 1; v <= n; ++v) {
            auto M = layer_matrix(L, kind, v);
            auto at = [&](int x, int y) { return M[static_cast<std::size_t>(x - 1) * n + (y - 1)]; };
            std::vector<std::array<int, 4>> cycles;  // positions (a-1)*n+(b-1), sorted
            for (int a = 1; a <= n; ++a)
                for (int a2 = a + 1; a2 <= n; ++a2)
                    for (int b = 1; b <= n; ++b)
                        for (int b2 = b + 1; b2 <= n; ++b2)
                            if (at(a, b) == at(a2, b2) && at(a, b2) == at(a2, b)) {
                                std::array<int, 4> cy = {(a - 1) * n + b - 1, (a - 1) * n + b2 - 1,
                                                         (a2 - 1) * n + b - 1, (a2 - 1) * n + b2 - 1};
                                cycles.push_back(cy);
                            }
            for (std::size_t x = 0; x < cycles.size(); ++x)
                for (std::size_t y = x + 1; y < cycles.size(); ++y) {
                    int common = 0;
                    for (int p : cycles[x])
                        for (int q : cycles[y])
                            if (p == q) ++common;
                    if (common != 0 && common != 1 && common != 4)
                        ck.fail(c, "two 4-cycles share " + std::to_string(common) + " cells",
                                layer_cell(kind, v, cycles[x][0] / n + 1, cycles[x][0] % n + 1));
                }
        }
}

void check_subcubes(Checker& ck, const StructureIndex& idx, const std::vector<Cell>* sample) {
    const LatinCube& L = idx.cube();
    const int n = idx.order();
    const int t = idx.half_order();
    auto& c = ck.start("subcube-count-per-cell");
    auto& agree = ck.start("subcube-brute-agreement");
    std::vector<Subcube> mixed, mono;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                Cell cell{i, j, k};
                if (sample && !std::binary_search(sample->begin(), sample->end(), cell)) continue;
                auto scs = idx.subcubes_through(cell);
                if (static_cast<int>(scs.size()) != t)
                    ck.fail(c, "constructive subcube count differs from t", cell);
                for (const Subcube& sc : scs) {
                    if (!sc.contains(cell)) ck.fail(c, "subcube does not contain its cell", cell);
                    if (!is_subcube_of(L, sc)) ck.fail(c, "catalog entry fails subcube equalities", cell);
                    Symbol a = L.at(sc.i1, sc.j1, sc.k1), b = L.at(sc.i1, sc.j2, sc.k1);
                    if (class_low(a, t) == class_low(b, t))
                        ck.fail(c, "catalog subcube does not mix the classes", cell);
                }
                brute_scan(L, cell, mixed, mono);
                if (mixed != scs) ck.fail(agree, "brute-force mixed subcubes differ", cell);
            }
}

void check_subcube_intersections(Checker& ck, const StructureIndex& idx) {
    auto& c = ck.start("subcube-intersections");
    const int n = idx.order();
    const std::size_t words = (static_cast<std::size_t>(n) * n * n + 63) / 64;
    std::vector<std::uint64_t> bits(idx.subcube_count() * words, 0);
    for (int id = 0; id < idx.subcube_count(); ++id)
        for (const Cell& cell : idx.subcube(id).cells()) {
            std::size_t ci = idx.cell_index(cell);
            bits[id * words + ci / 64] |= 1ULL << (ci % 64);
        }
    for (int x = 0; x < idx.subcube_count(); ++x)
        for (int y = x + 1; y < idx.subcube_count(); ++y) {
            int common = 0;
            for (std::size_t w = 0; w < words; ++w)
                common += std::popcount(bits[x * words + w] & bits[y * words + w]);
            if (common != 0 && common != 1 && common != 8) {
                ck.fail(c, "two subcubes share " + std::to_string(common) + " cells",
                        {idx.subcube(x).i1, idx.subcube(x).j1, idx.subcube(x).k1});
                return;
            }
        }
}

void check_half_transversal_sets(Checker& ck, const StructureIndex& idx) {
    const LatinCube& L = idx.cube();
    const int n = idx.order();
    const int t = idx.half_order();
    auto& c = ck.start("half-transversal-sets");
    auto& rel = ck.start("related-half-transversal-sets");
    auto& formula = ck.start("half-transversal-membership-formula");

    // class sizes of the containing-map partition
    std::vector<int> size(2 * n * n, 0);
    std::vector<std::vector<Cell>> members(2 * n * n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                members[idx.hts_id({i, j, k})].push_back({i, j, k});
                ++size[idx.hts_id({i, j, k})];
            }
    for (int h = 0; h < 2 * n * n; ++h)
        if (size[h] != t) {
            ck.fail(c, "half transversal-set classes must have t cells each");
            break;
        }

    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                Cell cell{i, j, k};
                auto hs = idx.half_transversal_set(cell);
                if (static_cast<int>(hs.size()) != t)
                    ck.fail(c, "determined half set size differs from t", cell);
                std::set<Symbol> syms;
                for (const Cell& m : hs) syms.insert(L.at(m.i, m.j, m.k));
                bool own_low = class_low(L.at(i, j, k), t);
                if (static_cast<int>(syms.size()) != t ||
                    class_low(*syms.begin(), t) == own_low ||
                    class_low(*syms.rbegin(), t) == own_low)
                    ck.fail(c, "determined half set symbols must be the full opposite class", cell);
                // symmetry and relatedness through ids
                int expected = idx.ts_id(cell) * 2 + (cell.i > t ? 0 : 1);
                for (const Cell& m : hs) {
                    if (idx.hts_id(m) != expected)
                        ck.fail(rel, "determined half set is not the related half", cell);
                    auto back = idx.half_transversal_set(m);
                    if (!std::binary_search(back.begin(), back.end(), cell))
                        ck.fail(c, "half-set symmetry fails", cell);
                }
            }

    // two same-class cells satisfy the congruence conditions
    for (int h = 0; h < 2 * n * n; ++h)
        for (std::size_t x = 0; x < members[h].size(); ++x)
            for (std::size_t y = x + 1; y < members[h].size(); ++y) {
                const Cell& a = members[h][x];
                const Cell& b = members[h][y];
                if (octant_of(a, t) != octant_of(b, t)) {
                    ck.fail(formula, "co-members in different octants", a);
                    continue;
                }
                int di = (a.i - b.i) % t, dj = (a.j - b.j) % t;
                int dk = orientation_of(a, t) == Orientation::plus_form ? (b.k - a.k) % t
                                                                        : (a.k - b.k) % t;
                auto norm = [&](int v) { return ((v % t) + t) % t; };
                if (norm(di) != norm(dj) || norm(dj) != norm(dk))
                    ck.fail(formula, "congruence i1-i2 = j1-j2 = +-(k2-k1) mod t fails", a);
            }
}

void check_transversal_sets(Checker& ck, const StructureIndex& idx) {
    const LatinCube& L = idx.cube();
    const int n = idx.order();
    auto& c = ck.start("transversal-sets");
    std::vector<std::vector<Cell>> members(n * n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) members[idx.ts_id({i, j, k})].push_back({i, j, k});
    for (int id = 0; id < n * n; ++id) {
        const auto& cells = members[id];
        if (static_cast<int>(cells.size()) != n) {
            ck.fail(c, "transversal-set size differs from n");
            continue;
        }
        std::set<Symbol> syms;
        std::set<std::pair<int, int>> rows, cols, files;
        for (const Cell& m : cells) {
            syms.insert(L.at(m.i, m.j, m.k));
            rows.insert({m.i, m.k});
            cols.insert({m.j, m.k});
            files.insert({m.i, m.j});
        }
        if (static_cast<int>(syms.size()) != n)
            ck.fail(c, "transversal-set symbols not all distinct", cells[0]);
        if (rows.size() != cells.size() || cols.size() != cells.size() ||
            files.size() != cells.size())
            ck.fail(c, "two transversal-set cells share a line", cells[0]);
        // closed under all-coordinate subcube mates
        for (const Cell& m : cells)
            for (const Subcube& sc : idx.subcubes_through(m)) {
                Cell far{m.i == sc.i1 ? sc.i2 : sc.i1, m.j == sc.j1 ? sc.j2 : sc.j1,
                         m.k == sc.k1 ? sc.k2 : sc.k1};
                if (idx.ts_id(far) != id)
                    ck.fail(c, "transversal-set not closed under subcube completion", m);
            }
    }
}

void check_row_file_blocks(Checker& ck, const StructureIndex& idx) {
    const LatinCube& L = idx.cube();
    const int n = idx.order();
    auto& rb = ck.start("row-blocks");
    auto& fb = ck.start("file-blocks");
    auto& ts_content = ck.start("row-file-block-transversal-content");

    // Property: for every row (i1,k1) and every k2 there is exactly one i2
    // with the identical symbol sequence; block grouping must agree.
    for (int i1 = 1; i1 <= n; ++i1)
        for (int k1 = 1; k1 <= n; ++k1)
            for (int k2 = 1; k2 <= n; ++k2) {
                int matches = 0, last = 0;
                for (int i2 = 1; i2 <= n; ++i2) {
                    bool eq = true;
                    for (int j = 1; j <= n && eq; ++j) eq = L.at(i1, j, k1) == L.at(i2, j, k2);
                    if (eq) {
                        ++matches;
                        last = i2;
                    }
                }
                if (matches != 1)
                    ck.fail(rb, "row sequence repeats " + std::to_string(matches) +
                                    " times in a file layer",
                            {i1, 1, k1});
                else if (idx.row_block_of(i1, k1) != idx.row_block_of(last, k2))
                    ck.fail(rb, "row block grouping disagrees with sequence equality", {i1, 1, k1});
            }
    for (int i1 = 1; i1 <= n; ++i1)
        for (int j1 = 1; j1 <= n; ++j1)
            for (int i2 = 1; i2 <= n; ++i2) {
                int matches = 0, last = 0;
                for (int j2 = 1; j2 <= n; ++j2) {
                    bool eq = true;
                    for (int k = 1; k <= n && eq; ++k) eq = L.at(i1, j1, k) == L.at(i2, j2, k);
                    if (eq) {
                        ++matches;
                        last = j2;
                    }
                }
                if (matches != 1)
                    ck.fail(fb, "file sequence repeats " + std::to_string(matches) +
                                    " times in a row layer",
                            {i1, j1, 1});
                else if (idx.file_block_of(i1, j1) != idx.file_block_of(i2, last))
                    ck.fail(fb, "file block grouping disagrees with sequence equality", {i1, j1, 1});
            }

    // every row/file block contains exactly n disjoint transversal-sets
    for (int blk = 0; blk < n; ++blk) {
        std::map<int, int> ts_rows, ts_files;
        for (int i = 1; i <= n; ++i)
            for (int k = 1; k <= n; ++k)
                if (idx.row_block_of(i, k) == blk)
                    for (int j = 1; j <= n; ++j) ++ts_rows[idx.ts_id({i, j, k})];
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (idx.file_block_of(i, j) == blk)
                    for (int k = 1; k <= n; ++k) ++ts_files[idx.ts_id({i, j, k})];
        if (static_cast<int>(ts_rows.size()) != n || static_cast<int>(ts_files.size()) != n)
            ck.fail(ts_content, "block does not decompose into n transversal-sets");
        for (auto& [id, cnt] : ts_rows)
            if (cnt != n) ck.fail(ts_content, "transversal-set only partially inside a row block");
        for (auto& [id, cnt] : ts_files)
            if (cnt != n) ck.fail(ts_content, "transversal-set only partially inside a file block");
    }
}

void check_half_columns(Checker& ck, const StructureIndex& idx, const std::vector<Cell>* sample) {
    const LatinCube& L = idx.cube();
    const int n = idx.order();
    const int t = idx.half_order();
    auto& c = ck.start("half-columns");
    auto column_sampled = [&](int j, int k) {
        if (!sample) return true;
        for (const Cell& s : *sample)
            if (s.j == j && s.k == k) return true;
        return false;
    };
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            if (!column_sampled(j, k)) continue;
            for (int half = 0; half < 2; ++half) {
                std::set<Symbol> syms;
                for (int i = 1 + half * t; i <= t + half * t; ++i) syms.insert(L.at(i, j, k));
                if (static_cast<int>(syms.size()) != t ||
                    class_low(*syms.begin(), t) != class_low(*syms.rbegin(), t))
                    ck.fail(c, "half column symbols must be one full class", {1 + half * t, j, k});
            }
            if (class_low(L.at(1, j, k), t) == class_low(L.at(n, j, k), t))
                ck.fail(c, "the two halves of a column must carry different classes", {1, j, k});
        }
}

// Generic half-block family audit: 4n blocks, t members each, together a
// partition of the 2n^2 ground structures.
void check_half_block_family(Checker& ck, const std::string& name,
                             const std::vector<int>& label_of_structure, int block_count, int n,
                             int t) {
    auto& c = ck.start(name);
    if (block_count != 4 * n) ck.fail(c, "family has " + std::to_string(block_count) +
                                             " blocks, expected 4n");
    std::vector<int> sz(block_count, 0);
    for (int lab : label_of_structure) {
        if (lab < 0 || lab >= block_count) {
            ck.fail(c, "unlabeled ground structure");
            return;
        }
        ++sz[lab];
    }
    for (int s : sz)
        if (s != t) ck.fail(c, "a block has " + std::to_string(s) + " members, expected t");
}

void check_half_blocks(Checker& ck, const StructureIndex& idx) {
    const int n = idx.order();
    const int t = idx.half_order();
    {
        auto& c = ck.start("half-block-label-consistency");
        for (const std::string& v : idx.build_violations()) ck.fail(c, v);
    }
    std::vector<int> lab(2 * n * n);

    auto gather = [&](auto&& of_structure) {
        for (int h = 0; h < 2 * n * n; ++h) lab[h] = of_structure(h);
        return lab;
    };
    // Rebuild per-structure labels through representative cells.
    std::vector<std::vector<Cell>> hc_members(2 * n * n), hts_members(2 * n * n),
        hss_members(2 * n * n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                Cell cell{i, j, k};
                hc_members[idx.half_column_id(cell)].push_back(cell);
                hts_members[idx.hts_id(cell)].push_back(cell);
                hss_members[idx.half_symbol_set_id(cell)].push_back(cell);
            }
    {
        auto& c = ck.start("half-symbol-sets");
        const LatinCube& L = idx.cube();
        for (int h = 0; h < 2 * n * n; ++h) {
            if (static_cast<int>(hss_members[h].size()) != t) {
                ck.fail(c, "half symbol-set classes must have t cells");
                continue;
            }
            Symbol s = L.at(hss_members[h][0].i, hss_members[h][0].j, hss_members[h][0].k);
            for (const Cell& m : hss_members[h]) {
                if (L.at(m.i, m.j, m.k) != s)
                    ck.fail(c, "half symbol-set mixes symbols", m);
                if (m.i != hss_members[h][0].i || (m.j > t) != (hss_members[h][0].j > t) ||
                    (m.k > t) != (hss_members[h][0].k > t))
                    ck.fail(c, "half symbol-set leaves its row-layer quadrant", m);
            }
        }
    }

    check_half_block_family(ck, "first-half-column-blocks",
                            gather([&](int h) { return idx.first_hcb_of(hc_members[h][0]); }),
                            idx.first_hcb_count(), n, t);
    check_half_block_family(ck, "second-half-column-blocks",
                            gather([&](int h) { return idx.second_hcb_of(hc_members[h][0]); }),
                            idx.second_hcb_count(), n, t);
    check_half_block_family(ck, "first-half-transversal-blocks",
                            gather([&](int h) { return idx.first_htb_of(hts_members[h][0]); }),
                            idx.first_htb_count(), n, t);
    check_half_block_family(ck, "second-half-transversal-blocks",
                            gather([&](int h) { return idx.second_htb_of(hts_members[h][0]); }),
                            idx.second_htb_count(), n, t);
    check_half_block_family(ck, "first-half-symbol-row-blocks",
                            gather([&](int h) { return idx.first_hsrb_of(hss_members[h][0]); }),
                            idx.first_hsrb_count(), n, t);
    check_half_block_family(ck, "second-half-symbol-row-blocks",
                            gather([&](int h) { return idx.second_hsrb_of(hss_members[h][0]); }),
                            idx.second_hsrb_count(), n, t);

    // first/second pairing within columns: the complements of a first block's
    // half columns form one second block
    {
        auto& c = ck.start("half-column-block-pairing");
        for (int h = 0; h < 2 * n * n; ++h) {
            int first = idx.first_hcb_of(hc_members[h][0]);
            int other = h ^ 1;  // other half of the same column
            int second = idx.second_hcb_of(hc_members[other][0]);
            // all half columns of `first` must map to the same `second`
            for (int h2 = 0; h2 < 2 * n * n; ++h2)
                if (idx.first_hcb_of(hc_members[h2][0]) == first &&
                    idx.second_hcb_of(hc_members[h2 ^ 1][0]) != second)
                    ck.fail(c, "first block's column complements span two second blocks",
                            hc_members[h2][0]);
        }
    }
}

void check_symbol_blocks(Checker& ck, const StructureIndex& idx) {
    const LatinCube& L = idx.cube();
    const int n = idx.order();
    auto& sc = ck.start("symbol-column-blocks");
    auto& sf = ck.start("symbol-file-blocks");
    // per column layer, each block's cells carry one symbol; blocks partition
    for (int blk = 0; blk < n; ++blk) {
        for (int j = 1; j <= n; ++j) {
            std::set<Symbol> syms;
            int count = 0;
            for (int i = 1; i <= n; ++i)
                for (int k = 1; k <= n; ++k)
                    if (idx.symcol_block_of({i, j, k}) == blk) {
                        syms.insert(L.at(i, j, k));
                        ++count;
                    }
            if (count != n || syms.size() != 1)
                ck.fail(sc, "block layer slice must be n cells of one symbol", {1, j, 1});
        }
        for (int k = 1; k <= n; ++k) {
            std::set<Symbol> syms;
            int count = 0;
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    if (idx.symfile_block_of({i, j, k}) == blk) {
                        syms.insert(L.at(i, j, k));
                        ++count;
                    }
            if (count != n || syms.size() != 1)
                ck.fail(sf, "block layer slice must be n cells of one symbol", {1, 1, k});
        }
    }
}

void check_block_determination(Checker& ck, const StructureIndex& idx) {
    const int n = idx.order();
    auto& c = ck.start("block-determination-duality");
    const std::size_t quarter = static_cast<std::size_t>(n) * n / 4;

    auto audit = [&](auto&& det_of, auto&& container_of, const char* what) {
        std::map<int, std::vector<Cell>> groups;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k) groups[det_of(Cell{i, j, k})].push_back({i, j, k});
        for (auto& [blk, cells] : groups) {
            int target = container_of(cells[0]);
            for (const Cell& m : cells)
                if (container_of(m) != target) {
                    ck.fail(c, std::string(what) + ": determining cells span two blocks", m);
                    return;
                }
            if (cells.size() != quarter)
                ck.fail(c, std::string(what) + ": determining set has wrong cardinality", cells[0]);
        }
    };

    audit([&](const Cell& x) { return idx.first_hcb_determined_by(x); },
          [&](const Cell& x) { return idx.first_htb_of(x); },
          "first half column block -> first half transversal block");
    audit([&](const Cell& x) { return idx.second_hcb_determined_by(x); },
          [&](const Cell& x) { return idx.first_htb_of(x); },
          "second half column block -> first half transversal block");
    audit([&](const Cell& x) { return idx.first_htb_determined_by(x); },
          [&](const Cell& x) { return idx.first_hcb_of(x); },
          "first half transversal block -> first half column block");
    audit([&](const Cell& x) { return idx.second_htb_determined_by(x); },
          [&](const Cell& x) { return idx.first_hcb_of(x); },
          "second half transversal block -> first half column block");
    audit([&](const Cell& x) { return idx.first_hsrb_determined_by(x); },
          [&](const Cell& x) { return idx.second_hcb_of(x); },
          "first half symbol-row block -> second half column block");
    audit([&](const Cell& x) { return idx.second_hsrb_determined_by(x); },
          [&](const Cell& x) { return idx.second_hcb_of(x); },
          "second half symbol-row block -> second half column block");
}

void check_subcube_cell_octants(Checker& ck, const StructureIndex& idx) {
    const int t = idx.half_order();
    auto& c = ck.start("subcube-cell-octants");
    for (int id = 0; id < idx.subcube_count(); ++id) {
        const Subcube& sc = idx.subcube(id);
        Cell a{sc.i1, sc.j1, sc.k1}, b{sc.i2, sc.j2, sc.k2};
        if (octant_of(b, t) != opposite(octant_of(a, t)))
            ck.fail(c, "all-coordinate mates are not in opposite octants", a);
        if (orientation_of(a, t) != orientation_of(b, t))
            ck.fail(c, "all-coordinate mates change orientation", a);
    }
}

void check_opposite_quadrant_completion(Checker& ck, const StructureIndex& idx) {
    const LatinCube& L = idx.cube();
    const int n = idx.order();
    const int t = idx.half_order();
    auto& c = ck.start("opposite-quadrant-subcube-completion");
    auto share_subcube = [&](const Cell& a, const Cell& b) {
        auto sa = idx.subcube_ids_through(a);
        auto sb = idx.subcube_ids_through(b);
        for (auto x : sa)
            for (auto y : sb)
                if (x == y) return true;
        return false;
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                // opposite quadrant within each layer: the two free coordinates flip
                int io = i > t ? 1 : t + 1, jo = j > t ? 1 : t + 1, ko = k > t ? 1 : t + 1;
                for (int j2 = jo; j2 < jo + t; ++j2)
                    for (int k2 = ko; k2 < ko + t; ++k2)
                        if (L.at(i, j2, k2) == L.at(i, j, k) &&
                            !share_subcube({i, j, k}, {i, j2, k2}))
                            ck.fail(c, "same-symbol opposite-quadrant pair shares no subcube",
                                    {i, j, k});
                for (int i2 = io; i2 < io + t; ++i2)
                    for (int k2 = ko; k2 < ko + t; ++k2)
                        if (L.at(i2, j, k2) == L.at(i, j, k) &&
                            !share_subcube({i, j, k}, {i2, j, k2}))
                            ck.fail(c, "same-symbol opposite-quadrant pair shares no subcube",
                                    {i, j, k});
                for (int i2 = io; i2 < io + t; ++i2)
                    for (int j2 = jo; j2 < jo + t; ++j2)
                        if (L.at(i2, j2, k) == L.at(i, j, k) &&
                            !share_subcube({i, j, k}, {i2, j2, k}))
                            ck.fail(c, "same-symbol opposite-quadrant pair shares no subcube",
                                    {i, j, k});
            }
}

void check_carried_structures(Checker& ck, const StructureIndex& idx, std::uint64_t seed) {
    const LatinCube& L0 = idx.cube();
    const int n = idx.order();
    const int t = idx.half_order();
    auto& c = ck.start("carried-structure-invariants");
    for (int trial = 0; trial < 3; ++trial) {
        SplitMix64 g(derive_seed(seed, trial));
        Isotopy sigma;
        sigma.rows = random_permutation(n, g);
        sigma.cols = random_permutation(n, g);
        sigma.files = random_permutation(n, g);
        sigma.symbols = random_permutation(n, g);
        LatinCube L = apply_isotopy(L0, sigma);
        if (!is_latin(L)) ck.fail(c, "isotopic image is not Latin");
        // image transversal-sets stay line-disjoint with distinct symbols
        std::vector<std::vector<Cell>> members(n * n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    members[idx.ts_id({i, j, k})].push_back(
                        {sigma.rows[i - 1], sigma.cols[j - 1], sigma.files[k - 1]});
        for (const auto& cells : members) {
            std::set<Symbol> syms;
            std::set<std::pair<int, int>> rows, cols, files;
            for (const Cell& m : cells) {
                syms.insert(L.at(m.i, m.j, m.k));
                rows.insert({m.i, m.k});
                cols.insert({m.j, m.k});
                files.insert({m.i, m.j});
            }
            if (static_cast<int>(syms.size()) != n || static_cast<int>(rows.size()) != n ||
                static_cast<int>(cols.size()) != n || static_cast<int>(files.size()) != n)
                ck.fail(c, "image transversal-set loses an invariant", cells[0]);
        }
        // image half columns carry one image class
        std::set<Symbol> low_image;
        for (int s = 1; s <= t; ++s) low_image.insert(sigma.symbols[s - 1]);
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int half = 0; half < 2; ++half) {
                    std::set<Symbol> syms;
                    for (int i = 1 + half * t; i <= t + half * t; ++i) {
                        Cell img{sigma.rows[i - 1], sigma.cols[j - 1], sigma.files[k - 1]};
                        syms.insert(L.at(img.i, img.j, img.k));
                    }
                    bool all_low = true, all_high = true;
                    for (Symbol s : syms) {
                        if (low_image.count(s)) all_high = false;
                        else all_low = false;
                    }
                    if (!(all_low || all_high))
                        ck.fail(c, "image half column mixes image classes");
                }
        // per-cell layer 4-cycle counts (all intercalates) are isotopy-invariant
        auto count_all = [n](const std::vector<Symbol>& M, int a, int b) {
            auto at = [&](int x, int y) { return M[static_cast<std::size_t>(x - 1) * n + (y - 1)]; };
            int count = 0;
            for (int a2 = 1; a2 <= n; ++a2) {
                if (a2 == a) continue;
                for (int b2 = 1; b2 <= n; ++b2)
                    if (b2 != b && at(a2, b2) == at(a, b) && at(a, b2) == at(a2, b)) ++count;
            }
            return count;
        };
        for (int v = 1; v <= n; ++v) {
            auto M0 = layer_matrix(L0, LayerKind::row, v);
            auto M1 = layer_matrix(L, LayerKind::row, sigma.rows[v - 1]);
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= n; ++b) {
                    int c0 = count_all(M0, a, b);
                    int c1 = count_all(M1, sigma.cols[a - 1], sigma.files[b - 1]);
                    if (c0 != c1) ck.fail(c, "image cell changes its 4-cycle count", {v, a, b});
                }
        }
    }
}

std::vector<Cell> sample_cells(int n, int count, std::uint64_t seed) {
    SplitMix64 g(seed);
    std::set<Cell> picked;
    while (static_cast<int>(picked.size()) < count)
        picked.insert({1 + static_cast<int>(g.below(n)), 1 + static_cast<int>(g.below(n)),
                       1 + static_cast<int>(g.below(n))});
    return {picked.begin(), picked.end()};
}

}  // namespace

StructureReport verify_intrinsic(const LatinCube& cube) {
    const int n = cube.order();
    if (n % 2 != 0) throw std::invalid_argument("starting cubes have even order");
    Checker ck;
    ck.report.t = n / 2;
    check_latin(ck, cube);
    check_quadrants(ck, cube);
    check_octants(ck, cube);
    check_four_cycles(ck, cube, nullptr);
    {
        auto& c = ck.start("subcube-count-per-cell");
        std::vector<Subcube> mixed, mono;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k) {
                    brute_scan(cube, {i, j, k}, mixed, mono);
                    if (static_cast<int>(mixed.size()) != n / 2)
                        ck.fail(c, "cell is not on exactly t mixed subcubes", {i, j, k});
                }
    }
    return ck.report;
}

StructureReport verify_properties(int t, VerifyMode mode, int exhaustive_bound,
                                  std::uint64_t sample_seed) {
    if (t < 1) throw std::invalid_argument("half order t must be >= 1");
    if (mode == VerifyMode::exhaustive && t > exhaustive_bound)
        throw std::invalid_argument(
            "t exceeds the exhaustive verification bound; request sampled mode for spot checks");

    StructureIndex idx = StructureIndex::build(t);
    Checker ck;
    ck.report.t = t;

    if (mode == VerifyMode::sampled) {
        const int n = idx.order();
        auto cells = sample_cells(n, std::min(128, n * n), sample_seed);
        check_latin(ck, idx.cube());
        check_four_cycles(ck, idx.cube(), &cells);
        check_subcubes(ck, idx, &cells);
        check_half_columns(ck, idx, &cells);
        auto& note = ck.start("mode");
        note.detail = "sampled spot checks only";
        return ck.report;
    }

    check_latin(ck, idx.cube());
    check_octants(ck, idx.cube());
    check_quadrants(ck, idx.cube());
    check_four_cycles(ck, idx.cube(), nullptr);
    check_cycle_determination(ck, idx.cube());
    check_cycle_intersections(ck, idx.cube());
    check_subcubes(ck, idx, nullptr);
    check_subcube_intersections(ck, idx);
    check_half_transversal_sets(ck, idx);
    check_transversal_sets(ck, idx);
    check_row_file_blocks(ck, idx);
    check_half_columns(ck, idx, nullptr);
    check_half_blocks(ck, idx);
    check_symbol_blocks(ck, idx);
    check_block_determination(ck, idx);
    check_subcube_cell_octants(ck, idx);
    check_opposite_quadrant_completion(ck, idx);
    check_carried_structures(ck, idx, sample_seed);
    {
        auto& c = ck.start("monochromatic-subcube-residue");
        std::ostringstream os;
        os << idx.monochromatic_subcube_count() << " one-class subcubes excluded from catalogs";
        c.detail = os.str();
    }
    return ck.report;
}

}  // namespace cubeavoid
