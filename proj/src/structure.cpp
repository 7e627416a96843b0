#include "cubeavoid/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cubeavoid {

namespace {

// Union-find over cell indices.
struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> parent;
};

int other_of(int v, int a, int b) { return v == a ? b : a; }

}  // namespace

int StructureIndex::half_symbol_set_id(const Cell& c) const {
    Symbol s = cube_.at(c.i, c.j, c.k);
    int quadrant = (c.j > t_ ? 2 : 0) + (c.k > t_ ? 1 : 0);
    return ((c.i - 1) * 4 + quadrant) * t_ + ((s - 1) % t_);
}

std::span<const std::int32_t> StructureIndex::subcube_ids_through(const Cell& c) const {
    return {through_.data() + cell_index(c) * t_, static_cast<std::size_t>(t_)};
}

std::vector<Subcube> StructureIndex::subcubes_through(const Cell& c) const {
    std::vector<Subcube> out;
    out.reserve(t_);
    for (std::int32_t id : subcube_ids_through(c)) out.push_back(subcubes_[id]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Cell> StructureIndex::half_transversal_set(const Cell& c) const {
    std::vector<Cell> out;
    out.reserve(t_);
    for (std::int32_t id : subcube_ids_through(c)) {
        const Subcube& sc = subcubes_[id];
        out.push_back({other_of(c.i, sc.i1, sc.i2), other_of(c.j, sc.j1, sc.j2),
                       other_of(c.k, sc.k1, sc.k2)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Cell> StructureIndex::transversal_set_of(const Cell& c) const {
    std::vector<Cell> out;
    const int id = ts_id(c);
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j)
            for (int k = 1; k <= n_; ++k)
                if (ts_of_cell_[cell_index({i, j, k})] == id) out.push_back({i, j, k});
    return out;
}

StructureIndex StructureIndex::build(int t) {
    if (t < 1) throw std::invalid_argument("half order t must be >= 1");
    StructureIndex idx;
    idx.t_ = t;
    idx.n_ = 2 * t;
    idx.cube_ = starting_latin_cube(t);
    const int n = idx.n_;
    const LatinCube& L = idx.cube_;
    const std::size_t cells = static_cast<std::size_t>(n) * n * n;

    // Symbol position inverses: i with L(i,j,k)=s per column, k with
    // L(i,j,k)=s per file.
    std::vector<std::int32_t> col_pos(cells), file_pos(cells);
    auto flat = [n](int a, int b, int s) {
        return (static_cast<std::size_t>(a - 1) * n + (b - 1)) * n + (s - 1);
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                Symbol s = L.at(i, j, k);
                col_pos[flat(j, k, s)] = i;
                file_pos[flat(i, j, s)] = k;
            }

    // Every mixed subcube has exactly one cell in the low octant; enumerate
    // subcubes from there. The far coordinates are forced: i2 places the
    // corner symbol in column (j2,k1), k2 places the row-mate symbol in file
    // (i1,j1).
    idx.subcubes_.reserve(static_cast<std::size_t>(t) * t * t * t);
    for (int i1 = 1; i1 <= t; ++i1)
        for (int j1 = 1; j1 <= t; ++j1)
            for (int k1 = 1; k1 <= t; ++k1) {
                Symbol x1 = L.at(i1, j1, k1);
                for (int j2 = t + 1; j2 <= n; ++j2) {
                    Symbol x2 = L.at(i1, j2, k1);
                    int i2 = col_pos[flat(j2, k1, x1)];
                    int k2 = file_pos[flat(i1, j1, x2)];
                    Subcube sc = Subcube::canonical(i1, i2, j1, j2, k1, k2);
                    idx.subcubes_.push_back(sc);
                    idx.corner_sym_.push_back(L.at(sc.i1, sc.j1, sc.k1));
                    idx.other_sym_.push_back(L.at(sc.i1, sc.j2, sc.k1));
                }
            }

    // Per-cell id lists, sorted by canonical subcube order.
    std::vector<std::int32_t> fill(cells, 0);
    idx.through_.assign(cells * t, -1);
    for (std::size_t id = 0; id < idx.subcubes_.size(); ++id)
        for (const Cell& c : idx.subcubes_[id].cells()) {
            std::size_t ci = idx.cell_index(c);
            idx.through_[ci * t + fill[ci]++] = static_cast<std::int32_t>(id);
        }
    for (std::size_t ci = 0; ci < cells; ++ci) {
        if (fill[ci] != t) throw std::logic_error("cell not on exactly t subcubes");
        auto* b = idx.through_.data() + ci * t;
        std::sort(b, b + t, [&](std::int32_t a, std::int32_t c2) {
            return idx.subcubes_[a] < idx.subcubes_[c2];
        });
    }

    // Count the residual one-class subcubes (excluded from all catalogs).
    {
        long long mono = 0;
        for (int i1 = 1; i1 <= t; ++i1)
            for (int j1 = 1; j1 <= t; ++j1)
                for (int k1 = 1; k1 <= t; ++k1)
                    for (int i2 = i1 + 1; i2 <= t; ++i2)
                        for (int j2 = j1 + 1; j2 <= t; ++j2) {
                            // same-octant candidate: all six coordinates low,
                            // completed by symbol positions
                            Symbol x1 = L.at(i1, j1, k1);
                            Symbol x2 = L.at(i1, j2, k1);
                            if (L.at(i2, j2, k1) != x1 || L.at(i2, j1, k1) != x2) continue;
                            for (int k2 = k1 + 1; k2 <= t; ++k2)
                                if (L.at(i1, j1, k2) == x2 && L.at(i1, j2, k2) == x1 &&
                                    L.at(i2, j1, k2) == x1 && L.at(i2, j2, k2) == x2)
                                    ++mono;
                        }
        // The same count occurs inside each octant; scale by the 8 octants.
        idx.mono_subcubes_ = mono * 8;
    }

    // Transversal-sets: components of the diagonal-mate relation.
    {
        DisjointSets ds(cells);
        for (const Subcube& sc : idx.subcubes_) {
            ds.unite(idx.cell_index({sc.i1, sc.j1, sc.k1}), idx.cell_index({sc.i2, sc.j2, sc.k2}));
            ds.unite(idx.cell_index({sc.i1, sc.j2, sc.k1}), idx.cell_index({sc.i2, sc.j1, sc.k2}));
            ds.unite(idx.cell_index({sc.i2, sc.j1, sc.k1}), idx.cell_index({sc.i1, sc.j2, sc.k2}));
            ds.unite(idx.cell_index({sc.i2, sc.j2, sc.k1}), idx.cell_index({sc.i1, sc.j1, sc.k2}));
        }
        std::vector<std::int32_t> root_id(cells, -1);
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                std::size_t root = ds.find(idx.cell_index({1, j, k}));
                std::int32_t id = static_cast<std::int32_t>(idx.line_index(j, k));
                if (root_id[root] != -1 && root_id[root] != id)
                    throw std::logic_error("transversal-set with two row-layer-1 cells");
                root_id[root] = id;
            }
        idx.ts_of_cell_.resize(cells);
        for (std::size_t ci = 0; ci < cells; ++ci) {
            std::int32_t id = root_id[ds.find(ci)];
            if (id == -1) throw std::logic_error("transversal-set missing a row-layer-1 cell");
            idx.ts_of_cell_[ci] = id;
        }
    }

    // Row blocks: group rows by symbol sequence; ids follow first appearance
    // in (i,k) scan order, which puts the block of R_{1,k} at id k-1.
    {
        idx.row_block_.assign(static_cast<std::size_t>(n) * n, -1);
        std::map<std::vector<Symbol>, std::int32_t> seen;
        for (int i = 1; i <= n; ++i)
            for (int k = 1; k <= n; ++k) {
                std::vector<Symbol> seq(n);
                for (int j = 1; j <= n; ++j) seq[j - 1] = L.at(i, j, k);
                auto [it, inserted] = seen.try_emplace(std::move(seq),
                                                       static_cast<std::int32_t>(seen.size()));
                idx.row_block_[idx.line_index(i, k)] = it->second;
            }
        if (static_cast<int>(seen.size()) != n) throw std::logic_error("row block count != n");
    }
    {
        idx.file_block_.assign(static_cast<std::size_t>(n) * n, -1);
        std::map<std::vector<Symbol>, std::int32_t> seen;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                std::vector<Symbol> seq(n);
                for (int k = 1; k <= n; ++k) seq[k - 1] = L.at(i, j, k);
                auto [it, inserted] = seen.try_emplace(std::move(seq),
                                                       static_cast<std::int32_t>(seen.size()));
                idx.file_block_[idx.line_index(i, j)] = it->second;
            }
        if (static_cast<int>(seen.size()) != n) throw std::logic_error("file block count != n");
    }

    // Symbol-column blocks: the (i,k) position groups of column layer 1.
    // Symbol-file blocks: the (i,j) position groups of file layer 1.
    idx.symcol_group_.assign(static_cast<std::size_t>(n) * n, -1);
    idx.symfile_group_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k) idx.symcol_group_[idx.line_index(i, k)] = L.at(i, 1, k) - 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) idx.symfile_group_[idx.line_index(i, j)] = L.at(i, j, 1) - 1;

    // Half-block families. Each cell determines t member structures; label
    // members on first appearance and cross-check on later ones.
    const std::size_t halves = static_cast<std::size_t>(2) * n * n;
    auto label_family = [&](std::vector<std::int32_t>& label, std::vector<std::int32_t>& det,
                            int& count, const char* family, auto&& members_of) {
        label.assign(halves, -1);
        det.assign(cells, -1);
        std::int32_t next = 0;
        std::vector<int> members(t);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k) {
                    Cell c{i, j, k};
                    members_of(c, members);
                    std::int32_t found = -1;
                    for (int mid : members)
                        if (label[mid] != -1) {
                            found = label[mid];
                            break;
                        }
                    if (found == -1) found = next++;
                    for (int mid : members) {
                        if (label[mid] != -1 && label[mid] != found)
                            idx.build_violations_.push_back(std::string(family) +
                                                            ": inconsistent member labels");
                        label[mid] = found;
                    }
                    det[idx.cell_index(c)] = found;
                }
        count = next;
    };

    // Member structures per determining cell c, one per subcube through c:
    //   first half column block:   half column of (i1, j2, k2)
    //   second half column block:  half column of (i2, j2, k2)
    //   first half transversal:    half transversal-set of (i1, j2, k2)
    //   second half transversal:   half transversal-set of (i2, j1, k1)
    //   first half symbol-row:     half symbol-set of (i2, j1, k1)
    //   second half symbol-row:    half symbol-set of (i2, j2, k2)
    auto corners = [&](const Cell& c, auto&& f) {
        const auto ids = idx.subcube_ids_through(c);
        for (int a = 0; a < t; ++a) {
            const Subcube& sc = idx.subcubes_[ids[a]];
            int oi = other_of(c.i, sc.i1, sc.i2);
            int oj = other_of(c.j, sc.j1, sc.j2);
            int ok = other_of(c.k, sc.k1, sc.k2);
            f(a, oi, oj, ok);
        }
    };
    label_family(idx.first_hcb_label_, idx.first_hcb_det_, idx.first_hcb_count_,
                 "first half column block", [&](const Cell& c, std::vector<int>& m) {
                     corners(c, [&](int a, int, int oj, int ok) {
                         m[a] = static_cast<int>(idx.line_index(oj, ok)) * 2 + (c.i > t ? 1 : 0);
                     });
                 });
    label_family(idx.second_hcb_label_, idx.second_hcb_det_, idx.second_hcb_count_,
                 "second half column block", [&](const Cell& c, std::vector<int>& m) {
                     corners(c, [&](int a, int oi, int oj, int ok) {
                         m[a] = static_cast<int>(idx.line_index(oj, ok)) * 2 + (oi > t ? 1 : 0);
                     });
                 });
    label_family(idx.first_htb_label_, idx.first_htb_det_, idx.first_htb_count_,
                 "first half transversal block", [&](const Cell& c, std::vector<int>& m) {
                     corners(c, [&](int a, int, int oj, int ok) {
                         m[a] = idx.hts_id({c.i, oj, ok});
                     });
                 });
    label_family(idx.second_htb_label_, idx.second_htb_det_, idx.second_htb_count_,
                 "second half transversal block", [&](const Cell& c, std::vector<int>& m) {
                     corners(c, [&](int a, int oi, int, int) {
                         m[a] = idx.hts_id({oi, c.j, c.k});
                     });
                 });
    label_family(idx.first_hsrb_label_, idx.first_hsrb_det_, idx.first_hsrb_count_,
                 "first half symbol-row block", [&](const Cell& c, std::vector<int>& m) {
                     corners(c, [&](int a, int oi, int, int) {
                         m[a] = idx.half_symbol_set_id({oi, c.j, c.k});
                     });
                 });
    label_family(idx.second_hsrb_label_, idx.second_hsrb_det_, idx.second_hsrb_count_,
                 "second half symbol-row block", [&](const Cell& c, std::vector<int>& m) {
                     corners(c, [&](int a, int oi, int oj, int ok) {
                         m[a] = idx.half_symbol_set_id({oi, oj, ok});
                     });
                 });

    return idx;
}

CatalogCounts StructureIndex::counts() const {
    CatalogCounts c;
    c.n = n_;
    c.t = t_;
    c.subcubes = subcube_count();
    c.transversal_sets = n_ * n_;
    c.half_transversal_sets = 2 * n_ * n_;
    c.half_columns = 2 * n_ * n_;
    c.half_symbol_sets = 2 * n_ * n_;
    c.row_blocks = n_;
    c.file_blocks = n_;
    c.symbol_blocks = n_;
    c.symbol_column_blocks = n_;
    c.symbol_file_blocks = n_;
    c.first_half_column_blocks = first_hcb_count_;
    c.second_half_column_blocks = second_hcb_count_;
    c.first_half_transversal_blocks = first_htb_count_;
    c.second_half_transversal_blocks = second_htb_count_;
    c.first_half_symbol_row_blocks = first_hsrb_count_;
    c.second_half_symbol_row_blocks = second_hsrb_count_;
    return c;
}

bool StructureReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

}  // namespace cubeavoid
