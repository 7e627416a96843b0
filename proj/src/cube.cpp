#include "cubeavoid/cube.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cubeavoid {

namespace {

void check_range(int v, int n, const char* what) {
    if (v < 1 || v > n)
        throw std::out_of_range(std::string(what) + " index " + std::to_string(v) +
                                " out of range 1.." + std::to_string(n));
}

}  // namespace

std::size_t LatinSquare::idx(int i, int j) const {
    check_range(i, n_, "row");
    check_range(j, n_, "column");
    return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
}

bool LatinSquare::is_latin() const {
    std::vector<int> seen(static_cast<std::size_t>(n_) + 1, 0);
    for (int pass = 0; pass < 2; ++pass) {
        for (int a = 1; a <= n_; ++a) {
            std::fill(seen.begin(), seen.end(), 0);
            for (int b = 1; b <= n_; ++b) {
                Symbol s = pass == 0 ? at(a, b) : at(b, a);
                if (s < 1 || s > n_ || seen[s]++) return false;
            }
        }
    }
    return true;
}

LatinCube::LatinCube(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("cube order must be positive");
    a_.assign(static_cast<std::size_t>(n) * n * n, 0);
}

std::size_t LatinCube::index(int i, int j, int k) const {
    check_range(i, n_, "row layer");
    check_range(j, n_, "column layer");
    check_range(k, n_, "file layer");
    return (static_cast<std::size_t>(i - 1) * n_ + (j - 1)) * n_ + (k - 1);
}

ForbiddenCube::ForbiddenCube(int n, int m) : n_(n), m_(m) {
    if (n < 1) throw std::invalid_argument("cube order must be positive");
    if (m < 0 || m > n) throw std::invalid_argument("bound m must satisfy 0 <= m <= n");
    sets_.assign(static_cast<std::size_t>(n) * n * n, {});
}

std::size_t ForbiddenCube::index(int i, int j, int k) const {
    check_range(i, n_, "row layer");
    check_range(j, n_, "column layer");
    check_range(k, n_, "file layer");
    return (static_cast<std::size_t>(i - 1) * n_ + (j - 1)) * n_ + (k - 1);
}

void ForbiddenCube::add(int i, int j, int k, Symbol s) {
    check_range(s, n_, "symbol");
    auto& set = sets_[index(i, j, k)];
    auto it = std::lower_bound(set.begin(), set.end(), s);
    if (it == set.end() || *it != s) set.insert(it, s);
}

bool ForbiddenCube::contains(int i, int j, int k, Symbol s) const {
    const auto& set = sets_[index(i, j, k)];
    return std::binary_search(set.begin(), set.end(), s);
}

std::size_t ForbiddenCube::filled_cells() const {
    std::size_t c = 0;
    for (const auto& set : sets_) c += set.empty() ? 0 : 1;
    return c;
}

std::size_t ForbiddenCube::total_symbols() const {
    std::size_t c = 0;
    for (const auto& set : sets_) c += set.size();
    return c;
}

void ForbiddenCube::validate() const {
    for (const auto& set : sets_)
        if (static_cast<int>(set.size()) > m_)
            throw std::invalid_argument("cell set larger than m");
    // occurrence counts per (line, symbol)
    std::vector<int> row(static_cast<std::size_t>(n_) * n_ * n_, 0);
    std::vector<int> col(row.size(), 0);
    std::vector<int> file(row.size(), 0);
    auto line = [&](int a, int b, Symbol s) {
        return (static_cast<std::size_t>(a - 1) * n_ + (b - 1)) * n_ + (s - 1);
    };
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j)
            for (int k = 1; k <= n_; ++k)
                for (Symbol s : sets_[index(i, j, k)]) {
                    if (++row[line(i, k, s)] > m_)
                        throw std::invalid_argument("symbol exceeds m occurrences in a row");
                    if (++col[line(j, k, s)] > m_)
                        throw std::invalid_argument("symbol exceeds m occurrences in a column");
                    if (++file[line(i, j, s)] > m_)
                        throw std::invalid_argument("symbol exceeds m occurrences in a file");
                }
}

Subcube Subcube::canonical(int a1, int a2, int b1, int b2, int c1, int c2) {
    if (a1 == a2 || b1 == b2 || c1 == c2)
        throw std::invalid_argument("subcube coordinates must be pairwise distinct");
    Subcube sc;
    sc.i1 = std::min(a1, a2);
    sc.i2 = std::max(a1, a2);
    sc.j1 = std::min(b1, b2);
    sc.j2 = std::max(b1, b2);
    sc.k1 = std::min(c1, c2);
    sc.k2 = std::max(c1, c2);
    return sc;
}

std::array<Cell, 8> Subcube::cells() const {
    return {Cell{i1, j1, k1}, Cell{i1, j2, k1}, Cell{i2, j1, k1}, Cell{i2, j2, k1},
            Cell{i1, j1, k2}, Cell{i1, j2, k2}, Cell{i2, j1, k2}, Cell{i2, j2, k2}};
}

bool Subcube::contains(const Cell& c) const {
    return (c.i == i1 || c.i == i2) && (c.j == j1 || c.j == j2) && (c.k == k1 || c.k == k2);
}

Isotopy Isotopy::identity(int n) {
    Isotopy iso;
    iso.rows.resize(n);
    for (int v = 0; v < n; ++v) iso.rows[v] = v + 1;
    iso.cols = iso.rows;
    iso.files = iso.rows;
    iso.symbols = iso.rows;
    return iso;
}

namespace {

std::vector<int> invert_perm(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (std::size_t v = 0; v < p.size(); ++v) q[p[v] - 1] = static_cast<int>(v) + 1;
    return q;
}

std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(a.size());
    for (std::size_t v = 0; v < a.size(); ++v) c[v] = b[a[v] - 1];
    return c;
}

bool perm_valid(const std::vector<int>& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int v : p) {
        if (v < 1 || v > n || seen[v]++) return false;
    }
    return true;
}

}  // namespace

Isotopy Isotopy::inverse() const {
    Isotopy iso;
    iso.rows = invert_perm(rows);
    iso.cols = invert_perm(cols);
    iso.files = invert_perm(files);
    iso.symbols = invert_perm(symbols);
    return iso;
}

Isotopy Isotopy::compose(const Isotopy& a, const Isotopy& b) {
    Isotopy iso;
    iso.rows = compose_perm(a.rows, b.rows);
    iso.cols = compose_perm(a.cols, b.cols);
    iso.files = compose_perm(a.files, b.files);
    iso.symbols = compose_perm(a.symbols, b.symbols);
    return iso;
}

bool Isotopy::valid(int n) const {
    return perm_valid(rows, n) && perm_valid(cols, n) && perm_valid(files, n) &&
           perm_valid(symbols, n);
}

bool is_latin(const LatinCube& cube) {
    const int n = cube.order();
    std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
    auto check_line = [&](auto&& get) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int v = 1; v <= n; ++v) {
            Symbol s = get(v);
            if (s < 1 || s > n || seen[s]++) return false;
        }
        return true;
    };
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            if (!check_line([&](int v) { return cube.at(a, v, b); })) return false;  // row R_{a,b}
            if (!check_line([&](int v) { return cube.at(v, a, b); })) return false;  // column C_{a,b}
            if (!check_line([&](int v) { return cube.at(a, b, v); })) return false;  // file F_{a,b}
        }
    return true;
}

std::vector<Cell> conflicts(const LatinCube& cube, const ForbiddenCube& forbidden) {
    if (cube.order() != forbidden.order())
        throw std::invalid_argument("cube and forbidden array orders differ");
    std::vector<Cell> out;
    const int n = cube.order();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                if (forbidden.contains(i, j, k, cube.at(i, j, k))) out.push_back({i, j, k});
    return out;
}

bool is_subcube_of(const LatinCube& cube, const Subcube& sc) {
    const int n = cube.order();
    for (int v : {sc.i1, sc.i2, sc.j1, sc.j2, sc.k1, sc.k2})
        if (v < 1 || v > n) return false;
    if (sc.i1 == sc.i2 || sc.j1 == sc.j2 || sc.k1 == sc.k2) return false;
    Symbol x1 = cube.at(sc.i1, sc.j1, sc.k1);
    Symbol x2 = cube.at(sc.i1, sc.j2, sc.k1);
    if (x1 == x2) return false;
    return cube.at(sc.i2, sc.j2, sc.k1) == x1 && cube.at(sc.i1, sc.j2, sc.k2) == x1 &&
           cube.at(sc.i2, sc.j1, sc.k2) == x1 && cube.at(sc.i2, sc.j1, sc.k1) == x2 &&
           cube.at(sc.i1, sc.j1, sc.k2) == x2 && cube.at(sc.i2, sc.j2, sc.k2) == x2;
}

LatinCube swap_on(const LatinCube& cube, const Subcube& sc) {
    if (!is_subcube_of(cube, sc)) throw std::invalid_argument("not a subcube of the given cube");
    LatinCube out = cube;
    Symbol x1 = cube.at(sc.i1, sc.j1, sc.k1);
    Symbol x2 = cube.at(sc.i1, sc.j2, sc.k1);
    for (const Cell& c : sc.cells())
        out.set(c.i, c.j, c.k, cube.at(c.i, c.j, c.k) == x1 ? x2 : x1);
    return out;
}

LatinCube apply_isotopy(const LatinCube& cube, const Isotopy& sigma) {
    const int n = cube.order();
    if (!sigma.valid(n)) throw std::invalid_argument("isotopy components must be permutations of 1..n");
    LatinCube out(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                out.set(sigma.rows[i - 1], sigma.cols[j - 1], sigma.files[k - 1],
                        sigma.symbols[cube.at(i, j, k) - 1]);
    return out;
}

Subcube apply_isotopy(const Subcube& sc, const Isotopy& sigma) {
    return Subcube::canonical(sigma.rows[sc.i1 - 1], sigma.rows[sc.i2 - 1], sigma.cols[sc.j1 - 1],
                              sigma.cols[sc.j2 - 1], sigma.files[sc.k1 - 1],
                              sigma.files[sc.k2 - 1]);
}

}  // namespace cubeavoid
