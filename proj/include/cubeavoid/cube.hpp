#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <vector>

namespace cubeavoid {

using Symbol = int;  // symbols are 1..n

// A position in an n x n x n cube. Coordinates are 1-based: i indexes row
// layers, j column layers, k file layers. Lines are: row R_{i,k} (vary j),
// column C_{j,k} (vary i), file F_{i,j} (vary k).
struct Cell {
    int i = 0;
    int j = 0;
    int k = 0;
    auto operator<=>(const Cell&) const = default;
};

// n x n grid of symbols 1..n. Only used by the starting-square construction
// and its tests.
class LatinSquare {
public:
    explicit LatinSquare(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}

    int order() const { return n_; }
    Symbol at(int i, int j) const { return a_[idx(i, j)]; }
    void set(int i, int j, Symbol s) { a_[idx(i, j)] = s; }
    bool is_latin() const;

private:
    std::size_t idx(int i, int j) const;
    int n_;
    std::vector<Symbol> a_;
};

// n x n x n array of symbols. The mathematical layer is 1-based; storage is
// 0-based row-major with index ((i-1)*n + (j-1))*n + (k-1).
class LatinCube {
public:
    explicit LatinCube(int n);

    int order() const { return n_; }
    Symbol at(int i, int j, int k) const { return a_[index(i, j, k)]; }
    void set(int i, int j, int k, Symbol s) { a_[index(i, j, k)] = s; }

    std::size_t index(int i, int j, int k) const;
    std::size_t size() const { return a_.size(); }
    Symbol at_index(std::size_t idx) const { return a_[idx]; }

    bool operator==(const LatinCube&) const = default;

private:
    int n_;
    std::vector<Symbol> a_;
};

// The forbidden array A: one symbol set per cell, order n, per-cell and
// per-line multiplicity bound m. Sets are kept sorted.
class ForbiddenCube {
public:
    ForbiddenCube(int n, int m);

    int order() const { return n_; }
    int bound() const { return m_; }

    // Inserts s into A(i,j,k); duplicate inserts are ignored.
    void add(int i, int j, int k, Symbol s);
    bool contains(int i, int j, int k, Symbol s) const;
    const std::vector<Symbol>& set_at(int i, int j, int k) const { return sets_[index(i, j, k)]; }
    const std::vector<Symbol>& set_at_index(std::size_t idx) const { return sets_[idx]; }

    std::size_t filled_cells() const;
    std::size_t total_symbols() const;

    // Checks the four multiplicity conditions: |A(i,j,k)| <= m and each
    // symbol at most m times per row, column and file. Throws on violation.
    void validate() const;

    std::size_t index(int i, int j, int k) const;

private:
    int n_;
    int m_;
    std::vector<std::vector<Symbol>> sets_;
};

// Eight cells {i1,i2} x {j1,j2} x {k1,k2} carrying two symbols in the
// checkerboard pattern. Stored canonically with i1<i2, j1<j2, k1<k2.
struct Subcube {
    int i1 = 0, i2 = 0;
    int j1 = 0, j2 = 0;
    int k1 = 0, k2 = 0;

    static Subcube canonical(int a1, int a2, int b1, int b2, int c1, int c2);

    std::array<Cell, 8> cells() const;
    bool contains(const Cell& c) const;
    auto operator<=>(const Subcube&) const = default;
};

// Independent permutations of row layers, column layers, file layers and
// symbols. perm[v-1] is the image of v; values are 1-based.
struct Isotopy {
    std::vector<int> rows;
    std::vector<int> cols;
    std::vector<int> files;
    std::vector<int> symbols;

    static Isotopy identity(int n);
    Isotopy inverse() const;
    // c = compose(a, b) applies a first, then b.
    static Isotopy compose(const Isotopy& a, const Isotopy& b);
    bool valid(int n) const;
};

// True iff all 3n^2 lines are permutations of 1..n.
bool is_latin(const LatinCube& cube);

// Cells where cube(i,j,k) lies in forbidden(i,j,k), in row-major order.
// Throws if orders differ.
std::vector<Cell> conflicts(const LatinCube& cube, const ForbiddenCube& forbidden);

// True iff sc's eight cells carry exactly two symbols in the checkerboard
// pattern of a subcube of `cube`.
bool is_subcube_of(const LatinCube& cube, const Subcube& sc);

// Exchanges the two symbols of sc on its eight cells. Throws if sc is not a
// subcube of cube. The result is Latin whenever the input is.
LatinCube swap_on(const LatinCube& cube, const Subcube& sc);

// result(tau1(i), tau2(j), tau3(k)) = tau4(cube(i,j,k)).
LatinCube apply_isotopy(const LatinCube& cube, const Isotopy& sigma);

Subcube apply_isotopy(const Subcube& sc, const Isotopy& sigma);

}  // namespace cubeavoid
