#include "cubeavoid/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cubeavoid/rng.hpp"
#include "cubeavoid/starting.hpp"

namespace cubeavoid {

Params Params::paper() {
    Params p;
    p.alpha = 0.5 - 38.0 * std::exp2(-27);
    p.gamma = std::exp2(-27);
    p.kappa = 6.0 * std::exp2(-27);
    p.epsilon = std::exp2(-6);
    p.theta = std::exp2(-13);
    return p;
}

Params Params::desk() {
    Params p;
    p.alpha = 0.25;
    p.gamma = std::exp2(-5);
    p.kappa = 0.5;
    p.epsilon = 0.5;
    p.theta = 0.5;
    return p;
}

std::vector<std::string> Params::regime_warnings(double n) const {
    std::vector<std::string> w;
    if (gamma > 1.0 / 3.0) w.push_back("gamma exceeds the 1/3 feasibility ceiling");
    if (epsilon * n < 3) w.push_back("epsilon*n < 3: outside the greedy guarantee regime");
    for (double v : {alpha, gamma, kappa, epsilon, theta})
        if (!(v > 0) || !(v < 1)) {
            w.push_back("a parameter lies outside (0,1)");
            break;
        }
    return w;
}

namespace {

// log(base^e) with the conventions 0^0 = 1 and 0^e = 0 for e > 0.
double log_pow(double base, double e) {
    if (e == 0) return 0.0;
    if (base == 0) return -std::numeric_limits<double>::infinity();
    return e * std::log(base);
}

double log_sum_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

UnionBoundResult union_bound_total(const Params& p, double n) {
    const double e2 = (0.5 - p.alpha - 2 * p.gamma) * n / 3.0;
    if (!(0.5 - p.alpha - 2 * p.gamma > 0))
        throw std::invalid_argument("union bound requires 1/2 - alpha - 2*gamma > 0");
    const double kn = p.kappa * n;
    double term1 = std::log(7.0) + 2 * std::log(n) + log_pow(p.gamma * n, kn) - std::lgamma(kn + 1);
    double term2 =
        std::log(3.0) + 3 * std::log(n) + log_pow(2 * p.gamma * n, e2) - std::lgamma(e2 + 1);
    UnionBoundResult r;
    r.log_value = log_sum_exp(term1, term2);
    r.value = r.log_value > 700 ? std::numeric_limits<double>::infinity() : std::exp(r.log_value);
    r.below_one = r.log_value < 0;
    return r;
}

int ConflictStats::max_line_conflicts() const {
    int m = 0;
    for (const auto* v : {&per_row, &per_col, &per_file})
        for (int c : *v) m = std::max(m, c);
    return m;
}

int ConflictStats::max_symset_conflicts() const {
    int m = 0;
    for (const auto* v : {&sym_row, &sym_col, &sym_file})
        for (int c : *v) m = std::max(m, c);
    return m;
}

int ConflictStats::max_ts_conflicts() const {
    int m = 0;
    for (int c : per_ts) m = std::max(m, c);
    return m;
}

int ConflictStats::min_allowed() const {
    int m = std::numeric_limits<int>::max();
    for (int c : allowed) m = std::min(m, c);
    return m;
}

bool is_allowed(const Subcube& sc, const LatinCube& cube, const ForbiddenCube& forbidden) {
    Symbol x1 = cube.at(sc.i1, sc.j1, sc.k1);
    Symbol x2 = cube.at(sc.i1, sc.j2, sc.k1);
    for (const Cell& c : sc.cells()) {
        Symbol after = cube.at(c.i, c.j, c.k) == x1 ? x2 : x1;
        if (forbidden.contains(c.i, c.j, c.k, after)) return false;
    }
    return true;
}

ConflictStats conflict_stats(const LatinCube& cube, const ForbiddenCube& forbidden,
                             const CarriedIndex& carried) {
    const int n = cube.order();
    if (forbidden.order() != n || carried.order() != n)
        throw std::invalid_argument("cube, forbidden array and catalog orders differ");
    ConflictStats st;
    st.n = n;
    const std::size_t lines = static_cast<std::size_t>(n) * n;
    st.per_row.assign(lines, 0);
    st.per_col.assign(lines, 0);
    st.per_file.assign(lines, 0);
    st.sym_row.assign(lines, 0);
    st.sym_col.assign(lines, 0);
    st.sym_file.assign(lines, 0);
    st.per_ts.assign(lines, 0);
    st.allowed.assign(lines * n, 0);
    st.conflict.assign(lines * n, 0);

    auto li = [n](int a, int b) { return static_cast<std::size_t>(a - 1) * n + (b - 1); };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                Symbol s = cube.at(i, j, k);
                if (!forbidden.contains(i, j, k, s)) continue;
                Cell c{i, j, k};
                st.conflict[cube.index(i, j, k)] = 1;
                st.conflict_cells.push_back(c);
                ++st.total;
                ++st.per_row[li(i, k)];
                ++st.per_col[li(j, k)];
                ++st.per_file[li(i, j)];
                ++st.sym_row[li(i, s)];
                ++st.sym_col[li(j, s)];
                ++st.sym_file[li(k, s)];
                ++st.per_ts[carried.ts_id(c)];
            }

    // Allowed-subcube counts: enumerate each catalog subcube once through the
    // isotopy and credit its eight image cells.
    const StructureIndex& idx = carried.base();
    const Isotopy& sg = carried.isotopy();
    for (int id = 0; id < idx.subcube_count(); ++id) {
        const Subcube& s0 = idx.subcube(id);
        const int I1 = sg.rows[s0.i1 - 1], I2 = sg.rows[s0.i2 - 1];
        const int J1 = sg.cols[s0.j1 - 1], J2 = sg.cols[s0.j2 - 1];
        const int K1 = sg.files[s0.k1 - 1], K2 = sg.files[s0.k2 - 1];
        // post-swap: corner-symbol cells take the other symbol and vice versa
        const Symbol corner_after = sg.symbols[idx.other_symbol(id) - 1];
        const Symbol other_after = sg.symbols[idx.corner_symbol(id) - 1];
        if (forbidden.contains(I1, J1, K1, corner_after) ||
            forbidden.contains(I2, J2, K1, corner_after) ||
            forbidden.contains(I1, J2, K2, corner_after) ||
            forbidden.contains(I2, J1, K2, corner_after) ||
            forbidden.contains(I1, J2, K1, other_after) ||
            forbidden.contains(I2, J1, K1, other_after) ||
            forbidden.contains(I1, J1, K2, other_after) ||
            forbidden.contains(I2, J2, K2, other_after))
            continue;
        for (int a : {I1, I2})
            for (int b : {J1, J2})
                for (int c : {K1, K2}) ++st.allowed[cube.index(a, b, c)];
    }
    return st;
}

bool meets_sparsity_conditions(const ConflictStats& stats, const Params& p, int n) {
    const double kn = p.kappa * n;
    return stats.max_line_conflicts() <= kn && stats.max_symset_conflicts() <= kn &&
           stats.max_ts_conflicts() <= kn && stats.min_allowed() >= p.alpha * n;
}

ConditionSummary summarize_conditions(const ConflictStats& stats, const Params& p, int n) {
    ConditionSummary s;
    for (int c : stats.per_row) s.max_row = std::max(s.max_row, c);
    for (int c : stats.per_col) s.max_col = std::max(s.max_col, c);
    for (int c : stats.per_file) s.max_file = std::max(s.max_file, c);
    s.max_symset = stats.max_symset_conflicts();
    s.max_ts = stats.max_ts_conflicts();
    s.min_allowed = stats.min_allowed();
    s.kappa_n = p.kappa * n;
    s.alpha_n = p.alpha * n;
    return s;
}

namespace {

// Violation score for ranking failed attempts: largest factor by which a
// condition misses its bound.
double violation_score(const ConditionSummary& s) {
    double worst = 0;
    for (int v : {s.max_row, s.max_col, s.max_file, s.max_symset, s.max_ts})
        if (v > s.kappa_n) worst = std::max(worst, s.kappa_n > 0 ? v / s.kappa_n : 1e30);
    if (s.min_allowed < s.alpha_n)
        worst = std::max(worst, s.alpha_n > 0 ? (s.alpha_n - s.min_allowed) / s.alpha_n : 0.0);
    return worst;
}

}  // namespace

IsotopySearchResult find_good_isotopy(const ForbiddenCube& forbidden, const Params& p,
                                      const StructureIndex& idx, std::uint64_t seed,
                                      int max_attempts) {
    if (forbidden.order() != idx.order())
        throw std::invalid_argument("forbidden array and catalog orders differ");
    if (max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
    const int n = idx.order();
    IsotopySearchResult res;
    double best_score = std::numeric_limits<double>::infinity();
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        SplitMix64 g(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        Isotopy sigma;
        sigma.rows = random_permutation(n, g);
        sigma.cols = random_permutation(n, g);
        sigma.files = random_permutation(n, g);
        sigma.symbols = random_permutation(n, g);
        LatinCube image = apply_isotopy(idx.cube(), sigma);
        CarriedIndex carried(idx, sigma);
        ConflictStats stats = conflict_stats(image, forbidden, carried);
        if (meets_sparsity_conditions(stats, p, n)) {
            res.ok = true;
            res.attempts_used = attempt;
            res.cube = std::move(image);
            res.sigma = std::move(sigma);
            res.stats = std::move(stats);
            return res;
        }
        double score = violation_score(summarize_conditions(stats, p, n));
        if (score < best_score) {
            best_score = score;
            res.best = summarize_conditions(stats, p, n);
            res.best_attempt = attempt;
        }
    }
    res.ok = false;
    res.attempts_used = max_attempts;
    return res;
}

}  // namespace cubeavoid
