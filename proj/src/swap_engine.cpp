#include "cubeavoid/swap_engine.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cubeavoid/rng.hpp"

namespace cubeavoid {

OverloadTracker::OverloadTracker(const CarriedIndex& car, const Params& p)
    : carried(&car), n(car.order()) {
    const double n2 = static_cast<double>(n) * n;
    layer_thr = p.theta * n2;
    half_block_thr = p.theta * n2 / 2;
    line_thr = p.epsilon * n;
    half_line_thr = p.epsilon * n / 2;
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    used.assign(nn * n, 0);
    row_layer.assign(n, 0);
    col_layer.assign(n, 0);
    file_layer.assign(n, 0);
    row_block.assign(n, 0);
    file_block.assign(n, 0);
    symbol_block.assign(n, 0);
    symcol_block.assign(n, 0);
    symfile_block.assign(n, 0);
    first_hcb.assign(4 * n, 0);
    second_hcb.assign(4 * n, 0);
    first_htb.assign(4 * n, 0);
    second_htb.assign(4 * n, 0);
    first_hsrb.assign(4 * n, 0);
    second_hsrb.assign(4 * n, 0);
    row.assign(nn, 0);
    col.assign(nn, 0);
    file.assign(nn, 0);
    ts.assign(nn, 0);
    sym_row.assign(nn, 0);
    sym_col.assign(nn, 0);
    sym_file.assign(nn, 0);
    half_col.assign(2 * nn, 0);
    half_ts.assign(2 * nn, 0);
    half_ss.assign(2 * nn, 0);
}

void OverloadTracker::mark_cell(const Cell& c, Symbol s) {
    used[cell_index(c)] = 1;
    ++row_layer[c.i - 1];
    ++col_layer[c.j - 1];
    ++file_layer[c.k - 1];
    ++row_block[carried->row_block_of(c.i, c.k)];
    ++file_block[carried->file_block_of(c.i, c.j)];
    ++symbol_block[carried->symbol_block_of(s)];
    ++symcol_block[carried->symcol_block_of(c)];
    ++symfile_block[carried->symfile_block_of(c)];
    ++first_hcb[carried->first_hcb_of(c)];
    ++second_hcb[carried->second_hcb_of(c)];
    ++first_htb[carried->first_htb_of(c)];
    ++second_htb[carried->second_htb_of(c)];
    ++first_hsrb[carried->first_hsrb_of(c)];
    ++second_hsrb[carried->second_hsrb_of(c)];
    ++row[line_index(c.i, c.k)];
    ++col[line_index(c.j, c.k)];
    ++file[line_index(c.i, c.j)];
    ++ts[carried->ts_id(c)];
    ++sym_row[line_index(c.i, s)];
    ++sym_col[line_index(c.j, s)];
    ++sym_file[line_index(c.k, s)];
    ++half_col[carried->half_column_id(c)];
    ++half_ts[carried->hts_id(c)];
    ++half_ss[carried->half_symbol_set_id(c)];
}

void OverloadTracker::mark_subcube_used(const Subcube& sc, const LatinCube& cube) {
    for (const Cell& c : sc.cells()) mark_cell(c, cube.at(c.i, c.j, c.k));
}

namespace {

int other_of(int v, int a, int b) { return v == a ? b : a; }

// Enumerates every (counter, threshold) pair a used cell contributes to, so
// the load-balancing tie-break can simulate increments uniformly.
template <typename F>
void for_each_counter(const OverloadTracker& tk, const Cell& c, Symbol s, F&& f) {
    const CarriedIndex& car = *tk.carried;
    f(tk.row_layer, static_cast<std::size_t>(c.i - 1), tk.layer_thr);
    f(tk.col_layer, static_cast<std::size_t>(c.j - 1), tk.layer_thr);
    f(tk.file_layer, static_cast<std::size_t>(c.k - 1), tk.layer_thr);
    f(tk.row_block, static_cast<std::size_t>(car.row_block_of(c.i, c.k)), tk.layer_thr);
    f(tk.file_block, static_cast<std::size_t>(car.file_block_of(c.i, c.j)), tk.layer_thr);
    f(tk.symbol_block, static_cast<std::size_t>(car.symbol_block_of(s)), tk.layer_thr);
    f(tk.symcol_block, static_cast<std::size_t>(car.symcol_block_of(c)), tk.layer_thr);
    f(tk.symfile_block, static_cast<std::size_t>(car.symfile_block_of(c)), tk.layer_thr);
    f(tk.first_hcb, static_cast<std::size_t>(car.first_hcb_of(c)), tk.half_block_thr);
    f(tk.second_hcb, static_cast<std::size_t>(car.second_hcb_of(c)), tk.half_block_thr);
    f(tk.first_htb, static_cast<std::size_t>(car.first_htb_of(c)), tk.half_block_thr);
    f(tk.second_htb, static_cast<std::size_t>(car.second_htb_of(c)), tk.half_block_thr);
    f(tk.first_hsrb, static_cast<std::size_t>(car.first_hsrb_of(c)), tk.half_block_thr);
    f(tk.second_hsrb, static_cast<std::size_t>(car.second_hsrb_of(c)), tk.half_block_thr);
    f(tk.row, tk.line_index(c.i, c.k), tk.line_thr);
    f(tk.col, tk.line_index(c.j, c.k), tk.line_thr);
    f(tk.file, tk.line_index(c.i, c.j), tk.line_thr);
    f(tk.ts, static_cast<std::size_t>(car.ts_id(c)), tk.line_thr);
    f(tk.sym_row, tk.line_index(c.i, s), tk.line_thr);
    f(tk.sym_col, tk.line_index(c.j, s), tk.line_thr);
    f(tk.sym_file, tk.line_index(c.k, s), tk.line_thr);
    f(tk.half_col, static_cast<std::size_t>(car.half_column_id(c)), tk.half_line_thr);
    f(tk.half_ts, static_cast<std::size_t>(car.hts_id(c)), tk.half_line_thr);
    f(tk.half_ss, static_cast<std::size_t>(car.half_symbol_set_id(c)), tk.half_line_thr);
}

}  // namespace

std::optional<std::string> candidate_passes(const Subcube& sc, const Cell& conflict,
                                            const OverloadTracker& tk,
                                            const std::vector<std::uint8_t>& conflict_flags,
                                            const LatinCube& cube) {
    const CarriedIndex& car = *tk.carried;
    const int i1 = conflict.i, j1 = conflict.j, k1 = conflict.k;
    const int i2 = other_of(i1, sc.i1, sc.i2);
    const int j2 = other_of(j1, sc.j1, sc.j2);
    const int k2 = other_of(k1, sc.k1, sc.k2);
    const Symbol x1 = cube.at(i1, j1, k1);
    const Symbol x2 = cube.at(i1, j2, k1);

    auto over = [](int count, double thr) { return count >= thr; };

    // (1) layers, full blocks
    if (over(tk.row_layer[i2 - 1], tk.layer_thr)) return "1:row-layer";
    if (over(tk.col_layer[j2 - 1], tk.layer_thr)) return "1:column-layer";
    if (over(tk.file_layer[k2 - 1], tk.layer_thr)) return "1:file-layer";
    if (over(tk.row_block[car.row_block_of(i2, k1)], tk.layer_thr)) return "1:row-block";
    if (over(tk.file_block[car.file_block_of(i1, j2)], tk.layer_thr)) return "1:file-block";
    if (over(tk.symcol_block[car.symcol_block_of({i2, j1, k1})], tk.layer_thr))
        return "1:symbol-column-block";
    if (over(tk.symfile_block[car.symfile_block_of({i1, j2, k1})], tk.layer_thr))
        return "1:symbol-file-block";
    if (over(tk.symbol_block[car.symbol_block_of(x2)], tk.layer_thr)) return "1:symbol-block";

    // (1) half blocks touching X = {(i1,j2,k1),(i2,j2,k1),(i1,j1,k2),(i2,j1,k2)}
    const Cell X[4] = {{i1, j2, k1}, {i2, j2, k1}, {i1, j1, k2}, {i2, j1, k2}};
    for (const Cell& x : X) {
        if (over(tk.first_hcb[car.first_hcb_of(x)], tk.half_block_thr))
            return "1:first-half-column-block";
        if (over(tk.second_hcb[car.second_hcb_of(x)], tk.half_block_thr))
            return "1:second-half-column-block";
        if (over(tk.first_htb[car.first_htb_of(x)], tk.half_block_thr))
            return "1:first-half-transversal-block";
        if (over(tk.second_htb[car.second_htb_of(x)], tk.half_block_thr))
            return "1:second-half-transversal-block";
        if (over(tk.first_hsrb[car.first_hsrb_of(x)], tk.half_block_thr))
            return "1:first-half-symbol-row-block";
        if (over(tk.second_hsrb[car.second_hsrb_of(x)], tk.half_block_thr))
            return "1:second-half-symbol-row-block";
    }
    // (1) remaining half blocks through single cells
    if (over(tk.first_hcb[car.first_hcb_of({i2, j2, k2})], tk.half_block_thr))
        return "1:first-half-column-block";
    if (over(tk.second_hcb[car.second_hcb_of({i1, j2, k2})], tk.half_block_thr))
        return "1:second-half-column-block";
    if (over(tk.first_htb[car.first_htb_of({i2, j1, k1})], tk.half_block_thr))
        return "1:first-half-transversal-block";
    if (over(tk.second_htb[car.second_htb_of({i1, j2, k2})], tk.half_block_thr))
        return "1:second-half-transversal-block";
    if (over(tk.first_hsrb[car.first_hsrb_of({i2, j2, k2})], tk.half_block_thr))
        return "1:first-half-symbol-row-block";
    if (over(tk.second_hsrb[car.second_hsrb_of({i2, j1, k1})], tk.half_block_thr))
        return "1:second-half-symbol-row-block";

    // (2a) rows, files, columns, half columns
    if (over(tk.row[tk.line_index(i2, k1)], tk.line_thr)) return "2a:row";
    if (over(tk.row[tk.line_index(i1, k2)], tk.line_thr)) return "2a:row";
    if (over(tk.row[tk.line_index(i2, k2)], tk.line_thr)) return "2a:row";
    if (over(tk.file[tk.line_index(i1, j2)], tk.line_thr)) return "2a:file";
    if (over(tk.file[tk.line_index(i2, j1)], tk.line_thr)) return "2a:file";
    if (over(tk.file[tk.line_index(i2, j2)], tk.line_thr)) return "2a:file";
    if (over(tk.col[tk.line_index(j2, k1)], tk.line_thr)) return "2a:column";
    if (over(tk.col[tk.line_index(j1, k2)], tk.line_thr)) return "2a:column";
    {
        int ha = car.half_column_id({i1, j2, k2});
        if (over(tk.half_col[ha], tk.half_line_thr)) return "2a:half-column";
        if (over(tk.half_col[ha ^ 1], tk.half_line_thr)) return "2a:half-column";
    }

    // (2b) transversal-sets and the two halves of the one through (i2,j1,k1)
    if (over(tk.ts[car.ts_id({i1, j2, k1})], tk.line_thr)) return "2b:transversal-set";
    if (over(tk.ts[car.ts_id({i2, j2, k1})], tk.line_thr)) return "2b:transversal-set";
    if (over(tk.half_ts[car.hts_id({i2, j1, k1})], tk.half_line_thr))
        return "2b:half-transversal-set";
    if (over(tk.half_ts[car.hts_id({i1, j2, k2})], tk.half_line_thr))
        return "2b:half-transversal-set";

    // (2c) symbol-sets of x1 seen from the far layers
    if (over(tk.sym_file[tk.line_index(k2, x1)], tk.line_thr)) return "2c:symbol-set";
    if (over(tk.sym_col[tk.line_index(j2, x1)], tk.line_thr)) return "2c:symbol-set";
    if (over(tk.sym_row[tk.line_index(i2, x1)], tk.line_thr)) return "2c:symbol-set";

    // (2d) symbol-sets of x2 around the conflict's layers
    if (over(tk.sym_file[tk.line_index(k1, x2)], tk.line_thr)) return "2d:symbol-set";
    if (over(tk.sym_row[tk.line_index(i1, x2)], tk.line_thr)) return "2d:symbol-set";
    if (over(tk.sym_col[tk.line_index(j1, x2)], tk.line_thr)) return "2d:symbol-set";

    // (2e) symbol-sets of x2 in the far layers, plus the two halves in row layer i2
    if (over(tk.sym_col[tk.line_index(j2, x2)], tk.line_thr)) return "2e:symbol-set";
    if (over(tk.sym_file[tk.line_index(k2, x2)], tk.line_thr)) return "2e:symbol-set";
    if (over(tk.half_ss[car.half_symbol_set_id({i2, j1, k1})], tk.half_line_thr))
        return "2e:half-symbol-set";
    if (over(tk.half_ss[car.half_symbol_set_id({i2, j2, k2})], tk.half_line_thr))
        return "2e:half-symbol-set";

    // (3) the seven non-conflict cells must be fresh
    auto flagged = [&](const Cell& c) { return conflict_flags[tk.cell_index(c)] != 0; };
    const Cell c3a[3] = {{i2, j1, k1}, {i1, j2, k1}, {i1, j1, k2}};
    for (const Cell& c : c3a) {
        if (flagged(c)) return "3a:conflict";
        if (tk.cell_used(c)) return "3a:used";
    }
    const Cell c3b[3] = {{i1, j2, k2}, {i2, j1, k2}, {i2, j2, k1}};
    for (const Cell& c : c3b) {
        if (flagged(c)) return "3b:conflict";
        if (tk.cell_used(c)) return "3b:used";
    }
    if (flagged({i2, j2, k2})) return "3c:conflict";
    if (tk.cell_used({i2, j2, k2})) return "3c:used";
    return std::nullopt;
}

namespace {

// Worst post-increment counter/threshold ratio if sc were accepted now.
double acceptance_pressure(const OverloadTracker& tk, const Subcube& sc, const LatinCube& cube) {
    std::map<std::pair<const void*, std::size_t>, std::pair<int, double>> touched;
    for (const Cell& c : sc.cells()) {
        Symbol s = cube.at(c.i, c.j, c.k);
        for_each_counter(tk, c, s, [&](const std::vector<int>& vec, std::size_t id, double thr) {
            auto& slot = touched[{static_cast<const void*>(&vec), id}];
            if (slot.first == 0) slot = {vec[id], thr};
            slot.first += 1;
        });
    }
    double worst = 0;
    for (auto& [key, v] : touched) {
        double thr = v.second <= 0 ? 1e-9 : v.second;
        worst = std::max(worst, v.first / thr);
    }
    return worst;
}

}  // namespace

PlanResult build_swap_plan(const LatinCube& cube, const ForbiddenCube& forbidden, const Params& p,
                           const CarriedIndex& carried, std::uint64_t /*seed*/) {
    if (cube.order() != forbidden.order() || cube.order() != carried.order())
        throw std::invalid_argument("cube, forbidden array and catalog orders differ");
    PlanResult res;
    OverloadTracker tracker(carried, p);
    std::vector<Cell> todo = conflicts(cube, forbidden);
    std::vector<std::uint8_t> flags(cube.size(), 0);
    for (const Cell& c : todo) flags[tracker.cell_index(c)] = 1;

    for (const Cell& f : todo) {
        auto candidates = carried.subcubes_through(f);
        const Subcube* best_sc = nullptr;
        double best_pressure = 0;
        for (const Subcube& sc : candidates) {
            if (!is_allowed(sc, cube, forbidden)) {
                ++res.eliminations["allowed"];
                continue;
            }
            if (auto reason = candidate_passes(sc, f, tracker, flags, cube)) {
                ++res.eliminations[*reason];
                continue;
            }
            double pressure = acceptance_pressure(tracker, sc, cube);
            if (best_sc == nullptr || pressure < best_pressure) {
                best_sc = &sc;
                best_pressure = pressure;
            }
        }
        if (best_sc == nullptr) {
            res.ok = false;
            res.stuck = f;
            res.stuck_candidates = static_cast<int>(candidates.size());
            // re-derive the per-candidate verdicts for the stuck conflict
            for (const Subcube& sc : candidates) {
                if (!is_allowed(sc, cube, forbidden))
                    ++res.stuck_eliminations["allowed"];
                else if (auto reason = candidate_passes(sc, f, tracker, flags, cube))
                    ++res.stuck_eliminations[*reason];
            }
            res.tracker = std::move(tracker);
            return res;
        }
        SwapPlanEntry entry;
        entry.conflict = f;
        entry.sc = *best_sc;
        entry.before = cube.at(f.i, f.j, f.k);
        entry.after = cube.at(f.i, entry.sc.j1 == f.j ? entry.sc.j2 : entry.sc.j1, f.k);
        tracker.mark_subcube_used(*best_sc, cube);
        res.plan.entries.push_back(entry);
    }
    res.ok = true;
    res.tracker = std::move(tracker);
    return res;
}

LatinCube apply_plan(const LatinCube& cube, const SwapPlan& plan) {
    std::set<Cell> seen;
    for (const auto& e : plan.entries) {
        if (!is_subcube_of(cube, e.sc))
            throw std::invalid_argument("plan entry is not a subcube of the cube");
        if (!e.sc.contains(e.conflict))
            throw std::invalid_argument("plan entry does not contain its conflict cell");
        if (cube.at(e.conflict.i, e.conflict.j, e.conflict.k) != e.before)
            throw std::invalid_argument("stale plan: recorded symbols no longer match the cube");
        for (const Cell& c : e.sc.cells())
            if (!seen.insert(c).second)
                throw std::invalid_argument("plan subcubes overlap");
    }
    LatinCube out = cube;
    for (const auto& e : plan.entries) out = swap_on(out, e.sc);
    return out;
}

std::vector<std::string> bookkeeping_violations(const OverloadTracker& tk, const Params& p) {
    std::vector<std::string> out;
    const double n = tk.n;
    const double layer_cap = 4 * p.kappa * n * n + p.theta * n * n + 3;
    const double half_cap = 1.5 * p.kappa * n * n + p.theta * n * n / 2;
    const double line_cap = 2 * p.kappa * n + p.epsilon * n + 1;
    auto audit = [&](const std::vector<int>& v, double cap, const char* what) {
        for (std::size_t id = 0; id < v.size(); ++id)
            if (v[id] > cap) {
                std::ostringstream os;
                os << what << " " << id << " holds " << v[id] << " used cells, cap " << cap;
                out.push_back(os.str());
            }
    };
    audit(tk.row_layer, layer_cap, "row layer");
    audit(tk.col_layer, layer_cap, "column layer");
    audit(tk.file_layer, layer_cap, "file layer");
    audit(tk.row_block, layer_cap, "row block");
    audit(tk.file_block, layer_cap, "file block");
    audit(tk.symbol_block, layer_cap, "symbol block");
    audit(tk.symcol_block, layer_cap, "symbol-column block");
    audit(tk.symfile_block, layer_cap, "symbol-file block");
    audit(tk.first_hcb, half_cap, "first half column block");
    audit(tk.second_hcb, half_cap, "second half column block");
    audit(tk.first_htb, half_cap, "first half transversal block");
    audit(tk.second_htb, half_cap, "second half transversal block");
    audit(tk.first_hsrb, half_cap, "first half symbol-row block");
    audit(tk.second_hsrb, half_cap, "second half symbol-row block");
    audit(tk.row, line_cap, "row");
    audit(tk.col, line_cap, "column");
    audit(tk.file, line_cap, "file");
    audit(tk.ts, line_cap, "transversal-set");
    audit(tk.sym_row, line_cap, "row-layer symbol-set");
    audit(tk.sym_col, line_cap, "column-layer symbol-set");
    audit(tk.sym_file, line_cap, "file-layer symbol-set");
    return out;
}

double candidate_slack(const Params& p, double n) {
    return p.alpha * n - 21 * p.kappa * n - 7 * p.epsilon * n - (90 * p.kappa / p.epsilon) * n -
           (24 * p.theta / p.epsilon) * n - (544 * p.kappa / p.theta) * n - 25;
}

namespace {

struct RestartOutcome {
    bool ok = false;
    RestartReport report;
    std::optional<LatinCube> cube;
    SolveInfo info;
};

RestartOutcome run_restart(const ForbiddenCube& forbidden, const Params& p,
                           const StructureIndex& idx, std::uint64_t seed, int restart,
                           int attempts) {
    RestartOutcome out;
    out.report.restart = restart;
    std::uint64_t rseed = derive_seed(seed, static_cast<std::uint64_t>(restart));
    IsotopySearchResult iso =
        find_good_isotopy(forbidden, p, idx, derive_seed(rseed, 1), attempts);
    if (!iso.ok) {
        out.report.phase = "isotopy";
        out.report.isotopy_attempts = iso.attempts_used;
        out.report.isotopy_best = iso.best;
        return out;
    }
    CarriedIndex carried(idx, *iso.sigma);
    PlanResult plan = build_swap_plan(*iso.cube, forbidden, p, carried, derive_seed(rseed, 2));
    if (!plan.ok) {
        out.report.phase = "plan";
        out.report.isotopy_attempts = iso.attempts_used;
        out.report.stuck = plan.stuck;
        out.report.stuck_candidates = plan.stuck_candidates;
        out.report.stuck_eliminations = plan.stuck_eliminations;
        out.report.eliminations = plan.eliminations;
        return out;
    }
    LatinCube result = apply_plan(*iso.cube, plan.plan);
    if (!is_latin(result) || !conflicts(result, forbidden).empty())
        throw std::logic_error("swap pipeline produced an unsound cube");
    out.ok = true;
    out.cube = std::move(result);
    out.info.restart_used = restart;
    out.info.attempts_used = iso.attempts_used;
    out.info.conflicts_after_isotopy = iso.stats->total;
    out.info.plan_size = static_cast<int>(plan.plan.entries.size());
    out.info.sigma = *iso.sigma;
    out.info.bookkeeping = bookkeeping_violations(*plan.tracker, p);
    return out;
}

}  // namespace

SolveResult solve(const ForbiddenCube& forbidden, const Params& p, std::uint64_t seed,
                  int restarts, int attempts_per_restart, int jobs) {
    const int n = forbidden.order();
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("the swap pipeline needs even order n >= 4");
    if (restarts < 1 || attempts_per_restart < 1 || jobs < 1)
        throw std::invalid_argument("restarts, attempts and jobs must be >= 1");

    StructureIndex idx = StructureIndex::build(n / 2);
    SolveResult res;
    res.info.regime_warnings = p.regime_warnings(n);

    for (int base = 1; base <= restarts; base += jobs) {
        const int wave = std::min(jobs, restarts - base + 1);
        std::vector<std::future<RestartOutcome>> futs;
        futs.reserve(wave);
        for (int w = 0; w < wave; ++w)
            futs.push_back(std::async(wave == 1 ? std::launch::deferred : std::launch::async,
                                      run_restart, std::cref(forbidden), std::cref(p),
                                      std::cref(idx), seed, base + w, attempts_per_restart));
        std::optional<RestartOutcome> winner;
        for (auto& f : futs) {
            RestartOutcome o = f.get();
            if (o.ok && !winner) winner = std::move(o);  // smallest restart index wins
            else if (!o.ok) res.failures.push_back(std::move(o.report));
        }
        if (winner) {
            res.ok = true;
            res.cube = std::move(winner->cube);
            auto warnings = std::move(res.info.regime_warnings);
            res.info = std::move(winner->info);
            res.info.regime_warnings = std::move(warnings);
            return res;
        }
    }
    res.ok = false;
    return res;
}

}  // namespace cubeavoid
