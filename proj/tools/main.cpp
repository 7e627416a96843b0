#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cubeavoid/io.hpp"
#include "cubeavoid/oracle.hpp"
#include "cubeavoid/starting.hpp"
#include "cubeavoid/structure.hpp"
#include "cubeavoid/swap_engine.hpp"

namespace {

using cubeavoid::io::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;  // also I/O and parse errors
constexpr int kExitSolverFailure = 2;
constexpr int kExitVerifyFailure = 3;

std::uint64_t seed_or_env(std::optional<std::uint64_t> seed) {
    if (seed) return *seed;
    if (const char* env = std::getenv("CUBEAVOID_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") std::cout << text;
    else cubeavoid::io::write_text_file(out_path, text);
}

int cmd_gen(int n, int m, const std::string& model, std::optional<std::uint64_t> seed,
            const std::string& out_path, bool pretty) {
    if (m > n) {
        std::cerr << "gen: m must not exceed n\n";
        return kExitUsage;
    }
    if (n % 2 != 0)
        std::cerr << "gen: warning: odd order " << n << " cannot be fed to the solver\n";
    cubeavoid::InstanceSpec spec;
    spec.n = n;
    spec.m = m;
    spec.seed = seed_or_env(seed);
    if (model == "uniform" || model == "per-cell-uniform")
        spec.model = cubeavoid::DensityModel::per_cell_uniform;
    else if (model == "adversarial" || model == "adversarial-line-packing")
        spec.model = cubeavoid::DensityModel::adversarial_line_packing;
    else {
        std::cerr << "gen: unknown model '" << model << "'\n";
        return kExitUsage;
    }
    cubeavoid::ForbiddenCube cube = cubeavoid::generate_instance(spec);
    json j = cubeavoid::io::forbidden_to_json(cube);
    emit(pretty ? cubeavoid::io::pretty_dump(j) : cubeavoid::io::canonical_dump(j), out_path);
    std::ostream& summary = (out_path.empty() || out_path == "-") ? std::cerr : std::cout;
    summary << "n=" << n << " m=" << m << " filled-cells=" << cube.filled_cells()
            << " symbols=" << cube.total_symbols() << "\n";
    return kExitOk;
}

int cmd_solve(const std::string& in_path, const std::string& out_path, const std::string& preset,
              const std::vector<std::string>& explicit_params, std::optional<std::uint64_t> seed,
              int restarts, int attempts, int jobs, bool pretty) {
    cubeavoid::ForbiddenCube forbidden = cubeavoid::io::forbidden_from_json(
        cubeavoid::io::load_json_file(in_path));
    if (forbidden.order() % 2 != 0) {
        std::cerr << "solve: the pipeline needs even order\n";
        return kExitUsage;
    }
    cubeavoid::Params params = cubeavoid::io::params_preset(preset);
    if (!explicit_params.empty()) {
        if (explicit_params.size() != 5) {
            std::cerr << "solve: --params needs alpha gamma kappa epsilon theta\n";
            return kExitUsage;
        }
        params.alpha = cubeavoid::io::parse_param_value(explicit_params[0]);
        params.gamma = cubeavoid::io::parse_param_value(explicit_params[1]);
        params.kappa = cubeavoid::io::parse_param_value(explicit_params[2]);
        params.epsilon = cubeavoid::io::parse_param_value(explicit_params[3]);
        params.theta = cubeavoid::io::parse_param_value(explicit_params[4]);
    }
    cubeavoid::SolveResult res =
        cubeavoid::solve(forbidden, params, seed_or_env(seed), restarts, attempts, jobs);
    if (!res.ok) {
        std::cerr << cubeavoid::io::canonical_dump(cubeavoid::io::solve_failure_to_json(res));
        return kExitSolverFailure;
    }
    json j = cubeavoid::io::latin_to_json(*res.cube, &res.info.sigma);
    emit(pretty ? cubeavoid::io::pretty_dump(j) : cubeavoid::io::canonical_dump(j), out_path);
    std::ostream& summary = (out_path.empty() || out_path == "-") ? std::cerr : std::cout;
    summary << "restart=" << res.info.restart_used << " attempts=" << res.info.attempts_used
            << " conflicts-after-isotopy=" << res.info.conflicts_after_isotopy
            << " plan-size=" << res.info.plan_size << "\n";
    for (const std::string& w : res.info.regime_warnings)
        std::cerr << "note: " << w << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& latin_path, const std::string& forbidden_path) {
    cubeavoid::LatinCube cube =
        cubeavoid::io::latin_from_json(cubeavoid::io::load_json_file(latin_path));
    cubeavoid::ForbiddenCube forbidden = cubeavoid::io::forbidden_from_json(
        cubeavoid::io::load_json_file(forbidden_path));
    if (cube.order() != forbidden.order()) {
        std::cerr << "verify: orders differ (" << cube.order() << " vs " << forbidden.order()
                  << ")\n";
        return kExitUsage;
    }
    bool latin = cubeavoid::is_latin(cube);
    std::size_t bad = cubeavoid::conflicts(cube, forbidden).size();
    std::cout << (latin ? "latin" : "not Latin") << " conflicts=" << bad << "\n";
    return (latin && bad == 0) ? kExitOk : kExitVerifyFailure;
}

int cmd_inspect(const std::string& in_path, const std::string& cell_arg, const std::string& what,
                bool sampled) {
    std::optional<cubeavoid::Isotopy> iso;
    cubeavoid::LatinCube cube =
        cubeavoid::io::latin_from_json(cubeavoid::io::load_json_file(in_path), &iso);
    const int n = cube.order();
    if (n % 2 != 0) {
        std::cerr << "inspect: starting cubes have even order\n";
        return kExitUsage;
    }
    const int t = n / 2;

    if (what == "properties") {
        auto mode = sampled ? cubeavoid::VerifyMode::sampled : cubeavoid::VerifyMode::exhaustive;
        auto report = cubeavoid::verify_properties(t, mode);
        std::cout << cubeavoid::io::canonical_dump(
            cubeavoid::io::structure_report_to_json(report));
        return report.all_pass() ? kExitOk : kExitVerifyFailure;
    }

    cubeavoid::StructureIndex idx = cubeavoid::StructureIndex::build(t);
    if (!iso) iso = cubeavoid::Isotopy::identity(n);
    if (cubeavoid::apply_isotopy(idx.cube(), *iso) != cube) {
        std::cerr << "inspect: cube is not the starting cube (or its recorded isotopy image); "
                     "structures are undefined\n";
        return kExitUsage;
    }
    cubeavoid::CarriedIndex carried(idx, *iso);

    if (what == "catalog-counts") {
        std::cout << cubeavoid::io::canonical_dump(
            cubeavoid::io::catalog_counts_to_json(idx.counts()));
        return kExitOk;
    }

    cubeavoid::Cell cell;
    if (std::sscanf(cell_arg.c_str(), "%d,%d,%d", &cell.i, &cell.j, &cell.k) != 3) {
        std::cerr << "inspect: --cell expects i,j,k\n";
        return kExitUsage;
    }
    if (cell.i < 1 || cell.i > n || cell.j < 1 || cell.j > n || cell.k < 1 || cell.k > n) {
        std::cerr << "inspect: cell out of range\n";
        return kExitUsage;
    }

    json out;
    if (what == "subcubes") {
        json arr = json::array();
        for (const cubeavoid::Subcube& sc : carried.subcubes_through(cell))
            arr.push_back(json{{"i", {sc.i1, sc.i2}}, {"j", {sc.j1, sc.j2}},
                               {"k", {sc.k1, sc.k2}}});
        out = json{{"cell", {cell.i, cell.j, cell.k}}, {"subcubes", std::move(arr)}};
    } else if (what == "transversal-set") {
        json arr = json::array();
        for (const cubeavoid::Cell& c0 : idx.transversal_set_of(carried.pre(cell))) {
            cubeavoid::Cell img = carried.post(c0);
            arr.push_back(json::array({img.i, img.j, img.k}));
        }
        out = json{{"cell", {cell.i, cell.j, cell.k}}, {"transversal_set", std::move(arr)}};
    } else if (what == "blocks") {
        out = json{{"cell", {cell.i, cell.j, cell.k}},
                   {"row_block", carried.row_block_of(cell.i, cell.k)},
                   {"file_block", carried.file_block_of(cell.i, cell.j)},
                   {"symbol_block", carried.symbol_block_of(cube.at(cell.i, cell.j, cell.k))},
                   {"symbol_column_block", carried.symcol_block_of(cell)},
                   {"symbol_file_block", carried.symfile_block_of(cell)},
                   {"transversal_set", carried.ts_id(cell)},
                   {"half_transversal_set", carried.hts_id(cell)},
                   {"half_column", carried.half_column_id(cell)},
                   {"half_symbol_set", carried.half_symbol_set_id(cell)},
                   {"first_half_column_block", carried.first_hcb_of(cell)},
                   {"second_half_column_block", carried.second_hcb_of(cell)},
                   {"first_half_transversal_block", carried.first_htb_of(cell)},
                   {"second_half_transversal_block", carried.second_htb_of(cell)},
                   {"first_half_symbol_row_block", carried.first_hsrb_of(cell)},
                   {"second_half_symbol_row_block", carried.second_hsrb_of(cell)}};
    } else {
        std::cerr << "inspect: unknown query '" << what << "'\n";
        return kExitUsage;
    }
    std::cout << cubeavoid::io::canonical_dump(out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Latin cubes avoiding forbidden entries: instance generation, the "
                 "isotopy+swap solver, verification and structure inspection"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random forbidden array");
    int gen_n = 8, gen_m = 1;
    std::string gen_model = "uniform", gen_out;
    std::optional<std::uint64_t> gen_seed;
    bool gen_pretty = false;
    gen->add_option("-n,--order", gen_n, "cube order")->required();
    gen->add_option("-m,--bound", gen_m, "per-cell and per-line multiplicity bound")->required();
    gen->add_option("--model", gen_model, "uniform or adversarial");
    gen->add_option("--seed", gen_seed, "generator seed (or CUBEAVOID_SEED)");
    gen->add_option("-o,--out", gen_out, "output path (default stdout)");
    gen->add_flag("--pretty", gen_pretty, "indent the JSON output");

    // solve
    auto* solve = app.add_subcommand("solve", "find a Latin cube avoiding the instance");
    std::string solve_in, solve_out, solve_preset = "desk";
    std::vector<std::string> solve_params;
    std::optional<std::uint64_t> solve_seed;
    int solve_restarts = 10, solve_attempts = 100, solve_jobs = 1;
    bool solve_pretty = false;
    solve->add_option("-i,--in", solve_in, "forbidden cube file")->required();
    solve->add_option("-o,--out", solve_out, "output path (default stdout)");
    solve->add_option("--preset", solve_preset, "parameter preset: desk or paper");
    solve->add_option("--params", solve_params,
                      "explicit alpha gamma kappa epsilon theta (decimal or dyadic, e.g. 6*2^-27)")
        ->expected(5);
    solve->add_option("--seed", solve_seed, "solver seed (or CUBEAVOID_SEED)");
    solve->add_option("--restarts", solve_restarts, "outer retries on fresh isotopies");
    solve->add_option("--attempts", solve_attempts, "isotopy resamples per restart");
    solve->add_option("--jobs", solve_jobs, "parallel restart attempts");
    solve->add_flag("--pretty", solve_pretty, "indent the JSON output");

    // verify
    auto* verify = app.add_subcommand("verify", "check a solution against an instance");
    std::string verify_latin, verify_forbidden;
    verify->add_option("--latin", verify_latin, "latin cube file")->required();
    verify->add_option("--forbidden", verify_forbidden, "forbidden cube file")->required();

    // inspect
    auto* inspect = app.add_subcommand("inspect", "inspect starting-cube structures");
    std::string inspect_in, inspect_cell, inspect_what = "subcubes";
    bool inspect_sampled = false;
    inspect->add_option("-i,--in", inspect_in, "latin cube file")->required();
    inspect->add_option("--cell", inspect_cell, "cell as i,j,k");
    inspect->add_option("--what", inspect_what,
                        "subcubes | transversal-set | blocks | catalog-counts | properties");
    inspect->add_flag("--sampled", inspect_sampled, "sampled property checks for large t");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen(gen_n, gen_m, gen_model, gen_seed, gen_out, gen_pretty);
        if (solve->parsed())
            return cmd_solve(solve_in, solve_out, solve_preset, solve_params, solve_seed,
                             solve_restarts, solve_attempts, solve_jobs, solve_pretty);
        if (verify->parsed()) return cmd_verify(verify_latin, verify_forbidden);
        if (inspect->parsed())
            return cmd_inspect(inspect_in, inspect_cell, inspect_what, inspect_sampled);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
