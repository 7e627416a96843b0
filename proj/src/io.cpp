#include "cubeavoid/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cubeavoid::io {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error("cube file: " + what);
}

json isotopy_to_json(const Isotopy& iso) {
    return json{{"rows", iso.rows}, {"cols", iso.cols}, {"files", iso.files},
                {"symbols", iso.symbols}};
}

Isotopy isotopy_from_json(const json& j, int n) {
    Isotopy iso;
    iso.rows = j.at("rows").get<std::vector<int>>();
    iso.cols = j.at("cols").get<std::vector<int>>();
    iso.files = j.at("files").get<std::vector<int>>();
    iso.symbols = j.at("symbols").get<std::vector<int>>();
    require(iso.valid(n), "isotopy record is not four permutations of 1..n");
    return iso;
}

}  // namespace

json latin_to_json(const LatinCube& cube, const Isotopy* iso) {
    const int n = cube.order();
    json cells = json::array();
    for (int i = 1; i <= n; ++i) {
        json plane = json::array();
        for (int j = 1; j <= n; ++j) {
            json line = json::array();
            for (int k = 1; k <= n; ++k) line.push_back(cube.at(i, j, k));
            plane.push_back(std::move(line));
        }
        cells.push_back(std::move(plane));
    }
    json out{{"kind", "latin"}, {"n", n}, {"cells", std::move(cells)}};
    if (iso != nullptr) out["isotopy"] = isotopy_to_json(*iso);
    return out;
}

LatinCube latin_from_json(const json& j, std::optional<Isotopy>* iso_out) {
    require(j.is_object(), "document must be an object");
    require(j.value("kind", "") == "latin", "kind must be \"latin\"");
    const int n = j.at("n").get<int>();
    require(n >= 1, "n must be positive");
    const json& cells = j.at("cells");
    require(cells.is_array() && static_cast<int>(cells.size()) == n, "cells must be n planes");
    LatinCube cube(n);
    for (int i = 1; i <= n; ++i) {
        const json& plane = cells[i - 1];
        require(plane.is_array() && static_cast<int>(plane.size()) == n, "plane must have n lines");
        for (int jj = 1; jj <= n; ++jj) {
            const json& line = plane[jj - 1];
            require(line.is_array() && static_cast<int>(line.size()) == n,
                    "line must have n entries");
            for (int k = 1; k <= n; ++k) {
                int s = line[k - 1].get<int>();
                require(s >= 1 && s <= n, "symbol out of range");
                cube.set(i, jj, k, s);
            }
        }
    }
    if (iso_out != nullptr) {
        if (j.contains("isotopy")) *iso_out = isotopy_from_json(j.at("isotopy"), n);
        else iso_out->reset();
    }
    return cube;
}

json forbidden_to_json(const ForbiddenCube& forbidden) {
    const int n = forbidden.order();
    json cells = json::array();
    for (int i = 1; i <= n; ++i) {
        json plane = json::array();
        for (int j = 1; j <= n; ++j) {
            json line = json::array();
            for (int k = 1; k <= n; ++k) line.push_back(forbidden.set_at(i, j, k));
            plane.push_back(std::move(line));
        }
        cells.push_back(std::move(plane));
    }
    return json{{"kind", "forbidden"}, {"n", n}, {"m", forbidden.bound()},
                {"cells", std::move(cells)}};
}

ForbiddenCube forbidden_from_json(const json& j, bool validate) {
    require(j.is_object(), "document must be an object");
    require(j.value("kind", "") == "forbidden", "kind must be \"forbidden\"");
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    require(n >= 1, "n must be positive");
    ForbiddenCube out(n, m);
    const json& cells = j.at("cells");
    require(cells.is_array() && static_cast<int>(cells.size()) == n, "cells must be n planes");
    for (int i = 1; i <= n; ++i)
        for (int jj = 1; jj <= n; ++jj)
            for (int k = 1; k <= n; ++k) {
                const json& set = cells[i - 1][jj - 1][k - 1];
                require(set.is_array(), "cell sets must be arrays");
                for (const json& v : set) {
                    int s = v.get<int>();
                    require(s >= 1 && s <= n, "symbol out of range");
                    out.add(i, jj, k, s);
                }
            }
    if (validate) out.validate();
    return out;
}

std::string canonical_dump(const json& j) { return j.dump() + "\n"; }
std::string pretty_dump(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

namespace {

struct ParamParser {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void bail(const std::string& what) {
        throw std::runtime_error("parameter expression '" + std::string(s) + "': " + what);
    }

    double parse_int() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) bail("expected an integer");
        return std::stod(std::string(s.substr(start, pos - start)));
    }

    double parse_number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '.'))
            ++pos;
        if (start == pos) bail("expected a number");
        double v = std::stod(std::string(s.substr(start, pos - start)));
        if (eat('/')) {
            double d = parse_number();
            if (d == 0) bail("division by zero");
            return v / d;
        }
        return v;
    }

    bool at_power() {
        skip_ws();
        return pos + 1 < s.size() && s[pos] == '2' && s[pos + 1] == '^';
    }

    double parse_power() {
        pos += 2;  // "2^"
        return std::exp2(parse_int());
    }

    double parse_term() {
        if (at_power()) return parse_power();
        double v = parse_number();
        if (eat('*')) {
            if (!at_power()) bail("only powers of two may follow '*'");
            v *= parse_power();
        }
        return v;
    }

    double parse() {
        double v = parse_term();
        while (true) {
            skip_ws();
            if (eat('+')) v += parse_term();
            else if (eat('-')) v -= parse_term();
            else break;
        }
        skip_ws();
        if (pos != s.size()) bail("trailing characters");
        return v;
    }
};

double param_field(const json& j, const char* name) {
    const json& v = j.at(name);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_param_value(v.get<std::string>());
    throw std::runtime_error(std::string("parameter ") + name + " must be a number or string");
}

}  // namespace

double parse_param_value(std::string_view text) {
    ParamParser p{text};
    return p.parse();
}

Params params_preset(const std::string& name) {
    if (name == "paper") return Params::paper();
    if (name == "desk") return Params::desk();
    throw std::runtime_error("unknown preset '" + name + "' (expected paper or desk)");
}

json params_to_json(const Params& p) {
    return json{{"alpha", p.alpha}, {"gamma", p.gamma}, {"kappa", p.kappa},
                {"epsilon", p.epsilon}, {"theta", p.theta}};
}

Params params_from_json(const json& j) {
    Params p;
    p.alpha = param_field(j, "alpha");
    p.gamma = param_field(j, "gamma");
    p.kappa = param_field(j, "kappa");
    p.epsilon = param_field(j, "epsilon");
    p.theta = param_field(j, "theta");
    return p;
}

namespace {

json cell_to_json(const Cell& c) { return json::array({c.i, c.j, c.k}); }

json string_counts_to_json(const std::map<std::string, int>& m) {
    json out = json::object();
    for (const auto& [k, v] : m) out[k] = v;
    return out;
}

}  // namespace

json structure_report_to_json(const StructureReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        json jc{{"name", c.name}, {"pass", c.pass}};
        if (!c.detail.empty()) jc["detail"] = c.detail;
        if (!c.counterexample.empty()) {
            json cells = json::array();
            for (const Cell& cell : c.counterexample) cells.push_back(cell_to_json(cell));
            jc["counterexample"] = std::move(cells);
        }
        checks.push_back(std::move(jc));
    }
    return json{{"t", report.t}, {"all_pass", report.all_pass()}, {"checks", std::move(checks)}};
}

json catalog_counts_to_json(const CatalogCounts& c) {
    return json{{"n", c.n},
                {"t", c.t},
                {"subcubes", c.subcubes},
                {"transversal_sets", c.transversal_sets},
                {"half_transversal_sets", c.half_transversal_sets},
                {"half_columns", c.half_columns},
                {"half_symbol_sets", c.half_symbol_sets},
                {"row_blocks", c.row_blocks},
                {"file_blocks", c.file_blocks},
                {"symbol_blocks", c.symbol_blocks},
                {"symbol_column_blocks", c.symbol_column_blocks},
                {"symbol_file_blocks", c.symbol_file_blocks},
                {"first_half_column_blocks", c.first_half_column_blocks},
                {"second_half_column_blocks", c.second_half_column_blocks},
                {"first_half_transversal_blocks", c.first_half_transversal_blocks},
                {"second_half_transversal_blocks", c.second_half_transversal_blocks},
                {"first_half_symbol_row_blocks", c.first_half_symbol_row_blocks},
                {"second_half_symbol_row_blocks", c.second_half_symbol_row_blocks}};
}

json condition_summary_to_json(const ConditionSummary& s) {
    return json{{"max_row_conflicts", s.max_row},       {"max_column_conflicts", s.max_col},
                {"max_file_conflicts", s.max_file},     {"max_symbol_set_conflicts", s.max_symset},
                {"max_transversal_conflicts", s.max_ts}, {"min_allowed_subcubes", s.min_allowed},
                {"kappa_n", s.kappa_n},                 {"alpha_n", s.alpha_n}};
}

json solve_failure_to_json(const SolveResult& res) {
    json restarts = json::array();
    for (const auto& r : res.failures) {
        json jr{{"restart", r.restart}, {"phase", r.phase}};
        if (r.phase == "isotopy") {
            jr["attempts"] = r.isotopy_attempts;
            jr["best_attempt"] = condition_summary_to_json(r.isotopy_best);
        } else {
            jr["attempts"] = r.isotopy_attempts;
            if (r.stuck) jr["stuck_conflict"] = cell_to_json(*r.stuck);
            jr["candidates"] = r.stuck_candidates;
            jr["stuck_eliminations"] = string_counts_to_json(r.stuck_eliminations);
            jr["eliminations"] = string_counts_to_json(r.eliminations);
        }
        restarts.push_back(std::move(jr));
    }
    return json{{"ok", false},
                {"restarts", std::move(restarts)},
                {"regime_warnings", res.info.regime_warnings}};
}

}  // namespace cubeavoid::io
