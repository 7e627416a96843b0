#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "cubeavoid/io.hpp"
#include "cubeavoid/oracle.hpp"
#include "cubeavoid/search.hpp"
#include "cubeavoid/starting.hpp"
#include "cubeavoid/structure.hpp"
#include "cubeavoid/swap_engine.hpp"

namespace py = pybind11;
using namespace cubeavoid;

namespace {

std::vector<std::vector<std::vector<int>>> cube_to_lists(const LatinCube& cube) {
    const int n = cube.order();
    std::vector<std::vector<std::vector<int>>> out(n);
    for (int i = 1; i <= n; ++i) {
        out[i - 1].resize(n);
        for (int j = 1; j <= n; ++j) {
            out[i - 1][j - 1].resize(n);
            for (int k = 1; k <= n; ++k) out[i - 1][j - 1][k - 1] = cube.at(i, j, k);
        }
    }
    return out;
}

LatinCube cube_from_lists(const std::vector<std::vector<std::vector<int>>>& cells) {
    const int n = static_cast<int>(cells.size());
    LatinCube cube(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) cube.set(i, j, k, cells[i - 1][j - 1][k - 1]);
    return cube;
}

DensityModel model_from_name(const std::string& name) {
    if (name == "uniform") return DensityModel::per_cell_uniform;
    if (name == "adversarial") return DensityModel::adversarial_line_packing;
    throw std::invalid_argument("model must be 'uniform' or 'adversarial'");
}

}  // namespace

PYBIND11_MODULE(_cubeavoid, m) {
    m.doc() = "Latin cubes of even order avoiding forbidden entries";

    py::class_<Cell>(m, "Cell")
        .def(py::init<int, int, int>(), py::arg("i"), py::arg("j"), py::arg("k"))
        .def_readonly("i", &Cell::i)
        .def_readonly("j", &Cell::j)
        .def_readonly("k", &Cell::k)
        .def("__repr__", [](const Cell& c) {
            return "Cell(" + std::to_string(c.i) + "," + std::to_string(c.j) + "," +
                   std::to_string(c.k) + ")";
        });

    py::class_<LatinCube>(m, "LatinCube")
        .def_property_readonly("n", &LatinCube::order)
        .def("at", &LatinCube::at, py::arg("i"), py::arg("j"), py::arg("k"))
        .def("to_lists", &cube_to_lists)
        .def_static("from_lists", &cube_from_lists)
        .def("__eq__", [](const LatinCube& a, const LatinCube& b) { return a == b; });

    py::class_<ForbiddenCube>(m, "ForbiddenCube")
        .def(py::init<int, int>(), py::arg("n"), py::arg("m"))
        .def_property_readonly("n", &ForbiddenCube::order)
        .def_property_readonly("m", &ForbiddenCube::bound)
        .def("add", &ForbiddenCube::add)
        .def("at", [](const ForbiddenCube& f, int i, int j, int k) { return f.set_at(i, j, k); })
        .def("validate", &ForbiddenCube::validate)
        .def("filled_cells", &ForbiddenCube::filled_cells);

    py::class_<Params>(m, "Params")
        .def(py::init<>())
        .def_readwrite("alpha", &Params::alpha)
        .def_readwrite("gamma", &Params::gamma)
        .def_readwrite("kappa", &Params::kappa)
        .def_readwrite("epsilon", &Params::epsilon)
        .def_readwrite("theta", &Params::theta)
        .def_static("paper", &Params::paper)
        .def_static("desk", &Params::desk);

    m.def("starting_square", [](int t) {
        LatinSquare sq = starting_square(t);
        std::vector<std::vector<int>> out(sq.order(), std::vector<int>(sq.order()));
        for (int i = 1; i <= sq.order(); ++i)
            for (int j = 1; j <= sq.order(); ++j) out[i - 1][j - 1] = sq.at(i, j);
        return out;
    });
    m.def("starting_cube", &starting_latin_cube, py::arg("t"));
    m.def("is_latin", &is_latin);
    m.def("conflicts", [](const LatinCube& cube, const ForbiddenCube& f) {
        std::vector<std::tuple<int, int, int>> out;
        for (const Cell& c : conflicts(cube, f)) out.emplace_back(c.i, c.j, c.k);
        return out;
    });
    m.def(
        "generate_instance",
        [](int n, int m, const std::string& model, std::uint64_t seed) {
            return generate_instance({n, m, model_from_name(model), seed});
        },
        py::arg("n"), py::arg("m"), py::arg("model") = "uniform", py::arg("seed") = 1);
    m.def(
        "subcubes_through",
        [](int t, int i, int j, int k) {
            StructureIndex idx = StructureIndex::build(t);
            std::vector<std::tuple<int, int, int, int, int, int>> out;
            for (const Subcube& sc : idx.subcubes_through({i, j, k}))
                out.emplace_back(sc.i1, sc.i2, sc.j1, sc.j2, sc.k1, sc.k2);
            return out;
        },
        py::arg("t"), py::arg("i"), py::arg("j"), py::arg("k"));
    m.def(
        "verify_properties",
        [](int t, bool sampled) {
            StructureReport report =
                verify_properties(t, sampled ? VerifyMode::sampled : VerifyMode::exhaustive);
            std::vector<std::pair<std::string, bool>> out;
            for (const auto& c : report.checks) out.emplace_back(c.name, c.pass);
            return out;
        },
        py::arg("t"), py::arg("sampled") = false);
    m.def(
        "solve",
        [](const ForbiddenCube& f, const Params& p, std::uint64_t seed, int restarts,
           int attempts) {
            SolveResult res = solve(f, p, seed, restarts, attempts);
            py::dict out;
            out["ok"] = res.ok;
            if (res.ok) {
                out["cube"] = *res.cube;
                out["attempts"] = res.info.attempts_used;
                out["restart"] = res.info.restart_used;
                out["plan_size"] = res.info.plan_size;
                out["conflicts_after_isotopy"] = res.info.conflicts_after_isotopy;
            } else {
                out["report"] = io::canonical_dump(io::solve_failure_to_json(res));
            }
            return out;
        },
        py::arg("forbidden"), py::arg("params") = Params::desk(), py::arg("seed") = 1,
        py::arg("restarts") = 10, py::arg("attempts") = 100);
    m.def(
        "backtracking_avoid",
        [](const ForbiddenCube& f) -> std::optional<LatinCube> {
            AvoidSearchResult res = backtracking_avoid(f);
            return res.witness;
        },
        py::arg("forbidden"));
    m.def("union_bound_total", [](const Params& p, double n) {
        UnionBoundResult r = union_bound_total(p, n);
        return std::make_pair(r.log_value, r.below_one);
    });
    m.def("candidate_slack", &candidate_slack);
}
