#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "contour/errors.hpp"
#include "contour/harness.hpp"
#include "contour/orbit.hpp"
#include "contour/report.hpp"
#include "contour/spectrum.hpp"

namespace py = pybind11;
using namespace contour;

namespace {

SystemState to_state(const std::vector<Cell>& cells) { return SystemState(cells); }

std::vector<Cell> from_state(const SystemState& s) { return {s.positions().begin(), s.positions().end()}; }

py::tuple fraction(const Rational& r) { return py::make_tuple(r.numerator(), r.denominator()); }

py::dict cycle_dict(const CycleAnalysis& a) {
    py::dict d;
    d["transient"] = a.transient_len;
    d["period"] = a.period;
    d["moves_per_cluster"] = a.moves_per_cluster;
    d["velocity"] = fraction(a.velocity);
    d["regime"] = to_string(a.regime);
    d["delay_type"] = to_string(a.purity);
    py::list log;
    for (const auto& r : a.delay_log) log.append(py::make_tuple(r.time, r.cluster, to_string(r.type), r.node));
    d["delays"] = log;
    py::list states;
    for (const auto& s : a.cycle_states) states.append(from_state(s));
    d["cycle_states"] = states;
    return d;
}

DelayType parse_type(const std::string& type) {
    if (type == "first") return DelayType::First;
    if (type == "second") return DelayType::Second;
    throw ContractViolation("delay type must be 'first' or 'second', got '" + type + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of contourchain";

    auto contract = py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<InadmissibleState>(m, "InadmissibleState", contract.ptr());
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<InfeasibleDecomposition>(m, "InfeasibleDecomposition", PyExc_ValueError);
    py::register_exception<ConstructionFailed>(m, "ConstructionFailed", PyExc_RuntimeError);

    py::class_<ChainParams>(m, "ChainParams")
        .def(py::init<int, int, int>(), py::arg("N"), py::arg("m"), py::arg("l"))
        .def_property_readonly("N", &ChainParams::contours)
        .def_property_readonly("m", &ChainParams::half_cells)
        .def_property_readonly("l", &ChainParams::cluster_len)
        .def_property_readonly("cells", &ChainParams::cells)
        .def_property_readonly("accounting_period", &ChainParams::accounting_period)
        .def_property_readonly("state_space_size", &ChainParams::state_space_size)
        .def("__eq__", [](const ChainParams& a, const ChainParams& b) { return a == b; })
        .def("__repr__", [](const ChainParams& p) { return "ChainParams" + p.to_string(); });

    m.def("is_admissible", [](const std::vector<Cell>& s, const ChainParams& p) { return is_admissible(to_state(s), p); },
          py::arg("state"), py::arg("params"));

    m.def(
        "step",
        [](const std::vector<Cell>& s, const ChainParams& p) {
            const auto r = step(to_state(s), p);
            py::list delays;
            for (const auto& d : r.delays) delays.append(py::make_tuple(d.cluster, to_string(d.type), d.node));
            return py::make_tuple(from_state(r.next), r.moved, delays);
        },
        py::arg("state"), py::arg("params"));

    m.def(
        "find_cycle",
        [](const std::vector<Cell>& s, const ChainParams& p, std::optional<std::uint64_t> budget, const std::string& method) {
            CycleOptions opts;
            opts.budget = budget;
            if (method == "index")
                opts.method = CycleMethod::VisitedIndex;
            else if (method == "brent")
                opts.method = CycleMethod::Brent;
            else if (method != "auto")
                throw ContractViolation("method must be auto, index or brent");
            return cycle_dict(find_cycle(to_state(s), p, opts));
        },
        py::arg("state"), py::arg("params"), py::arg("budget") = py::none(), py::arg("method") = "auto");

    m.def(
        "candidate_velocities",
        [](const ChainParams& p) {
            py::list out;
            for (const auto& v : candidate_velocities(p)) out.append(fraction(v));
            return out;
        },
        py::arg("params"));

    m.def(
        "spectrum_json",
        [](const ChainParams& p, std::optional<std::uint64_t> sample, std::uint64_t seed, std::uint64_t budget,
           unsigned workers) {
            const Exploration e = sample ? Exploration{Sampled{*sample, seed}} : Exploration{Exhaustive{budget}};
            py::gil_scoped_release release;
            return to_json(empirical_spectrum(p, e, workers)).dump();
        },
        py::arg("params"), py::arg("sample") = py::none(), py::arg("seed") = 0,
        py::arg("budget") = kDefaultStateBudget, py::arg("workers") = 0);

    m.def(
        "construct_cycle_state",
        [](const ChainParams& p, const std::vector<int>& delays, const std::string& type) {
            return from_state(construct_cycle_state(p, {delays, parse_type(type)}));
        },
        py::arg("params"), py::arg("delays"), py::arg("type") = "first");

    m.def(
        "mirror_state",
        [](const std::vector<Cell>& s, const ChainParams& p) { return from_state(mirror_state(to_state(s), p)); },
        py::arg("state"), py::arg("params"));

    m.def(
        "verify_json",
        [](const std::string& grid_text, std::optional<std::uint64_t> budget, unsigned workers) {
            auto grid = parse_grid(grid_text);
            if (budget) grid.budget = *budget;
            py::gil_scoped_release release;
            return to_json(run_suite(grid, workers), grid).dump();
        },
        py::arg("grid") = "", py::arg("budget") = py::none(), py::arg("workers") = 0);
}
