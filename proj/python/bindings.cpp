#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "crnepi/epi.hpp"
#include "crnepi/errors.hpp"
#include "crnepi/fixtures.hpp"
#include "crnepi/hamiltonian.hpp"
#include "crnepi/kinetics.hpp"
#include "crnepi/report.hpp"
#include "crnepi/sirph.hpp"
#include "crnepi/stochastic.hpp"
#include "crnepi/structure.hpp"
#include "crnepi/translate.hpp"

namespace py = pybind11;
using namespace crnepi;

namespace {

std::string dump(const Json& j) { return j.dump(); }

// a readable file wins, then the .sirph fixture of that stem
std::string sirph_text(const std::string& name) {
    if (std::filesystem::exists(name)) return resolve_text(name);
    if (auto t = fixture_text(name + ".sirph")) return std::string(*t);
    return resolve_text(name);
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = 0;
    {
        py::gil_scoped_release release;
        code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "reaction network and epidemic model analysis";
    py::register_exception<Error>(m, "CrnError", PyExc_ValueError);

    py::class_<ReactionNetwork>(m, "Network")
        .def_property_readonly("species", &ReactionNetwork::species)
        .def_property_readonly("params", &ReactionNetwork::params)
        .def_property_readonly("n_reactions", &ReactionNetwork::n_reactions)
        .def_property_readonly("n_complexes", &ReactionNetwork::n_complexes)
        .def("init_vector", &ReactionNetwork::init_vector)
        .def("rate_constants", &ReactionNetwork::rate_constants)
        .def("with_params", &ReactionNetwork::with_params)
        .def("with_init", &ReactionNetwork::with_init)
        .def("to_dsl", [](const ReactionNetwork& n) { return to_dsl(n); })
        .def("__repr__", [](const ReactionNetwork& n) {
            return "<Network " + std::to_string(n.n_species()) + " species, " + std::to_string(n.n_reactions()) +
                   " reactions>";
        });

    m.def("parse", &parse_network, py::arg("text"));
    m.def("load", &resolve_network, py::arg("path_or_fixture"));
    m.def("fixture_names", &fixture_names);

    m.def("analysis_json", [](const ReactionNetwork& n) { return dump(analysis_report(n)); });
    m.def("ngm_json", [](const ReactionNetwork& n) { return dump(ngm_report(n)); });
    m.def("deficiency", &deficiency);
    m.def("is_weakly_reversible", &is_weakly_reversible);
    m.def("to_dot", &to_dot);

    m.def("ode_rhs", &ode_rhs);
    m.def("ode_jacobian", &ode_jacobian);
    m.def("r0", [](const ReactionNetwork& n) { return ngm_decompose(n, designation(n)).R0; });

    m.def("replacement_number",
          [](const std::string& name) { return replacement_number(parse_sir_ph(sirph_text(name))); });

    m.def("translations_json", [](const ReactionNetwork& n, int bound) {
        TranslationSearchOptions o;
        o.bound = bound;
        Json out = Json::array();
        for (const auto& g : search_wr_zd(n, o)) out.push_back(realization_json(n, g));
        return dump(out);
    }, py::arg("network"), py::arg("bound") = 1);

    m.def("propensity", &propensity);
    m.def("ssa", [](const ReactionNetwork& n, const Counts& init, double t_max, std::uint64_t seed) {
        Trajectory tr;
        {
            py::gil_scoped_release release;
            tr = ssa_simulate(n, init, t_max, seed);
        }
        return py::make_tuple(tr.times, tr.states);
    }, py::arg("network"), py::arg("init"), py::arg("t_max"), py::arg("seed") = 1);

    m.def("hamiltonian", &hamiltonian);
    m.def("escape_action", [](const ReactionNetwork& n, const Vec& from, const Vec& to) {
        auto p = integrate_escape(n, from, to);
        return py::make_tuple(p.action, p.max_drift);
    });

    m.def("cli", &run_cli, py::arg("args"));
}
