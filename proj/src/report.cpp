#include "crnepi/report.hpp"

#include <iomanip>
#include <sstream>

#include "crnepi/errors.hpp"

namespace crnepi {

namespace {

using Index = Eigen::Index;

Json species_names(const ReactionNetwork& net, const std::vector<std::size_t>& idx) {
    Json out = Json::array();
    for (std::size_t i : idx) out.push_back(net.species()[i]);
    return out;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const Vec& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Json to_json(const Mat& m) {
    Json out = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

Json to_json(const std::vector<Complexd>& ev) {
    Json out = Json::array();
    for (const auto& z : ev) out.push_back(Json::array({z.real(), z.imag()}));
    return out;
}

Json to_json(const IntRow& row) {
    Json out = Json::array();
    for (long long v : row) out.push_back(v);
    return out;
}

Json network_json(const ReactionNetwork& net) {
    Json j;
    j["species"] = net.species();
    Json rx = Json::array();
    for (const auto& r : net.reactions()) {
        Json e;
        e["source"] = format_complex(r.source, net.species());
        e["product"] = format_complex(r.product, net.species());
        e["rate"] = r.rate_name;
        if (r.kinetic) e["kinetic"] = format_complex(*r.kinetic, net.species());
        rx.push_back(std::move(e));
    }
    j["reactions"] = std::move(rx);
    Json params = Json::object();
    for (const auto& [k, v] : net.params()) params[k] = v;
    j["params"] = std::move(params);
    Json cx = Json::array();
    for (const auto& c : net.complexes()) cx.push_back(format_complex(c, net.species()));
    j["complexes"] = std::move(cx);
    return j;
}

Json structure_json(const StructureReport& s, const std::vector<std::string>& species) {
    Json j;
    j["n_species"] = s.n_species;
    j["n_reactions"] = s.n_reactions;
    j["n_complexes"] = s.n_complexes;
    j["n_linkage_classes"] = s.n_linkage;
    j["stoich_rank"] = s.stoich_rank;
    j["deficiency"] = s.deficiency;
    j["weakly_reversible"] = s.weakly_reversible;
    Json laws = Json::array();
    Json text = Json::array();
    for (const auto& law : s.conservation_laws) {
        laws.push_back(to_json(law));
        IVec v(static_cast<Index>(law.size()));
        for (std::size_t i = 0; i < law.size(); ++i) v[static_cast<Index>(i)] = law[i];
        text.push_back(format_vector_complex(v, species));
    }
    j["conservation_laws"] = std::move(laws);
    j["conservation_text"] = std::move(text);
    j["flux_cone_dim"] = s.flux_cone_dim ? Json(*s.flux_cone_dim) : Json(nullptr);
    return j;
}

Json fixed_point_json(const FixedPointReport& fp) {
    Json j;
    j["state"] = to_json(fp.state);
    j["kind"] = to_string(fp.kind);
    j["eigenvalues"] = to_json(fp.eigenvalues);
    j["stable"] = fp.stable;
    j["marginal"] = fp.marginal;
    return j;
}

Json ngm_json(const NgmResult& ngm) {
    Json j;
    j["dfe"] = to_json(ngm.dfe);
    j["F"] = to_json(ngm.F);
    j["V"] = to_json(ngm.V);
    j["K"] = to_json(ngm.K);
    j["R0"] = ngm.R0;
    j["charpoly_K"] = ngm.charpoly_K;
    j["v_is_m_matrix"] = ngm.v_is_m_matrix;
    return j;
}

Json sir_ph_json(const SirPhModel& m) {
    Json j;
    j["alpha"] = to_json(m.alpha);
    j["A"] = to_json(m.A);
    j["B"] = to_json(m.B);
    j["delta"] = to_json(m.delta);
    j["Lambda"] = m.Lambda;
    j["gamma_s"] = m.gamma_s;
    j["gamma_r"] = m.gamma_r;
    j["beta"] = to_json(m.beta());
    j["a"] = to_json(m.exit_rates());
    j["V"] = to_json(m.V());
    j["rank_one"] = m.rank_one();
    j["replacement_number"] = replacement_number(m);
    return j;
}

Json realization_json(const ReactionNetwork& net, const GmakRealization& g) {
    Json j;
    Json shifts = Json::array();
    for (const auto& s : g.shifts) shifts.push_back(format_vector_complex(s, net.species()));
    j["shifts"] = std::move(shifts);
    Json rx = Json::array();
    for (const auto& t : g.reactions) {
        Json e;
        e["base"] = t.base + 1;
        e["source"] = format_vector_complex(t.source, net.species());
        e["product"] = format_vector_complex(t.product, net.species());
        e["kinetic"] = format_vector_complex(t.kinetic, net.species());
        e["rate"] = net.reactions()[t.base].rate_name;
        rx.push_back(std::move(e));
    }
    j["reactions"] = std::move(rx);
    Json cx = Json::array();
    for (const auto& c : g.complexes) cx.push_back(format_vector_complex(c, net.species()));
    j["complexes"] = std::move(cx);
    j["n_linkage_classes"] = g.n_linkage;
    j["structural_deficiency"] = g.structural_deficiency;
    j["kinetic_deficiency"] = g.kinetic_deficiency;
    j["kinetic_deficiency_definition"] = kKineticDeficiencyDefinition;
    j["weakly_reversible"] = g.weakly_reversible;
    j["nonphysical"] = g.nonphysical;
    j["per_class_uniform"] = g.per_class_uniform;
    j["kinetic_map_consistent"] = g.kinetic_map_consistent;
    return j;
}

Json escape_json(const EscapePath& path) {
    Json j;
    j["action"] = path.action;
    j["miss"] = path.miss;
    j["max_drift"] = path.max_drift;
    j["n_points"] = path.points.size();
    j["duration"] = path.t.empty() ? 0.0 : path.t.back();
    return j;
}

EpiSummary epi_summary(const ReactionNetwork& net, const SirPhModel* model) {
    EpiSummary s;
    s.designation = designation(net);
    s.ngm = ngm_decompose(net, s.designation);
    s.routh_hurwitz_pass = routh_hurwitz_shifted(s.ngm.charpoly_K);
    s.dfe = classify_fixed_point(net, s.designation, s.ngm.dfe);
    const Mat ji = s.ngm.F - s.ngm.V;
    s.infected_block_stable = ji.size() == 0 || max_real_part(eigenvalues(ji)) < -kStabilityMargin;
    s.endemic = endemic_point(net, s.designation);
    if (model) {
        s.model = *model;
        s.model_matches_network = validate_sir_ph_against_network(*model, net, s.designation);
        s.replacement_number = replacement_number(*model);
    }
    try {
        s.identities = check_r0_identities(net, s.designation, s.model_matches_network ? model : nullptr);
        if (!s.replacement_number) s.replacement_number = s.identities->replacement;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::RankNotOne) throw;
        s.acr = acr_r0_check(net, s.designation);
    }
    return s;
}

Json epi_json(const ReactionNetwork& net, const EpiSummary& s) {
    Json j;
    j["infected"] = species_names(net, s.designation.infected);
    j["susceptible"] = net.species()[s.designation.susceptible];
    j["resident"] = species_names(net, s.designation.resident);
    j["dfe"] = to_json(s.ngm.dfe);
    j["F"] = to_json(s.ngm.F);
    j["V"] = to_json(s.ngm.V);
    j["K"] = to_json(s.ngm.K);
    j["R0"] = s.ngm.R0;
    j["charpoly_K"] = s.ngm.charpoly_K;
    j["v_is_m_matrix"] = s.ngm.v_is_m_matrix;
    j["routh_hurwitz_pass"] = s.routh_hurwitz_pass;
    j["dfe_fixed_point"] = fixed_point_json(s.dfe);
    j["infected_block_stable"] = s.infected_block_stable;
    j["replacement_number"] = optional_number(s.replacement_number);
    j["endemic"] = s.endemic ? fixed_point_json(*s.endemic) : Json(nullptr);
    if (s.identities) {
        Json id;
        id["rank_one"] = true;
        id["R0"] = s.identities->R0;
        id["s_dfe"] = s.identities->s_dfe;
        id["replacement_number"] = s.identities->replacement;
        id["s_endemic"] = optional_number(s.identities->s_endemic);
        id["err_r0_sdfe_R"] = s.identities->err_r0_sdfe_R;
        id["err_r0_ratio"] = optional_number(s.identities->err_r0_ratio);
        id["holds"] = s.identities->holds;
        j["identities"] = std::move(id);
    } else {
        Json id;
        id["rank_one"] = false;
        if (s.acr) {
            id["acr_total"] = s.acr->total;
            id["acr_s_endemic"] = s.acr->s_endemic;
            id["acr_ratio"] = s.acr->ratio;
            id["acr_err_vs_R0_squared"] = s.acr->err;
        }
        j["identities"] = std::move(id);
    }
    if (s.model) {
        Json m = sir_ph_json(*s.model);
        m["matches_network"] = s.model_matches_network;
        m["laplace_at_zero"] = kernel_laplace(*s.model, 0.0);
        j["sirph"] = std::move(m);
    }
    return j;
}

Json analysis_report(const ReactionNetwork& net) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "analyze";
    j["network"] = network_json(net);
    j["structure"] = structure_json(structure_report(net), net.species());
    if (net.epi() && net.params_bound())
        j["epi"] = epi_json(net, epi_summary(net));
    else
        j["epi"] = nullptr;
    return j;
}

Json ngm_report(const ReactionNetwork& net, const SirPhModel* model) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "ngm";
    Json body = epi_json(net, epi_summary(net, model));
    for (auto& [k, v] : body.items()) j[k] = v;
    return j;
}

std::string format_matrix(const Mat& m, int precision) {
    std::ostringstream os;
    os << std::setprecision(precision);
    for (Index i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (Index j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
        os << "]\n";
    }
    return os.str();
}

}  // namespace crnepi
