#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "crnepi/errors.hpp"
#include "crnepi/fixtures.hpp"
#include "crnepi/hamiltonian.hpp"
#include "crnepi/kinetics.hpp"
#include "crnepi/ode.hpp"
#include "crnepi/report.hpp"
#include "crnepi/rng.hpp"
#include "crnepi/sirph.hpp"
#include "crnepi/stochastic.hpp"
#include "crnepi/structure.hpp"
#include "crnepi/translate.hpp"

namespace crnepi::cli {

namespace {

struct Globals {
    bool json = false;
    std::uint64_t seed = 1;
    std::string params;
};

std::string num(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

double parse_number(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) fail(ErrorCode::InputError, "bad number '" + s + "' in " + what);
    return v;
}

std::map<std::string, double> parse_assignments(const std::string& text, const std::string& what) {
    std::map<std::string, double> out;
    for (const auto& item : split(text, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) fail(ErrorCode::InputError, "expected name=value in " + what + ": " + item);
        std::string key = trim(item.substr(0, eq));
        if (key.empty()) fail(ErrorCode::InputError, "empty name in " + what);
        out[key] = parse_number(trim(item.substr(eq + 1)), what);
    }
    return out;
}

// "S=2,I=0" (missing species are 0) or plain values in species order
Vec parse_state(const ReactionNetwork& net, const std::string& text, const std::string& what) {
    Vec x = Vec::Zero(static_cast<Eigen::Index>(net.n_species()));
    if (text.find('=') != std::string::npos) {
        for (const auto& [k, v] : parse_assignments(text, what)) {
            auto idx = net.species_index(k);
            if (!idx) fail(ErrorCode::UndeclaredSpecies, what + " names unknown species '" + k + "'");
            x[static_cast<Eigen::Index>(*idx)] = v;
        }
        return x;
    }
    std::string t = text;
    std::replace(t.begin(), t.end(), ' ', ',');
    auto parts = split(t, ',');
    if (parts.size() != net.n_species())
        fail(ErrorCode::DimensionMismatch, what + " needs " + std::to_string(net.n_species()) +
                                               " values, got " + std::to_string(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) x[static_cast<Eigen::Index>(i)] = parse_number(parts[i], what);
    return x;
}

std::string format_state(const ReactionNetwork& net, const Vec& x) {
    std::string out;
    for (std::size_t i = 0; i < net.n_species(); ++i) {
        if (i) out += ", ";
        out += net.species()[i] + "=" + num(x[static_cast<Eigen::Index>(i)]);
    }
    return out;
}

ReactionNetwork load(const std::string& file, const Globals& g) {
    ReactionNetwork net = resolve_network(file);
    if (!g.params.empty()) net = net.with_params(parse_assignments(g.params, "--params"));
    return net;
}

std::unique_ptr<std::ostream> open_out(const std::string& path) {
    auto f = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*f) fail(ErrorCode::InputError, "cannot write " + path);
    return f;
}

// model commands prefer the fixture with their own extension ("sair" -> sair.sirph)
std::string resolve_model(const std::string& name, const char* ext) {
    std::ifstream probe(name);
    if (!probe)
        if (auto t = fixture_text(name + ext)) return std::string(*t);
    return resolve_text(name);
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void print_fixed_point(std::ostream& out, const ReactionNetwork& net, const char* label,
                       const FixedPointReport& fp) {
    out << label << format_state(net, fp.state) << " (" << (fp.stable ? "stable" : "unstable")
        << (fp.marginal ? ", marginal" : "") << ")\n";
}

void print_epi(std::ostream& out, const ReactionNetwork& net, const EpiSummary& s) {
    std::string inf;
    for (auto i : s.designation.infected) inf += (inf.empty() ? "" : ", ") + net.species()[i];
    out << "infected             " << inf << "\n";
    out << "susceptible          " << net.species()[s.designation.susceptible] << "\n";
    out << "F\n" << format_matrix(s.ngm.F, 10);
    out << "V\n" << format_matrix(s.ngm.V, 10);
    out << "K\n" << format_matrix(s.ngm.K, 10);
    out << "R0                   " << num(s.ngm.R0) << "\n";
    out << "R0 < 1 by Routh-Hurwitz " << yes_no(s.routh_hurwitz_pass) << "\n";
    print_fixed_point(out, net, "DFE                  ", s.dfe);
    if (s.endemic)
        print_fixed_point(out, net, "endemic              ", *s.endemic);
    else
        out << "endemic              none\n";
    if (s.replacement_number) out << "replacement number   " << num(*s.replacement_number) << "\n";
    if (s.identities) {
        out << "R0 = s_dfe*R         err " << num(s.identities->err_r0_sdfe_R) << "\n";
        if (s.identities->err_r0_ratio)
            out << "R0 = s_dfe/s_E       err " << num(*s.identities->err_r0_ratio) << "\n";
        out << "identities           " << (s.identities->holds ? "hold" : "violated") << "\n";
    } else if (s.acr) {
        out << "ACR s_E              " << num(s.acr->s_endemic) << "\n";
        out << "total/s_E vs R0^2    err " << num(s.acr->err) << "\n";
    }
    if (s.model) out << "SIR-PH model matches network  " << yes_no(s.model_matches_network) << "\n";
}

int cmd_analyze(const Globals& g, const std::string& file, bool dot, std::ostream& out) {
    ReactionNetwork net = load(file, g);
    if (dot) {
        out << to_dot(net);
        return 0;
    }
    if (g.json) {
        print_json(out, analysis_report(net));
        return 0;
    }
    StructureReport s = structure_report(net);
    std::string sp;
    for (const auto& name : net.species()) sp += (sp.empty() ? "" : ", ") + name;
    out << "species              " << sp << "\n";
    out << "reactions            " << s.n_reactions << "\n";
    out << "complexes            " << s.n_complexes << "\n";
    out << "linkage classes      " << s.n_linkage << "\n";
    out << "stoichiometric rank  " << s.stoich_rank << "\n";
    out << "deficiency           " << s.deficiency << "\n";
    out << "weakly reversible    " << yes_no(s.weakly_reversible) << "\n";
    out << "conservation laws    ";
    if (s.conservation_laws.empty()) out << "none";
    for (std::size_t k = 0; k < s.conservation_laws.size(); ++k) {
        const auto& law = s.conservation_laws[k];
        IVec v(static_cast<Eigen::Index>(law.size()));
        for (std::size_t i = 0; i < law.size(); ++i) v[static_cast<Eigen::Index>(i)] = law[i];
        out << (k ? "; " : "") << format_vector_complex(v, net.species());
    }
    out << "\n";
    out << "flux cone dimension  " << (s.flux_cone_dim ? std::to_string(*s.flux_cone_dim) : "n/a") << "\n";
    if (net.epi() && net.params_bound()) print_epi(out, net, epi_summary(net));
    return 0;
}

int cmd_ngm(const Globals& g, const std::string& file, const std::string& sirph, std::ostream& out) {
    ReactionNetwork net = load(file, g);
    if (!net.epi()) fail(ErrorCode::PreconditionViolated, "network has no epi section: " + file);
    std::optional<SirPhModel> model;
    if (!sirph.empty()) model = parse_sir_ph(resolve_model(sirph, ".sirph"));
    const SirPhModel* mp = model ? &*model : nullptr;
    if (g.json) {
        print_json(out, ngm_report(net, mp));
        return 0;
    }
    print_epi(out, net, epi_summary(net, mp));
    return 0;
}

int cmd_sirph(const Globals& g, const std::string& file, const std::string& network, double tau_max,
              int points, std::ostream& out) {
    SirPhModel m = parse_sir_ph(resolve_model(file, ".sirph"));
    if (points < 2) fail(ErrorCode::InputError, "--points must be at least 2");
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "sirph";
    j["model"] = sir_ph_json(m);
    j["laplace_at_zero"] = kernel_laplace(m, 0.0);
    Json kernel = Json::array();
    for (int k = 0; k < points; ++k) {
        double tau = tau_max * k / (points - 1);
        kernel.push_back(Json{{"tau", tau}, {"value", renewal_kernel(m, tau)}});
    }
    j["kernel"] = kernel;
    std::optional<bool> matches;
    if (!network.empty()) {
        ReactionNetwork net = load(network, g);
        matches = validate_sir_ph_against_network(m, net, designation(net));
    }
    j["matches_network"] = matches ? Json(*matches) : Json(nullptr);
    if (g.json) {
        print_json(out, j);
        return 0;
    }
    out << "phases               " << m.alpha.size() << "\n";
    out << "V\n" << format_matrix(m.V(), 10);
    out << "replacement number   " << num(replacement_number(m)) << "\n";
    out << "kernel integral      " << num(kernel_laplace(m, 0.0)) << "\n";
    out << "rank-one B           " << yes_no(m.rank_one()) << "\n";
    if (matches) out << "matches network      " << yes_no(*matches) << "\n";
    out << "tau,kernel\n";
    for (const auto& row : kernel) out << num(row["tau"].get<double>()) << "," << num(row["value"].get<double>()) << "\n";
    return 0;
}

double realization_residual(const ReactionNetwork& net, const GmakRealization& r) {
    double worst = 0.0;
    for (std::uint64_t k = 1; k <= 8; ++k) {
        auto h = halton(k, net.n_species());
        Vec x(static_cast<Eigen::Index>(net.n_species()));
        for (std::size_t i = 0; i < h.size(); ++i) x[static_cast<Eigen::Index>(i)] = 0.1 + 3.0 * h[i];
        Vec f = ode_rhs(net, x);
        Vec fr = realization_rhs(net, r, x);
        double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
        worst = std::max(worst, (f - fr).cwiseAbs().maxCoeff() / scale);
    }
    return worst;
}

int cmd_translate(const Globals& g, const std::string& file, int bound, std::size_t node_cap, std::ostream& out) {
    ReactionNetwork net = load(file, g);
    TranslationSearchOptions opts;
    opts.bound = bound;
    opts.node_cap = node_cap;
    auto found = search_wr_zd(net, opts);
    bool check = net.is_mass_action() && net.params_bound();
    if (g.json) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "translate";
        j["species"] = net.species();
        j["bound"] = bound;
        j["count"] = found.size();
        Json arr = Json::array();
        for (const auto& r : found) {
            Json e = realization_json(net, r);
            e["ode_residual"] = check ? Json(realization_residual(net, r)) : Json(nullptr);
            arr.push_back(std::move(e));
        }
        j["realizations"] = std::move(arr);
        print_json(out, j);
        return 0;
    }
    out << found.size() << " weakly reversible zero-deficiency translation(s), bound " << bound << "\n";
    for (std::size_t k = 0; k < found.size(); ++k) {
        const auto& r = found[k];
        out << "\n#" << (k + 1) << "  linkage classes " << r.n_linkage << ", kinetic deficiency "
            << r.kinetic_deficiency << (r.nonphysical ? ", nonphysical" : "");
        if (check) out << ", ODE residual " << num(realization_residual(net, r));
        out << "\n";
        for (const auto& line : describe_reactions(r, net.species())) out << "  " << line << "\n";
    }
    return 0;
}

int cmd_simulate(const Globals& g, const std::string& file, bool ode, double tmax, std::size_t runs,
                 const std::string& init, const std::string& out_path, int points, std::ostream& out) {
    ReactionNetwork net = load(file, g);
    if (!(tmax > 0.0)) fail(ErrorCode::InputError, "--tmax must be positive");
    Vec x0 = net.init_vector();
    if (!init.empty()) {
        Vec over = parse_state(net, init, "--init");
        if (init.find('=') != std::string::npos) {
            for (const auto& [k, v] : parse_assignments(init, "--init"))
                x0[static_cast<Eigen::Index>(*net.species_index(k))] = v;
        } else {
            x0 = over;
        }
    }
    check_nonnegative(x0);

    std::unique_ptr<std::ostream> file_out;
    std::ostream* csv = nullptr;
    if (!out_path.empty()) {
        file_out = open_out(out_path);
        csv = file_out.get();
    } else if (!g.json) {
        csv = &out;
    }
    if (csv) {
        *csv << "run,time";
        for (const auto& s : net.species()) *csv << "," << s;
        *csv << "\n";
    }

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "simulate";
    j["method"] = ode ? "ode" : "ssa";
    j["t_max"] = tmax;
    j["init"] = to_json(x0);
    j["out"] = out_path.empty() ? Json(nullptr) : Json(out_path);
    Json finals = Json::array();

    if (ode) {
        if (points < 2) fail(ErrorCode::InputError, "--points must be at least 2");
        std::vector<double> grid(static_cast<std::size_t>(points));
        for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = tmax * k / (points - 1);
        grid.back() = tmax;
        OdeRhs rhs = [&net](double, const Vec& x, Vec& dx) { dx = ode_rhs(net, x); };
        OdeSolution sol = integrate_ode(rhs, x0, 0.0, tmax, {}, grid);
        if (!sol.ok()) fail(ErrorCode::NoConvergence, std::string("ODE integration failed: ") + to_string(sol.status));
        if (csv)
            for (std::size_t k = 0; k < sol.t.size(); ++k) {
                *csv << 0 << "," << num(sol.t[k]);
                for (Eigen::Index i = 0; i < sol.x[k].size(); ++i) *csv << "," << num(sol.x[k][i]);
                *csv << "\n";
            }
        finals.push_back(Json{{"run", 0}, {"time", sol.t_final()}, {"state", to_json(sol.x_final())}});
        j["seed"] = nullptr;
        j["runs"] = 1;
    } else {
        if (runs == 0) fail(ErrorCode::InputError, "--runs must be at least 1");
        Counts n0 = counts_from(net, x0);
        auto trajs = ssa_replicas(net, n0, tmax, runs, g.seed);
        for (std::size_t r = 0; r < trajs.size(); ++r) {
            const auto& tr = trajs[r];
            if (csv)
                for (std::size_t k = 0; k < tr.times.size(); ++k) {
                    *csv << r << "," << num(tr.times[k]);
                    for (long long c : tr.states[k]) *csv << "," << c;
                    *csv << "\n";
                }
            Json st = Json::array();
            for (long long c : tr.states.back()) st.push_back(c);
            finals.push_back(Json{{"run", r},
                                  {"seed", tr.seed},
                                  {"events", tr.times.size() - 1},
                                  {"time", tr.times.back()},
                                  {"absorbed", tr.absorbed},
                                  {"state", st}});
        }
        j["seed"] = g.seed;
        j["runs"] = runs;
        j["rng_algorithm"] = Rng::algorithm;
    }
    j["final"] = std::move(finals);
    if (g.json) print_json(out, j);
    return 0;
}

int cmd_escape(const Globals& g, const std::string& file, const std::string& from, const std::string& to,
               const EscapeOptions& opts, const std::string& out_path, std::ostream& out) {
    ReactionNetwork net = load(file, g);
    Vec a = parse_state(net, from, "--from");
    Vec b = parse_state(net, to, "--to");
    EscapePath path = integrate_escape(net, a, b, opts);
    if (!out_path.empty()) {
        auto f = open_out(out_path);
        *f << "t";
        for (const auto& s : net.species()) *f << "," << s;
        for (const auto& s : net.species()) *f << ",theta_" << s;
        *f << "\n";
        for (std::size_t k = 0; k < path.points.size(); ++k) {
            *f << num(path.t[k]);
            for (Eigen::Index i = 0; i < path.points[k].x.size(); ++i) *f << "," << num(path.points[k].x[i]);
            for (Eigen::Index i = 0; i < path.points[k].theta.size(); ++i) *f << "," << num(path.points[k].theta[i]);
            *f << "\n";
        }
    }
    if (g.json) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "escape";
        j["from"] = to_json(a);
        j["to"] = to_json(b);
        Json body = escape_json(path);
        for (auto& [k, v] : body.items()) j[k] = v;
        j["out"] = out_path.empty() ? Json(nullptr) : Json(out_path);
        print_json(out, j);
        return 0;
    }
    out << "action               " << num(path.action) << "\n";
    out << "miss                 " << num(path.miss) << "\n";
    out << "max H drift          " << num(path.max_drift) << "\n";
    out << "path points          " << path.points.size() << "\n";
    return 0;
}

double ks_distance(const PhaseTypeModel& m, std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        double cdf = 1.0 - phase_type_survival(m, samples[k]);
        d = std::max({d, std::abs((k + 1) / n - cdf), std::abs(k / n - cdf)});
    }
    return d;
}

int cmd_phasetype(const Globals& g, const std::string& file, double tmax, int points, std::size_t samples,
                  std::ostream& out) {
    PhaseTypeModel m = parse_phase_type(resolve_model(file, ".ph"));
    if (points < 2) fail(ErrorCode::InputError, "--points must be at least 2");
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "phasetype";
    j["alpha"] = to_json(m.alpha);
    j["A"] = to_json(m.A);
    j["exit_rates"] = to_json(m.exit_rates());
    j["dwell_times"] = to_json(phase_type_dwell_times(m));
    j["mean"] = phase_type_mean(m);
    Json grid = Json::array();
    for (int k = 0; k < points; ++k) {
        double t = tmax * k / (points - 1);
        grid.push_back(Json{{"t", t}, {"survival", phase_type_survival(m, t)}, {"density", phase_type_density(m, t)}});
    }
    j["grid"] = grid;
    if (samples > 0) {
        auto draws = sample_absorption_times(m, samples, g.seed);
        double mean = 0.0;
        for (double d : draws) mean += d;
        mean /= static_cast<double>(draws.size());
        j["monte_carlo"] = Json{{"samples", samples}, {"seed", g.seed}, {"mean", mean}, {"ks", ks_distance(m, draws)}};
    } else {
        j["monte_carlo"] = nullptr;
    }
    if (g.json) {
        print_json(out, j);
        return 0;
    }
    out << "mean absorption time " << num(j["mean"].get<double>()) << "\n";
    out << "dwell times\n" << format_matrix(phase_type_dwell_times(m), 10);
    if (samples > 0)
        out << "Monte Carlo KS       " << num(j["monte_carlo"]["ks"].get<double>()) << " (" << samples
            << " samples)\n";
    out << "t,survival,density\n";
    for (const auto& row : grid)
        out << num(row["t"].get<double>()) << "," << num(row["survival"].get<double>()) << ","
            << num(row["density"].get<double>()) << "\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reaction network and epidemic model analysis", "crnepi"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json, "JSON output");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--params", g.params, "parameter overrides k=v,...");

    std::string file, aux, from, to, init, out_path;
    bool dot = false, use_ode = false, use_ssa = false;
    int bound = 1, points = 0;
    std::size_t node_cap = TranslationSearchOptions{}.node_cap, runs = 1, samples = 0;
    double tmax = 10.0, tau_max = 20.0;
    EscapeOptions esc;

    auto* analyze = app.add_subcommand("analyze", "structural report");
    analyze->add_option("file", file, "network file or fixture name")->required();
    analyze->add_flag("--dot", dot, "emit the FHJ graph as DOT");

    auto* ngm = app.add_subcommand("ngm", "next-generation matrix and R0");
    ngm->add_option("file", file, "network file or fixture name")->required();
    ngm->add_option("--sirph", aux, "SIR-PH model to check against the network");

    auto* sirph = app.add_subcommand("sirph", "SIR-PH model report");
    sirph->add_option("file", file, "model file or fixture name")->required();
    sirph->add_option("--network", aux, "network to validate the model against");
    sirph->add_option("--tau-max", tau_max, "kernel grid end");
    sirph->add_option("--points", points, "kernel grid points");

    auto* translate = app.add_subcommand("translate", "weakly reversible zero-deficiency translations");
    translate->add_option("file", file, "network file or fixture name")->required();
    translate->add_option("--bound", bound, "shift bound");
    translate->add_option("--node-cap", node_cap, "search node budget");

    auto* simulate = app.add_subcommand("simulate", "stochastic or deterministic trajectories");
    simulate->add_option("file", file, "network file or fixture name")->required();
    auto* ssa_flag = simulate->add_flag("--ssa", use_ssa, "Gillespie direct method (default)");
    simulate->add_flag("--ode", use_ode, "deterministic integrator")->excludes(ssa_flag);
    simulate->add_option("--tmax", tmax, "end time");
    simulate->add_option("--runs", runs, "SSA replicas");
    simulate->add_option("--init", init, "initial state, name=value,... or values");
    simulate->add_option("--out", out_path, "CSV output path");
    simulate->add_option("--points", points, "ODE output points");
    simulate->add_option("--seed", g.seed, "random seed");

    auto* escape = app.add_subcommand("escape", "Hamiltonian escape path and action");
    escape->add_option("file", file, "network file or fixture name")->required();
    escape->add_option("--from", from, "stable fixed point")->required();
    escape->add_option("--to", to, "target fixed point")->required();
    escape->add_option("--epsilon", esc.epsilon, "initial offset along the unstable manifold");
    escape->add_option("--bisections", esc.max_bisections, "phase refinement budget");
    escape->add_option("--approach-tol", esc.approach_tol, "accepted relative miss distance");
    escape->add_option("--out", out_path, "path CSV output");

    auto* phasetype = app.add_subcommand("phasetype", "phase-type distribution");
    phasetype->add_option("file", file, "model file or fixture name")->required();
    phasetype->add_option("--tmax", tmax, "grid end");
    phasetype->add_option("--points", points, "grid points");
    phasetype->add_option("--samples", samples, "Monte Carlo samples");
    phasetype->add_option("--seed", g.seed, "random seed");

    auto* fixtures = app.add_subcommand("fixtures", "list the shipped fixtures");

    for (auto* sub : {analyze, ngm, sirph, translate, simulate, escape, phasetype, fixtures}) sub->fallthrough();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        for (const auto& a : args)
            for (auto* sub : app.get_subcommands({}))
                if (sub->get_name() == a) {
                    out << sub->help();
                    return 0;
                }
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*analyze) return cmd_analyze(g, file, dot, out);
        if (*ngm) return cmd_ngm(g, file, aux, out);
        if (*sirph) return cmd_sirph(g, file, aux, tau_max, points ? points : 21, out);
        if (*translate) return cmd_translate(g, file, bound, node_cap, out);
        if (*simulate) return cmd_simulate(g, file, use_ode, tmax, runs, init, out_path, points ? points : 101, out);
        if (*escape) return cmd_escape(g, file, from, to, esc, out_path, out);
        if (*phasetype) return cmd_phasetype(g, file, tmax, points ? points : 21, samples, out);
        if (*fixtures) {
            if (g.json) {
                Json j;
                j["schema_version"] = kSchemaVersion;
                j["command"] = "fixtures";
                j["fixtures"] = fixture_names();
                print_json(out, j);
            } else {
                for (const auto& n : fixture_names()) out << n << "\n";
            }
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}

}  // namespace crnepi::cli
