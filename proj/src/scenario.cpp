#include "homlt/scenario.hpp"

#include <ctime>
#include <filesystem>
#include <fstream>

namespace homlt {

namespace {

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<double> parse_vector(const Json& j, const std::string& key) {
    if (!j.is_array()) throw ConfigError(key + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(key + " must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

double tol_or(const ScenarioConfig& cfg, const std::string& name, double dflt) {
    const auto it = cfg.tolerances.find(name);
    return it == cfg.tolerances.end() ? dflt : it->second;
}

struct CheckSink {
    Json items = Json::array();
    bool all_pass = true;
    std::vector<std::string> failing;

    void add(const std::string& name, const std::string& anchor, double residual,
             double tol, bool invert = false) {
        const bool pass = invert ? residual > tol : residual <= tol;
        items.push_back({{"name", name},
                         {"anchor", anchor},
                         {"residual", residual},
                         {"tol", tol},
                         {"pass", pass}});
        if (!pass) {
            all_pass = false;
            failing.push_back(name);
        }
    }

    void absorb(const TheoremReport& rep) {
        for (const CheckItem& it : rep.checks) {
            items.push_back({{"name", it.name},
                             {"anchor", it.anchor},
                             {"residual", it.residual},
                             {"tol", it.tol},
                             {"pass", it.pass}});
            if (!it.pass) {
                all_pass = false;
                failing.push_back(it.name);
            }
        }
    }
};

Vec to_vec(const std::vector<double>& v) {
    Vec out(static_cast<int>(v.size()));
    for (int i = 0; i < out.size(); ++i) out[i] = v[static_cast<std::size_t>(i)];
    return out;
}

Json vec_to_json(const Vec& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Vec resolve_xi(const ScenarioConfig& cfg, const ModelSpace& M) {
    if (cfg.xi) {
        if (static_cast<int>(cfg.xi->size()) != M.dim)
            throw ConfigError("xi has " + std::to_string(cfg.xi->size()) +
                              " components, the model needs " + std::to_string(M.dim));
        const Vec v = to_vec(*cfg.xi);
        if (std::abs(v.dot(M.g * v)) <= 1e-8)
            throw ConfigError("xi is degenerate: |g(xi,xi)| <= 1e-8");
        return v;
    }
    Rng rng(cfg.xi_seed);
    for (int tries = 0; tries < 1000; ++tries) {
        Vec v = rng.normal_vector(M.dim);
        v /= v.norm();
        if (v.dot(M.g * v) > 0.1) return v;
    }
    throw ConfigError("seeded xi: no draw with g(xi,xi) > 0.1 after 1000 tries");
}

// Family sweep on the terminal group: the connection table and the four
// documented geodesic families.
void terminal_group_stage(const ScenarioConfig& cfg, CheckSink& sink, Json& geos) {
    const KGroup K = standard_K();
    const Tensor3 Gam = koszul_connection(K.c, K.g);
    double conn = 0.0;
    Tensor3 want(2);
    want(1, 0, 1) = -1.0;  // nabla_V A = -V
    want(1, 1, 0) = -1.0;  // nabla_V V = -A
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                conn = std::max(conn, std::abs(Gam(i, j, k) - want(i, j, k)));
    sink.add("k_connection", "Koszul table of the terminal group", conn,
             tol_or(cfg, "k_connection", 1e-14));

    const double r = 0.6;
    struct FamilyRun {
        const char* tag;
        Family fam;
        Eigen::Vector2d init;
        int direction;
        double t_max;
        bool expect_blowup;
        double pole_tol;
    };
    const FamilyRun runs[] = {
        {"space-like", Family::SpaceLike, {0.0, 1.0}, 1, 10.0, true, 0.0},
        {"null", Family::Null, {1.0, 1.0}, 1, 10.0, true, 0.0},
        {"time-like", Family::TimeLike, {-1.0, r}, -1, 10.0, true, 1e-3},
        {"stationary", Family::TimeLike, {1.0, 0.0}, 1, 100.0, false, 0.0},
    };
    for (const FamilyRun& fr : runs) {
        const GeodesicResult gr =
            integrate_geodesic(fr.init, fr.direction, fr.t_max, 1e-10);
        const std::string base = std::string("geo_") + fr.tag;
        Json entry = {{"family", fr.tag},
                      {"initial", {fr.init[0], fr.init[1]}},
                      {"direction", fr.direction},
                      {"max_norm", gr.max_norm},
                      {"causal_drift", gr.causal_drift()},
                      {"num_points", gr.points.size()},
                      {"last_t", gr.points.back()[0]}};
        entry["blowup"] =
            gr.blew_up ? Json{{"t_low", gr.t_low}, {"t_high", gr.t_high}} : Json(nullptr);
        geos.push_back(entry);

        if (!fr.expect_blowup) {
            double drift = 0.0;
            for (const auto& p : gr.points)
                drift = std::max({drift, std::abs(p[1] - fr.init[0]),
                                  std::abs(p[2] - fr.init[1])});
            sink.add(base + "_drift", "stationary family stays constant",
                     gr.blew_up ? 1.0 : drift, tol_or(cfg, "geo_stationary", 1e-15));
            sink.add(base + "_reach", "integration reaches t_max",
                     gr.blew_up ? 1.0 : std::abs(gr.points.back()[0] - fr.t_max),
                     1e-9);
            continue;
        }

        const double pole = closed_form_pole(fr.fam, r);
        double outside = 1.0;
        double width = 1.0;
        if (gr.blew_up) {
            width = gr.t_high - gr.t_low;
            outside = std::max({0.0, gr.t_low - pole, pole - gr.t_high});
        }
        sink.add(base + "_width", "escape-time bracket width", width,
                 tol_or(cfg, "geo_bracket_width", 1e-4));
        sink.add(base + "_pole", "bracket contains the analytic escape time",
                 outside, fr.pole_tol > 0 ? fr.pole_tol : 1e-12);

        // pointwise comparison on the first 90% of the domain
        double dev = 0.0;
        for (const auto& p : gr.points) {
            const double t = p[0];
            if (fr.direction > 0 ? t > 0.9 * pole : t < 0.9 * pole) continue;
            const Eigen::Vector2d cf = closed_form(fr.fam, r, t);
            const double c1 = fr.direction < 0 ? -cf[0] : cf[0];
            dev = std::max({dev, std::abs(p[1] - c1), std::abs(p[2] - cf[1])});
        }
        sink.add(base + "_closed_form", "deviation from the exact solution", dev,
                 tol_or(cfg, "geo_closed_form", 1e-6));
        sink.add(base + "_drift", "causal invariant conserved along the flow",
                 gr.causal_drift(), tol_or(cfg, "geo_drift", 1e-8));
    }
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::vector<std::string> known = {
        "case", "n", "s", "xi", "zeta", "zeta1", "zeta2",
        "zeta3", "tolerances", "output_path", "name"};
    for (const auto& [key, val] : j.items()) {
        (void)val;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown config key: " + key);
    }
    ScenarioConfig cfg;
    if (!j.contains("case") || !j.at("case").is_string())
        throw ConfigError("config needs a string \"case\"");
    try {
        cfg.cs = parse_case(j.at("case").get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw ConfigError("config needs an integer \"n\"");
    cfg.n = j.at("n").get<int>();
    if (cfg.n < 2) throw ConfigError("n >= 2 required (dimension at least 4)");
    if (j.contains("s")) {
        if (!j.at("s").is_number_integer()) throw ConfigError("s must be an integer");
        cfg.s = j.at("s").get<int>();
    }
    const bool para = cfg.cs == Case::KahlerPara || cfg.cs == Case::QuatPara;
    if (para && cfg.s != 0) throw ConfigError("the para cases have no split parameter");
    if (!para && (cfg.s < 0 || cfg.s > cfg.n))
        throw ConfigError("split s must lie in [0, n]");

    const int dim = is_kahler_case(cfg.cs) ? 2 * cfg.n : 4 * cfg.n;
    if (j.contains("xi")) {
        const Json& x = j.at("xi");
        if (x.is_array()) {
            cfg.xi = parse_vector(x, "xi");
            if (static_cast<int>(cfg.xi->size()) != dim)
                throw ConfigError("xi must have " + std::to_string(dim) + " components");
        } else if (x.is_number_integer()) {
            cfg.xi_seed = x.get<std::uint64_t>();
        } else if (x.is_object() && x.contains("seed") &&
                   x.at("seed").is_number_integer()) {
            cfg.xi_seed = x.at("seed").get<std::uint64_t>();
        } else {
            throw ConfigError("xi must be a component array or a seed");
        }
    }

    const auto load_zeta = [&](const char* key, std::vector<double>& dst) {
        if (!j.contains(key)) return;
        dst = parse_vector(j.at(key), key);
        if (static_cast<int>(dst.size()) != dim)
            throw ConfigError(std::string(key) + " must have " + std::to_string(dim) +
                              " components");
    };
    if (is_kahler_case(cfg.cs)) {
        load_zeta("zeta", cfg.zeta);
        for (const char* k : {"zeta1", "zeta2", "zeta3"})
            if (j.contains(k))
                throw ConfigError(std::string(k) + " applies to the quaternionic cases only");
    } else {
        if (j.contains("zeta")) throw ConfigError("use zeta1..zeta3 for the quaternionic cases");
        load_zeta("zeta1", cfg.zeta_quat[0]);
        load_zeta("zeta2", cfg.zeta_quat[1]);
        load_zeta("zeta3", cfg.zeta_quat[2]);
    }

    if (j.contains("tolerances")) {
        const Json& t = j.at("tolerances");
        if (!t.is_object()) throw ConfigError("tolerances must be an object");
        for (const auto& [key, val] : t.items()) {
            if (!val.is_number()) throw ConfigError("tolerance " + key + " must be a number");
            cfg.tolerances[key] = val.get<double>();
        }
    }
    if (j.contains("output_path")) {
        if (!j.at("output_path").is_string())
            throw ConfigError("output_path must be a string");
        cfg.output_path = j.at("output_path").get<std::string>();
    }
    return cfg;
}

Json scenario_echo(const ScenarioConfig& cfg) {
    Json out;
    out["case"] = case_name(cfg.cs);
    out["n"] = cfg.n;
    out["s"] = cfg.s;
    if (cfg.xi)
        out["xi"] = *cfg.xi;
    else
        out["xi"] = Json{{"seed", cfg.xi_seed}};
    if (!cfg.zeta.empty()) out["zeta"] = cfg.zeta;
    for (int a = 0; a < 3; ++a)
        if (!cfg.zeta_quat[static_cast<std::size_t>(a)].empty())
            out["zeta" + std::to_string(a + 1)] = cfg.zeta_quat[static_cast<std::size_t>(a)];
    if (!cfg.tolerances.empty()) out["tolerances"] = cfg.tolerances;
    return out;
}

void apply_override(Json& doc, const std::string& key, const std::string& value) {
    Json parsed = Json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;
    Json* cur = &doc;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = key.find('.', start);
        const std::string part = key.substr(start, dot - start);
        if (part.empty()) throw ConfigError("override key has an empty segment: " + key);
        if (dot == std::string::npos) {
            (*cur)[part] = parsed;
            return;
        }
        cur = &(*cur)[part];
        start = dot + 1;
    }
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    const ModelSpace M = make_model(cfg.cs, cfg.n, cfg.s);
    const Vec xi = resolve_xi(cfg, M);
    const double gxx = xi.dot(M.g * xi);

    CheckSink sink;
    Json skipped = Json::array();

    const StructureReport srep = verify_structure(M);
    sink.add("structure", "defining invariants of the model space", srep.worst,
             tol_or(cfg, "structure", 1e-10));

    Vec zeta_k = Vec::Zero(M.dim);
    std::array<Vec, 3> zeta_q{Vec::Zero(M.dim), Vec::Zero(M.dim), Vec::Zero(M.dim)};
    bool zeta_nonzero = false;
    if (M.is_kahler()) {
        if (!cfg.zeta.empty()) zeta_k = to_vec(cfg.zeta);
        zeta_nonzero = zeta_k.cwiseAbs().maxCoeff() > 0.0;
    } else {
        for (int a = 0; a < 3; ++a)
            if (!cfg.zeta_quat[static_cast<std::size_t>(a)].empty())
                zeta_q[static_cast<std::size_t>(a)] =
                    to_vec(cfg.zeta_quat[static_cast<std::size_t>(a)]);
        for (const Vec& z : zeta_q) zeta_nonzero = zeta_nonzero || z.cwiseAbs().maxCoeff() > 0.0;
    }

    Tensor3 S03 = M.is_kahler() ? build_S_kahler(M, xi, zeta_k)
                                : build_S_quat(M, xi, zeta_q);
    const double sym_res = M.is_kahler()
                               ? kahler_symmetry_residuals(S03, M).worst()
                               : quat_symmetry_residuals(S03, M).worst();
    sink.add("s_symmetries", "class symmetry relations of S", sym_res,
             tol_or(cfg, "s_symmetries", 1e-10));

    const TheoremReport trep =
        M.is_kahler() ? theorem_kahler_check(M, xi, zeta_k, cfg.tolerances)
                      : theorem_quat_check(M, xi, zeta_q, cfg.tolerances);
    sink.absorb(trep);

    Json report;
    report["version"] = version();
    report["timestamp"] = iso_timestamp();
    report["scenario"] = scenario_echo(cfg);
    report["holonomy_dim"] = Json(nullptr);
    report["algebra_ref"] = Json(nullptr);
    Json geos = Json::array();

    if (!zeta_nonzero) {
        const Tensor3 S12 = to_operator(S03, M.ginv);
        const Tensor4 Rt = rt_operator(M, xi, S12);
        const std::vector<Mat> span = holonomy_span(Rt);
        const int want_dim = M.is_kahler() ? 1 : 3;
        report["holonomy_dim"] = static_cast<int>(span.size());
        sink.add("holonomy_dim", "commutator-closed span of the curvature maps",
                 std::abs(static_cast<double>(span.size()) - want_dim), 0.5);
        sink.add("holonomy_span_match", "span equality with the canonical generators",
                 span_match_residual(span, canonical_holonomy(M, xi)),
                 tol_or(cfg, "holonomy_span_match", 1e-9));

        const NomizuAlgebra alg = standard_nomizu(M, xi, S12);
        sink.add("jacobi", "Jacobi identity of the algebra", jacobi_residual(alg.c),
                 tol_or(cfg, "jacobi", 1e-10));
        sink.add("nomizu_expansion", "bracket closure in the algebra basis",
                 alg.expand_residual, tol_or(cfg, "nomizu_expansion", 1e-12));
        for (const auto& [key, res] : reference_bracket_residuals(M, xi, S12))
            sink.add("bracket[" + key + "]", "reference bracket tables", res,
                     tol_or(cfg, "brackets", 1e-10));

        bool have_rz = false;
        Realization rz;
        try {
            rz = build_realization(M, xi);
            have_rz = true;
        } catch (const std::domain_error& e) {
            skipped.push_back(std::string("realization: ") + e.what());
        }
        if (have_rz) {
            report["algebra_ref"] = rz.algebra_ref;
            const HomReport hrep = homomorphism_residual(alg, rz);
            sink.add("realization_membership", "ambient-algebra membership of the images",
                     hrep.membership, tol_or(cfg, "membership", 1e-12));
            sink.add("realization_hom", "bracket homomorphism of the realization",
                     hrep.hom, tol_or(cfg, "hom", 1e-9));
            sink.add("realization_injectivity", "linear independence of the images",
                     hrep.injectivity, tol_or(cfg, "injectivity", 1e-6), true);
            if (M.is_kahler())
                sink.add("jscr_trace", "tracelessness of the holonomy image",
                         hc_trace(rz.jscr(0)).cwiseAbs().maxCoeff(),
                         tol_or(cfg, "jscr_trace", 1e-13));

            if (chain_supported(M, xi)) {
                const InvolutionSet invs = standard_involutions(M, xi, rz);
                for (const std::string& nm : invs.chain_names) {
                    const InvolutionCheck ic =
                        check_involution(alg, M, invs.maps.at(nm));
                    sink.add("involution[" + nm + "]",
                             "isometric involutive automorphism",
                             std::max({ic.inv2, ic.autom, ic.block, ic.isometry}),
                             tol_or(cfg, "involutions", 1e-10));
                }
                const ChainResult chain = involution_chain(alg, invs, invs.chain_names);
                for (const ChainStep& st : chain.steps)
                    sink.add("chain[" + st.name + "]",
                             "restriction to the fixed-point subalgebra",
                             std::max({st.inv2, st.autom, st.closure}),
                             tol_or(cfg, "involutions", 1e-10));
                sink.add("chain_terminal_dim", "two-dimensional terminal algebra",
                         std::abs(chain.dim - 2.0), 0.5);
                if (chain.dim == 2) {
                    const TerminalK tk = terminal_K(chain.c, chain.gt);
                    sink.add("terminal_bracket", "[A,V] = V in the terminal algebra",
                             tk.bracket_residual, tol_or(cfg, "terminal", 1e-10));
                    sink.add("terminal_signs", "metric signs (+1,-1) on (A,V)",
                             (tk.gAA > 0.0 && tk.gVV < 0.0) ? std::abs(tk.gAV) : 1.0,
                             tol_or(cfg, "terminal_signs", 1e-8));
                }
            } else {
                skipped.push_back("chain: no Lorentzian reduction for this layout");
            }
        }
    } else {
        skipped.push_back(
            "algebra and chain stages: zeta != 0 leaves the certified class");
    }

    terminal_group_stage(cfg, sink, geos);

    report["checks"] = sink.items;
    report["geodesics"] = geos;
    report["skipped"] = skipped;
    report["verdict"] = sink.all_pass ? "pass" : "fail";

    ScenarioResult out;
    out.report = std::move(report);
    out.pass = sink.all_pass;
    out.failing = sink.failing;
    return out;
}

Json export_algebra(const ScenarioConfig& cfg) {
    const ModelSpace M = make_model(cfg.cs, cfg.n, cfg.s);
    const Vec xi = resolve_xi(cfg, M);
    Vec zeta_k = Vec::Zero(M.dim);
    std::array<Vec, 3> zeta_q{Vec::Zero(M.dim), Vec::Zero(M.dim), Vec::Zero(M.dim)};
    if (M.is_kahler() && !cfg.zeta.empty()) zeta_k = to_vec(cfg.zeta);
    if (M.is_quat())
        for (int a = 0; a < 3; ++a)
            if (!cfg.zeta_quat[static_cast<std::size_t>(a)].empty())
                zeta_q[static_cast<std::size_t>(a)] =
                    to_vec(cfg.zeta_quat[static_cast<std::size_t>(a)]);
    const Tensor3 S03 = M.is_kahler() ? build_S_kahler(M, xi, zeta_k)
                                      : build_S_quat(M, xi, zeta_q);
    const Tensor3 S12 = to_operator(S03, M.ginv);
    const NomizuAlgebra alg = adapted_nomizu(M, xi, S12, adapted_frame(M, xi));

    Json out;
    out["version"] = version();
    out["case"] = case_name(cfg.cs);
    out["n"] = cfg.n;
    out["s"] = cfg.s;
    Json basis = Json::array();
    for (int i = 0; i < alg.N; ++i)
        basis.push_back({{"label", alg.labels[static_cast<std::size_t>(i)]},
                         {"part", std::string(1, alg.parts[static_cast<std::size_t>(i)])}});
    out["basis"] = basis;
    Json brackets = Json::array();
    for (int i = 0; i < alg.N; ++i)
        for (int j = i + 1; j < alg.N; ++j)
            for (int k = 0; k < alg.N; ++k) {
                const double v = alg.c(i, j, k);
                if (std::abs(v) > 1e-12)
                    brackets.push_back({{"i", i}, {"j", j}, {"k", k}, {"value", v}});
            }
    out["brackets"] = brackets;
    return out;
}

Json export_trajectories(const Json& cfg) {
    if (!cfg.is_object()) throw ConfigError("trajectory config must be a JSON object");
    if (!cfg.contains("initial") || !cfg.at("initial").is_array() ||
        cfg.at("initial").size() != 2)
        throw ConfigError("trajectory config needs \"initial\": [v1, v2]");
    Eigen::Vector2d init{cfg.at("initial")[0].get<double>(),
                         cfg.at("initial")[1].get<double>()};
    int direction = 1;
    if (cfg.contains("direction")) direction = cfg.at("direction").get<int>();
    double t_max = 10.0;
    if (cfg.contains("t_max")) t_max = cfg.at("t_max").get<double>();
    double rtol = 1e-10;
    if (cfg.contains("rtol")) rtol = cfg.at("rtol").get<double>();
    if (direction != 1 && direction != -1)
        throw ConfigError("direction must be +1 or -1");
    if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");

    const GeodesicResult gr = integrate_geodesic(init, direction, t_max, rtol);
    Json out;
    out["version"] = version();
    out["initial"] = {init[0], init[1]};
    out["direction"] = direction;
    Json pts = Json::array();
    for (const auto& p : gr.points) pts.push_back({p[0], p[1], p[2]});
    out["points"] = pts;
    out["blowup"] =
        gr.blew_up ? Json{{"t_low", gr.t_low}, {"t_high", gr.t_high}} : Json(nullptr);
    return out;
}

bool full_suite(const Json& suite_cfg, const std::string& output_dir) {
    if (!suite_cfg.is_object() || !suite_cfg.contains("scenarios") ||
        !suite_cfg.at("scenarios").is_array())
        throw ConfigError("suite config needs a \"scenarios\" array");
    std::string dir = output_dir;
    if (dir.empty() && suite_cfg.contains("output_dir"))
        dir = suite_cfg.at("output_dir").get<std::string>();
    if (dir.empty()) throw ConfigError("suite config needs an output_dir");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output_dir " + dir + ": " + ec.message());

    Json results = Json::array();
    bool all = true;
    for (const Json& entry : suite_cfg.at("scenarios")) {
        if (!entry.is_object() || !entry.contains("name") ||
            !entry.at("name").is_string())
            throw ConfigError("every suite scenario needs a string \"name\"");
        const std::string name = entry.at("name").get<std::string>();
        for (char ch : name)
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_'))
                throw ConfigError("scenario name must be [A-Za-z0-9_-]: " + name);
        const ScenarioConfig cfg = ScenarioConfig::from_json(entry);
        const ScenarioResult res = run_scenario(cfg);
        const std::string path = dir + "/" + name + ".json";
        std::ofstream os(path);
        if (!os) throw ConfigError("cannot write report to " + path);
        os << res.report.dump(2) << "\n";
        results.push_back({{"name", name}, {"verdict", res.pass ? "pass" : "fail"}});
        all = all && res.pass;
    }
    Json summary;
    summary["version"] = version();
    summary["timestamp"] = iso_timestamp();
    summary["results"] = results;
    summary["verdict"] = all ? "pass" : "fail";
    const std::string spath = dir + "/summary.json";
    std::ofstream os(spath);
    if (!os) throw ConfigError("cannot write report to " + spath);
    os << summary.dump(2) << "\n";
    return all;
}

}  // namespace homlt
