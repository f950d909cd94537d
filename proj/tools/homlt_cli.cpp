#include "CLI11.hpp"
#include "homlt/scenario.hpp"

#include <fstream>
#include <iostream>

namespace {

homlt::Json load_config(const std::string& path,
                        const std::vector<std::string>& overrides) {
    std::ifstream is(path);
    if (!is) throw homlt::ConfigError("cannot read config file: " + path);
    homlt::Json doc = homlt::Json::parse(is, nullptr, false);
    if (doc.is_discarded())
        throw homlt::ConfigError("config file is not valid JSON: " + path);
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw homlt::ConfigError("override must look like key=value: " + ov);
        homlt::apply_override(doc, ov.substr(0, eq), ov.substr(eq + 1));
    }
    return doc;
}

// Empty destination means stdout.
void emit(const homlt::Json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw homlt::ConfigError("cannot write to " + out_path);
    os << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification kernel for homogeneous structures of linear type"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::vector<std::string> overrides;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON configuration file")
            ->required();
        sub->add_option("--override", overrides,
                        "dotted.key=value applied on top of the config file");
        sub->add_option("--out", out_path, "output file (default stdout)");
    };

    CLI::App* verify =
        app.add_subcommand("verify", "run the verification pipeline on one scenario");
    CLI::App* exp_alg = app.add_subcommand(
        "export-algebra", "emit the adapted basis and structure constants");
    CLI::App* exp_traj = app.add_subcommand(
        "export-trajectories", "integrate one geodesic family and emit the points");
    CLI::App* suite = app.add_subcommand(
        "full-suite", "run every scenario of a suite config into a directory");
    for (CLI::App* sub : {verify, exp_alg, exp_traj, suite}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const homlt::Json doc = load_config(config_path, overrides);

        if (verify->parsed()) {
            const homlt::ScenarioConfig cfg = homlt::ScenarioConfig::from_json(doc);
            const homlt::ScenarioResult res = homlt::run_scenario(cfg);
            const std::string dest = out_path.empty() ? cfg.output_path : out_path;
            emit(res.report, dest);
            if (!dest.empty())
                std::cout << "report written to " << dest << "\n";
            if (!res.pass) {
                std::cerr << "failed checks:";
                for (const std::string& nm : res.failing) std::cerr << " " << nm;
                std::cerr << "\n";
                return 1;
            }
            // keep stdout valid JSON when the report itself went there
            (dest.empty() ? std::cerr : std::cout) << "verdict: pass\n";
            return 0;
        }
        if (exp_alg->parsed()) {
            const homlt::ScenarioConfig cfg = homlt::ScenarioConfig::from_json(doc);
            emit(homlt::export_algebra(cfg), out_path);
            return 0;
        }
        if (exp_traj->parsed()) {
            emit(homlt::export_trajectories(doc), out_path);
            return 0;
        }
        // full-suite: --out names the output directory
        const bool all = homlt::full_suite(doc, out_path);
        std::cout << "suite verdict: " << (all ? "pass" : "fail") << "\n";
        return all ? 0 : 1;
    } catch (const homlt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
