// Command-line front end for the verification suites: runs named suites with
// seeded configuration, emits JSON-line reports, and renders stored reports.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cpx/suites.hpp"

namespace {

int run_verify(const std::string& suite, const cpx::SuiteConfig& cfg, const std::string& out_path,
               bool show_config) {
    if (show_config) {
        nlohmann::ordered_json j;
        j["n"] = cfg.n;
        j["ell"] = cfg.ell;
        j["seed"] = cfg.seed;
        j["samples"] = cfg.samples;
        j["geodesics"] = cfg.geodesics;
        j["fields"] = cfg.fields;
        j["N"] = cfg.quad_N;
        j["trials"] = cfg.trials;
        j["tolerances"] = {{"curvature", cfg.tol_curvature},
                           {"energy", cfg.tol_energy},
                           {"segment", cfg.tol_segment},
                           {"complex", cfg.tol_complex},
                           {"coeff-match", cfg.tol_coeff_match},
                           {"lemma", cfg.tol_lemma},
                           {"flat", cfg.tol_flat},
                           {"holonomy", cfg.tol_holonomy},
                           {"curvature-u", cfg.tol_curv_u},
                           {"curvature-w", cfg.tol_curv_w},
                           {"split-commute", cfg.tol_split_comm},
                           {"row1", cfg.tol_row1},
                           {"row2-x", cfg.tol_row2_x},
                           {"criterion", cfg.tol_criterion}};
        std::cout << j.dump(2) << "\n";
    }

    std::vector<cpx::SuiteReport> reports;
    try {
        reports = cpx::run_suite(suite, cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    std::ostringstream lines;
    bool all_pass = true;
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        lines << r.to_json(true).dump() << "\n";
        std::cout << (r.pass ? "pass " : "FAIL ") << r.suite << "/" << r.anchor
                  << "  residual=" << r.max_residual << "  seed=" << r.seed << "\n";
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "config error: cannot open " << out_path << "\n";
            return 2;
        }
        f << lines.str();
    }
    return all_pass ? 0 : 1;
}

int run_report(const std::string& in_path, const std::string& format,
               const std::string& out_path) {
    std::ifstream f(in_path);
    if (!f) {
        std::cerr << "config error: cannot open " << in_path << "\n";
        return 2;
    }
    std::vector<nlohmann::ordered_json> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        rows.push_back(nlohmann::ordered_json::parse(line));
    }
    std::ostringstream out;
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (auto& r : rows) arr.push_back(r);
        out << arr.dump(2) << "\n";
    } else if (format == "md") {
        out << "| suite | check | status | max residual | seed |\n";
        out << "|---|---|---|---|---|\n";
        for (auto& r : rows) {
            out << "| " << r.value("suite", "?") << " | " << r.value("anchor", "?") << " | "
                << (r.value("pass", false) ? "pass" : "**FAIL**") << " | "
                << r.value("max_residual", 0.0) << " | " << r.value("seed", 0ULL) << " |\n";
        }
    } else {
        std::cerr << "config error: unknown format " << format << "\n";
        return 2;
    }
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream g(out_path);
        g << out.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for the geodesic transform on complex projective space"};
    app.require_subcommand(1);

    cpx::SuiteConfig cfg;
    std::string suite, out_path;
    bool show_config = false;

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "suite name or 'all'")->required();
    verify->add_option("--n", cfg.n, "projective dimension (2 or 3)");
    verify->add_option("--ell", cfg.ell, "tensor valence (1..3)");
    verify->add_option("--seed", cfg.seed, "random seed");
    verify->add_option("--samples", cfg.samples, "sample points per check");
    verify->add_option("--geodesics", cfg.geodesics, "geodesics per survey");
    verify->add_option("--fields", cfg.fields, "fields per survey");
    verify->add_option("--N", cfg.quad_N, "quadrature nodes (power of two)");
    verify->add_option("--trials", cfg.trials, "Lagrangian frames per criterion test");
    verify->add_option("--out", out_path, "write JSON-line report here");
    verify->add_flag("--show-config", show_config, "print the effective configuration");
    verify->set_config("--config", "", "configuration file (ini format; flags override)");

    std::string in_path, format = "md", rep_out;
    auto* report = app.add_subcommand("report", "render a stored JSON-line report");
    report->add_option("--in", in_path, "report file")->required();
    report->add_option("--format", format, "json or md");
    report->add_option("--out", rep_out, "output file (default stdout)");

    auto* ls = app.add_subcommand("list-suites", "list available suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ls->parsed()) {
            for (const auto& s : cpx::suite_names()) std::cout << s << "\n";
            return 0;
        }
        if (verify->parsed()) return run_verify(suite, cfg, out_path, show_config);
        if (report->parsed()) return run_report(in_path, format, rep_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
