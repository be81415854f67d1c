#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hopfsub/classify.hpp"
#include "hopfsub/verify.hpp"

namespace {

int run_verify_cmd(const hopfsub::RunConfig& config, const std::string& out_dir,
                   bool seed_was_set) {
    if (!seed_was_set) std::cerr << "seed: " << config.seed << "\n";
    const std::vector<hopfsub::VerificationReport> reports = hopfsub::run_verify(config);
    const hopfsub::Tolerances tol = hopfsub::tolerances_from(config);

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& report : reports) {
            const std::string ext = config.format == "markdown" ? ".md" : ".json";
            std::ofstream file(std::filesystem::path(out_dir) / (report.fibration + ext));
            if (!file) throw std::runtime_error("cannot write to " + out_dir);
            file << (config.format == "markdown" ? hopfsub::report_to_markdown(report)
                                                 : hopfsub::report_to_json(report, config, tol));
        }
        std::ofstream summary(std::filesystem::path(out_dir) / "summary.json");
        summary << hopfsub::summary_to_json(reports, config);
    } else if (config.format == "markdown") {
        for (const auto& report : reports) std::cout << hopfsub::report_to_markdown(report) << "\n";
    } else {
        std::cout << hopfsub::summary_to_json(reports, config) << "\n";
    }

    for (const auto& report : reports)
        for (const auto& r : report.identities)
            if (!r.pass)
                std::cerr << report.fibration << "/" << r.id << ": max residual "
                          << r.max_residual << " > " << r.tolerance << "\n";
    return hopfsub::all_pass(reports) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hopf pseudo-Riemannian submersions from pseudo-hyperbolic spaces: "
                 "construction and numerical verification"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run the verification suites");
    std::vector<std::string> fibrations{"all"};
    hopfsub::RunConfig config;
    std::vector<std::string> tol_overrides;
    std::string out_dir;
    bool expensive = false;
    verify->add_option("--fibration", fibrations,
                       "fibration ids (pi1..pi9, pi_C, pi_A, pi_H, pi_B, pi_CH, pi_CB, pi_AB) "
                       "or 'all'");
    verify->add_option("--samples", config.samples, "samples per identity")
        ->check(CLI::PositiveNumber);
    auto* seed_opt = verify->add_option("--seed", config.seed, "RNG seed");
    verify->add_option("--tol", tol_overrides, "tolerance override, <identity>=<value>");
    verify->add_flag("--expensive", expensive, "include the nested-derivative residuals");
    verify->add_option("--format", config.format, "json or markdown")
        ->check(CLI::IsMember({"json", "markdown"}));
    verify->add_option("--out", out_dir, "directory for per-fibration reports");
    verify->add_option("--m", config.m, "family parameter m")->check(CLI::PositiveNumber);
    verify->add_option("--t", config.t, "family parameter t");

    // catalog
    auto* catalog = app.add_subcommand("catalog", "print the fibration catalogue");
    std::string cat_format = "markdown";
    catalog->add_option("--format", cat_format, "json or markdown")
        ->check(CLI::IsMember({"json", "markdown"}));

    // check-pi9
    auto* pi9 = app.add_subcommand("check-pi9",
                                   "conformance of the split-octonion evaluator against the "
                                   "literal polynomial");
    int pi9_samples = 1000;
    std::uint64_t pi9_seed = 1;
    pi9->add_option("--samples", pi9_samples, "sample count")->check(CLI::PositiveNumber);
    pi9->add_option("--seed", pi9_seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (catalog->parsed()) {
            std::cout << (cat_format == "json" ? hopfsub::classify::catalog_to_json()
                                               : hopfsub::classify::catalog_to_markdown())
                      << "\n";
            return 0;
        }
        if (pi9->parsed()) {
            hopfsub::Tolerances tol;
            const hopfsub::IdentityResult r = hopfsub::pi9_conformance(pi9_samples, pi9_seed, tol);
            std::cout << "pi9 conformance: max componentwise deviation " << r.max_residual
                      << " over " << r.samples << " samples (tolerance " << r.tolerance << ")\n";
            return r.pass ? 0 : 1;
        }
        config.fibrations = fibrations;
        config.expensive = expensive;
        for (const std::string& item : tol_overrides) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("tolerance override must be <identity>=<value>");
            config.tolerance_overrides[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        }
        return run_verify_cmd(config, out_dir, seed_opt->count() > 0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
