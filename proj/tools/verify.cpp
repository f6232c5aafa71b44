#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "s3v/suites.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of formal-calculus, Moore-Seiberg and Jacobi identities on small models"};
    s3v::RunConfig cfg;
    std::string suites, mode = "exact", model, report, params, dump;
    app.add_option("--suites", suites, "Comma-separated subset of formal,branches,paths,moore-seiberg,jacobi,s3");
    app.add_option("--model", model, "Model JSON file");
    app.add_option("--cutoff", cfg.cutoff, "Expansion cutoff")->default_val(8);
    app.add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tolerance", cfg.tolerance, "Comparison tolerance in float mode")->default_val(1e-9);
    app.add_option("--seed", cfg.seed, "Seed for randomized suites")->default_val(1);
    app.add_option("--report", report, "Write the JSON report to this file");
    app.add_option("--path-params", params, "a0,b0,a1,b1,a2,b2,a3,b3");
    app.add_option("--dump-paths", dump, "Directory for gamma.csv and sigma.csv");
    app.add_flag("--timings", cfg.timings, "Record per-check durations in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.mode = mode == "float" ? s3v::Mode::Float : s3v::Mode::Exact;
    if (!suites.empty()) cfg.suites = split_list(suites);
    if (!model.empty()) cfg.model_path = model;
    if (!report.empty()) cfg.report_path = report;
    if (!params.empty()) cfg.path_params_text = params;
    if (!dump.empty()) cfg.dump_paths_dir = dump;

    try {
        s3v::Report rep = s3v::run(cfg);
        nlohmann::json j = rep.to_json();
        if (cfg.report_path) {
            std::ofstream os(*cfg.report_path);
            if (!os) {
                std::cerr << "error: cannot write report to " << *cfg.report_path << "\n";
                return 3;
            }
            os << j.dump(2) << "\n";
        }
        for (const auto& c : rep.checks)
            std::cout << (c.result.passed ? "PASS " : "FAIL ") << c.suite << " / " << c.result.name << ": "
                      << c.result.message << "\n";
        const auto& sum = j["summary"];
        std::cout << sum["passed"].get<std::size_t>() << "/" << sum["total"].get<std::size_t>() << " checks passed\n";
        return rep.all_passed() ? 0 : 1;
    } catch (const s3v::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
