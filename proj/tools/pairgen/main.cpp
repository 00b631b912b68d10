#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pairgen/acceptance.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/parallel.hpp"
#include "pairgen/runner.hpp"

namespace {

constexpr int kExitValidation = 2;

nlohmann::ordered_json to_json(const std::vector<pairgen::acceptance::CriterionResult>& results) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json m = nlohmann::ordered_json::object();
        for (const auto& kv : r.measured) m[kv.key] = kv.value;
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"module", r.module},
                       {"status", r.skipped ? "skipped" : (r.passed ? "pass" : "fail")},
                       {"seconds", r.seconds},
                       {"measured", m},
                       {"note", r.note}});
    }
    return {{"version", pairgen::version_string()}, {"criteria", arr}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pair creation in a Sauter pulse: spectra, stage timing and late-time analysis"};
    app.set_version_flag("--version", pairgen::version_string());
    app.require_subcommand(1);

    unsigned threads = 0;
    app.add_option("--threads", threads, "Cap on worker threads (overrides PAIRGEN_THREADS)")
        ->check(CLI::Range(1u, 4096u));

    auto* run_cmd = app.add_subcommand("run", "Run a configured scenario");
    std::string config_path;
    std::vector<std::string> overrides;
    run_cmd->add_option("--config", config_path, "TOML run configuration")->required();
    run_cmd->add_option("--override", overrides, "key=value, e.g. pulse.e0=0.3 or time.times=[0,10]")
        ->take_all();
    run_cmd->add_option("--threads", threads, "Cap on worker threads")->check(CLI::Range(1u, 4096u));
    bool quiet = false;
    run_cmd->add_flag("-q,--quiet", quiet, "No progress output");

    auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite");
    std::vector<std::string> only;
    bool coarse = false, strict = false;
    std::string json_path;
    verify_cmd->add_option("--only", only, "Criterion id, criterion name or module name")->take_all();
    verify_cmd->add_flag("--coarse", coarse, "Coarser stage-detection grids (tolerance widened to 5)");
    verify_cmd->add_flag("--strict", strict, "Exit with status 1 when a criterion fails");
    verify_cmd->add_option("--json", json_path, "Also write the results as JSON");
    verify_cmd->add_option("--threads", threads, "Cap on worker threads")->check(CLI::Range(1u, 4096u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }
    if (threads > 0) pairgen::set_thread_count(threads);

    if (*run_cmd) {
        try {
            pairgen::RunConfig config = pairgen::load_config(config_path, overrides);
            if (threads > 0) config.threads = threads;
            const pairgen::RunSummary summary = pairgen::run(config, quiet ? nullptr : &std::cerr);
            std::cout << "wrote " << summary.files.size() << " files to " << config.output_dir.string() << " in "
                      << summary.wall_seconds << " s\n";
            for (const std::string& f : summary.failures) std::cout << "numerical failure: " << f << '\n';
            return summary.exit_code();
        } catch (const pairgen::ValidationError& e) {
            std::cerr << "invalid configuration: " << e.what() << '\n';
            return kExitValidation;
        } catch (const pairgen::IoError& e) {
            std::cerr << "output error: " << e.what() << '\n';
            return kExitValidation;
        }
    }

    pairgen::acceptance::SuiteOptions opts;
    opts.coarse_stage_grids = coarse;
    bool all_ok = true;
    const auto results = pairgen::acceptance::run_suite(only, opts, [&](const auto& r) {
        std::cout << pairgen::acceptance::format_line(r) << std::endl;
        if (!r.skipped && !r.passed) all_ok = false;
    });
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) {
            std::cerr << "cannot write " << json_path << '\n';
            return kExitValidation;
        }
        out << to_json(results).dump(2) << '\n';
    }
    return strict && !all_ok ? 1 : 0;
}
