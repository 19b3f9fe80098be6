// berklab: exact-arithmetic experiments for rational-map dynamics on the
// Berkovich projective line over non-archimedean fields.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "berklab/experiment.hpp"

namespace {

unsigned thread_cap_from_env() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("BERKLAB_THREADS");
    if (!env) return hw;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || v < 1) return hw;
    return static_cast<unsigned>(std::min<long>(v, hw));
}

void attach_options(CLI::App* cmd, berklab::ExperimentConfig& config) {
    cmd->add_option("--f", config.f_path, "map-spec JSON file for f")->required();
    cmd->add_option("--g", config.g_path, "map-spec JSON file for g (default: g(z)=z)");
    cmd->add_option("--depth", config.depth, "residue tree depth");
    cmd->add_option("--nmax", config.nmax, "largest iterate n");
    cmd->add_option("--samples", config.samples,
                    "evaluation points \"D(a; m)\" (default: tree vertices)");
    cmd->add_option("--eps", config.eps, "certified tolerance (rational)");
    cmd->add_option("--pgr-depth", config.pgr_depth, "conjugation search depth D");
    cmd->add_option("--pgr-denom", config.pgr_denom, "radius exponent denominator N");
    cmd->add_option("--mu-ref", config.mu_ref,
                    "reference measure: pullback | green | canonical");
    cmd->add_option("--out", config.out_path, "output file path");
    cmd->add_option("--format", config.format, "output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

int emit_error(const std::string& code, const std::string& message, int status) {
    std::cout << "{\"error\": {\"code\": \"" << code << "\", \"message\": \"" << message
              << "\"}}\n";
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rational-map dynamics on the Berkovich line"};
    app.require_subcommand(1);

    berklab::ExperimentConfig config;
    config.threads = thread_cap_from_env();

    for (const char* name : {"reduce", "pgr", "green", "apriori", "equidist", "roots",
                             "laplacian-check"}) {
        CLI::App* sub = app.add_subcommand(name);
        attach_options(sub, config);
        sub->callback([&config, name]() { config.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::stringstream ss;
        ss << e.what();
        return emit_error("UsageError", ss.str(), 2);
    }

    try {
        berklab::RunOutput out = berklab::run_command(config);
        const std::string& chosen = config.format == "csv" && !out.csv.empty() ? out.csv
                                                                               : out.json;
        if (!config.out_path.empty()) {
            std::ofstream f(config.out_path, std::ios::binary);
            if (!f) return emit_error("IoError", "cannot write " + config.out_path, 2);
            f << chosen;
        }
        std::cout << chosen;
        if (config.command == "laplacian-check" &&
            out.json.find("\"ok\": false") != std::string::npos)
            return 1;
        return 0;
    } catch (const berklab::ParseError& e) {
        return emit_error(e.code(), e.what(), 2);
    } catch (const berklab::Error& e) {
        return emit_error(e.code(), e.what(), 3);
    } catch (const std::exception& e) {
        return emit_error("Unexpected", e.what(), 4);
    }
}
