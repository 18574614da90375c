#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <gmp.h>
#include <mpfr.h>

#include <momentlab/errors.hpp>
#include <momentlab/real.hpp>

#include "commands.hpp"

#ifndef MOMENTLAB_GIT_DESCRIBE
#define MOMENTLAB_GIT_DESCRIBE "unknown"
#endif

namespace fs = std::filesystem;
using namespace moment_lab;
using nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, config_error = 2, computation_error = 3, acceptance_violation = 4 };

void add_flags(CLI::App* app, RunConfig& cfg) {
    app->add_option("--weight", cfg.weights, "weight(s) 2k, comma separated")->delimiter(',');
    app->add_option("--ell", cfg.ells, "twist index l, comma separated")->delimiter(',');
    app->add_option("--k,--k-list", cfg.k_list, "kernel index k, comma separated")->delimiter(',');
    app->add_option("--x", cfg.x, "evaluation points, comma separated decimals")->delimiter(',');
    app->add_option("--case", cfg.lg_case, "LG case: osc or exp");
    app->add_option("--N", cfg.N, "LG truncation order (0 or 1)");
    app->add_option("--u", cfg.u, "shift u, e.g. 0.1 or 0.1+0.2i");
    app->add_option("--v", cfg.v, "shift v, e.g. 0.2i");
    app->add_option("--K", cfg.K, "averaging scale K");
    app->add_option("--delta", cfg.delta, "mollifier length exponent");
    app->add_option("--prec-bits", cfg.prec_bits, "working precision in bits");
    app->add_option("--c-max", cfg.c_max, "Kloosterman modulus cutoff");
    app->add_option("--n-max", cfg.n_max, "q-expansion length (0: default)");
    std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}};
    app->add_option("--format", cfg.format, "json or csv")->transform(CLI::CheckedTransformer(formats));
    app->add_option("--out", cfg.out, "write table and manifest.json into this directory");
    app->add_option("--fixtures", cfg.fixtures, "fixture directory (overrides MOMENT_LAB_FIXTURES)");
}

CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help, RunConfig& cfg,
               const std::string& group) {
    auto* app = parent->add_subcommand(name, help);
    add_flags(app, cfg);
    app->callback([&cfg, group, name, parent] {
        cfg.group = group;
        cfg.subcommand = parent->get_parent() ? name : "";
    });
    return app;
}

std::string utc_now() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::string slug(const std::string& command) {
    std::string s = command;
    for (char& c : s)
        if (c == ' ') c = '_';
    return s;
}

void write_file(const fs::path& file, const std::string& text) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"moment-lab: moments of level-1 L-functions in the weight aspect"};
    app.require_subcommand(1);

    auto* kernels = app.add_subcommand("kernels", "kernel functions")->require_subcommand(1);
    leaf(kernels, "eval", "phi_k, Phi_k, psi_k at the given points", cfg, "kernels");
    leaf(kernels, "ode-residual", "relative ODE residuals", cfg, "kernels");

    auto* lg = app.add_subcommand("lg", "Liouville-Green approximations")->require_subcommand(1);
    leaf(lg, "transform", "xi(x), alpha(x) and the potential", cfg, "lg");
    leaf(lg, "constants", "connection constants C_Y, C_J, C_K", cfg, "lg");
    leaf(lg, "compare", "approximation errors and fitted slope", cfg, "lg");

    auto* oracle = app.add_subcommand("oracle", "modular forms oracle")->require_subcommand(1);
    leaf(oracle, "forms", "Hecke eigenforms with weights and central values", cfg, "oracle");
    leaf(oracle, "weights", "harmonic weights from the Petersson solve", cfg, "oracle");
    leaf(oracle, "verify-petersson", "Petersson residuals against certified tails", cfg, "oracle");

    auto* moments = app.add_subcommand("moments", "moment formulas")->require_subcommand(1);
    leaf(moments, "exact", "exact second moment against the oracle", cfg, "moments");
    leaf(moments, "exact-uv", "shifted second moment identity", cfg, "moments");
    leaf(moments, "first", "exact first moment", cfg, "moments");
    leaf(moments, "averaged", "smoothly averaged moments", cfg, "moments");
    leaf(moments, "bounds", "error-term envelopes", cfg, "moments");

    leaf(&app, "mollify", "mollified first and second moments", cfg, "mollify");
    leaf(&app, "nonvanishing", "non-vanishing proportions and lower bounds", cfg, "nonvanishing");
    auto* acc = leaf(&app, "acceptance", "acceptance criteria", cfg, "acceptance");
    acc->add_flag("--all", cfg.all, "run every criterion");
    acc->add_option("--criterion", cfg.criterion, "run one criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    }

    try {
        validate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "moment-lab: " << e.what() << "\n";
        return config_error;
    }

    auto started = std::chrono::steady_clock::now();
    std::string started_at = utc_now();
    CommandResult result;
    int status = ok;
    std::string error;
    try {
        momentlab::ContextGuard guard(momentlab::PrecisionContext::with_bits(cfg.prec_bits));
        result = run_command(cfg);
        if (result.violation) status = acceptance_violation;
    } catch (const ConfigError& e) {
        std::cerr << "moment-lab: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        error = e.what();
        status = computation_error;
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();

    ordered_json manifest;
    manifest["command"] = cfg.command();
    manifest["flags"] = cfg.flags_json();
    manifest["prec_bits"] = cfg.prec_bits;
    manifest["started_at"] = started_at;
    manifest["duration_ms"] = static_cast<long long>(ms);
    manifest["git_describe"] = MOMENTLAB_GIT_DESCRIBE;
    manifest["versions"] = {{"mpfr", mpfr_get_version()}, {"gmp", gmp_version}};
    manifest["exit_status"] = status;
    if (!error.empty()) manifest["error"] = error;
    if (!result.message.empty()) manifest["message"] = result.message;

    std::string ext = cfg.format == Format::json ? "json" : "csv";
    std::string body = render(result.table, cfg.format);
    try {
        if (cfg.out.empty()) {
            if (status != computation_error) std::cout << body;
            std::cerr << manifest.dump() << "\n";
        } else {
            fs::path dir(cfg.out);
            fs::create_directories(dir);
            std::string name = slug(cfg.command()) + "." + ext;
            if (status != computation_error) {
                write_file(dir / name, body);
                manifest["outputs"] = {name};
            }
            write_file(dir / "manifest.json", manifest.dump(2) + "\n");
        }
    } catch (const std::exception& e) {
        std::cerr << "moment-lab: " << e.what() << "\n";
        return config_error;
    }

    if (!error.empty()) std::cerr << "moment-lab: " << error << "\n";
    if (!result.message.empty()) std::cerr << "moment-lab: " << result.message << "\n";
    return status;
}
