// kpalg <command> --config <file> [--json] [--no-header] [--budget N]
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 parse error,
// 3 semantic error, 4 resource limit, 5 I/O error, 64 usage error.

#include <chrono>
#include <ctime>
#include <iostream>

#include "CLI11.hpp"
#include "kpalg/error.hpp"
#include "kpalg/pipeline.hpp"

namespace {

int exit_code(kpalg::ErrorKind kind) {
    switch (kind) {
        case kpalg::ErrorKind::verification: return 1;
        case kpalg::ErrorKind::parse: return 2;
        case kpalg::ErrorKind::semantic: return 3;
        case kpalg::ErrorKind::resource: return 4;
        case kpalg::ErrorKind::io: return 5;
    }
    return 3;
}

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Kahler-Poisson algebra engine"};
    std::string command, config, expr;
    bool json = false, no_header = false;
    std::size_t budget = kpalg::RunOptions{}.pair_budget;

    app.add_option("command", command, "One of: jacobi, kp-check, blockdiag, construct, christoffel, curvature, "
                                       "ricci, scalar, laplacian, verify-all")
        ->required()
        ->check(CLI::IsMember(kpalg::command_names()));
    app.add_option("expr", expr, "Element for `laplacian`");
    app.add_option("--config", config, "Algebra description (text or JSON)")->required();
    app.add_flag("--json", json, "Emit JSON instead of text");
    app.add_flag("--no-header", no_header, "Omit the timestamp header");
    app.add_option("--budget", budget, "Groebner basis pair budget")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }
    if (command == "laplacian" && expr.empty()) {
        std::cerr << "kpalg: error: laplacian needs an expression, e.g. kpalg laplacian 'z' --config FILE\n";
        return 64;
    }
    if (command != "laplacian" && !expr.empty()) {
        std::cerr << "kpalg: error: unexpected argument '" << expr << "'\n";
        return 64;
    }

    try {
        kpalg::RunOptions opts;
        opts.pair_budget = budget;
        if (!expr.empty()) opts.expr = expr;
        auto cfg = kpalg::load_config(config);
        auto report = kpalg::run_command(command, cfg, opts);
        if (json) {
            auto j = report.json();
            if (!no_header) j["generated"] = utc_now();
            std::cout << j.dump(2) << '\n';
        } else {
            if (!no_header) std::cout << "# kpalg " << command << " --config " << config << "  " << utc_now() << '\n';
            std::cout << report.text();
        }
        return report.ok() ? 0 : 1;
    } catch (const kpalg::Error& e) {
        std::cerr << "kpalg: error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::bad_alloc&) {
        std::cerr << "kpalg: error: out of memory\n";
        return 4;
    }
}
