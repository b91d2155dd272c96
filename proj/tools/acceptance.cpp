// one pass/fail line per acceptance criterion; --json DIR also writes the full reports

#include "gcn/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace gcn;

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria 1..12"};
    RunConfig cfg;
    std::string out;
    std::vector<int> only;
    app.add_option("--seed", cfg.seed)->capture_default_str();
    app.add_option("--trials", cfg.trials)->capture_default_str();
    app.add_option("--out", out, "directory for per-criterion JSON reports");
    app.add_option("--only", only, "run just these criteria");
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    for (int id = 1; id <= 12; ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        auto t0 = std::chrono::steady_clock::now();
        Criterion c = run_criterion(id, cfg);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        int bad = 0;
        std::string first;
        for (auto& r : c.reports)
            if (r.status != Status::Pass) {
                if (!bad) first = r.name + " (n=" + std::to_string(r.n) + ", " + to_string(r.status) + ")";
                ++bad;
            }
        std::printf("%-4s %2d  %-40s %4zu checks  %6.2fs", c.pass() ? "PASS" : "FAIL", id, c.title.c_str(),
                    c.reports.size(), secs);
        if (bad) std::printf("  %d failing, first: %s", bad, first.c_str());
        std::printf("\n");
        std::fflush(stdout);
        failed += !c.pass();
        if (!out.empty()) {
            std::filesystem::create_directories(out);
            std::ofstream(std::filesystem::path(out) / ("criterion_" + std::to_string(id) + ".json"))
                << to_json(c).dump(2) << '\n';
        }
    }
    std::printf("%d of %d criteria failed\n", failed, only.empty() ? 12 : int(only.size()));
    return failed ? 1 : 0;
}
