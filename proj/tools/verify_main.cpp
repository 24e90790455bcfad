#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "ices/report.hpp"

using namespace ices;

int main(int argc, char** argv) {
    CLI::App app{"Runs verification suites and writes a residual report."};
    std::string config_path;
    std::vector<std::string> suites;
    int cutoff = -1;
    long long seed = -1;
    std::string format;
    std::string out;
    bool strict = false;
    int workers = -1;
    int k = -1;
    bool list = false;
    app.add_option("--config", config_path, "key = value config file");
    app.add_option("--suite", suites, "suite id (repeatable); default runs every suite");
    app.add_option("--cutoff", cutoff, "per-mode cutoff for two-mode suites (single-mode suites use twice this)");
    app.add_option("--seed", seed, "seed for random ray matrices and samples");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out, "report path; stdout when omitted");
    app.add_option("--workers", workers, "suites run concurrently");
    app.add_option("--k", k, "inner block size (default cutoff/2)");
    app.add_flag("--strict", strict, "informational records also decide the verdict");
    app.add_flag("--list", list, "print the suite ids and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (list) {
        for (const auto& id : report::known_suites()) std::cout << id << "\n";
        return 0;
    }

    try {
        report::RunConfig cfg;
        if (!config_path.empty()) {
            cfg = report::load_config(config_path);
        } else {
            cfg.suites = report::known_suites();
        }
        if (!suites.empty()) cfg.suites = suites;
        if (cutoff > 0) {
            cfg.cutoff = cutoff;
            cfg.single_cutoff = 2 * cutoff;
        } else if (cutoff == 0 || cutoff < -1) {
            throw report::UsageError("--cutoff must be positive");
        }
        if (seed >= 0) cfg.seed = static_cast<unsigned long long>(seed);
        if (!format.empty()) cfg.format = format == "csv" ? report::Format::csv : report::Format::json;
        if (!out.empty()) cfg.out_path = out;
        if (strict) cfg.strict = true;
        if (workers > 0) cfg.workers = workers;
        if (k >= 0) cfg.k = k;

        const report::VerificationReport rep = report::run_suite(cfg);
        report::emit_report(rep, cfg.format, cfg.out_path);
        size_t total = 0, failed = 0;
        for (const auto& s : rep.suites)
            for (const auto& r : s.records) {
                ++total;
                if (!r.pass && report::record_counts(r, cfg.strict)) ++failed;
            }
        std::fprintf(stderr, "%zu records, %zu failing, verdict %s\n", total, failed, rep.pass ? "pass" : "fail");
        return rep.pass ? 0 : 1;
    } catch (const report::UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const report::ResourceError& e) {
        std::fprintf(stderr, "resource guard: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
