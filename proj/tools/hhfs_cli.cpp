// Command-line front end: run experiments, full-feature baselines, heuristic
// catalog and comparisons against published results.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "hhfs/experiment.hpp"
#include "hhfs/filter.hpp"
#include "hhfs/kernels.hpp"
#include "hhfs/llh.hpp"

#ifndef HHFS_DEFAULT_DATA_DIR
#define HHFS_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace hhfs;

namespace {

std::vector<DatasetEntry> select_datasets(const ExperimentSpec& spec,
                                          const std::vector<std::string>& names) {
    if (names.empty()) return spec.datasets;
    std::vector<DatasetEntry> out;
    for (const auto& n : names) {
        auto it = std::find_if(spec.datasets.begin(), spec.datasets.end(),
                               [&](const DatasetEntry& e) { return e.name == n; });
        if (it == spec.datasets.end()) throw std::runtime_error("no dataset named " + n + " in config");
        out.push_back(*it);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyper-heuristic feature selection (GA over low-level heuristics, 1NN wrapper)"};
    app.require_subcommand(1);

    const std::string default_config = std::string(HHFS_DEFAULT_DATA_DIR) + "/experiment.ini";
    const std::string default_refs = std::string(HHFS_DEFAULT_DATA_DIR) + "/reference_results.json";

    // run
    auto* run = app.add_subcommand("run", "run the seeded multi-run experiment");
    std::string config = default_config;
    std::vector<std::string> datasets;
    std::optional<std::size_t> runs, jobs, generations, population, elitism, threads, folds,
        search_repeats;
    std::optional<std::uint64_t> seed;
    std::optional<double> p_crossover, p_mutation, mutn_rate;
    std::optional<std::string> out_dir;
    std::vector<std::size_t> report_repeats;
    bool dump_cache = false;
    run->add_option("--config", config, "experiment file")->capture_default_str();
    run->add_option("--dataset", datasets, "restrict to these dataset names");
    run->add_option("--runs", runs, "independent runs per dataset");
    run->add_option("--seed", seed, "master seed; run i uses seed + i");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--jobs", jobs, "runs executed concurrently");
    run->add_option("--generations", generations);
    run->add_option("--population", population);
    run->add_option("--p-crossover", p_crossover);
    run->add_option("--p-mutation", p_mutation);
    run->add_option("--elitism", elitism);
    run->add_option("--mutn-rate", mutn_rate, "per-bit rate of the MUTN heuristic");
    run->add_option("--threads", threads, "chromosome evaluations in parallel per generation");
    run->add_option("--folds", folds, "k of k-fold cross-validation (search and reporting)");
    run->add_option("--search-repeats", search_repeats, "CV repeats of the fitness used during search");
    run->add_option("--report-repeats", report_repeats, "CV repeats of each reporting protocol");
    run->add_flag("--dump-cache", dump_cache, "write each dataset's correlation cache as CSV");

    // baseline
    auto* baseline = app.add_subcommand("baseline", "1NN accuracy with all features");
    std::string baseline_dataset;
    std::string baseline_config = default_config;
    std::size_t baseline_folds = 10;
    std::vector<std::size_t> baseline_repeats{10, 5};
    std::uint64_t baseline_seed = 1;
    baseline->add_option("--dataset", baseline_dataset)->required();
    baseline->add_option("--config", baseline_config)->capture_default_str();
    baseline->add_option("--folds", baseline_folds)->capture_default_str();
    baseline->add_option("--repeats", baseline_repeats)->capture_default_str();
    baseline->add_option("--seed", baseline_seed)->capture_default_str();

    // explain-llh
    auto* explain = app.add_subcommand("explain-llh", "list the low-level heuristics");

    // compare
    auto* compare = app.add_subcommand("compare", "compare a report with published results");
    std::string report_path;
    std::string refs_path = default_refs;
    compare->add_option("--report", report_path)->required();
    compare->add_option("--references", refs_path)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            ExperimentSpec spec = load_experiment_config(config);
            spec.datasets = select_datasets(spec, datasets);
            if (runs) spec.runs = *runs;
            if (seed) spec.master_seed = *seed;
            if (out_dir) spec.out_dir = *out_dir;
            if (jobs) spec.jobs = *jobs;
            auto& s = spec.supervisor;
            if (generations) s.generations = *generations;
            if (population) s.population = *population;
            if (p_crossover) s.p_crossover = *p_crossover;
            if (p_mutation) s.p_mutation = *p_mutation;
            if (elitism) s.elitism = *elitism;
            if (mutn_rate) s.mutn_rate = *mutn_rate;
            if (threads) s.threads = *threads;
            if (search_repeats) spec.search.repeats = *search_repeats;
            if (folds) {
                spec.search.folds = *folds;
                for (auto& p : spec.reporting) p.folds = *folds;
            }
            if (!report_repeats.empty()) {
                const CvProtocol first = spec.reporting.front();
                spec.reporting.clear();
                for (std::size_t r : report_repeats)
                    spec.reporting.push_back({first.folds, r, first.base_seed});
            }
            validate(spec);
            std::cerr << "kernels: " << kernels::active().isa << '\n';
            const auto outcome = run_experiment(spec, true, &std::cerr);
            if (dump_cache) {
                for (const auto& e : spec.datasets) {
                    const Dataset d = min_max_normalize(load_csv(e.path, e.schema, e.name));
                    write_cache_csv(build_cache(d), spec.out_dir / e.name / "correlations.csv");
                }
            }
            std::cout << render_summary_text(outcome.reports);
            std::cout << "reports written to " << spec.out_dir.string() << '\n';
            const bool all_complete = std::all_of(outcome.reports.begin(), outcome.reports.end(),
                                                  [](const DatasetReport& r) { return r.complete; });
            return all_complete ? 0 : 2;
        }
        if (*baseline) {
            const ExperimentSpec spec = load_experiment_config(baseline_config);
            const auto entry = select_datasets(spec, {baseline_dataset}).front();
            const Dataset d = min_max_normalize(load_csv(entry.path, entry.schema, entry.name));
            std::cout << d.name() << ": " << d.instance_count() << " instances, "
                      << d.feature_count() << " features, " << d.class_count() << " classes\n";
            for (std::size_t r : baseline_repeats) {
                const CvProtocol proto{baseline_folds, r, baseline_seed};
                std::cout << std::fixed << std::setprecision(4) << "  " << r << "x" << baseline_folds
                          << "-fold 1NN, all features: " << full_feature_baseline(d, proto) << '\n';
            }
            return 0;
        }
        if (*explain) {
            for (const auto& info : llh_catalog()) {
                std::cout << std::setw(3) << to_int(info.id) << "  " << std::left << std::setw(12)
                          << info.name << std::right
                          << (is_hill_climber(info.id) ? "  hill-climb  " : "  mutational  ")
                          << info.summary << '\n';
            }
            return 0;
        }
        if (*compare) {
            const DatasetReport report = load_report(report_path);
            const auto refs = load_references(refs_path);
            const auto rows = render_comparison(report, refs);
            if (rows.empty()) {
                std::cout << "no published results for " << report.dataset << '\n';
                return 0;
            }
            std::cout << format_comparison(rows);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
