#include "hhfs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hhfs/filter.hpp"

namespace hhfs {

void validate(const ExperimentSpec& spec) {
    if (spec.runs < 1) throw std::invalid_argument("experiment: runs must be >= 1");
    if (spec.reporting.empty()) throw std::invalid_argument("experiment: no reporting protocol");
    validate(spec.search);
    for (const auto& p : spec.reporting) validate(p);
    validate(spec.supervisor);
}

std::vector<AggregateRecord> aggregate_runs(std::span<const RunRecord> runs,
                                            std::span<const CvProtocol> reporting) {
    std::vector<AggregateRecord> out;
    if (runs.empty()) return out;
    double m_sum = 0.0;
    for (const auto& r : runs) m_sum += static_cast<double>(r.m());
    for (std::size_t p = 0; p < reporting.size(); ++p) {
        AggregateRecord a;
        a.protocol = reporting[p];
        double sum = 0.0;
        std::size_t best = 0;
        for (std::size_t i = 0; i < runs.size(); ++i) {
            sum += runs[i].accuracy.at(p);
            if (runs[i].accuracy[p] > runs[best].accuracy.at(p)) best = i;
        }
        a.best_accuracy = runs[best].accuracy[p];
        a.best_m = runs[best].m();
        a.best_run = runs[best].run;
        a.mean_accuracy = sum / static_cast<double>(runs.size());
        a.mean_m = m_sum / static_cast<double>(runs.size());
        out.push_back(a);
    }
    return out;
}

void check_consistency(const DatasetReport& report) {
    for (const auto& r : report.runs) {
        if (r.accuracy.size() != report.reporting.size())
            throw std::runtime_error("report: run accuracy count differs from protocols");
        if (r.mask.size() != report.features)
            throw std::runtime_error("report: mask length differs from feature count");
    }
    if (aggregate_runs(report.runs, report.reporting) != report.aggregate)
        throw std::runtime_error("report: aggregate does not match per-run values");
}

double full_feature_baseline(const Dataset& d, const CvProtocol& proto) {
    return cv_accuracy(d, FeatureMask(d.feature_count(), true), proto);
}

DatasetReport run_dataset(const ExperimentSpec& spec, const DatasetEntry& entry, RunTiming* timing,
                          std::ostream* log) {
    DatasetReport report;
    report.dataset = entry.name;
    report.supervisor = spec.supervisor;
    report.search = spec.search;
    report.reporting = spec.reporting;
    if (timing) timing->dataset = entry.name;

    Dataset data;
    try {
        data = min_max_normalize(load_csv(entry.path, entry.schema, entry.name));
    } catch (const std::exception& e) {
        report.complete = false;
        report.error = e.what();
        return report;
    }
    report.instances = data.instance_count();
    report.features = data.feature_count();
    report.classes = data.class_count();
    const CorrelationCache cache = build_cache(data);
    for (const auto& p : spec.reporting) report.baseline.push_back(full_feature_baseline(data, p));

    std::vector<RunRecord> runs(spec.runs);
    std::vector<double> seconds(spec.runs, 0.0);
    std::vector<std::string> errors(spec.runs);
    std::mutex log_mutex;

    const auto one_run = [&](std::size_t i) {
        const auto start = std::chrono::steady_clock::now();
        SupervisorConfig cfg = spec.supervisor;
        cfg.seed = spec.master_seed + i;
        try {
            const RunResult res = run_supervisor(data, cache, cfg, spec.search, spec.reporting);
            RunRecord& r = runs[i];
            r.run = i;
            r.seed = cfg.seed;
            r.mask = res.best;
            r.accuracy = res.reported;
            r.search_fitness = res.search_fitness;
            r.history = res.history;
            r.counters = res.counters;
            r.distinct_evaluations = res.distinct_evaluations;
            r.improved = res.search_fitness > res.initial_fitness;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
        seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (log) {
            std::lock_guard lock(log_mutex);
            *log << "  " << entry.name << " run " << i;
            if (errors[i].empty()) {
                *log << std::fixed << std::setprecision(4) << ": acc " << runs[i].accuracy.front()
                     << " m " << runs[i].m() << " (" << std::setprecision(1) << seconds[i]
                     << " s)\n";
            } else {
                *log << ": FAILED " << errors[i] << '\n';
            }
            log->flush();
        }
    };

    const std::size_t jobs = std::max<std::size_t>(1, std::min(spec.jobs, spec.runs));
    if (jobs == 1) {
        for (std::size_t i = 0; i < spec.runs; ++i) one_run(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < jobs; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < spec.runs; i = next++) one_run(i);
            });
        }
    }

    for (std::size_t i = 0; i < spec.runs; ++i) {
        if (errors[i].empty()) {
            report.runs.push_back(std::move(runs[i]));
        } else {
            report.complete = false;
            if (report.error.empty()) report.error = "run " + std::to_string(i) + ": " + errors[i];
        }
    }
    report.aggregate = aggregate_runs(report.runs, report.reporting);
    if (timing) timing->run_seconds = seconds;
    return report;
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec, bool write_outputs, std::ostream* log) {
    validate(spec);
    ExperimentOutcome outcome;
    for (const auto& entry : spec.datasets) {
        if (log) *log << "dataset " << entry.name << " (" << entry.path.string() << ")\n";
        RunTiming timing;
        outcome.reports.push_back(run_dataset(spec, entry, &timing, log));
        outcome.timings.push_back(std::move(timing));
    }
    if (!write_outputs) return outcome;

    std::filesystem::create_directories(spec.out_dir);
    for (std::size_t d = 0; d < outcome.reports.size(); ++d) {
        const auto& rep = outcome.reports[d];
        const auto dir = spec.out_dir / rep.dataset;
        std::filesystem::create_directories(dir);
        std::ofstream(dir / "report.json") << render_report_json(rep);
        write_history_csv(rep, dir / "history.csv");
        std::ofstream t(dir / "timing.csv");
        t << "run,seconds\n";
        const auto& secs = outcome.timings[d].run_seconds;
        for (std::size_t i = 0; i < secs.size(); ++i) t << i << ',' << secs[i] << '\n';
    }
    write_summary_csv(outcome.reports, spec.out_dir / "summary.csv");
    std::ofstream(spec.out_dir / "summary.txt") << render_summary_text(outcome.reports);
    return outcome;
}

}  // namespace hhfs
