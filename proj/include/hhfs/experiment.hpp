#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hhfs/dataset.hpp"
#include "hhfs/evaluator.hpp"
#include "hhfs/supervisor.hpp"

namespace hhfs {

struct DatasetEntry {
    std::string name;
    std::filesystem::path path;
    CsvSchema schema;
};

struct ExperimentSpec {
    std::vector<DatasetEntry> datasets;
    std::size_t runs = 10;
    std::uint64_t master_seed = 1;
    SupervisorConfig supervisor;
    CvProtocol search{10, 1, 0};
    // 10x10-fold first: the first protocol ranks runs for the aggregate.
    std::vector<CvProtocol> reporting{{10, 10, 1}, {10, 5, 1}};
    std::filesystem::path out_dir = "results";
    std::size_t jobs = 1;
};

void validate(const ExperimentSpec& spec);

struct RunRecord {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    FeatureMask mask;
    std::vector<double> accuracy;  // one per reporting protocol, fraction
    double search_fitness = 0.0;
    std::vector<GenerationRecord> history;
    LlhCounters counters;
    std::uint64_t distinct_evaluations = 0;
    bool improved = false;  // incumbent moved away from the initial mask

    std::size_t m() const { return mask.selected_count(); }
    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct AggregateRecord {
    CvProtocol protocol;
    double best_accuracy = 0.0;
    std::size_t best_m = 0;
    std::size_t best_run = 0;
    double mean_accuracy = 0.0;
    double mean_m = 0.0;

    friend bool operator==(const AggregateRecord&, const AggregateRecord&) = default;
};

// Everything known about one dataset's experiment. Wall-clock timings are
// kept out of it so that reruns compare bitwise.
struct DatasetReport {
    std::string dataset;
    std::size_t instances = 0;
    std::size_t features = 0;
    std::size_t classes = 0;
    SupervisorConfig supervisor;
    CvProtocol search;
    std::vector<CvProtocol> reporting;
    std::vector<double> baseline;  // full-feature accuracy per reporting protocol
    std::vector<RunRecord> runs;
    std::vector<AggregateRecord> aggregate;
    bool complete = true;
    std::string error;

    friend bool operator==(const DatasetReport&, const DatasetReport&) = default;
};

// Best (first protocol order, ties to the earliest run) and means.
std::vector<AggregateRecord> aggregate_runs(std::span<const RunRecord> runs,
                                            std::span<const CvProtocol> reporting);

// Throws if the stored aggregate cannot be recomputed from the runs.
void check_consistency(const DatasetReport& report);

// 1NN accuracy with every feature selected.
double full_feature_baseline(const Dataset& d, const CvProtocol& proto);

struct RunTiming {
    std::string dataset;
    std::vector<double> run_seconds;
};

struct ExperimentOutcome {
    std::vector<DatasetReport> reports;
    std::vector<RunTiming> timings;
};

// Load, normalize, cache correlations, run `runs` seeded searches and
// aggregate, per dataset. A dataset that fails to load is reported with
// complete = false and does not stop the others. Writes files when
// `write_outputs` is set.
ExperimentOutcome run_experiment(const ExperimentSpec& spec, bool write_outputs = true,
                                 std::ostream* log = nullptr);

DatasetReport run_dataset(const ExperimentSpec& spec, const DatasetEntry& entry,
                          RunTiming* timing = nullptr, std::ostream* log = nullptr);

// JSON (nlohmann) encoding of a report.
std::string render_report_json(const DatasetReport& report);
DatasetReport parse_report_json(const std::string& text);
DatasetReport load_report(const std::filesystem::path& path);

void write_history_csv(const DatasetReport& report, const std::filesystem::path& path);
void write_summary_csv(std::span<const DatasetReport> reports, const std::filesystem::path& path);
std::string render_summary_text(std::span<const DatasetReport> reports);

// Published accuracies of other methods, stored as data.
struct ReferenceResult {
    std::string dataset;
    std::string method;
    std::size_t repeats = 10;  // repeats of 10-fold cross-validation
    double percent = 0.0;
    std::string source;
};

std::vector<ReferenceResult> load_references(const std::filesystem::path& path);

struct ComparisonEntry {
    std::string method;
    double percent = 0.0;
    bool row_max = false;
};

struct ComparisonRow {
    std::string dataset;
    std::string protocol;
    std::vector<ComparisonEntry> entries;  // engine first
};

inline double to_percent(double fraction) { return fraction * 100.0; }

// Marks every entry equal to the row maximum.
ComparisonRow make_comparison_row(std::string dataset, std::string protocol,
                                  std::vector<ComparisonEntry> entries);

// One row per (dataset, reporting protocol) that has references, comparing
// the best-of-runs accuracy in percent against them.
std::vector<ComparisonRow> render_comparison(const DatasetReport& report,
                                             std::span<const ReferenceResult> references);
std::string format_comparison(std::span<const ComparisonRow> rows);

// Key-value experiment file with [experiment], [supervisor], [cv] and
// [datasets.<name>] sections. Relative dataset paths resolve against the
// file's directory.
ExperimentSpec load_experiment_config(const std::filesystem::path& path);

}  // namespace hhfs
