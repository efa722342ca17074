#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hhfs/experiment.hpp"

namespace hhfs {

using nlohmann::json;

namespace {

std::string protocol_label(const CvProtocol& p) {
    return std::to_string(p.repeats) + "x" + std::to_string(p.folds) + "-fold";
}

json protocol_json(const CvProtocol& p) {
    return {{"folds", p.folds}, {"repeats", p.repeats}, {"base_seed", p.base_seed},
            {"label", protocol_label(p)}};
}

CvProtocol protocol_from(const json& j) {
    return {j.at("folds").get<std::size_t>(), j.at("repeats").get<std::size_t>(),
            j.at("base_seed").get<std::uint64_t>()};
}

json supervisor_json(const SupervisorConfig& c) {
    json initial = json::array();
    for (const auto& ch : c.initial_population) {
        json genes = json::array();
        for (LlhId g : ch.genes) genes.push_back(to_int(g));
        initial.push_back(genes);
    }
    return {{"population", c.population}, {"generations", c.generations},
            {"p_crossover", c.p_crossover}, {"p_mutation", c.p_mutation},
            {"nllh", c.nllh},           {"elitism", c.elitism},
            {"mutn_rate", c.mutn_rate},  {"seed", c.seed},
            {"threads", c.threads},      {"initial_population", initial}};
}

SupervisorConfig supervisor_from(const json& j) {
    SupervisorConfig c;
    c.population = j.at("population").get<std::size_t>();
    c.generations = j.at("generations").get<std::size_t>();
    c.p_crossover = j.at("p_crossover").get<double>();
    c.p_mutation = j.at("p_mutation").get<double>();
    c.nllh = j.at("nllh").get<std::size_t>();
    c.elitism = j.at("elitism").get<std::size_t>();
    c.mutn_rate = j.at("mutn_rate").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.threads = j.at("threads").get<std::size_t>();
    for (const auto& genes : j.at("initial_population")) {
        Chromosome ch;
        for (const auto& g : genes) {
            auto id = llh_from_int(g.get<int>());
            if (!id) throw std::runtime_error("report: invalid heuristic id");
            ch.genes.push_back(*id);
        }
        c.initial_population.push_back(std::move(ch));
    }
    return c;
}

json run_json(const RunRecord& r, std::span<const CvProtocol> reporting) {
    json accuracy = json::array();
    for (std::size_t p = 0; p < r.accuracy.size(); ++p) {
        accuracy.push_back({{"protocol", p < reporting.size() ? protocol_label(reporting[p]) : ""},
                            {"fraction", r.accuracy[p]},
                            {"percent", to_percent(r.accuracy[p])}});
    }
    json history = json::array();
    for (const auto& h : r.history) {
        history.push_back({{"generation", h.generation},
                           {"incumbent_fitness", h.incumbent_fitness},
                           {"incumbent_m", h.incumbent_m},
                           {"best_chromosome_fitness", h.best_chromosome_fitness}});
    }
    json counters = json::array();
    for (std::size_t i = 0; i < kLlhCount; ++i) {
        const auto id = static_cast<LlhId>(i + 1);
        counters.push_back({{"id", to_int(id)},
                            {"name", llh_name(id)},
                            {"invocations", r.counters.invocations[i]},
                            {"improvements", r.counters.improvements[i]}});
    }
    return {{"run", r.run},
            {"seed", r.seed},
            {"mask", r.mask.to_string()},
            {"selected", r.mask.selected_indices()},
            {"m", r.m()},
            {"search_fitness", r.search_fitness},
            {"improved", r.improved},
            {"distinct_evaluations", r.distinct_evaluations},
            {"accuracy", accuracy},
            {"history", history},
            {"llh_counters", counters}};
}

RunRecord run_from(const json& j) {
    RunRecord r;
    r.run = j.at("run").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.mask = FeatureMask::from_string(j.at("mask").get<std::string>());
    r.search_fitness = j.at("search_fitness").get<double>();
    r.improved = j.at("improved").get<bool>();
    r.distinct_evaluations = j.at("distinct_evaluations").get<std::uint64_t>();
    for (const auto& a : j.at("accuracy")) r.accuracy.push_back(a.at("fraction").get<double>());
    for (const auto& h : j.at("history")) {
        r.history.push_back({h.at("generation").get<std::size_t>(),
                             h.at("best_chromosome_fitness").get<double>(),
                             h.at("incumbent_fitness").get<double>(),
                             h.at("incumbent_m").get<std::size_t>()});
    }
    for (const auto& c : j.at("llh_counters")) {
        const int id = c.at("id").get<int>();
        if (!llh_from_int(id)) throw std::runtime_error("report: invalid heuristic id");
        const auto slot = static_cast<std::size_t>(id - 1);
        r.counters.invocations[slot] = c.at("invocations").get<std::uint64_t>();
        r.counters.improvements[slot] = c.at("improvements").get<std::uint64_t>();
    }
    return r;
}

}  // namespace

std::string render_report_json(const DatasetReport& report) {
    json baseline = json::array();
    for (std::size_t p = 0; p < report.baseline.size(); ++p) {
        baseline.push_back({{"protocol", protocol_label(report.reporting.at(p))},
                            {"fraction", report.baseline[p]},
                            {"percent", to_percent(report.baseline[p])}});
    }
    json reporting = json::array();
    for (const auto& p : report.reporting) reporting.push_back(protocol_json(p));
    json runs = json::array();
    for (const auto& r : report.runs) runs.push_back(run_json(r, report.reporting));
    json aggregate = json::array();
    for (const auto& a : report.aggregate) {
        aggregate.push_back({{"protocol", protocol_json(a.protocol)},
                             {"best_accuracy", a.best_accuracy},
                             {"best_percent", to_percent(a.best_accuracy)},
                             {"best_m", a.best_m},
                             {"best_run", a.best_run},
                             {"mean_accuracy", a.mean_accuracy},
                             {"mean_percent", to_percent(a.mean_accuracy)},
                             {"mean_m", a.mean_m}});
    }
    json j = {{"dataset", report.dataset},
              {"instances", report.instances},
              {"features", report.features},
              {"classes", report.classes},
              {"complete", report.complete},
              {"error", report.error},
              {"supervisor", supervisor_json(report.supervisor)},
              {"search_protocol", protocol_json(report.search)},
              {"reporting_protocols", reporting},
              {"baseline", baseline},
              {"runs", runs},
              {"aggregate", aggregate}};
    return j.dump(2) + "\n";
}

DatasetReport parse_report_json(const std::string& text) {
    const json j = json::parse(text);
    DatasetReport r;
    r.dataset = j.at("dataset").get<std::string>();
    r.instances = j.at("instances").get<std::size_t>();
    r.features = j.at("features").get<std::size_t>();
    r.classes = j.at("classes").get<std::size_t>();
    r.complete = j.at("complete").get<bool>();
    r.error = j.at("error").get<std::string>();
    r.supervisor = supervisor_from(j.at("supervisor"));
    r.search = protocol_from(j.at("search_protocol"));
    for (const auto& p : j.at("reporting_protocols")) r.reporting.push_back(protocol_from(p));
    for (const auto& b : j.at("baseline")) r.baseline.push_back(b.at("fraction").get<double>());
    for (const auto& run : j.at("runs")) r.runs.push_back(run_from(run));
    for (const auto& a : j.at("aggregate")) {
        r.aggregate.push_back({protocol_from(a.at("protocol")), a.at("best_accuracy").get<double>(),
                               a.at("best_m").get<std::size_t>(), a.at("best_run").get<std::size_t>(),
                               a.at("mean_accuracy").get<double>(), a.at("mean_m").get<double>()});
    }
    return r;
}

DatasetReport load_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    DatasetReport r = parse_report_json(ss.str());
    check_consistency(r);
    return r;
}

void write_history_csv(const DatasetReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(17);
    out << "run,generation,incumbent_fitness,incumbent_m,best_chromosome_fitness\n";
    for (const auto& r : report.runs) {
        for (const auto& h : r.history) {
            out << r.run << ',' << h.generation << ',' << h.incumbent_fitness << ','
                << h.incumbent_m << ',' << h.best_chromosome_fitness << '\n';
        }
    }
}

void write_summary_csv(std::span<const DatasetReport> reports, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(17);
    out << "dataset,instances,features,protocol,baseline_accuracy,best_accuracy,best_m,"
           "mean_accuracy,mean_m,runs,complete\n";
    for (const auto& rep : reports) {
        if (rep.aggregate.empty()) {
            out << rep.dataset << ',' << rep.instances << ',' << rep.features << ",,,,,,,"
                << rep.runs.size() << ',' << (rep.complete ? "true" : "false") << '\n';
            continue;
        }
        for (std::size_t p = 0; p < rep.aggregate.size(); ++p) {
            const auto& a = rep.aggregate[p];
            out << rep.dataset << ',' << rep.instances << ',' << rep.features << ','
                << protocol_label(a.protocol) << ','
                << (p < rep.baseline.size() ? rep.baseline[p] : 0.0) << ',' << a.best_accuracy
                << ',' << a.best_m << ',' << a.mean_accuracy << ',' << a.mean_m << ','
                << rep.runs.size() << ',' << (rep.complete ? "true" : "false") << '\n';
        }
    }
}

std::string render_summary_text(std::span<const DatasetReport> reports) {
    std::ostringstream os;
    os << std::left << std::setw(14) << "dataset" << std::right << std::setw(6) << "N"
       << std::setw(12) << "protocol" << std::setw(10) << "all-feat" << std::setw(16)
       << "best (m)" << std::setw(18) << "mean (mean m)" << '\n';
    os << std::fixed;
    for (const auto& rep : reports) {
        if (!rep.complete && rep.aggregate.empty()) {
            os << std::left << std::setw(14) << rep.dataset << "  FAILED: " << rep.error << '\n';
            continue;
        }
        for (std::size_t p = 0; p < rep.aggregate.size(); ++p) {
            const auto& a = rep.aggregate[p];
            std::ostringstream best, mean;
            best << std::fixed << std::setprecision(4) << a.best_accuracy << " (" << a.best_m << ")";
            mean << std::fixed << std::setprecision(4) << a.mean_accuracy << " ("
                 << std::setprecision(1) << a.mean_m << ")";
            os << std::left << std::setw(14) << (p == 0 ? rep.dataset : "") << std::right
               << std::setw(6) << (p == 0 ? std::to_string(rep.features) : "") << std::setw(12)
               << protocol_label(a.protocol) << std::setw(10) << std::setprecision(4)
               << (p < rep.baseline.size() ? rep.baseline[p] : 0.0) << std::setw(16) << best.str()
               << std::setw(18) << mean.str() << '\n';
        }
        if (!rep.complete) os << "  (partial: " << rep.error << ")\n";
    }
    return os.str();
}

std::vector<ReferenceResult> load_references(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    const json j = json::parse(in);
    std::vector<ReferenceResult> out;
    for (const auto& e : j.at("references")) {
        out.push_back({e.at("dataset").get<std::string>(), e.at("method").get<std::string>(),
                       e.at("repeats").get<std::size_t>(), e.at("percent").get<double>(),
                       e.value("source", std::string{})});
    }
    return out;
}

ComparisonRow make_comparison_row(std::string dataset, std::string protocol,
                                  std::vector<ComparisonEntry> entries) {
    double best = -1.0;
    for (const auto& e : entries) best = std::max(best, e.percent);
    for (auto& e : entries) e.row_max = e.percent == best;
    return {std::move(dataset), std::move(protocol), std::move(entries)};
}

std::vector<ComparisonRow> render_comparison(const DatasetReport& report,
                                             std::span<const ReferenceResult> references) {
    std::vector<ComparisonRow> rows;
    for (const auto& a : report.aggregate) {
        std::vector<ComparisonEntry> entries{
            {"hyper-heuristic+1NN", to_percent(a.best_accuracy), false}};
        for (const auto& ref : references) {
            if (ref.dataset == report.dataset && ref.repeats == a.protocol.repeats)
                entries.push_back({ref.method, ref.percent, false});
        }
        if (entries.size() > 1)
            rows.push_back(make_comparison_row(report.dataset, protocol_label(a.protocol),
                                               std::move(entries)));
    }
    return rows;
}

std::string format_comparison(std::span<const ComparisonRow> rows) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    for (const auto& row : rows) {
        os << std::left << std::setw(14) << row.dataset << std::setw(14) << row.protocol;
        for (const auto& e : row.entries) {
            os << "  " << e.method << ' ' << e.percent << (e.row_max ? "*" : "");
        }
        os << '\n';
    }
    os << "(* = row maximum)\n";
    return os.str();
}

}  // namespace hhfs
