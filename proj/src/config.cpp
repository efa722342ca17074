#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hhfs/experiment.hpp"

namespace hhfs {

namespace pt = boost::property_tree;

namespace {

std::vector<std::size_t> parse_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        out.push_back(static_cast<std::size_t>(std::stoul(item.substr(first))));
    }
    return out;
}

std::variant<long, std::string> parse_label_column(const std::string& text) {
    if (text == "last") return -1L;
    try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    return text;
}

bool parse_bool(const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw std::invalid_argument("not a boolean: " + text);
}

}  // namespace

ExperimentSpec load_experiment_config(const std::filesystem::path& path) {
    pt::ptree tree;
    try {
        pt::read_ini(path.string(), tree);
    } catch (const pt::ini_parser_error& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    }
    const auto base = path.parent_path();
    ExperimentSpec spec;

    // Section names contain dots, so walk children instead of using paths.
    for (const auto& [section, body] : tree) {
        if (section == "experiment") {
            spec.runs = body.get("runs", spec.runs);
            spec.master_seed = body.get("seed", spec.master_seed);
            spec.jobs = body.get("jobs", spec.jobs);
            if (auto out = body.get_optional<std::string>("out")) spec.out_dir = base / *out;
        } else if (section == "supervisor") {
            auto& s = spec.supervisor;
            s.population = body.get("population", s.population);
            s.generations = body.get("generations", s.generations);
            s.p_crossover = body.get("p_crossover", s.p_crossover);
            s.p_mutation = body.get("p_mutation", s.p_mutation);
            s.nllh = body.get("nllh", s.nllh);
            s.elitism = body.get("elitism", s.elitism);
            s.mutn_rate = body.get("mutn_rate", s.mutn_rate);
            s.threads = body.get("threads", s.threads);
        } else if (section == "cv") {
            const std::size_t folds = body.get("folds", spec.search.folds);
            spec.search.folds = folds;
            spec.search.repeats = body.get("search_repeats", spec.search.repeats);
            spec.search.base_seed = body.get("search_seed", spec.search.base_seed);
            const std::uint64_t report_seed = body.get("report_seed", std::uint64_t{1});
            const auto repeats = parse_list(body.get("report_repeats", std::string("10,5")));
            if (repeats.empty()) throw std::runtime_error("config: report_repeats is empty");
            spec.reporting.clear();
            for (std::size_t r : repeats) spec.reporting.push_back({folds, r, report_seed});
        } else if (section.rfind("datasets.", 0) == 0) {
            DatasetEntry e;
            e.name = section.substr(9);
            const auto p = body.get_optional<std::string>("path");
            if (!p) throw std::runtime_error("config: [" + section + "] has no path");
            e.path = std::filesystem::path(*p).is_absolute() ? std::filesystem::path(*p) : base / *p;
            e.schema.has_header = parse_bool(body.get("has_header", std::string("false")));
            e.schema.label_column = parse_label_column(body.get("label_column", std::string("last")));
            e.schema.missing_token = body.get("missing_token", std::string("?"));
            spec.datasets.push_back(std::move(e));
        } else {
            throw std::runtime_error("config: unknown section [" + section + "]");
        }
    }
    validate(spec);
    return spec;
}

}  // namespace hhfs
