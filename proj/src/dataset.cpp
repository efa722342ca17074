#include "hhfs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "hhfs/rng.hpp"

namespace hhfs {

Dataset::Dataset(std::string name, std::size_t feature_count, std::vector<double> values,
                 std::vector<int> labels, std::vector<std::string> class_names)
    : name_(std::move(name)),
      feature_count_(feature_count),
      values_(std::move(values)),
      labels_(std::move(labels)),
      class_names_(std::move(class_names)) {
    if (feature_count_ == 0) throw DatasetError("dataset needs at least one feature");
    if (values_.size() != labels_.size() * feature_count_)
        throw DatasetError("value matrix does not match instance and feature counts");
    int max_label = -1;
    for (int y : labels_) {
        if (y < 0) throw DatasetError("labels must be dense non-negative integers");
        max_label = std::max(max_label, y);
    }
    class_count_ = static_cast<std::size_t>(max_label + 1);
    std::vector<std::size_t> sizes = class_sizes();
    if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 0; }))
        throw DatasetError("labels must be dense: some class id has no instance");
    if (class_count_ < 2) throw DatasetError("dataset needs at least two classes");
    if (class_names_.empty()) {
        for (std::size_t c = 0; c < class_count_; ++c) class_names_.push_back(std::to_string(c));
    }
}

std::vector<double> Dataset::column(std::size_t feature) const {
    std::vector<double> col(instance_count());
    for (std::size_t i = 0; i < col.size(); ++i) col[i] = value(i, feature);
    return col;
}

std::vector<std::size_t> Dataset::class_sizes() const {
    std::vector<std::size_t> sizes(class_count_, 0);
    for (int y : labels_) ++sizes[static_cast<std::size_t>(y)];
    return sizes;
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::optional<double> parse_real(const std::string& cell) {
    double v = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema, std::string name) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open " + path.string());
    if (name.empty()) name = path.stem().string();

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_row(line);
        if (schema.has_header && header.empty()) {
            header = std::move(cells);
            continue;
        }
        const std::size_t expected = header.empty() ? (rows.empty() ? cells.size() : rows[0].size())
                                                    : header.size();
        if (cells.size() != expected) {
            throw DatasetError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(expected) + " columns, found " +
                               std::to_string(cells.size()));
        }
        rows.push_back(std::move(cells));
    }
    if (rows.empty()) throw DatasetError(path.string() + ": no data rows");
    const std::size_t columns = rows[0].size();
    if (columns < 2) throw DatasetError(path.string() + ": need a label and at least one feature");

    std::size_t label_col = 0;
    if (const long* idx = std::get_if<long>(&schema.label_column)) {
        const long resolved = *idx < 0 ? static_cast<long>(columns) + *idx : *idx;
        if (resolved < 0 || resolved >= static_cast<long>(columns))
            throw DatasetError(path.string() + ": label column out of range");
        label_col = static_cast<std::size_t>(resolved);
    } else {
        const auto& wanted = std::get<std::string>(schema.label_column);
        auto it = std::find(header.begin(), header.end(), wanted);
        if (it == header.end()) throw DatasetError(path.string() + ": no column named " + wanted);
        label_col = static_cast<std::size_t>(it - header.begin());
    }

    const std::size_t n = rows.size();
    const std::size_t features = columns - 1;
    std::vector<double> values(n * features, 0.0);
    std::vector<char> missing(n * features, 0);
    std::vector<int> labels(n);
    std::vector<std::string> class_names;
    std::unordered_map<std::string, int> class_ids;

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t f = 0;
        for (std::size_t c = 0; c < columns; ++c) {
            const std::string& cell = rows[i][c];
            if (c == label_col) {
                auto [it, inserted] = class_ids.try_emplace(cell, static_cast<int>(class_names.size()));
                if (inserted) class_names.push_back(cell);
                labels[i] = it->second;
                continue;
            }
            if (cell == schema.missing_token) {
                missing[i * features + f] = 1;
            } else if (auto v = parse_real(cell)) {
                values[i * features + f] = *v;
            } else {
                throw DatasetError(path.string() + ": row " + std::to_string(i + 1) + ", column " +
                                   std::to_string(c) + ": non-numeric cell '" + cell + "'");
            }
            ++f;
        }
    }
    if (class_names.size() < 2) throw DatasetError(path.string() + ": fewer than two classes");

    for (std::size_t f = 0; f < features; ++f) {
        double sum = 0.0;
        std::size_t present = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!missing[i * features + f]) {
                sum += values[i * features + f];
                ++present;
            }
        }
        const double mean = present > 0 ? sum / static_cast<double>(present) : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (missing[i * features + f]) values[i * features + f] = mean;
        }
    }
    return Dataset(std::move(name), features, std::move(values), std::move(labels),
                   std::move(class_names));
}

Dataset min_max_normalize(const Dataset& d) {
    const std::size_t n = d.instance_count();
    const std::size_t features = d.feature_count();
    std::vector<double> values = d.values();
    for (std::size_t f = 0; f < features; ++f) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = 0; i < n; ++i) {
            lo = std::min(lo, d.value(i, f));
            hi = std::max(hi, d.value(i, f));
        }
        const double span = hi - lo;
        for (std::size_t i = 0; i < n; ++i) {
            double& v = values[i * features + f];
            v = span > 0.0 ? (v - lo) / span : 0.0;
        }
    }
    return Dataset(d.name(), features, std::move(values), d.labels(), d.class_names());
}

FoldAssignment stratified_folds(const Dataset& d, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("stratified_folds: need at least two folds");
    if (k > d.instance_count())
        throw std::invalid_argument("stratified_folds: more folds than instances");

    std::vector<std::vector<std::size_t>> members(d.class_count());
    for (std::size_t i = 0; i < d.instance_count(); ++i)
        members[static_cast<std::size_t>(d.labels()[i])].push_back(i);

    SeededRng rng(seed);
    FoldAssignment out{std::vector<std::size_t>(d.instance_count(), 0), k, seed};
    std::size_t next = 0;
    for (auto& cls : members) {
        const auto order = rng.permutation(cls.size());
        for (std::size_t pos : order) {
            out.fold_of[cls[pos]] = next;
            next = (next + 1) % k;
        }
    }
    return out;
}

}  // namespace hhfs
