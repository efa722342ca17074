#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hhfs {

class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Instances x features, row-major, plus dense class labels 0..class_count-1.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::string name, std::size_t feature_count, std::vector<double> values,
            std::vector<int> labels, std::vector<std::string> class_names = {});

    const std::string& name() const { return name_; }
    std::size_t instance_count() const { return labels_.size(); }
    std::size_t feature_count() const { return feature_count_; }
    std::size_t class_count() const { return class_count_; }

    double value(std::size_t row, std::size_t feature) const {
        return values_[row * feature_count_ + feature];
    }
    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * feature_count_, feature_count_};
    }
    std::vector<double> column(std::size_t feature) const;

    const std::vector<double>& values() const { return values_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<std::string>& class_names() const { return class_names_; }
    std::vector<std::size_t> class_sizes() const;

private:
    std::string name_;
    std::size_t feature_count_ = 0;
    std::size_t class_count_ = 0;
    std::vector<double> values_;
    std::vector<int> labels_;
    std::vector<std::string> class_names_;
};

struct CsvSchema {
    bool has_header = false;
    // Column index (negative counts from the end) or header name.
    std::variant<long, std::string> label_column = -1L;
    std::string missing_token = "?";
};

// Labels are densified in order of first appearance; missing cells get the
// column mean over the non-missing cells.
Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema,
                 std::string name = {});

// Global min-max rescale to [0,1]; constant columns become zeros.
Dataset min_max_normalize(const Dataset& d);

struct FoldAssignment {
    std::vector<std::size_t> fold_of;
    std::size_t k = 0;
    std::uint64_t seed = 0;
};

// Each class is shuffled with the seeded stream and dealt round-robin; the
// dealing position carries over between classes so fold sizes stay within
// one of each other.
FoldAssignment stratified_folds(const Dataset& d, std::size_t k, std::uint64_t seed);

}  // namespace hhfs
