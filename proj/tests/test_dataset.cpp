#include <doctest.h>

#include <algorithm>
#include <map>

#include "hhfs/dataset.hpp"
#include "hhfs/rng.hpp"
#include "test_support.hpp"

using namespace hhfs;
using hhfs::testing::write_temp;

TEST_CASE("load_csv reads features and densifies labels in order of appearance") {
    const auto path = write_temp("three.csv", "1,2,A\n3,4,A\n5,6,B\n");
    const Dataset d = load_csv(path, {.has_header = false, .label_column = 2L});
    CHECK(d.feature_count() == 2);
    CHECK(d.instance_count() == 3);
    CHECK(d.class_count() == 2);
    CHECK(d.labels() == std::vector<int>{0, 0, 1});
    CHECK(d.value(2, 1) == 6.0);
    CHECK(d.class_names() == std::vector<std::string>{"A", "B"});
}

TEST_CASE("load_csv imputes missing cells with the column mean") {
    const auto path = write_temp("missing.csv", "2.0,x\n?,y\n4.0,x\n");
    const Dataset d = load_csv(path, {});
    CHECK(d.value(1, 0) == 3.0);
}

TEST_CASE("load_csv: header, named label column, custom missing token") {
    const auto path = write_temp("header.csv", "class,a,b\nno,1,NA\nyes,2,5\nno,3,7\n");
    CsvSchema schema{.has_header = true, .label_column = std::string("class"), .missing_token = "NA"};
    const Dataset d = load_csv(path, schema);
    CHECK(d.feature_count() == 2);
    CHECK(d.value(0, 1) == 6.0);
    CHECK(d.labels() == std::vector<int>{0, 1, 0});
}

TEST_CASE("load_csv error paths") {
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", {}), DatasetError);
    CHECK_THROWS_AS(load_csv(write_temp("ragged.csv", "1,2,A\n3,B\n"), {}), DatasetError);
    CHECK_THROWS_AS(load_csv(write_temp("text.csv", "1,abc,A\n3,4,B\n"), {}), DatasetError);
    CHECK_THROWS_AS(load_csv(write_temp("oneclass.csv", "1,2,A\n3,4,A\n"), {}), DatasetError);
    CHECK_THROWS_AS(load_csv(write_temp("nolabel.csv", "a,b\n1,2\n"),
                             {.has_header = true, .label_column = std::string("c")}),
                    DatasetError);
}

TEST_CASE("benchmark files load with their true shapes") {
    const auto dir = hhfs::testing::data_dir();
    const Dataset iono = load_csv(dir / "ionosphere.csv", {});
    CHECK(iono.instance_count() == 351);
    CHECK(iono.class_count() == 2);
    CHECK(iono.feature_count() == 34);  // the file's count, not the class-inclusive 35
    CHECK(iono.class_sizes() == std::vector<std::size_t>{225, 126});
    CHECK(load_csv(dir / "sonar.csv", {}).feature_count() == 60);
    CHECK(load_csv(dir / "dermatology.csv", {}).class_count() == 6);
    CHECK(load_csv(dir / "spectf.csv", {}).instance_count() == 349);
    CHECK(load_csv(dir / "musk.csv", {}).feature_count() == 166);
}

namespace {
Dataset single_column(std::vector<double> col) {
    std::vector<int> labels(col.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % 2);
    return Dataset("col", 1, std::move(col), std::move(labels));
}
}  // namespace

TEST_CASE("min_max_normalize examples") {
    CHECK(min_max_normalize(single_column({2, 4, 6})).values() == std::vector<double>{0, 0.5, 1});
    CHECK(min_max_normalize(single_column({5, 5, 5})).values() == std::vector<double>{0, 0, 0});
    CHECK(min_max_normalize(single_column({-1, 0, 3})).values() ==
          std::vector<double>{0, 0.25, 1});
}

TEST_CASE("normalization is idempotent and preserves shape and labels") {
    const Dataset raw = load_csv(hhfs::testing::data_dir() / "sonar.csv", {});
    const Dataset once = min_max_normalize(raw);
    const Dataset twice = min_max_normalize(once);
    CHECK(once.values() == twice.values());
    CHECK(once.labels() == raw.labels());
    CHECK(once.instance_count() == raw.instance_count());
    CHECK(once.feature_count() == raw.feature_count());
    for (double v : once.values()) {
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 1.0);
    }
}

namespace {
std::vector<std::vector<std::size_t>> per_fold_class_counts(const Dataset& d, const FoldAssignment& f) {
    std::vector<std::vector<std::size_t>> counts(f.k, std::vector<std::size_t>(d.class_count(), 0));
    for (std::size_t i = 0; i < d.instance_count(); ++i)
        ++counts[f.fold_of[i]][static_cast<std::size_t>(d.labels()[i])];
    return counts;
}
}  // namespace

TEST_CASE("stratified_folds: perfect stratification on balanced input") {
    std::vector<int> labels{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
    Dataset d("ten", 1, std::vector<double>(10, 0.0), labels);
    const auto folds = stratified_folds(d, 5, 42);
    for (const auto& fold : per_fold_class_counts(d, folds)) {
        CHECK(fold[0] == 1);
        CHECK(fold[1] == 1);
    }
    CHECK(stratified_folds(d, 5, 42).fold_of == folds.fold_of);
}

TEST_CASE("stratified_folds on Ionosphere gives 22-23 / 12-13 per fold") {
    const Dataset d = load_csv(hhfs::testing::data_dir() / "ionosphere.csv", {});
    const auto counts = per_fold_class_counts(d, stratified_folds(d, 10, 9));
    for (const auto& fold : counts) {
        CHECK((fold[0] == 22 || fold[0] == 23));
        CHECK((fold[1] == 12 || fold[1] == 13));
    }
}

TEST_CASE("stratified_folds invariants over random label vectors") {
    SeededRng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 10 + rng.index(300);
        const std::size_t classes = 2 + rng.index(5);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i)
            labels[i] = static_cast<int>(i < classes ? i : rng.index(classes));
        Dataset d("random", 1, std::vector<double>(n, 0.0), labels);
        const std::size_t k = 2 + rng.index(9);
        const auto folds = stratified_folds(d, k, rng.index(1000));
        REQUIRE(folds.fold_of.size() == n);
        const auto counts = per_fold_class_counts(d, folds);
        std::vector<std::size_t> sizes(k, 0);
        for (std::size_t c = 0; c < classes; ++c) {
            std::size_t lo = n, hi = 0;
            for (std::size_t f = 0; f < k; ++f) {
                lo = std::min(lo, counts[f][c]);
                hi = std::max(hi, counts[f][c]);
                sizes[f] += counts[f][c];
            }
            REQUIRE(hi - lo <= 1);
        }
        const auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
        REQUIRE(*mx - *mn <= classes);
    }
}

TEST_CASE("stratified_folds rejects impossible fold counts") {
    Dataset d("tiny", 1, {0, 1, 2}, {0, 1, 0});
    CHECK_THROWS(stratified_folds(d, 4, 1));
    CHECK_THROWS(stratified_folds(d, 1, 1));
}

TEST_CASE("Dataset constructor enforces its invariants") {
    CHECK_THROWS_AS(Dataset("x", 1, {1, 2}, {0, 0}), DatasetError);
    CHECK_THROWS_AS(Dataset("x", 1, {1, 2}, {0, 2}), DatasetError);
    CHECK_THROWS_AS(Dataset("x", 0, {}, {0, 1}), DatasetError);
    CHECK_THROWS_AS(Dataset("x", 2, {1, 2, 3}, {0, 1}), DatasetError);
}
