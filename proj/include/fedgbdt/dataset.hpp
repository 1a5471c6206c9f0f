#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "fedgbdt/bucketizer.hpp"
#include "fedgbdt/errors.hpp"
#include "fedgbdt/types.hpp"

namespace fedgbdt {

struct FeatureSchema {
    enum class Kind : uint8_t { continuous = 0, discrete = 1 };
    std::string name;
    Kind kind = Kind::continuous;
    // Public domain bounds for continuous features (quantile search range).
    double min = 0.0;
    double max = 1.0;
    // Ordered distinct class values for discrete features.
    std::vector<double> classes;
};

// Dataset description shared by all participants of a run. Text format,
// one declaration per line:
//   label <column name>
//   ignore <column name>
//   feature <name> continuous <min> <max>
//   feature <name> discrete <v1> <v2> ...
// '#' starts a comment. Feature order in the file fixes feature indices.
struct Schema {
    std::vector<FeatureSchema> features;
    std::string label_name;               // empty -> unlabeled data
    std::vector<std::string> ignored;     // CSV columns to skip

    static Schema load(const std::string& path);
    static Schema parse(const std::string& text);
    std::string to_text() const;
    void save(const std::string& path) const;

    int feature_index(const std::string& name) const; // -1 when absent
};

struct Dataset {
    std::vector<SampleId> ids;   // ascending
    std::vector<double> x;       // row-major, n * m
    std::vector<uint8_t> labels; // empty or size n
    Schema schema;

    size_t n() const { return ids.size(); }
    size_t m() const { return schema.features.size(); }
    bool has_labels() const { return !labels.empty(); }

    double at(size_t row, size_t feature) const { return x[row * m() + feature]; }
    double& at(size_t row, size_t feature) { return x[row * m() + feature]; }

    FeatureColumn column(uint32_t feature) const;
    void validate() const;
};

struct CsvLoadStats {
    size_t rows = 0;
    size_t imputed_cells = 0;
};

// Parses a CSV whose header covers every schema column (features, label,
// ignored) by name. Empty and "NA"/"nan" cells are imputed with the column
// median; any other unparseable cell fails with its line number.
Dataset load_csv(const std::string& path, const Schema& schema, CsvLoadStats* stats = nullptr);

void save_csv(const Dataset& dataset, const std::string& path);

// Seeded shuffle, then ceil(2n/3) training rows and the rest for testing;
// both sides sorted by sample ID.
std::pair<Dataset, Dataset> split_train_test(const Dataset& dataset, uint64_t seed);

// Contiguous feature ranges (first m mod l shards one wider); labels go to
// shard l-1 only (the active participant). All shards keep every row.
std::vector<Dataset> partition_vertical(const Dataset& dataset, int l);

// Global feature index of each shard's first feature under the contiguous
// partition above.
std::vector<uint32_t> vertical_feature_offsets(size_t m, int l);

// Seeded row shards, every shard with all features and labels, each sorted
// by sample ID.
std::vector<Dataset> partition_horizontal(const Dataset& dataset, int l, uint64_t seed);

// Two Gaussian clusters at +-separation/2 per feature, labels ~ fair coin.
Dataset synth_binary(size_t n, size_t m, double separation, uint64_t seed);

} // namespace fedgbdt
