#pragma once
#include <functional>
#include <string>
#include <vector>

#include "fedgbdt/config.hpp"
#include "fedgbdt/histogram.hpp"
#include "fedgbdt/tree.hpp"
#include "fedgbdt/types.hpp"

namespace fedgbdt {

struct SplitRecord {
    uint32_t tree = 0;
    uint32_t node = 0;
    uint32_t feature = 0;
    uint32_t split_bucket = 0;
};

using SplitSink = std::function<void(const SplitRecord&)>;

struct TrainDiagnostics {
    std::vector<std::string> warnings;
};

// Initial raw prediction for one sample. Seeded-uniform mode derives the
// draw from the sample ID alone so every partitioning of the same dataset
// starts from identical margins.
double base_score_for(const BaseScoreInit& init, SampleId id);

// Histogram GBDT over pre-bucketized features: the numerical engine behind
// the centralized baseline, the vertical active participant, and the
// pooled oracle for the horizontal protocol. Rows must be sorted by sample
// ID ascending; `ids[row]` gives the ID. `on_split` fires once per internal
// node in breadth-first order.
GbdtModel train_core(const std::vector<FeatureBuckets>& features,
                     const std::vector<uint8_t>& labels,
                     const std::vector<SampleId>& ids,
                     const TrainConfig& config,
                     const SplitSink& on_split = {},
                     TrainDiagnostics* diag = nullptr);

} // namespace fedgbdt
