#pragma once
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fedgbdt/errors.hpp"
#include "fedgbdt/gradients.hpp"
#include "fedgbdt/histogram.hpp"
#include "fedgbdt/rng.hpp"
#include "fedgbdt/types.hpp"

namespace fedgbdt {

// One feature column: parallel arrays of sample IDs and values.
struct FeatureColumn {
    uint32_t feature_index = 0;
    std::vector<SampleId> ids;
    std::vector<double> values;

    size_t size() const { return ids.size(); }
};

// q ordered groups of sample IDs for one feature. Before perturbation the
// groups follow sorted feature values and differ in size by at most one.
struct BucketAssignment {
    uint32_t feature_index = 0;
    double epsilon_applied = std::numeric_limits<double>::infinity();
    std::vector<std::vector<SampleId>> buckets;

    int num_buckets() const { return int(buckets.size()); }
    size_t total_samples() const {
        size_t n = 0;
        for (const auto& b : buckets) n += b.size();
        return n;
    }
};

// Value range of each bucket in the unperturbed partition; the feature
// owner keeps these to realize splits as raw-value thresholds.
struct BucketBoundaries {
    std::vector<double> min_value; // NaN when the bucket is empty
    std::vector<double> max_value;
};

// Sorts by (value, sample ID) and cuts into q nearly equal groups: the
// first n mod q buckets take the extra sample.
BucketAssignment sort_and_partition(const FeatureColumn& column, int q);

// Boundaries of the partition sort_and_partition would produce (call on the
// unperturbed assignment together with its column).
BucketBoundaries bucket_boundaries(const BucketAssignment& assignment, const FeatureColumn& column);

// Raw-value threshold realizing "buckets 1..s left / rest right":
// the midpoint of (max value in bucket s, min value in bucket s+1). Equal
// boundary values collapse to that value (routing stays strictly-less).
// Empty boundary buckets fall back to the nearest non-empty pair.
double threshold_for_split(const BucketBoundaries& bounds, uint32_t split_bucket);

// Closed-form randomized-response probabilities. Numerators share the
// common denominator e^eps + q - 1 so the e^eps privacy ratio can be
// checked analytically, without the rounded division.
struct RrProbabilities {
    double stay_numerator;  // e^eps
    double move_numerator;  // 1 (per destination bucket)
    double denominator;     // e^eps + q - 1
    double stay() const { return stay_numerator / denominator; }
    double move_each() const { return move_numerator / denominator; }
    double move_total() const { return 1.0 - stay(); }
};

RrProbabilities rr_probabilities(double epsilon, int q);

// Independently per sample: stay with probability e^eps/(e^eps+q-1), else
// move to one of the other q-1 buckets uniformly. epsilon = inf returns the
// input unchanged. Samples are visited bucket by bucket in stored order;
// one uniform draw decides stay/which, so a fixed seed fixes the output.
BucketAssignment randomize_buckets(const BucketAssignment& assignment, double epsilon, Rng& rng);

// Dense row-indexed view of an assignment. `ids_by_row` must be sorted
// ascending; IDs in the assignment but not in the row universe are ignored,
// rows not present in any bucket map to -1.
FeatureBuckets to_feature_buckets(const BucketAssignment& assignment,
                                  std::span<const SampleId> ids_by_row);

// ID-space histogram build over one feature's assignment: sums (g, h) per
// bucket over node_samples in ascending-ID order. A node sample absent
// from every bucket raises IntegrityError.
Histogram build_histogram(const BucketAssignment& assignment,
                          std::span<const SampleId> ids_by_row,
                          std::span<const GradientPair> grads_by_row,
                          std::span<const SampleId> node_samples);

// Wire format (passive -> active bucket upload):
//   u32 feature_index, u32 q, then per bucket: u32 count + count * u32 IDs.
// Little-endian throughout.
std::vector<uint8_t> encode_bucket_upload(const BucketAssignment& assignment);
BucketAssignment decode_bucket_upload(const std::vector<uint8_t>& payload);

} // namespace fedgbdt
