#include "fedgbdt/bucketizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fedgbdt/bytes.hpp"

namespace fedgbdt {

BucketAssignment sort_and_partition(const FeatureColumn& column, int q) {
    const size_t n = column.size();
    if (q < 2) throw ArgumentError("sort_and_partition: q must be >= 2");
    if (n < size_t(q)) throw ArgumentError("sort_and_partition: fewer samples than buckets");
    if (column.values.size() != n) throw ArgumentError("sort_and_partition: ids/values mismatch");

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t(0));
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (column.values[a] != column.values[b]) return column.values[a] < column.values[b];
        return column.ids[a] < column.ids[b];
    });

    BucketAssignment out;
    out.feature_index = column.feature_index;
    out.buckets.resize(size_t(q));
    const size_t base = n / size_t(q);
    const size_t extra = n % size_t(q); // first `extra` buckets get one more
    size_t pos = 0;
    for (size_t j = 0; j < size_t(q); ++j) {
        const size_t len = base + (j < extra ? 1 : 0);
        out.buckets[j].reserve(len);
        for (size_t k = 0; k < len; ++k) out.buckets[j].push_back(column.ids[order[pos++]]);
    }
    return out;
}

BucketBoundaries bucket_boundaries(const BucketAssignment& assignment, const FeatureColumn& column) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    BucketBoundaries bounds;
    bounds.min_value.assign(assignment.buckets.size(), nan);
    bounds.max_value.assign(assignment.buckets.size(), nan);

    std::vector<std::pair<SampleId, double>> by_id(column.size());
    for (size_t i = 0; i < column.size(); ++i) by_id[i] = {column.ids[i], column.values[i]};
    std::sort(by_id.begin(), by_id.end());

    auto value_of = [&](SampleId id) {
        auto it = std::lower_bound(by_id.begin(), by_id.end(), id,
                                   [](const auto& p, SampleId v) { return p.first < v; });
        if (it == by_id.end() || it->first != id)
            throw IntegrityError("bucket_boundaries: bucket references unknown sample");
        return it->second;
    };

    for (size_t j = 0; j < assignment.buckets.size(); ++j) {
        for (SampleId id : assignment.buckets[j]) {
            const double v = value_of(id);
            if (std::isnan(bounds.min_value[j]) || v < bounds.min_value[j]) bounds.min_value[j] = v;
            if (std::isnan(bounds.max_value[j]) || v > bounds.max_value[j]) bounds.max_value[j] = v;
        }
    }
    return bounds;
}

double threshold_for_split(const BucketBoundaries& bounds, uint32_t split_bucket) {
    const int q = int(bounds.min_value.size());
    if (split_bucket < 1 || int(split_bucket) > q - 1)
        throw ArgumentError("threshold_for_split: split bucket out of range");

    int left = int(split_bucket) - 1; // 0-based index of the last left bucket
    while (left >= 0 && std::isnan(bounds.max_value[size_t(left)])) --left;
    int right = int(split_bucket); // 0-based index of the first right bucket
    while (right < q && std::isnan(bounds.min_value[size_t(right)])) ++right;
    if (left < 0 || right >= q)
        throw DegenerateNodeError("threshold_for_split: no non-empty boundary pair");

    const double lo = bounds.max_value[size_t(left)];
    const double hi = bounds.min_value[size_t(right)];
    if (lo == hi) return lo; // duplicates straddle; strict-less routing applies
    return lo + (hi - lo) / 2.0;
}

RrProbabilities rr_probabilities(double epsilon, int q) {
    if (q < 2) throw ArgumentError("rr_probabilities: q must be >= 2");
    if (!(epsilon > 0.0)) throw ArgumentError("rr_probabilities: epsilon must be positive");
    const double e = std::exp(epsilon);
    return RrProbabilities{e, 1.0, e + double(q - 1)};
}

BucketAssignment randomize_buckets(const BucketAssignment& assignment, double epsilon, Rng& rng) {
    if (std::isinf(epsilon)) return assignment;
    const int q = assignment.num_buckets();
    const RrProbabilities pr = rr_probabilities(epsilon, q);
    const double stay_p = pr.stay();

    BucketAssignment out;
    out.feature_index = assignment.feature_index;
    out.epsilon_applied = epsilon;
    out.buckets.resize(size_t(q));
    for (int j = 0; j < q; ++j) {
        for (SampleId id : assignment.buckets[size_t(j)]) {
            if (rng.next_double() < stay_p) {
                out.buckets[size_t(j)].push_back(id);
            } else {
                // uniform among the other q-1 buckets
                int dest = int(rng.uniform_int(uint64_t(q - 1)));
                if (dest >= j) ++dest;
                out.buckets[size_t(dest)].push_back(id);
            }
        }
    }
    return out;
}

FeatureBuckets to_feature_buckets(const BucketAssignment& assignment,
                                  std::span<const SampleId> ids_by_row) {
    FeatureBuckets fb;
    fb.feature_index = assignment.feature_index;
    fb.num_buckets = assignment.num_buckets();
    fb.bucket_of_row.assign(ids_by_row.size(), -1);
    for (size_t j = 0; j < assignment.buckets.size(); ++j) {
        for (SampleId id : assignment.buckets[j]) {
            auto it = std::lower_bound(ids_by_row.begin(), ids_by_row.end(), id);
            if (it != ids_by_row.end() && *it == id)
                fb.bucket_of_row[size_t(it - ids_by_row.begin())] = int32_t(j);
        }
    }
    return fb;
}

Histogram build_histogram(const BucketAssignment& assignment,
                          std::span<const SampleId> ids_by_row,
                          std::span<const GradientPair> grads_by_row,
                          std::span<const SampleId> node_samples) {
    const FeatureBuckets fb = to_feature_buckets(assignment, ids_by_row);
    std::vector<int32_t> rows;
    rows.reserve(node_samples.size());
    for (SampleId id : node_samples) {
        auto it = std::lower_bound(ids_by_row.begin(), ids_by_row.end(), id);
        if (it == ids_by_row.end() || *it != id)
            throw IntegrityError("build_histogram: node sample outside the row universe");
        rows.push_back(int32_t(it - ids_by_row.begin()));
    }
    std::sort(rows.begin(), rows.end());
    // to_feature_buckets leaves unassigned rows at -1; build trips on them.
    return build_histogram(fb, grads_by_row, rows);
}

std::vector<uint8_t> encode_bucket_upload(const BucketAssignment& assignment) {
    ByteWriter w;
    w.u32_le(assignment.feature_index);
    w.u32_le(uint32_t(assignment.buckets.size()));
    for (const auto& bucket : assignment.buckets) {
        w.u32_le(uint32_t(bucket.size()));
        for (SampleId id : bucket) w.u32_le(id);
    }
    return std::move(w.buf);
}

BucketAssignment decode_bucket_upload(const std::vector<uint8_t>& payload) {
    ByteReader r(payload);
    BucketAssignment out;
    out.feature_index = r.u32_le();
    const uint32_t q = r.u32_le();
    if (q < 2) throw DataError("bucket upload: q < 2");
    out.buckets.resize(q);
    for (uint32_t j = 0; j < q; ++j) {
        const uint32_t count = r.u32_le();
        out.buckets[j].reserve(count);
        for (uint32_t k = 0; k < count; ++k) out.buckets[j].push_back(r.u32_le());
    }
    if (!r.done()) throw DataError("bucket upload: trailing bytes");
    return out;
}

} // namespace fedgbdt
