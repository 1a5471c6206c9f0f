#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "fedgbdt/errors.hpp"
#include "fedgbdt/gradients.hpp"

namespace fedgbdt {

// Per-bucket gradient sums for one feature at one tree node.
struct Histogram {
    std::vector<double> g_sum;
    std::vector<double> h_sum;

    Histogram() = default;
    explicit Histogram(int q) : g_sum(q, 0.0), h_sum(q, 0.0) {}

    int num_buckets() const { return int(g_sum.size()); }

    double total_g() const {
        double s = 0.0;
        for (double v : g_sum) s += v;
        return s;
    }
    double total_h() const {
        double s = 0.0;
        for (double v : h_sum) s += v;
        return s;
    }

    // Bucket occupancy as observable from gradient sums alone. h > 0 for
    // every real BCE gradient, so a bucket with samples always registers;
    // the g term additionally covers quantized inputs whose h rounded to 0.
    int nonempty_buckets() const {
        int c = 0;
        for (size_t j = 0; j < g_sum.size(); ++j)
            if (g_sum[j] != 0.0 || h_sum[j] != 0.0) ++c;
        return c;
    }

    Histogram& add(const Histogram& other) {
        if (other.num_buckets() != num_buckets())
            throw ArgumentError("histogram bucket count mismatch");
        for (size_t j = 0; j < g_sum.size(); ++j) {
            g_sum[j] += other.g_sum[j];
            h_sum[j] += other.h_sum[j];
        }
        return *this;
    }
};

// Dense sample -> bucket map for one feature over a fixed row universe.
// Bucket indices are 0-based internally; the public split_bucket convention
// stays 1-based (buckets 1..s route left).
struct FeatureBuckets {
    uint32_t feature_index = 0;
    int num_buckets = 0;
    std::vector<int32_t> bucket_of_row;
};

// Accumulates (g, h) per bucket over the given rows, in the order given.
// Callers keep rows in ascending sample-ID order so sums are reproducible.
inline Histogram build_histogram(const FeatureBuckets& fb,
                                 std::span<const GradientPair> grads,
                                 std::span<const int32_t> node_rows) {
    Histogram hist(fb.num_buckets);
    for (int32_t row : node_rows) {
        const int32_t b = fb.bucket_of_row[size_t(row)];
        if (b < 0 || b >= fb.num_buckets)
            throw IntegrityError("build_histogram: row not assigned to any bucket");
        hist.g_sum[size_t(b)] += grads[size_t(row)].g;
        hist.h_sum[size_t(b)] += grads[size_t(row)].h;
    }
    return hist;
}

struct SplitResult {
    double score = 0.0;
    uint32_t split_bucket = 0; // 1-based; buckets 1..split_bucket go left
};

// One term of the split objective, guarded so lambda = 0 with an empty
// child evaluates to 0 instead of 0/0.
inline double split_term(double g, double h, double lambda) {
    const double denom = h + lambda;
    if (denom <= 0.0) return 0.0;
    return g * g / denom;
}

// Scans candidate splits s = 1..q-1 with prefix sums, scoring
//   G_L^2/(H_L+l) + G_R^2/(H_R+l) + G^2/(H+l)
// and keeping the first maximum (ties break to the smallest s).
inline SplitResult find_best_split(const Histogram& hist, double lambda) {
    const int q = hist.num_buckets();
    if (q < 2) throw ArgumentError("find_best_split: need at least 2 buckets");
    const double g_total = hist.total_g();
    const double h_total = hist.total_h();
    const double parent = split_term(g_total, h_total, lambda);

    SplitResult best{-1.0, 0};
    double gl = 0.0, hl = 0.0;
    for (int s = 1; s <= q - 1; ++s) {
        gl += hist.g_sum[size_t(s - 1)];
        hl += hist.h_sum[size_t(s - 1)];
        const double gr = g_total - gl;
        const double hr = h_total - hl;
        const double score = split_term(gl, hl, lambda) + split_term(gr, hr, lambda) + parent;
        if (score > best.score) {
            best.score = score;
            best.split_bucket = uint32_t(s);
        }
    }
    return best;
}

// -G/(H+lambda); the learning rate is applied when the weight is installed
// into a tree, not here.
inline double leaf_weight(double g, double h, double lambda) {
    const double denom = h + lambda;
    if (denom <= 0.0) throw DegenerateNodeError("leaf_weight: H + lambda <= 0");
    return -g / denom;
}

struct NodeDecision {
    bool is_leaf = true;
    uint32_t feature = 0;
    uint32_t split_bucket = 0;
    double score = 0.0;
};

// The one split/leaf decision rule shared by the centralized trainer and
// both federated coordinators. It looks only at per-feature histograms so
// every path reaches identical decisions:
//   - at depth == max_depth the node is a leaf;
//   - a feature is degenerate when <2 of its buckets are occupied; if all
//     features are degenerate there is nothing to separate and the node
//     becomes a leaf early;
//   - otherwise the split maximizes the score over all features (degenerate
//     ones still contribute), ties to the smallest split index, then the
//     lowest feature index.
inline NodeDecision decide_node(std::span<const Histogram> feature_hists, double lambda,
                                int depth, int max_depth) {
    NodeDecision dec;
    if (depth >= max_depth) return dec;

    bool any_usable = false;
    for (const Histogram& h : feature_hists) {
        if (h.num_buckets() >= 2 && h.nonempty_buckets() >= 2) {
            any_usable = true;
            break;
        }
    }
    if (!any_usable) return dec;

    double best_score = -1.0;
    for (size_t f = 0; f < feature_hists.size(); ++f) {
        if (feature_hists[f].num_buckets() < 2) continue;
        const SplitResult r = find_best_split(feature_hists[f], lambda);
        if (r.score > best_score) {
            best_score = r.score;
            dec.is_leaf = false;
            dec.feature = uint32_t(f);
            dec.split_bucket = r.split_bucket;
            dec.score = r.score;
        }
    }
    return dec;
}

} // namespace fedgbdt
