#include "fedgbdt/trainer.hpp"

#include <algorithm>

#include "fedgbdt/rng.hpp"

namespace fedgbdt {

double base_score_for(const BaseScoreInit& init, SampleId id) {
    if (init.kind == BaseScoreInit::Kind::zero) return 0.0;
    Rng rng(derive_seed(init.seed, uint64_t(id)));
    return init.lo + (init.hi - init.lo) * rng.next_double();
}

namespace {

struct NodeWork {
    uint32_t id = 0;
    int depth = 0;
    std::vector<int32_t> rows; // ascending
};

// Sum of gradients over a node's rows, flat and in ascending-ID order.
GradientPair node_totals(std::span<const GradientPair> grads, std::span<const int32_t> rows) {
    GradientPair t;
    for (int32_t r : rows) {
        t.g += grads[size_t(r)].g;
        t.h += grads[size_t(r)].h;
    }
    return t;
}

} // namespace

GbdtModel train_core(const std::vector<FeatureBuckets>& features,
                     const std::vector<uint8_t>& labels,
                     const std::vector<SampleId>& ids,
                     const TrainConfig& config,
                     const SplitSink& on_split,
                     TrainDiagnostics* diag) {
    config.validate();
    const size_t n = labels.size();
    if (n < 2) throw ArgumentError("train: need at least 2 samples");
    if (features.empty()) throw ArgumentError("train: need at least one feature");
    if (ids.size() != n) throw ArgumentError("train: ids/labels length mismatch");
    for (const FeatureBuckets& fb : features)
        if (fb.bucket_of_row.size() != n)
            throw ArgumentError("train: bucket map does not cover all rows");
    for (uint8_t y : labels)
        if (y > 1) throw ArgumentError("train: labels must be 0 or 1");

    const bool all_same = std::all_of(labels.begin(), labels.end(),
                                      [&](uint8_t y) { return y == labels[0]; });
    if (all_same && diag)
        diag->warnings.push_back("all labels identical; model will be near-constant");

    std::vector<double> y_hat(n);
    for (size_t i = 0; i < n; ++i) y_hat[i] = base_score_for(config.base_score, ids[i]);

    GbdtModel model;
    model.config = config;
    model.num_features = uint32_t(features.size());

    std::vector<int32_t> all_rows(n);
    for (size_t i = 0; i < n; ++i) all_rows[i] = int32_t(i);

    for (uint32_t t = 0; t < config.num_trees; ++t) {
        const std::vector<GradientPair> grads = compute_gradients(labels, y_hat);

        Tree tree;
        tree.nodes.emplace_back();
        std::vector<NodeWork> frontier;
        frontier.push_back({0, 0, all_rows});

        auto install_leaf = [&](const NodeWork& work) {
            const GradientPair tot = node_totals(grads, work.rows);
            double w = 0.0;
            if (tot.h + config.lambda > 0.0)
                w = config.learning_rate * leaf_weight(tot.g, tot.h, config.lambda);
            tree.nodes[work.id].kind = TreeNode::Kind::leaf;
            tree.nodes[work.id].weight = w;
            for (int32_t r : work.rows) y_hat[size_t(r)] += w;
        };

        while (!frontier.empty()) {
            std::vector<NodeWork> next;
            for (NodeWork& work : frontier) {
                NodeDecision dec;
                if (work.depth < int(config.tree_depth)) {
                    std::vector<Histogram> hists;
                    hists.reserve(features.size());
                    for (const FeatureBuckets& fb : features)
                        hists.push_back(build_histogram(fb, grads, work.rows));
                    dec = decide_node(hists, config.lambda, work.depth, int(config.tree_depth));
                }
                if (dec.is_leaf) {
                    install_leaf(work);
                    continue;
                }

                TreeNode& node = tree.nodes[work.id];
                node.kind = TreeNode::Kind::internal;
                node.feature_index = dec.feature;
                node.split_bucket = dec.split_bucket;
                const uint32_t left_id = uint32_t(tree.nodes.size());
                const uint32_t right_id = left_id + 1;
                node.left = int32_t(left_id);
                node.right = int32_t(right_id);
                tree.nodes.emplace_back();
                tree.nodes.emplace_back();

                if (on_split) on_split({t, work.id, dec.feature, dec.split_bucket});

                NodeWork left{left_id, work.depth + 1, {}};
                NodeWork right{right_id, work.depth + 1, {}};
                const std::vector<int32_t>& bmap = features[dec.feature].bucket_of_row;
                for (int32_t r : work.rows) {
                    if (bmap[size_t(r)] < int32_t(dec.split_bucket))
                        left.rows.push_back(r);
                    else
                        right.rows.push_back(r);
                }
                next.push_back(std::move(left));
                next.push_back(std::move(right));
            }
            frontier = std::move(next);
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

} // namespace fedgbdt
