#pragma once
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "fedgbdt/config.hpp"
#include "fedgbdt/errors.hpp"
#include "fedgbdt/gradients.hpp"

namespace fedgbdt {

struct TreeNode {
    enum class Kind : uint8_t { leaf = 0, internal = 1 };
    Kind kind = Kind::leaf;
    uint32_t feature_index = 0; // internal only
    uint32_t split_bucket = 0;  // internal only; 1-based, buckets 1..s go left
    double weight = 0.0;        // leaf only; learning rate already applied
    int32_t left = -1;
    int32_t right = -1;

    bool is_leaf() const { return kind == Kind::leaf; }
};

// Nodes indexed by id; ids are assigned breadth-first during training with
// the root at 0, so transcripts and threshold tables key on (tree, node id).
struct Tree {
    std::vector<TreeNode> nodes;

    const TreeNode& root() const { return nodes.at(0); }
    int num_nodes() const { return int(nodes.size()); }
};

struct GbdtModel {
    TrainConfig config;
    uint32_t num_features = 0;
    std::vector<Tree> trees;
};

// Raw-value thresholds realizing the bucket splits, keyed by (tree, node).
// Vertical training scatters these across feature owners; centralized and
// horizontal paths hold a complete table.
struct ThresholdTable {
    std::map<std::pair<uint32_t, uint32_t>, double> entries;

    void set(uint32_t tree, uint32_t node, double threshold) {
        entries[{tree, node}] = threshold;
    }
    bool has(uint32_t tree, uint32_t node) const {
        return entries.count({tree, node}) != 0;
    }
    double at(uint32_t tree, uint32_t node) const {
        auto it = entries.find({tree, node});
        if (it == entries.end()) throw ArgumentError("threshold table: no entry for node");
        return it->second;
    }
};

// Margin (sum of leaf weights) routed by per-feature 0-based bucket index.
inline double predict_margin_buckets(const GbdtModel& model, std::span<const int32_t> bucket_of_feature) {
    double margin = 0.0;
    for (const Tree& tree : model.trees) {
        const TreeNode* node = &tree.root();
        while (!node->is_leaf()) {
            if (node->feature_index >= bucket_of_feature.size())
                throw ArgumentError("predict: no bucket index for referenced feature");
            const int32_t b = bucket_of_feature[node->feature_index];
            // 0-based bucket b is in the left part iff b < split_bucket.
            node = &tree.nodes[size_t(b < int32_t(node->split_bucket) ? node->left : node->right)];
        }
        margin += node->weight;
    }
    return margin;
}

inline double predict_buckets(const GbdtModel& model, std::span<const int32_t> bucket_of_feature) {
    return sigmoid(predict_margin_buckets(model, bucket_of_feature));
}

// Margin routed by raw feature values against a threshold table
// (value < threshold goes left).
inline double predict_margin_values(const GbdtModel& model, std::span<const double> values,
                                    const ThresholdTable& thresholds) {
    double margin = 0.0;
    for (size_t t = 0; t < model.trees.size(); ++t) {
        const Tree& tree = model.trees[t];
        int32_t id = 0;
        while (!tree.nodes[size_t(id)].is_leaf()) {
            const TreeNode& node = tree.nodes[size_t(id)];
            if (node.feature_index >= values.size())
                throw ArgumentError("predict: no value for referenced feature");
            const double v = values[node.feature_index];
            if (std::isnan(v)) throw DataError("predict: NaN feature value");
            const double th = thresholds.at(uint32_t(t), uint32_t(id));
            id = v < th ? node.left : node.right;
        }
        margin += tree.nodes[size_t(id)].weight;
    }
    return margin;
}

inline double predict_values(const GbdtModel& model, std::span<const double> values,
                             const ThresholdTable& thresholds) {
    return sigmoid(predict_margin_values(model, values, thresholds));
}

} // namespace fedgbdt
