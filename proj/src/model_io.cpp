#include "fedgbdt/model_io.hpp"

#include <deque>
#include <fstream>
#include <sstream>

#include "fedgbdt/bytes.hpp"

namespace fedgbdt {

namespace {

constexpr char kMagic[4] = {'F', 'B', 'M', '1'};

void write_subtree(ByteWriter& w, const Tree& tree, int32_t id) {
    const TreeNode& node = tree.nodes[size_t(id)];
    w.u8(uint8_t(node.kind));
    if (node.is_leaf()) {
        w.f64_le(node.weight);
    } else {
        w.u32_le(node.feature_index);
        w.u32_le(node.split_bucket);
        write_subtree(w, tree, node.left);
        write_subtree(w, tree, node.right);
    }
}

// Pre-order stream -> linked nodes; ids are re-assigned breadth-first
// afterwards so loaded models key threshold tables identically to
// freshly trained ones.
struct RawNode {
    TreeNode node;
    int32_t left = -1, right = -1; // indices into the raw pool
};

int32_t read_subtree(ByteReader& r, std::vector<RawNode>& pool) {
    const int32_t idx = int32_t(pool.size());
    pool.emplace_back();
    const uint8_t kind = r.u8();
    if (kind == uint8_t(TreeNode::Kind::leaf)) {
        pool[size_t(idx)].node.kind = TreeNode::Kind::leaf;
        pool[size_t(idx)].node.weight = r.f64_le();
    } else if (kind == uint8_t(TreeNode::Kind::internal)) {
        pool[size_t(idx)].node.kind = TreeNode::Kind::internal;
        pool[size_t(idx)].node.feature_index = r.u32_le();
        pool[size_t(idx)].node.split_bucket = r.u32_le();
        const int32_t left = read_subtree(r, pool);
        const int32_t right = read_subtree(r, pool);
        pool[size_t(idx)].left = left;
        pool[size_t(idx)].right = right;
    } else {
        throw DataError("model: unknown node kind");
    }
    return idx;
}

Tree renumber_bfs(const std::vector<RawNode>& pool, int32_t root) {
    Tree tree;
    std::deque<int32_t> queue{root};
    std::vector<int32_t> order;
    while (!queue.empty()) {
        const int32_t idx = queue.front();
        queue.pop_front();
        order.push_back(idx);
        if (pool[size_t(idx)].node.kind == TreeNode::Kind::internal) {
            queue.push_back(pool[size_t(idx)].left);
            queue.push_back(pool[size_t(idx)].right);
        }
    }
    std::vector<int32_t> new_id(pool.size(), -1);
    for (size_t i = 0; i < order.size(); ++i) new_id[size_t(order[i])] = int32_t(i);
    tree.nodes.resize(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
        const RawNode& raw = pool[size_t(order[i])];
        TreeNode node = raw.node;
        if (node.kind == TreeNode::Kind::internal) {
            node.left = new_id[size_t(raw.left)];
            node.right = new_id[size_t(raw.right)];
        }
        tree.nodes[i] = node;
    }
    return tree;
}

void dump_subtree(std::ostream& os, const Tree& tree, int32_t id, int indent) {
    const TreeNode& node = tree.nodes[size_t(id)];
    for (int i = 0; i < indent; ++i) os << "  ";
    if (node.is_leaf()) {
        os << "node " << id << ": leaf weight=" << node.weight << "\n";
    } else {
        os << "node " << id << ": feature " << node.feature_index
           << " split<=bucket " << node.split_bucket << "\n";
        dump_subtree(os, tree, node.left, indent + 1);
        dump_subtree(os, tree, node.right, indent + 1);
    }
}

} // namespace

std::vector<uint8_t> serialize_model(const GbdtModel& model) {
    ByteWriter w;
    w.bytes(reinterpret_cast<const uint8_t*>(kMagic), 4);
    const TrainConfig& c = model.config;
    w.u32_le(c.num_trees);
    w.u32_le(c.tree_depth);
    w.u32_le(c.num_buckets);
    w.f64_le(c.lambda);
    w.f64_le(c.learning_rate);
    w.f64_le(c.epsilon);
    w.u64_le(c.fixed_point_scale);
    w.u64_le(c.rng_seed);
    w.u8(uint8_t(c.base_score.kind));
    w.f64_le(c.base_score.lo);
    w.f64_le(c.base_score.hi);
    w.u64_le(c.base_score.seed);
    w.u32_le(model.num_features);
    w.u32_le(uint32_t(model.trees.size()));
    for (const Tree& tree : model.trees) write_subtree(w, tree, 0);
    return std::move(w.buf);
}

GbdtModel deserialize_model(const std::vector<uint8_t>& bytes) {
    ByteReader r(bytes);
    const std::vector<uint8_t> magic = r.bytes(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0)
        throw DataError("model: bad magic bytes");
    GbdtModel model;
    TrainConfig& c = model.config;
    c.num_trees = r.u32_le();
    c.tree_depth = r.u32_le();
    c.num_buckets = r.u32_le();
    c.lambda = r.f64_le();
    c.learning_rate = r.f64_le();
    c.epsilon = r.f64_le();
    c.fixed_point_scale = r.u64_le();
    c.rng_seed = r.u64_le();
    c.base_score.kind = BaseScoreInit::Kind(r.u8());
    c.base_score.lo = r.f64_le();
    c.base_score.hi = r.f64_le();
    c.base_score.seed = r.u64_le();
    model.num_features = r.u32_le();
    const uint32_t num_trees = r.u32_le();
    model.trees.reserve(num_trees);
    for (uint32_t t = 0; t < num_trees; ++t) {
        std::vector<RawNode> pool;
        const int32_t root = read_subtree(r, pool);
        model.trees.push_back(renumber_bfs(pool, root));
    }
    if (!r.done()) throw DataError("model: trailing bytes");
    return model;
}

void save_model(const GbdtModel& model, const std::string& path) {
    const std::vector<uint8_t> bytes = serialize_model(model);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DataError("cannot open model file for writing: " + path);
    os.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

GbdtModel load_model(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open model file: " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                               std::istreambuf_iterator<char>());
    return deserialize_model(bytes);
}

std::string model_text_dump(const GbdtModel& model) {
    std::ostringstream os;
    os << "gbdt model: " << model.trees.size() << " trees, " << model.num_features
       << " features, q=" << model.config.num_buckets << "\n";
    for (size_t t = 0; t < model.trees.size(); ++t) {
        os << "tree " << t << ":\n";
        dump_subtree(os, model.trees[t], 0, 1);
    }
    return os.str();
}

uint64_t model_fingerprint(const GbdtModel& model) {
    return fnv1a64(serialize_model(model));
}

} // namespace fedgbdt
