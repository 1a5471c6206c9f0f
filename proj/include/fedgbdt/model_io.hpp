#pragma once
#include <string>
#include <vector>

#include "fedgbdt/tree.hpp"

namespace fedgbdt {

// Canonical binary model layout, bit-exact across platforms.
//
//   magic  "FBM1"
//   u32    num_trees (config)        u32  tree_depth
//   u32    num_buckets               f64  lambda
//   f64    learning_rate             f64  epsilon
//   u64    fixed_point_scale         u64  rng_seed
//   u8     base_score kind           f64  base lo, f64 base hi, u64 base seed
//   u32    num_features              u32  trees stored
//   trees, each pre-order:
//     u8 kind (0 leaf | 1 internal)
//     internal: u32 feature, u32 split_bucket, then left subtree, right subtree
//     leaf:     f64 weight
//
// All integers little-endian, reals as IEEE-754 bit patterns.
std::vector<uint8_t> serialize_model(const GbdtModel& model);
GbdtModel deserialize_model(const std::vector<uint8_t>& bytes);

void save_model(const GbdtModel& model, const std::string& path);
GbdtModel load_model(const std::string& path);

// Human-readable dump for debugging; not a parseable format.
std::string model_text_dump(const GbdtModel& model);

// FNV-1a over the canonical serialization; printed in reports so two runs
// can be compared at a glance.
uint64_t model_fingerprint(const GbdtModel& model);

} // namespace fedgbdt
