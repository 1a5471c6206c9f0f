#pragma once
#include <cmath>
#include <cstdint>
#include <limits>

#include "fedgbdt/errors.hpp"

namespace fedgbdt {

struct BaseScoreInit {
    enum class Kind : uint8_t { zero = 0, seeded_uniform = 1 };
    Kind kind = Kind::zero;
    double lo = 0.0;
    double hi = 0.0;
    uint64_t seed = 0;
};

struct TrainConfig {
    uint32_t num_trees = 20;
    // Split levels below the root; 0 trains single-leaf trees.
    uint32_t tree_depth = 3;
    double lambda = 1.0;
    double learning_rate = 0.3;
    uint32_t num_buckets = 16;
    // LDP budget for vertical bucket uploads; +inf disables perturbation.
    double epsilon = std::numeric_limits<double>::infinity();
    BaseScoreInit base_score;
    uint64_t fixed_point_scale = uint64_t(1) << 20;
    uint64_t rng_seed = 0;

    void validate() const {
        if (num_trees < 1) throw ArgumentError("config: num_trees must be >= 1");
        if (num_buckets < 2) throw ArgumentError("config: num_buckets must be >= 2");
        if (lambda < 0.0) throw ArgumentError("config: lambda must be >= 0");
        if (!(learning_rate > 0.0) || learning_rate > 1.0)
            throw ArgumentError("config: learning_rate must be in (0, 1]");
        if (!(epsilon > 0.0)) throw ArgumentError("config: epsilon must be positive or inf");
        if (fixed_point_scale < 1) throw ArgumentError("config: fixed_point_scale must be >= 1");
        if (base_score.kind == BaseScoreInit::Kind::seeded_uniform && base_score.lo > base_score.hi)
            throw ArgumentError("config: base score range is empty");
    }
};

} // namespace fedgbdt
