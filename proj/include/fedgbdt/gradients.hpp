#pragma once
#include <cmath>
#include <cstdint>
#include <vector>

#include "fedgbdt/errors.hpp"

namespace fedgbdt {

// First- and second-order gradient of the loss at the current prediction.
struct GradientPair {
    double g = 0.0;
    double h = 0.0;
};

// Numerically stable logistic function; never overflows.
inline double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// Binary cross-entropy derivatives w.r.t. the raw margin:
//   g = sigmoid(y_hat) - y,   h = sigmoid(y_hat) * (1 - sigmoid(y_hat)).
inline std::vector<GradientPair> compute_gradients(const std::vector<uint8_t>& labels,
                                                   const std::vector<double>& raw_preds) {
    if (labels.size() != raw_preds.size())
        throw ArgumentError("compute_gradients: labels/predictions length mismatch");
    std::vector<GradientPair> out(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] > 1) throw ArgumentError("compute_gradients: labels must be 0 or 1");
        const double p = sigmoid(raw_preds[i]);
        out[i].g = p - double(labels[i]);
        out[i].h = p * (1.0 - p);
    }
    return out;
}

} // namespace fedgbdt
