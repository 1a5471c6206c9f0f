#pragma once
#include <stdexcept>
#include <string>

namespace fedgbdt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad operation input (length mismatch, out-of-range parameter, ...).
struct ArgumentError : Error {
    using Error::Error;
};

// Internal consistency violated (sample missing from every bucket, ...).
struct IntegrityError : Error {
    using Error::Error;
};

// Fixed-point magnitude would exceed the representable range.
struct RangeError : Error {
    using Error::Error;
};

// Distributed protocol contract broken: missing/duplicate message,
// config hash mismatch, unexpected peer.
struct ProtocolError : Error {
    using Error::Error;
};

// A secure-aggregation round counter was used twice in one session.
struct ReplayError : ProtocolError {
    using ProtocolError::ProtocolError;
};

// Leaf weight requested for a node with H + lambda <= 0.
struct DegenerateNodeError : Error {
    using Error::Error;
};

// Quantile binary search exhausted without reaching its target count.
// Carries the best cut found so callers may degrade gracefully.
struct QuantileDegenerateError : Error {
    QuantileDegenerateError(const std::string& msg, double best_cut_found)
        : Error(msg), best_cut(best_cut_found) {}
    double best_cut;
};

// Dataset schema violated (unknown class value, header mismatch, ...).
struct SchemaError : Error {
    using Error::Error;
};

// Malformed data value (unparseable CSV cell, NaN feature, ...).
struct DataError : Error {
    using Error::Error;
};

// Metric undefined on this input (e.g. AUC with a single class).
struct UndefinedMetricError : Error {
    using Error::Error;
};

struct TransportError : Error {
    using Error::Error;
};

struct TransportTimeout : TransportError {
    using TransportError::TransportError;
};

} // namespace fedgbdt
