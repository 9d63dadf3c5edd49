#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "sigret/errors.hpp"
#include "sigret/features.hpp"

namespace sigret {

struct FeatureRecord {
    std::string id;
    std::string writer;
    std::string source; // file path or "synthetic"
    std::vector<double> vector;
};

struct FeatureDB {
    FeatureLayout layout;
    std::vector<FeatureRecord> records;
};

struct RankedEntry {
    std::string id;
    std::string writer;
    double distance = 0.0;
    std::string source;
};

/// Query result, ascending by distance with ties broken by ascending id.
struct RankedList {
    std::vector<RankedEntry> entries;
};

/// Canberra distance: sum_i |x_i - y_i| / (|x_i| + |y_i|), with 0/0 terms
/// contributing 0.
inline double canberra(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) {
        throw DimensionMismatch("canberra requires equal nonzero dimensions");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double denom = std::abs(x[i]) + std::abs(y[i]);
        if (denom == 0.0) continue;
        sum += std::abs(x[i] - y[i]) / denom;
    }
    return sum;
}

/// Linear scan over the database, returning the min(k, |db|) nearest records.
inline RankedList query(const FeatureDB& db, const FeatureVector& probe, std::size_t k) {
    if (db.records.empty()) throw EmptyDatabase("query against empty database");
    if (!(probe.layout == db.layout) ||
        probe.values.size() != static_cast<std::size_t>(db.layout.dim())) {
        throw LayoutMismatch("probe layout does not match database layout");
    }
    if (k < 1) throw DimensionMismatch("k must be >= 1");

    RankedList out;
    out.entries.reserve(db.records.size());
    for (const FeatureRecord& rec : db.records) {
        if (rec.vector.size() != probe.values.size()) {
            throw LayoutMismatch("record '" + rec.id + "' has wrong dimension");
        }
        out.entries.push_back({rec.id, rec.writer, canberra(probe.values, rec.vector), rec.source});
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.id < b.id;
    });
    if (out.entries.size() > k) out.entries.resize(k);
    return out;
}

} // namespace sigret
