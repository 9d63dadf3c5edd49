#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "sigret/errors.hpp"
#include "sigret/retrieval.hpp"
#include "sigret/rng.hpp"

namespace sigret {

/// Fraction of the first min(k, |ranked|) entries whose writer matches.
inline double precision_at_k(const RankedList& ranked, const std::string& relevant_writer,
                             std::size_t k) {
    if (ranked.entries.empty()) throw EmptyRanking("precision of empty ranking");
    if (k < 1) throw EmptyRanking("k must be >= 1");
    const std::size_t cut = std::min(k, ranked.entries.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < cut; ++i) {
        if (ranked.entries[i].writer == relevant_writer) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(cut);
}

/// Fraction of all relevant records retrieved within the first k entries.
inline double recall_at_k(const RankedList& ranked, const std::string& relevant_writer,
                          std::size_t total_relevant, std::size_t k) {
    if (ranked.entries.empty()) throw EmptyRanking("recall of empty ranking");
    if (total_relevant < 1) throw EmptyRanking("total_relevant must be >= 1");
    const std::size_t cut = std::min(k, ranked.entries.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < cut; ++i) {
        if (ranked.entries[i].writer == relevant_writer) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(total_relevant);
}

struct EvalProtocol {
    std::vector<std::size_t> cuts{1, 2, 5, 8, 10, 12};
    std::uint64_t seed = 0;
    bool query_in_db = true;
};

struct QueryRow {
    std::string query_id;
    std::size_t k = 0;
    std::size_t relevant_retrieved = 0;
};

struct EvalReport {
    std::string transform;
    std::vector<std::size_t> cuts;
    std::vector<double> mean_precision_pct; // per cut
    std::vector<double> mean_recall_pct;    // per cut
    std::vector<QueryRow> rows;
    std::uint64_t seed = 0;
};

/// One random query per writer (seeded by writer label, so enumeration order
/// is irrelevant), averaged precision/recall at each cut.
inline EvalReport run_benchmark(const FeatureDB& db, const EvalProtocol& protocol) {
    if (db.records.empty()) throw InsufficientData("empty database");
    std::map<std::string, std::vector<std::size_t>> by_writer;
    for (std::size_t i = 0; i < db.records.size(); ++i) {
        by_writer[db.records[i].writer].push_back(i);
    }
    if (by_writer.size() < 2) throw InsufficientData("need at least 2 writers");

    EvalReport report;
    report.transform = transform_name(db.layout.transform);
    report.cuts = protocol.cuts;
    report.seed = protocol.seed;
    std::vector<double> prec_sum(protocol.cuts.size(), 0.0);
    std::vector<double> rec_sum(protocol.cuts.size(), 0.0);

    for (const auto& [writer, indices] : by_writer) {
        SplitMix64 rng(mix_seed(protocol.seed, hash_label(writer)));
        // ids sorted so the draw is independent of record order in the db
        std::vector<std::size_t> sorted = indices;
        std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
            return db.records[a].id < db.records[b].id;
        });
        const std::size_t qidx = sorted[rng.below(sorted.size())];
        const FeatureRecord& q = db.records[qidx];

        FeatureVector probe{db.layout, q.vector};
        FeatureDB scan_db;
        const FeatureDB* target = &db;
        if (!protocol.query_in_db) {
            scan_db.layout = db.layout;
            for (const auto& r : db.records) {
                if (r.id != q.id) scan_db.records.push_back(r);
            }
            if (scan_db.records.empty()) throw InsufficientData("leave-out leaves empty db");
            target = &scan_db;
        }
        const std::size_t total_relevant =
            protocol.query_in_db ? indices.size() : indices.size() - 1;
        if (total_relevant < 1) throw InsufficientData("writer '" + writer + "' has no relevant records");

        const std::size_t kmax = *std::max_element(protocol.cuts.begin(), protocol.cuts.end());
        const RankedList ranked = query(*target, probe, kmax);

        for (std::size_t ci = 0; ci < protocol.cuts.size(); ++ci) {
            const std::size_t k = protocol.cuts[ci];
            prec_sum[ci] += precision_at_k(ranked, writer, k);
            rec_sum[ci] += recall_at_k(ranked, writer, total_relevant, k);
            const std::size_t cut = std::min(k, ranked.entries.size());
            std::size_t hits = 0;
            for (std::size_t i = 0; i < cut; ++i) {
                if (ranked.entries[i].writer == writer) ++hits;
            }
            report.rows.push_back({q.id, k, hits});
        }
    }

    const double n = static_cast<double>(by_writer.size());
    for (std::size_t ci = 0; ci < protocol.cuts.size(); ++ci) {
        report.mean_precision_pct.push_back(100.0 * prec_sum[ci] / n);
        report.mean_recall_pct.push_back(100.0 * rec_sum[ci] / n);
    }
    return report;
}

namespace detail {

inline std::string pct1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

} // namespace detail

/// Side-by-side CSV of two reports over the same cuts, one row per k.
inline void emit_comparison(const EvalReport& a, const EvalReport& b,
                            const std::filesystem::path& path) {
    if (a.cuts != b.cuts) throw CutMismatch("reports have different cut lists");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write: " + path.string());
    out << "k,precision_" << a.transform << ",recall_" << a.transform
        << ",precision_" << b.transform << ",recall_" << b.transform << "\n";
    for (std::size_t i = 0; i < a.cuts.size(); ++i) {
        out << a.cuts[i] << "," << detail::pct1(a.mean_precision_pct[i]) << ","
            << detail::pct1(a.mean_recall_pct[i]) << "," << detail::pct1(b.mean_precision_pct[i])
            << "," << detail::pct1(b.mean_recall_pct[i]) << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace sigret
