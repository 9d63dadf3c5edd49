#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigret/errors.hpp"
#include "sigret/retrieval.hpp"

namespace sigret {

inline constexpr int kDbFormatVersion = 1;

namespace detail {

inline nlohmann::json params_to_json(const TransformSpec& t) {
    nlohmann::json j;
    if (const auto* d = std::get_if<DwtParams>(&t)) {
        j["levels"] = d->levels;
        j["wavelet"] = d->wavelet;
    } else {
        const auto& c = std::get<CurveletParams>(t).config;
        j["scales"] = c.scales;
        j["angles"] = c.angles_at_second_coarsest;
        j["finest_wavelet"] = c.finest_is_wavelet;
    }
    return j;
}

inline TransformSpec params_from_json(const std::string& name, const nlohmann::json& j) {
    if (name == "dwt") {
        return DwtParams{j.at("levels").get<int>(), j.at("wavelet").get<std::string>()};
    }
    if (name == "curvelet") {
        return CurveletParams{CurveletConfig{j.at("scales").get<int>(), j.at("angles").get<int>(),
                                             j.at("finest_wavelet").get<bool>()}};
    }
    throw ParseError("unknown transform '" + name + "'");
}

} // namespace detail

/// Writes the database as line-oriented JSON: a header line followed by one
/// record line per entry, sorted by id. Output is byte-deterministic.
inline void save_db(const FeatureDB& db, const std::filesystem::path& path) {
    std::vector<const FeatureRecord*> order;
    order.reserve(db.records.size());
    for (const auto& r : db.records) order.push_back(&r);
    std::sort(order.begin(), order.end(),
              [](const FeatureRecord* a, const FeatureRecord* b) { return a->id < b->id; });

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write: " + path.string());

    nlohmann::json header;
    header["version"] = kDbFormatVersion;
    header["transform"] = transform_name(db.layout.transform);
    header["params"] = detail::params_to_json(db.layout.transform);
    header["dim"] = db.layout.dim();
    header["count"] = db.records.size();
    out << header.dump() << "\n";

    for (const FeatureRecord* r : order) {
        nlohmann::json line;
        line["id"] = r->id;
        line["writer"] = r->writer;
        line["source"] = r->source;
        line["vector"] = r->vector;
        out << line.dump() << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

inline FeatureDB load_db(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty database file: " + path.string());

    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad header: ") + e.what());
    }

    FeatureDB db;
    try {
        if (header.at("version").get<int>() != kDbFormatVersion) {
            throw VersionMismatch("unsupported db format version " +
                                  header.at("version").dump());
        }
        db.layout.transform = detail::params_from_json(header.at("transform").get<std::string>(),
                                                       header.at("params"));
        const int dim = header.at("dim").get<int>();
        if (dim < 2 || dim % 2 != 0) throw ParseError("header dim must be a positive even integer");
        db.layout.subband_count = dim / 2;
        const std::size_t count = header.at("count").get<std::size_t>();

        while (std::getline(in, line)) {
            if (line.empty()) continue;
            nlohmann::json j = nlohmann::json::parse(line);
            FeatureRecord rec;
            rec.id = j.at("id").get<std::string>();
            rec.writer = j.at("writer").get<std::string>();
            rec.source = j.at("source").get<std::string>();
            rec.vector = j.at("vector").get<std::vector<double>>();
            if (rec.vector.size() != static_cast<std::size_t>(dim)) {
                throw DimensionMismatch("record '" + rec.id + "' has dimension " +
                                        std::to_string(rec.vector.size()) + ", header says " +
                                        std::to_string(dim));
            }
            db.records.push_back(std::move(rec));
        }
        if (db.records.size() != count) {
            throw DimensionMismatch("header count " + std::to_string(count) + " but " +
                                    std::to_string(db.records.size()) + " records");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad database file: ") + e.what());
    }
    return db;
}

} // namespace sigret
