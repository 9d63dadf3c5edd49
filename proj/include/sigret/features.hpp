#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "sigret/curvelet.hpp"
#include "sigret/dwt.hpp"
#include "sigret/errors.hpp"
#include "sigret/image.hpp"

namespace sigret {

struct DwtParams {
    int levels = 3;
    std::string wavelet = "db4";

    bool operator==(const DwtParams&) const = default;
};

struct CurveletParams {
    CurveletConfig config;

    bool operator==(const CurveletParams&) const = default;
};

using TransformSpec = std::variant<DwtParams, CurveletParams>;

inline std::string transform_name(const TransformSpec& t) {
    return std::holds_alternative<DwtParams>(t) ? "dwt" : "curvelet";
}

/// Feature layout: which transform produced the vector and how many subbands
/// it had. Vectors are only comparable under identical layouts.
struct FeatureLayout {
    TransformSpec transform;
    int subband_count = 0;

    int dim() const { return 2 * subband_count; }
    bool operator==(const FeatureLayout&) const = default;
};

/// Per-subband statistics concatenated as [sigma_1..sigma_n, E_1..E_n].
struct FeatureVector {
    FeatureLayout layout;
    std::vector<double> values;
};

/// Mean absolute coefficient value of a subband.
inline double subband_energy(const Subband& band) {
    if (band.coeffs.empty()) throw EmptySubband("energy of empty subband");
    double sum = 0.0;
    for (double v : band.coeffs) sum += std::abs(v);
    return sum / static_cast<double>(band.coeffs.size());
}

/// Population standard deviation of a subband.
inline double subband_std(const Subband& band) {
    if (band.coeffs.empty()) throw EmptySubband("std of empty subband");
    const double n = static_cast<double>(band.coeffs.size());
    double mean = 0.0;
    for (double v : band.coeffs) mean += v;
    mean /= n;
    double acc = 0.0;
    for (double v : band.coeffs) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / n);
}

inline std::vector<Subband> transform_subbands(const GrayImage& img, const TransformSpec& spec) {
    if (const auto* d = std::get_if<DwtParams>(&spec)) {
        return std::move(dwt2_forward(img, d->levels, d->wavelet).subbands);
    }
    const auto& c = std::get<CurveletParams>(spec);
    return curvelet_subbands(fdct_forward(img, c.config));
}

/// Runs the chosen transform and assembles the combined feature vector in
/// canonical subband order.
inline FeatureVector extract_features(const GrayImage& img, const TransformSpec& spec) {
    const std::vector<Subband> bands = transform_subbands(img, spec);
    FeatureVector fv;
    fv.layout.transform = spec;
    fv.layout.subband_count = static_cast<int>(bands.size());
    fv.values.resize(2 * bands.size());
    for (std::size_t k = 0; k < bands.size(); ++k) {
        fv.values[k] = subband_std(bands[k]);
        fv.values[bands.size() + k] = subband_energy(bands[k]);
    }
    return fv;
}

} // namespace sigret
