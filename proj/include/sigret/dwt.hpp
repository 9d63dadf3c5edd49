#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "sigret/errors.hpp"
#include "sigret/image.hpp"

namespace sigret {

enum class Orientation { approx, horizontal, vertical, diagonal };

inline const char* to_string(Orientation o) {
    switch (o) {
        case Orientation::approx: return "approx";
        case Orientation::horizontal: return "horizontal";
        case Orientation::vertical: return "vertical";
        case Orientation::diagonal: return "diagonal";
    }
    return "?";
}

/// One frequency/orientation-localized coefficient grid. `level` is the
/// decomposition level for DWT bands and the scale index for curvelet bands;
/// `direction` is the curvelet wedge index (0 for DWT).
struct Subband {
    int rows = 0;
    int cols = 0;
    std::vector<double> coeffs;
    int level = 0;
    Orientation orientation = Orientation::approx;
    int direction = 0;
};

/// Output of an N-level separable 2-D DWT: 3N+1 bands in canonical order
/// [LL_N, LH_N, HL_N, HH_N, LH_{N-1}, ..., HH_1].
struct WaveletPyramid {
    int levels = 0;
    std::string wavelet;
    std::vector<Subband> subbands;
};

struct WaveletFilters {
    std::vector<double> lo;
    std::vector<double> hi;
};

/// Orthonormal analysis filters by identifier ("haar", "db4").
inline WaveletFilters wavelet_filters(const std::string& name) {
    std::vector<double> lo;
    if (name == "haar") {
        const double s = std::numbers::sqrt2 / 2.0;
        lo = {s, s};
    } else if (name == "db4") {
        lo = {0.23037781330885523, 0.71484657055254153, 0.63088076792959036,
              -0.02798376941698385, -0.18703481171888114, 0.03084138183598697,
              0.03288301166698295, -0.01059740178499728};
    } else {
        throw UnknownWavelet("unknown wavelet '" + name + "'");
    }
    WaveletFilters f;
    f.lo = lo;
    f.hi.resize(lo.size());
    for (std::size_t n = 0; n < lo.size(); ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        f.hi[n] = sign * lo[lo.size() - 1 - n];
    }
    return f;
}

namespace detail {

// Periodized analysis of one row/column: a[k] = sum_n f[n] x[(2k+n) mod L].
inline void analyze_1d(const double* x, std::size_t len, std::size_t stride,
                       const WaveletFilters& f, double* approx, double* det,
                       std::size_t out_stride) {
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) {
        double a = 0.0, d = 0.0;
        for (std::size_t n = 0; n < f.lo.size(); ++n) {
            const double v = x[((2 * k + n) % len) * stride];
            a += f.lo[n] * v;
            d += f.hi[n] * v;
        }
        approx[k * out_stride] = a;
        det[k * out_stride] = d;
    }
}

// Transpose of analyze_1d: x[m] += sum over k of f[(m-2k) mod L] c[k].
inline void synthesize_1d(const double* approx, const double* det, std::size_t half,
                          std::size_t in_stride, const WaveletFilters& f, double* x,
                          std::size_t stride) {
    const std::size_t len = half * 2;
    for (std::size_t m = 0; m < len; ++m) x[m * stride] = 0.0;
    for (std::size_t k = 0; k < half; ++k) {
        for (std::size_t n = 0; n < f.lo.size(); ++n) {
            const std::size_t m = (2 * k + n) % len;
            x[m * stride] += f.lo[n] * approx[k * in_stride] + f.hi[n] * det[k * in_stride];
        }
    }
}

struct QuadSplit {
    std::vector<double> ll, lh, hl, hh; // each (side/2)^2
};

// One separable analysis level on a side x side grid: rows first, then
// columns. LH carries horizontal edges (high-pass across rows).
inline QuadSplit analyze_level(const std::vector<double>& grid, std::size_t side,
                               const WaveletFilters& f) {
    const std::size_t half = side / 2;
    std::vector<double> lo_cols(half * side), hi_cols(half * side);
    for (std::size_t r = 0; r < side; ++r) {
        analyze_1d(grid.data() + r * side, side, 1, f, lo_cols.data() + r * half,
                   hi_cols.data() + r * half, 1);
    }
    QuadSplit q;
    q.ll.resize(half * half);
    q.lh.resize(half * half);
    q.hl.resize(half * half);
    q.hh.resize(half * half);
    for (std::size_t c = 0; c < half; ++c) {
        analyze_1d(lo_cols.data() + c, side, half, f, q.ll.data() + c, q.lh.data() + c, half);
        analyze_1d(hi_cols.data() + c, side, half, f, q.hl.data() + c, q.hh.data() + c, half);
    }
    return q;
}

inline std::vector<double> synthesize_level(const QuadSplit& q, std::size_t half,
                                            const WaveletFilters& f) {
    const std::size_t side = half * 2;
    std::vector<double> lo_cols(half * side), hi_cols(half * side);
    for (std::size_t c = 0; c < half; ++c) {
        synthesize_1d(q.ll.data() + c, q.lh.data() + c, half, half, f, lo_cols.data() + c, half);
        synthesize_1d(q.hl.data() + c, q.hh.data() + c, half, half, f, hi_cols.data() + c, half);
    }
    std::vector<double> grid(side * side);
    for (std::size_t r = 0; r < side; ++r) {
        synthesize_1d(lo_cols.data() + r * half, hi_cols.data() + r * half, half, 1, f,
                      grid.data() + r * side, 1);
    }
    return grid;
}

} // namespace detail

/// N-level separable 2-D DWT with periodic extension. Requires a square
/// input whose side is divisible by 2^levels.
inline WaveletPyramid dwt2_forward(const GrayImage& img, int levels, const std::string& wavelet) {
    if (levels < 1) throw DimensionNotDivisible("levels must be >= 1");
    if (img.width != img.height) throw DimensionNotDivisible("input must be square");
    const int side = img.width;
    if (side % (1 << levels) != 0) {
        throw DimensionNotDivisible("side " + std::to_string(side) + " not divisible by 2^" +
                                    std::to_string(levels));
    }
    const WaveletFilters f = wavelet_filters(wavelet);

    WaveletPyramid pyr;
    pyr.levels = levels;
    pyr.wavelet = wavelet;

    std::vector<double> approx = img.pixels;
    int cur = side;
    std::vector<Subband> details; // finest first, reversed at the end
    for (int lv = 1; lv <= levels; ++lv) {
        auto q = detail::analyze_level(approx, static_cast<std::size_t>(cur), f);
        cur /= 2;
        details.push_back({cur, cur, std::move(q.hh), lv, Orientation::diagonal, 0});
        details.push_back({cur, cur, std::move(q.hl), lv, Orientation::vertical, 0});
        details.push_back({cur, cur, std::move(q.lh), lv, Orientation::horizontal, 0});
        approx = std::move(q.ll);
    }
    pyr.subbands.push_back({cur, cur, std::move(approx), levels, Orientation::approx, 0});
    for (auto it = details.rbegin(); it != details.rend(); ++it) {
        pyr.subbands.push_back(std::move(*it));
    }
    return pyr;
}

/// Synthesis filter bank; exact inverse of dwt2_forward. Returns the
/// reconstructed raster (unclamped reals) as a GrayImage-shaped grid.
inline GrayImage dwt2_inverse(const WaveletPyramid& pyr) {
    if (pyr.levels < 1 || pyr.subbands.size() != static_cast<std::size_t>(3 * pyr.levels + 1)) {
        throw MalformedPyramid("expected 3N+1 subbands");
    }
    const WaveletFilters f = wavelet_filters(pyr.wavelet);

    const Subband& ll = pyr.subbands[0];
    if (ll.rows != ll.cols) throw MalformedPyramid("approximation band must be square");
    std::vector<double> approx = ll.coeffs;
    std::size_t half = static_cast<std::size_t>(ll.rows);

    for (int lv = pyr.levels; lv >= 1; --lv) {
        const std::size_t base = 1 + static_cast<std::size_t>(pyr.levels - lv) * 3;
        const Subband& lh = pyr.subbands[base];
        const Subband& hl = pyr.subbands[base + 1];
        const Subband& hh = pyr.subbands[base + 2];
        for (const Subband* b : {&lh, &hl, &hh}) {
            if (b->rows != static_cast<int>(half) || b->cols != static_cast<int>(half) ||
                b->coeffs.size() != half * half) {
                throw MalformedPyramid("detail band shape mismatch at level " + std::to_string(lv));
            }
        }
        if (approx.size() != half * half) throw MalformedPyramid("approximation shape mismatch");
        detail::QuadSplit q{approx, lh.coeffs, hl.coeffs, hh.coeffs};
        approx = detail::synthesize_level(q, half, f);
        half *= 2;
    }

    GrayImage out;
    out.width = out.height = static_cast<int>(half);
    out.pixels = std::move(approx);
    return out;
}

} // namespace sigret
