#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include "sigret/dwt.hpp"
#include "sigret/errors.hpp"
#include "sigret/fft.hpp"
#include "sigret/image.hpp"

namespace sigret {

/// Scale/orientation layout of the frequency-domain curvelet frame.
struct CurveletConfig {
    int scales = 5;
    int angles_at_second_coarsest = 16;
    bool finest_is_wavelet = true;

    bool operator==(const CurveletConfig&) const = default;
};

inline void validate_config(const CurveletConfig& cfg) {
    if (cfg.scales < 2) throw BadConfig("scales must be >= 2");
    if (cfg.angles_at_second_coarsest < 4 || cfg.angles_at_second_coarsest % 4 != 0) {
        throw BadConfig("angles_at_second_coarsest must be a positive multiple of 4");
    }
}

/// Orientation count per scale, coarsest first: 1 at the coarsest, the
/// configured count at the second-coarsest, doubling every second scale, and
/// an isotropic wavelet ring at the finest when finest_is_wavelet.
inline std::vector<int> orientation_schedule(const CurveletConfig& cfg) {
    validate_config(cfg);
    std::vector<int> sched(static_cast<std::size_t>(cfg.scales));
    sched[0] = 1;
    for (int j = 2; j <= cfg.scales; ++j) {
        sched[j - 1] = cfg.angles_at_second_coarsest << ((j - 2) / 2);
    }
    if (cfg.finest_is_wavelet) sched.back() = 1;
    return sched;
}

/// One (scale, orientation) coefficient tile; complex-valued.
struct CurveletTile {
    int scale = 0;       // 1 = coarsest
    int orientation = 0; // wedge index within the scale
    int rows = 0;
    int cols = 0;
    std::vector<cplx> coeffs;
};

struct CurveletCoeffs {
    CurveletConfig config;
    int source_side = 0;
    std::vector<CurveletTile> tiles;
};

/// Center angle (radians, in [0, 2pi)) of wedge l at a directional scale.
inline double wedge_center_angle(int orientation, int wedges_at_scale) {
    return 2.0 * std::numbers::pi * orientation / wedges_at_scale;
}

namespace detail {

// C^3 ramp from 1 to 0 as t goes 0 -> 1 (Meyer auxiliary polynomial).
inline double meyer_ramp(double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double nu = t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
    return std::cos(0.5 * std::numbers::pi * nu);
}

// Lowpass window for cut c: 1 inside 2c/3, 0 outside 4c/3.
inline double lowpass(double r, double c) {
    return meyer_ramp((r - 2.0 * c / 3.0) / (2.0 * c / 3.0));
}

// Frequency support and window samples of one tile, in fftshifted index
// space. The coefficient rectangle is the support bounding box padded up to
// power-of-two dims.
struct TilePlan {
    int scale = 0;
    int orientation = 0;
    int row0 = 0, col0 = 0;   // bbox origin (shifted coords)
    int rows = 0, cols = 0;   // bbox extent
    int frows = 0, fcols = 0; // padded FFT rectangle dims
    std::vector<double> window; // rows x cols, row-major
};

struct FramePlan {
    CurveletConfig config;
    int side = 0;
    std::vector<TilePlan> tiles;
};

// Builds the full tiling for one (side, config) pair. Windows form an exact
// partition of unity in squared magnitude:
//   radial:  B_1 = L_1, B_j = sqrt(L_j^2 - L_{j-1}^2), L_J = 1
//   angular: A_l(theta) = cos(L*d/4) on |d| <= 2pi/L, so adjacent wedges
//            contribute cos^2 + sin^2 = 1.
inline std::shared_ptr<const FramePlan> build_plan(int side, const CurveletConfig& cfg) {
    validate_config(cfg);
    if (!is_pow2(static_cast<std::size_t>(side)) || side < (1 << cfg.scales)) {
        throw BadDimensions("side must be a power of two >= 2^scales");
    }
    const int J = cfg.scales;
    const auto sched = orientation_schedule(cfg);

    auto plan = std::make_shared<FramePlan>();
    plan->config = cfg;
    plan->side = side;
    std::vector<int> first_tile(static_cast<std::size_t>(J));
    for (int j = 0; j < J; ++j) {
        first_tile[j] = static_cast<int>(plan->tiles.size());
        for (int l = 0; l < sched[j]; ++l) {
            TilePlan t;
            t.scale = j + 1;
            t.orientation = l;
            t.row0 = side;
            t.col0 = side;
            t.rows = -1;
            t.cols = -1;
            plan->tiles.push_back(std::move(t));
        }
    }

    // dyadic radial cuts in normalized frequency (Nyquist along an axis = 1)
    std::vector<double> cut(static_cast<std::size_t>(J));
    for (int j = 1; j < J; ++j) cut[j - 1] = std::ldexp(1.0, j - J);

    const double half = side / 2.0;
    const double two_pi = 2.0 * std::numbers::pi;

    struct Hit {
        int tile;
        int row, col;
        double w;
    };
    std::vector<Hit> hits;
    hits.reserve(static_cast<std::size_t>(side) * side * 3);

    for (int r = 0; r < side; ++r) {
        const double fy = r - half;
        for (int c = 0; c < side; ++c) {
            const double fx = c - half;
            const double rad = std::hypot(fx, fy) / half;
            const double theta = std::atan2(fy, fx); // [-pi, pi]
            for (int j = 1; j <= J; ++j) {
                const double lo = (j == 1) ? 0.0 : lowpass(rad, cut[j - 2]);
                const double hi = (j == J) ? 1.0 : lowpass(rad, cut[j - 1]);
                if (hi <= lo) continue; // outside ring j
                const double ring = std::sqrt(std::max(0.0, hi * hi - lo * lo));
                if (ring == 0.0) continue;
                const int nw = sched[j - 1];
                if (nw == 1) {
                    hits.push_back({first_tile[j - 1], r, c, ring});
                    continue;
                }
                const double spacing = two_pi / nw;
                const int l0 = static_cast<int>(std::floor(theta / spacing + 0.5));
                for (int dl = -1; dl <= 1; ++dl) {
                    const int l = ((l0 + dl) % nw + nw) % nw;
                    double d = theta - wedge_center_angle(l0 + dl, nw);
                    if (std::abs(d) >= spacing) continue;
                    const double a = std::cos(0.25 * nw * d);
                    if (a == 0.0) continue;
                    hits.push_back({first_tile[j - 1] + l, r, c, ring * a});
                }
            }
        }
    }

    for (const Hit& h : hits) {
        TilePlan& t = plan->tiles[static_cast<std::size_t>(h.tile)];
        t.row0 = std::min(t.row0, h.row);
        t.col0 = std::min(t.col0, h.col);
        t.rows = std::max(t.rows, h.row);
        t.cols = std::max(t.cols, h.col);
    }
    for (TilePlan& t : plan->tiles) {
        if (t.rows < t.row0) throw BadConfig("empty curvelet tile; side too small for schedule");
        t.rows = t.rows - t.row0 + 1;
        t.cols = t.cols - t.col0 + 1;
        t.frows = static_cast<int>(next_pow2(static_cast<std::size_t>(t.rows)));
        t.fcols = static_cast<int>(next_pow2(static_cast<std::size_t>(t.cols)));
        t.window.assign(static_cast<std::size_t>(t.rows) * t.cols, 0.0);
    }
    for (const Hit& h : hits) {
        TilePlan& t = plan->tiles[static_cast<std::size_t>(h.tile)];
        t.window[static_cast<std::size_t>(h.row - t.row0) * t.cols + (h.col - t.col0)] += h.w;
    }
    return plan;
}

inline std::shared_ptr<const FramePlan> plan_for(int side, const CurveletConfig& cfg) {
    using Key = std::tuple<int, int, int, bool>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const FramePlan>> cache;
    const Key key{side, cfg.scales, cfg.angles_at_second_coarsest, cfg.finest_is_wavelet};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto plan = build_plan(side, cfg);
    cache.emplace(key, plan);
    return plan;
}

// natural FFT index -> fftshifted index
inline std::size_t shifted_index(int r, int c, int side) {
    const int sr = (r + side / 2) % side;
    const int sc = (c + side / 2) % side;
    return static_cast<std::size_t>(sr) * side + sc;
}

} // namespace detail

/// Frequency-wrapping curvelet analysis: FFT, smooth polar-wedge windowing
/// obeying the parabolic angle schedule, per-wedge inverse FFT. The window
/// family is a tight frame, so Parseval holds to machine precision.
inline CurveletCoeffs fdct_forward(const GrayImage& img, const CurveletConfig& cfg) {
    if (img.width != img.height) throw BadDimensions("input must be square");
    const int side = img.width;
    auto plan = detail::plan_for(side, cfg);

    // orthonormal-scaled spectrum, fftshifted
    std::vector<cplx> spec(img.pixels.begin(), img.pixels.end());
    fft2(spec, static_cast<std::size_t>(side), static_cast<std::size_t>(side));
    std::vector<cplx> shifted(spec.size());
    const double inv_n = 1.0 / side;
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            shifted[detail::shifted_index(r, c, side)] = spec[static_cast<std::size_t>(r) * side + c] * inv_n;
        }
    }

    CurveletCoeffs out;
    out.config = cfg;
    out.source_side = side;
    out.tiles.reserve(plan->tiles.size());
    for (const auto& tp : plan->tiles) {
        CurveletTile tile;
        tile.scale = tp.scale;
        tile.orientation = tp.orientation;
        tile.rows = tp.frows;
        tile.cols = tp.fcols;
        tile.coeffs.assign(static_cast<std::size_t>(tp.frows) * tp.fcols, cplx{});
        for (int r = 0; r < tp.rows; ++r) {
            for (int c = 0; c < tp.cols; ++c) {
                const double w = tp.window[static_cast<std::size_t>(r) * tp.cols + c];
                if (w == 0.0) continue;
                tile.coeffs[static_cast<std::size_t>(r) * tp.fcols + c] =
                    w * shifted[static_cast<std::size_t>(tp.row0 + r) * side + (tp.col0 + c)];
            }
        }
        fft2(tile.coeffs, static_cast<std::size_t>(tp.frows), static_cast<std::size_t>(tp.fcols), true);
        const double scale = 1.0 / std::sqrt(static_cast<double>(tp.frows) * tp.fcols);
        for (cplx& v : tile.coeffs) v *= scale;
        out.tiles.push_back(std::move(tile));
    }
    return out;
}

/// Adjoint of fdct_forward; exact inverse for the tight frame.
inline GrayImage fdct_inverse(const CurveletCoeffs& coeffs) {
    const int side = coeffs.source_side;
    if (side < 2) throw MalformedCoeffs("bad source_side");
    auto plan = detail::plan_for(side, coeffs.config);
    if (coeffs.tiles.size() != plan->tiles.size()) {
        throw MalformedCoeffs("tile count does not match config schedule");
    }

    std::vector<cplx> shifted(static_cast<std::size_t>(side) * side, cplx{});
    for (std::size_t i = 0; i < plan->tiles.size(); ++i) {
        const auto& tp = plan->tiles[i];
        const auto& tile = coeffs.tiles[i];
        if (tile.rows != tp.frows || tile.cols != tp.fcols ||
            tile.coeffs.size() != static_cast<std::size_t>(tp.frows) * tp.fcols) {
            throw MalformedCoeffs("tile shape mismatch at scale " + std::to_string(tp.scale));
        }
        std::vector<cplx> spec = tile.coeffs;
        fft2(spec, static_cast<std::size_t>(tp.frows), static_cast<std::size_t>(tp.fcols));
        const double scale = 1.0 / std::sqrt(static_cast<double>(tp.frows) * tp.fcols);
        for (int r = 0; r < tp.rows; ++r) {
            for (int c = 0; c < tp.cols; ++c) {
                const double w = tp.window[static_cast<std::size_t>(r) * tp.cols + c];
                if (w == 0.0) continue;
                shifted[static_cast<std::size_t>(tp.row0 + r) * side + (tp.col0 + c)] +=
                    w * scale * spec[static_cast<std::size_t>(r) * tp.fcols + c];
            }
        }
    }

    std::vector<cplx> spec(shifted.size());
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            spec[static_cast<std::size_t>(r) * side + c] = shifted[detail::shifted_index(r, c, side)];
        }
    }
    fft2(spec, static_cast<std::size_t>(side), static_cast<std::size_t>(side), true);

    GrayImage out;
    out.width = out.height = side;
    out.pixels.resize(spec.size());
    const double inv_n = 1.0 / side; // combined with the unscaled inverse FFT: 1/N^2 total
    for (std::size_t i = 0; i < spec.size(); ++i) out.pixels[i] = spec[i].real() * inv_n;
    return out;
}

/// Flattens tiles into canonical order (scale-major, orientation-minor,
/// coarsest first), taking complex magnitude so downstream energy/std statistics operate
/// on real values.
inline std::vector<Subband> curvelet_subbands(const CurveletCoeffs& coeffs) {
    std::vector<Subband> bands;
    bands.reserve(coeffs.tiles.size());
    for (const auto& tile : coeffs.tiles) {
        Subband b;
        b.rows = tile.rows;
        b.cols = tile.cols;
        b.level = tile.scale;
        b.orientation = Orientation::approx;
        b.direction = tile.orientation;
        b.coeffs.resize(tile.coeffs.size());
        for (std::size_t i = 0; i < tile.coeffs.size(); ++i) b.coeffs[i] = std::abs(tile.coeffs[i]);
        bands.push_back(std::move(b));
    }
    return bands;
}

} // namespace sigret
