#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sigret/errors.hpp"
#include "sigret/image.hpp"
#include "sigret/rng.hpp"

namespace sigret {

/// Deterministic synthetic corpus layout: each writer gets a base signature
/// (a few smooth dark strokes); samples jitter its control points, position
/// and stroke width.
struct SynthSpec {
    int writers = 16;
    int samples_per_writer = 12;
    std::uint64_t seed = 7;
    int side = 256;
    double point_jitter = 2.5;     // px, per control point
    double translate_jitter = 5.0; // px, whole-signature shift
    double width_jitter = 0.25;    // relative stroke-width variation
};

struct SynthSample {
    GrayImage image;
    std::string writer;
    std::string sample;
};

namespace detail {

struct Point {
    double x, y;
};

struct Stroke {
    std::vector<Point> ctrl;
    double width;
};

// Centripetal-free Catmull-Rom between p1 and p2.
inline Point catmull_rom(const Point& p0, const Point& p1, const Point& p2, const Point& p3,
                         double t) {
    const double t2 = t * t, t3 = t2 * t;
    auto blend = [&](double a, double b, double c, double d) {
        return 0.5 * ((2 * b) + (-a + c) * t + (2 * a - 5 * b + 4 * c - d) * t2 +
                      (-a + 3 * b - 3 * c + d) * t3);
    };
    return {blend(p0.x, p1.x, p2.x, p3.x), blend(p0.y, p1.y, p2.y, p3.y)};
}

// Stamps a soft disk of the given radius; ink darkens multiplicatively
// toward intensity (1 - darkness).
inline void stamp(GrayImage& img, double cx, double cy, double radius, double darkness) {
    const int r0 = std::max(0, static_cast<int>(std::floor(cy - radius - 1)));
    const int r1 = std::min(img.height - 1, static_cast<int>(std::ceil(cy + radius + 1)));
    const int c0 = std::max(0, static_cast<int>(std::floor(cx - radius - 1)));
    const int c1 = std::min(img.width - 1, static_cast<int>(std::ceil(cx + radius + 1)));
    for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
            const double d = std::hypot(c - cx, r - cy);
            const double cov = std::clamp(radius + 0.5 - d, 0.0, 1.0);
            const double v = 1.0 - darkness * cov;
            img.at(r, c) = std::min(img.at(r, c), v);
        }
    }
}

inline void draw_stroke(GrayImage& img, const Stroke& s, double darkness) {
    const auto& p = s.ctrl;
    if (p.size() < 2) return;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const Point& a = p[i == 0 ? 0 : i - 1];
        const Point& b = p[i];
        const Point& c = p[i + 1];
        const Point& d = p[std::min(i + 2, p.size() - 1)];
        const double seg_len = std::hypot(c.x - b.x, c.y - b.y);
        const int steps = std::max(2, static_cast<int>(seg_len * 3));
        for (int k = 0; k <= steps; ++k) {
            const Point q = catmull_rom(a, b, c, d, static_cast<double>(k) / steps);
            stamp(img, q.x, q.y, s.width, darkness);
        }
    }
}

// Base strokes for one writer, in canvas coordinates of the given side.
inline std::vector<Stroke> base_signature(std::uint64_t seed, int writer, int side) {
    SplitMix64 rng(mix_seed(seed, 0x5163 /* 'Qc' */ + static_cast<std::uint64_t>(writer)));
    const double margin = 0.18 * side;
    const double usable_w = side - 2 * margin;
    const int n_strokes = 2 + static_cast<int>(rng.below(3)); // 2..4
    std::vector<Stroke> strokes;
    for (int s = 0; s < n_strokes; ++s) {
        Stroke st;
        const int n_pts = 5 + static_cast<int>(rng.below(5)); // 5..9
        const double y_center = margin + rng.uniform() * (side - 2 * margin);
        const double amp = (0.05 + 0.15 * rng.uniform()) * side;
        for (int i = 0; i < n_pts; ++i) {
            const double x = margin + usable_w * (static_cast<double>(i) / (n_pts - 1)) +
                             rng.uniform(-0.03, 0.03) * side;
            const double y = y_center + rng.uniform(-1.0, 1.0) * amp;
            st.ctrl.push_back({x, y});
        }
        st.width = rng.uniform(1.6, 3.2) * side / 256.0;
        strokes.push_back(std::move(st));
    }
    return strokes;
}

} // namespace detail

inline void validate_spec(const SynthSpec& spec) {
    if (spec.writers < 2) throw BadSpec("writers must be >= 2");
    if (spec.samples_per_writer < 1) throw BadSpec("samples_per_writer must be >= 1");
    if (spec.side < 16) throw BadSpec("side must be >= 16");
    if (spec.point_jitter < 0 || spec.translate_jitter < 0 || spec.width_jitter < 0) {
        throw BadSpec("jitter amplitudes must be nonnegative");
    }
}

/// Renders one sample of one writer. Pure function of (spec, writer, sample).
inline GrayImage render_sample(const SynthSpec& spec, int writer, int sample) {
    validate_spec(spec);
    auto strokes = detail::base_signature(spec.seed, writer, spec.side);

    SplitMix64 rng(mix_seed(spec.seed, 0x9a3f7 + (static_cast<std::uint64_t>(writer) << 20) +
                                           static_cast<std::uint64_t>(sample)));
    const double jitter_scale = spec.side / 256.0;
    const double dx = rng.uniform(-1.0, 1.0) * spec.translate_jitter * jitter_scale;
    const double dy = rng.uniform(-1.0, 1.0) * spec.translate_jitter * jitter_scale;
    for (auto& st : strokes) {
        for (auto& p : st.ctrl) {
            p.x += dx + rng.uniform(-1.0, 1.0) * spec.point_jitter * jitter_scale;
            p.y += dy + rng.uniform(-1.0, 1.0) * spec.point_jitter * jitter_scale;
        }
        st.width *= 1.0 + rng.uniform(-1.0, 1.0) * spec.width_jitter;
        st.width = std::max(0.6, st.width);
    }

    GrayImage img = make_image(spec.side, spec.side, 1.0);
    const double darkness = 0.85;
    for (const auto& st : strokes) detail::draw_stroke(img, st, darkness);
    return img;
}

inline std::string writer_label(int writer) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "writer%02d", writer);
    return buf;
}

inline std::string sample_label(int sample) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "s%02d", sample);
    return buf;
}

/// Generates the full corpus in memory, writer-major then sample-minor.
inline std::vector<SynthSample> generate_corpus(const SynthSpec& spec) {
    validate_spec(spec);
    std::vector<SynthSample> out;
    out.reserve(static_cast<std::size_t>(spec.writers) * spec.samples_per_writer);
    for (int w = 0; w < spec.writers; ++w) {
        for (int s = 0; s < spec.samples_per_writer; ++s) {
            out.push_back({render_sample(spec, w, s), writer_label(w), sample_label(s)});
        }
    }
    return out;
}

/// Writes corpus/<writer>/<sample>.pgm files plus a manifest CSV
/// (path,writer,sample). Returns the manifest path.
inline std::filesystem::path write_corpus(const SynthSpec& spec,
                                          const std::filesystem::path& out_dir) {
    validate_spec(spec);
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path manifest_path = out_dir / "manifest.csv";
    std::ofstream manifest(manifest_path, std::ios::binary);
    if (!manifest) throw IoError("cannot write: " + manifest_path.string());
    manifest << "path,writer,sample\n";
    for (int w = 0; w < spec.writers; ++w) {
        const std::string writer = writer_label(w);
        std::filesystem::create_directories(out_dir / writer);
        for (int s = 0; s < spec.samples_per_writer; ++s) {
            const std::string sample = sample_label(s);
            const std::filesystem::path rel = std::filesystem::path(writer) / (sample + ".pgm");
            save_pgm(render_sample(spec, w, s), out_dir / rel);
            manifest << rel.generic_string() << "," << writer << "," << sample << "\n";
        }
    }
    if (!manifest) throw IoError("write failed: " + manifest_path.string());
    return manifest_path;
}

} // namespace sigret
