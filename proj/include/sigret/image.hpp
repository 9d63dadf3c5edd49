#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sigret/errors.hpp"

namespace sigret {

/// Row-major grayscale raster with intensities in [0, 1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    double at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
    double& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }

    bool operator==(const GrayImage&) const = default;
};

inline GrayImage make_image(int width, int height, double fill = 0.0) {
    if (width < 1 || height < 1) throw CorruptImage("image dimensions must be >= 1");
    return GrayImage{width, height, std::vector<double>(static_cast<std::size_t>(width) * height, fill)};
}

namespace detail {

// Reads the next PNM token, skipping whitespace and '#' comments.
inline std::string pnm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
        } else if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#') {
                tok.push_back(static_cast<char>(in.get()));
            }
            return tok;
        }
    }
    throw CorruptImage("unexpected end of file in PNM header");
}

inline int pnm_int(std::istream& in) {
    const std::string tok = pnm_token(in);
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw CorruptImage("malformed integer '" + tok + "' in PNM header");
    }
}

} // namespace detail

/// Loads a PGM (P2/P5) or PPM (P3/P6) file; color is reduced to Rec.601
/// luminance before normalization by maxval.
inline GrayImage load_image(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw FileNotFound("no such file: " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound("cannot open: " + path.string());

    std::string magic = detail::pnm_token(in);
    const bool ascii = (magic == "P2" || magic == "P3");
    const bool color = (magic == "P3" || magic == "P6");
    if (magic != "P2" && magic != "P5" && magic != "P3" && magic != "P6") {
        throw UnsupportedFormat("unsupported image format '" + magic + "' in " + path.string());
    }

    const int width = detail::pnm_int(in);
    const int height = detail::pnm_int(in);
    const int maxval = detail::pnm_int(in);
    if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
        throw CorruptImage("bad PNM header in " + path.string());
    }

    const std::size_t samples = static_cast<std::size_t>(width) * height * (color ? 3 : 1);
    std::vector<double> raw(samples);
    if (ascii) {
        for (std::size_t i = 0; i < samples; ++i) {
            const int v = detail::pnm_int(in);
            if (v < 0 || v > maxval) throw CorruptImage("sample out of range in " + path.string());
            raw[i] = v;
        }
    } else {
        in.get(); // single whitespace after maxval
        const int bytes_per = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> buf(samples * bytes_per);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (static_cast<std::size_t>(in.gcount()) != buf.size()) {
            throw CorruptImage("truncated pixel data in " + path.string());
        }
        for (std::size_t i = 0; i < samples; ++i) {
            int v = bytes_per == 1 ? buf[i] : (buf[2 * i] << 8) | buf[2 * i + 1];
            if (v > maxval) throw CorruptImage("sample out of range in " + path.string());
            raw[i] = v;
        }
    }

    GrayImage img = make_image(width, height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        double v = color ? 0.299 * raw[3 * i] + 0.587 * raw[3 * i + 1] + 0.114 * raw[3 * i + 2]
                         : raw[i];
        img.pixels[i] = v / maxval;
    }
    return img;
}

/// Writes binary PGM (P5), quantizing intensities to maxval levels.
inline void save_pgm(const GrayImage& img, const std::filesystem::path& path, int maxval = 255) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write: " + path.string());
    out << "P5\n" << img.width << " " << img.height << "\n" << maxval << "\n";
    for (double p : img.pixels) {
        const int v = static_cast<int>(std::lround(std::clamp(p, 0.0, 1.0) * maxval));
        out.put(static_cast<char>(v));
    }
    if (!out) throw IoError("write failed: " + path.string());
}

namespace detail {

// Exact box-filter resampling; fractional source pixels contribute by
// overlap area.
inline GrayImage area_resample(const GrayImage& src, int out_w, int out_h) {
    GrayImage dst = make_image(out_w, out_h);
    const double sx = static_cast<double>(src.width) / out_w;
    const double sy = static_cast<double>(src.height) / out_h;
    for (int r = 0; r < out_h; ++r) {
        const double y0 = r * sy, y1 = (r + 1) * sy;
        for (int c = 0; c < out_w; ++c) {
            const double x0 = c * sx, x1 = (c + 1) * sx;
            double acc = 0.0;
            for (int yr = static_cast<int>(std::floor(y0)); yr < std::ceil(y1); ++yr) {
                const double wy = std::min<double>(y1, yr + 1) - std::max<double>(y0, yr);
                if (wy <= 0) continue;
                for (int xc = static_cast<int>(std::floor(x0)); xc < std::ceil(x1); ++xc) {
                    const double wx = std::min<double>(x1, xc + 1) - std::max<double>(x0, xc);
                    if (wx <= 0) continue;
                    acc += wx * wy * src.at(std::min(yr, src.height - 1), std::min(xc, src.width - 1));
                }
            }
            dst.at(r, c) = acc / (sx * sy);
        }
    }
    return dst;
}

} // namespace detail

/// Fits an image into the canonical target x target analysis raster:
/// oversized inputs are area-average downscaled so the long axis equals
/// target, then everything is centered on a white (1.0) background.
inline GrayImage preprocess(const GrayImage& img, int target = 256) {
    if (img.width == target && img.height == target) return img;

    GrayImage scaled = img;
    if (img.width > target || img.height > target) {
        const double s = static_cast<double>(target) / std::max(img.width, img.height);
        const int nw = std::max(1, static_cast<int>(std::lround(img.width * s)));
        const int nh = std::max(1, static_cast<int>(std::lround(img.height * s)));
        scaled = detail::area_resample(img, nw, nh);
    }

    GrayImage out = make_image(target, target, 1.0);
    const int off_r = (target - scaled.height) / 2;
    const int off_c = (target - scaled.width) / 2;
    for (int r = 0; r < scaled.height; ++r) {
        for (int c = 0; c < scaled.width; ++c) {
            out.at(off_r + r, off_c + c) = scaled.at(r, c);
        }
    }
    return out;
}

} // namespace sigret
