#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "sigret/errors.hpp"

namespace sigret {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

namespace detail {

// Iterative radix-2 Cooley-Tukey. Forward is unscaled; the inverse direction
// is also unscaled (callers apply 1/n where needed).
inline void fft_radix2(cplx* data, std::size_t n, std::size_t stride, bool inverse,
                       const std::vector<cplx>& roots) {
    if (n == 1) return;
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i * stride], data[j * stride]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = roots.size() * 2 / len; // roots holds n/2 forward roots
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx w = roots[k * step];
                if (inverse) w = std::conj(w);
                cplx& a = data[(i + k) * stride];
                cplx& b = data[(i + k + len / 2) * stride];
                const cplx t = b * w;
                b = a - t;
                a += t;
            }
        }
    }
}

inline std::vector<cplx> fft_roots(std::size_t n) {
    std::vector<cplx> roots(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        roots[k] = cplx(std::cos(ang), std::sin(ang));
    }
    return roots;
}

} // namespace detail

/// In-place unscaled FFT of a power-of-two-length vector.
inline void fft(std::vector<cplx>& x, bool inverse = false) {
    if (!is_pow2(x.size())) throw BadDimensions("fft length must be a power of two");
    const auto roots = detail::fft_roots(x.size());
    detail::fft_radix2(x.data(), x.size(), 1, inverse, roots);
}

/// In-place unscaled 2-D FFT of a rows x cols row-major grid; both dims must
/// be powers of two.
inline void fft2(std::vector<cplx>& grid, std::size_t rows, std::size_t cols, bool inverse = false) {
    if (grid.size() != rows * cols) throw BadDimensions("fft2 grid size mismatch");
    if (!is_pow2(rows) || !is_pow2(cols)) throw BadDimensions("fft2 dims must be powers of two");
    const auto row_roots = detail::fft_roots(cols);
    const auto col_roots = detail::fft_roots(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        detail::fft_radix2(grid.data() + r * cols, cols, 1, inverse, row_roots);
    }
    for (std::size_t c = 0; c < cols; ++c) {
        detail::fft_radix2(grid.data() + c, rows, cols, inverse, col_roots);
    }
}

} // namespace sigret
