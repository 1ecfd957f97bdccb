#include "tlcr/resample.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tlcr/error.hpp"

namespace tlcr {

namespace {

constexpr double keys_a = -0.5;

// Tap positions and weights for one output coordinate along one axis.
struct Taps {
    std::array<int, 4> index;
    std::array<double, 4> weight;
};

Taps taps_at(double u, int extent) {
    const double base = std::floor(u);
    const double frac = u - base;
    Taps t{};
    for (int k = 0; k < 4; ++k) {
        const int offset = k - 1;
        t.index[k] = std::clamp(static_cast<int>(base) + offset, 0, extent - 1);
        t.weight[k] = keys_kernel(frac - offset);
    }
    return t;
}

} // namespace

ImageBuffer degrade(const ImageBuffer& hr, int scale) {
    if (scale < 2) {
        throw InvalidInput("degrade: scale must be >= 2, got " + std::to_string(scale));
    }
    if (hr.empty() || hr.width() % scale != 0 || hr.height() % scale != 0) {
        throw InvalidInput("degrade: " + std::to_string(hr.width()) + "x" + std::to_string(hr.height()) +
                           " is not divisible by scale " + std::to_string(scale));
    }
    const int w = hr.width() / scale;
    const int h = hr.height() / scale;
    const double area = static_cast<double>(scale) * scale;
    std::vector<double> out(static_cast<std::size_t>(w) * h);
    for (int by = 0; by < h; ++by) {
        for (int bx = 0; bx < w; ++bx) {
            double sum = 0.0;
            for (int y = by * scale; y < (by + 1) * scale; ++y) {
                for (int x = bx * scale; x < (bx + 1) * scale; ++x) {
                    sum += hr(x, y);
                }
            }
            out[static_cast<std::size_t>(by) * w + bx] = sum / area;
        }
    }
    return ImageBuffer::clamped(w, h, std::move(out));
}

double keys_kernel(double x) noexcept {
    const double ax = std::abs(x);
    if (ax <= 1.0) {
        return ((keys_a + 2.0) * ax - (keys_a + 3.0)) * ax * ax + 1.0;
    }
    if (ax < 2.0) {
        return ((keys_a * ax - 5.0 * keys_a) * ax + 8.0 * keys_a) * ax - 4.0 * keys_a;
    }
    return 0.0;
}

double bicubic_sample(const ImageBuffer& img, double x, double y) noexcept {
    const Taps tx = taps_at(x, img.width());
    const Taps ty = taps_at(y, img.height());
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) {
        double row = 0.0;
        for (int i = 0; i < 4; ++i) {
            row += tx.weight[i] * img(tx.index[i], ty.index[j]);
        }
        acc += ty.weight[j] * row;
    }
    return acc;
}

ImageBuffer bicubic_upscale(const ImageBuffer& lr, int scale) {
    if (scale < 2) {
        throw InvalidInput("bicubic_upscale: scale must be >= 2, got " + std::to_string(scale));
    }
    if (lr.empty()) {
        throw InvalidInput("bicubic_upscale: empty image");
    }
    const int sw = lr.width();
    const int sh = lr.height();
    const int w = sw * scale;
    const int h = sh * scale;

    std::vector<Taps> col_taps(w);
    for (int x = 0; x < w; ++x) {
        col_taps[x] = taps_at((x + 0.5) / scale - 0.5, sw);
    }
    std::vector<Taps> row_taps(h);
    for (int y = 0; y < h; ++y) {
        row_taps[y] = taps_at((y + 0.5) / scale - 0.5, sh);
    }

    // Horizontal pass at source height, then vertical pass. Intermediate values
    // are left unclamped.
    std::vector<double> horizontal(static_cast<std::size_t>(w) * sh);
    for (int y = 0; y < sh; ++y) {
        for (int x = 0; x < w; ++x) {
            const Taps& t = col_taps[x];
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) {
                acc += t.weight[k] * lr(t.index[k], y);
            }
            horizontal[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        const Taps& t = row_taps[y];
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) {
                acc += t.weight[k] * horizontal[static_cast<std::size_t>(t.index[k]) * w + x];
            }
            out[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    return ImageBuffer::clamped(w, h, std::move(out));
}

} // namespace tlcr
