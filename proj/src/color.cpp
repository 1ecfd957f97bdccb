#include "tlcr/color.hpp"

#include <vector>

namespace tlcr {

namespace {

constexpr double kr = 0.299;
constexpr double kg = 0.587;
constexpr double kb = 0.114;

} // namespace

ColorImage rgb_to_yuv(const ColorImage& rgb) {
    const auto r = rgb.c0.data();
    const auto g = rgb.c1.data();
    const auto b = rgb.c2.data();
    std::vector<double> y(r.size()), u(r.size()), v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double luma = kr * r[i] + kg * g[i] + kb * b[i];
        y[i] = luma;
        u[i] = 0.5 + (b[i] - luma) / (2.0 * (1.0 - kb));
        v[i] = 0.5 + (r[i] - luma) / (2.0 * (1.0 - kr));
    }
    const int w = rgb.width();
    const int h = rgb.height();
    return ColorImage(ImageBuffer::clamped(w, h, std::move(y)), ImageBuffer::clamped(w, h, std::move(u)),
                      ImageBuffer::clamped(w, h, std::move(v)));
}

ColorImage yuv_to_rgb(const ColorImage& yuv) {
    const auto y = yuv.c0.data();
    const auto u = yuv.c1.data();
    const auto v = yuv.c2.data();
    std::vector<double> r(y.size()), g(y.size()), b(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double red = y[i] + 2.0 * (1.0 - kr) * (v[i] - 0.5);
        const double blue = y[i] + 2.0 * (1.0 - kb) * (u[i] - 0.5);
        r[i] = red;
        b[i] = blue;
        g[i] = (y[i] - kr * red - kb * blue) / kg;
    }
    const int w = yuv.width();
    const int h = yuv.height();
    return ColorImage(ImageBuffer::clamped(w, h, std::move(r)), ImageBuffer::clamped(w, h, std::move(g)),
                      ImageBuffer::clamped(w, h, std::move(b)));
}

ImageBuffer luminance(const ColorImage& rgb) {
    const auto r = rgb.c0.data();
    const auto g = rgb.c1.data();
    const auto b = rgb.c2.data();
    std::vector<double> y(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        y[i] = kr * r[i] + kg * g[i] + kb * b[i];
    }
    return ImageBuffer::clamped(rgb.width(), rgb.height(), std::move(y));
}

} // namespace tlcr
