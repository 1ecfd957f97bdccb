#include "tlcr/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tlcr/error.hpp"

namespace tlcr {

namespace {

std::size_t checked_area(int width, int height) {
    if (width < 0 || height < 0) {
        throw InvalidInput("negative image dimensions " + std::to_string(width) + "x" + std::to_string(height));
    }
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

void check_length(int width, int height, std::size_t length) {
    if (checked_area(width, height) != length) {
        throw InvalidInput("buffer length " + std::to_string(length) + " does not match " + std::to_string(width) +
                           "x" + std::to_string(height));
    }
}

} // namespace

ImageBuffer::ImageBuffer(int width, int height, double fill)
    : width_(width), height_(height), data_(checked_area(width, height), fill) {
    if (!(fill >= 0.0 && fill <= 1.0)) {
        throw InvalidInput("image fill value outside [0, 1]");
    }
}

ImageBuffer::ImageBuffer(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_length(width, height, data_.size());
    for (double v : data_) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InvalidInput("image value outside [0, 1]: " + std::to_string(v));
        }
    }
}

ImageBuffer ImageBuffer::clamped(int width, int height, std::vector<double> data) {
    check_length(width, height, data.size());
    for (double& v : data) {
        v = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
    }
    return ImageBuffer(width, height, std::move(data));
}

ResidualBuffer::ResidualBuffer(int width, int height, double fill)
    : width_(width), height_(height), data_(checked_area(width, height), fill) {}

ResidualBuffer::ResidualBuffer(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_length(width, height, data_.size());
}

ColorImage::ColorImage(ImageBuffer a, ImageBuffer b, ImageBuffer c)
    : c0(std::move(a)), c1(std::move(b)), c2(std::move(c)) {
    if (c0.width() != c1.width() || c0.width() != c2.width() || c0.height() != c1.height() ||
        c0.height() != c2.height()) {
        throw InvalidInput("colour channels differ in size");
    }
}

ResidualBuffer subtract(const ImageBuffer& hr, const ImageBuffer& base) {
    if (hr.width() != base.width() || hr.height() != base.height()) {
        throw InvalidInput("subtract: dimension mismatch");
    }
    std::vector<double> out(hr.size());
    auto a = hr.data();
    auto b = base.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return ResidualBuffer(hr.width(), hr.height(), std::move(out));
}

ImageBuffer add_clamped(const ImageBuffer& base, const ResidualBuffer& residual) {
    if (base.width() != residual.width() || base.height() != residual.height()) {
        throw InvalidInput("add_clamped: dimension mismatch");
    }
    std::vector<double> out(base.size());
    auto a = base.data();
    auto r = residual.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a[i] + r[i];
    }
    return ImageBuffer::clamped(base.width(), base.height(), std::move(out));
}

ImageBuffer translate(const ImageBuffer& img, int dx, int dy) {
    const int w = img.width();
    const int h = img.height();
    std::vector<double> out(img.size());
    for (int y = 0; y < h; ++y) {
        const int sy = std::clamp(y - dy, 0, h - 1);
        for (int x = 0; x < w; ++x) {
            const int sx = std::clamp(x - dx, 0, w - 1);
            out[static_cast<std::size_t>(y) * w + x] = img(sx, sy);
        }
    }
    return ImageBuffer(w, h, std::move(out));
}

} // namespace tlcr
