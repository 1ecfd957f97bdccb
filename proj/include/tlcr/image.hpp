#pragma once

#include <span>
#include <vector>

namespace tlcr {

/// Single-channel raster with intensities restricted to [0, 1].
///
/// Row-major storage; once constructed the buffer is immutable, so it can be
/// shared freely between threads.
class ImageBuffer {
public:
    ImageBuffer() = default;
    ImageBuffer(int width, int height, double fill = 0.0);
    /// Throws InvalidInput when `data.size() != width * height` or any value
    /// lies outside [0, 1] (NaN included).
    ImageBuffer(int width, int height, std::vector<double> data);

    /// Builds a buffer from arbitrary reals, clamping each value into [0, 1].
    static ImageBuffer clamped(int width, int height, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return data_.empty(); }
    std::size_t size() const noexcept { return data_.size(); }

    double operator()(int x, int y) const noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    std::span<const double> data() const noexcept { return data_; }
    std::span<const double> row(int y) const noexcept {
        return std::span<const double>(data_).subspan(static_cast<std::size_t>(y) * width_, width_);
    }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Single-channel raster of signed, unbounded reals (high-frequency residuals,
/// accumulators).
class ResidualBuffer {
public:
    ResidualBuffer() = default;
    ResidualBuffer(int width, int height, double fill = 0.0);
    ResidualBuffer(int width, int height, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return data_.empty(); }
    std::size_t size() const noexcept { return data_.size(); }

    double operator()(int x, int y) const noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    double& operator()(int x, int y) noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    friend bool operator==(const ResidualBuffer&, const ResidualBuffer&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Three equally sized channels in [0, 1]. Channel meaning (RGB or YUV) is
/// up to the caller.
struct ColorImage {
    ImageBuffer c0;
    ImageBuffer c1;
    ImageBuffer c2;

    ColorImage() = default;
    ColorImage(ImageBuffer a, ImageBuffer b, ImageBuffer c);

    int width() const noexcept { return c0.width(); }
    int height() const noexcept { return c0.height(); }

    friend bool operator==(const ColorImage&, const ColorImage&) = default;
};

/// `hr - base`, elementwise. Both buffers must share dimensions.
ResidualBuffer subtract(const ImageBuffer& hr, const ImageBuffer& base);

/// clamp(base + residual, 0, 1).
ImageBuffer add_clamped(const ImageBuffer& base, const ResidualBuffer& residual);

/// Integer translation with edge replication: out(x, y) = in(x - dx, y - dy),
/// source coordinates clamped to the image.
ImageBuffer translate(const ImageBuffer& img, int dx, int dy);

} // namespace tlcr
