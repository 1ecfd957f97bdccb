#pragma once

#include "tlcr/image.hpp"

namespace tlcr {

/// Box-filter degradation: each output pixel is the mean of the matching
/// non-overlapping `scale` x `scale` block. Equivalent to a `scale` x `scale`
/// average smoothing followed by block-aligned decimation.
///
/// Throws InvalidInput if scale < 2 or either dimension is not a multiple of
/// `scale`.
ImageBuffer degrade(const ImageBuffer& hr, int scale);

/// Keys cubic convolution kernel (a = -0.5).
double keys_kernel(double x) noexcept;

/// Evaluates the separable cubic interpolant at continuous source coordinates
/// (x, y) in pixel units, pixel centers at integers, clamp-to-edge. Not clamped
/// to [0, 1].
double bicubic_sample(const ImageBuffer& img, double x, double y) noexcept;

/// Integer-factor bicubic enlargement with pixel-center alignment: output pixel
/// X samples source coordinate (X + 0.5) / scale - 0.5. Result clamped to [0, 1].
ImageBuffer bicubic_upscale(const ImageBuffer& lr, int scale);

} // namespace tlcr
