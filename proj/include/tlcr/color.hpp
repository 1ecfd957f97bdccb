#pragma once

#include "tlcr/image.hpp"

namespace tlcr {

// Full-range BT.601. Chroma channels are offset by 0.5 so that neutral
// grey maps to U = V = 0.5 and every channel stays inside [0, 1].

ColorImage rgb_to_yuv(const ColorImage& rgb);
ColorImage yuv_to_rgb(const ColorImage& yuv);

/// Y channel of an RGB image.
ImageBuffer luminance(const ColorImage& rgb);

} // namespace tlcr
