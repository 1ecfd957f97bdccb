#pragma once

#include <filesystem>
#include <variant>

#include "tlcr/image.hpp"

namespace tlcr {

using AnyImage = std::variant<ImageBuffer, ColorImage>;

/// Reads an 8-bit PNG, binary PGM (P5) or binary PPM (P6). Grey sources yield
/// an ImageBuffer, colour sources an RGB ColorImage. A code v maps to v / maxval
/// (v / 255 for 8-bit files). Alpha channels are dropped.
///
/// Throws IoError for unreadable files, ParseError for malformed PNM headers and
/// InvalidInput for unsupported bit depths.
AnyImage load_image(const std::filesystem::path& path);

/// Loads any supported image and reduces colour inputs to BT.601 luma.
ImageBuffer load_gray(const std::filesystem::path& path);

/// Loads any supported image; grey inputs are replicated into three channels.
ColorImage load_color(const std::filesystem::path& path);

/// Writes by extension: .png, .pgm (grey only) or .ppm (colour only).
/// Each value is clamped to [0, 1] and stored as round(v * 255).
void save_image(const std::filesystem::path& path, const ImageBuffer& img);
void save_image(const std::filesystem::path& path, const ColorImage& img);

/// Decodes an in-memory PGM/PPM byte stream.
AnyImage decode_pnm(std::span<const unsigned char> bytes);

/// 8-bit quantisation used by every writer.
unsigned char quantize(double v) noexcept;

} // namespace tlcr
