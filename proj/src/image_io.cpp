#include "tlcr/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "tlcr/color.hpp"
#include "tlcr/error.hpp"

namespace tlcr {

namespace fs = std::filesystem;

namespace {

std::string lower_extension(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

std::vector<unsigned char> read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

void write_bytes(const fs::path& path, std::span<const unsigned char> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

class PnmReader {
public:
    explicit PnmReader(std::span<const unsigned char> bytes) : bytes_(bytes) {}

    std::size_t offset() const { return pos_; }

    void skip_whitespace_and_comments() {
        while (pos_ < bytes_.size()) {
            const unsigned char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long read_uint(const char* field) {
        skip_whitespace_and_comments();
        const std::size_t start = pos_;
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) {
                throw ParseError(std::string("PNM ") + field + " too large", start);
            }
            ++pos_;
        }
        if (pos_ == start) {
            throw ParseError(std::string("PNM header: expected ") + field, start);
        }
        return value;
    }

    std::span<const unsigned char> bytes_;
    std::size_t pos_ = 0;
};

ImageBuffer channel_from_bytes(int w, int h, const unsigned char* src, int stride, int maxval) {
    std::vector<double> data(static_cast<std::size_t>(w) * h);
    for (std::size_t i = 0; i < data.size(); ++i) {
        data[i] = static_cast<double>(src[i * stride]) / maxval;
    }
    return ImageBuffer::clamped(w, h, std::move(data));
}

AnyImage load_png(const fs::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
        const std::string msg = image.message;
        png_image_free(&image);
        if (!fs::exists(path)) {
            throw IoError("cannot open " + path.string() + " for reading");
        }
        throw IoError("cannot decode PNG " + path.string() + ": " + msg);
    }
    if (image.format & PNG_FORMAT_FLAG_LINEAR) {
        png_image_free(&image);
        throw InvalidInput("unsupported bit depth in " + path.string() + ": only 8-bit PNG is supported");
    }
    const bool colour = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = colour ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const int w = static_cast<int>(image.width);
    const int h = static_cast<int>(image.height);
    std::vector<unsigned char> pixels(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw IoError("cannot decode PNG " + path.string() + ": " + msg);
    }
    if (!colour) {
        return channel_from_bytes(w, h, pixels.data(), 1, 255);
    }
    return ColorImage(channel_from_bytes(w, h, pixels.data(), 3, 255),
                      channel_from_bytes(w, h, pixels.data() + 1, 3, 255),
                      channel_from_bytes(w, h, pixels.data() + 2, 3, 255));
}

void save_png(const fs::path& path, int w, int h, bool colour, const std::vector<unsigned char>& pixels) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(w);
    image.height = static_cast<png_uint_32>(h);
    image.format = colour ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, pixels.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw IoError("cannot write PNG " + path.string() + ": " + msg);
    }
}

std::vector<unsigned char> pnm_bytes(const char* magic, int w, int h, const std::vector<unsigned char>& pixels) {
    const std::string header = std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    std::vector<unsigned char> out(header.begin(), header.end());
    out.insert(out.end(), pixels.begin(), pixels.end());
    return out;
}

} // namespace

unsigned char quantize(double v) noexcept {
    const double c = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
    return static_cast<unsigned char>(std::lround(c * 255.0));
}

AnyImage decode_pnm(std::span<const unsigned char> bytes) {
    PnmReader reader(bytes);
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
        throw ParseError("not a binary PGM/PPM file (expected magic P5 or P6)", 0);
    }
    const bool colour = bytes[1] == '6';
    reader.pos_ = 2;
    const long w = reader.read_uint("width");
    const long h = reader.read_uint("height");
    const std::size_t maxval_offset = reader.offset();
    const long maxval = reader.read_uint("maxval");
    if (w <= 0 || h <= 0) {
        throw ParseError("PNM header: zero image dimension", maxval_offset);
    }
    if (maxval <= 0 || maxval > 65535) {
        throw ParseError("PNM header: maxval out of range", maxval_offset);
    }
    if (maxval > 255) {
        throw InvalidInput("unsupported bit depth: PNM maxval " + std::to_string(maxval) + " needs 16-bit samples");
    }
    if (reader.pos_ >= bytes.size() || !std::isspace(bytes[reader.pos_])) {
        throw ParseError("PNM header: expected single whitespace after maxval", reader.pos_);
    }
    ++reader.pos_;
    const int channels = colour ? 3 : 1;
    const std::size_t needed = static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * channels;
    if (bytes.size() - reader.pos_ < needed) {
        throw ParseError("PNM raster truncated: need " + std::to_string(needed) + " bytes", reader.pos_);
    }
    const unsigned char* raster = bytes.data() + reader.pos_;
    const int iw = static_cast<int>(w);
    const int ih = static_cast<int>(h);
    const int mv = static_cast<int>(maxval);
    if (!colour) {
        return channel_from_bytes(iw, ih, raster, 1, mv);
    }
    return ColorImage(channel_from_bytes(iw, ih, raster, 3, mv), channel_from_bytes(iw, ih, raster + 1, 3, mv),
                      channel_from_bytes(iw, ih, raster + 2, 3, mv));
}

AnyImage load_image(const fs::path& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".png") {
        return load_png(path);
    }
    const auto bytes = read_bytes(path);
    if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") {
        try {
            return decode_pnm(bytes);
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ": " + e.what(), e.offset());
        }
    }
    throw IoError("unsupported image format: " + path.string());
}

ImageBuffer load_gray(const fs::path& path) {
    AnyImage img = load_image(path);
    if (auto* gray = std::get_if<ImageBuffer>(&img)) {
        return std::move(*gray);
    }
    return luminance(std::get<ColorImage>(img));
}

ColorImage load_color(const fs::path& path) {
    AnyImage img = load_image(path);
    if (auto* colour = std::get_if<ColorImage>(&img)) {
        return std::move(*colour);
    }
    const auto& g = std::get<ImageBuffer>(img);
    return ColorImage(g, g, g);
}

void save_image(const fs::path& path, const ImageBuffer& img) {
    std::vector<unsigned char> pixels(img.size());
    std::transform(img.data().begin(), img.data().end(), pixels.begin(), quantize);
    const std::string ext = lower_extension(path);
    if (ext == ".png") {
        save_png(path, img.width(), img.height(), false, pixels);
    } else if (ext == ".pgm") {
        write_bytes(path, pnm_bytes("P5", img.width(), img.height(), pixels));
    } else {
        throw IoError("cannot save a grey image as " + path.string() + " (use .png or .pgm)");
    }
}

void save_image(const fs::path& path, const ColorImage& img) {
    std::vector<unsigned char> pixels(img.c0.size() * 3);
    for (std::size_t i = 0; i < img.c0.size(); ++i) {
        pixels[3 * i] = quantize(img.c0.data()[i]);
        pixels[3 * i + 1] = quantize(img.c1.data()[i]);
        pixels[3 * i + 2] = quantize(img.c2.data()[i]);
    }
    const std::string ext = lower_extension(path);
    if (ext == ".png") {
        save_png(path, img.width(), img.height(), true, pixels);
    } else if (ext == ".ppm") {
        write_bytes(path, pnm_bytes("P6", img.width(), img.height(), pixels));
    } else {
        throw IoError("cannot save a colour image as " + path.string() + " (use .png or .ppm)");
    }
}

} // namespace tlcr
