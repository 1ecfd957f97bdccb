#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tlcr/image.hpp"

namespace tlcr {

/// PSNR is reported as 99 dB when the images are identical.
inline constexpr double psnr_cap_db = 99.0;

double mean_squared_error(const ImageBuffer& a, const ImageBuffer& b);

/// 10 log10(1 / MSE) on the [0, 1] scale, identical to
/// 20 log10(255) - 10 log10(MSE_255). Throws InvalidInput on a size mismatch.
double psnr(const ImageBuffer& a, const ImageBuffer& b);

/// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03,
/// dynamic range 1, averaged over every window position that lies fully inside
/// the image. Throws InvalidInput if the images differ in size or are smaller
/// than 11x11.
double ssim(const ImageBuffer& a, const ImageBuffer& b);

struct ImageQuality {
    std::string id;
    double psnr_db = 0.0;
    double ssim = 0.0;
};

struct QualityReport {
    std::vector<ImageQuality> per_image;
    double mean_psnr_db = 0.0;
    double mean_ssim = 0.0;
};

/// Per-image metrics sorted by id plus their arithmetic means.
QualityReport evaluate(const std::vector<std::string>& ids, const std::vector<ImageBuffer>& outputs,
                       const std::vector<ImageBuffer>& ground_truths);

/// Recomputes the means from `per_image` after sorting it by id.
void finalize(QualityReport& report);

/// CSV: `id,psnr_db,ssim` header, one row per image, then `mean,<psnr>,<ssim>`.
/// Values use six decimal places.
void write_csv(std::ostream& out, const QualityReport& report);
void write_csv(const std::filesystem::path& path, const QualityReport& report);
QualityReport read_csv(std::istream& in);
QualityReport read_csv(const std::filesystem::path& path);

} // namespace tlcr
