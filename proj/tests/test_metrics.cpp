#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "test_support.hpp"
#include "tlcr/error.hpp"
#include "tlcr/metrics.hpp"

namespace tlcr {
namespace {

using testing::random_image;
using testing::random_values;
using testing::scratch_dir;
using testing::smooth_image;

ImageBuffer offset_image(const ImageBuffer& a, double delta) {
    std::vector<double> v(a.data().begin(), a.data().end());
    for (auto& x : v) x += delta;
    return ImageBuffer(a.width(), a.height(), v);
}

// Direct per-window SSIM with an explicitly normalised 11x11 Gaussian.
double ssim_reference(const ImageBuffer& a, const ImageBuffer& b) {
    double w[11][11];
    double total = 0.0;
    for (int i = 0; i < 11; ++i) {
        for (int j = 0; j < 11; ++j) {
            w[i][j] = std::exp(-((i - 5) * (i - 5) + (j - 5) * (j - 5)) / (2 * 1.5 * 1.5));
            total += w[i][j];
        }
    }
    const double c1 = 0.01 * 0.01;
    const double c2 = 0.03 * 0.03;
    double sum = 0.0;
    int count = 0;
    for (int y0 = 0; y0 + 11 <= a.height(); ++y0) {
        for (int x0 = 0; x0 + 11 <= a.width(); ++x0) {
            double ma = 0, mb = 0;
            for (int i = 0; i < 11; ++i)
                for (int j = 0; j < 11; ++j) {
                    ma += w[i][j] / total * a(x0 + j, y0 + i);
                    mb += w[i][j] / total * b(x0 + j, y0 + i);
                }
            double va = 0, vb = 0, cov = 0;
            for (int i = 0; i < 11; ++i)
                for (int j = 0; j < 11; ++j) {
                    const double da = a(x0 + j, y0 + i) - ma;
                    const double db = b(x0 + j, y0 + i) - mb;
                    va += w[i][j] / total * da * da;
                    vb += w[i][j] / total * db * db;
                    cov += w[i][j] / total * da * db;
                }
            sum += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
            ++count;
        }
    }
    return sum / count;
}

TEST(Psnr, IdenticalImagesAreCapped) {
    const auto a = random_image(20, 20, 1);
    EXPECT_EQ(psnr(a, a), 99.0);
}

TEST(Psnr, UniformOneCodeDifference) {
    const auto a = ImageBuffer(16, 16, 0.5);
    EXPECT_NEAR(psnr(a, offset_image(a, 1.0 / 255.0)), 48.13, 0.01);
    EXPECT_NEAR(psnr(a, offset_image(a, 1.0 / 255.0)), 20.0 * std::log10(255.0), 1e-9);
}

TEST(Psnr, MatchesDirectFormula) {
    const auto a = random_image(31, 17, 2);
    const auto b = random_image(31, 17, 3);
    double se = 0.0;
    for (int y = 0; y < 17; ++y)
        for (int x = 0; x < 31; ++x) se += (a(x, y) - b(x, y)) * (a(x, y) - b(x, y));
    const double mse = se / (31 * 17);
    EXPECT_NEAR(mean_squared_error(a, b), mse, 1e-15);
    EXPECT_NEAR(psnr(a, b), 10.0 * std::log10(1.0 / mse), 1e-9);
    EXPECT_NEAR(psnr(a, b), 20.0 * std::log10(255.0) - 10.0 * std::log10(mse * 255.0 * 255.0), 1e-9);
}

TEST(Psnr, MonotoneInError) {
    const auto a = ImageBuffer(16, 16, 0.5);
    double prev = 1e9;
    for (double d : {0.001, 0.01, 0.05, 0.2}) {
        const double p = psnr(a, offset_image(a, d));
        EXPECT_LT(p, prev);
        prev = p;
    }
}

TEST(Psnr, SizeMismatch) {
    EXPECT_THROW(psnr(ImageBuffer(4, 4), ImageBuffer(4, 5)), InvalidInput);
}

TEST(Ssim, SelfSimilarity) {
    const auto a = random_image(40, 30, 4);
    EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);
}

TEST(Ssim, InvertedImageMatchesReference) {
    const auto a = random_image(24, 19, 5);
    std::vector<double> inv(a.size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 - a.data()[i];
    const ImageBuffer b(24, 19, inv);
    EXPECT_NEAR(ssim(a, b), ssim_reference(a, b), 1e-12);
    EXPECT_LT(ssim(a, b), 0.0);
}

TEST(Ssim, RandomPairsMatchReferenceAndAreSymmetric) {
    for (std::uint64_t s = 10; s < 20; ++s) {
        const auto a = random_image(23, 21, s);
        const auto b = smooth_image(23, 21, static_cast<double>(s));
        const double ab = ssim(a, b);
        EXPECT_NEAR(ab, ssim_reference(a, b), 1e-12);
        EXPECT_NEAR(ab, ssim(b, a), 1e-12);
        EXPECT_GE(ab, -1.0);
        EXPECT_LE(ab, 1.0);
    }
}

TEST(Ssim, TooSmall) {
    EXPECT_THROW(ssim(ImageBuffer(10, 20), ImageBuffer(10, 20)), InvalidInput);
    EXPECT_THROW(ssim(ImageBuffer(20, 20), ImageBuffer(20, 21)), InvalidInput);
}

TEST(Metrics, NoiseDecreasesBothMetrics) {
    const auto clean = smooth_image(64, 48);
    const auto noise = random_values(clean.size(), 99, -1.0, 1.0);
    double prev_p = 1e9;
    double prev_s = 2.0;
    for (double amp : {0.01, 0.02, 0.05}) {
        std::vector<double> v(clean.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = clean.data()[i] + amp * noise[i];
        const ImageBuffer noisy(64, 48, v);
        const double p = psnr(clean, noisy);
        const double s = ssim(clean, noisy);
        EXPECT_LT(p, prev_p);
        EXPECT_LT(s, prev_s);
        prev_p = p;
        prev_s = s;
    }
}

TEST(Evaluate, MeansAndOrdering) {
    const auto t1 = random_image(16, 16, 1);
    const auto t2 = random_image(16, 16, 2);
    const auto o1 = offset_image(ImageBuffer(16, 16, 0.5), 0.01);
    const auto single = evaluate({"x"}, {t1}, {t1});
    EXPECT_EQ(single.mean_psnr_db, single.per_image[0].psnr_db);
    EXPECT_EQ(single.mean_ssim, single.per_image[0].ssim);

    const auto r = evaluate({"b", "a"}, {o1, t2}, {ImageBuffer(16, 16, 0.5), t1});
    ASSERT_EQ(r.per_image.size(), 2u);
    EXPECT_EQ(r.per_image[0].id, "a");
    EXPECT_EQ(r.per_image[1].id, "b");
    EXPECT_NEAR(r.mean_psnr_db, (r.per_image[0].psnr_db + r.per_image[1].psnr_db) / 2, 1e-12);
    EXPECT_NEAR(r.mean_ssim, (r.per_image[0].ssim + r.per_image[1].ssim) / 2, 1e-12);
    EXPECT_THROW(evaluate({"a"}, {t1, t2}, {t1, t2}), InvalidInput);
}

TEST(Evaluate, CsvRoundTrip) {
    QualityReport r;
    r.per_image = {{"face_0001", 31.123456, 0.912345}, {"face_0002", 29.5, 0.87}, {"face_0000", 99.0, 1.0}};
    finalize(r);
    std::ostringstream out;
    write_csv(out, r);
    const std::string text = out.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "id,psnr_db,ssim");
    EXPECT_NE(text.find("face_0000,99.000000,1.000000\n"), std::string::npos);
    EXPECT_NE(text.find("\nmean,"), std::string::npos);

    std::istringstream in(text);
    const auto back = read_csv(in);
    ASSERT_EQ(back.per_image.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(back.per_image[i].id, r.per_image[i].id);
        EXPECT_EQ(back.per_image[i].psnr_db, r.per_image[i].psnr_db);
        EXPECT_EQ(back.per_image[i].ssim, r.per_image[i].ssim);
    }
    std::ostringstream again;
    write_csv(again, back);
    EXPECT_EQ(again.str(), text);

    const auto dir = scratch_dir("csv");
    write_csv(dir / "m.csv", r);
    std::ostringstream file_again;
    write_csv(file_again, read_csv(dir / "m.csv"));
    EXPECT_EQ(file_again.str(), text);
}

TEST(Evaluate, CsvParseErrors) {
    std::istringstream bad_header("name,psnr\n");
    EXPECT_THROW(read_csv(bad_header), ParseError);
    std::istringstream bad_number("id,psnr_db,ssim\na,notanumber,0.5\nmean,1,1\n");
    EXPECT_THROW(read_csv(bad_number), ParseError);
}

} // namespace
} // namespace tlcr
