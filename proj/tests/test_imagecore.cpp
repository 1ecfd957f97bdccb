#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <fstream>
#include <string>

#include "test_support.hpp"
#include "tlcr/color.hpp"
#include "tlcr/error.hpp"
#include "tlcr/image_io.hpp"
#include "tlcr/resample.hpp"

namespace tlcr {
namespace {

using testing::random_image;
using testing::random_values;
using testing::scratch_dir;
using testing::smooth_image;

TEST(ImageBuffer, RejectsBadLengthAndRange) {
    EXPECT_THROW(ImageBuffer(2, 2, std::vector<double>(3, 0.0)), InvalidInput);
    EXPECT_THROW(ImageBuffer(1, 1, std::vector<double>{1.5}), InvalidInput);
    EXPECT_THROW(ImageBuffer(1, 1, std::vector<double>{-0.1}), InvalidInput);
    EXPECT_THROW(ImageBuffer(1, 1, std::vector<double>{std::nan("")}), InvalidInput);
    EXPECT_THROW(ImageBuffer(2, 2, 2.0), InvalidInput);
    EXPECT_NO_THROW(ImageBuffer(1, 2, std::vector<double>{0.0, 1.0}));
}

TEST(ImageBuffer, ClampedFactoryClamps) {
    const auto img = ImageBuffer::clamped(3, 1, {-1.0, 0.25, 7.0});
    EXPECT_EQ(img(0, 0), 0.0);
    EXPECT_EQ(img(1, 0), 0.25);
    EXPECT_EQ(img(2, 0), 1.0);
}

TEST(ImageBuffer, ResidualRoundTrip) {
    const auto hr = random_image(7, 5, 1);
    const auto base = random_image(7, 5, 2);
    const ResidualBuffer r = subtract(hr, base);
    for (int y = 0; y < 5; ++y) {
        for (int x = 0; x < 7; ++x) {
            EXPECT_EQ(r(x, y), hr(x, y) - base(x, y));
        }
    }
    const auto back = add_clamped(base, r);
    for (std::size_t i = 0; i < hr.size(); ++i) {
        EXPECT_NEAR(back.data()[i], hr.data()[i], 1e-15);
    }
    EXPECT_THROW(subtract(hr, random_image(5, 7, 3)), InvalidInput);
}

TEST(ImageBuffer, TranslateReplicatesEdges) {
    const ImageBuffer img(3, 2, std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
    const auto t = translate(img, 1, 1);
    EXPECT_EQ(t(0, 0), 0.1);
    EXPECT_EQ(t(1, 0), 0.1);
    EXPECT_EQ(t(2, 0), 0.2);
    EXPECT_EQ(t(0, 1), 0.1);
    EXPECT_EQ(t(2, 1), 0.2);
    EXPECT_EQ(translate(img, 0, 0), img);
    const auto back = translate(img, -2, 0);
    EXPECT_EQ(back(0, 1), 0.6);
    EXPECT_EQ(back(2, 1), 0.6);
}

TEST(Degrade, ConstantImage) {
    const auto out = degrade(ImageBuffer(16, 12, 0.5), 4);
    ASSERT_EQ(out.width(), 4);
    ASSERT_EQ(out.height(), 3);
    for (double v : out.data()) {
        EXPECT_EQ(v, 0.5);
    }
}

TEST(Degrade, SingleHotPixel) {
    std::vector<double> v(16, 0.0);
    v[15] = 1.0;
    const auto out = degrade(ImageBuffer(4, 4, v), 4);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out(0, 0), 1.0 / 16.0);
}

TEST(Degrade, MatchesNaiveBlockMean) {
    const auto hr = random_image(16, 16, 11);
    const auto out = degrade(hr, 4);
    for (int by = 0; by < 4; ++by) {
        for (int bx = 0; bx < 4; ++bx) {
            double sum = 0.0;
            for (int y = 4 * by; y < 4 * by + 4; ++y) {
                for (int x = 4 * bx; x < 4 * bx + 4; ++x) {
                    sum += hr(x, y);
                }
            }
            EXPECT_EQ(out(bx, by), sum / 16.0) << bx << "," << by;
        }
    }
}

TEST(Degrade, EqualsSmoothThenStride) {
    // 4x4 box filter anchored at each block's top-left, then stride-4 sampling.
    const auto hr = random_image(12, 8, 12);
    const auto out = degrade(hr, 4);
    for (int oy = 0; oy < 2; ++oy) {
        for (int ox = 0; ox < 3; ++ox) {
            double acc = 0.0;
            for (int dy = 0; dy < 4; ++dy) {
                for (int dx = 0; dx < 4; ++dx) {
                    acc += hr(4 * ox + dx, 4 * oy + dy) / 16.0;
                }
            }
            EXPECT_NEAR(out(ox, oy), acc, 1e-15);
        }
    }
}

TEST(Degrade, Linear) {
    const auto x = random_image(8, 8, 21);
    const auto y = random_image(8, 8, 22);
    const double a = 0.3;
    const double b = 0.6;
    std::vector<double> mix(64);
    for (std::size_t i = 0; i < 64; ++i) {
        mix[i] = a * x.data()[i] + b * y.data()[i];
    }
    const auto lhs = degrade(ImageBuffer(8, 8, mix), 2);
    const auto dx = degrade(x, 2);
    const auto dy = degrade(y, 2);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        EXPECT_NEAR(lhs.data()[i], a * dx.data()[i] + b * dy.data()[i], 1e-14);
    }
}

TEST(Degrade, RejectsBadArguments) {
    EXPECT_THROW(degrade(ImageBuffer(10, 8, 0.0), 4), InvalidInput);
    EXPECT_THROW(degrade(ImageBuffer(8, 10, 0.0), 4), InvalidInput);
    EXPECT_THROW(degrade(ImageBuffer(8, 8, 0.0), 1), InvalidInput);
}

TEST(Bicubic, KernelShape) {
    EXPECT_EQ(keys_kernel(0.0), 1.0);
    EXPECT_EQ(keys_kernel(1.0), 0.0);
    EXPECT_EQ(keys_kernel(2.0), 0.0);
    EXPECT_EQ(keys_kernel(-1.0), 0.0);
    EXPECT_EQ(keys_kernel(0.5), 0.5625);
    EXPECT_EQ(keys_kernel(1.5), -0.0625);
    // Partition of unity.
    for (double t : {0.0, 0.1, 0.37, 0.5, 0.9}) {
        EXPECT_NEAR(keys_kernel(t + 1) + keys_kernel(t) + keys_kernel(1 - t) + keys_kernel(2 - t), 1.0, 1e-15);
    }
}

TEST(Bicubic, ReproducesConstants) {
    const auto out = bicubic_upscale(ImageBuffer(5, 4, 0.3), 4);
    ASSERT_EQ(out.width(), 20);
    ASSERT_EQ(out.height(), 16);
    for (double v : out.data()) {
        EXPECT_NEAR(v, 0.3, 1e-15);
    }
}

TEST(Bicubic, InterpolatesNodes) {
    const auto img = random_image(9, 7, 31);
    for (int y = 0; y < 7; ++y) {
        for (int x = 0; x < 9; ++x) {
            EXPECT_NEAR(bicubic_sample(img, x, y), img(x, y), 1e-12);
        }
    }
    // With an odd factor, HR pixel 3i + 1 sits exactly on LR node i.
    const auto up = bicubic_upscale(img, 3);
    for (int y = 0; y < 7; ++y) {
        for (int x = 0; x < 9; ++x) {
            EXPECT_NEAR(up(3 * x + 1, 3 * y + 1), img(x, y), 1e-9);
        }
    }
}

TEST(Bicubic, TwoByTwoCheckerboard) {
    // Reference values from a scalar 2-D Keys (a = -0.5) evaluation with
    // clamp-to-edge, then clamped to [0, 1].
    const ImageBuffer img(2, 2, std::vector<double>{0, 1, 1, 0});
    const std::array<std::array<double, 4>, 4> expected{{
        {0.0, 0.161376953125, 0.838623046875, 1.0},
        {0.161376953125, 0.32373046875, 0.67626953125, 0.838623046875},
        {0.838623046875, 0.67626953125, 0.32373046875, 0.161376953125},
        {1.0, 0.838623046875, 0.161376953125, 0.0},
    }};
    const auto out = bicubic_upscale(img, 2);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
            EXPECT_NEAR(out(x, y), expected[y][x], 1e-12) << x << "," << y;
        }
    }
}

double scalar_keys(double x) {
    x = std::abs(x);
    if (x <= 1) return 1.5 * x * x * x - 2.5 * x * x + 1;
    if (x < 2) return -0.5 * x * x * x + 2.5 * x * x - 4 * x + 2;
    return 0;
}

TEST(Bicubic, MatchesNonSeparableOracle) {
    const auto img = random_image(6, 5, 41);
    const int s = 4;
    const auto out = bicubic_upscale(img, s);
    for (int Y = 0; Y < 5 * s; ++Y) {
        for (int X = 0; X < 6 * s; ++X) {
            const double u = (X + 0.5) / s - 0.5;
            const double v = (Y + 0.5) / s - 0.5;
            double acc = 0.0;
            for (int j = static_cast<int>(std::floor(v)) - 1; j <= static_cast<int>(std::floor(v)) + 2; ++j) {
                for (int i = static_cast<int>(std::floor(u)) - 1; i <= static_cast<int>(std::floor(u)) + 2; ++i) {
                    acc += scalar_keys(u - i) * scalar_keys(v - j) * img(std::clamp(i, 0, 5), std::clamp(j, 0, 4));
                }
            }
            EXPECT_NEAR(out(X, Y), std::clamp(acc, 0.0, 1.0), 1e-12);
        }
    }
}

TEST(Bicubic, TranslationEquivariantInterior) {
    const int s = 4;
    const auto img = random_image(12, 10, 51);
    const auto shifted = translate(img, 1, 0);
    const auto a = bicubic_upscale(img, s);
    const auto b = bicubic_upscale(shifted, s);
    // Interior: away from the clamped borders on both sides.
    for (int Y = 3 * s; Y < 7 * s; ++Y) {
        for (int X = 3 * s; X < 8 * s; ++X) {
            EXPECT_NEAR(b(X + s, Y), a(X, Y), 1e-9);
        }
    }
}

TEST(Bicubic, DegradeUpscaleConsistency) {
    const auto smooth = smooth_image(40, 32);
    const auto back = degrade(bicubic_upscale(smooth, 4), 4);
    double mae = 0.0;
    for (std::size_t i = 0; i < smooth.size(); ++i) {
        mae += std::abs(back.data()[i] - smooth.data()[i]);
    }
    EXPECT_LT(mae / smooth.size(), 0.02);
}

TEST(Bicubic, RejectsBadArguments) {
    EXPECT_THROW(bicubic_upscale(ImageBuffer(), 2), InvalidInput);
    EXPECT_THROW(bicubic_upscale(ImageBuffer(2, 2, 0.0), 1), InvalidInput);
}

ColorImage random_color(int w, int h, std::uint64_t seed) {
    return ColorImage(random_image(w, h, seed), random_image(w, h, seed + 1), random_image(w, h, seed + 2));
}

TEST(Color, GrayMapsToLuma) {
    for (double v : {0.0, 0.25, 0.5, 1.0}) {
        const ImageBuffer c(1, 1, v);
        const auto yuv = rgb_to_yuv(ColorImage(c, c, c));
        EXPECT_NEAR(yuv.c0(0, 0), v, 1e-12);
        EXPECT_NEAR(yuv.c1(0, 0), 0.5, 1e-12);
        EXPECT_NEAR(yuv.c2(0, 0), 0.5, 1e-12);
    }
}

TEST(Color, PureRedLuma) {
    const auto yuv = rgb_to_yuv(ColorImage(ImageBuffer(1, 1, 1.0), ImageBuffer(1, 1, 0.0), ImageBuffer(1, 1, 0.0)));
    EXPECT_NEAR(yuv.c0(0, 0), 0.299, 1e-12);
}

TEST(Color, RoundTrip) {
    const auto rgb = random_color(17, 9, 61);
    const auto back = yuv_to_rgb(rgb_to_yuv(rgb));
    for (std::size_t i = 0; i < rgb.c0.size(); ++i) {
        EXPECT_NEAR(back.c0.data()[i], rgb.c0.data()[i], 1e-6);
        EXPECT_NEAR(back.c1.data()[i], rgb.c1.data()[i], 1e-6);
        EXPECT_NEAR(back.c2.data()[i], rgb.c2.data()[i], 1e-6);
    }
}

TEST(Color, MismatchedChannelsRejected) {
    EXPECT_THROW(ColorImage(ImageBuffer(2, 2), ImageBuffer(2, 2), ImageBuffer(2, 3)), InvalidInput);
}

ImageBuffer quantized(const ImageBuffer& img) {
    std::vector<double> v(img.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = quantize(img.data()[i]) / 255.0;
    }
    return ImageBuffer(img.width(), img.height(), v);
}

TEST(ImageIo, SaveLoadGray) {
    const auto dir = scratch_dir("io_gray");
    const auto img = random_image(13, 7, 71);
    for (const char* name : {"a.png", "a.pgm"}) {
        save_image(dir / name, img);
        const auto back = load_gray(dir / name);
        ASSERT_EQ(back.width(), 13);
        ASSERT_EQ(back.height(), 7);
        for (std::size_t i = 0; i < img.size(); ++i) {
            EXPECT_LE(std::abs(back.data()[i] - img.data()[i]), 1.0 / 510.0 + 1e-15);
        }
        EXPECT_EQ(back, quantized(img));
    }
}

TEST(ImageIo, SaveLoadColor) {
    const auto dir = scratch_dir("io_color");
    const auto rgb = random_color(6, 5, 81);
    for (const char* name : {"c.png", "c.ppm"}) {
        save_image(dir / name, rgb);
        const AnyImage any = load_image(dir / name);
        ASSERT_TRUE(std::holds_alternative<ColorImage>(any));
        const auto& back = std::get<ColorImage>(any);
        EXPECT_EQ(back.c0, quantized(rgb.c0));
        EXPECT_EQ(back.c1, quantized(rgb.c1));
        EXPECT_EQ(back.c2, quantized(rgb.c2));
    }
    EXPECT_THROW(save_image(dir / "g.pgm", rgb), IoError);
    EXPECT_THROW(save_image(dir / "g.ppm", random_image(2, 2, 1)), IoError);
}

std::vector<unsigned char> bytes(const std::string& s) { return {s.begin(), s.end()}; }

TEST(ImageIo, PgmDecoding) {
    auto data = bytes("P5\n# comment\n2 1\n255\n");
    data.push_back(128);
    data.push_back(255);
    const auto img = std::get<ImageBuffer>(decode_pnm(data));
    EXPECT_EQ(img(0, 0), 128.0 / 255.0);
    EXPECT_EQ(img(1, 0), 1.0);

    auto low = bytes("P5 1 1 15 ");
    low.push_back(5);
    EXPECT_EQ(std::get<ImageBuffer>(decode_pnm(low))(0, 0), 5.0 / 15.0);
}

TEST(ImageIo, MalformedHeaderNamesOffset) {
    const auto data = bytes("P5\n2 x\n255\n");
    try {
        decode_pnm(data);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 5u);
        EXPECT_NE(std::string(e.what()).find("offset 5"), std::string::npos) << e.what();
    }
    EXPECT_THROW(decode_pnm(bytes("P9\n1 1\n255\n")), ParseError);
    EXPECT_THROW(decode_pnm(bytes("P5\n2 2\n255\n\x01")), ParseError);
}

TEST(ImageIo, SixteenBitRejected) {
    EXPECT_THROW(decode_pnm(bytes("P5\n1 1\n65535\n\x01\x02")), InvalidInput);
}

TEST(ImageIo, UnreadableFile) {
    EXPECT_THROW(load_image("/nonexistent/file.png"), IoError);
    const auto dir = scratch_dir("io_bad");
    std::ofstream(dir / "junk.png") << "not a png";
    EXPECT_THROW(load_image(dir / "junk.png"), Error);
}

TEST(ImageIo, QuantizeRounds) {
    EXPECT_EQ(quantize(0.0), 0);
    EXPECT_EQ(quantize(1.0), 255);
    EXPECT_EQ(quantize(2.0), 255);
    EXPECT_EQ(quantize(-1.0), 0);
    EXPECT_EQ(quantize(128.0 / 255.0), 128);
    EXPECT_EQ(quantize(0.5), 128);
}

} // namespace
} // namespace tlcr
