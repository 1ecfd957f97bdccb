#include "tlcr/synth.hpp"

#include <algorithm>
#include <cmath>

#include "tlcr/error.hpp"

namespace tlcr {

std::uint64_t SplitMix64::below(std::uint64_t n) noexcept {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = next();
    while (v >= limit) {
        v = next();
    }
    return v % n;
}

namespace {

// Layout is authored on a 100 x 120 canvas and scaled to the requested size.
constexpr double ref_width = 100.0;
constexpr double ref_height = 120.0;

double smooth_cover(double signed_distance, double edge) {
    return std::clamp(0.5 - signed_distance / edge, 0.0, 1.0);
}

// Approximate signed distance (reference pixels) to an axis-aligned ellipse.
double ellipse_sd(double x, double y, double cx, double cy, double a, double b) {
    const double dx = (x - cx) / a;
    const double dy = (y - cy) / b;
    return (std::sqrt(dx * dx + dy * dy) - 1.0) * std::min(a, b);
}

struct FaceParams {
    double background;
    double bg_slope_x;
    double bg_slope_y;
    double head_cx, head_cy, head_a, head_b;
    double skin;
    double light_x, light_y;
    double hair;
    double hairline, hair_curve;
    double hair_freq, hair_phase;
    double eye_y, eye_sep, eye_a, eye_b, iris_r, iris_tone, eye_dx;
    double brow_gap, brow_curve, brow_thickness, brow_tone;
    double nose_y, nose_width;
    double mouth_y, mouth_a, mouth_b, lip_tone;
    double ear_y;
};

FaceParams draw_params(SplitMix64& rng) {
    FaceParams p{};
    p.background = rng.uniform(0.15, 0.45);
    p.bg_slope_x = rng.uniform(-0.12, 0.12);
    p.bg_slope_y = rng.uniform(-0.10, 0.10);
    p.head_cx = 50.0 + rng.uniform(-2.5, 2.5);
    p.head_cy = 62.0 + rng.uniform(-2.5, 2.5);
    p.head_a = 34.0 + rng.uniform(-3.0, 3.0);
    p.head_b = 46.0 + rng.uniform(-3.0, 3.0);
    p.skin = rng.uniform(0.50, 0.80);
    const double angle = rng.uniform(0.0, 6.283185307179586);
    p.light_x = std::cos(angle);
    p.light_y = std::sin(angle);
    p.hair = rng.uniform(0.06, 0.35);
    p.hairline = 30.0 + rng.uniform(-4.0, 4.0);
    p.hair_curve = rng.uniform(0.004, 0.012);
    p.hair_freq = rng.uniform(0.25, 0.45);
    p.hair_phase = rng.uniform(0.0, 6.283185307179586);
    p.eye_y = 53.0 + rng.uniform(-3.0, 3.0);
    p.eye_sep = 30.0 + rng.uniform(-4.0, 4.0);
    p.eye_a = 6.0 + rng.uniform(-0.8, 0.8);
    p.eye_b = 3.0 + rng.uniform(-0.6, 0.6);
    p.iris_r = 2.6 + rng.uniform(-0.4, 0.4);
    p.iris_tone = rng.uniform(0.10, 0.40);
    p.eye_dx = rng.uniform(-1.2, 1.2);
    p.brow_gap = 6.5 + rng.uniform(-1.2, 1.2);
    p.brow_curve = rng.uniform(0.01, 0.05);
    p.brow_thickness = 2.2 + rng.uniform(-0.5, 0.8);
    p.brow_tone = rng.uniform(0.05, 0.30);
    p.nose_y = 73.0 + rng.uniform(-3.5, 3.5);
    p.nose_width = 5.5 + rng.uniform(-1.0, 1.0);
    p.mouth_y = 89.0 + rng.uniform(-4.0, 4.0);
    p.mouth_a = 11.0 + rng.uniform(-2.0, 2.0);
    p.mouth_b = 3.2 + rng.uniform(-0.8, 0.8);
    p.lip_tone = rng.uniform(0.55, 0.80);
    p.ear_y = 60.0 + rng.uniform(-2.0, 2.0);
    return p;
}

double shade_pixel(const FaceParams& p, double x, double y, double edge) {
    double v = p.background + p.bg_slope_x * (x / ref_width - 0.5) + p.bg_slope_y * (y / ref_height - 0.5);
    const auto blend = [&v](double tone, double alpha) { v = v * (1.0 - alpha) + tone * alpha; };

    // Neck and shoulders.
    const double neck_sd = std::max(std::abs(x - p.head_cx) - 14.0, p.head_cy + 30.0 - y);
    blend(p.skin * 0.8, smooth_cover(neck_sd, edge));

    // Ears.
    for (int side : {-1, 1}) {
        const double ex = p.head_cx + side * (p.head_a - 1.0);
        blend(p.skin * 0.85, smooth_cover(ellipse_sd(x, y, ex, p.ear_y, 4.5, 8.0), edge));
    }

    // Head with directional shading.
    const double head = smooth_cover(ellipse_sd(x, y, p.head_cx, p.head_cy, p.head_a, p.head_b), edge);
    if (head > 0.0) {
        const double nx = std::clamp((x - p.head_cx) / p.head_a, -1.0, 1.0);
        const double ny = std::clamp((y - p.head_cy) / p.head_b, -1.0, 1.0);
        const double lambert = 0.85 + 0.22 * (p.light_x * nx + p.light_y * ny);
        blend(std::clamp(p.skin * lambert, 0.0, 1.0), head);
    }

    // Hair: top of the head above a curved hairline, with strand texture.
    const double dx = x - p.head_cx;
    const double line = p.hairline + p.hair_curve * dx * dx;
    const double hair_region = std::min(head > 0.0 ? 1.0 : 0.0, smooth_cover(y - line, edge * 2.0));
    const double crown = smooth_cover(ellipse_sd(x, y, p.head_cx, p.head_cy - 3.0, p.head_a + 2.0, p.head_b), edge);
    const double hair_alpha = std::max(hair_region * head, crown * smooth_cover(y - line, edge * 2.0));
    if (hair_alpha > 0.0) {
        const double strands = 0.08 * std::sin(p.hair_freq * (x + 0.35 * y) * 6.283185307179586 / 3.0 +
                                               p.hair_phase);
        blend(std::clamp(p.hair + strands, 0.0, 1.0), hair_alpha);
    }

    for (int side : {-1, 1}) {
        const double cx = p.head_cx + side * p.eye_sep * 0.5 + p.eye_dx;
        // Eyebrow: thick parabolic arc above the eye.
        const double bx = x - cx;
        if (std::abs(bx) < p.eye_a + 3.0) {
            const double arc = p.eye_y - p.brow_gap - p.brow_curve * (p.eye_a * p.eye_a - bx * bx) * 0.3;
            const double brow_sd = std::max(std::abs(y - arc) - p.brow_thickness * 0.5, std::abs(bx) - (p.eye_a + 2.5));
            blend(p.brow_tone, smooth_cover(brow_sd, edge));
        }
        // Eye socket shadow, sclera, iris, pupil, upper lid.
        blend(p.skin * 0.75, 0.6 * smooth_cover(ellipse_sd(x, y, cx, p.eye_y - 0.5, p.eye_a + 2.5, p.eye_b + 2.0),
                                                edge * 3.0));
        blend(0.88, smooth_cover(ellipse_sd(x, y, cx, p.eye_y, p.eye_a, p.eye_b), edge));
        const double iris = smooth_cover(ellipse_sd(x, y, cx, p.eye_y, p.iris_r, p.iris_r), edge) *
                            smooth_cover(ellipse_sd(x, y, cx, p.eye_y, p.eye_a, p.eye_b), edge);
        blend(p.iris_tone, iris);
        blend(0.04, smooth_cover(ellipse_sd(x, y, cx, p.eye_y, p.iris_r * 0.45, p.iris_r * 0.45), edge) * iris);
        blend(0.95, smooth_cover(ellipse_sd(x, y, cx + 0.8, p.eye_y - 0.8, 0.6, 0.6), edge) * iris);
        const double lid_sd = std::max(std::abs(ellipse_sd(x, y, cx, p.eye_y + 0.4, p.eye_a, p.eye_b)) - 0.5,
                                       y - p.eye_y);
        blend(0.08, smooth_cover(lid_sd, edge));
    }

    // Nose: ridge highlight, side shadow, tip and nostrils.
    const double ridge_sd = ellipse_sd(x, y, p.head_cx + 1.0, (p.eye_y + p.nose_y) * 0.5, 1.4, (p.nose_y - p.eye_y) * 0.5);
    blend(std::min(1.0, p.skin * 1.12), 0.7 * smooth_cover(ridge_sd, edge * 2.0));
    const double side_sd = ellipse_sd(x, y, p.head_cx - 3.0, (p.eye_y + p.nose_y) * 0.5 + 3.0, 1.2,
                                      (p.nose_y - p.eye_y) * 0.4);
    blend(p.skin * 0.78, 0.6 * smooth_cover(side_sd, edge * 2.0));
    blend(p.skin * 0.72, smooth_cover(ellipse_sd(x, y, p.head_cx, p.nose_y + 2.5, p.nose_width, 1.8), edge));
    for (int side : {-1, 1}) {
        blend(0.12, smooth_cover(ellipse_sd(x, y, p.head_cx + side * p.nose_width * 0.5, p.nose_y + 2.3, 1.5, 0.9),
                                 edge));
    }

    // Mouth: lips and the dark line between them.
    blend(p.skin * p.lip_tone, smooth_cover(ellipse_sd(x, y, p.head_cx, p.mouth_y, p.mouth_a, p.mouth_b), edge));
    blend(0.10, smooth_cover(ellipse_sd(x, y, p.head_cx, p.mouth_y, p.mouth_a * 0.95, 0.7), edge));

    // Chin shadow.
    blend(p.skin * 0.8, 0.35 * smooth_cover(ellipse_sd(x, y, p.head_cx, p.mouth_y + 12.0, 9.0, 3.0), edge * 3.0));
    return std::clamp(v, 0.0, 1.0);
}

} // namespace

ImageBuffer synth_face(std::uint64_t seed, int identity, int width, int height) {
    if (width < 1 || height < 1) {
        throw InvalidInput("synth_face: dimensions must be positive");
    }
    SplitMix64 rng(seed ^ (0xD1B54A32D192ED03ULL * (static_cast<std::uint64_t>(identity) + 1)));
    rng.next();
    const FaceParams params = draw_params(rng);
    const double sx = ref_width / width;
    const double sy = ref_height / height;
    // Edge softness of about one output pixel.
    const double edge = std::max(sx, sy);
    std::vector<double> data(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            data[static_cast<std::size_t>(y) * width + x] = shade_pixel(params, (x + 0.5) * sx, (y + 0.5) * sy, edge);
        }
    }
    return ImageBuffer::clamped(width, height, std::move(data));
}

std::vector<ImageBuffer> synth_faces(int count, std::uint64_t seed, int width, int height) {
    if (count < 0) {
        throw InvalidInput("synth_faces: negative count");
    }
    std::vector<ImageBuffer> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out.push_back(synth_face(seed, i, width, height));
    }
    return out;
}

} // namespace tlcr
