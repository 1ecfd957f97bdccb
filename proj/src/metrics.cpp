#include "tlcr/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "tlcr/error.hpp"

namespace tlcr {

namespace {

constexpr int ssim_window = 11;
constexpr double ssim_sigma = 1.5;
constexpr double ssim_c1 = (0.01 * 1.0) * (0.01 * 1.0);
constexpr double ssim_c2 = (0.03 * 1.0) * (0.03 * 1.0);

void require_same_size(const ImageBuffer& a, const ImageBuffer& b, const char* what) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw InvalidInput(std::string(what) + ": images differ in size (" + std::to_string(a.width()) + "x" +
                           std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                           std::to_string(b.height()) + ")");
    }
}

std::array<double, ssim_window> gaussian_taps() {
    std::array<double, ssim_window> g{};
    double sum = 0.0;
    for (int i = 0; i < ssim_window; ++i) {
        const double d = i - ssim_window / 2;
        g[i] = std::exp(-(d * d) / (2.0 * ssim_sigma * ssim_sigma));
        sum += g[i];
    }
    for (double& v : g) {
        v /= sum;
    }
    return g;
}

// Valid-mode separable Gaussian filter of `src` (w x h) into (w-10) x (h-10).
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h,
                                 const std::array<double, ssim_window>& g) {
    const int ow = w - ssim_window + 1;
    const int oh = h - ssim_window + 1;
    std::vector<double> horizontal(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int k = 0; k < ssim_window; ++k) {
                acc += g[k] * src[static_cast<std::size_t>(y) * w + x + k];
            }
            horizontal[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int k = 0; k < ssim_window; ++k) {
                acc += g[k] * horizontal[static_cast<std::size_t>(y + k) * ow + x];
            }
            out[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }
    return out;
}

double parse_number(const std::string& field, std::size_t line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != field.size()) {
        throw ParseError("metrics CSV: bad number '" + field + "' on line " + std::to_string(line), line);
    }
    return v;
}

} // namespace

double mean_squared_error(const ImageBuffer& a, const ImageBuffer& b) {
    require_same_size(a, b, "mse");
    if (a.empty()) {
        throw InvalidInput("mse: empty images");
    }
    const auto da = a.data();
    const auto db = b.data();
    double sum = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) {
        const double d = da[i] - db[i];
        sum += d * d;
    }
    return sum / static_cast<double>(da.size());
}

double psnr(const ImageBuffer& a, const ImageBuffer& b) {
    require_same_size(a, b, "psnr");
    const double mse = mean_squared_error(a, b);
    if (mse == 0.0) {
        return psnr_cap_db;
    }
    return std::min(psnr_cap_db, 10.0 * std::log10(1.0 / mse));
}

double ssim(const ImageBuffer& a, const ImageBuffer& b) {
    require_same_size(a, b, "ssim");
    const int w = a.width();
    const int h = a.height();
    if (w < ssim_window || h < ssim_window) {
        throw InvalidInput("ssim: images must be at least 11x11");
    }
    const auto g = gaussian_taps();
    const std::size_t n = a.size();
    std::vector<double> x(a.data().begin(), a.data().end());
    std::vector<double> y(b.data().begin(), b.data().end());
    std::vector<double> xx(n), yy(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }
    const auto mu_x = filter_valid(x, w, h, g);
    const auto mu_y = filter_valid(y, w, h, g);
    const auto e_xx = filter_valid(xx, w, h, g);
    const auto e_yy = filter_valid(yy, w, h, g);
    const auto e_xy = filter_valid(xy, w, h, g);

    double sum = 0.0;
    for (std::size_t i = 0; i < mu_x.size(); ++i) {
        const double mx = mu_x[i];
        const double my = mu_y[i];
        const double var_x = e_xx[i] - mx * mx;
        const double var_y = e_yy[i] - my * my;
        const double cov = e_xy[i] - mx * my;
        const double num = (2.0 * mx * my + ssim_c1) * (2.0 * cov + ssim_c2);
        const double den = (mx * mx + my * my + ssim_c1) * (var_x + var_y + ssim_c2);
        sum += num / den;
    }
    return sum / static_cast<double>(mu_x.size());
}

void finalize(QualityReport& report) {
    std::stable_sort(report.per_image.begin(), report.per_image.end(),
                     [](const ImageQuality& l, const ImageQuality& r) { return l.id < r.id; });
    double p = 0.0;
    double s = 0.0;
    for (const auto& q : report.per_image) {
        p += q.psnr_db;
        s += q.ssim;
    }
    const double n = static_cast<double>(report.per_image.size());
    report.mean_psnr_db = report.per_image.empty() ? 0.0 : p / n;
    report.mean_ssim = report.per_image.empty() ? 0.0 : s / n;
}

QualityReport evaluate(const std::vector<std::string>& ids, const std::vector<ImageBuffer>& outputs,
                       const std::vector<ImageBuffer>& ground_truths) {
    if (ids.size() != outputs.size() || outputs.size() != ground_truths.size()) {
        throw InvalidInput("evaluate: " + std::to_string(ids.size()) + " ids, " + std::to_string(outputs.size()) +
                           " outputs and " + std::to_string(ground_truths.size()) + " ground truths");
    }
    QualityReport report;
    report.per_image.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        report.per_image.push_back({ids[i], psnr(outputs[i], ground_truths[i]), ssim(outputs[i], ground_truths[i])});
    }
    finalize(report);
    return report;
}

void write_csv(std::ostream& out, const QualityReport& report) {
    out << "id,psnr_db,ssim\n" << std::fixed << std::setprecision(6);
    for (const auto& q : report.per_image) {
        out << q.id << ',' << q.psnr_db << ',' << q.ssim << '\n';
    }
    out << "mean," << report.mean_psnr_db << ',' << report.mean_ssim << '\n';
}

void write_csv(const std::filesystem::path& path, const QualityReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_csv(out, report);
}

QualityReport read_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || line != "id,psnr_db,ssim") {
        throw ParseError("metrics CSV: missing 'id,psnr_db,ssim' header", 0);
    }
    QualityReport report;
    bool saw_mean = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (saw_mean) {
            throw ParseError("metrics CSV: rows after the mean row", line_no);
        }
        std::stringstream ss(line);
        std::string id, p, s;
        if (!std::getline(ss, id, ',') || !std::getline(ss, p, ',') || !std::getline(ss, s)) {
            throw ParseError("metrics CSV: expected three fields on line " + std::to_string(line_no), line_no);
        }
        if (id == "mean") {
            report.mean_psnr_db = parse_number(p, line_no);
            report.mean_ssim = parse_number(s, line_no);
            saw_mean = true;
        } else {
            report.per_image.push_back({id, parse_number(p, line_no), parse_number(s, line_no)});
        }
    }
    if (!saw_mean) {
        throw ParseError("metrics CSV: missing mean row", line_no);
    }
    return report;
}

QualityReport read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    return read_csv(in);
}

} // namespace tlcr
