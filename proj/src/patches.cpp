#include "tlcr/patches.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tlcr/corpus.hpp"
#include "tlcr/error.hpp"

namespace tlcr {

void PatchGeometry::validate() const {
    if (patch_size < 1) {
        throw InvalidInput("patch size must be positive");
    }
    if (overlap < 0 || overlap >= patch_size) {
        throw InvalidInput("overlap must satisfy 0 <= overlap < patch size (got " + std::to_string(overlap) + ")");
    }
    if (window_size < patch_size) {
        throw InvalidInput("window size " + std::to_string(window_size) + " is smaller than patch size " +
                           std::to_string(patch_size));
    }
    if (context_step < 1) {
        throw InvalidInput("context step must be >= 1");
    }
    if ((window_size - patch_size) % context_step != 0) {
        throw InvalidInput("window size minus patch size must be divisible by the context step");
    }
    if (image_width < patch_size || image_height < patch_size) {
        throw InvalidInput("image " + std::to_string(image_width) + "x" + std::to_string(image_height) +
                           " is smaller than one patch of " + std::to_string(patch_size));
    }
}

std::vector<int> grid_positions(int extent, int patch_size, int stride) {
    std::vector<int> out;
    int pos = 0;
    for (;;) {
        if (pos + patch_size >= extent) {
            out.push_back(extent - patch_size);
            break;
        }
        out.push_back(pos);
        pos += stride;
    }
    return out;
}

std::vector<PatchIndex> enumerate_grid(const PatchGeometry& geom) {
    geom.validate();
    const auto rows = grid_positions(geom.image_height, geom.patch_size, geom.stride());
    const auto cols = grid_positions(geom.image_width, geom.patch_size, geom.stride());
    std::vector<PatchIndex> out;
    out.reserve(rows.size() * cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out.push_back({static_cast<int>(r), static_cast<int>(c), rows[r], cols[c]});
        }
    }
    return out;
}

std::int64_t candidate_count(std::int64_t images, const PatchGeometry& geom) {
    const std::int64_t per_axis = geom.offsets_per_axis();
    return images * per_axis * per_axis;
}

std::vector<int> context_offsets(int pos, int extent, const PatchGeometry& geom) {
    const int span = geom.window_size - geom.patch_size;
    std::vector<int> out;
    out.reserve(geom.offsets_per_axis());
    if (extent >= geom.window_size) {
        const int start = std::clamp(pos - span / 2, 0, extent - geom.window_size);
        for (int d = 0; d <= span; d += geom.context_step) {
            out.push_back(start + d);
        }
    } else {
        for (int d = 0; d <= span && d + geom.patch_size <= extent; d += geom.context_step) {
            out.push_back(d);
        }
    }
    return out;
}

void extract_patch(std::span<const double> image, int image_width, int top, int left, int patch_size,
                   std::span<double> out) {
    for (int y = 0; y < patch_size; ++y) {
        const double* src = image.data() + static_cast<std::size_t>(top + y) * image_width + left;
        std::copy(src, src + patch_size, out.begin() + static_cast<std::ptrdiff_t>(y) * patch_size);
    }
}

std::vector<double> extract_patch(const ImageBuffer& img, int top, int left, int patch_size) {
    std::vector<double> out(static_cast<std::size_t>(patch_size) * patch_size);
    extract_patch(img.data(), img.width(), top, left, patch_size, out);
    return out;
}

std::vector<double> extract_patch(const ResidualBuffer& img, int top, int left, int patch_size) {
    std::vector<double> out(static_cast<std::size_t>(patch_size) * patch_size);
    extract_patch(img.data(), img.width(), top, left, patch_size, out);
    return out;
}

double normalized_coordinate(int coordinate, int extent, int patch_size) noexcept {
    const int range = extent - patch_size;
    return range > 0 ? static_cast<double>(coordinate) / range : 0.0;
}

namespace {

double remove_mean(std::span<const double> pixels, std::span<double> out) {
    double sum = 0.0;
    for (double v : pixels) {
        sum += v;
    }
    const double mean = sum / static_cast<double>(pixels.size());
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        out[i] = pixels[i] - mean;
    }
    return mean;
}

} // namespace

FeatureVector make_lr_feature(std::span<const double> patch_pixels, const PatchIndex& index, double f,
                              const PatchGeometry& geom) {
    const std::size_t area = static_cast<std::size_t>(geom.patch_area());
    if (patch_pixels.size() != area) {
        throw InvalidInput("make_lr_feature: expected " + std::to_string(area) + " pixels");
    }
    FeatureVector fv;
    fv.values.resize(area + 2);
    fv.source_mean = remove_mean(patch_pixels, fv.values);
    fv.values[area] = f * normalized_coordinate(index.left, geom.image_width, geom.patch_size);
    fv.values[area + 1] = f * normalized_coordinate(index.top, geom.image_height, geom.patch_size);
    return fv;
}

double write_lr_feature(std::span<const double> image, int top, int left, double f, const PatchGeometry& geom,
                        std::span<double> out) {
    const int p = geom.patch_size;
    const std::size_t area = static_cast<std::size_t>(geom.patch_area());
    extract_patch(image, geom.image_width, top, left, p, out.first(area));
    double sum = 0.0;
    for (std::size_t i = 0; i < area; ++i) {
        sum += out[i];
    }
    const double mean = sum / static_cast<double>(area);
    for (std::size_t i = 0; i < area; ++i) {
        out[i] -= mean;
    }
    out[area] = f * normalized_coordinate(left, geom.image_width, p);
    out[area + 1] = f * normalized_coordinate(top, geom.image_height, p);
    return mean;
}

std::vector<double> make_hr_residual(std::span<const double> hr_patch, std::span<const double> upscaled_lr_patch) {
    if (hr_patch.size() != upscaled_lr_patch.size()) {
        throw InvalidInput("make_hr_residual: patch sizes differ");
    }
    std::vector<double> out(hr_patch.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = hr_patch[i] - upscaled_lr_patch[i];
    }
    return out;
}

ContextCandidateSet::ContextCandidateSet(const TrainingCorpus* corpus, int feature_dim, int patch_size)
    : corpus_(corpus), feature_dim_(feature_dim), patch_size_(patch_size) {}

std::vector<double> ContextCandidateSet::hr_patch(std::size_t i) const {
    std::vector<double> out(static_cast<std::size_t>(patch_size_) * patch_size_);
    hr_patch(i, out);
    return out;
}

void ContextCandidateSet::hr_patch(std::size_t i, std::span<double> out) const {
    const CandidateSource& s = sources_[i];
    const ResidualBuffer& residual = corpus_->entry(s.image).residual;
    extract_patch(residual.data(), residual.width(), s.top, s.left, patch_size_, out);
}

std::vector<int> ContextCandidateSet::position_indices(const PatchIndex& position) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < sources_.size(); ++i) {
        if (sources_[i].top == position.top && sources_[i].left == position.left) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

void ContextCandidateSet::reset(const TrainingCorpus* corpus, int feature_dim, int patch_size) noexcept {
    corpus_ = corpus;
    feature_dim_ = feature_dim;
    patch_size_ = patch_size;
    clear();
}

void ContextCandidateSet::clear() noexcept {
    features_.clear();
    distances_.clear();
    sources_.clear();
}

void ContextCandidateSet::reserve(std::size_t n) {
    features_.reserve(n * feature_dim_);
    distances_.reserve(n);
    sources_.reserve(n);
}

std::span<double> ContextCandidateSet::append(const CandidateSource& source) {
    sources_.push_back(source);
    distances_.push_back(0.0);
    features_.resize(features_.size() + feature_dim_);
    return std::span<double>(features_).last(feature_dim_);
}

void gather_candidates(const FeatureVector& test_feature, const PatchIndex& position, const TrainingCorpus& corpus,
                       const PatchGeometry& geom, double f, ContextCandidateSet& out) {
    if (corpus.empty()) {
        throw InvalidInput("gather_candidates: empty training corpus");
    }
    if (static_cast<int>(test_feature.values.size()) != geom.feature_dim()) {
        throw InvalidInput("gather_candidates: test feature has wrong dimension");
    }
    if (corpus.width() != geom.image_width || corpus.height() != geom.image_height) {
        throw InvalidInput("gather_candidates: corpus prepared for a different image size");
    }
    const auto rows = context_offsets(position.top, geom.image_height, geom);
    const auto cols = context_offsets(position.left, geom.image_width, geom);

    out.reset(&corpus, geom.feature_dim(), geom.patch_size);
    out.reserve(corpus.size() * rows.size() * cols.size());

    const std::span<const double> test(test_feature.values);
    for (std::size_t m = 0; m < corpus.size(); ++m) {
        const auto image = corpus.entry(m).upscaled_lr.data();
        for (int top : rows) {
            for (int left : cols) {
                auto feature = out.append({static_cast<int>(m), top, left});
                write_lr_feature(image, top, left, f, geom, feature);
                double sq = 0.0;
                for (std::size_t i = 0; i < feature.size(); ++i) {
                    const double d = test[i] - feature[i];
                    sq += d * d;
                }
                out.set_distance(out.size() - 1, std::sqrt(sq));
            }
        }
    }
}

ContextCandidateSet gather_candidates(const FeatureVector& test_feature, const PatchIndex& position,
                                      const TrainingCorpus& corpus, const PatchGeometry& geom, double f) {
    ContextCandidateSet out;
    gather_candidates(test_feature, position, corpus, geom, f, out);
    return out;
}

ResidualBuffer assemble(std::span<const PlacedPatch> patches, const PatchGeometry& geom) {
    const int w = geom.image_width;
    const int h = geom.image_height;
    const int p = geom.patch_size;
    ResidualBuffer sum(w, h, 0.0);
    std::vector<int> count(static_cast<std::size_t>(w) * h, 0);
    for (const PlacedPatch& patch : patches) {
        if (patch.values.size() != static_cast<std::size_t>(p) * p) {
            throw InvalidInput("assemble: patch has wrong size");
        }
        const PatchIndex& idx = patch.index;
        if (idx.top < 0 || idx.left < 0 || idx.top + p > h || idx.left + p > w) {
            throw InvalidInput("assemble: patch outside the image");
        }
        for (int y = 0; y < p; ++y) {
            for (int x = 0; x < p; ++x) {
                sum(idx.left + x, idx.top + y) += patch.values[static_cast<std::size_t>(y) * p + x];
                ++count[static_cast<std::size_t>(idx.top + y) * w + idx.left + x];
            }
        }
    }
    auto data = sum.data();
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (count[i] == 0) {
            throw Error("assemble: pixel (" + std::to_string(i % w) + ", " + std::to_string(i / w) +
                        ") is not covered by any patch");
        }
        data[i] /= count[i];
    }
    return sum;
}

} // namespace tlcr
