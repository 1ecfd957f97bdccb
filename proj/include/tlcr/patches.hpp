#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tlcr/image.hpp"

namespace tlcr {

class TrainingCorpus;

/// Patch grid and context-window layout. All quantities are HR pixels.
struct PatchGeometry {
    int patch_size = 12;
    int overlap = 4;
    int window_size = 20;
    int context_step = 2;
    int image_width = 0;
    int image_height = 0;

    /// Throws InvalidInput unless 0 <= overlap < patch_size <= window_size,
    /// context_step >= 1, (window_size - patch_size) % context_step == 0 and the
    /// image is at least one patch in each direction.
    void validate() const;

    int stride() const noexcept { return patch_size - overlap; }
    int patch_area() const noexcept { return patch_size * patch_size; }
    int feature_dim() const noexcept { return patch_area() + 2; }
    /// Context offsets per axis, 1 + (w - p) / s.
    int offsets_per_axis() const noexcept { return 1 + (window_size - patch_size) / context_step; }
};

struct PatchIndex {
    int grid_row = 0;
    int grid_col = 0;
    int top = 0;
    int left = 0;

    friend bool operator==(const PatchIndex&, const PatchIndex&) = default;
};

/// Mean-removed patch pixels followed by the two weighted position entries
/// (f * x, f * y), coordinates normalised to [0, 1].
struct FeatureVector {
    std::vector<double> values;
    double source_mean = 0.0;
};

/// Row-major list of grid patches. The last row/column is clamped to the
/// border so every pixel is covered.
std::vector<PatchIndex> enumerate_grid(const PatchGeometry& geom);

/// Top-left coordinates of grid patches along one axis of length `extent`.
std::vector<int> grid_positions(int extent, int patch_size, int stride);

/// M * (1 + (w - p) / s)^2, the candidate count at an interior position.
std::int64_t candidate_count(std::int64_t images, const PatchGeometry& geom);

/// Candidate top-left coordinates along one axis for a patch at `pos`: the
/// window is centred on the patch and shifted inward at image borders.
std::vector<int> context_offsets(int pos, int extent, const PatchGeometry& geom);

/// Copies the p x p block with top-left (top, left).
void extract_patch(std::span<const double> image, int image_width, int top, int left, int patch_size,
                   std::span<double> out);
std::vector<double> extract_patch(const ImageBuffer& img, int top, int left, int patch_size);
std::vector<double> extract_patch(const ResidualBuffer& img, int top, int left, int patch_size);

/// Normalised position entry, coordinate / (extent - p); 0 when extent == p.
double normalized_coordinate(int coordinate, int extent, int patch_size) noexcept;

FeatureVector make_lr_feature(std::span<const double> patch_pixels, const PatchIndex& index, double f,
                              const PatchGeometry& geom);

/// Writes the feature for the patch at (top, left) straight into `out`
/// (length feature_dim). Returns the removed mean.
double write_lr_feature(std::span<const double> image, int top, int left, double f, const PatchGeometry& geom,
                        std::span<double> out);

/// Elementwise hr - upscaled_lr, unclamped.
std::vector<double> make_hr_residual(std::span<const double> hr_patch, std::span<const double> upscaled_lr_patch);

struct CandidateSource {
    int image = 0;
    int top = 0;
    int left = 0;

    friend bool operator==(const CandidateSource&, const CandidateSource&) = default;
};

/// All context candidates for one test position. Features are stored row-major
/// (one row of feature_dim reals per candidate); HR residual patches are read
/// from the corpus on demand.
class ContextCandidateSet {
public:
    ContextCandidateSet() = default;
    ContextCandidateSet(const TrainingCorpus* corpus, int feature_dim, int patch_size);

    std::size_t size() const noexcept { return sources_.size(); }
    int feature_dim() const noexcept { return feature_dim_; }

    std::span<const double> feature(std::size_t i) const noexcept {
        return std::span<const double>(features_).subspan(i * feature_dim_, feature_dim_);
    }
    std::span<const double> features() const noexcept { return features_; }
    std::span<const double> distances() const noexcept { return distances_; }
    const std::vector<CandidateSource>& sources() const noexcept { return sources_; }

    /// HR residual patch (p x p) of candidate i.
    std::vector<double> hr_patch(std::size_t i) const;
    void hr_patch(std::size_t i, std::span<double> out) const;

    /// Candidates whose top-left equals `position` (the position patches).
    std::vector<int> position_indices(const PatchIndex& position) const;

    void clear() noexcept;
    /// Rebinds to a corpus and drops all candidates, keeping allocations.
    void reset(const TrainingCorpus* corpus, int feature_dim, int patch_size) noexcept;
    void reserve(std::size_t n);
    std::span<double> append(const CandidateSource& source);
    void set_distance(std::size_t i, double d) { distances_[i] = d; }

private:
    const TrainingCorpus* corpus_ = nullptr;
    int feature_dim_ = 0;
    int patch_size_ = 0;
    std::vector<double> features_;
    std::vector<double> distances_;
    std::vector<CandidateSource> sources_;
};

/// Builds the candidate set for a test feature at `position` and fills the
/// Euclidean distances over the full augmented feature.
ContextCandidateSet gather_candidates(const FeatureVector& test_feature, const PatchIndex& position,
                                      const TrainingCorpus& corpus, const PatchGeometry& geom, double f);

/// Same as above, reusing `out`'s storage.
void gather_candidates(const FeatureVector& test_feature, const PatchIndex& position,
                       const TrainingCorpus& corpus, const PatchGeometry& geom, double f,
                       ContextCandidateSet& out);

struct PlacedPatch {
    PatchIndex index;
    std::vector<double> values;
};

/// Overlap averaging: each output pixel is the mean of every patch covering it.
/// Accumulation follows the order of `patches`. Throws Error if a pixel is
/// left uncovered.
ResidualBuffer assemble(std::span<const PlacedPatch> patches, const PatchGeometry& geom);

} // namespace tlcr
