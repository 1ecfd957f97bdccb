#pragma once

#include <memory>
#include <vector>

#include "tlcr/image.hpp"
#include "tlcr/patches.hpp"

namespace tlcr {

enum class Provenance { original, reproduced };

/// Tunables of one hallucination run. Defaults follow the published setup.
struct HallucinationConfig {
    int scale = 4;
    int patch_size = 12;
    int overlap = 4;
    int window_size = 20;
    int context_step = 2;
    double tau = 0.04;
    int k = 360;
    double f = 10.0;
    int rl_iterations = 5;
    /// Relative stabiliser; see SolverConfig::ridge_eps.
    double ridge_eps = 1e-8;
    /// Keep every reproduced estimate instead of replacing the previous one.
    bool accumulate_reproduced = false;
    /// Worker threads for the per-patch loop; 0 picks hardware concurrency.
    int threads = 1;

    PatchGeometry geometry(int image_width, int image_height) const;
};

struct CorpusEntry {
    ImageBuffer hr;
    ImageBuffer upscaled_lr;
    ResidualBuffer residual;
    Provenance provenance = Provenance::original;
};

/// Paired HR / bicubic-upscaled LR training images with their HR residuals.
///
/// Only the scale is baked into the stored images. The geometry and f recorded
/// here are the ones given at preparation; hallucination passes read patch and
/// window settings from their own HallucinationConfig, so one corpus serves a
/// whole window or f sweep.
///
/// Entries are shared immutable snapshots, so copying a corpus is cheap and a
/// copy can be extended for reproducing learning without touching the
/// original.
class TrainingCorpus {
public:
    TrainingCorpus() = default;

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const CorpusEntry& entry(std::size_t m) const noexcept { return *entries_[m]; }
    const PatchGeometry& geometry() const noexcept { return geometry_; }
    int scale() const noexcept { return scale_; }
    double f() const noexcept { return f_; }
    int width() const noexcept { return geometry_.image_width; }
    int height() const noexcept { return geometry_.image_height; }

    std::size_t reproduced_count() const noexcept;

    /// Installs (estimate, degrade + upscale of estimate, residual) as the
    /// single reproduced pair, replacing any previous one.
    void replace_reproduced(const ImageBuffer& estimate);
    /// Appends another reproduced pair.
    void append_reproduced(const ImageBuffer& estimate);

    friend TrainingCorpus prepare_corpus(std::vector<ImageBuffer> hr_images, const HallucinationConfig& cfg);

private:
    std::shared_ptr<const CorpusEntry> make_entry(ImageBuffer hr, Provenance provenance) const;

    std::vector<std::shared_ptr<const CorpusEntry>> entries_;
    PatchGeometry geometry_;
    int scale_ = 4;
    double f_ = 10.0;
};

/// Synthesises the LR side of every HR image (degrade then bicubic upscale)
/// and the HR residuals. Throws InvalidInput on an empty list, mismatched
/// dimensions or dimensions not divisible by the scale.
TrainingCorpus prepare_corpus(std::vector<ImageBuffer> hr_images, const HallucinationConfig& cfg);

} // namespace tlcr
