#pragma once

#include <cstddef>
#include <vector>

#include "tlcr/corpus.hpp"
#include "tlcr/image.hpp"
#include "tlcr/solver.hpp"

namespace tlcr {

struct HallucinationStats {
    std::size_t patches = 0;
    /// Patches whose candidate count was below K.
    std::size_t k_clamped = 0;
    /// Patches that fell back to uniform weights.
    std::size_t fallbacks = 0;

    HallucinationStats& operator+=(const HallucinationStats& o) {
        patches += o.patches;
        k_clamped += o.k_clamped;
        fallbacks += o.fallbacks;
        return *this;
    }
};

struct HallucinationResult {
    ImageBuffer image;
    /// Estimate after each pass; entry 0 uses the original corpus.
    std::vector<ImageBuffer> iterations;
    HallucinationStats stats;
};

SolverConfig solver_config(const HallucinationConfig& cfg);

/// One TLcR pass: bicubic base plus the overlap-averaged predicted residual,
/// clamped to [0, 1]. Throws InvalidInput when `lr` times the scale does not
/// match the corpus dimensions.
ImageBuffer hallucinate_once(const ImageBuffer& lr, const TrainingCorpus& corpus, const HallucinationConfig& cfg,
                             HallucinationStats* stats = nullptr);

/// TLcR followed by cfg.rl_iterations reproducing-learning passes. The corpus
/// is copied; the caller's instance is left untouched.
HallucinationResult hallucinate(const ImageBuffer& lr, const TrainingCorpus& corpus, const HallucinationConfig& cfg);

/// Luminance-only colour path: Y is hallucinated, U and V are upscaled
/// bicubically.
ColorImage hallucinate_color(const ColorImage& lr_rgb, const TrainingCorpus& corpus, const HallucinationConfig& cfg);

/// Candidate set and weights for a single grid position of an upscaled input.
struct PositionRepresentation {
    ContextCandidateSet candidates;
    Representation representation;
    std::vector<int> position_indices;

    /// Coefficients scattered over all N candidates (zero outside the KNN set).
    std::vector<double> dense_weights() const;
};

PositionRepresentation represent_position(const ImageBuffer& upscaled_input, const PatchIndex& position,
                                          const TrainingCorpus& corpus, const HallucinationConfig& cfg);

} // namespace tlcr
