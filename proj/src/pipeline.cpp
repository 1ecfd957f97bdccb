#include "tlcr/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>

#include "tlcr/color.hpp"
#include "tlcr/error.hpp"
#include "tlcr/resample.hpp"

namespace tlcr {

namespace {

int worker_count(int requested, std::size_t jobs) {
    int n = requested;
    if (n <= 0) {
        n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    return std::max(1, std::min<int>(n, static_cast<int>(jobs)));
}

struct PatchOutcome {
    std::vector<double> values;
    bool k_clamped = false;
    bool fallback = false;
};

class PatchWorker {
public:
    PatchWorker(const ImageBuffer& upscaled, const TrainingCorpus& corpus, const PatchGeometry& geom,
                const HallucinationConfig& cfg)
        : upscaled_(upscaled), corpus_(corpus), geom_(geom), solver_(solver_config(cfg)), f_(cfg.f) {}

    PatchOutcome run(const PatchIndex& index) {
        const auto pixels = extract_patch(upscaled_, index.top, index.left, geom_.patch_size);
        const FeatureVector feature = make_lr_feature(pixels, index, f_, geom_);
        gather_candidates(feature, index, corpus_, geom_, f_, candidates_);
        const Representation rep = represent(feature.values, candidates_, solver_);

        const std::size_t area = static_cast<std::size_t>(geom_.patch_area());
        const std::size_t k = rep.weights.indices.size();
        hr_.resize(k * area);
        for (std::size_t i = 0; i < k; ++i) {
            candidates_.hr_patch(static_cast<std::size_t>(rep.weights.indices[i]),
                                 std::span<double>(hr_).subspan(i * area, area));
        }
        PatchOutcome out;
        out.values = predict_hr_patch(rep.weights.coefficients, hr_, area);
        out.k_clamped = rep.k_clamped;
        out.fallback = rep.fallback;
        return out;
    }

private:
    const ImageBuffer& upscaled_;
    const TrainingCorpus& corpus_;
    PatchGeometry geom_;
    SolverConfig solver_;
    double f_;
    ContextCandidateSet candidates_;
    std::vector<double> hr_;
};

} // namespace

SolverConfig solver_config(const HallucinationConfig& cfg) {
    SolverConfig s;
    s.tau = cfg.tau;
    s.k = cfg.k;
    s.ridge_eps = cfg.ridge_eps;
    return s;
}

ImageBuffer hallucinate_once(const ImageBuffer& lr, const TrainingCorpus& corpus, const HallucinationConfig& cfg,
                             HallucinationStats* stats) {
    if (corpus.empty()) {
        throw InvalidInput("hallucinate: empty training corpus");
    }
    if (cfg.scale != corpus.scale()) {
        throw InvalidInput("hallucinate: config scale " + std::to_string(cfg.scale) +
                           " differs from corpus scale " + std::to_string(corpus.scale()));
    }
    if (lr.width() * corpus.scale() != corpus.width() || lr.height() * corpus.scale() != corpus.height()) {
        throw InvalidInput("hallucinate: input " + std::to_string(lr.width()) + "x" + std::to_string(lr.height()) +
                           " times scale " + std::to_string(corpus.scale()) + " does not match corpus " +
                           std::to_string(corpus.width()) + "x" + std::to_string(corpus.height()));
    }
    const ImageBuffer upscaled = bicubic_upscale(lr, corpus.scale());
    const PatchGeometry geom = cfg.geometry(corpus.width(), corpus.height());
    const auto grid = enumerate_grid(geom);

    // Each slot is written by exactly one worker; assembly below walks the
    // slots in grid order, so the output does not depend on scheduling.
    std::vector<PatchOutcome> outcomes(grid.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        PatchWorker worker(upscaled, corpus, geom, cfg);
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size() || failed.load()) {
                return;
            }
            try {
                outcomes[i] = worker.run(grid[i]);
            } catch (...) {
                if (!failed.exchange(true)) {
                    failure = std::current_exception();
                }
                return;
            }
        }
    };
    const int workers = worker_count(cfg.threads, grid.size());
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    std::vector<PlacedPatch> placed(grid.size());
    HallucinationStats local;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        placed[i].index = grid[i];
        placed[i].values = std::move(outcomes[i].values);
        local.patches += 1;
        local.k_clamped += outcomes[i].k_clamped ? 1 : 0;
        local.fallbacks += outcomes[i].fallback ? 1 : 0;
    }
    if (stats != nullptr) {
        *stats += local;
    }
    return add_clamped(upscaled, assemble(placed, geom));
}

HallucinationResult hallucinate(const ImageBuffer& lr, const TrainingCorpus& corpus, const HallucinationConfig& cfg) {
    if (cfg.rl_iterations < 0) {
        throw InvalidInput("hallucinate: rl_iterations must be >= 0");
    }
    HallucinationResult result;
    result.iterations.reserve(static_cast<std::size_t>(cfg.rl_iterations) + 1);
    result.iterations.push_back(hallucinate_once(lr, corpus, cfg, &result.stats));

    TrainingCorpus working = corpus;
    for (int it = 0; it < cfg.rl_iterations; ++it) {
        if (cfg.accumulate_reproduced) {
            working.append_reproduced(result.iterations.back());
        } else {
            working.replace_reproduced(result.iterations.back());
        }
        result.iterations.push_back(hallucinate_once(lr, working, cfg, &result.stats));
    }
    result.image = result.iterations.back();
    return result;
}

ColorImage hallucinate_color(const ColorImage& lr_rgb, const TrainingCorpus& corpus, const HallucinationConfig& cfg) {
    const ColorImage yuv = rgb_to_yuv(lr_rgb);
    HallucinationResult luma = hallucinate(yuv.c0, corpus, cfg);
    ColorImage up(std::move(luma.image), bicubic_upscale(yuv.c1, corpus.scale()),
                  bicubic_upscale(yuv.c2, corpus.scale()));
    return yuv_to_rgb(up);
}

std::vector<double> PositionRepresentation::dense_weights() const {
    std::vector<double> dense(candidates.size(), 0.0);
    const auto& w = representation.weights;
    for (std::size_t i = 0; i < w.indices.size(); ++i) {
        dense[static_cast<std::size_t>(w.indices[i])] = w.coefficients[i];
    }
    return dense;
}

PositionRepresentation represent_position(const ImageBuffer& upscaled_input, const PatchIndex& position,
                                          const TrainingCorpus& corpus, const HallucinationConfig& cfg) {
    const PatchGeometry geom = cfg.geometry(corpus.width(), corpus.height());
    geom.validate();
    if (upscaled_input.width() != geom.image_width || upscaled_input.height() != geom.image_height) {
        throw InvalidInput("represent_position: input does not match corpus dimensions");
    }
    const auto pixels = extract_patch(upscaled_input, position.top, position.left, geom.patch_size);
    const FeatureVector feature = make_lr_feature(pixels, position, cfg.f, geom);
    PositionRepresentation out;
    gather_candidates(feature, position, corpus, geom, cfg.f, out.candidates);
    out.representation = represent(feature.values, out.candidates, solver_config(cfg));
    out.position_indices = out.candidates.position_indices(position);
    return out;
}

} // namespace tlcr
