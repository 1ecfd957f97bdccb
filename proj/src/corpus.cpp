#include "tlcr/corpus.hpp"

#include <algorithm>
#include <string>

#include "tlcr/error.hpp"
#include "tlcr/resample.hpp"

namespace tlcr {

PatchGeometry HallucinationConfig::geometry(int image_width, int image_height) const {
    PatchGeometry g;
    g.patch_size = patch_size;
    g.overlap = overlap;
    g.window_size = window_size;
    g.context_step = context_step;
    g.image_width = image_width;
    g.image_height = image_height;
    return g;
}

std::size_t TrainingCorpus::reproduced_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](const auto& e) {
        return e->provenance == Provenance::reproduced;
    }));
}

std::shared_ptr<const CorpusEntry> TrainingCorpus::make_entry(ImageBuffer hr, Provenance provenance) const {
    if (hr.width() != geometry_.image_width || hr.height() != geometry_.image_height) {
        throw InvalidInput("corpus image is " + std::to_string(hr.width()) + "x" + std::to_string(hr.height()) +
                           ", expected " + std::to_string(geometry_.image_width) + "x" +
                           std::to_string(geometry_.image_height));
    }
    auto entry = std::make_shared<CorpusEntry>();
    entry->upscaled_lr = bicubic_upscale(degrade(hr, scale_), scale_);
    entry->residual = subtract(hr, entry->upscaled_lr);
    entry->hr = std::move(hr);
    entry->provenance = provenance;
    return entry;
}

void TrainingCorpus::replace_reproduced(const ImageBuffer& estimate) {
    auto entry = make_entry(estimate, Provenance::reproduced);
    std::erase_if(entries_, [](const auto& e) { return e->provenance == Provenance::reproduced; });
    entries_.push_back(std::move(entry));
}

void TrainingCorpus::append_reproduced(const ImageBuffer& estimate) {
    entries_.push_back(make_entry(estimate, Provenance::reproduced));
}

TrainingCorpus prepare_corpus(std::vector<ImageBuffer> hr_images, const HallucinationConfig& cfg) {
    if (hr_images.empty()) {
        throw InvalidInput("prepare_corpus: no training images");
    }
    if (cfg.scale < 2) {
        throw InvalidInput("prepare_corpus: scale must be >= 2");
    }
    const int w = hr_images.front().width();
    const int h = hr_images.front().height();
    for (std::size_t m = 0; m < hr_images.size(); ++m) {
        if (hr_images[m].width() != w || hr_images[m].height() != h) {
            throw InvalidInput("prepare_corpus: image " + std::to_string(m) + " is " +
                               std::to_string(hr_images[m].width()) + "x" + std::to_string(hr_images[m].height()) +
                               " but image 0 is " + std::to_string(w) + "x" + std::to_string(h));
        }
    }
    if (w % cfg.scale != 0 || h % cfg.scale != 0) {
        throw InvalidInput("prepare_corpus: " + std::to_string(w) + "x" + std::to_string(h) +
                           " is not divisible by scale " + std::to_string(cfg.scale));
    }
    TrainingCorpus corpus;
    corpus.geometry_ = cfg.geometry(w, h);
    corpus.geometry_.validate();
    corpus.scale_ = cfg.scale;
    corpus.f_ = cfg.f;
    corpus.entries_.reserve(hr_images.size() + 1);
    for (auto& img : hr_images) {
        corpus.entries_.push_back(corpus.make_entry(std::move(img), Provenance::original));
    }
    return corpus;
}

} // namespace tlcr
