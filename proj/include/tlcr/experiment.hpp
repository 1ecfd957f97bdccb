#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tlcr/corpus.hpp"
#include "tlcr/image.hpp"
#include "tlcr/metrics.hpp"
#include "tlcr/pipeline.hpp"

namespace tlcr {

struct NamedImage {
    std::string id;
    ImageBuffer gray;
    /// Present when the source file was colour.
    std::optional<ColorImage> color;
};

/// Loads every .png/.pgm/.ppm in `dir`, sorted by file name. Colour images
/// keep their RGB planes and carry their luma in `gray`.
///
/// Throws InvalidInput for an empty directory or when sizes differ (the
/// message lists each distinct size and an example file).
std::vector<NamedImage> ingest(const std::filesystem::path& dir);

/// Seeded Fisher-Yates split of indices [0, n). Test indices are the first
/// `test_count` of the shuffled order; both lists are returned sorted.
struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};
Split split_indices(std::size_t n, std::size_t test_count, std::uint64_t seed);

enum class SweepAxis { none, tau, k, window, f, train_size, rl_iterations, shift };

std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name);

struct Shift {
    int dx = 0;
    int dy = 0;
    friend bool operator==(const Shift&, const Shift&) = default;
};

/// One experiment: data source, protocol and configuration.
struct ExperimentSpec {
    std::filesystem::path corpus_dir;
    /// Separate test images; when empty a seeded split of corpus_dir is used.
    std::filesystem::path test_dir;
    int test_count = 40;
    std::uint64_t seed = 7;
    /// Use only the first N training images of the split (0 = all).
    int train_size = 0;
    bool color = false;
    /// Integer translation (edge replicated) applied to each test HR image
    /// before degradation.
    Shift shift;
    HallucinationConfig config;
    SweepAxis sweep_axis = SweepAxis::none;
    std::vector<std::string> sweep_values;
    std::filesystem::path output_dir;
};

nlohmann::json to_json(const ExperimentSpec& spec);
/// Applies the keys present in `j` on top of `base`. Unknown keys are rejected.
ExperimentSpec spec_from_json(const nlohmann::json& j, ExperimentSpec base = {});

/// Train / test images after splitting.
struct Dataset {
    std::vector<NamedImage> train;
    std::vector<NamedImage> test;
};

Dataset load_dataset(const ExperimentSpec& spec);
/// Splits an in-memory image list the same way load_dataset splits a folder.
Dataset split_dataset(std::vector<NamedImage> images, const ExperimentSpec& spec);

struct RunOutcome {
    QualityReport bicubic;
    /// Report after each hallucination pass (index 0 = plain TLcR).
    std::vector<QualityReport> iterations;
    QualityReport final_report;
    HallucinationStats stats;
    double seconds = 0.0;
};

/// Runs one configuration over a dataset. Writes images, CSVs and
/// summary.json into spec.output_dir unless it is empty.
RunOutcome run_configuration(const Dataset& data, const ExperimentSpec& spec);

/// Applies one sweep value of `spec.sweep_axis` to a copy of `spec`.
ExperimentSpec apply_sweep_value(const ExperimentSpec& spec, const std::string& value);

struct SweepEntry {
    std::string label;
    ExperimentSpec spec;
    RunOutcome outcome;
};

/// Runs every sweep value into <output_dir>/<axis>_<value>. The shift axis
/// runs each shift twice, once with window = patch size (position patches)
/// and once with the configured window. Writes sweep.csv and sweep.json.
/// Sub-runs whose directory already holds a summary for the same configuration are
/// read back instead of recomputed.
std::vector<SweepEntry> run_sweep(const Dataset& data, const ExperimentSpec& spec);

/// Sub-runs of a sweep without executing them.
std::vector<std::pair<std::string, ExperimentSpec>> expand_sweep(const ExperimentSpec& spec);

/// Writes `count` synthetic faces as face_XXXX.png into `dir`.
void write_synthetic_corpus(const std::filesystem::path& dir, int count, std::uint64_t seed, int width, int height);

} // namespace tlcr
