// Command-line front end: corpus synthesis and preparation, single runs,
// parameter sweeps, and the standalone image operators.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tlcr/error.hpp"
#include "tlcr/experiment.hpp"
#include "tlcr/image_io.hpp"
#include "tlcr/metrics.hpp"
#include "tlcr/resample.hpp"

namespace fs = std::filesystem;

namespace {

struct ExperimentFlags {
    std::string config;
    std::string corpus;
    std::string test_dir;
    int test_count = 0;
    std::uint64_t seed = 0;
    int train_size = 0;
    bool color = false;
    std::string shift;
    int scale = 0;
    int patch = 0;
    int overlap = 0;
    int window = 0;
    int step = 0;
    double tau = 0;
    int k = 0;
    double f = 0;
    int rl_iters = 0;
    double ridge_eps = 0;
    bool accumulate = false;
    int threads = 0;
    std::string out;
    std::string axis;
    std::string values;

    std::map<std::string, CLI::Option*> options;

    bool given(const std::string& name) const {
        const auto it = options.find(name);
        return it != options.end() && it->second->count() > 0;
    }
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& fl, bool sweep) {
    auto& o = fl.options;
    o["config"] = cmd->add_option("--config", fl.config, "JSON config; flags override its values")->check(CLI::ExistingFile);
    o["corpus"] = cmd->add_option("--corpus", fl.corpus, "Directory of aligned HR training images");
    o["test_dir"] = cmd->add_option("--test-dir", fl.test_dir, "Separate directory of HR test images");
    o["test_count"] = cmd->add_option("--test-count", fl.test_count, "Test images drawn by the seeded split");
    o["seed"] = cmd->add_option("--seed", fl.seed, "Split seed");
    o["train_size"] = cmd->add_option("--train-size", fl.train_size, "Use only the first N training images");
    o["color"] = cmd->add_flag("--color", fl.color, "Colour inputs: hallucinate luminance, bicubic chroma");
    o["shift"] = cmd->add_option("--shift", fl.shift, "Test misalignment dx:dy in HR pixels");
    o["scale"] = cmd->add_option("--scale", fl.scale, "Magnification factor");
    o["patch"] = cmd->add_option("--patch", fl.patch, "Patch size (HR pixels)");
    o["overlap"] = cmd->add_option("--overlap", fl.overlap, "Patch overlap (HR pixels)");
    o["window"] = cmd->add_option("--window", fl.window, "Context window size (HR pixels)");
    o["step"] = cmd->add_option("--step", fl.step, "Context window step (HR pixels)");
    o["tau"] = cmd->add_option("--tau", fl.tau, "Locality regularisation");
    o["k"] = cmd->add_option("--k", fl.k, "Nearest candidates kept per patch");
    o["f"] = cmd->add_option("--f", fl.f, "Weight of the position features");
    o["rl_iters"] = cmd->add_option("--rl-iters", fl.rl_iters, "Reproducing-learning iterations");
    o["ridge_eps"] = cmd->add_option("--ridge-eps", fl.ridge_eps, "Relative diagonal stabiliser");
    o["accumulate"] = cmd->add_flag("--accumulate", fl.accumulate, "Keep every reproduced estimate");
    o["threads"] = cmd->add_option("--threads", fl.threads, "Worker threads (0 = all cores)");
    o["out"] = cmd->add_option("--out", fl.out, "Output directory");
    if (sweep) {
        o["axis"] = cmd->add_option("--axis", fl.axis, "tau | k | window | f | train_size | rl_iterations | shift");
        o["values"] = cmd->add_option("--values", fl.values, "Comma-separated sweep values (shift: dx:dy)");
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

tlcr::ExperimentSpec build_spec(const ExperimentFlags& fl) {
    tlcr::ExperimentSpec spec;
    if (!fl.config.empty()) {
        std::ifstream in(fl.config);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw tlcr::InvalidInput("cannot parse config " + fl.config + ": " + e.what());
        }
        spec = tlcr::spec_from_json(j, spec);
    }
    auto& c = spec.config;
    if (fl.given("corpus")) spec.corpus_dir = fl.corpus;
    if (fl.given("test_dir")) spec.test_dir = fl.test_dir;
    if (fl.given("test_count")) spec.test_count = fl.test_count;
    if (fl.given("seed")) spec.seed = fl.seed;
    if (fl.given("train_size")) spec.train_size = fl.train_size;
    if (fl.given("color")) spec.color = fl.color;
    if (fl.given("shift")) {
        tlcr::ExperimentSpec probe;
        probe.sweep_axis = tlcr::SweepAxis::shift;
        spec.shift = tlcr::apply_sweep_value(probe, fl.shift).shift;
    }
    if (fl.given("scale")) c.scale = fl.scale;
    if (fl.given("patch")) c.patch_size = fl.patch;
    if (fl.given("overlap")) c.overlap = fl.overlap;
    if (fl.given("window")) c.window_size = fl.window;
    if (fl.given("step")) c.context_step = fl.step;
    if (fl.given("tau")) c.tau = fl.tau;
    if (fl.given("k")) c.k = fl.k;
    if (fl.given("f")) c.f = fl.f;
    if (fl.given("rl_iters")) c.rl_iterations = fl.rl_iters;
    if (fl.given("ridge_eps")) c.ridge_eps = fl.ridge_eps;
    if (fl.given("accumulate")) c.accumulate_reproduced = fl.accumulate;
    if (fl.given("threads")) c.threads = fl.threads;
    if (fl.given("out")) spec.output_dir = fl.out;
    if (fl.given("axis")) spec.sweep_axis = tlcr::parse_sweep_axis(fl.axis);
    if (fl.given("values")) spec.sweep_values = split_list(fl.values);
    return spec;
}

template <class Op>
void apply_to_file(const std::string& input, const std::string& output, Op op) {
    tlcr::AnyImage img = tlcr::load_image(input);
    if (auto* gray = std::get_if<tlcr::ImageBuffer>(&img)) {
        tlcr::save_image(output, op(*gray));
    } else {
        const auto& c = std::get<tlcr::ColorImage>(img);
        tlcr::save_image(output, tlcr::ColorImage(op(c.c0), op(c.c1), op(c.c2)));
    }
}

std::map<std::string, fs::path> image_files(const fs::path& p, const std::string& suffix) {
    std::map<std::string, fs::path> out;
    auto add = [&](const fs::path& file) {
        std::string id = file.stem().string();
        if (!suffix.empty() && id.size() > suffix.size() && id.ends_with(suffix)) {
            id.resize(id.size() - suffix.size());
        } else if (!suffix.empty()) {
            return;
        }
        out[id] = file;
    };
    if (fs::is_directory(p)) {
        for (const auto& e : fs::directory_iterator(p)) {
            const auto ext = e.path().extension().string();
            if (e.is_regular_file() && (ext == ".png" || ext == ".pgm" || ext == ".ppm")) {
                add(e.path());
            }
        }
    } else {
        out[p.stem().string()] = p;
    }
    return out;
}

void print_outcome(const std::string& label, const tlcr::RunOutcome& o) {
    std::cout << (label.empty() ? std::string("run") : label) << ": bicubic " << o.bicubic.mean_psnr_db
              << " dB, TLcR " << o.iterations.front().mean_psnr_db << " dB, final "
              << o.final_report.mean_psnr_db << " dB / SSIM " << o.final_report.mean_ssim << " (" << o.seconds
              << " s)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Example-based face super-resolution (TLcR-RL)"};
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth", "Write a synthetic aligned face corpus");
    int synth_count = 400;
    std::uint64_t synth_seed = 1;
    int synth_w = 100;
    int synth_h = 120;
    std::string synth_out;
    synth->add_option("--count", synth_count, "Number of faces")->capture_default_str();
    synth->add_option("--seed", synth_seed, "Generator seed")->capture_default_str();
    synth->add_option("--width", synth_w, "Image width")->capture_default_str();
    synth->add_option("--height", synth_h, "Image height")->capture_default_str();
    synth->add_option("--out", synth_out, "Output directory")->required();

    auto* prepare = app.add_subcommand("prepare", "Write degraded and bicubic versions of a corpus");
    std::string prep_corpus;
    std::string prep_out;
    int prep_scale = 4;
    prepare->add_option("--corpus", prep_corpus, "HR image directory")->required();
    prepare->add_option("--out", prep_out, "Output directory")->required();
    prepare->add_option("--scale", prep_scale, "Magnification factor")->capture_default_str();

    ExperimentFlags run_flags;
    auto* run = app.add_subcommand("run", "Hallucinate a test set and report metrics");
    add_experiment_flags(run, run_flags, false);

    ExperimentFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Run one configuration per value of a parameter axis");
    add_experiment_flags(sweep, sweep_flags, true);

    std::string op_in;
    std::string op_out;
    int op_scale = 4;
    auto* degrade_cmd = app.add_subcommand("degrade", "Block-average and decimate an image");
    degrade_cmd->add_option("input", op_in, "Input image")->required();
    degrade_cmd->add_option("output", op_out, "Output image")->required();
    degrade_cmd->add_option("--scale", op_scale, "Decimation factor")->capture_default_str();
    auto* upscale_cmd = app.add_subcommand("upscale", "Bicubic enlargement of an image");
    upscale_cmd->add_option("input", op_in, "Input image")->required();
    upscale_cmd->add_option("output", op_out, "Output image")->required();
    upscale_cmd->add_option("--scale", op_scale, "Magnification factor")->capture_default_str();

    auto* metrics_cmd = app.add_subcommand("metrics", "PSNR / SSIM of images against references");
    std::string m_ref;
    std::string m_test;
    std::string m_suffix;
    std::string m_out;
    metrics_cmd->add_option("--ref", m_ref, "Reference image or directory")->required();
    metrics_cmd->add_option("--test", m_test, "Test image or directory")->required();
    metrics_cmd->add_option("--suffix", m_suffix, "Strip this stem suffix from test files (e.g. _final)");
    metrics_cmd->add_option("--out", m_out, "CSV output (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) {
            tlcr::write_synthetic_corpus(synth_out, synth_count, synth_seed, synth_w, synth_h);
            std::cout << "wrote " << synth_count << " faces to " << synth_out << "\n";
        } else if (*prepare) {
            const auto images = tlcr::ingest(prep_corpus);
            const fs::path out(prep_out);
            fs::create_directories(out / "lr");
            fs::create_directories(out / "bicubic");
            nlohmann::json manifest = {{"scale", prep_scale}, {"images", nlohmann::json::array()}};
            for (const auto& img : images) {
                const tlcr::ImageBuffer lr = tlcr::degrade(img.gray, prep_scale);
                tlcr::save_image(out / "lr" / (img.id + ".png"), lr);
                tlcr::save_image(out / "bicubic" / (img.id + ".png"), tlcr::bicubic_upscale(lr, prep_scale));
                manifest["images"].push_back(
                    {{"id", img.id}, {"width", img.gray.width()}, {"height", img.gray.height()}});
            }
            std::ofstream(out / "manifest.json") << manifest.dump(2) << "\n";
            std::cout << "prepared " << images.size() << " images in " << prep_out << "\n";
        } else if (*run) {
            const tlcr::ExperimentSpec spec = build_spec(run_flags);
            const tlcr::Dataset data = tlcr::load_dataset(spec);
            print_outcome("", tlcr::run_configuration(data, spec));
        } else if (*sweep) {
            const tlcr::ExperimentSpec spec = build_spec(sweep_flags);
            if (spec.sweep_axis == tlcr::SweepAxis::none) {
                throw tlcr::InvalidInput("sweep needs --axis and --values (or a 'sweep' config entry)");
            }
            const tlcr::Dataset data = tlcr::load_dataset(spec);
            for (const auto& e : tlcr::run_sweep(data, spec)) {
                print_outcome(e.label, e.outcome);
            }
        } else if (*degrade_cmd) {
            apply_to_file(op_in, op_out, [&](const tlcr::ImageBuffer& b) { return tlcr::degrade(b, op_scale); });
        } else if (*upscale_cmd) {
            apply_to_file(op_in, op_out,
                          [&](const tlcr::ImageBuffer& b) { return tlcr::bicubic_upscale(b, op_scale); });
        } else if (*metrics_cmd) {
            const auto refs = image_files(m_ref, "");
            const auto tests = image_files(m_test, m_suffix);
            std::vector<std::string> ids;
            std::vector<tlcr::ImageBuffer> outputs;
            std::vector<tlcr::ImageBuffer> truths;
            for (const auto& [id, path] : tests) {
                const auto ref = refs.size() == 1 && tests.size() == 1 ? refs.begin() : refs.find(id);
                if (ref == refs.end()) {
                    throw tlcr::InvalidInput("no reference image for '" + id + "'");
                }
                ids.push_back(id);
                outputs.push_back(tlcr::load_gray(path));
                truths.push_back(tlcr::load_gray(ref->second));
            }
            const auto report = tlcr::evaluate(ids, outputs, truths);
            if (m_out.empty()) {
                tlcr::write_csv(std::cout, report);
            } else {
                tlcr::write_csv(fs::path(m_out), report);
            }
        }
    } catch (const tlcr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
