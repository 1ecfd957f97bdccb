#include "tlcr/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "tlcr/color.hpp"
#include "tlcr/error.hpp"
#include "tlcr/image_io.hpp"
#include "tlcr/resample.hpp"
#include "tlcr/synth.hpp"

namespace tlcr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

std::string dims(int w, int h) { return std::to_string(w) + "x" + std::to_string(h); }

std::string iteration_tag(std::size_t k) {
    std::ostringstream os;
    os << "iter" << k;
    return os.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
}

int parse_int(const std::string& s, const char* what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw InvalidInput(std::string("invalid ") + what + " value '" + s + "'");
    }
    return v;
}

double parse_real(const std::string& s, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw InvalidInput(std::string("invalid ") + what + " value '" + s + "'");
    }
    return v;
}

Shift parse_shift(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
        throw InvalidInput("shift values are written dx:dy, got '" + s + "'");
    }
    return {parse_int(s.substr(0, colon), "shift"), parse_int(s.substr(colon + 1), "shift")};
}

std::string trace_csv(const RunOutcome& outcome) {
    std::ostringstream os;
    os << "iteration,mean_psnr_db,mean_ssim,delta_psnr_db\n" << std::fixed << std::setprecision(6);
    for (std::size_t k = 0; k < outcome.iterations.size(); ++k) {
        const double delta = k == 0 ? 0.0 : outcome.iterations[k].mean_psnr_db - outcome.iterations[k - 1].mean_psnr_db;
        os << k << ',' << outcome.iterations[k].mean_psnr_db << ',' << outcome.iterations[k].mean_ssim << ','
           << delta << '\n';
    }
    return os.str();
}

json stats_json(const HallucinationStats& s) {
    return {{"patches", s.patches}, {"k_clamped", s.k_clamped}, {"uniform_fallbacks", s.fallbacks}};
}

// Outcome of a sub-run already present on disk with a matching recorded spec.
// summary.json is written last, so its presence marks a finished run.
std::optional<RunOutcome> completed_run(const ExperimentSpec& spec) {
    const fs::path summary_path = spec.output_dir / "summary.json";
    if (spec.output_dir.empty() || !fs::exists(summary_path)) {
        return std::nullopt;
    }
    json summary;
    try {
        std::ifstream in(summary_path);
        in >> summary;
    } catch (const json::exception&) {
        return std::nullopt;
    }
    ExperimentSpec recorded = spec;
    recorded.sweep_axis = SweepAxis::none;
    recorded.sweep_values.clear();
    if (!summary.contains("spec") || summary["spec"] != to_json(recorded)) {
        return std::nullopt;
    }
    RunOutcome outcome;
    try {
        outcome.bicubic = read_csv(spec.output_dir / "metrics_bicubic.csv");
        outcome.final_report = read_csv(spec.output_dir / "metrics.csv");
        for (int k = 0; k <= spec.config.rl_iterations; ++k) {
            outcome.iterations.push_back(read_csv(spec.output_dir / ("metrics_" + iteration_tag(k) + ".csv")));
        }
        const json& st = summary.at("stats");
        outcome.stats.patches = st.at("patches").get<std::size_t>();
        outcome.stats.k_clamped = st.at("k_clamped").get<std::size_t>();
        outcome.stats.fallbacks = st.at("uniform_fallbacks").get<std::size_t>();
        outcome.seconds = summary.at("timing_seconds").get<double>();
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return outcome;
}

} // namespace

std::vector<NamedImage> ingest(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw IoError("not a directory: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && is_image_file(e.path())) {
            files.push_back(e.path());
        }
    }
    if (files.empty()) {
        throw InvalidInput("no images found in " + dir.string());
    }
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
        return a.filename().string() < b.filename().string();
    });

    std::vector<NamedImage> out;
    out.reserve(files.size());
    std::map<std::pair<int, int>, std::string> sizes;
    for (const auto& f : files) {
        NamedImage img;
        img.id = f.stem().string();
        AnyImage loaded = load_image(f);
        if (auto* c = std::get_if<ColorImage>(&loaded)) {
            img.gray = luminance(*c);
            img.color = std::move(*c);
        } else {
            img.gray = std::get<ImageBuffer>(std::move(loaded));
        }
        sizes.emplace(std::make_pair(img.gray.width(), img.gray.height()), f.filename().string());
        out.push_back(std::move(img));
    }
    if (sizes.size() > 1) {
        std::string msg = "images in " + dir.string() + " have mixed dimensions:";
        for (const auto& [wh, example] : sizes) {
            msg += " " + dims(wh.first, wh.second) + " (e.g. " + example + ")";
        }
        throw InvalidInput(msg);
    }
    std::set<std::string> ids;
    for (const auto& img : out) {
        if (!ids.insert(img.id).second) {
            throw InvalidInput("duplicate image id '" + img.id + "' in " + dir.string());
        }
    }
    return out;
}

Split split_indices(std::size_t n, std::size_t test_count, std::uint64_t seed) {
    if (test_count >= n) {
        throw InvalidInput("split: test count " + std::to_string(test_count) + " leaves no training images out of " +
                           std::to_string(n));
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    SplitMix64 rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(order[i - 1], order[j]);
    }
    Split s;
    s.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(test_count));
    s.train.assign(order.begin() + static_cast<std::ptrdiff_t>(test_count), order.end());
    std::sort(s.test.begin(), s.test.end());
    std::sort(s.train.begin(), s.train.end());
    return s;
}

std::string to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::none: return "none";
    case SweepAxis::tau: return "tau";
    case SweepAxis::k: return "k";
    case SweepAxis::window: return "window";
    case SweepAxis::f: return "f";
    case SweepAxis::train_size: return "train_size";
    case SweepAxis::rl_iterations: return "rl_iterations";
    case SweepAxis::shift: return "shift";
    }
    return "none";
}

SweepAxis parse_sweep_axis(const std::string& name) {
    for (SweepAxis a : {SweepAxis::none, SweepAxis::tau, SweepAxis::k, SweepAxis::window, SweepAxis::f,
                        SweepAxis::train_size, SweepAxis::rl_iterations, SweepAxis::shift}) {
        if (to_string(a) == name) {
            return a;
        }
    }
    throw InvalidInput("unknown sweep axis '" + name +
                       "' (expected tau, k, window, f, train_size, rl_iterations or shift)");
}

json to_json(const ExperimentSpec& spec) {
    const HallucinationConfig& c = spec.config;
    json j = {
        {"corpus_dir", spec.corpus_dir.string()},
        {"test_dir", spec.test_dir.string()},
        {"test_count", spec.test_count},
        {"seed", spec.seed},
        {"train_size", spec.train_size},
        {"color", spec.color},
        {"shift", {spec.shift.dx, spec.shift.dy}},
        {"scale", c.scale},
        {"patch", c.patch_size},
        {"overlap", c.overlap},
        {"window", c.window_size},
        {"step", c.context_step},
        {"tau", c.tau},
        {"k", c.k},
        {"f", c.f},
        {"rl_iters", c.rl_iterations},
        {"ridge_eps", c.ridge_eps},
        {"accumulate", c.accumulate_reproduced},
        {"threads", c.threads},
        {"out", spec.output_dir.string()},
    };
    if (spec.sweep_axis != SweepAxis::none) {
        j["sweep"] = {{"axis", to_string(spec.sweep_axis)}, {"values", spec.sweep_values}};
    }
    return j;
}

ExperimentSpec spec_from_json(const json& input, ExperimentSpec spec) {
    // A run summary nests the spec under "spec".
    const json& j = input.contains("spec") && input.at("spec").is_object() ? input.at("spec") : input;
    if (!j.is_object()) {
        throw InvalidInput("config must be a JSON object");
    }
    HallucinationConfig& c = spec.config;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "corpus_dir") spec.corpus_dir = value.get<std::string>();
            else if (key == "test_dir") spec.test_dir = value.get<std::string>();
            else if (key == "test_count") spec.test_count = value.get<int>();
            else if (key == "seed") spec.seed = value.get<std::uint64_t>();
            else if (key == "train_size") spec.train_size = value.get<int>();
            else if (key == "color") spec.color = value.get<bool>();
            else if (key == "shift") {
                const auto v = value.get<std::vector<int>>();
                if (v.size() != 2) {
                    throw InvalidInput("config key 'shift' must be [dx, dy]");
                }
                spec.shift = {v[0], v[1]};
            }
            else if (key == "scale") c.scale = value.get<int>();
            else if (key == "patch") c.patch_size = value.get<int>();
            else if (key == "overlap") c.overlap = value.get<int>();
            else if (key == "window") c.window_size = value.get<int>();
            else if (key == "step") c.context_step = value.get<int>();
            else if (key == "tau") c.tau = value.get<double>();
            else if (key == "k") c.k = value.get<int>();
            else if (key == "f") c.f = value.get<double>();
            else if (key == "rl_iters") c.rl_iterations = value.get<int>();
            else if (key == "ridge_eps") c.ridge_eps = value.get<double>();
            else if (key == "accumulate") c.accumulate_reproduced = value.get<bool>();
            else if (key == "threads") c.threads = value.get<int>();
            else if (key == "out") spec.output_dir = value.get<std::string>();
            else if (key == "sweep") {
                spec.sweep_axis = parse_sweep_axis(value.at("axis").get<std::string>());
                spec.sweep_values.clear();
                for (const auto& v : value.at("values")) {
                    if (v.is_string()) {
                        spec.sweep_values.push_back(v.get<std::string>());
                    } else {
                        spec.sweep_values.push_back(v.dump());
                    }
                }
            } else {
                throw InvalidInput("unknown config key '" + key + "'");
            }
        } catch (const json::exception& e) {
            throw InvalidInput("config key '" + key + "': " + e.what());
        }
    }
    return spec;
}

Dataset split_dataset(std::vector<NamedImage> images, const ExperimentSpec& spec) {
    if (spec.test_count < 1) {
        throw InvalidInput("test_count must be >= 1");
    }
    const Split s = split_indices(images.size(), static_cast<std::size_t>(spec.test_count), spec.seed);
    Dataset d;
    for (std::size_t i : s.train) {
        d.train.push_back(std::move(images[i]));
    }
    for (std::size_t i : s.test) {
        d.test.push_back(std::move(images[i]));
    }
    return d;
}

Dataset load_dataset(const ExperimentSpec& spec) {
    if (spec.corpus_dir.empty()) {
        throw InvalidInput("no corpus directory given");
    }
    auto corpus = ingest(spec.corpus_dir);
    if (spec.test_dir.empty()) {
        return split_dataset(std::move(corpus), spec);
    }
    Dataset d;
    d.train = std::move(corpus);
    d.test = ingest(spec.test_dir);
    return d;
}

RunOutcome run_configuration(const Dataset& data, const ExperimentSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    const HallucinationConfig& cfg = spec.config;
    if (data.train.empty() || data.test.empty()) {
        throw InvalidInput("run: need at least one training and one test image");
    }

    std::size_t train_n = data.train.size();
    if (spec.train_size > 0) {
        if (static_cast<std::size_t>(spec.train_size) > data.train.size()) {
            throw InvalidInput("train_size " + std::to_string(spec.train_size) + " exceeds the " +
                               std::to_string(data.train.size()) + " available training images");
        }
        train_n = static_cast<std::size_t>(spec.train_size);
    }
    std::vector<ImageBuffer> train;
    train.reserve(train_n);
    for (std::size_t i = 0; i < train_n; ++i) {
        train.push_back(data.train[i].gray);
    }
    TrainingCorpus corpus;
    try {
        corpus = prepare_corpus(std::move(train), cfg);
    } catch (const Error& e) {
        throw Error(std::string("stage 'prepare' failed: ") + e.what());
    }

    const bool write = !spec.output_dir.empty();
    const fs::path image_dir = spec.output_dir / "images";
    if (write) {
        fs::create_directories(image_dir);
    }

    std::vector<std::string> ids;
    std::vector<ImageBuffer> truths;
    std::vector<ImageBuffer> bicubics;
    std::vector<std::vector<ImageBuffer>> passes(static_cast<std::size_t>(std::max(0, cfg.rl_iterations)) + 1);
    RunOutcome outcome;

    std::vector<const NamedImage*> tests;
    for (const auto& t : data.test) {
        tests.push_back(&t);
    }
    std::sort(tests.begin(), tests.end(), [](const NamedImage* a, const NamedImage* b) { return a->id < b->id; });

    for (const NamedImage* test : tests) {
        const std::string& id = test->id;
        std::string stage = "degrade";
        try {
            const bool color = spec.color && test->color.has_value();
            ImageBuffer truth = translate(test->gray, spec.shift.dx, spec.shift.dy);
            std::optional<ColorImage> lr_rgb;
            ImageBuffer lr;
            if (color) {
                const ColorImage& c = *test->color;
                const ColorImage shifted(translate(c.c0, spec.shift.dx, spec.shift.dy),
                                         translate(c.c1, spec.shift.dx, spec.shift.dy),
                                         translate(c.c2, spec.shift.dx, spec.shift.dy));
                lr_rgb = ColorImage(degrade(shifted.c0, cfg.scale), degrade(shifted.c1, cfg.scale),
                                    degrade(shifted.c2, cfg.scale));
                truth = rgb_to_yuv(shifted).c0;
                lr = rgb_to_yuv(*lr_rgb).c0;
            } else {
                lr = degrade(truth, cfg.scale);
            }
            stage = "upscale";
            ImageBuffer bicubic = bicubic_upscale(lr, cfg.scale);
            stage = "hallucinate";
            HallucinationResult result = hallucinate(lr, corpus, cfg);
            outcome.stats += result.stats;

            if (write) {
                stage = "write";
                if (color) {
                    const ColorImage yuv_lr = rgb_to_yuv(*lr_rgb);
                    const ImageBuffer u = bicubic_upscale(yuv_lr.c1, cfg.scale);
                    const ImageBuffer v = bicubic_upscale(yuv_lr.c2, cfg.scale);
                    save_image(image_dir / (id + "_lr.png"), *lr_rgb);
                    save_image(image_dir / (id + "_bicubic.png"), yuv_to_rgb(ColorImage(bicubic, u, v)));
                    for (std::size_t k = 0; k < result.iterations.size(); ++k) {
                        save_image(image_dir / (id + "_" + iteration_tag(k) + ".png"),
                                   yuv_to_rgb(ColorImage(result.iterations[k], u, v)));
                    }
                    save_image(image_dir / (id + "_final.png"), yuv_to_rgb(ColorImage(result.image, u, v)));
                } else {
                    save_image(image_dir / (id + "_lr.png"), lr);
                    save_image(image_dir / (id + "_bicubic.png"), bicubic);
                    for (std::size_t k = 0; k < result.iterations.size(); ++k) {
                        save_image(image_dir / (id + "_" + iteration_tag(k) + ".png"), result.iterations[k]);
                    }
                    save_image(image_dir / (id + "_final.png"), result.image);
                }
            }
            ids.push_back(id);
            truths.push_back(std::move(truth));
            bicubics.push_back(std::move(bicubic));
            for (std::size_t k = 0; k < result.iterations.size(); ++k) {
                passes[k].push_back(std::move(result.iterations[k]));
            }
        } catch (const Error& e) {
            throw Error("stage '" + stage + "' failed for image '" + id + "': " + e.what());
        }
    }

    outcome.bicubic = evaluate(ids, bicubics, truths);
    for (const auto& pass : passes) {
        outcome.iterations.push_back(evaluate(ids, pass, truths));
    }
    outcome.final_report = outcome.iterations.back();
    outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (write) {
        write_csv(spec.output_dir / "metrics.csv", outcome.final_report);
        write_csv(spec.output_dir / "metrics_bicubic.csv", outcome.bicubic);
        for (std::size_t k = 0; k < outcome.iterations.size(); ++k) {
            write_csv(spec.output_dir / ("metrics_" + iteration_tag(k) + ".csv"), outcome.iterations[k]);
        }
        write_text(spec.output_dir / "rl_trace.csv", trace_csv(outcome));

        ExperimentSpec recorded = spec;
        recorded.sweep_axis = SweepAxis::none;
        recorded.sweep_values.clear();
        json train_ids = json::array();
        for (std::size_t i = 0; i < train_n; ++i) {
            train_ids.push_back(data.train[i].id);
        }
        json summary = {
            {"spec", to_json(recorded)},
            {"seed", spec.seed},
            {"train_ids", train_ids},
            {"test_ids", ids},
            {"results",
             {{"bicubic_psnr_db", outcome.bicubic.mean_psnr_db},
              {"bicubic_ssim", outcome.bicubic.mean_ssim},
              {"tlcr_psnr_db", outcome.iterations.front().mean_psnr_db},
              {"tlcr_ssim", outcome.iterations.front().mean_ssim},
              {"final_psnr_db", outcome.final_report.mean_psnr_db},
              {"final_ssim", outcome.final_report.mean_ssim}}},
            {"stats", stats_json(outcome.stats)},
            {"timing_seconds", outcome.seconds},
        };
        write_text(spec.output_dir / "summary.json", summary.dump(2) + "\n");
    }
    return outcome;
}

ExperimentSpec apply_sweep_value(const ExperimentSpec& spec, const std::string& value) {
    ExperimentSpec s = spec;
    s.sweep_axis = SweepAxis::none;
    s.sweep_values.clear();
    HallucinationConfig& c = s.config;
    switch (spec.sweep_axis) {
    case SweepAxis::none:
        break;
    case SweepAxis::tau:
        c.tau = parse_real(value, "tau");
        if (c.tau < 0.0) throw InvalidInput("tau must be >= 0");
        break;
    case SweepAxis::k:
        c.k = parse_int(value, "k");
        if (c.k < 1) throw InvalidInput("k must be >= 1");
        break;
    case SweepAxis::window:
        c.window_size = parse_int(value, "window");
        c.geometry(c.window_size, c.window_size).validate();
        break;
    case SweepAxis::f:
        c.f = parse_real(value, "f");
        break;
    case SweepAxis::train_size:
        s.train_size = parse_int(value, "train_size");
        if (s.train_size < 1) throw InvalidInput("train_size must be >= 1");
        break;
    case SweepAxis::rl_iterations:
        c.rl_iterations = parse_int(value, "rl_iterations");
        if (c.rl_iterations < 0) throw InvalidInput("rl_iterations must be >= 0");
        break;
    case SweepAxis::shift:
        s.shift = parse_shift(value);
        break;
    }
    return s;
}

std::vector<std::pair<std::string, ExperimentSpec>> expand_sweep(const ExperimentSpec& spec) {
    std::vector<std::pair<std::string, ExperimentSpec>> out;
    if (spec.sweep_axis == SweepAxis::none) {
        out.emplace_back("", spec);
        return out;
    }
    if (spec.sweep_values.empty()) {
        throw InvalidInput("sweep over '" + to_string(spec.sweep_axis) + "' has no values");
    }
    const std::string axis = to_string(spec.sweep_axis);
    for (const auto& value : spec.sweep_values) {
        ExperimentSpec sub = apply_sweep_value(spec, value);
        if (spec.sweep_axis == SweepAxis::shift) {
            const std::string base = axis + "_" + std::to_string(sub.shift.dx) + "_" + std::to_string(sub.shift.dy);
            std::vector<int> windows{sub.config.patch_size};
            if (sub.config.window_size != sub.config.patch_size) {
                windows.push_back(sub.config.window_size);
            }
            for (int w : windows) {
                ExperimentSpec v = sub;
                v.config.window_size = w;
                const std::string label = base + "/window_" + std::to_string(w);
                v.output_dir = spec.output_dir.empty() ? fs::path() : spec.output_dir / label;
                out.emplace_back(label, std::move(v));
            }
        } else {
            const std::string label = axis + "_" + value;
            sub.output_dir = spec.output_dir.empty() ? fs::path() : spec.output_dir / label;
            out.emplace_back(label, std::move(sub));
        }
    }
    return out;
}

std::vector<SweepEntry> run_sweep(const Dataset& data, const ExperimentSpec& spec) {
    std::vector<SweepEntry> entries;
    for (auto& [label, sub] : expand_sweep(spec)) {
        SweepEntry e;
        e.label = label;
        e.spec = sub;
        std::optional<RunOutcome> done = completed_run(sub);
        if (!done) {
            e.outcome = run_configuration(data, sub);
            // Re-read what was written so fresh and resumed sweeps report identically.
            done = completed_run(sub);
        }
        if (done) {
            e.outcome = std::move(*done);
        }
        entries.push_back(std::move(e));
    }
    if (!spec.output_dir.empty() && spec.sweep_axis != SweepAxis::none) {
        fs::create_directories(spec.output_dir);
        std::ostringstream csv;
        csv << "label,bicubic_psnr_db,tlcr_psnr_db,final_psnr_db,final_ssim\n" << std::fixed << std::setprecision(6);
        json runs = json::array();
        for (const auto& e : entries) {
            const RunOutcome& o = e.outcome;
            csv << e.label << ',' << o.bicubic.mean_psnr_db << ',' << o.iterations.front().mean_psnr_db << ','
                << o.final_report.mean_psnr_db << ',' << o.final_report.mean_ssim << '\n';
            runs.push_back({{"label", e.label},
                            {"final_psnr_db", o.final_report.mean_psnr_db},
                            {"final_ssim", o.final_report.mean_ssim},
                            {"bicubic_psnr_db", o.bicubic.mean_psnr_db}});
        }
        json sweep = {{"axis", to_string(spec.sweep_axis)}, {"values", spec.sweep_values}, {"runs", runs}};
        if (spec.sweep_axis == SweepAxis::rl_iterations) {
            bool monotone = true;
            for (std::size_t i = 1; i < entries.size(); ++i) {
                monotone = monotone && entries[i].outcome.final_report.mean_psnr_db >=
                                           entries[i - 1].outcome.final_report.mean_psnr_db;
            }
            sweep["psnr_monotone_non_decreasing"] = monotone;
        }
        if (spec.sweep_axis == SweepAxis::shift) {
            // PSNR drop of each window setting relative to its unshifted run.
            std::map<int, double> aligned;
            for (const auto& e : entries) {
                if (e.spec.shift == Shift{}) {
                    aligned[e.spec.config.window_size] = e.outcome.final_report.mean_psnr_db;
                }
            }
            json drops = json::array();
            for (const auto& e : entries) {
                const auto it = aligned.find(e.spec.config.window_size);
                if (it != aligned.end() && !(e.spec.shift == Shift{})) {
                    drops.push_back({{"label", e.label},
                                     {"window", e.spec.config.window_size},
                                     {"psnr_drop_db", it->second - e.outcome.final_report.mean_psnr_db}});
                }
            }
            sweep["misalignment_drops"] = drops;
        }
        write_text(spec.output_dir / "sweep.csv", csv.str());
        write_text(spec.output_dir / "sweep.json", sweep.dump(2) + "\n");
    }
    return entries;
}

void write_synthetic_corpus(const fs::path& dir, int count, std::uint64_t seed, int width, int height) {
    fs::create_directories(dir);
    const auto faces = synth_faces(count, seed, width, height);
    for (std::size_t i = 0; i < faces.size(); ++i) {
        std::ostringstream name;
        name << "face_" << std::setw(4) << std::setfill('0') << i << ".png";
        save_image(dir / name.str(), faces[i]);
    }
}

} // namespace tlcr
