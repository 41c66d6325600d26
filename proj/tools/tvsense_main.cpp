// Copyright 2026 TVSense Authors
// Command-line surface: corpus synthesis, feature dumps, SVM training,
// clip classification, shot detection, record fusion, scoring, and sweeps.
//
// Licensed under the Apache License, Version 2.0

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvsense/audio_io.hpp"
#include "tvsense/dsp_features.hpp"
#include "tvsense/errors.hpp"
#include "tvsense/eval.hpp"
#include "tvsense/fusion.hpp"
#include "tvsense/manifest.hpp"
#include "tvsense/parallel.hpp"
#include "tvsense/svm.hpp"
#include "tvsense/synth.hpp"
#include "tvsense/visual.hpp"

namespace {

using namespace tvsense;

enum LogLevel { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3 };

int g_log_level = kWarn;

void init_log_level() {
    const char* env = std::getenv("TVSENSE_LOG");
    if (env == nullptr) return;
    const std::string v(env);
    if (v == "debug") g_log_level = kDebug;
    else if (v == "info") g_log_level = kInfo;
    else if (v == "warn") g_log_level = kWarn;
    else if (v == "error") g_log_level = kError;
}

void logmsg(int level, const std::string& msg) {
    if (level < g_log_level) return;
    static const char* names[] = {"debug", "info", "warn", "error"};
    std::fprintf(stderr, "[%s] %s\n", names[level], msg.c_str());
}

void require_file(const std::string& path, const char* stage) {
    if (!std::filesystem::exists(path)) {
        throw IoError(std::string(stage) + ": input '" + path + "' does not exist");
    }
}

std::vector<std::pair<std::string, int>> parse_counts(const std::string& text) {
    std::vector<std::pair<std::string, int>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected name=count, got '" + item + "'");
        }
        out.emplace_back(item.substr(0, eq), std::stoi(item.substr(eq + 1)));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Writes to the path, or to stdout for "-".
class OutputSink {
public:
    explicit OutputSink(const std::string& path) : path_(path) {
        if (path_ != "-") {
            file_.open(path_, std::ios::binary | std::ios::trunc);
            if (!file_) throw IoError("cannot open '" + path_ + "' for writing");
        }
    }
    std::ostream& stream() { return path_ == "-" ? std::cout : file_; }
    void finish() {
        stream().flush();
        if (path_ != "-" && !file_) throw IoError("write failed for '" + path_ + "'");
    }

private:
    std::string path_;
    std::ofstream file_;
};

struct CommonAudioFlags {
    int rate = 44100;
    double window_seconds = 1.0;
    std::string features;
    int jobs = 1;

    ControllerConfig controller() const {
        ControllerConfig cfg;
        cfg.audio_sample_rate = rate;
        cfg.audio_window_seconds = window_seconds;
        cfg.feature_subset = parse_name_list(features);
        return cfg;
    }
};

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthArgs {
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string audio, audio_test, shots;
    double duration = 30.0;
    int frames_per_shot = 8;
    int width = 160, height = 120;
};

int run_synth(const SynthArgs& args) {
    CorpusSpec spec;
    if (args.audio.empty() && args.audio_test.empty() && args.shots.empty()) {
        spec = CorpusSpec::standard(args.seed);
    } else {
        for (const auto& [name, count] : parse_counts(args.audio)) {
            spec.audio_train.emplace_back(audio_scene_from_string(name), count);
        }
        for (const auto& [name, count] : parse_counts(args.audio_test)) {
            spec.audio_test.emplace_back(audio_scene_from_string(name), count);
        }
        for (const auto& [name, count] : parse_counts(args.shots)) {
            spec.shots.emplace_back(visual_scene_from_string(name), count);
        }
        spec.seed = args.seed;
    }
    spec.clip_seconds = args.duration;
    spec.frames_per_shot = args.frames_per_shot;
    spec.frame_width = args.width;
    spec.frame_height = args.height;

    const CorpusLayout layout = synth_corpus(spec, args.out_dir);
    std::size_t entries = 0;
    {
        std::ifstream in(layout.manifest);
        std::string line;
        while (std::getline(in, line)) entries += !line.empty();
    }
    std::printf("wrote %zu manifest entries under %s\n", entries, layout.root.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// features
// ---------------------------------------------------------------------------

struct FeaturesArgs {
    std::string input;
    std::string output = "-";
    int rate = 0;  // 0: native
    double window_seconds = 1.0;
};

int run_features(const FeaturesArgs& args) {
    require_file(args.input, "features");
    AudioClip clip = read_wav(args.input);
    if (args.rate > 0 && args.rate < clip.sample_rate) {
        clip = resample(clip, args.rate);
    }
    ExtractOptions opt;
    opt.window_seconds = args.window_seconds;
    const auto rows = extract_features(clip, opt);
    OutputSink sink(args.output);
    write_feature_csv(sink.stream(), rows);
    sink.finish();
    return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainArgs {
    std::string manifest;
    std::string model_path;
    std::string kernel = "rbf";
    double c = 10.0;
    double gamma = 0.0;
    double tol = 1e-3;
    std::size_t max_iter = 100000;
    CommonAudioFlags audio;
};

int run_train(const TrainArgs& args) {
    require_file(args.manifest, "train");
    const ControllerConfig cfg = args.audio.controller();
    cfg.validate();

    std::vector<ManifestEntry> clips;
    for (const auto& entry : read_manifest(args.manifest)) {
        if (!is_audio_label(entry.label)) continue;
        if (!entry.split.empty() && entry.split != "train") continue;
        clips.push_back(entry);
    }
    if (clips.empty()) {
        throw InsufficientDataError("train: no audio rows in '" + args.manifest + "'");
    }

    std::vector<std::vector<LabeledSample>> per_clip(clips.size());
    std::vector<std::string> failures(clips.size());
    parallel_for(clips.size(), args.audio.jobs, [&](std::size_t i) {
        const std::string path = resolve_manifest_path(args.manifest, clips[i].path);
        try {
            const AudioClip clip = read_wav(path);
            const Label label =
                is_tv_label(clips[i].label) ? Label::tv : Label::non_tv;
            for (auto& w : model_windows(clip, cfg)) {
                per_clip[i].push_back({std::move(w), label});
            }
        } catch (const TvError& e) {
            failures[i] = path + ": " + e.what();
        }
    });
    for (const auto& f : failures) {
        if (!f.empty()) throw TvError("train: " + f);
    }

    std::vector<LabeledSample> samples;
    for (auto& group : per_clip) {
        for (auto& s : group) samples.push_back(std::move(s));
    }

    SmoConfig smo;
    smo.kernel = (args.kernel == "linear") ? KernelKind::linear : KernelKind::rbf;
    smo.c = args.c;
    smo.gamma = args.gamma;
    smo.tol = args.tol;
    smo.max_iterations = args.max_iter;

    logmsg(kInfo, "training on " + std::to_string(samples.size()) + " windows from " +
                      std::to_string(clips.size()) + " clips");
    const TrainResult result = train_detailed(samples, smo);
    save_model(result.model, args.model_path);
    std::printf("trained on %zu windows: %zu support vectors, %zu iterations, "
                "dual objective %.6f\n",
                samples.size(), result.model.support_vectors.size(),
                result.iterations, result.objective);
    return 0;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyArgs {
    std::string model_path;
    std::string manifest;
    std::string output = "-";
    CommonAudioFlags audio;
};

int run_classify(const ClassifyArgs& args) {
    require_file(args.model_path, "classify");
    require_file(args.manifest, "classify");
    const SvmModel model = load_model(args.model_path);
    const ControllerConfig cfg = args.audio.controller();
    cfg.validate();

    std::vector<ManifestEntry> clips;
    for (const auto& entry : read_manifest(args.manifest)) {
        if (is_audio_label(entry.label)) clips.push_back(entry);
    }
    if (clips.empty()) {
        throw InsufficientDataError("classify: no audio rows in '" + args.manifest +
                                    "'");
    }

    std::vector<std::string> lines(clips.size());
    parallel_for(clips.size(), args.audio.jobs, [&](std::size_t i) {
        const std::string path = resolve_manifest_path(args.manifest, clips[i].path);
        DetectionRecord record;
        try {
            const AudioClip clip = read_wav(path);
            record = run_pipeline(&clip, nullptr, model, cfg, clips[i].path,
                                  is_tv_label(clips[i].label));
        } catch (const TvError& e) {
            record.clip_id = clips[i].path;
            record.ground_truth = is_tv_label(clips[i].label);
            record.errors.push_back(std::string("acoustic: ") + e.what());
            record.config_digest = cfg.digest();
        }
        lines[i] = to_json_line(record);
    });

    OutputSink sink(args.output);
    for (const auto& line : lines) sink.stream() << line << '\n';
    sink.finish();
    return 0;
}

// ---------------------------------------------------------------------------
// detect-video
// ---------------------------------------------------------------------------

struct DetectArgs {
    std::string manifest;
    std::string shot_dir;
    std::string output = "-";
    int frames_per_shot = 8;
    std::string intersection_mode = "candidate";
    int jobs = 1;
};

int run_detect(const DetectArgs& args) {
    ControllerConfig cfg;
    cfg.frames_per_shot = args.frames_per_shot;
    cfg.intersection_mode = (args.intersection_mode == "bbox")
                                ? IntersectionMode::bbox
                                : IntersectionMode::candidate;
    cfg.validate();

    struct Shot {
        std::string dir;
        std::string id;
        std::optional<bool> truth;
    };
    std::vector<Shot> shots;
    if (!args.shot_dir.empty()) {
        require_file(args.shot_dir, "detect-video");
        shots.push_back({args.shot_dir, args.shot_dir, std::nullopt});
    } else {
        require_file(args.manifest, "detect-video");
        for (const auto& entry : read_manifest(args.manifest)) {
            if (!is_visual_label(entry.label)) continue;
            shots.push_back({resolve_manifest_path(args.manifest, entry.path),
                             entry.path, is_tv_label(entry.label)});
        }
        if (shots.empty()) {
            throw InsufficientDataError("detect-video: no shot rows in '" +
                                        args.manifest + "'");
        }
    }

    std::vector<std::string> lines(shots.size());
    parallel_for(shots.size(), args.jobs, [&](std::size_t i) {
        DetectionRecord record;
        record.clip_id = shots[i].id;
        record.ground_truth = shots[i].truth;
        record.config_digest = cfg.digest();
        std::optional<RectCandidate> region;
        try {
            std::vector<GrayImage> frames = read_shot_dir(shots[i].dir);
            if (frames.size() > static_cast<std::size_t>(cfg.frames_per_shot)) {
                frames.resize(static_cast<std::size_t>(cfg.frames_per_shot));
            }
            const Detection det = detect_tv(frames, cfg.detector());
            record.visual = det.verdict;
            record.fused = det.verdict;
            region = det.region;
        } catch (const TvError& e) {
            record.errors.push_back(std::string("visual: ") + e.what());
        }
        auto j = nlohmann::json::parse(to_json_line(record));
        if (region.has_value()) {
            auto corners = nlohmann::json::array();
            for (const Point& p : region->corners) {
                corners.push_back({p.x, p.y});
            }
            j["region"] = corners;
        }
        lines[i] = j.dump();
    });

    OutputSink sink(args.output);
    for (const auto& line : lines) sink.stream() << line << '\n';
    sink.finish();
    return 0;
}

// ---------------------------------------------------------------------------
// fuse
// ---------------------------------------------------------------------------

struct FuseArgs {
    std::string acoustic_path;
    std::string visual_path;
    std::string rule = "or";
    std::string output = "-";
};

std::vector<DetectionRecord> read_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open records '" + path + "'");
    std::vector<DetectionRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(record_from_json_line(line));
    }
    return records;
}

int run_fuse(const FuseArgs& args) {
    require_file(args.acoustic_path, "fuse");
    require_file(args.visual_path, "fuse");
    const FusionRule rule = fusion_rule_from_string(args.rule);

    const auto acoustic = read_records(args.acoustic_path);
    const auto visual = read_records(args.visual_path);

    std::map<std::string, const DetectionRecord*> visual_by_id;
    for (const auto& r : visual) visual_by_id[r.clip_id] = &r;

    OutputSink sink(args.output);
    std::size_t used_visual = 0;
    for (const auto& a : acoustic) {
        DetectionRecord merged;
        merged.clip_id = a.clip_id;
        merged.acoustic = a.acoustic;
        merged.ground_truth = a.ground_truth;
        merged.errors = a.errors;
        merged.config_digest = a.config_digest;
        const auto it = visual_by_id.find(a.clip_id);
        if (it != visual_by_id.end()) {
            ++used_visual;
            merged.visual = it->second->visual;
            for (const auto& e : it->second->errors) merged.errors.push_back(e);
            if (!merged.ground_truth.has_value()) {
                merged.ground_truth = it->second->ground_truth;
            } else if (it->second->ground_truth.has_value() &&
                       *it->second->ground_truth != *merged.ground_truth) {
                merged.errors.push_back("fuse: modalities disagree on ground truth");
            }
        }
        std::optional<bool> av;
        if (merged.acoustic.has_value()) av = merged.acoustic->verdict;
        merged.fused = fuse(av, merged.visual, rule);
        sink.stream() << to_json_line(merged) << '\n';
    }
    for (const auto& v : visual) {
        if (std::find_if(acoustic.begin(), acoustic.end(), [&](const auto& a) {
                return a.clip_id == v.clip_id;
            }) != acoustic.end()) {
            continue;
        }
        DetectionRecord merged = v;
        std::optional<bool> av;
        merged.fused = fuse(av, merged.visual, rule);
        sink.stream() << to_json_line(merged) << '\n';
    }
    sink.finish();
    logmsg(kInfo, "fused " + std::to_string(acoustic.size()) + " acoustic with " +
                      std::to_string(used_visual) + " matching visual records");
    return 0;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalArgs {
    std::string records_path;
    std::string modality = "all";
    std::string output = "-";
};

int run_eval(const EvalArgs& args) {
    require_file(args.records_path, "eval");
    const auto records = read_records(args.records_path);
    if (records.empty()) throw InsufficientDataError("eval: no records");

    std::vector<std::pair<std::string, Modality>> wanted;
    if (args.modality == "all") {
        wanted = {{"acoustic", Modality::acoustic},
                  {"visual", Modality::visual},
                  {"fused", Modality::fused}};
    } else if (args.modality == "acoustic") {
        wanted = {{"acoustic", Modality::acoustic}};
    } else if (args.modality == "visual") {
        wanted = {{"visual", Modality::visual}};
    } else if (args.modality == "fused") {
        wanted = {{"fused", Modality::fused}};
    } else {
        throw ConfigError("unknown modality '" + args.modality + "'");
    }

    std::vector<std::pair<std::string, Metrics>> rows;
    for (const auto& [name, modality] : wanted) {
        try {
            rows.emplace_back(name, score(records, modality));
        } catch (const DegenerateError& e) {
            if (args.modality != "all") throw;
            logmsg(kWarn, "skipping " + name + ": " + e.what());
        }
    }
    if (rows.empty()) throw DegenerateError("eval: no scorable modality");

    OutputSink sink(args.output);
    write_metrics_csv(sink.stream(), rows);
    sink.finish();
    for (const auto& [name, metrics] : rows) {
        std::fprintf(stderr, "%s\n", human_summary(name, metrics).c_str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepArgs {
    std::string mode;  // rate | frames
    std::string manifest;
    std::string model_path;
    std::string rates = "4000,8000,16000,44100";
    std::string counts = "2,4,8";
    std::string output = "-";
    CommonAudioFlags audio;
};

int run_sweep(const SweepArgs& args) {
    require_file(args.manifest, "sweep");
    ControllerConfig cfg = args.audio.controller();
    cfg.validate();

    OutputSink sink(args.output);
    if (args.mode == "rate") {
        require_file(args.model_path, "sweep");
        const SvmModel model = load_model(args.model_path);
        std::vector<AudioEntry> corpus;
        for (const auto& entry : read_manifest(args.manifest)) {
            if (!is_audio_label(entry.label)) continue;
            if (!entry.split.empty() && entry.split != "test") continue;
            corpus.push_back({resolve_manifest_path(args.manifest, entry.path),
                              is_tv_label(entry.label), entry.path});
        }
        if (corpus.empty()) throw InsufficientDataError("sweep: no audio rows");
        const auto rows = sweep_audio_rate(corpus, model, cfg,
                                           parse_int_list(args.rates),
                                           args.audio.jobs);
        write_sweep_csv(sink.stream(), "rate", rows);
    } else if (args.mode == "frames") {
        std::vector<ShotEntry> corpus;
        for (const auto& entry : read_manifest(args.manifest)) {
            if (!is_visual_label(entry.label)) continue;
            corpus.push_back({resolve_manifest_path(args.manifest, entry.path),
                              is_tv_label(entry.label), entry.path});
        }
        if (corpus.empty()) throw InsufficientDataError("sweep: no shot rows");
        const auto rows = sweep_frame_count(corpus, cfg,
                                            parse_int_list(args.counts),
                                            args.audio.jobs);
        write_sweep_csv(sink.stream(), "frames", rows);
    } else {
        throw ConfigError("sweep mode must be 'rate' or 'frames'");
    }
    sink.finish();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    init_log_level();

    CLI::App app{"TV presence detection from microphone clips and camera shots"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "generate a labeled corpus");
    synth_cmd->add_option("--out", synth_args.out_dir, "output directory")->required();
    synth_cmd->add_option("--seed", synth_args.seed, "random seed");
    synth_cmd->add_option("--audio", synth_args.audio,
                          "train clips per class, e.g. tv=5,laptop=5");
    synth_cmd->add_option("--audio-test", synth_args.audio_test,
                          "test clips per class");
    synth_cmd->add_option("--shots", synth_args.shots,
                          "shots per class, e.g. tv_screen=14,empty=4");
    synth_cmd->add_option("--duration", synth_args.duration, "clip seconds");
    synth_cmd->add_option("--frames-per-shot", synth_args.frames_per_shot,
                          "frames per shot");
    synth_cmd->add_option("--width", synth_args.width, "frame width");
    synth_cmd->add_option("--height", synth_args.height, "frame height");

    FeaturesArgs features_args;
    auto* features_cmd =
        app.add_subcommand("features", "dump per-window features as CSV");
    features_cmd->add_option("--in", features_args.input, "input WAV")->required();
    features_cmd->add_option("--out", features_args.output, "output CSV or -");
    features_cmd->add_option("--rate", features_args.rate,
                             "analysis sample rate (0 = native)");
    features_cmd->add_option("--window-seconds", features_args.window_seconds,
                             "aggregation window");

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "train the acoustic classifier");
    train_cmd->add_option("--manifest", train_args.manifest, "path,label CSV")
        ->required();
    train_cmd->add_option("--model", train_args.model_path, "output model file")
        ->required();
    train_cmd->add_option("--kernel", train_args.kernel, "linear|rbf");
    train_cmd->add_option("--c", train_args.c, "box constraint");
    train_cmd->add_option("--gamma", train_args.gamma, "rbf width (0 = 1/dim)");
    train_cmd->add_option("--tol", train_args.tol, "KKT tolerance");
    train_cmd->add_option("--max-iter", train_args.max_iter, "iteration cap");
    train_cmd->add_option("--rate", train_args.audio.rate, "audio sample rate");
    train_cmd->add_option("--window-seconds", train_args.audio.window_seconds,
                          "aggregation window");
    train_cmd->add_option("--features", train_args.audio.features,
                          "feature subset, comma separated");
    train_cmd->add_option("--jobs", train_args.audio.jobs, "parallel clips");

    ClassifyArgs classify_args;
    auto* classify_cmd =
        app.add_subcommand("classify", "classify clips from a manifest");
    classify_cmd->add_option("--model", classify_args.model_path, "model file")
        ->required();
    classify_cmd->add_option("--manifest", classify_args.manifest, "path,label CSV")
        ->required();
    classify_cmd->add_option("--out", classify_args.output, "output records or -");
    classify_cmd->add_option("--rate", classify_args.audio.rate, "audio sample rate");
    classify_cmd->add_option("--window-seconds", classify_args.audio.window_seconds,
                             "aggregation window");
    classify_cmd->add_option("--features", classify_args.audio.features,
                             "feature subset");
    classify_cmd->add_option("--jobs", classify_args.audio.jobs, "parallel clips");

    DetectArgs detect_args;
    auto* detect_cmd = app.add_subcommand("detect-video", "detect screens in shots");
    detect_cmd->add_option("--manifest", detect_args.manifest, "manifest with shots");
    detect_cmd->add_option("--shot", detect_args.shot_dir, "single shot directory");
    detect_cmd->add_option("--out", detect_args.output, "output records or -");
    detect_cmd->add_option("--frames-per-shot", detect_args.frames_per_shot,
                           "frames used per shot");
    detect_cmd->add_option("--intersection-mode", detect_args.intersection_mode,
                           "candidate|bbox");
    detect_cmd->add_option("--jobs", detect_args.jobs, "parallel shots");

    FuseArgs fuse_args;
    auto* fuse_cmd = app.add_subcommand("fuse", "fuse acoustic and visual records");
    fuse_cmd->add_option("--acoustic", fuse_args.acoustic_path, "acoustic records")
        ->required();
    fuse_cmd->add_option("--visual", fuse_args.visual_path, "visual records")
        ->required();
    fuse_cmd->add_option("--fusion", fuse_args.rule, "or|and|acoustic|visual");
    fuse_cmd->add_option("--out", fuse_args.output, "output records or -");

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "score detection records");
    eval_cmd->add_option("--records", eval_args.records_path, "records file")
        ->required();
    eval_cmd->add_option("--modality", eval_args.modality,
                         "all|acoustic|visual|fused");
    eval_cmd->add_option("--out", eval_args.output, "output CSV or -");

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "rate or frame-count sweeps");
    sweep_cmd->add_option("--mode", sweep_args.mode, "rate|frames")->required();
    sweep_cmd->add_option("--manifest", sweep_args.manifest, "corpus manifest")
        ->required();
    sweep_cmd->add_option("--model", sweep_args.model_path, "model file (rate mode)");
    sweep_cmd->add_option("--rates", sweep_args.rates, "comma-separated rates");
    sweep_cmd->add_option("--counts", sweep_args.counts, "comma-separated counts");
    sweep_cmd->add_option("--out", sweep_args.output, "output CSV or -");
    sweep_cmd->add_option("--window-seconds", sweep_args.audio.window_seconds,
                          "aggregation window");
    sweep_cmd->add_option("--features", sweep_args.audio.features, "feature subset");
    sweep_cmd->add_option("--jobs", sweep_args.audio.jobs, "parallel entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*synth_cmd) return run_synth(synth_args);
        if (*features_cmd) return run_features(features_args);
        if (*train_cmd) return run_train(train_args);
        if (*classify_cmd) return run_classify(classify_args);
        if (*detect_cmd) return run_detect(detect_args);
        if (*fuse_cmd) return run_fuse(fuse_args);
        if (*eval_cmd) return run_eval(eval_args);
        if (*sweep_cmd) return run_sweep(sweep_args);
    } catch (const TvError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
