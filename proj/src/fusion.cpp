// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#include "tvsense/fusion.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>

#include <json.hpp>

#include "tvsense/dsp_features.hpp"
#include "tvsense/errors.hpp"

namespace tvsense {

FusionRule fusion_rule_from_string(const std::string& name) {
    if (name == "or") return FusionRule::or_rule;
    if (name == "and") return FusionRule::and_rule;
    if (name == "acoustic") return FusionRule::acoustic_only;
    if (name == "visual") return FusionRule::visual_only;
    throw ConfigError("unknown fusion rule '" + name + "'");
}

std::string to_string(FusionRule rule) {
    switch (rule) {
        case FusionRule::or_rule: return "or";
        case FusionRule::and_rule: return "and";
        case FusionRule::acoustic_only: return "acoustic";
        case FusionRule::visual_only: return "visual";
    }
    throw ConfigError("unknown fusion rule");
}

void ControllerConfig::validate() const {
    if (audio_sample_rate <= 0) throw ConfigError("audio sample rate must be positive");
    if (audio_window_seconds <= 0.0) {
        throw ConfigError("audio window seconds must be positive");
    }
    if (frames_per_shot < 2) throw ConfigError("frames per shot must be at least 2");
    feature_indices(feature_subset);  // throws on unknown names
}

DetectorConfig ControllerConfig::detector() const {
    DetectorConfig cfg;
    cfg.mode = intersection_mode;
    return cfg;
}

std::string ControllerConfig::digest() const {
    std::string canon = "rate=" + std::to_string(audio_sample_rate) +
                        ";window=" + std::to_string(audio_window_seconds) +
                        ";frames=" + std::to_string(frames_per_shot) + ";features=";
    for (const auto& f : feature_subset) canon += f + "+";
    canon += ";rule=" + to_string(fusion_rule) + ";mode=";
    canon += (intersection_mode == IntersectionMode::candidate) ? "candidate" : "bbox";

    // FNV-1a 64.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool fuse(std::optional<bool> acoustic, std::optional<bool> visual, FusionRule rule) {
    if (!acoustic.has_value() && !visual.has_value()) {
        throw DegenerateError("no modality evidence to fuse");
    }
    switch (rule) {
        case FusionRule::or_rule:
            return acoustic.value_or(false) || visual.value_or(false);
        case FusionRule::and_rule:
            return acoustic.value_or(true) && visual.value_or(true);
        case FusionRule::acoustic_only:
            if (!acoustic.has_value()) {
                throw DegenerateError("acoustic rule selected but no acoustic verdict");
            }
            return *acoustic;
        case FusionRule::visual_only:
            if (!visual.has_value()) {
                throw DegenerateError("visual rule selected but no visual verdict");
            }
            return *visual;
    }
    throw ConfigError("unknown fusion rule");
}

std::vector<std::size_t> feature_indices(const std::vector<std::string>& subset) {
    const auto& names = feature_names();
    std::vector<std::size_t> indices;
    if (subset.empty()) {
        indices.resize(names.size());
        for (std::size_t i = 0; i < names.size(); ++i) indices[i] = i;
        return indices;
    }
    for (const std::string& want : subset) {
        const auto it = std::find(names.begin(), names.end(), want);
        if (it == names.end()) throw ConfigError("unknown feature '" + want + "'");
        indices.push_back(static_cast<std::size_t>(it - names.begin()));
    }
    return indices;
}

std::vector<std::vector<double>> model_windows(const AudioClip& clip,
                                               const ControllerConfig& cfg) {
    // The configured rate is a sensing knob; it cannot exceed what the clip
    // was captured at.
    const int rate = std::min(cfg.audio_sample_rate, clip.sample_rate);
    const AudioClip* use = &clip;
    AudioClip resampled;
    if (rate < clip.sample_rate) {
        resampled = resample(clip, rate);
        use = &resampled;
    }

    ExtractOptions opt;
    opt.window_seconds = cfg.audio_window_seconds;
    const auto features = extract_features(*use, opt);

    const auto idx = feature_indices(cfg.feature_subset);
    std::vector<std::vector<double>> windows;
    windows.reserve(features.size());
    for (const FeatureVector& fv : features) {
        const auto full = flatten(fv);
        std::vector<double> row;
        row.reserve(idx.size());
        for (std::size_t i : idx) row.push_back(full[i]);
        windows.push_back(std::move(row));
    }
    return windows;
}

DetectionRecord run_pipeline(const AudioClip* audio,
                             const std::vector<GrayImage>* frames,
                             const SvmModel& model, const ControllerConfig& cfg,
                             const std::string& clip_id,
                             std::optional<bool> ground_truth) {
    cfg.validate();
    if (audio == nullptr && frames == nullptr) {
        throw DegenerateError("no modality provided");
    }

    DetectionRecord record;
    record.clip_id = clip_id;
    record.ground_truth = ground_truth;
    record.config_digest = cfg.digest();

    if (audio != nullptr) {
        try {
            const auto windows = model_windows(*audio, cfg);
            const ClipVerdict verdict = classify_clip(model, windows);
            record.acoustic =
                ModalityVerdict{verdict.label == Label::tv, verdict.score};
        } catch (const TvError& e) {
            record.errors.push_back(std::string("acoustic: ") + e.what());
        }
    }
    if (frames != nullptr) {
        try {
            std::vector<GrayImage> shot = *frames;
            if (shot.size() > static_cast<std::size_t>(cfg.frames_per_shot)) {
                shot.resize(static_cast<std::size_t>(cfg.frames_per_shot));
            }
            const Detection det = detect_tv(shot, cfg.detector());
            record.visual = det.verdict;
        } catch (const TvError& e) {
            record.errors.push_back(std::string("visual: ") + e.what());
        }
    }

    std::optional<bool> acoustic_verdict;
    if (record.acoustic.has_value()) acoustic_verdict = record.acoustic->verdict;
    record.fused = fuse(acoustic_verdict, record.visual, cfg.fusion_rule);
    return record;
}

std::string to_json_line(const DetectionRecord& record) {
    nlohmann::json j;
    j["clip_id"] = record.clip_id;
    if (record.acoustic.has_value()) {
        j["acoustic"] = {{"verdict", record.acoustic->verdict},
                         {"score", record.acoustic->score}};
    } else {
        j["acoustic"] = nullptr;
    }
    if (record.visual.has_value()) {
        j["visual"] = {{"verdict", *record.visual}};
    } else {
        j["visual"] = nullptr;
    }
    j["fused"] = record.fused;
    if (record.ground_truth.has_value()) {
        j["ground_truth"] = *record.ground_truth;
    } else {
        j["ground_truth"] = nullptr;
    }
    j["config"] = record.config_digest;
    if (!record.errors.empty()) j["errors"] = record.errors;
    return j.dump();
}

DetectionRecord record_from_json_line(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("bad record line: ") + e.what());
    }
    DetectionRecord record;
    try {
        record.clip_id = j.value("clip_id", std::string{});
        if (j.contains("acoustic") && !j["acoustic"].is_null()) {
            record.acoustic = ModalityVerdict{j["acoustic"].at("verdict").get<bool>(),
                                              j["acoustic"].value("score", 0.0)};
        }
        if (j.contains("visual") && !j["visual"].is_null()) {
            record.visual = j["visual"].at("verdict").get<bool>();
        }
        record.fused = j.value("fused", false);
        if (j.contains("ground_truth") && !j["ground_truth"].is_null()) {
            record.ground_truth = j["ground_truth"].get<bool>();
        }
        record.config_digest = j.value("config", std::string{});
        if (j.contains("errors")) {
            record.errors = j["errors"].get<std::vector<std::string>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad record line: ") + e.what());
    }
    return record;
}

}  // namespace tvsense
