// Copyright 2026 TVSense Authors
// Decision fusion and the sensing-rate configuration that drives both
// modality pipelines.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvsense/audio_io.hpp"
#include "tvsense/svm.hpp"
#include "tvsense/visual.hpp"

namespace tvsense {

enum class FusionRule { or_rule, and_rule, acoustic_only, visual_only };

FusionRule fusion_rule_from_string(const std::string& name);
std::string to_string(FusionRule rule);

struct ControllerConfig {
    int audio_sample_rate = 44100;  // clips above this rate are downsampled
    double audio_window_seconds = 1.0;
    int frames_per_shot = 8;
    std::vector<std::string> feature_subset;  // empty: all features
    FusionRule fusion_rule = FusionRule::or_rule;
    IntersectionMode intersection_mode = IntersectionMode::candidate;

    void validate() const;
    DetectorConfig detector() const;
    std::string digest() const;  // short hash of the canonical settings
};

struct ModalityVerdict {
    bool verdict = false;
    double score = 0.0;
};

struct DetectionRecord {
    std::string clip_id;
    std::optional<ModalityVerdict> acoustic;
    std::optional<bool> visual;
    bool fused = false;
    std::optional<bool> ground_truth;
    std::vector<std::string> errors;  // per-modality failure annotations
    std::string config_digest;
};

// OR: detected when any present modality detected, absent counts as not
// detected. AND: all present modalities must detect. The single-modality
// rules require that modality. Throws when both inputs are absent.
bool fuse(std::optional<bool> acoustic, std::optional<bool> visual, FusionRule rule);

// Maps feature subset names to flatten() indices; empty selects everything.
std::vector<std::size_t> feature_indices(const std::vector<std::string>& subset);

// Resamples to the configured rate (capped at the clip's own rate), extracts
// per-window features, and applies the configured feature subset.
std::vector<std::vector<double>> model_windows(const AudioClip& clip,
                                               const ControllerConfig& cfg);

// Runs whichever modalities are provided (null pointer = absent sensor) and
// fuses them. A modality that throws is dropped with an annotation instead
// of failing the record, as long as the other modality produced a verdict.
DetectionRecord run_pipeline(const AudioClip* audio,
                             const std::vector<GrayImage>* frames,
                             const SvmModel& model, const ControllerConfig& cfg,
                             const std::string& clip_id = "",
                             std::optional<bool> ground_truth = std::nullopt);

// Line-delimited JSON round-trip for record streams.
std::string to_json_line(const DetectionRecord& record);
DetectionRecord record_from_json_line(const std::string& line);

}  // namespace tvsense
