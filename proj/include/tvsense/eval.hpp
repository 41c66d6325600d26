// Copyright 2026 TVSense Authors
// Detection metrics and the sampling-rate / frame-count sweeps.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tvsense/fusion.hpp"
#include "tvsense/svm.hpp"

namespace tvsense {

struct ConfusionCounts {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
};

struct Metrics {
    ConfusionCounts counts;
    double fn_rate = 0.0;    // fn / (tp + fn)
    double fp_rate = 0.0;    // fp / (fp + tn)
    double precision = 1.0;  // 1 when tp + fp == 0
    double recall = 0.0;
    double f_measure = 0.0;  // 0 when precision + recall == 0
};

// Throws DegenerateError unless both actual positives and actual negatives
// are present.
Metrics metrics_from_counts(const ConfusionCounts& counts);

enum class Modality { acoustic, visual, fused };

// Counts records by the selected modality's verdict against ground truth.
// Records lacking the modality are skipped; records lacking ground truth are
// an error.
Metrics score(const std::vector<DetectionRecord>& records, Modality modality);

struct AudioEntry {
    std::string path;
    bool is_tv = false;
    std::string id;
};

struct ShotEntry {
    std::string dir;
    bool is_tv = false;
    std::string id;
};

struct SweepRow {
    int x = 0;  // sample rate or frame count
    Metrics metrics;
    std::size_t skipped = 0;  // entries that errored at this point
};

// Per rate: resample, re-extract, re-classify with the given model, score.
std::vector<SweepRow> sweep_audio_rate(const std::vector<AudioEntry>& corpus,
                                       const SvmModel& model, ControllerConfig cfg,
                                       const std::vector<int>& rates, int jobs = 1);

// Per count: truncate each shot to the first `count` frames, detect, score.
// Shots with fewer frames than the count are skipped from that row.
std::vector<SweepRow> sweep_frame_count(const std::vector<ShotEntry>& corpus,
                                        ControllerConfig cfg,
                                        const std::vector<int>& counts, int jobs = 1);

void write_sweep_csv(std::ostream& out, const std::string& x_name,
                     const std::vector<SweepRow>& rows);
void write_metrics_csv(std::ostream& out,
                       const std::vector<std::pair<std::string, Metrics>>& rows);
std::string human_summary(const std::string& title, const Metrics& m);

}  // namespace tvsense
