// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#include "tvsense/eval.hpp"

#include <cstdio>
#include <ostream>

#include "tvsense/errors.hpp"
#include "tvsense/parallel.hpp"

namespace tvsense {

Metrics metrics_from_counts(const ConfusionCounts& counts) {
    const std::size_t actual_pos = counts.tp + counts.fn;
    const std::size_t actual_neg = counts.fp + counts.tn;
    if (actual_pos == 0 || actual_neg == 0) {
        throw DegenerateError("rates undefined on a single-class corpus");
    }
    Metrics m;
    m.counts = counts;
    m.fn_rate = static_cast<double>(counts.fn) / static_cast<double>(actual_pos);
    m.fp_rate = static_cast<double>(counts.fp) / static_cast<double>(actual_neg);
    m.precision = (counts.tp + counts.fp == 0)
                      ? 1.0
                      : static_cast<double>(counts.tp) /
                            static_cast<double>(counts.tp + counts.fp);
    m.recall = 1.0 - m.fn_rate;
    m.f_measure = (m.precision + m.recall > 0.0)
                      ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                      : 0.0;
    return m;
}

Metrics score(const std::vector<DetectionRecord>& records, Modality modality) {
    ConfusionCounts counts;
    for (const DetectionRecord& r : records) {
        if (!r.ground_truth.has_value()) {
            throw ConfigError("record '" + r.clip_id + "' has no ground truth");
        }
        bool verdict;
        switch (modality) {
            case Modality::acoustic:
                if (!r.acoustic.has_value()) continue;
                verdict = r.acoustic->verdict;
                break;
            case Modality::visual:
                if (!r.visual.has_value()) continue;
                verdict = *r.visual;
                break;
            case Modality::fused:
                verdict = r.fused;
                break;
            default:
                throw ConfigError("unknown modality");
        }
        const bool truth = *r.ground_truth;
        if (truth && verdict) ++counts.tp;
        if (truth && !verdict) ++counts.fn;
        if (!truth && verdict) ++counts.fp;
        if (!truth && !verdict) ++counts.tn;
    }
    return metrics_from_counts(counts);
}

namespace {

struct Outcome {
    int state = 0;  // 0 skipped/error, 1 ok
    bool verdict = false;
    bool truth = false;
};

SweepRow reduce(int x, const std::vector<Outcome>& outcomes) {
    SweepRow row;
    row.x = x;
    ConfusionCounts counts;
    for (const Outcome& o : outcomes) {
        if (o.state == 0) {
            ++row.skipped;
            continue;
        }
        if (o.truth && o.verdict) ++counts.tp;
        if (o.truth && !o.verdict) ++counts.fn;
        if (!o.truth && o.verdict) ++counts.fp;
        if (!o.truth && !o.verdict) ++counts.tn;
    }
    if (counts.tp + counts.fn > 0 && counts.fp + counts.tn > 0) {
        row.metrics = metrics_from_counts(counts);
    } else {
        // Too many skips left a single-class (or empty) row; report the raw
        // counts with zeroed rates rather than failing the whole sweep.
        row.metrics.counts = counts;
        row.metrics.precision = 0.0;
    }
    return row;
}

}  // namespace

std::vector<SweepRow> sweep_audio_rate(const std::vector<AudioEntry>& corpus,
                                       const SvmModel& model, ControllerConfig cfg,
                                       const std::vector<int>& rates, int jobs) {
    if (rates.empty()) throw ConfigError("empty rate grid");
    std::vector<SweepRow> rows;
    for (int rate : rates) {
        if (rate <= 0) throw ConfigError("rates must be positive");
        cfg.audio_sample_rate = rate;
        std::vector<Outcome> outcomes(corpus.size());
        parallel_for(corpus.size(), jobs, [&](std::size_t i) {
            Outcome& o = outcomes[i];
            o.truth = corpus[i].is_tv;
            try {
                const AudioClip clip = read_wav(corpus[i].path);
                const auto windows = model_windows(clip, cfg);
                o.verdict = classify_clip(model, windows).label == Label::tv;
                o.state = 1;
            } catch (const TvError&) {
                o.state = 0;
            }
        });
        rows.push_back(reduce(rate, outcomes));
    }
    return rows;
}

std::vector<SweepRow> sweep_frame_count(const std::vector<ShotEntry>& corpus,
                                        ControllerConfig cfg,
                                        const std::vector<int>& counts, int jobs) {
    if (counts.empty()) throw ConfigError("empty frame-count grid");
    std::vector<SweepRow> rows;
    for (int count : counts) {
        if (count < 2) throw ConfigError("frame counts must be at least 2");
        std::vector<Outcome> outcomes(corpus.size());
        parallel_for(corpus.size(), jobs, [&](std::size_t i) {
            Outcome& o = outcomes[i];
            o.truth = corpus[i].is_tv;
            try {
                std::vector<GrayImage> frames = read_shot_dir(corpus[i].dir);
                if (frames.size() < static_cast<std::size_t>(count)) {
                    o.state = 0;  // shot too short for this sweep point
                    return;
                }
                frames.resize(static_cast<std::size_t>(count));
                o.verdict = detect_tv(frames, cfg.detector()).verdict;
                o.state = 1;
            } catch (const TvError&) {
                o.state = 0;
            }
        });
        rows.push_back(reduce(count, outcomes));
    }
    return rows;
}

namespace {

void append_metrics_fields(std::string& line, const Metrics& m) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%zu,%zu,%zu,%zu,%.6f,%.6f,%.6f,%.6f,%.6f",
                  m.counts.tp, m.counts.fp, m.counts.tn, m.counts.fn, m.fn_rate,
                  m.fp_rate, m.precision, m.recall, m.f_measure);
    line += buf;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::string& x_name,
                     const std::vector<SweepRow>& rows) {
    out << x_name << ",tp,fp,tn,fn,fn_rate,fp_rate,precision,recall,f_measure,skipped\n";
    for (const SweepRow& row : rows) {
        std::string line = std::to_string(row.x) + ",";
        append_metrics_fields(line, row.metrics);
        line += "," + std::to_string(row.skipped) + "\n";
        out << line;
    }
}

void write_metrics_csv(std::ostream& out,
                       const std::vector<std::pair<std::string, Metrics>>& rows) {
    out << "modality,tp,fp,tn,fn,fn_rate,fp_rate,precision,recall,f_measure\n";
    for (const auto& [name, m] : rows) {
        std::string line = name + ",";
        append_metrics_fields(line, m);
        line += "\n";
        out << line;
    }
}

std::string human_summary(const std::string& title, const Metrics& m) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%s: %zu clips | fn_rate %.3f fp_rate %.3f precision %.3f "
                  "recall %.3f F %.3f",
                  title.c_str(), m.counts.total(), m.fn_rate, m.fp_rate, m.precision,
                  m.recall, m.f_measure);
    return buf;
}

}  // namespace tvsense
