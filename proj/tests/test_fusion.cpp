// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <vector>

#include "tvsense/dsp_features.hpp"
#include "tvsense/errors.hpp"
#include "tvsense/eval.hpp"
#include "tvsense/fusion.hpp"
#include "tvsense/synth.hpp"

using namespace tvsense;

namespace {

// A small acoustic model good enough to carry end-to-end records.
SvmModel quick_model(std::uint64_t seed) {
    const auto scenes = synth_paired_scenes(seed, 3, 3, 2.0, 4);
    ControllerConfig cfg;
    std::vector<LabeledSample> samples;
    for (const auto& s : scenes) {
        for (auto& w : model_windows(s.audio, cfg)) {
            samples.push_back({std::move(w), s.is_tv ? Label::tv : Label::non_tv});
        }
    }
    return train(samples);
}

}  // namespace

TEST_CASE("or-rule truth table") {
    CHECK(fuse(true, true, FusionRule::or_rule));
    CHECK(fuse(true, false, FusionRule::or_rule));
    CHECK(fuse(false, true, FusionRule::or_rule));
    CHECK_FALSE(fuse(false, false, FusionRule::or_rule));
}

TEST_CASE("missing modalities under each rule") {
    CHECK(fuse(true, std::nullopt, FusionRule::or_rule));
    CHECK_FALSE(fuse(std::nullopt, false, FusionRule::or_rule));
    CHECK(fuse(std::nullopt, true, FusionRule::or_rule));

    CHECK(fuse(true, std::nullopt, FusionRule::and_rule));
    CHECK_FALSE(fuse(false, std::nullopt, FusionRule::and_rule));
    CHECK_FALSE(fuse(true, false, FusionRule::and_rule));
    CHECK(fuse(true, true, FusionRule::and_rule));

    CHECK(fuse(true, std::nullopt, FusionRule::acoustic_only));
    CHECK_FALSE(fuse(false, true, FusionRule::acoustic_only));
    CHECK(fuse(std::nullopt, true, FusionRule::visual_only));

    CHECK_THROWS_AS(fuse(std::nullopt, std::nullopt, FusionRule::or_rule),
                    DegenerateError);
    CHECK_THROWS_AS(fuse(std::nullopt, true, FusionRule::acoustic_only),
                    DegenerateError);
    CHECK_THROWS_AS(fuse(true, std::nullopt, FusionRule::visual_only),
                    DegenerateError);
}

TEST_CASE("symmetric rules commute") {
    const std::optional<bool> vals[] = {std::nullopt, false, true};
    for (auto a : vals) {
        for (auto v : vals) {
            if (!a.has_value() && !v.has_value()) continue;
            for (auto rule : {FusionRule::or_rule, FusionRule::and_rule}) {
                CHECK(fuse(a, v, rule) == fuse(v, a, rule));
            }
        }
    }
}

TEST_CASE("controller config validation and digest") {
    ControllerConfig cfg;
    cfg.validate();

    ControllerConfig bad = cfg;
    bad.frames_per_shot = 1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    ControllerConfig unknown = cfg;
    unknown.feature_subset = {"zcr", "nope"};
    CHECK_THROWS_AS(unknown.validate(), ConfigError);

    ControllerConfig other = cfg;
    other.audio_sample_rate = 8000;
    CHECK(cfg.digest() != other.digest());
    CHECK(cfg.digest() == ControllerConfig{}.digest());
    CHECK(cfg.digest().size() == 16);
}

TEST_CASE("feature subsets select flatten indices") {
    CHECK(feature_indices({}).size() == kFeatureCount);
    const auto idx = feature_indices({"zcr", "ste"});
    REQUIRE(idx.size() == 2);
    CHECK(idx[0] == 0);
    CHECK(idx[1] == 1);

    AudioSceneSpec spec;
    spec.scene = AudioScene::tv;
    spec.duration_seconds = 2.0;
    spec.seed = 3;
    const AudioClip clip = synth_audio(spec);
    ControllerConfig cfg;
    cfg.feature_subset = {"zcr", "ste", "spectrum_spread"};
    const auto windows = model_windows(clip, cfg);
    REQUIRE(windows.size() == 2);
    CHECK(windows[0].size() == 3);
}

TEST_CASE("run_pipeline produces fused records end to end") {
    const SvmModel model = quick_model(500);
    ControllerConfig cfg;
    const auto scenes = synth_paired_scenes(501, 2, 2, 2.0, 8);

    for (const auto& s : scenes) {
        const DetectionRecord record =
            run_pipeline(&s.audio, &s.frames, model, cfg, s.id, s.is_tv);
        CHECK(record.clip_id == s.id);
        REQUIRE(record.acoustic.has_value());
        REQUIRE(record.visual.has_value());
        CHECK(record.fused == (record.acoustic->verdict || *record.visual));
        CHECK(record.errors.empty());
        CHECK(record.config_digest == cfg.digest());
    }
}

TEST_CASE("the or rule rescues a missed acoustic detection") {
    const SvmModel model = quick_model(502);
    ControllerConfig cfg;

    // Conversation audio with tv frames: visual evidence wins under OR.
    AudioSceneSpec a;
    a.scene = AudioScene::conversation;
    a.duration_seconds = 2.0;
    a.seed = 77;
    const AudioClip talk = synth_audio(a);
    VisualSceneSpec v;
    v.scene = VisualScene::tv_screen;
    v.seed = 78;
    const auto frames = synth_frames(v);

    const DetectionRecord record = run_pipeline(&talk, &frames, model, cfg, "mix");
    REQUIRE(record.visual.has_value());
    CHECK(*record.visual);
    CHECK(record.fused);
}

TEST_CASE("a failing modality degrades to single-modality operation") {
    const SvmModel model = quick_model(503);
    ControllerConfig cfg;

    // Audio shorter than one analysis window cannot be classified.
    AudioClip stub;
    stub.sample_rate = 44100;
    stub.samples.assign(1000, 0.1);

    VisualSceneSpec v;
    v.scene = VisualScene::tv_screen;
    v.seed = 9;
    const auto frames = synth_frames(v);

    const DetectionRecord record = run_pipeline(&stub, &frames, model, cfg, "broken");
    CHECK_FALSE(record.acoustic.has_value());
    REQUIRE(record.visual.has_value());
    CHECK(record.fused == *record.visual);
    REQUIRE(record.errors.size() == 1);
    CHECK(record.errors[0].find("acoustic:") == 0);

    // Both modalities dead: no evidence at all.
    std::vector<GrayImage> no_frames;
    CHECK_THROWS_AS(run_pipeline(&stub, &no_frames, model, cfg, "dead"),
                    DegenerateError);
    CHECK_THROWS_AS(run_pipeline(nullptr, nullptr, model, cfg, "none"),
                    DegenerateError);
}

TEST_CASE("or-rule error bounds over a shared corpus") {
    const SvmModel model = quick_model(504);
    ControllerConfig cfg;
    const auto scenes = synth_paired_scenes(99, 5, 5, 2.0, 8);

    std::vector<DetectionRecord> records;
    for (const auto& s : scenes) {
        records.push_back(run_pipeline(&s.audio, &s.frames, model, cfg, s.id, s.is_tv));
    }
    const Metrics acoustic = score(records, Modality::acoustic);
    const Metrics visual = score(records, Modality::visual);
    const Metrics fused = score(records, Modality::fused);

    CHECK(fused.counts.fn <= std::min(acoustic.counts.fn, visual.counts.fn));
    CHECK(fused.counts.fp >= std::max(acoustic.counts.fp, visual.counts.fp));
}

TEST_CASE("records round-trip through json lines") {
    DetectionRecord record;
    record.clip_id = "clip_42";
    record.acoustic = ModalityVerdict{true, 0.73};
    record.visual = false;
    record.fused = true;
    record.ground_truth = true;
    record.errors = {"visual: three frames missing"};
    record.config_digest = "0123456789abcdef";

    const std::string line = to_json_line(record);
    const DetectionRecord back = record_from_json_line(line);
    CHECK(back.clip_id == record.clip_id);
    REQUIRE(back.acoustic.has_value());
    CHECK(back.acoustic->verdict);
    CHECK(back.acoustic->score == doctest::Approx(0.73));
    REQUIRE(back.visual.has_value());
    CHECK_FALSE(*back.visual);
    CHECK(back.fused);
    CHECK(back.ground_truth == std::optional<bool>(true));
    CHECK(back.errors == record.errors);
    CHECK(back.config_digest == record.config_digest);

    DetectionRecord sparse;
    sparse.clip_id = "sparse";
    const DetectionRecord sparse_back = record_from_json_line(to_json_line(sparse));
    CHECK_FALSE(sparse_back.acoustic.has_value());
    CHECK_FALSE(sparse_back.visual.has_value());
    CHECK_FALSE(sparse_back.ground_truth.has_value());

    CHECK_THROWS_AS(record_from_json_line("{not json"), FormatError);
    CHECK_THROWS_AS(record_from_json_line("{\"acoustic\": {\"score\": 1}}"),
                    FormatError);
}
