// Copyright 2026 TVSense Authors
// Seeded generators for labeled audio clips, frame sequences, and on-disk
// corpora. Each class encodes the contrast the detectors key on:
// conversation stays under 4 kHz, laptop audio is the tv mix cut at 8 kHz
// and quieter, tv adds wideband content up to 16 kHz; tv screens are
// bordered rectangles whose interior changes every frame.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tvsense/audio_io.hpp"
#include "tvsense/visual.hpp"

namespace tvsense {

enum class AudioScene { tv, laptop, conversation, silence };
enum class VisualScene { tv_screen, picture_frame, moving_blob, empty };

std::string to_string(AudioScene scene);
std::string to_string(VisualScene scene);
AudioScene audio_scene_from_string(const std::string& name);
VisualScene visual_scene_from_string(const std::string& name);

struct AudioSceneSpec {
    AudioScene scene = AudioScene::tv;
    double duration_seconds = 30.0;
    double gain = 0.0;  // 0: class default range drawn from the seed; else (0, 1]
    double noise_level = 1e-4;
    std::uint64_t seed = 0;
};

// 44.1 kHz mono, peak-normalized to the gain, deterministic per seed.
AudioClip synth_audio(const AudioSceneSpec& spec);

struct VisualSceneSpec {
    VisualScene scene = VisualScene::tv_screen;
    int frame_count = 8;
    int width = 160;
    int height = 120;
    double noise_level = 1.0;  // per-frame sensor noise, gray levels
    std::uint64_t seed = 0;
};

std::vector<GrayImage> synth_frames(const VisualSceneSpec& spec);

struct CorpusSpec {
    std::vector<std::pair<AudioScene, int>> audio_train;
    std::vector<std::pair<AudioScene, int>> audio_test;
    std::vector<std::pair<VisualScene, int>> shots;
    double clip_seconds = 30.0;
    int frames_per_shot = 8;
    int frame_width = 160;
    int frame_height = 120;
    std::uint64_t seed = 0;

    // 91 train + 60 test clips of 30 s; 26 shots (14 positive, 12 negative)
    // of 8 frames.
    static CorpusSpec standard(std::uint64_t seed);
};

struct CorpusLayout {
    std::string root;
    std::string manifest;        // relative_path,class,split
    std::string train_manifest;  // audio rows only: relative_path,class
    std::string test_manifest;
};

// Writes WAV clips, PGM shot directories, and the three manifests under
// out_dir. Identical spec and seed produce byte-identical output.
CorpusLayout synth_corpus(const CorpusSpec& spec, const std::string& out_dir);

// In-memory scene with both modalities sharing one ground truth; used for
// fusion tests without touching disk.
struct PairedScene {
    std::string id;
    AudioClip audio;
    std::vector<GrayImage> frames;
    bool is_tv = false;
};

std::vector<PairedScene> synth_paired_scenes(std::uint64_t seed, int positives,
                                             int negatives,
                                             double clip_seconds = 3.0,
                                             int frames_per_shot = 8,
                                             int width = 160, int height = 120);

}  // namespace tvsense
