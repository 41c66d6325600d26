// Copyright 2026 TVSense Authors
// WAV ingestion and rate conversion; everything downstream consumes
// mono float clips.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <string>
#include <vector>

namespace tvsense {

// Mono audio, samples in [-1, 1].
struct AudioClip {
    std::vector<double> samples;
    int sample_rate = 0;
    std::string source_label;  // optional ground-truth class tag

    double duration_seconds() const {
        return sample_rate > 0
                   ? static_cast<double>(samples.size()) / sample_rate
                   : 0.0;
    }
};

// Reads a RIFF/WAVE container holding uncompressed PCM (16-bit signed or
// 8-bit unsigned, 1 or 2 channels). Stereo is averaged per frame; integer
// samples are scaled to [-1, 1] by the type's full-scale value. Unknown
// chunks are skipped.
AudioClip read_wav(const std::string& path);

// Writes 16-bit PCM mono, little-endian. Samples are rounded and clamped
// to full scale.
void write_wav(const AudioClip& clip, const std::string& path);

// Downsamples to target_rate. A windowed-sinc low-pass at 0.45x the target
// rate runs before interpolation; the kernel spans 64 output periods so the
// passband stays flat up to 0.45x regardless of the rate ratio.
// target_rate must be positive and must not exceed the clip's rate.
AudioClip resample(const AudioClip& clip, int target_rate);

}  // namespace tvsense
