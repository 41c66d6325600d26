// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#include "tvsense/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "tvsense/errors.hpp"
#include "tvsense/rng.hpp"

namespace tvsense {

namespace {

constexpr int kSynthRate = 44100;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

std::string to_string(AudioScene scene) {
    switch (scene) {
        case AudioScene::tv: return "tv";
        case AudioScene::laptop: return "laptop";
        case AudioScene::conversation: return "conversation";
        case AudioScene::silence: return "silence";
    }
    throw ConfigError("unknown audio scene");
}

std::string to_string(VisualScene scene) {
    switch (scene) {
        case VisualScene::tv_screen: return "tv_screen";
        case VisualScene::picture_frame: return "picture_frame";
        case VisualScene::moving_blob: return "moving_blob";
        case VisualScene::empty: return "empty";
    }
    throw ConfigError("unknown visual scene");
}

AudioScene audio_scene_from_string(const std::string& name) {
    if (name == "tv") return AudioScene::tv;
    if (name == "laptop") return AudioScene::laptop;
    if (name == "conversation") return AudioScene::conversation;
    if (name == "silence") return AudioScene::silence;
    throw ConfigError("unknown audio class '" + name + "'");
}

VisualScene visual_scene_from_string(const std::string& name) {
    if (name == "tv_screen") return VisualScene::tv_screen;
    if (name == "picture_frame") return VisualScene::picture_frame;
    if (name == "moving_blob") return VisualScene::moving_blob;
    if (name == "empty") return VisualScene::empty;
    throw ConfigError("unknown visual class '" + name + "'");
}

// ---------------------------------------------------------------------------
// Audio
// ---------------------------------------------------------------------------

namespace {

struct Partial {
    double freq = 0.0, amp = 0.0, phase = 0.0;
    double t_start = 0.0, t_end = 0.0;
    double am_freq = 0.0, am_depth = 0.0, am_phase = 0.0;
    double ramp = 0.03;  // attack/release seconds
};

// Voiced bursts with pauses over a continuous low-level murmur bed (other
// speakers in the room). Everything stays under 3.8 kHz.
void add_voice(std::vector<Partial>& score, Rng& rng, double duration) {
    double t = rng.uniform(0.0, 0.15);
    while (t < duration) {
        const double burst = rng.uniform(0.28, 0.65);
        const double gap = rng.uniform(0.12, 0.45);
        const double f0 = rng.uniform(105.0, 235.0);
        const double am_freq = rng.uniform(3.5, 7.0);
        const double am_phase = rng.uniform(0.0, kTwoPi);
        const double tilt = rng.uniform(0.7, 1.1);
        for (int k = 1; k * f0 <= 3800.0; ++k) {
            Partial p;
            p.freq = k * f0;
            p.amp = std::pow(static_cast<double>(k), -tilt) * rng.uniform(0.75, 1.25);
            p.phase = rng.uniform(0.0, kTwoPi);
            p.t_start = t;
            p.t_end = std::min(t + burst, duration);
            p.am_freq = am_freq;
            p.am_depth = 0.45;
            p.am_phase = am_phase;
            score.push_back(p);
        }
        t += burst + gap;
    }

    t = 0.0;
    while (t < duration) {
        const double seg = rng.uniform(0.8, 1.6);
        const double t_end = std::min(t + seg, duration);
        const double f0 = rng.uniform(95.0, 200.0);
        const double am_freq = rng.uniform(2.0, 4.5);
        const double am_phase = rng.uniform(0.0, kTwoPi);
        for (int k = 1; k * f0 <= 3600.0; ++k) {
            Partial p;
            p.freq = k * f0;
            p.amp = 0.12 * std::pow(static_cast<double>(k), -0.9) *
                    rng.uniform(0.75, 1.25);
            p.phase = rng.uniform(0.0, kTwoPi);
            p.t_start = t;
            p.t_end = t_end;
            p.am_freq = am_freq;
            p.am_depth = 0.3;
            p.am_phase = am_phase;
            p.ramp = 0.06;
            score.push_back(p);
        }
        t += seg;
    }
}

// Sustained chord segments with slow tremolo; a few components always land
// in the 8.8-15.6 kHz band.
void add_music(std::vector<Partial>& score, Rng& rng, double duration) {
    double t = 0.0;
    while (t < duration) {
        const double seg = rng.uniform(1.5, 3.5);
        const double t_end = std::min(t + seg, duration);
        const int low_tones = 6 + static_cast<int>(rng.next_below(4));
        const int high_tones = 3 + static_cast<int>(rng.next_below(2));
        auto emit = [&](double lo_hz, double hi_hz, int count) {
            for (int i = 0; i < count; ++i) {
                Partial p;
                p.freq = std::exp(rng.uniform(std::log(lo_hz), std::log(hi_hz)));
                p.amp = rng.uniform(0.12, 0.40);
                p.phase = rng.uniform(0.0, kTwoPi);
                p.t_start = t;
                p.t_end = t_end;
                p.am_freq = rng.uniform(0.3, 2.2);
                p.am_depth = rng.uniform(0.15, 0.5);
                p.am_phase = rng.uniform(0.0, kTwoPi);
                p.ramp = 0.08;
                score.push_back(p);
            }
        };
        emit(240.0, 7800.0, low_tones);
        emit(8800.0, 15600.0, high_tones);
        t += seg;
    }
}

// Additive rendering with rotating phasors; partials at or above band_limit
// are dropped, which is an exact low-pass for a partial sum.
void render(std::vector<double>& out, const std::vector<Partial>& score,
            double band_limit) {
    const double fs = kSynthRate;
    const auto n = static_cast<std::int64_t>(out.size());
    for (const Partial& p : score) {
        if (p.freq >= band_limit) continue;
        const std::int64_t i0 =
            std::clamp<std::int64_t>(std::llround(p.t_start * fs), 0, n);
        const std::int64_t i1 =
            std::clamp<std::int64_t>(std::llround(p.t_end * fs), 0, n);
        if (i1 <= i0) continue;
        const double span = static_cast<double>(i1 - i0) / fs;

        std::complex<double> carrier = std::polar(1.0, p.phase);
        const std::complex<double> rot = std::polar(1.0, kTwoPi * p.freq / fs);
        std::complex<double> am = std::polar(1.0, p.am_phase);
        const std::complex<double> am_rot = std::polar(1.0, kTwoPi * p.am_freq / fs);
        const double am_norm = 1.0 / (1.0 + p.am_depth);
        const double inv_fs = 1.0 / fs;

        for (std::int64_t i = i0; i < i1; ++i) {
            const double tt = static_cast<double>(i - i0) * inv_fs;
            double env = 1.0;
            if (tt < p.ramp) env *= tt / p.ramp;
            const double tail = span - tt;
            if (tail < p.ramp) env *= std::max(tail, 0.0) / p.ramp;
            const double mod = (1.0 + p.am_depth * am.imag()) * am_norm;
            out[static_cast<std::size_t>(i)] += p.amp * env * mod * carrier.imag();
            carrier *= rot;
            am *= am_rot;
        }
    }
}

}  // namespace

AudioClip synth_audio(const AudioSceneSpec& spec) {
    if (spec.duration_seconds <= 0.0) throw ConfigError("duration must be positive");
    if (spec.gain < 0.0 || spec.gain > 1.0) throw ConfigError("gain must be in (0, 1]");
    if (spec.noise_level < 0.0) throw ConfigError("noise level must be non-negative");

    Rng rng(spec.seed);
    std::vector<Partial> score;
    double band_limit = static_cast<double>(kSynthRate);  // no extra cut

    switch (spec.scene) {
        case AudioScene::conversation:
            add_voice(score, rng, spec.duration_seconds);
            break;
        case AudioScene::tv:
        case AudioScene::laptop:
            // The laptop class is the tv mix with everything at or above
            // 8 kHz removed, so both build the identical score per seed.
            add_voice(score, rng, spec.duration_seconds);
            add_music(score, rng, spec.duration_seconds);
            if (spec.scene == AudioScene::laptop) band_limit = 8000.0;
            break;
        case AudioScene::silence:
            break;
    }

    double gain = spec.gain;
    if (gain == 0.0) {
        switch (spec.scene) {
            case AudioScene::tv: gain = rng.uniform(0.55, 0.95); break;
            case AudioScene::laptop: gain = rng.uniform(0.16, 0.44); break;
            case AudioScene::conversation: gain = rng.uniform(0.30, 0.72); break;
            case AudioScene::silence: gain = 0.0; break;
        }
    }

    AudioClip clip;
    clip.sample_rate = kSynthRate;
    clip.source_label = to_string(spec.scene);
    clip.samples.assign(
        static_cast<std::size_t>(std::llround(spec.duration_seconds * kSynthRate)),
        0.0);

    render(clip.samples, score, band_limit);

    double peak = 0.0;
    for (double s : clip.samples) peak = std::max(peak, std::abs(s));
    if (peak > 0.0 && gain > 0.0) {
        const double scale = gain / peak;
        for (double& s : clip.samples) s *= scale;
    }
    if (spec.noise_level > 0.0) {
        // Ambient floor: white noise through four one-pole low-passes at
        // 600 Hz. The steep rolloff keeps pause frames from reading as
        // wideband content in the magnitude-weighted spectral moments.
        const double a = std::exp(-kTwoPi * 600.0 / kSynthRate);
        double st[4] = {0.0, 0.0, 0.0, 0.0};
        for (double& s : clip.samples) {
            double v = 2.0 * rng.next_double() - 1.0;
            for (double& stage : st) {
                stage = a * stage + (1.0 - a) * v;
                v = stage;
            }
            s += spec.noise_level * 12.0 * v;
        }
    }
    for (double& s : clip.samples) s = std::clamp(s, -1.0, 1.0);
    return clip;
}

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

namespace {

GrayImage gradient_background(Rng& rng, int w, int h, double* out_top) {
    const double top = rng.uniform(115.0, 175.0);
    const double slope = rng.uniform(-20.0, 20.0);
    GrayImage img = GrayImage::filled(w, h, 0);
    for (int y = 0; y < h; ++y) {
        const double v = top + slope * static_cast<double>(y) / (h - 1);
        const auto q = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
        for (int x = 0; x < w; ++x) img.set(x, y, q);
    }
    if (out_top != nullptr) *out_top = top;
    return img;
}

void add_sensor_noise(GrayImage& img, Rng& rng, double level) {
    const int n = static_cast<int>(std::lround(level));
    if (n <= 0) return;
    for (auto& p : img.pixels) {
        const int d = static_cast<int>(rng.next_below(2 * n + 1)) - n;
        p = static_cast<std::uint8_t>(std::clamp(static_cast<int>(p) + d, 0, 255));
    }
}

struct RectGeometry {
    int x0, y0, w, h;  // outer rectangle, border drawn 3 px thick inward
};

RectGeometry draw_screen_rect(GrayImage& img, Rng& rng) {
    const int w = img.width, h = img.height;
    const double area_frac = rng.uniform(0.10, 0.45);
    const double aspect = rng.uniform(1.15, 1.85);
    int rw = static_cast<int>(
        std::lround(std::sqrt(area_frac * w * h * aspect)));
    rw = std::clamp(rw, 16, w - 8);
    int rh = static_cast<int>(std::lround(area_frac * w * h / rw));
    rh = std::clamp(rh, 12, h - 8);

    const int x0 = 3 + static_cast<int>(rng.next_below(
                           static_cast<std::uint64_t>(w - rw - 6)));
    const int y0 = 3 + static_cast<int>(rng.next_below(
                           static_cast<std::uint64_t>(h - rh - 6)));
    const auto border = static_cast<std::uint8_t>(rng.uniform(5.0, 20.0));

    for (int y = y0; y < y0 + rh; ++y) {
        for (int x = x0; x < x0 + rw; ++x) {
            const bool edge = (x - x0 < 3) || (x0 + rw - 1 - x < 3) ||
                              (y - y0 < 3) || (y0 + rh - 1 - y < 3);
            if (edge) img.set(x, y, border);
        }
    }
    return {x0, y0, rw, rh};
}

void fill_block_noise(GrayImage& img, const RectGeometry& rect, Rng& rng) {
    const int bx0 = rect.x0 + 3, by0 = rect.y0 + 3;
    const int bw = rect.w - 6, bh = rect.h - 6;
    constexpr int kBlock = 8;
    for (int by = 0; by < bh; by += kBlock) {
        for (int bx = 0; bx < bw; bx += kBlock) {
            const auto v = static_cast<std::uint8_t>(rng.next_below(256));
            const int y_end = std::min(by + kBlock, bh);
            const int x_end = std::min(bx + kBlock, bw);
            for (int y = by; y < y_end; ++y) {
                for (int x = bx; x < x_end; ++x) {
                    img.set(bx0 + x, by0 + y, v);
                }
            }
        }
    }
}

void draw_blob(GrayImage& img, double cx, double cy, double r0, double ph1,
               double ph2, std::uint8_t value) {
    const int w = img.width, h = img.height;
    const int reach = static_cast<int>(std::ceil(r0 * 1.5)) + 1;
    const int x_lo = std::max(0, static_cast<int>(cx) - reach);
    const int x_hi = std::min(w - 1, static_cast<int>(cx) + reach);
    const int y_lo = std::max(0, static_cast<int>(cy) - reach);
    const int y_hi = std::min(h - 1, static_cast<int>(cy) + reach);
    for (int y = y_lo; y <= y_hi; ++y) {
        for (int x = x_lo; x <= x_hi; ++x) {
            const double dx = x - cx, dy = y - cy;
            const double r = std::hypot(dx, dy);
            if (r > r0 * 1.5) continue;
            const double theta = std::atan2(dy, dx);
            const double edge =
                r0 * (1.0 + 0.22 * std::sin(3.0 * theta + ph1) +
                      0.15 * std::sin(5.0 * theta + ph2));
            if (r <= edge) img.set(x, y, value);
        }
    }
}

}  // namespace

std::vector<GrayImage> synth_frames(const VisualSceneSpec& spec) {
    if (spec.frame_count < 1) throw ConfigError("frame count must be at least 1");
    if (spec.width < 32 || spec.height < 32) {
        throw ConfigError("frames must be at least 32x32");
    }
    if (spec.noise_level < 0.0) throw ConfigError("noise level must be non-negative");

    Rng rng(spec.seed);
    std::vector<GrayImage> frames;
    frames.reserve(static_cast<std::size_t>(spec.frame_count));

    switch (spec.scene) {
        case VisualScene::tv_screen: {
            const GrayImage bg = gradient_background(rng, spec.width, spec.height,
                                                     nullptr);
            GrayImage with_rect = bg;
            const RectGeometry rect = draw_screen_rect(with_rect, rng);
            for (int f = 0; f < spec.frame_count; ++f) {
                GrayImage img = with_rect;
                fill_block_noise(img, rect, rng);  // interior changes each frame
                add_sensor_noise(img, rng, spec.noise_level);
                frames.push_back(std::move(img));
            }
            break;
        }
        case VisualScene::picture_frame: {
            const GrayImage bg = gradient_background(rng, spec.width, spec.height,
                                                     nullptr);
            GrayImage with_rect = bg;
            const RectGeometry rect = draw_screen_rect(with_rect, rng);
            fill_block_noise(with_rect, rect, rng);  // interior is static
            for (int f = 0; f < spec.frame_count; ++f) {
                GrayImage img = with_rect;
                add_sensor_noise(img, rng, spec.noise_level);
                frames.push_back(std::move(img));
            }
            break;
        }
        case VisualScene::moving_blob: {
            double bg_top = 0.0;
            const GrayImage bg = gradient_background(rng, spec.width, spec.height,
                                                     &bg_top);
            const double area_frac = rng.uniform(0.020, 0.042);
            const double r0 =
                std::sqrt(area_frac * spec.width * spec.height / std::numbers::pi);
            const double ph1 = rng.uniform(0.0, kTwoPi);
            const double ph2 = rng.uniform(0.0, kTwoPi);
            const auto value = static_cast<std::uint8_t>(
                bg_top > 128.0 ? rng.uniform(15.0, 45.0) : rng.uniform(205.0, 240.0));

            double cx = rng.uniform(0.15 * spec.width, 0.35 * spec.width);
            double cy = rng.uniform(0.35 * spec.height, 0.65 * spec.height);
            const double steps = std::max(1, spec.frame_count - 1);
            const double vx = 3.4 * r0 / steps;
            const double vy = rng.uniform(-0.6, 0.6) * r0 / steps;
            for (int f = 0; f < spec.frame_count; ++f) {
                GrayImage img = bg;
                draw_blob(img, cx, cy, r0, ph1, ph2, value);
                add_sensor_noise(img, rng, spec.noise_level);
                frames.push_back(std::move(img));
                cx += vx;
                cy += vy;
            }
            break;
        }
        case VisualScene::empty: {
            GrayImage base = GrayImage::filled(spec.width, spec.height, 0);
            for (auto& p : base.pixels) {
                p = static_cast<std::uint8_t>(rng.next_below(256));
            }
            for (int f = 0; f < spec.frame_count; ++f) {
                GrayImage img = base;
                add_sensor_noise(img, rng, spec.noise_level);
                frames.push_back(std::move(img));
            }
            break;
        }
    }
    return frames;
}

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

CorpusSpec CorpusSpec::standard(std::uint64_t seed) {
    CorpusSpec spec;
    spec.audio_train = {{AudioScene::tv, 31},
                        {AudioScene::laptop, 30},
                        {AudioScene::conversation, 30}};
    spec.audio_test = {{AudioScene::tv, 20},
                       {AudioScene::laptop, 20},
                       {AudioScene::conversation, 20}};
    spec.shots = {{VisualScene::tv_screen, 14},
                  {VisualScene::picture_frame, 4},
                  {VisualScene::moving_blob, 4},
                  {VisualScene::empty, 4}};
    spec.seed = seed;
    return spec;
}

CorpusLayout synth_corpus(const CorpusSpec& spec, const std::string& out_dir) {
    for (const auto& [scene, count] : spec.audio_train) {
        (void)scene;
        if (count < 1) throw ConfigError("audio class counts must be at least 1");
    }
    for (const auto& [scene, count] : spec.audio_test) {
        (void)scene;
        if (count < 1) throw ConfigError("audio class counts must be at least 1");
    }
    for (const auto& [scene, count] : spec.shots) {
        (void)scene;
        if (count < 1) throw ConfigError("shot class counts must be at least 1");
    }

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(fs::path(out_dir) / "audio", ec);
    if (ec) throw IoError("cannot create '" + out_dir + "/audio': " + ec.message());

    Rng rng(spec.seed);
    std::string manifest_rows, train_rows, test_rows;
    char name[96];

    auto emit_audio = [&](AudioScene scene, int count, const char* split,
                          std::string& split_rows) {
        for (int i = 0; i < count; ++i) {
            AudioSceneSpec scene_spec;
            scene_spec.scene = scene;
            scene_spec.duration_seconds = spec.clip_seconds;
            scene_spec.seed = rng.next_u64();
            const AudioClip clip = synth_audio(scene_spec);
            std::snprintf(name, sizeof(name), "audio/%s_%s_%04d.wav",
                          to_string(scene).c_str(), split, i);
            write_wav(clip, out_dir + "/" + name);
            manifest_rows += std::string(name) + "," + to_string(scene) + "," +
                             split + "\n";
            split_rows += std::string(name) + "," + to_string(scene) + "\n";
        }
    };

    for (const auto& [scene, count] : spec.audio_train) {
        emit_audio(scene, count, "train", train_rows);
    }
    for (const auto& [scene, count] : spec.audio_test) {
        emit_audio(scene, count, "test", test_rows);
    }

    for (const auto& [scene, count] : spec.shots) {
        for (int i = 0; i < count; ++i) {
            VisualSceneSpec scene_spec;
            scene_spec.scene = scene;
            scene_spec.frame_count = spec.frames_per_shot;
            scene_spec.width = spec.frame_width;
            scene_spec.height = spec.frame_height;
            scene_spec.seed = rng.next_u64();
            const auto frames = synth_frames(scene_spec);
            std::snprintf(name, sizeof(name), "shots/%s_%04d",
                          to_string(scene).c_str(), i);
            const std::string shot_dir = out_dir + "/" + name;
            fs::create_directories(shot_dir, ec);
            if (ec) throw IoError("cannot create '" + shot_dir + "': " + ec.message());
            write_shot_dir(frames, shot_dir);
            manifest_rows += std::string(name) + "," + to_string(scene) + ",test\n";
        }
    }

    auto write_text = [](const std::string& path, const std::string& body) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + path + "' for writing");
        out << body;
        if (!out) throw IoError("write failed for '" + path + "'");
    };

    CorpusLayout layout;
    layout.root = out_dir;
    layout.manifest = out_dir + "/manifest.csv";
    layout.train_manifest = out_dir + "/train.csv";
    layout.test_manifest = out_dir + "/test.csv";
    write_text(layout.manifest, manifest_rows);
    write_text(layout.train_manifest, train_rows);
    write_text(layout.test_manifest, test_rows);
    return layout;
}

std::vector<PairedScene> synth_paired_scenes(std::uint64_t seed, int positives,
                                             int negatives, double clip_seconds,
                                             int frames_per_shot, int width,
                                             int height) {
    if (positives < 0 || negatives < 0) throw ConfigError("negative scene counts");
    Rng rng(seed);
    std::vector<PairedScene> scenes;
    char id[64];

    for (int i = 0; i < positives; ++i) {
        PairedScene scene;
        std::snprintf(id, sizeof(id), "pos_%04d", i);
        scene.id = id;
        scene.is_tv = true;
        AudioSceneSpec a;
        a.scene = AudioScene::tv;
        a.duration_seconds = clip_seconds;
        a.seed = rng.next_u64();
        scene.audio = synth_audio(a);
        VisualSceneSpec v;
        v.scene = VisualScene::tv_screen;
        v.frame_count = frames_per_shot;
        v.width = width;
        v.height = height;
        v.seed = rng.next_u64();
        scene.frames = synth_frames(v);
        scenes.push_back(std::move(scene));
    }

    constexpr AudioScene kNegAudio[] = {AudioScene::conversation, AudioScene::laptop,
                                        AudioScene::conversation};
    constexpr VisualScene kNegVisual[] = {VisualScene::picture_frame,
                                          VisualScene::moving_blob,
                                          VisualScene::empty};
    for (int i = 0; i < negatives; ++i) {
        PairedScene scene;
        std::snprintf(id, sizeof(id), "neg_%04d", i);
        scene.id = id;
        scene.is_tv = false;
        AudioSceneSpec a;
        a.scene = kNegAudio[i % 3];
        a.duration_seconds = clip_seconds;
        a.seed = rng.next_u64();
        scene.audio = synth_audio(a);
        VisualSceneSpec v;
        v.scene = kNegVisual[i % 3];
        v.frame_count = frames_per_shot;
        v.width = width;
        v.height = height;
        v.seed = rng.next_u64();
        scene.frames = synth_frames(v);
        scenes.push_back(std::move(scene));
    }
    return scenes;
}

}  // namespace tvsense
