// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <numbers>
#include <vector>

#include "tvsense/audio_io.hpp"
#include "tvsense/dsp_features.hpp"
#include "tvsense/errors.hpp"
#include "tvsense/rng.hpp"

using namespace tvsense;

namespace {

std::string temp_path(const std::string& name) {
    static const auto dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("tvsense_audio_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return (dir / name).string();
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

// Hand-built WAV with full header control.
std::vector<std::uint8_t> make_wav(std::uint16_t format, std::uint16_t channels,
                                   std::uint32_t rate, std::uint16_t bits,
                                   const std::vector<std::uint8_t>& data,
                                   bool leading_junk_chunk = false) {
    std::vector<std::uint8_t> body;
    if (leading_junk_chunk) {
        body.insert(body.end(), {'L', 'I', 'S', 'T'});
        put_u32(body, 4);
        body.insert(body.end(), {'I', 'N', 'F', 'O'});
    }
    body.insert(body.end(), {'f', 'm', 't', ' '});
    put_u32(body, 16);
    put_u16(body, format);
    put_u16(body, channels);
    put_u32(body, rate);
    put_u32(body, rate * channels * bits / 8);
    put_u16(body, static_cast<std::uint16_t>(channels * bits / 8));
    put_u16(body, bits);
    body.insert(body.end(), {'d', 'a', 't', 'a'});
    put_u32(body, static_cast<std::uint32_t>(data.size()));
    body.insert(body.end(), data.begin(), data.end());

    std::vector<std::uint8_t> out;
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put_u32(out, static_cast<std::uint32_t>(4 + body.size()));
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

AudioClip sine_clip(double freq, double amp, int rate, double seconds) {
    AudioClip clip;
    clip.sample_rate = rate;
    const auto n = static_cast<std::size_t>(std::llround(seconds * rate));
    clip.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        clip.samples[i] =
            amp * std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(i) / rate);
    }
    return clip;
}

double rms(const std::vector<double>& v) {
    double acc = 0.0;
    for (double s : v) acc += s * s;
    return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace

TEST_CASE("16-bit samples scale by full-scale value") {
    std::vector<std::uint8_t> data;
    put_u16(data, static_cast<std::uint16_t>(0));
    put_u16(data, static_cast<std::uint16_t>(16384));
    put_u16(data, static_cast<std::uint16_t>(static_cast<std::int16_t>(-32768)));
    const auto path = temp_path("fullscale.wav");
    write_bytes(path, make_wav(1, 1, 8000, 16, data));

    const AudioClip clip = read_wav(path);
    CHECK(clip.sample_rate == 8000);
    REQUIRE(clip.samples.size() == 3);
    CHECK(clip.samples[0] == doctest::Approx(0.0));
    CHECK(clip.samples[1] == doctest::Approx(0.5));
    CHECK(clip.samples[2] == doctest::Approx(-1.0));
}

TEST_CASE("stereo frames average to mono") {
    std::vector<std::uint8_t> data;
    put_u16(data, static_cast<std::uint16_t>(32767));  // ~1.0 left
    put_u16(data, static_cast<std::uint16_t>(0));      // 0.0 right
    const auto path = temp_path("stereo.wav");
    write_bytes(path, make_wav(1, 2, 44100, 16, data));

    const AudioClip clip = read_wav(path);
    REQUIRE(clip.samples.size() == 1);
    CHECK(clip.samples[0] == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("8-bit unsigned samples read") {
    const auto path = temp_path("u8.wav");
    write_bytes(path, make_wav(1, 1, 8000, 8, {128, 255, 0}));
    const AudioClip clip = read_wav(path);
    REQUIRE(clip.samples.size() == 3);
    CHECK(clip.samples[0] == doctest::Approx(0.0));
    CHECK(clip.samples[1] == doctest::Approx(127.0 / 128.0));
    CHECK(clip.samples[2] == doctest::Approx(-1.0));
}

TEST_CASE("unknown chunks are skipped") {
    std::vector<std::uint8_t> data;
    put_u16(data, static_cast<std::uint16_t>(1000));
    const auto path = temp_path("junk.wav");
    write_bytes(path, make_wav(1, 1, 22050, 16, data, /*leading_junk_chunk=*/true));
    const AudioClip clip = read_wav(path);
    CHECK(clip.sample_rate == 22050);
    REQUIRE(clip.samples.size() == 1);
}

TEST_CASE("write clamps and quantizes") {
    AudioClip clip;
    clip.sample_rate = 8000;
    clip.samples = {0.0, 1.0, -1.0, 0.25};
    const auto path = temp_path("write.wav");
    write_wav(clip, path);

    const auto bytes = read_bytes(path);
    REQUIRE(bytes.size() == 44 + 8);
    auto sample_at = [&](std::size_t i) {
        return static_cast<std::int16_t>(bytes[44 + 2 * i] | (bytes[45 + 2 * i] << 8));
    };
    CHECK(sample_at(0) == 0);
    CHECK(sample_at(1) == 32767);  // clamped full scale
    CHECK(sample_at(2) == -32768);
    CHECK(sample_at(3) == 8192);
}

TEST_CASE("random clips round-trip within one quantization step") {
    Rng rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        AudioClip clip;
        clip.sample_rate = 8000 + 1000 * trial;
        clip.samples.resize(500);
        for (auto& s : clip.samples) s = rng.uniform(-1.0, 1.0);

        const auto path = temp_path("roundtrip.wav");
        write_wav(clip, path);
        const AudioClip back = read_wav(path);
        REQUIRE(back.samples.size() == clip.samples.size());
        CHECK(back.sample_rate == clip.sample_rate);
        for (std::size_t i = 0; i < clip.samples.size(); ++i) {
            CHECK(std::abs(back.samples[i] - clip.samples[i]) <= 1.0 / 32768.0);
        }

        // Re-encoding an already quantized clip is byte-stable.
        const auto path2 = temp_path("roundtrip2.wav");
        write_wav(back, path2);
        CHECK(read_bytes(path) == read_bytes(path2));
    }
}

TEST_CASE("read errors carry the right category") {
    const auto not_riff = temp_path("bad.wav");
    write_bytes(not_riff, {'N', 'O', 'P', 'E', 0, 0, 0, 0});
    CHECK_THROWS_AS(read_wav(not_riff), FormatError);

    const auto compressed = temp_path("float.wav");
    std::vector<std::uint8_t> data;
    put_u16(data, 0);
    write_bytes(compressed, make_wav(3, 1, 8000, 16, data));  // IEEE float tag
    CHECK_THROWS_AS(read_wav(compressed), UnsupportedError);

    const auto empty = temp_path("empty.wav");
    write_bytes(empty, make_wav(1, 1, 8000, 16, {}));
    CHECK_THROWS_AS(read_wav(empty), InsufficientDataError);

    const auto truncated = temp_path("trunc.wav");
    auto bytes = make_wav(1, 1, 8000, 16, {0, 0, 0, 0});
    bytes.resize(bytes.size() - 2);
    write_bytes(truncated, bytes);
    CHECK_THROWS_AS(read_wav(truncated), FormatError);

    CHECK_THROWS_AS(read_wav(temp_path("missing.wav")), IoError);
}

TEST_CASE("resample at the native rate returns identical samples") {
    const AudioClip clip = sine_clip(440.0, 0.5, 8000, 0.5);
    const AudioClip out = resample(clip, 8000);
    CHECK(out.samples == clip.samples);
}

TEST_CASE("upsampling is rejected") {
    const AudioClip clip = sine_clip(440.0, 0.5, 8000, 0.1);
    CHECK_THROWS_AS(resample(clip, 16000), UnsupportedError);
    CHECK_THROWS_AS(resample(clip, 0), ConfigError);
}

TEST_CASE("100 Hz tone keeps its FFT peak through 44100 -> 4000") {
    const AudioClip clip = sine_clip(100.0, 0.5, 44100, 4.0);
    const AudioClip out = resample(clip, 4000);

    const std::size_t fft_size = 8192;
    REQUIRE(out.samples.size() >= fft_size);
    std::vector<double> window(out.samples.begin(), out.samples.begin() + fft_size);
    const Spectrum spec = compute_spectrum(window, fft_size, out.sample_rate);

    std::size_t peak = 1;
    for (std::size_t k = 1; k + 1 < spec.magnitudes.size(); ++k) {
        if (spec.magnitudes[k] > spec.magnitudes[peak]) peak = k;
    }
    const auto expected = static_cast<std::size_t>(std::lround(100.0 / spec.bin_width));
    CHECK(std::abs(static_cast<long>(peak) - static_cast<long>(expected)) <= 1);
}

TEST_CASE("tone above the target Nyquist is rejected") {
    const AudioClip clip = sine_clip(10000.0, 0.5, 44100, 1.0);
    const AudioClip out = resample(clip, 8000);
    CHECK(rms(out.samples) < 0.05 * rms(clip.samples));
}

TEST_CASE("resample preserves duration within one output period") {
    Rng rng(7);
    for (int trial = 0; trial < 8; ++trial) {
        const int in_rate = 16000 + static_cast<int>(rng.next_below(30000));
        const int target = 3000 + static_cast<int>(rng.next_below(
                                      static_cast<std::uint64_t>(in_rate - 3000)));
        AudioClip clip;
        clip.sample_rate = in_rate;
        clip.samples.assign(1000 + rng.next_below(20000), 0.1);
        const AudioClip out = resample(clip, target);
        const double in_seconds =
            static_cast<double>(clip.samples.size()) / in_rate;
        const double out_seconds = static_cast<double>(out.samples.size()) / target;
        CHECK(std::abs(in_seconds - out_seconds) <= 1.0 / target);
    }
}

TEST_CASE("band-limited tones keep their amplitude within 5%") {
    struct Case {
        double freq;
        int target;
    };
    // Up to 0.4x the target rate, including the extreme 11x decimation.
    const Case cases[] = {{1500.0, 4000}, {3000.0, 8000}, {6200.0, 16000},
                          {400.0, 4000}};
    for (const Case& c : cases) {
        const AudioClip clip = sine_clip(c.freq, 0.5, 44100, 1.0);
        const AudioClip out = resample(clip, c.target);

        // Projection onto the tone frequency recovers its amplitude.
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < out.samples.size(); ++i) {
            const double ang = -2.0 * std::numbers::pi * c.freq *
                               static_cast<double>(i) / c.target;
            acc += out.samples[i] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        const double amp = 2.0 * std::abs(acc) / static_cast<double>(out.samples.size());
        CHECK(amp == doctest::Approx(0.5).epsilon(0.05));
    }
}
