// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#include "tvsense/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <numeric>

#include "tvsense/errors.hpp"

namespace tvsense {

namespace {

std::uint16_t read_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

struct FmtChunk {
    std::uint16_t audio_format = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t block_align = 0;
    std::uint16_t bits_per_sample = 0;
};

}  // namespace

AudioClip read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
    if (buf.size() < 12 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
        std::memcmp(buf.data() + 8, "WAVE", 4) != 0) {
        throw FormatError("'" + path + "' is not a RIFF/WAVE file");
    }

    FmtChunk fmt;
    bool have_fmt = false;
    const std::uint8_t* data = nullptr;
    std::size_t data_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= buf.size()) {
        const char* id = reinterpret_cast<const char*>(buf.data() + pos);
        std::uint32_t size = read_u32(buf.data() + pos + 4);
        pos += 8;
        if (pos + size > buf.size()) {
            throw FormatError("'" + path + "': chunk '" + std::string(id, 4) +
                              "' overruns file");
        }
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (size < 16) throw FormatError("'" + path + "': short fmt chunk");
            fmt.audio_format = read_u16(buf.data() + pos);
            fmt.channels = read_u16(buf.data() + pos + 2);
            fmt.sample_rate = read_u32(buf.data() + pos + 4);
            fmt.block_align = read_u16(buf.data() + pos + 12);
            fmt.bits_per_sample = read_u16(buf.data() + pos + 14);
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            data = buf.data() + pos;
            data_size = size;
            if (have_fmt) break;  // fmt precedes data in practice
        }
        pos += size + (size & 1);  // chunks are word-aligned
    }

    if (!have_fmt) throw FormatError("'" + path + "': missing fmt chunk");
    if (data == nullptr) throw FormatError("'" + path + "': missing data chunk");
    if (fmt.audio_format != 1) {
        throw UnsupportedError("'" + path + "': compressed codec (format tag " +
                               std::to_string(fmt.audio_format) + ")");
    }
    if (fmt.channels != 1 && fmt.channels != 2) {
        throw UnsupportedError("'" + path + "': " + std::to_string(fmt.channels) +
                               " channels (want 1 or 2)");
    }
    if (fmt.bits_per_sample != 8 && fmt.bits_per_sample != 16) {
        throw UnsupportedError("'" + path + "': " +
                               std::to_string(fmt.bits_per_sample) +
                               "-bit samples (want 8 or 16)");
    }
    if (fmt.sample_rate == 0) throw FormatError("'" + path + "': zero sample rate");
    if (data_size == 0) throw InsufficientDataError("'" + path + "': empty data chunk");

    const std::size_t bytes_per_sample = fmt.bits_per_sample / 8;
    const std::size_t expected_align = bytes_per_sample * fmt.channels;
    if (fmt.block_align != expected_align) {
        throw FormatError("'" + path + "': block align " +
                          std::to_string(fmt.block_align) + " does not match format");
    }
    const std::size_t frames = data_size / expected_align;
    if (frames == 0) throw InsufficientDataError("'" + path + "': empty data chunk");

    AudioClip clip;
    clip.sample_rate = static_cast<int>(fmt.sample_rate);
    clip.samples.resize(frames);

    for (std::size_t f = 0; f < frames; ++f) {
        double acc = 0.0;
        for (std::uint16_t ch = 0; ch < fmt.channels; ++ch) {
            const std::uint8_t* p = data + f * expected_align + ch * bytes_per_sample;
            if (fmt.bits_per_sample == 16) {
                std::int16_t v = static_cast<std::int16_t>(read_u16(p));
                acc += v / 32768.0;
            } else {
                acc += (static_cast<int>(*p) - 128) / 128.0;
            }
        }
        clip.samples[f] = acc / fmt.channels;
    }
    return clip;
}

void write_wav(const AudioClip& clip, const std::string& path) {
    if (clip.sample_rate <= 0) throw ConfigError("clip has non-positive sample rate");

    const std::uint32_t n = static_cast<std::uint32_t>(clip.samples.size());
    const std::uint32_t data_size = n * 2;

    std::vector<std::uint8_t> out;
    out.reserve(44 + data_size);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put_u32(out, 36 + data_size);
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), {'f', 'm', 't', ' '});
    put_u32(out, 16);
    put_u16(out, 1);  // PCM
    put_u16(out, 1);  // mono
    put_u32(out, static_cast<std::uint32_t>(clip.sample_rate));
    put_u32(out, static_cast<std::uint32_t>(clip.sample_rate) * 2);
    put_u16(out, 2);   // block align
    put_u16(out, 16);  // bits
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put_u32(out, data_size);

    for (double s : clip.samples) {
        long q = std::lround(s * 32768.0);
        q = std::clamp(q, -32768L, 32767L);
        put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f.write(reinterpret_cast<const char*>(out.data()),
            static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failed for '" + path + "'");
}

namespace {

double windowed_sinc(double t, double cutoff, double half_width) {
    // Hamming-windowed sinc, cutoff in cycles per input sample.
    const double pi = std::numbers::pi;
    double x = 2.0 * cutoff * t;
    double s = (x == 0.0) ? 1.0 : std::sin(pi * x) / (pi * x);
    double w = 0.54 + 0.46 * std::cos(pi * t / half_width);
    return 2.0 * cutoff * s * w;
}

}  // namespace

AudioClip resample(const AudioClip& clip, int target_rate) {
    if (clip.sample_rate <= 0) throw ConfigError("clip has non-positive sample rate");
    if (target_rate <= 0) throw ConfigError("target rate must be positive");
    if (target_rate > clip.sample_rate) {
        throw UnsupportedError("upsampling " + std::to_string(clip.sample_rate) +
                               " Hz to " + std::to_string(target_rate) +
                               " Hz is not supported");
    }
    if (target_rate == clip.sample_rate) return clip;

    const std::int64_t n_in = static_cast<std::int64_t>(clip.samples.size());
    const double ratio = static_cast<double>(clip.sample_rate) / target_rate;
    const double cutoff = 0.45 / ratio;
    const double half_width = 32.0 * ratio;  // 32 output periods per side
    const std::int64_t reach = static_cast<std::int64_t>(std::ceil(half_width));

    const std::int64_t n_out = static_cast<std::int64_t>(
        std::llround(static_cast<double>(n_in) * target_rate / clip.sample_rate));

    AudioClip out;
    out.sample_rate = target_rate;
    out.source_label = clip.source_label;
    out.samples.assign(static_cast<std::size_t>(std::max<std::int64_t>(n_out, 0)), 0.0);
    if (n_out <= 0 || n_in == 0) return out;

    // The input position of output sample n is n*in/target; its fractional
    // part repeats with period target/gcd, so tap sets can be precomputed
    // once per phase.
    const std::int64_t g = std::gcd(static_cast<std::int64_t>(clip.sample_rate),
                                    static_cast<std::int64_t>(target_rate));
    const std::int64_t phases = target_rate / g;
    const std::int64_t stride = clip.sample_rate / g;

    std::vector<std::vector<double>> taps(static_cast<std::size_t>(phases));
    std::vector<std::int64_t> tap_start(static_cast<std::size_t>(phases));
    std::vector<double> tap_sum(static_cast<std::size_t>(phases));
    for (std::int64_t r = 0; r < phases; ++r) {
        const double center =
            static_cast<double>(r) * clip.sample_rate / target_rate;
        const std::int64_t k0 = static_cast<std::int64_t>(std::ceil(center)) - reach;
        const std::int64_t k1 = static_cast<std::int64_t>(std::floor(center)) + reach;
        auto& t = taps[static_cast<std::size_t>(r)];
        t.reserve(static_cast<std::size_t>(k1 - k0 + 1));
        double sum = 0.0;
        for (std::int64_t k = k0; k <= k1; ++k) {
            double d = center - static_cast<double>(k);
            double h = (std::abs(d) <= half_width) ? windowed_sinc(d, cutoff, half_width)
                                                   : 0.0;
            t.push_back(h);
            sum += h;
        }
        tap_start[static_cast<std::size_t>(r)] = k0;
        tap_sum[static_cast<std::size_t>(r)] = sum;
    }

    for (std::int64_t n = 0; n < n_out; ++n) {
        const std::int64_t r = n % phases;
        const std::int64_t m = n / phases;
        const auto& t = taps[static_cast<std::size_t>(r)];
        const std::int64_t k0 = tap_start[static_cast<std::size_t>(r)] + m * stride;

        double acc = 0.0;
        if (k0 >= 0 && k0 + static_cast<std::int64_t>(t.size()) <= n_in) {
            const double* x = clip.samples.data() + k0;
            for (std::size_t j = 0; j < t.size(); ++j) acc += x[j] * t[j];
            double norm = tap_sum[static_cast<std::size_t>(r)];
            out.samples[static_cast<std::size_t>(n)] =
                (std::abs(norm) > 1e-12) ? acc / norm : acc;
        } else {
            // Truncated kernel near the signal edges; renormalize over the
            // taps that landed inside.
            double wsum = 0.0;
            for (std::size_t j = 0; j < t.size(); ++j) {
                std::int64_t k = k0 + static_cast<std::int64_t>(j);
                if (k < 0 || k >= n_in) continue;
                acc += clip.samples[static_cast<std::size_t>(k)] * t[j];
                wsum += t[j];
            }
            out.samples[static_cast<std::size_t>(n)] =
                (std::abs(wsum) > 1e-12) ? acc / wsum : 0.0;
        }
    }
    return out;
}

}  // namespace tvsense
