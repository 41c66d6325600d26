// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#include "tvsense/dsp_features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "tvsense/errors.hpp"

namespace tvsense {

namespace {

constexpr double kEnergyFloor = 1e-10;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

}  // namespace

FrameSpec FrameSpec::from_ms(int sample_rate, double frame_ms, double hop_ms,
                             WindowKind window) {
    if (sample_rate <= 0) throw ConfigError("sample rate must be positive");
    FrameSpec spec;
    spec.frame_length =
        static_cast<std::size_t>(std::lround(frame_ms * 1e-3 * sample_rate));
    spec.hop_length =
        static_cast<std::size_t>(std::lround(hop_ms * 1e-3 * sample_rate));
    spec.window = window;
    if (spec.frame_length == 0 || spec.hop_length == 0 ||
        spec.hop_length > spec.frame_length) {
        throw ConfigError("degenerate framing for rate " +
                          std::to_string(sample_rate));
    }
    return spec;
}

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = [] {
        std::array<std::string, kFeatureCount> n;
        n[0] = "zcr";
        n[1] = "ste";
        n[2] = "spectral_centroid";
        n[3] = "spectrum_spread";
        for (std::size_t i = 0; i < kNumMfcc; ++i)
            n[4 + i] = "mfcc_" + std::to_string(i);
        return n;
    }();
    return names;
}

std::vector<double> flatten(const FeatureVector& fv) {
    std::vector<double> out;
    out.reserve(kFeatureCount);
    out.push_back(fv.zcr);
    out.push_back(fv.ste);
    out.push_back(fv.spectral_centroid);
    out.push_back(fv.spectrum_spread);
    out.insert(out.end(), fv.mfcc.begin(), fv.mfcc.end());
    return out;
}

double window_coefficient(WindowKind kind, std::size_t n, std::size_t length) {
    if (kind == WindowKind::rectangular || length < 2) return 1.0;
    return 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                  static_cast<double>(length - 1));
}

std::vector<std::vector<double>> frame_signal(const AudioClip& clip,
                                              const FrameSpec& spec) {
    const std::size_t n = clip.samples.size();
    if (spec.frame_length == 0 || spec.hop_length == 0 ||
        spec.hop_length > spec.frame_length) {
        throw ConfigError("invalid frame spec");
    }
    if (n < spec.frame_length) {
        throw InsufficientDataError("clip shorter than one frame");
    }
    const std::size_t count = (n - spec.frame_length) / spec.hop_length + 1;
    std::vector<std::vector<double>> frames(count);
    for (std::size_t f = 0; f < count; ++f) {
        const double* src = clip.samples.data() + f * spec.hop_length;
        auto& frame = frames[f];
        frame.resize(spec.frame_length);
        for (std::size_t i = 0; i < spec.frame_length; ++i) {
            frame[i] = src[i] * window_coefficient(spec.window, i, spec.frame_length);
        }
    }
    return frames;
}

double zero_crossing_rate(std::span<const double> frame) {
    if (frame.size() < 2) throw InsufficientDataError("frame shorter than 2 samples");
    int prev = 0;  // 0 until the first non-zero sample
    std::size_t crossings = 0;
    for (double s : frame) {
        int sign = (s > 0.0) - (s < 0.0);
        if (sign == 0) sign = prev;
        if (prev != 0 && sign != 0 && sign != prev) ++crossings;
        if (sign != 0) prev = sign;
    }
    return static_cast<double>(crossings) / static_cast<double>(frame.size() - 1);
}

double short_time_energy(std::span<const double> frame) {
    if (frame.empty()) throw InsufficientDataError("empty frame");
    double acc = 0.0;
    for (double s : frame) acc += s * s;
    return acc / static_cast<double>(frame.size());
}

void fft_radix2(std::vector<std::complex<double>>& data) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) throw ConfigError("FFT size must be a power of two");
    if (n <= 1) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wstep(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = data[i + k];
                std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wstep;
            }
        }
    }
}

Spectrum compute_spectrum(std::span<const double> frame, std::size_t fft_size,
                          int sample_rate) {
    if (!is_power_of_two(fft_size)) throw ConfigError("FFT size must be a power of two");
    if (fft_size < frame.size()) throw ConfigError("FFT size smaller than frame");
    if (sample_rate <= 0) throw ConfigError("sample rate must be positive");

    std::vector<std::complex<double>> buf(fft_size, {0.0, 0.0});
    for (std::size_t i = 0; i < frame.size(); ++i) buf[i] = {frame[i], 0.0};
    fft_radix2(buf);

    Spectrum spec;
    spec.bin_width = static_cast<double>(sample_rate) / static_cast<double>(fft_size);
    spec.magnitudes.resize(fft_size / 2 + 1);
    for (std::size_t k = 0; k < spec.magnitudes.size(); ++k) {
        spec.magnitudes[k] = std::abs(buf[k]);
    }
    return spec;
}

std::pair<double, double> spectral_centroid_spread(const Spectrum& spec) {
    double mass = 0.0, first = 0.0;
    for (std::size_t i = 0; i < spec.magnitudes.size(); ++i) {
        mass += spec.magnitudes[i];
        first += static_cast<double>(i) * spec.bin_width * spec.magnitudes[i];
    }
    if (mass <= 0.0) throw DegenerateError("centroid undefined for all-zero spectrum");
    const double centroid = first / mass;
    double second = 0.0;
    for (std::size_t i = 0; i < spec.magnitudes.size(); ++i) {
        const double d = static_cast<double>(i) * spec.bin_width - centroid;
        second += d * d * spec.magnitudes[i];
    }
    return {centroid, std::sqrt(second / mass)};
}

std::vector<std::vector<double>> mel_filterbank(std::size_t n_filters,
                                                std::size_t n_bins,
                                                double bin_width) {
    if (n_filters == 0 || n_bins == 0 || bin_width <= 0.0) {
        throw ConfigError("empty filterbank configuration");
    }
    if (n_filters + 2 > n_bins) {
        throw ConfigError("filter count " + std::to_string(n_filters) +
                          " too large for " + std::to_string(n_bins) + " bins");
    }
    const double top_hz = static_cast<double>(n_bins - 1) * bin_width;
    const double top_mel = hz_to_mel(top_hz);
    std::vector<double> edges(n_filters + 2);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        edges[i] = mel_to_hz(top_mel * static_cast<double>(i) /
                             static_cast<double>(n_filters + 1));
    }

    std::vector<std::vector<double>> bank(n_filters, std::vector<double>(n_bins, 0.0));
    for (std::size_t j = 0; j < n_filters; ++j) {
        const double lo = edges[j], mid = edges[j + 1], hi = edges[j + 2];
        for (std::size_t i = 0; i < n_bins; ++i) {
            const double f = static_cast<double>(i) * bin_width;
            if (f <= lo || f >= hi) continue;
            bank[j][i] = (f <= mid) ? (f - lo) / (mid - lo) : (hi - f) / (hi - mid);
        }
    }
    return bank;
}

std::vector<double> mfcc(const Spectrum& spec, std::size_t n_filters,
                         std::size_t n_coeffs) {
    if (n_coeffs == 0 || n_filters < n_coeffs) {
        throw ConfigError("need n_filters >= n_coeffs > 0");
    }
    const auto bank = mel_filterbank(n_filters, spec.magnitudes.size(), spec.bin_width);

    std::vector<double> log_energy(n_filters);
    for (std::size_t j = 0; j < n_filters; ++j) {
        double e = 0.0;
        for (std::size_t i = 0; i < spec.magnitudes.size(); ++i) {
            e += bank[j][i] * spec.magnitudes[i] * spec.magnitudes[i];
        }
        log_energy[j] = std::log(std::max(e, kEnergyFloor));
    }

    const double scale = std::sqrt(2.0 / static_cast<double>(n_filters));
    std::vector<double> coeffs(n_coeffs, 0.0);
    for (std::size_t k = 0; k < n_coeffs; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_filters; ++j) {
            acc += log_energy[j] *
                   std::cos(std::numbers::pi * static_cast<double>(k) *
                            (static_cast<double>(j) + 0.5) /
                            static_cast<double>(n_filters));
        }
        coeffs[k] = scale * acc;
    }
    return coeffs;
}

std::vector<FeatureVector> extract_features(const AudioClip& clip,
                                            const ExtractOptions& opt) {
    if (clip.sample_rate <= 0) throw ConfigError("clip has non-positive sample rate");
    if (opt.window_seconds <= 0.0) throw ConfigError("window seconds must be positive");

    FrameSpec spec = opt.frame;
    if (spec.frame_length == 0) spec = FrameSpec::from_ms(clip.sample_rate);

    const std::size_t window_samples = static_cast<std::size_t>(
        std::llround(opt.window_seconds * clip.sample_rate));
    if (window_samples == 0 || clip.samples.size() < window_samples) {
        throw InsufficientDataError("clip shorter than one aggregation window");
    }
    if (clip.samples.size() < spec.frame_length) {
        throw InsufficientDataError("clip shorter than one frame");
    }

    const std::size_t n_frames =
        (clip.samples.size() - spec.frame_length) / spec.hop_length + 1;
    const std::size_t fft_size = next_power_of_two(spec.frame_length);

    struct Accum {
        double zcr = 0.0, ste = 0.0, centroid = 0.0, spread = 0.0;
        std::array<double, kNumMfcc> mfcc{};
        std::size_t frames = 0;
        std::size_t voiced = 0;  // frames with non-zero spectrum
    };
    std::vector<Accum> windows;

    std::vector<double> windowed(spec.frame_length);
    for (std::size_t f = 0; f < n_frames; ++f) {
        const std::size_t start = f * spec.hop_length;
        const std::size_t w = start / window_samples;
        if (w >= windows.size()) windows.resize(w + 1);
        Accum& acc = windows[w];

        std::span<const double> raw(clip.samples.data() + start, spec.frame_length);
        acc.zcr += zero_crossing_rate(raw);
        acc.ste += short_time_energy(raw);

        for (std::size_t i = 0; i < spec.frame_length; ++i) {
            windowed[i] = raw[i] * window_coefficient(spec.window, i, spec.frame_length);
        }
        Spectrum s = compute_spectrum(windowed, fft_size, clip.sample_rate);

        bool silent = std::all_of(s.magnitudes.begin(), s.magnitudes.end(),
                                  [](double m) { return m == 0.0; });
        if (!silent) {
            auto [centroid, spread] = spectral_centroid_spread(s);
            acc.centroid += centroid;
            acc.spread += spread;
            ++acc.voiced;
        }
        auto coeffs = mfcc(s, opt.n_mel_filters, opt.n_mfcc);
        for (std::size_t k = 0; k < opt.n_mfcc && k < kNumMfcc; ++k) {
            acc.mfcc[k] += coeffs[k];
        }
        ++acc.frames;
    }

    std::vector<FeatureVector> out;
    out.reserve(windows.size());
    for (const Accum& acc : windows) {
        if (acc.frames == 0) continue;
        FeatureVector fv;
        const double inv = 1.0 / static_cast<double>(acc.frames);
        fv.zcr = acc.zcr * inv;
        fv.ste = acc.ste * inv;
        if (acc.voiced > 0) {
            fv.spectral_centroid = acc.centroid / static_cast<double>(acc.voiced);
            fv.spectrum_spread = acc.spread / static_cast<double>(acc.voiced);
        }
        for (std::size_t k = 0; k < kNumMfcc; ++k) fv.mfcc[k] = acc.mfcc[k] * inv;
        out.push_back(fv);
    }
    if (out.empty()) throw InsufficientDataError("no complete analysis window");
    return out;
}

void write_feature_csv(std::ostream& out, const std::vector<FeatureVector>& rows) {
    const auto& names = feature_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << names[i] << (i + 1 < names.size() ? ',' : '\n');
    }
    char buf[64];
    for (const FeatureVector& fv : rows) {
        const auto vals = flatten(fv);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.9g", vals[i]);
            out << buf << (i + 1 < vals.size() ? ',' : '\n');
        }
    }
}

}  // namespace tvsense
