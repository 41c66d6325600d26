// Copyright 2026 TVSense Authors
// Acoustic feature extraction: framing, FFT, ZCR/STE, spectral moments,
// mel-cepstral coefficients, and per-second aggregation.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tvsense/audio_io.hpp"

namespace tvsense {

enum class WindowKind { rectangular, hamming };

// Analysis framing, lengths in samples at the clip's rate.
struct FrameSpec {
    std::size_t frame_length = 0;
    std::size_t hop_length = 0;
    WindowKind window = WindowKind::hamming;

    // Standard speech-analysis framing: 25 ms frames, 10 ms hop.
    static FrameSpec from_ms(int sample_rate, double frame_ms = 25.0,
                             double hop_ms = 10.0,
                             WindowKind window = WindowKind::hamming);
};

inline constexpr std::size_t kNumMfcc = 13;
inline constexpr std::size_t kFeatureCount = 4 + kNumMfcc;

// One aggregated analysis window. flatten() order matches feature_names().
struct FeatureVector {
    double zcr = 0.0;                // crossings per sample-gap, [0, 1]
    double ste = 0.0;                // mean squared amplitude
    double spectral_centroid = 0.0;  // Hz
    double spectrum_spread = 0.0;    // Hz
    std::array<double, kNumMfcc> mfcc{};
};

const std::array<std::string, kFeatureCount>& feature_names();
std::vector<double> flatten(const FeatureVector& fv);

struct Spectrum {
    std::vector<double> magnitudes;  // bins 0..fft_size/2
    double bin_width = 0.0;          // Hz
};

// Window coefficient at index n of an N-point window.
double window_coefficient(WindowKind kind, std::size_t n, std::size_t length);

// Slices the clip into overlapping frames, each multiplied by the window.
// Frame count is floor((N - frame_length)/hop) + 1.
std::vector<std::vector<double>> frame_signal(const AudioClip& clip,
                                              const FrameSpec& spec);

// Fraction of adjacent sample pairs whose signs differ. A zero sample takes
// the sign of the previous non-zero sample.
double zero_crossing_rate(std::span<const double> frame);

// Mean squared amplitude.
double short_time_energy(std::span<const double> frame);

// In-place radix-2 FFT, size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& data);

// Magnitude spectrum of the zero-padded frame, bins 0..fft_size/2.
// fft_size must be a power of two and at least the frame length.
Spectrum compute_spectrum(std::span<const double> frame, std::size_t fft_size,
                          int sample_rate);

// First moment of the magnitude spectrum and the square root of its second
// central moment. Throws on an all-zero spectrum.
std::pair<double, double> spectral_centroid_spread(const Spectrum& spec);

// Triangular mel filterbank, rows n_filters x n_bins. Filter edges are
// equally spaced on the mel scale between 0 and the covered band edge;
// adjacent filters overlap at 50%.
std::vector<std::vector<double>> mel_filterbank(std::size_t n_filters,
                                                std::size_t n_bins,
                                                double bin_width);

// Log mel filterbank energies of the squared magnitudes (floored at 1e-10)
// followed by an orthogonally scaled type-II DCT; first n_coeffs returned.
std::vector<double> mfcc(const Spectrum& spec, std::size_t n_filters,
                         std::size_t n_coeffs);

struct ExtractOptions {
    FrameSpec frame;                  // zero lengths: derive 25/10 ms from rate
    double window_seconds = 1.0;      // aggregation window
    std::size_t n_mel_filters = 26;
    std::size_t n_mfcc = kNumMfcc;
};

// Per-frame features averaged into one FeatureVector per aggregation window.
// ZCR/STE come from the raw frames; the spectral path applies the configured
// window. Frames with an all-zero spectrum are left out of the centroid and
// spread averages; an all-silent window reports (0, 0) for them.
std::vector<FeatureVector> extract_features(const AudioClip& clip,
                                            const ExtractOptions& opt = {});

// Feature dump: header row with the 17 column names, one CSV line per window.
void write_feature_csv(std::ostream& out, const std::vector<FeatureVector>& rows);

}  // namespace tvsense
