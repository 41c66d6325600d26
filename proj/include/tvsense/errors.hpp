// Copyright 2026 TVSense Authors
// Error taxonomy shared by every pipeline stage.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <stdexcept>
#include <string>

namespace tvsense {

class TvError : public std::runtime_error {
public:
    explicit TvError(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken or truncated file contents (WAV/PGM/model files).
class FormatError : public TvError {
public:
    using TvError::TvError;
};

// Structurally valid input asking for something we do not do
// (compressed codecs, upsampling, >2 channels).
class UnsupportedError : public TvError {
public:
    using TvError::TvError;
};

// Input too short or empty for the requested analysis.
class InsufficientDataError : public TvError {
public:
    using TvError::TvError;
};

// Dimension mismatch between related inputs.
class ShapeError : public TvError {
public:
    using TvError::TvError;
};

// Invalid parameter combination.
class ConfigError : public TvError {
public:
    using TvError::TvError;
};

// Mathematically undefined case: all-zero spectrum, single-class training
// set, sub-3-point contour, fusing two absent modalities.
class DegenerateError : public TvError {
public:
    using TvError::TvError;
};

// Filesystem failure.
class IoError : public TvError {
public:
    using TvError::TvError;
};

// Optimizer ran out of iterations before reaching tolerance.
class ConvergenceError : public TvError {
public:
    ConvergenceError(const std::string& msg, double worst_violation)
        : TvError(msg), worst_violation_(worst_violation) {}

    double worst_violation() const { return worst_violation_; }

private:
    double worst_violation_;
};

}  // namespace tvsense
