// Copyright 2026 TVSense Authors
// Binary kernel SVM: SMO trainer, prediction, clip-level voting, and a
// versioned model file.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tvsense {

enum class Label : int { non_tv = -1, tv = +1 };

struct LabeledSample {
    std::vector<double> features;
    Label label = Label::non_tv;
};

enum class KernelKind { linear, rbf };

struct Standardization {
    std::vector<double> mean;
    std::vector<double> stddev;  // zero-variance dimensions stored as 1
};

struct SvmModel {
    KernelKind kernel = KernelKind::rbf;
    double gamma = 0.0;  // rbf width; ignored for linear
    double c = 10.0;
    double bias = 0.0;
    Standardization standardization;
    std::vector<std::vector<double>> support_vectors;  // standardized
    std::vector<double> alpha_y;                       // alpha_i * y_i

    std::size_t dimension() const { return standardization.mean.size(); }
};

struct SmoConfig {
    KernelKind kernel = KernelKind::rbf;
    double gamma = 0.0;  // 0: use 1/dimension
    double c = 10.0;
    double tol = 1e-3;
    std::size_t max_iterations = 100000;
};

struct TrainResult {
    SvmModel model;
    std::vector<double> alpha;  // per training sample
    std::size_t iterations = 0;
    double kkt_violation = 0.0;  // max-violating-pair gap at termination
    double objective = 0.0;      // dual objective at the solution
};

// Per-dimension mean and population standard deviation over the training
// set; needs at least two samples.
Standardization standardize_fit(const std::vector<LabeledSample>& samples);

// Sequential minimal optimization with max-violating-pair selection.
// The returned model satisfies the dual KKT conditions within cfg.tol and
// sum(alpha_i * y_i) = 0. Throws ConvergenceError past the iteration cap
// and DegenerateError when only one class is present.
TrainResult train_detailed(const std::vector<LabeledSample>& samples,
                           const SmoConfig& cfg = {});
SvmModel train(const std::vector<LabeledSample>& samples, const SmoConfig& cfg = {});

// f(x) = sum_i alpha_y_i K(sv_i, standardize(x)) + bias; positive means tv.
double decision_value(const SvmModel& model, const std::vector<double>& features);

struct ClipVerdict {
    Label label = Label::non_tv;
    double score = 0.0;  // fraction of windows voting tv
};

// Majority vote over per-window decisions; exact ties go to tv.
ClipVerdict classify_clip(const SvmModel& model,
                          const std::vector<std::vector<double>>& windows);

void save_model(const SvmModel& model, const std::string& path);
SvmModel load_model(const std::string& path);

}  // namespace tvsense
