// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <vector>

#include "oracles.hpp"
#include "tvsense/errors.hpp"
#include "tvsense/rng.hpp"
#include "tvsense/svm.hpp"

using namespace tvsense;

namespace {

std::string temp_path(const std::string& name) {
    static const auto dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("tvsense_svm_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return (dir / name).string();
}

std::vector<LabeledSample> two_point_set() {
    return {{{-1.0}, Label::non_tv}, {{1.0}, Label::tv}};
}

std::vector<LabeledSample> xor_set() {
    return {{{1.0, 1.0}, Label::tv},
            {{-1.0, -1.0}, Label::tv},
            {{1.0, -1.0}, Label::non_tv},
            {{-1.0, 1.0}, Label::non_tv}};
}

// Random 2-D set that a linear separator splits with margin.
std::vector<LabeledSample> random_separable_set(Rng& rng, std::size_t n) {
    std::vector<LabeledSample> samples;
    const double wx = rng.uniform(-1.0, 1.0), wy = rng.uniform(-1.0, 1.0);
    const double norm = std::hypot(wx, wy);
    for (std::size_t i = 0; i < n; ++i) {
        double x, y, margin;
        do {
            x = rng.uniform(-2.0, 2.0);
            y = rng.uniform(-2.0, 2.0);
            margin = (wx * x + wy * y) / norm;
        } while (std::abs(margin) < 0.2);
        samples.push_back({{x, y}, margin > 0 ? Label::tv : Label::non_tv});
    }
    bool has_pos = false, has_neg = false;
    for (const auto& s : samples) {
        (s.label == Label::tv ? has_pos : has_neg) = true;
    }
    if (!has_pos) samples[0].label = Label::tv;
    if (!has_neg) samples[1].label = Label::non_tv;
    return samples;
}

double worst_kkt_violation(const TrainResult& result,
                           const std::vector<LabeledSample>& samples) {
    double worst = 0.0;
    const double c = result.model.c;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double y = samples[i].label == Label::tv ? 1.0 : -1.0;
        const double margin = y * decision_value(result.model, samples[i].features);
        const double a = result.alpha[i];
        if (a <= 0.0) {
            worst = std::max(worst, 1.0 - margin);
        } else if (a >= c) {
            worst = std::max(worst, margin - 1.0);
        } else {
            worst = std::max(worst, std::abs(margin - 1.0));
        }
    }
    return worst;
}

double sum_alpha_y(const SvmModel& model) {
    double acc = 0.0;
    for (double ay : model.alpha_y) acc += ay;
    return acc;
}

}  // namespace

TEST_CASE("standardization statistics") {
    std::vector<LabeledSample> samples = {{{0.0, 5.0}, Label::tv},
                                          {{2.0, 5.0}, Label::non_tv}};
    const Standardization st = standardize_fit(samples);
    CHECK(st.mean[0] == doctest::Approx(1.0));
    CHECK(st.stddev[0] == doctest::Approx(1.0));  // population stddev
    CHECK(st.mean[1] == doctest::Approx(5.0));
    CHECK(st.stddev[1] == doctest::Approx(1.0));  // zero variance stored as 1

    CHECK_THROWS_AS(standardize_fit({{{1.0}, Label::tv}}), InsufficientDataError);
}

TEST_CASE("standardized training data has zero mean and unit variance") {
    Rng rng(3);
    std::vector<LabeledSample> samples;
    for (int i = 0; i < 40; ++i) {
        samples.push_back({{rng.uniform(-9.0, 3.0), rng.uniform(100.0, 900.0)},
                           i % 2 == 0 ? Label::tv : Label::non_tv});
    }
    const Standardization st = standardize_fit(samples);
    for (std::size_t d = 0; d < 2; ++d) {
        double mean = 0.0, var = 0.0;
        for (const auto& s : samples) {
            mean += (s.features[d] - st.mean[d]) / st.stddev[d];
        }
        mean /= static_cast<double>(samples.size());
        for (const auto& s : samples) {
            const double z = (s.features[d] - st.mean[d]) / st.stddev[d];
            var += (z - mean) * (z - mean);
        }
        var /= static_cast<double>(samples.size());
        CHECK(std::abs(mean) < 1e-9);
        CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("symmetric two-point problem") {
    SmoConfig cfg;
    cfg.kernel = KernelKind::linear;
    cfg.c = 1000.0;
    const TrainResult result = train_detailed(two_point_set(), cfg);

    REQUIRE(result.model.support_vectors.size() == 2);
    CHECK(std::abs(result.model.alpha_y[0]) ==
          doctest::Approx(std::abs(result.model.alpha_y[1])).epsilon(1e-9));
    CHECK(decision_value(result.model, {0.0}) == doctest::Approx(0.0).epsilon(1e-9));
    // Free support vectors sit exactly on the margin.
    for (const auto& s : two_point_set()) {
        const double y = s.label == Label::tv ? 1.0 : -1.0;
        CHECK(y * decision_value(result.model, s.features) ==
              doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("rbf kernel separates the xor arrangement") {
    SmoConfig cfg;
    cfg.kernel = KernelKind::rbf;
    cfg.c = 10.0;
    const SvmModel model = train(xor_set(), cfg);
    for (const auto& s : xor_set()) {
        const double f = decision_value(model, s.features);
        CHECK((f >= 0.0) == (s.label == Label::tv));
    }
}

TEST_CASE("training requires both classes") {
    std::vector<LabeledSample> one_class = {{{1.0}, Label::tv}, {{2.0}, Label::tv}};
    CHECK_THROWS_AS(train(one_class), DegenerateError);
}

TEST_CASE("SMO matches the brute-force dual on small sets") {
    Rng rng(101);
    for (int trial = 0; trial < 5; ++trial) {
        const auto samples = random_separable_set(rng, 10);
        SmoConfig cfg;
        cfg.kernel = KernelKind::rbf;
        cfg.c = 10.0;
        const TrainResult result = train_detailed(samples, cfg);

        // The oracle sees the same standardized inputs the trainer used.
        std::vector<std::vector<double>> x;
        std::vector<double> y;
        const auto& st = result.model.standardization;
        for (const auto& s : samples) {
            x.push_back({(s.features[0] - st.mean[0]) / st.stddev[0],
                         (s.features[1] - st.mean[1]) / st.stddev[1]});
            y.push_back(s.label == Label::tv ? 1.0 : -1.0);
        }
        const auto oracle = oracles::brute_force_svm_dual(
            x, y, KernelKind::rbf, result.model.gamma, cfg.c);
        REQUIRE(oracle.solved);
        CHECK(result.objective ==
              doctest::Approx(oracle.objective).epsilon(1e-3));
        CHECK(worst_kkt_violation(result, samples) <= cfg.tol + 1e-9);
        CHECK(std::abs(sum_alpha_y(result.model)) < 1e-6);
    }
}

TEST_CASE("training is label-symmetric") {
    Rng rng(7);
    const auto samples = random_separable_set(rng, 12);
    std::vector<LabeledSample> flipped = samples;
    for (auto& s : flipped) {
        s.label = (s.label == Label::tv) ? Label::non_tv : Label::tv;
    }
    const SvmModel a = train(samples);
    const SvmModel b = train(flipped);
    for (int i = 0; i < 10; ++i) {
        const std::vector<double> p = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        CHECK(decision_value(a, p) == doctest::Approx(-decision_value(b, p)).epsilon(1e-6));
    }
}

TEST_CASE("predictions are invariant to rescaling a raw input dimension") {
    Rng rng(19);
    const auto samples = random_separable_set(rng, 14);

    // A power-of-two gain standardizes away bit-exactly, so the retrained
    // model is numerically identical.
    {
        std::vector<LabeledSample> rescaled = samples;
        const double g = 256.0;
        for (auto& s : rescaled) s.features[0] *= g;
        const SvmModel a = train(samples);
        const SvmModel b = train(rescaled);
        for (int i = 0; i < 12; ++i) {
            const std::vector<double> p = {rng.uniform(-2.0, 2.0),
                                           rng.uniform(-2.0, 2.0)};
            const std::vector<double> q = {p[0] * g, p[1]};
            CHECK(decision_value(a, p) ==
                  doctest::Approx(decision_value(b, q)).epsilon(1e-12));
        }
    }

    // An arbitrary gain perturbs the arithmetic at rounding level; the
    // verdict away from the boundary still cannot change.
    {
        std::vector<LabeledSample> rescaled = samples;
        const double g = 250.0;
        for (auto& s : rescaled) s.features[0] *= g;
        const SvmModel a = train(samples);
        const SvmModel b = train(rescaled);
        for (int i = 0; i < 24; ++i) {
            const std::vector<double> p = {rng.uniform(-2.0, 2.0),
                                           rng.uniform(-2.0, 2.0)};
            const double fa = decision_value(a, p);
            const double fb = decision_value(b, {p[0] * g, p[1]});
            if (std::abs(fa) > 0.01 && std::abs(fb) > 0.01) {
                CHECK((fa > 0.0) == (fb > 0.0));
            }
        }
    }
}

TEST_CASE("decision_value matches direct kernel summation") {
    SvmModel model;
    model.kernel = KernelKind::rbf;
    model.gamma = 0.31;
    model.bias = -0.42;
    model.standardization.mean = {0.5, -2.0, 3.0};
    model.standardization.stddev = {2.0, 1.0, 0.25};
    Rng rng(23);
    for (int i = 0; i < 6; ++i) {
        model.support_vectors.push_back(
            {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
        model.alpha_y.push_back(rng.uniform(-3.0, 3.0));
    }

    for (int t = 0; t < 10; ++t) {
        const std::vector<double> x = {rng.uniform(-5, 5), rng.uniform(-5, 5),
                                       rng.uniform(-5, 5)};
        std::vector<double> z(3);
        for (int d = 0; d < 3; ++d) {
            z[d] = (x[d] - model.standardization.mean[d]) /
                   model.standardization.stddev[d];
        }
        double expected = model.bias;
        for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
            double d2 = 0.0;
            for (int d = 0; d < 3; ++d) {
                const double diff = model.support_vectors[i][d] - z[d];
                d2 += diff * diff;
            }
            expected += model.alpha_y[i] * std::exp(-model.gamma * d2);
        }
        CHECK(decision_value(model, x) == doctest::Approx(expected).epsilon(1e-9));
    }

    CHECK_THROWS_AS(decision_value(model, {1.0}), ShapeError);
}

TEST_CASE("clip verdicts by majority with ties toward tv") {
    SmoConfig cfg;
    cfg.kernel = KernelKind::linear;
    cfg.c = 1000.0;
    const SvmModel model = train(two_point_set(), cfg);

    std::vector<std::vector<double>> all_positive(8, std::vector<double>{1.0});
    auto v1 = classify_clip(model, all_positive);
    CHECK(v1.label == Label::tv);
    CHECK(v1.score == doctest::Approx(1.0));

    std::vector<std::vector<double>> half;
    for (int i = 0; i < 15; ++i) half.push_back({1.0});
    for (int i = 0; i < 15; ++i) half.push_back({-1.0});
    auto v2 = classify_clip(model, half);
    CHECK(v2.label == Label::tv);  // tie resolves to tv
    CHECK(v2.score == doctest::Approx(0.5));

    std::vector<std::vector<double>> mostly_negative;
    for (int i = 0; i < 4; ++i) mostly_negative.push_back({1.0});
    for (int i = 0; i < 10; ++i) mostly_negative.push_back({-1.0});
    auto v3 = classify_clip(model, mostly_negative);
    CHECK(v3.label == Label::non_tv);

    CHECK_THROWS_AS(classify_clip(model, {}), InsufficientDataError);
}

TEST_CASE("model file round-trips decision values") {
    SmoConfig cfg;
    cfg.kernel = KernelKind::rbf;
    cfg.c = 10.0;
    const SvmModel model = train(xor_set(), cfg);
    const auto path = temp_path("xor.svm");
    save_model(model, path);
    const SvmModel back = load_model(path);

    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        const std::vector<double> p = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(decision_value(model, p) ==
              doctest::Approx(decision_value(back, p)).epsilon(1e-12));
    }
}

TEST_CASE("model file errors") {
    const auto path = temp_path("good.svm");
    SmoConfig cfg;
    cfg.kernel = KernelKind::linear;
    save_model(train(two_point_set(), cfg), path);

    // Corrupt the magic.
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.write("XXXX", 4);
    }
    CHECK_THROWS_AS(load_model(path), FormatError);

    // Truncate a valid file.
    save_model(train(two_point_set(), cfg), path);
    {
        std::ifstream in(path, std::ios::binary);
        std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
        bytes.resize(bytes.size() / 2);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    CHECK_THROWS_AS(load_model(path), FormatError);

    // Unknown version.
    save_model(train(two_point_set(), cfg), path);
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(4);
        const char v[4] = {9, 0, 0, 0};
        f.write(v, 4);
    }
    CHECK_THROWS_AS(load_model(path), FormatError);

    CHECK_THROWS_AS(load_model(temp_path("missing.svm")), IoError);
}
