// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#include "tvsense/svm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

#include "tvsense/errors.hpp"

namespace tvsense {

namespace {

double kernel_eval(KernelKind kind, double gamma, const std::vector<double>& a,
                   const std::vector<double>& b) {
    if (kind == KernelKind::linear) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
        return acc;
    }
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        d2 += d * d;
    }
    return std::exp(-gamma * d2);
}

std::vector<double> apply_standardization(const Standardization& st,
                                          const std::vector<double>& x) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = (x[i] - st.mean[i]) / st.stddev[i];
    }
    return out;
}

// Dense kernel matrix above this row count costs too much memory; fall back
// to recomputing the two active rows per iteration.
constexpr std::size_t kMaxCachedRows = 5500;

}  // namespace

Standardization standardize_fit(const std::vector<LabeledSample>& samples) {
    if (samples.size() < 2) {
        throw InsufficientDataError("standardization needs at least 2 samples");
    }
    const std::size_t dim = samples[0].features.size();
    for (const auto& s : samples) {
        if (s.features.size() != dim) {
            throw ShapeError("inconsistent feature dimensions");
        }
        for (double v : s.features) {
            if (!std::isfinite(v)) throw ConfigError("non-finite feature value");
        }
    }

    Standardization st;
    st.mean.assign(dim, 0.0);
    st.stddev.assign(dim, 0.0);
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    for (const auto& s : samples) {
        for (std::size_t d = 0; d < dim; ++d) st.mean[d] += s.features[d];
    }
    for (std::size_t d = 0; d < dim; ++d) st.mean[d] *= inv_n;
    for (const auto& s : samples) {
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = s.features[d] - st.mean[d];
            st.stddev[d] += diff * diff;
        }
    }
    for (std::size_t d = 0; d < dim; ++d) {
        st.stddev[d] = std::sqrt(st.stddev[d] * inv_n);
        if (st.stddev[d] <= 0.0) st.stddev[d] = 1.0;
    }
    return st;
}

TrainResult train_detailed(const std::vector<LabeledSample>& samples,
                           const SmoConfig& cfg) {
    const std::size_t n = samples.size();
    if (cfg.c <= 0.0) throw ConfigError("c must be positive");
    if (cfg.tol <= 0.0) throw ConfigError("tol must be positive");

    std::size_t pos = 0;
    for (const auto& s : samples) pos += (s.label == Label::tv);
    if (pos == 0 || pos == n) {
        throw DegenerateError("training set contains a single class");
    }

    Standardization st = standardize_fit(samples);
    const std::size_t dim = samples[0].features.size();
    const double gamma = (cfg.gamma > 0.0) ? cfg.gamma : 1.0 / static_cast<double>(dim);

    // Canonical sign: solve with the first sample positive, flipping back at
    // the end. Swapping every label then optimizes the identical internal
    // problem, so decision values negate exactly.
    const double flip = (samples[0].label == Label::tv) ? 1.0 : -1.0;

    std::vector<std::vector<double>> x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = apply_standardization(st, samples[i].features);
        y[i] = flip * ((samples[i].label == Label::tv) ? 1.0 : -1.0);
    }

    const bool cache = n <= kMaxCachedRows;
    std::vector<double> kmat;
    if (cache) {
        kmat.resize(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            kmat[i * n + i] = kernel_eval(cfg.kernel, gamma, x[i], x[i]);
            for (std::size_t j = i + 1; j < n; ++j) {
                const double kij = kernel_eval(cfg.kernel, gamma, x[i], x[j]);
                kmat[i * n + j] = kij;
                kmat[j * n + i] = kij;
            }
        }
    }
    auto krow = [&](std::size_t i, std::vector<double>& scratch) -> const double* {
        if (cache) return kmat.data() + i * n;
        scratch.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            scratch[j] = kernel_eval(cfg.kernel, gamma, x[i], x[j]);
        }
        return scratch.data();
    };

    const double c = cfg.c;
    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);  // d/d_alpha of the dual at alpha = 0

    double m_up = 0.0, m_low = 0.0;
    std::size_t iter = 0;
    bool converged = false;
    std::vector<double> row_i_buf, row_j_buf;

    for (; iter < cfg.max_iterations; ++iter) {
        // Max-violating pair over the feasible ascent/descent index sets.
        m_up = -std::numeric_limits<double>::infinity();
        m_low = std::numeric_limits<double>::infinity();
        std::size_t i_sel = n, j_sel = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * grad[t];
            const bool in_up = (y[t] > 0.0) ? (alpha[t] < c) : (alpha[t] > 0.0);
            const bool in_low = (y[t] > 0.0) ? (alpha[t] > 0.0) : (alpha[t] < c);
            if (in_up && v > m_up) {
                m_up = v;
                i_sel = t;
            }
            if (in_low && v < m_low) {
                m_low = v;
                j_sel = t;
            }
        }
        if (i_sel == n || j_sel == n || m_up - m_low <= cfg.tol) {
            converged = true;
            break;
        }

        const std::size_t i = i_sel, j = j_sel;
        const double* ki = krow(i, row_i_buf);
        const double* kj = krow(j, row_j_buf);

        double eta = ki[i] + kj[j] - 2.0 * ki[j];
        if (eta < 1e-12) eta = 1e-12;

        double lo, hi;
        if (y[i] != y[j]) {
            lo = std::max(0.0, alpha[j] - alpha[i]);
            hi = std::min(c, c + alpha[j] - alpha[i]);
        } else {
            lo = std::max(0.0, alpha[i] + alpha[j] - c);
            hi = std::min(c, alpha[i] + alpha[j]);
        }

        // Errors without bias: E_t = f_raw(x_t) - y_t = y_t * grad_t.
        const double delta = y[j] * (y[i] * grad[i] - y[j] * grad[j]) / eta;
        const double aj_old = alpha[j];
        const double ai_old = alpha[i];
        double aj = std::clamp(aj_old + delta, lo, hi);
        // Snap to the box so at-bound alphas compare exactly in the
        // selection sets.
        if (aj - lo < 1e-12 * c) aj = lo;
        if (hi - aj < 1e-12 * c) aj = hi;
        double ai = ai_old + y[i] * y[j] * (aj_old - aj);
        ai = std::clamp(ai, 0.0, c);
        if (ai < 1e-12 * c) ai = 0.0;
        if (c - ai < 1e-12 * c) ai = c;

        if (std::abs(aj - aj_old) < 1e-14) {
            // Numerically pinned pair; no progress possible.
            break;
        }
        alpha[i] = ai;
        alpha[j] = aj;

        const double di = ai - ai_old;
        const double dj = aj - aj_old;
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += y[t] * (y[i] * ki[t] * di + y[j] * kj[t] * dj);
        }
    }

    if (!converged) {
        // Recompute the gap after the last update so the report is current.
        m_up = -std::numeric_limits<double>::infinity();
        m_low = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * grad[t];
            const bool in_up = (y[t] > 0.0) ? (alpha[t] < c) : (alpha[t] > 0.0);
            const bool in_low = (y[t] > 0.0) ? (alpha[t] > 0.0) : (alpha[t] < c);
            if (in_up) m_up = std::max(m_up, v);
            if (in_low) m_low = std::min(m_low, v);
        }
        if (m_up - m_low <= cfg.tol) converged = true;
    }
    const double violation = (m_up > m_low) ? (m_up - m_low) : 0.0;
    if (!converged) {
        throw ConvergenceError(
            "SMO did not converge in " + std::to_string(cfg.max_iterations) +
                " iterations; worst KKT violation " + std::to_string(violation),
            violation);
    }

    TrainResult result;
    result.iterations = iter;
    result.kkt_violation = violation;

    // W(alpha) = sum alpha - 1/2 alpha'Q alpha, and Q alpha = grad + 1.
    double objective = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        objective += alpha[t] - 0.5 * alpha[t] * (grad[t] + 1.0);
    }
    result.objective = objective;

    SvmModel& model = result.model;
    model.kernel = cfg.kernel;
    model.gamma = (cfg.kernel == KernelKind::rbf) ? gamma : 0.0;
    model.c = c;
    model.standardization = std::move(st);
    const double b_lo = std::isfinite(m_up) ? m_up : m_low;
    const double b_hi = std::isfinite(m_low) ? m_low : m_up;
    const double bias =
        (std::isfinite(b_lo) && std::isfinite(b_hi)) ? (b_lo + b_hi) / 2.0 : 0.0;
    model.bias = flip * bias;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0) {
            model.support_vectors.push_back(x[t]);
            model.alpha_y.push_back(flip * alpha[t] * y[t]);
        }
    }
    result.alpha = std::move(alpha);
    return result;
}

SvmModel train(const std::vector<LabeledSample>& samples, const SmoConfig& cfg) {
    return train_detailed(samples, cfg).model;
}

double decision_value(const SvmModel& model, const std::vector<double>& features) {
    if (features.size() != model.dimension()) {
        throw ShapeError("feature dimension " + std::to_string(features.size()) +
                         " does not match model dimension " +
                         std::to_string(model.dimension()));
    }
    const std::vector<double> z = apply_standardization(model.standardization, features);
    double acc = model.bias;
    for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
        acc += model.alpha_y[i] *
               kernel_eval(model.kernel, model.gamma, model.support_vectors[i], z);
    }
    return acc;
}

ClipVerdict classify_clip(const SvmModel& model,
                          const std::vector<std::vector<double>>& windows) {
    if (windows.empty()) throw InsufficientDataError("no feature windows to classify");
    std::size_t votes = 0;
    for (const auto& w : windows) {
        if (decision_value(model, w) >= 0.0) ++votes;
    }
    ClipVerdict v;
    v.score = static_cast<double>(votes) / static_cast<double>(windows.size());
    v.label = (2 * votes >= windows.size()) ? Label::tv : Label::non_tv;
    return v;
}

namespace {

constexpr char kMagic[4] = {'T', 'V', 'S', 'M'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff),
                 static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

void put_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(b, 8);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw FormatError("truncated model file");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

double get_f64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw FormatError("truncated model file");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void save_model(const SvmModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    out.write(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, model.kernel == KernelKind::linear ? 0 : 1);
    put_f64(out, model.gamma);
    put_f64(out, model.c);
    put_f64(out, model.bias);
    put_u32(out, static_cast<std::uint32_t>(model.dimension()));
    put_u32(out, static_cast<std::uint32_t>(model.support_vectors.size()));
    for (double v : model.standardization.mean) put_f64(out, v);
    for (double v : model.standardization.stddev) put_f64(out, v);
    for (double v : model.alpha_y) put_f64(out, v);
    for (const auto& sv : model.support_vectors) {
        for (double v : sv) put_f64(out, v);
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

SvmModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw FormatError("'" + path + "': not a model file (bad magic)");
    }
    const std::uint32_t version = get_u32(in);
    if (version != kVersion) {
        throw FormatError("'" + path + "': unsupported model version " +
                          std::to_string(version));
    }
    SvmModel model;
    const std::uint32_t kernel_id = get_u32(in);
    if (kernel_id > 1) throw FormatError("'" + path + "': unknown kernel id");
    model.kernel = (kernel_id == 0) ? KernelKind::linear : KernelKind::rbf;
    model.gamma = get_f64(in);
    model.c = get_f64(in);
    model.bias = get_f64(in);
    const std::uint32_t dim = get_u32(in);
    const std::uint32_t n_sv = get_u32(in);

    model.standardization.mean.resize(dim);
    model.standardization.stddev.resize(dim);
    for (auto& v : model.standardization.mean) v = get_f64(in);
    for (auto& v : model.standardization.stddev) v = get_f64(in);
    model.alpha_y.resize(n_sv);
    for (auto& v : model.alpha_y) v = get_f64(in);
    model.support_vectors.assign(n_sv, std::vector<double>(dim));
    for (auto& sv : model.support_vectors) {
        for (auto& v : sv) v = get_f64(in);
    }
    return model;
}

}  // namespace tvsense
