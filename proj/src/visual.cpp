// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#include "tvsense/visual.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_map>

#include "tvsense/errors.hpp"

namespace tvsense {

namespace {

void require_min_size(const GrayImage& img, const char* what) {
    if (img.width < 8 || img.height < 8 ||
        img.pixels.size() != static_cast<std::size_t>(img.width) * img.height) {
        throw ShapeError(std::string(what) + ": image must be at least 8x8 with " +
                         "matching pixel buffer");
    }
}

}  // namespace

GrayImage GrayImage::filled(int width, int height, std::uint8_t value) {
    GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(static_cast<std::size_t>(width) * height, value);
    return img;
}

GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");

    auto next_token = [&in, &path]() -> std::string {
        std::string tok;
        int c;
        while ((c = in.get()) != EOF) {
            if (c == '#') {  // comment to end of line
                while ((c = in.get()) != EOF && c != '\n') {}
                continue;
            }
            if (std::isspace(c)) {
                if (!tok.empty()) return tok;
                continue;
            }
            tok.push_back(static_cast<char>(c));
        }
        if (tok.empty()) throw FormatError("'" + path + "': truncated PGM header");
        return tok;
    };

    if (next_token() != "P5") throw FormatError("'" + path + "': not a binary PGM");
    GrayImage img;
    try {
        img.width = std::stoi(next_token());
        img.height = std::stoi(next_token());
        const int maxval = std::stoi(next_token());
        if (maxval <= 0 || maxval > 255) {
            throw UnsupportedError("'" + path + "': PGM maxval " +
                                   std::to_string(maxval) + " (want <= 255)");
        }
    } catch (const std::invalid_argument&) {
        throw FormatError("'" + path + "': malformed PGM header");
    } catch (const std::out_of_range&) {
        throw FormatError("'" + path + "': malformed PGM header");
    }
    if (img.width <= 0 || img.height <= 0) {
        throw FormatError("'" + path + "': non-positive PGM dimensions");
    }
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    img.pixels.resize(n);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) {
        throw FormatError("'" + path + "': truncated PGM data");
    }
    return img;
}

void write_pgm(const GrayImage& img, const std::string& path) {
    if (img.width <= 0 || img.height <= 0 ||
        img.pixels.size() != static_cast<std::size_t>(img.width) * img.height) {
        throw ShapeError("image dimensions do not match pixel buffer");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<GrayImage> read_shot_dir(const std::string& dir) {
    std::vector<GrayImage> frames;
    char name[32];
    for (int i = 0;; ++i) {
        std::snprintf(name, sizeof(name), "frame_%04d.pgm", i);
        const std::string path = dir + "/" + name;
        std::ifstream probe(path, std::ios::binary);
        if (!probe) break;
        probe.close();
        frames.push_back(read_pgm(path));
    }
    if (frames.empty()) throw IoError("no frame_0000.pgm under '" + dir + "'");
    return frames;
}

void write_shot_dir(const std::vector<GrayImage>& frames, const std::string& dir) {
    char name[32];
    for (std::size_t i = 0; i < frames.size(); ++i) {
        std::snprintf(name, sizeof(name), "frame_%04zu.pgm", i);
        write_pgm(frames[i], dir + "/" + name);
    }
}

// ---------------------------------------------------------------------------
// Background model
// ---------------------------------------------------------------------------

BackgroundModel::BackgroundModel(int width, int height, const BackgroundConfig& cfg)
    : width_(width), height_(height), cfg_(cfg) {
    if (width < 8 || height < 8) throw ShapeError("model needs at least 8x8 frames");
    if (cfg.components < 1 || cfg.learning_rate <= 0.0 || cfg.learning_rate >= 1.0 ||
        cfg.background_fraction <= 0.0 || cfg.background_fraction > 1.0) {
        throw ConfigError("invalid background model configuration");
    }
    const std::size_t slots =
        static_cast<std::size_t>(width) * height * cfg.components;
    mean_.assign(slots, 0.0);
    var_.assign(slots, cfg.initial_variance);
    weight_.assign(slots, 0.0);
}

ForegroundMask BackgroundModel::update(const GrayImage& frame) {
    require_min_size(frame, "background update");
    if (frame.width != width_ || frame.height != height_) {
        throw ShapeError("frame size does not match background model");
    }

    const int k_comp = cfg_.components;
    const double lr = cfg_.learning_rate;

    ForegroundMask mask;
    mask.width = width_;
    mask.height = height_;
    mask.bits.assign(static_cast<std::size_t>(width_) * height_, 0);

    const std::size_t n_pixels = static_cast<std::size_t>(width_) * height_;
    for (std::size_t p = 0; p < n_pixels; ++p) {
        const double v = frame.pixels[p];
        double* mean = mean_.data() + p * k_comp;
        double* var = var_.data() + p * k_comp;
        double* weight = weight_.data() + p * k_comp;

        // Components are kept sorted by weight, so the first match is the
        // strongest one.
        int matched = -1;
        for (int k = 0; k < k_comp; ++k) {
            if (weight[k] <= 0.0) continue;
            const double d = v - mean[k];
            if (d * d <= cfg_.match_sigma * cfg_.match_sigma * var[k]) {
                matched = k;
                break;
            }
        }

        bool foreground;
        if (matched < 0) {
            // Replace the weakest component.
            int weakest = 0;
            for (int k = 1; k < k_comp; ++k) {
                if (weight[k] < weight[weakest]) weakest = k;
            }
            mean[weakest] = v;
            var[weakest] = cfg_.initial_variance;
            weight[weakest] = cfg_.initial_weight;
            foreground = true;
        } else {
            // Background iff the matched component sits inside the smallest
            // top-weight prefix covering background_fraction.
            double total = 0.0;
            for (int k = 0; k < k_comp; ++k) total += weight[k];
            double cum = 0.0;
            int cover = k_comp - 1;
            for (int k = 0; k < k_comp; ++k) {
                cum += weight[k];
                if (cum >= cfg_.background_fraction * total) {
                    cover = k;
                    break;
                }
            }
            foreground = matched > cover;

            for (int k = 0; k < k_comp; ++k) {
                weight[k] += lr * ((k == matched ? 1.0 : 0.0) - weight[k]);
            }
            const double d = v - mean[matched];
            mean[matched] += lr * d;
            var[matched] += lr * (d * d - var[matched]);
            if (var[matched] < cfg_.variance_floor) var[matched] = cfg_.variance_floor;
        }

        // Normalize and restore the weight ordering (insertion sort; the
        // order only drifts by one slot per update).
        double total = 0.0;
        for (int k = 0; k < k_comp; ++k) total += weight[k];
        if (total > 0.0) {
            for (int k = 0; k < k_comp; ++k) weight[k] /= total;
        }
        for (int k = 1; k < k_comp; ++k) {
            int j = k;
            while (j > 0 && weight[j] > weight[j - 1]) {
                std::swap(weight[j], weight[j - 1]);
                std::swap(mean[j], mean[j - 1]);
                std::swap(var[j], var[j - 1]);
                --j;
            }
        }

        mask.bits[p] = foreground ? 1 : 0;
    }
    return mask;
}

// ---------------------------------------------------------------------------
// Edges
// ---------------------------------------------------------------------------

GrayImage binarize_edges(const GrayImage& frame) {
    require_min_size(frame, "binarize");
    const int w = frame.width, h = frame.height;

    std::vector<double> mag(static_cast<std::size_t>(w) * h, 0.0);
    double sum = 0.0, sum2 = 0.0;
    std::size_t count = 0;
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            const int p00 = frame.at(x - 1, y - 1), p10 = frame.at(x, y - 1),
                      p20 = frame.at(x + 1, y - 1);
            const int p01 = frame.at(x - 1, y), p21 = frame.at(x + 1, y);
            const int p02 = frame.at(x - 1, y + 1), p12 = frame.at(x, y + 1),
                      p22 = frame.at(x + 1, y + 1);
            const double gx = (p20 + 2 * p21 + p22) - (p00 + 2 * p01 + p02);
            const double gy = (p02 + 2 * p12 + p22) - (p00 + 2 * p10 + p20);
            const double m = std::sqrt(gx * gx + gy * gy);
            mag[static_cast<std::size_t>(y) * w + x] = m;
            sum += m;
            sum2 += m * m;
            ++count;
        }
    }
    const double mean = sum / static_cast<double>(count);
    const double variance =
        std::max(0.0, sum2 / static_cast<double>(count) - mean * mean);
    const double threshold = mean + std::sqrt(variance);

    GrayImage out = GrayImage::filled(w, h, 0);
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            if (mag[static_cast<std::size_t>(y) * w + x] > threshold) {
                out.set(x, y, 255);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Contours
// ---------------------------------------------------------------------------

namespace {

// Clockwise Moore neighborhood starting east (image y grows downward).
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

// Outer-border trace by Moore neighbor walking. The walk state is
// (pixel, backtrack direction); the closed border is the cycle of that
// state sequence, which may skip an artificial entry state on thin shapes.
Contour trace_outer_border(const GrayImage& bin, Point start) {
    const int w = bin.width, h = bin.height;
    auto fg = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < w && y < h &&
               bin.pixels[static_cast<std::size_t>(y) * w + x] != 0;
    };

    // start is the region's first raster pixel, so its west neighbor is
    // outside the region.
    Point cur = start;
    int backtrack = 4;  // direction from cur toward the known background

    std::vector<Point> points;
    std::unordered_map<std::uint64_t, std::size_t> seen;
    const std::size_t cap = static_cast<std::size_t>(w) * h * 8 + 16;

    for (std::size_t step = 0; step < cap; ++step) {
        const std::uint64_t key =
            ((static_cast<std::uint64_t>(cur.y) * w + cur.x) << 3) |
            static_cast<std::uint64_t>(backtrack);
        auto [it, inserted] = seen.emplace(key, points.size());
        if (!inserted) {
            return Contour(points.begin() + static_cast<std::ptrdiff_t>(it->second),
                           points.end());
        }
        points.push_back(cur);

        int found = -1;
        for (int s = 1; s <= 8; ++s) {
            const int k = (backtrack + s) & 7;
            if (fg(cur.x + kDx[k], cur.y + kDy[k])) {
                found = k;
                break;
            }
        }
        if (found < 0) return {cur};  // isolated pixel

        const int prev = (found + 7) & 7;  // last background cell scanned
        const Point next{cur.x + kDx[found], cur.y + kDy[found]};
        // Direction from next back to that background cell.
        const int bx = cur.x + kDx[prev] - next.x;
        const int by = cur.y + kDy[prev] - next.y;
        int nb = 0;
        for (int k = 0; k < 8; ++k) {
            if (kDx[k] == bx && kDy[k] == by) {
                nb = k;
                break;
            }
        }
        cur = next;
        backtrack = nb;
    }
    return points;  // unreachable for well-formed inputs
}

}  // namespace

std::vector<Contour> find_contours(const GrayImage& binary) {
    const int w = binary.width, h = binary.height;
    if (w <= 0 || h <= 0 ||
        binary.pixels.size() != static_cast<std::size_t>(w) * h) {
        throw ShapeError("contours: image dimensions do not match pixel buffer");
    }

    std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
    std::vector<Contour> contours;
    std::vector<Point> stack;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * w + x;
            if (binary.pixels[idx] == 0 || visited[idx]) continue;

            contours.push_back(trace_outer_border(binary, {x, y}));

            // Flood the whole 8-connected region so later raster pixels of
            // the same region do not start a second trace.
            stack.clear();
            stack.push_back({x, y});
            visited[idx] = 1;
            while (!stack.empty()) {
                const Point p = stack.back();
                stack.pop_back();
                for (int k = 0; k < 8; ++k) {
                    const int nx = p.x + kDx[k], ny = p.y + kDy[k];
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
                    if (binary.pixels[ni] == 0 || visited[ni]) continue;
                    visited[ni] = 1;
                    stack.push_back({nx, ny});
                }
            }
        }
    }
    return contours;
}

// ---------------------------------------------------------------------------
// Polygon geometry
// ---------------------------------------------------------------------------

namespace {

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    const double abx = b.x - a.x, aby = b.y - a.y;
    const double apx = p.x - a.x, apy = p.y - a.y;
    const double len2 = abx * abx + aby * aby;
    if (len2 <= 0.0) return std::hypot(apx, apy);
    const double t = std::clamp((apx * abx + apy * aby) / len2, 0.0, 1.0);
    return std::hypot(apx - t * abx, apy - t * aby);
}

// Open polyline simplification; keeps both endpoints.
void rdp_open(std::span<const Point> pts, double epsilon, std::vector<Point>& out) {
    if (pts.empty()) return;
    out.push_back(pts.front());
    if (pts.size() == 1) return;

    // Process ranges depth-first, always splitting the left half first so
    // retained points come out in order.
    struct Frame {
        std::size_t lo, hi;
    };
    std::vector<Frame> work;
    work.push_back({0, pts.size() - 1});
    while (!work.empty()) {
        const Frame f = work.back();
        work.pop_back();
        if (f.hi <= f.lo + 1) {
            out.push_back(pts[f.hi]);
            continue;
        }
        double max_d = -1.0;
        std::size_t split = f.lo;
        for (std::size_t i = f.lo + 1; i < f.hi; ++i) {
            const double d = point_segment_distance(pts[i], pts[f.lo], pts[f.hi]);
            if (d > max_d) {
                max_d = d;
                split = i;
            }
        }
        if (max_d > epsilon) {
            work.push_back({split, f.hi});  // popped second
            work.push_back({f.lo, split});  // popped first
        } else {
            out.push_back(pts[f.hi]);
        }
    }
}

}  // namespace

std::vector<Point> simplify_rdp(const Contour& contour, double epsilon) {
    if (epsilon <= 0.0) throw ConfigError("epsilon must be positive");
    if (contour.size() < 3) {
        throw DegenerateError("contour with fewer than 3 points");
    }

    // Closed curve: anchor at point 0 and the point farthest from it, then
    // simplify the two open halves.
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t i = 1; i < contour.size(); ++i) {
        const double dx = contour[i].x - contour[0].x;
        const double dy = contour[i].y - contour[0].y;
        const double d = dx * dx + dy * dy;
        if (d > far_d) {
            far_d = d;
            far = i;
        }
    }
    if (far == 0) return {contour[0]};  // all points identical

    std::vector<Point> first_half(contour.begin(),
                                  contour.begin() + static_cast<std::ptrdiff_t>(far) + 1);
    std::vector<Point> second_half(contour.begin() + static_cast<std::ptrdiff_t>(far),
                                   contour.end());
    second_half.push_back(contour[0]);  // wrap around

    std::vector<Point> a, b;
    rdp_open(first_half, epsilon, a);
    rdp_open(second_half, epsilon, b);

    std::vector<Point> out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    // b starts at the far anchor (already emitted) and ends at point 0
    // (the closed polygon's implicit wrap).
    out.insert(out.end(), b.begin() + 1, b.end() - 1);
    return out;
}

double shoelace_area(std::span<const Point> polygon) {
    if (polygon.size() < 3) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Point& p = polygon[i];
        const Point& q = polygon[(i + 1) % polygon.size()];
        acc += static_cast<double>(p.x) * q.y - static_cast<double>(q.x) * p.y;
    }
    return std::abs(acc) / 2.0;
}

bool is_convex(std::span<const Point> polygon) {
    const std::size_t n = polygon.size();
    if (n < 3) return false;
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % n];
        const Point& c = polygon[(i + 2) % n];
        const long long cross = static_cast<long long>(b.x - a.x) * (c.y - b.y) -
                                static_cast<long long>(b.y - a.y) * (c.x - b.x);
        if (cross == 0) continue;  // collinear corner allowed
        const int s = cross > 0 ? 1 : -1;
        if (sign == 0) {
            sign = s;
        } else if (s != sign) {
            return false;
        }
    }
    return true;
}

bool point_in_convex_polygon(const PointF& p, std::span<const Point> polygon) {
    const std::size_t n = polygon.size();
    if (n < 3) return false;
    // Orientation from the signed area.
    double signed2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % n];
        signed2 += static_cast<double>(a.x) * b.y - static_cast<double>(b.x) * a.y;
    }
    const double orient = signed2 >= 0.0 ? 1.0 : -1.0;
    constexpr double kEps = 1e-9;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % n];
        const double cross = (static_cast<double>(b.x) - a.x) * (p.y - a.y) -
                             (static_cast<double>(b.y) - a.y) * (p.x - a.x);
        if (orient * cross < -kEps) return false;  // boundary counts as inside
    }
    return true;
}

std::vector<RectCandidate> rectangle_candidates(const std::vector<Contour>& contours,
                                                double image_area,
                                                double epsilon_frac) {
    if (image_area <= 0.0) throw ConfigError("image area must be positive");
    if (epsilon_frac <= 0.0) throw ConfigError("epsilon fraction must be positive");

    std::vector<RectCandidate> out;
    for (const Contour& contour : contours) {
        if (contour.size() < 4) continue;

        double perimeter = 0.0;
        for (std::size_t i = 0; i < contour.size(); ++i) {
            const Point& p = contour[i];
            const Point& q = contour[(i + 1) % contour.size()];
            perimeter += std::hypot(static_cast<double>(q.x - p.x),
                                    static_cast<double>(q.y - p.y));
        }
        if (perimeter <= 0.0) continue;

        const std::vector<Point> poly = simplify_rdp(contour, epsilon_frac * perimeter);
        if (poly.size() != 4) continue;
        if (!is_convex(poly)) continue;

        const double area = shoelace_area(poly);
        if (area < 0.05 * image_area || area > 0.70 * image_area) continue;

        RectCandidate cand;
        std::copy_n(poly.begin(), 4, cand.corners.begin());
        cand.area = area;
        cand.centroid.x = (poly[0].x + poly[1].x + poly[2].x + poly[3].x) / 4.0;
        cand.centroid.y = (poly[0].y + poly[1].y + poly[2].y + poly[3].y) / 4.0;
        out.push_back(cand);
    }
    return out;
}

std::vector<PointF> mask_component_centroids(const ForegroundMask& mask,
                                             double min_frac) {
    const int w = mask.width, h = mask.height;
    const double min_pixels = min_frac * static_cast<double>(w) * h;

    std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
    std::vector<PointF> centroids;
    std::vector<Point> stack;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * w + x;
            if (mask.bits[idx] == 0 || visited[idx]) continue;

            stack.clear();
            stack.push_back({x, y});
            visited[idx] = 1;
            double sx = 0.0, sy = 0.0;
            std::size_t count = 0;
            while (!stack.empty()) {
                const Point p = stack.back();
                stack.pop_back();
                sx += p.x;
                sy += p.y;
                ++count;
                for (int k = 0; k < 8; ++k) {
                    const int nx = p.x + kDx[k], ny = p.y + kDy[k];
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
                    if (mask.bits[ni] == 0 || visited[ni]) continue;
                    visited[ni] = 1;
                    stack.push_back({nx, ny});
                }
            }
            if (static_cast<double>(count) >= min_pixels) {
                centroids.push_back({sx / static_cast<double>(count),
                                     sy / static_cast<double>(count)});
            }
        }
    }
    return centroids;
}

Detection detect_tv(const std::vector<GrayImage>& frames, const DetectorConfig& cfg) {
    if (frames.size() < 2) {
        throw InsufficientDataError("need at least 2 frames");
    }
    require_min_size(frames[0], "detect");
    for (const GrayImage& f : frames) {
        if (f.width != frames[0].width || f.height != frames[0].height) {
            throw ShapeError("mixed frame dimensions in sequence");
        }
    }

    const double image_area =
        static_cast<double>(frames[0].width) * frames[0].height;
    BackgroundModel model(frames[0].width, frames[0].height, cfg.background);

    std::vector<PointF> centers;
    std::vector<RectCandidate> candidates;

    for (std::size_t i = 0; i < frames.size(); ++i) {
        const ForegroundMask mask = model.update(frames[i]);
        if (i > 0) {  // first frame only seeds the model
            const auto cs = mask_component_centroids(mask, cfg.min_component_frac);
            centers.insert(centers.end(), cs.begin(), cs.end());
        }
        const GrayImage edges = binarize_edges(frames[i]);
        const auto contours = find_contours(edges);
        const auto cands = rectangle_candidates(contours, image_area, cfg.epsilon_frac);
        candidates.insert(candidates.end(), cands.begin(), cands.end());
    }

    Detection det;
    det.centroid_count = centers.size();
    det.candidate_count = candidates.size();
    if (centers.empty()) return det;

    if (cfg.mode == IntersectionMode::bbox) {
        double lo_x = centers[0].x, hi_x = centers[0].x;
        double lo_y = centers[0].y, hi_y = centers[0].y;
        for (const PointF& c : centers) {
            lo_x = std::min(lo_x, c.x);
            hi_x = std::max(hi_x, c.x);
            lo_y = std::min(lo_y, c.y);
            hi_y = std::max(hi_y, c.y);
        }
        RectCandidate box;
        box.corners = {Point{static_cast<int>(std::floor(lo_x)),
                             static_cast<int>(std::floor(lo_y))},
                       Point{static_cast<int>(std::ceil(hi_x)),
                             static_cast<int>(std::floor(lo_y))},
                       Point{static_cast<int>(std::ceil(hi_x)),
                             static_cast<int>(std::ceil(hi_y))},
                       Point{static_cast<int>(std::floor(lo_x)),
                             static_cast<int>(std::ceil(hi_y))}};
        box.area = shoelace_area(box.corners);
        box.centroid = {(lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0};
        det.verdict = true;
        det.region = box;
        return det;
    }

    const RectCandidate* best = nullptr;
    for (const RectCandidate& cand : candidates) {
        bool contains_all = true;
        for (const PointF& c : centers) {
            if (!point_in_convex_polygon(c, cand.corners)) {
                contains_all = false;
                break;
            }
        }
        if (contains_all && (best == nullptr || cand.area < best->area)) {
            best = &cand;
        }
    }
    if (best != nullptr) {
        det.verdict = true;
        det.region = *best;
    }
    return det;
}

}  // namespace tvsense
