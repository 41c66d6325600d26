// Copyright 2026 TVSense Authors
// Camera pipeline: per-pixel mixture background model, Sobel edge
// binarization, outer-border contour tracing, polyline simplification,
// rectangle candidate filtering, and the enclosing-candidate verdict.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tvsense {

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major

    static GrayImage filled(int width, int height, std::uint8_t value);
    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    void set(int x, int y, std::uint8_t v) {
        pixels[static_cast<std::size_t>(y) * width + x] = v;
    }
};

GrayImage read_pgm(const std::string& path);
void write_pgm(const GrayImage& img, const std::string& path);

// Numbered frame files frame_0000.pgm ... inside a shot directory.
std::vector<GrayImage> read_shot_dir(const std::string& dir);
void write_shot_dir(const std::vector<GrayImage>& frames, const std::string& dir);

struct ForegroundMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // 0 background, 1 foreground
};

struct BackgroundConfig {
    int components = 3;
    double learning_rate = 0.02;
    double match_sigma = 2.5;
    double background_fraction = 0.7;
    double variance_floor = 4.0;
    double initial_variance = 225.0;
    double initial_weight = 0.05;
};

// Per-pixel mixture of Gaussians. A pixel matching one of the top-weight
// components that together cover background_fraction is background; a pixel
// matching nothing replaces the weakest component and is foreground.
class BackgroundModel {
public:
    BackgroundModel(int width, int height, const BackgroundConfig& cfg = {});

    ForegroundMask update(const GrayImage& frame);

    int width() const { return width_; }
    int height() const { return height_; }

private:
    int width_;
    int height_;
    BackgroundConfig cfg_;
    // Component k of pixel p at [(p * K + k)]; kept sorted by weight
    // descending within each pixel.
    std::vector<double> mean_;
    std::vector<double> var_;
    std::vector<double> weight_;
};

struct Point {
    int x = 0;
    int y = 0;
    bool operator==(const Point&) const = default;
};

struct PointF {
    double x = 0.0;
    double y = 0.0;
};

// Closed outer-border trace; consecutive points are 8-connected and the
// last point is adjacent to the first.
using Contour = std::vector<Point>;

// Sobel gradient magnitude thresholded at mean + 1 sigma; 0/255 output.
GrayImage binarize_edges(const GrayImage& frame);

// One closed outer-border contour per 8-connected foreground region of a
// 0/255 image. Interior hole borders are not reported.
std::vector<Contour> find_contours(const GrayImage& binary);

// Recursive max-deviation polyline simplification of a closed contour.
// Every original point stays within epsilon of the simplified polygon.
std::vector<Point> simplify_rdp(const Contour& contour, double epsilon);

double shoelace_area(std::span<const Point> polygon);
bool is_convex(std::span<const Point> polygon);
bool point_in_convex_polygon(const PointF& p, std::span<const Point> polygon);

struct RectCandidate {
    std::array<Point, 4> corners;
    double area = 0.0;
    PointF centroid;
};

// Simplifies each contour at epsilon = epsilon_frac x perimeter and keeps
// exactly-4-point convex polygons whose area is within [5%, 70%] of the
// image area.
std::vector<RectCandidate> rectangle_candidates(const std::vector<Contour>& contours,
                                                double image_area,
                                                double epsilon_frac = 0.02);

enum class IntersectionMode {
    candidate,  // smallest detected candidate enclosing all foreground centers
    bbox        // axis-aligned bounding box of the foreground centers
};

struct DetectorConfig {
    BackgroundConfig background;
    double epsilon_frac = 0.02;
    double min_component_frac = 0.005;  // foreground blobs below this are noise
    IntersectionMode mode = IntersectionMode::candidate;
};

struct Detection {
    bool verdict = false;
    std::optional<RectCandidate> region;
    std::size_t centroid_count = 0;
    std::size_t candidate_count = 0;
};

// Runs the three-stage pipeline over a frame sequence: foreground centers
// accumulate from the second frame on (the first frame initializes the
// model), rectangle candidates accumulate from every frame, and the verdict
// is true when some candidate contains every recorded center.
Detection detect_tv(const std::vector<GrayImage>& frames,
                    const DetectorConfig& cfg = {});

// Centroids of 8-connected mask components covering at least min_frac of
// the image area.
std::vector<PointF> mask_component_centroids(const ForegroundMask& mask,
                                             double min_frac);

}  // namespace tvsense
