#pragma once

// Deterministic rasterization of value clouds: residue-class coloring with
// a fixed hue palette, PNG output with pinned encoder settings (no
// timestamps, no ancillary chunks), and grouped SVG 1.1.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gperiod/cyclotomic.hpp"
#include "gperiod/evaluate.hpp"

namespace gperiod {

struct RGB {
    uint8_t r = 0, g = 0, b = 0;
    bool operator==(const RGB&) const = default;
};

struct Viewport {
    double re_min = -1.0, re_max = 1.0;
    double im_min = -1.0, im_max = 1.0;
};

struct PlotConfig {
    int width = 1024;
    int height = 1024;
    int point_radius = 1;
    int64_t color_modulus = 1;  // m
    RGB background{255, 255, 255};
    std::optional<BoundarySpec> boundary_overlay;
    std::optional<Viewport> viewport;  // default [-1.05 d, 1.05 d]^2
};

// Hue j/m turns at fixed saturation/lightness.
RGB class_color(int64_t label, int64_t m);

// Coloring modulus when none is requested: gcd(r, n) when that is a proper
// divisor >= 2, else the symmetry order when it is, else the largest proper
// divisor of n not exceeding 12, else 1.
int64_t auto_color_modulus(int64_t n, int64_t omega, int64_t r);

struct Image {
    int width = 0, height = 0;
    std::vector<uint8_t> rgb;  // 3 bytes per pixel, row-major

    uint64_t pixel_hash() const;  // FNV-1a over the raw buffer
};

Image rasterize(const ValueCloud& cloud, const PlotConfig& config);
std::vector<uint8_t> encode_png(const Image& image);
std::vector<uint8_t> render_png(const ValueCloud& cloud, const PlotConfig& config);
std::string render_svg(const ValueCloud& cloud, const PlotConfig& config);

}  // namespace gperiod
