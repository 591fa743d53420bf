#include "gperiod/render.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "gperiod/numtheory.hpp"
#include "png_io.hpp"

namespace gperiod {

namespace {

uint8_t channel(double v) {
    return static_cast<uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

// Fixed saturation/lightness HSL ramp; hue in turns.
RGB hsl(double hue, double saturation, double lightness) {
    const double c = (1.0 - std::abs(2.0 * lightness - 1.0)) * saturation;
    const double hp = 6.0 * (hue - std::floor(hue));
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp)) {
        case 0: r = c; g = x; break;
        case 1: r = x; g = c; break;
        case 2: g = c; b = x; break;
        case 3: g = x; b = c; break;
        case 4: r = x; b = c; break;
        default: r = c; b = x; break;
    }
    const double m = lightness - c / 2.0;
    return {channel(r + m), channel(g + m), channel(b + m)};
}

struct Mapping {
    Viewport vp;
    int width, height;

    bool to_pixel(cplx z, int& px, int& py) const {
        const double fx = (z.real() - vp.re_min) / (vp.re_max - vp.re_min);
        const double fy = (vp.im_max - z.imag()) / (vp.im_max - vp.im_min);
        px = static_cast<int>(std::lround(fx * (width - 1)));
        py = static_cast<int>(std::lround(fy * (height - 1)));
        return px >= 0 && px < width && py >= 0 && py < height;
    }
};

Viewport default_viewport(const ValueCloud& cloud) {
    const double d = static_cast<double>(std::max<int64_t>(cloud.orbit.size, 1));
    return {-1.05 * d, 1.05 * d, -1.05 * d, 1.05 * d};
}

void validate(const PlotConfig& config, const Viewport& vp) {
    if (config.width < 64 || config.height < 64)
        throw BadParameter("render: image must be at least 64x64");
    if (config.point_radius < 0)
        throw BadParameter("render: point radius must be nonnegative");
    if (config.color_modulus < 1)
        throw BadParameter("render: color modulus must be at least 1");
    if (!(vp.re_max > vp.re_min) || !(vp.im_max > vp.im_min))
        throw ViewportDegenerate("render: empty viewport");
}

void draw_disc(Image& img, int cx, int cy, int radius, RGB color) {
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy > radius * radius) continue;
            const int x = cx + dx, y = cy + dy;
            if (x < 0 || x >= img.width || y < 0 || y >= img.height) continue;
            const size_t at = (static_cast<size_t>(y) * img.width + x) * 3;
            img.rgb[at] = color.r;
            img.rgb[at + 1] = color.g;
            img.rgb[at + 2] = color.b;
        }
}

void draw_line(Image& img, int x0, int y0, int x1, int y1, RGB color) {
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
        if (x0 >= 0 && x0 < img.width && y0 >= 0 && y0 < img.height) {
            const size_t at = (static_cast<size_t>(y0) * img.width + x0) * 3;
            img.rgb[at] = color.r;
            img.rgb[at + 1] = color.g;
            img.rgb[at + 2] = color.b;
        }
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) { err += dy; x0 += sx; }
        if (e2 <= dx) { err += dx; y0 += sy; }
    }
}

// Closed overlay curve for a boundary prediction.
std::vector<cplx> overlay_curve(const BoundarySpec& spec, int samples) {
    switch (spec.kind) {
        case BoundarySpec::Kind::hypocycloid:
            return hypocycloid_samples(spec.d, samples);
        case BoundarySpec::Kind::real_segment:
            return {cplx{spec.segment_lo, 0.0}, cplx{spec.segment_hi, 0.0}};
        case BoundarySpec::Kind::laurent: {
            // diagonal restriction of the torus map: a closed curve inside
            // (and for prime d exactly on) the predicted boundary
            std::vector<cplx> pts;
            pts.reserve(samples);
            std::vector<double> angles(spec.table->phi);
            for (int i = 0; i < samples; ++i) {
                std::fill(angles.begin(), angles.end(),
                          static_cast<double>(i) / samples);
                pts.push_back(laurent_eval(*spec.table, angles));
            }
            return pts;
        }
        case BoundarySpec::Kind::point_set:
            return spec.points;
    }
    return {};
}

}  // namespace

RGB class_color(int64_t label, int64_t m) {
    if (m < 1) throw BadParameter("class_color: modulus must be at least 1");
    const double hue = static_cast<double>(label % m) / static_cast<double>(m);
    return hsl(hue, 0.65, 0.50);
}

int64_t auto_color_modulus(int64_t n, int64_t omega, int64_t r) {
    if (n < 2) return 1;
    omega = ((omega % n) + n) % n;
    const int64_t g = std::gcd(((r % n) + n) % n, n);  // gcd(0, n) = n for r = 0
    if (g >= 2 && g < n) return g;
    // distinguishes the rotated copies when the image is k-fold symmetric
    const int64_t k = std::gcd(omega - 1, n / g);
    if (k >= 2 && k < n) return k;
    for (int64_t m = 12; m >= 2; --m)
        if (n % m == 0 && m < n) return m;
    return 1;
}

uint64_t Image::pixel_hash() const {
    uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (uint8_t byte : rgb) {
        h ^= byte;
        h *= 1099511628211ull;
    }
    return h;
}

Image rasterize(const ValueCloud& cloud, const PlotConfig& config) {
    const Viewport vp = config.viewport.value_or(default_viewport(cloud));
    validate(config, vp);

    Image img;
    img.width = config.width;
    img.height = config.height;
    img.rgb.resize(static_cast<size_t>(config.width) * config.height * 3);
    for (size_t i = 0; i < img.rgb.size(); i += 3) {
        img.rgb[i] = config.background.r;
        img.rgb[i + 1] = config.background.g;
        img.rgb[i + 2] = config.background.b;
    }

    const Mapping map{vp, config.width, config.height};
    // painter's order: ascending y
    for (int64_t y = 0; y < cloud.size(); ++y) {
        int px, py;
        if (!map.to_pixel(cloud.points[y], px, py)) continue;
        draw_disc(img, px, py, config.point_radius,
                  class_color(cloud.labels[y], config.color_modulus));
    }

    if (config.boundary_overlay) {
        const RGB pen{64, 64, 64};
        const auto curve = overlay_curve(*config.boundary_overlay, 2048);
        if (curve.size() >= 2) {
            const bool closed =
                config.boundary_overlay->kind != BoundarySpec::Kind::real_segment &&
                config.boundary_overlay->kind != BoundarySpec::Kind::point_set;
            for (size_t i = 0; i + 1 < curve.size() + (closed ? 1 : 0); ++i) {
                int x0, y0, x1, y1;
                map.to_pixel(curve[i], x0, y0);
                map.to_pixel(curve[(i + 1) % curve.size()], x1, y1);
                draw_line(img, x0, y0, x1, y1, pen);
            }
        }
    }
    return img;
}

std::vector<uint8_t> encode_png(const Image& image) {
    return detail::write_png_rgb8(image.width, image.height, image.rgb.data());
}

std::vector<uint8_t> render_png(const ValueCloud& cloud, const PlotConfig& config) {
    return encode_png(rasterize(cloud, config));
}

std::string render_svg(const ValueCloud& cloud, const PlotConfig& config) {
    const Viewport vp = config.viewport.value_or(default_viewport(cloud));
    validate(config, vp);
    const Mapping map{vp, config.width, config.height};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << config.width << "\" height=\"" << config.height << "\">\n";
    char color[8];
    std::snprintf(color, sizeof color, "#%02x%02x%02x", config.background.r,
                  config.background.g, config.background.b);
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"" << color << "\"/>\n";

    // group points by residue class for small files
    std::map<int64_t, std::vector<int64_t>> by_label;
    for (int64_t y = 0; y < cloud.size(); ++y) by_label[cloud.labels[y]].push_back(y);
    const int radius = std::max(config.point_radius, 1);
    for (const auto& [label, ys] : by_label) {
        const RGB c = class_color(label, config.color_modulus);
        std::snprintf(color, sizeof color, "#%02x%02x%02x", c.r, c.g, c.b);
        svg << "  <g fill=\"" << color << "\">\n";
        for (int64_t y : ys) {
            int px, py;
            if (!map.to_pixel(cloud.points[y], px, py)) continue;
            svg << "    <circle cx=\"" << px << "\" cy=\"" << py << "\" r=\""
                << radius << "\"/>\n";
        }
        svg << "  </g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace gperiod
