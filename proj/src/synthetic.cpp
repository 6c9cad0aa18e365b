#include "cdiff/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cdiff {

namespace {

struct Vec {
    double x, y;
};

double dist_to_segment(Vec p, Vec a, Vec b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double wx = p.x - a.x, wy = p.y - a.y;
    const double vv = vx * vx + vy * vy;
    double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = wx - t * vx, dy = wy - t * vy;
    return std::hypot(dx, dy);
}

// Question-mark glyph anchored at (cx, cy) with half-extent ~0.6*u: an arc
// opening downward, a short stem and a dot.
bool in_question_mark(Vec p, double cx, double cy, double u) {
    const double deg = std::numbers::pi / 180.0;
    // arc ring
    {
        const Vec c{cx, cy + 0.55 * u};
        const double r = std::hypot(p.x - c.x, p.y - c.y);
        if (r >= 0.24 * u && r <= 0.42 * u) {
            const double theta = std::atan2(p.y - c.y, p.x - c.x);
            if (theta >= -70.0 * deg && theta <= 160.0 * deg) return true;
        }
    }
    // stem
    if (p.x >= cx - 0.09 * u && p.x <= cx + 0.09 * u && p.y >= cy - 0.18 * u &&
        p.y <= cy + 0.13 * u)
        return true;
    // dot
    {
        const double r = std::hypot(p.x - cx, p.y - (cy - 0.42 * u));
        if (r <= 0.105 * u) return true;
    }
    return false;
}

} // namespace

Grid2D make_question_mark(int rows, int cols, double dx) {
    Grid2D g(rows, cols, dx);
    const double w = (cols - 1) * dx;
    const double h = (rows - 1) * dx;
    const double ext = std::min(w, h);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const Vec p{g.x_of(c) / ext, g.y_of(r) / ext};
            const bool inside = in_question_mark(p, 0.40, 0.48, 0.30) ||
                                in_question_mark(p, 0.72, 0.42, 0.12) ||
                                dist_to_segment(p, {0.80, 0.62}, {0.77, 0.54}) < 0.012;
            if (inside) g(r, c) = 1.0;
        }
    }
    return g;
}

Grid2D make_gaussian_blob(int rows, int cols, double dx, double sigma_frac) {
    if (!(sigma_frac > 0.0)) throw std::invalid_argument("make_gaussian_blob: sigma_frac > 0");
    Grid2D g(rows, cols, dx);
    const double cx = g.x_of((cols - 1) / 2);
    const double cy = g.y_of((rows - 1) / 2);
    const double sigma = sigma_frac * std::min((cols - 1) * dx, (rows - 1) * dx);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const double q =
                (std::pow(g.x_of(c) - cx, 2) + std::pow(g.y_of(r) - cy, 2)) /
                (2.0 * sigma * sigma);
            // hard-truncate far tails so the field is compactly supported
            g(r, c) = q < 36.0 ? std::exp(-q) : 0.0;
        }
    }
    return g;
}

Grid2D make_unit_pixel(int rows, int cols, double dx) {
    Grid2D g(rows, cols, dx);
    g(rows / 2, cols / 2) = 1.0;
    return g;
}

Grid2D make_synthetic(const std::string& name, int rows, int cols, double dx) {
    if (name == "question-mark") return make_question_mark(rows, cols, dx);
    if (name == "gaussian-blob") return make_gaussian_blob(rows, cols, dx);
    if (name == "unit-pixel") return make_unit_pixel(rows, cols, dx);
    throw std::invalid_argument("make_synthetic: unknown scene '" + name + "'");
}

} // namespace cdiff
