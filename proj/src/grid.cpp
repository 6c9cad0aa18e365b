#include "cdiff/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cdiff {

Grid2D::Grid2D(int rows, int cols, double dx, double origin_x, double origin_y)
    : rows_(rows), cols_(cols), dx_(dx), origin_x_(origin_x), origin_y_(origin_y),
      values_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("Grid2D: rows, cols >= 1");
    if (!(std::isfinite(dx) && dx > 0.0)) throw std::invalid_argument("Grid2D: dx > 0");
    if (!std::isfinite(origin_x) || !std::isfinite(origin_y))
        throw std::invalid_argument("Grid2D: origin must be finite");
}

Grid2D Grid2D::zeros_like(const Grid2D& other) {
    return Grid2D(other.rows_, other.cols_, other.dx_, other.origin_x_, other.origin_y_);
}

bool Grid2D::same_shape(const Grid2D& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_ && dx_ == other.dx_;
}

double Grid2D::total_mass() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s * dx_ * dx_;
}

double Grid2D::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double Grid2D::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

double l1_norm(const Grid2D& g) {
    double s = 0.0;
    for (double v : g.values()) s += std::abs(v);
    return s * g.dx() * g.dx();
}

double l2_norm(const Grid2D& g) {
    double s = 0.0;
    for (double v : g.values()) s += v * v;
    return g.dx() * std::sqrt(s);
}

namespace {
void require_same_shape(const Grid2D& a, const Grid2D& b, const char* who) {
    if (!a.same_shape(b)) throw std::invalid_argument(std::string(who) + ": shape mismatch");
}
} // namespace

double l1_distance(const Grid2D& a, const Grid2D& b) {
    require_same_shape(a, b, "l1_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a.values()[i] - b.values()[i]);
    return s * a.dx() * a.dx();
}

double l2_distance(const Grid2D& a, const Grid2D& b) {
    require_same_shape(a, b, "l2_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.values()[i] - b.values()[i];
        s += d * d;
    }
    return a.dx() * std::sqrt(s);
}

double inner_product(const Grid2D& a, const Grid2D& b) {
    require_same_shape(a, b, "inner_product");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.values()[i] * b.values()[i];
    return s * a.dx() * a.dx();
}

Grid1D::Grid1D(int size, double dx, double origin)
    : dx_(dx), origin_(origin), values_(static_cast<std::size_t>(size), 0.0) {
    if (size < 1) throw std::invalid_argument("Grid1D: size >= 1");
    if (!(std::isfinite(dx) && dx > 0.0)) throw std::invalid_argument("Grid1D: dx > 0");
}

double Grid1D::total_mass() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s * dx_;
}

} // namespace cdiff
