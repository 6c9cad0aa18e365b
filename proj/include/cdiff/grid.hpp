#ifndef CDIFF_GRID_HPP
#define CDIFF_GRID_HPP

#include <cstddef>
#include <vector>

namespace cdiff {

// Uniform square-pixel concentration field (values are mass per unit area).
// Pixel (r, c) is centered at (origin_x + c dx, origin_y + r dx); the pixel
// covers the half-open square of side dx around its center.
class Grid2D {
  public:
    Grid2D(int rows, int cols, double dx, double origin_x = 0.0, double origin_y = 0.0);

    static Grid2D zeros_like(const Grid2D& other);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    double dx() const noexcept { return dx_; }
    double origin_x() const noexcept { return origin_x_; }
    double origin_y() const noexcept { return origin_y_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator()(int r, int c) { return values_[index(r, c)]; }
    double operator()(int r, int c) const { return values_[index(r, c)]; }

    std::vector<double>& values() noexcept { return values_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double x_of(int c) const { return origin_x_ + c * dx_; }
    double y_of(int r) const { return origin_y_ + r * dx_; }

    bool same_shape(const Grid2D& other) const noexcept;

    double total_mass() const;    // dx^2 * sum(values)
    double min_value() const;
    double max_value() const;

  private:
    std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }

    int rows_, cols_;
    double dx_;
    double origin_x_, origin_y_;
    std::vector<double> values_;
};

// Physical norms/distances: the discrete L^p norms carry the pixel measure.
double l1_norm(const Grid2D& g);                          // dx^2 sum |v|
double l2_norm(const Grid2D& g);                          // dx sqrt(sum v^2)
double l1_distance(const Grid2D& a, const Grid2D& b);
double l2_distance(const Grid2D& a, const Grid2D& b);
double inner_product(const Grid2D& a, const Grid2D& b);   // dx^2 sum a*b

// One-dimensional counterpart used by the 1D stepping path.
class Grid1D {
  public:
    Grid1D(int size, double dx, double origin = 0.0);

    int size() const noexcept { return static_cast<int>(values_.size()); }
    double dx() const noexcept { return dx_; }
    double origin() const noexcept { return origin_; }

    double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

    std::vector<double>& values() noexcept { return values_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double x_of(int i) const { return origin_ + i * dx_; }
    double total_mass() const; // dx * sum(values)

  private:
    double dx_;
    double origin_;
    std::vector<double> values_;
};

} // namespace cdiff

#endif
