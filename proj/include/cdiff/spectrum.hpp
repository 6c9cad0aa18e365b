#ifndef CDIFF_SPECTRUM_HPP
#define CDIFF_SPECTRUM_HPP

#include <complex>
#include <vector>

#include "cdiff/grid.hpp"

namespace cdiff {

// Complex field over the discrete frequency lattice of a Grid2D. The
// transform pair is unitary (both directions scaled by 1/sqrt(rows*cols)),
// so a round trip reproduces the grid to machine precision and Parseval
// holds without extra factors. Physical wave numbers follow the signed
// lattice k_j = 2 pi j / (n dx), j in [-n/2, n/2).
class Spectrum {
  public:
    Spectrum(int rows, int cols, double dx, double origin_x = 0.0, double origin_y = 0.0);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    double dx() const noexcept { return dx_; }
    double origin_x() const noexcept { return origin_x_; }
    double origin_y() const noexcept { return origin_y_; }

    std::complex<double>& operator()(int r, int c) { return coeffs_[index(r, c)]; }
    const std::complex<double>& operator()(int r, int c) const { return coeffs_[index(r, c)]; }

    std::vector<std::complex<double>>& coeffs() noexcept { return coeffs_; }
    const std::vector<std::complex<double>>& coeffs() const noexcept { return coeffs_; }

    // Signed lattice wave numbers for row r / column c.
    double ky(int r) const { return wavenumber(r, rows_); }
    double kx(int c) const { return wavenumber(c, cols_); }
    double k_mag(int r, int c) const;

  private:
    double wavenumber(int i, int n) const;
    std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }

    int rows_, cols_;
    double dx_;
    double origin_x_, origin_y_;
    std::vector<std::complex<double>> coeffs_;
};

Spectrum fft_forward(const Grid2D& g);
Grid2D fft_inverse(const Spectrum& s); // real part of the inverse transform

} // namespace cdiff

#endif
