#include "cdiff/spectrum.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace cdiff {

namespace {
// The FFTW planner is not reentrant; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    fftw_complex* p = nullptr;
    explicit FftwBuffer(std::size_t n) {
        p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        if (!p) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(p); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

void run_fft(const std::complex<double>* in, std::complex<double>* out, int rows,
               int cols, int sign) {
    const std::size_t n = static_cast<std::size_t>(rows) * cols;
    FftwBuffer buf_in(n), buf_out(n);
    for (std::size_t i = 0; i < n; ++i) {
        buf_in.p[i][0] = in[i].real();
        buf_in.p[i][1] = in[i].imag();
    }
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(rows, cols, buf_in.p, buf_out.p, sign, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fftw: plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n)); // unitary
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::complex<double>(buf_out.p[i][0] * scale, buf_out.p[i][1] * scale);
}
} // namespace

Spectrum::Spectrum(int rows, int cols, double dx, double origin_x, double origin_y)
    : rows_(rows), cols_(cols), dx_(dx), origin_x_(origin_x), origin_y_(origin_y),
      coeffs_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("Spectrum: rows, cols >= 1");
    if (!(dx > 0.0)) throw std::invalid_argument("Spectrum: dx > 0");
}

double Spectrum::wavenumber(int i, int n) const {
    const int signed_i = (i <= n / 2) ? i : i - n;
    return 2.0 * std::numbers::pi * signed_i / (n * dx_);
}

double Spectrum::k_mag(int r, int c) const {
    return std::hypot(kx(c), ky(r));
}

Spectrum fft_forward(const Grid2D& g) {
    Spectrum s(g.rows(), g.cols(), g.dx(), g.origin_x(), g.origin_y());
    std::vector<std::complex<double>> in(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) in[i] = g.values()[i];
    run_fft(in.data(), s.coeffs().data(), g.rows(), g.cols(), FFTW_FORWARD);
    return s;
}

Grid2D fft_inverse(const Spectrum& s) {
    std::vector<std::complex<double>> out(s.coeffs().size());
    run_fft(s.coeffs().data(), out.data(), s.rows(), s.cols(), FFTW_BACKWARD);
    Grid2D g(s.rows(), s.cols(), s.dx(), s.origin_x(), s.origin_y());
    for (std::size_t i = 0; i < out.size(); ++i) g.values()[i] = out[i].real();
    return g;
}

} // namespace cdiff
