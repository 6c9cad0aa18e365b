#include "cdiff/grid_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cdiff {

namespace {

constexpr char kMagic[] = "CDG1";

std::uint64_t to_le(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        std::uint64_t r = 0;
        for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffull) << (8 * (7 - i));
        return r;
    }
}

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error("grid file " + path.string() + ": " + what);
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void save_grid(const Grid2D& g, const std::filesystem::path& path, int dimension_tag) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(path, "cannot open for writing");
    os << kMagic << '\n'
       << dimension_tag << ' ' << g.rows() << ' ' << g.cols() << ' '
       << format_double(g.dx()) << ' ' << format_double(g.origin_x()) << ' '
       << format_double(g.origin_y()) << '\n';
    std::vector<std::uint64_t> raw(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::uint64_t bits;
        std::memcpy(&bits, &g.values()[i], sizeof bits);
        raw[i] = to_le(bits);
    }
    os.write(reinterpret_cast<const char*>(raw.data()),
             static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
    if (!os) fail(path, "write failed");
}

Grid2D load_grid(const std::filesystem::path& path, int* dimension_tag) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(path, "cannot open");
    std::string magic, header;
    if (!std::getline(is, magic) || magic != kMagic) fail(path, "bad magic");
    if (!std::getline(is, header)) fail(path, "missing header");

    std::istringstream hs(header);
    int dim = 0, rows = 0, cols = 0;
    double dx = 0.0, ox = 0.0, oy = 0.0;
    if (!(hs >> dim >> rows >> cols >> dx >> ox >> oy)) fail(path, "malformed header");
    if (rows < 1 || cols < 1 || !(dx > 0.0)) fail(path, "invalid shape");
    if (dimension_tag) *dimension_tag = dim;

    Grid2D g(rows, cols, dx, ox, oy);
    std::vector<std::uint64_t> raw(g.size());
    is.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
    if (is.gcount() != static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)))
        fail(path, "truncated payload");
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::uint64_t bits = to_le(raw[i]);
        std::memcpy(&g.values()[i], &bits, sizeof bits);
    }
    return g;
}

void save_pgm(const Grid2D& g, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(path, "cannot open for writing");
    const double lo = g.min_value();
    const double hi = g.max_value();
    const double span = hi > lo ? hi - lo : 1.0;
    os << "P5\n# min=" << format_double(lo) << " max=" << format_double(hi) << '\n'
       << g.cols() << ' ' << g.rows() << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(g.cols()));
    for (int r = 0; r < g.rows(); ++r) {
        for (int c = 0; c < g.cols(); ++c) {
            const double t = (g(r, c) - lo) / span;
            int q = static_cast<int>(t * 255.0 + 0.5);
            if (q < 0) q = 0;
            if (q > 255) q = 255;
            row[static_cast<std::size_t>(c)] = static_cast<unsigned char>(q);
        }
        os.write(reinterpret_cast<const char*>(row.data()), g.cols());
    }
    if (!os) fail(path, "write failed");
}

} // namespace cdiff
