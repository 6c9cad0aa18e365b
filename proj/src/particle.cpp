#include "cdiff/particle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cdiff/rng.hpp"

namespace cdiff {

namespace {
// Stream tags keep the different draw purposes on disjoint keys.
constexpr std::uint64_t kStepTag = 0x70617274ull;  // particle moves
constexpr std::uint64_t kNoiseTag = 0x6e6f6973ull; // additive data noise
} // namespace

double ParticleCloud::total_mass() const {
    double s = 0.0;
    for (double m : masses) s += m;
    return s;
}

ParticleCloud scatter(const Grid2D& u, int M, std::uint64_t seed) {
    if (M < 1) throw std::invalid_argument("scatter: M >= 1");
    ParticleCloud cloud;
    cloud.rng_seed = seed;
    cloud.direction_count = M;
    const double pixel_area = u.dx() * u.dx();
    for (int r = 0; r < u.rows(); ++r) {
        for (int c = 0; c < u.cols(); ++c) {
            const double v = u(r, c);
            if (v < 0.0) throw std::domain_error("scatter: negative concentration");
            if (v == 0.0) continue;
            const double part_mass = v * pixel_area / M;
            const double x = u.x_of(c);
            const double y = u.y_of(r);
            for (int m = 0; m < M; ++m) {
                cloud.positions.push_back({x, y});
                cloud.masses.push_back(part_mass);
            }
        }
    }
    return cloud;
}

ParticleCloud step_cloud(const ParticleCloud& cloud, const DiffusionParams& p,
                         const NoiseSpec& noise, double duration, int step_index) {
    if (!(duration > 0.0) || duration > p.tau * (1.0 + 1e-12))
        throw std::invalid_argument("step_cloud: requires duration in (0, tau]");
    const int M = cloud.direction_count;
    if (M < 1) throw std::invalid_argument("step_cloud: cloud has no direction set");

    ParticleCloud out = cloud;
    const double base_radius = p.c * duration;
    const double pert = noise.radius_rel_perturbation;

    double shared_eta = 0.0;
    if (noise.scope == PerturbationScope::per_step && pert > 0.0) {
        rng::Stream rs(rng::combine(cloud.rng_seed, kStepTag), ~0ull,
                       static_cast<std::uint64_t>(step_index));
        shared_eta = (2.0 * rs.next_unit() - 1.0) * pert;
    }

    const std::uint64_t key = rng::combine(cloud.rng_seed, kStepTag);
    for (std::size_t i = 0; i < out.size(); ++i) {
        rng::Stream rs(key, static_cast<std::uint64_t>(i),
                       static_cast<std::uint64_t>(step_index));
        const std::uint64_t line = rs.next_below(static_cast<std::uint64_t>(M));
        const double sign = (rs.next_u64() & 1ull) ? 1.0 : -1.0;
        double eta = shared_eta;
        if (noise.scope == PerturbationScope::per_particle_per_step)
            eta = (2.0 * rs.next_unit() - 1.0) * pert;
        const double phi = std::numbers::pi * static_cast<double>(line) / M;
        const double radius = base_radius * (1.0 + eta);
        out.positions[i][0] += sign * radius * std::cos(phi);
        out.positions[i][1] += sign * radius * std::sin(phi);
    }
    return out;
}

GatherResult gather(const ParticleCloud& cloud, const Grid2D& tmpl) {
    GatherResult result{Grid2D::zeros_like(tmpl), 0.0};
    Grid2D& g = result.grid;
    const double inv_dx = 1.0 / tmpl.dx();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double fc = (cloud.positions[i][0] - tmpl.origin_x()) * inv_dx;
        const double fr = (cloud.positions[i][1] - tmpl.origin_y()) * inv_dx;
        const int c = static_cast<int>(std::floor(fc + 0.5));
        const int r = static_cast<int>(std::floor(fr + 0.5));
        if (r < 0 || c < 0 || r >= g.rows() || c >= g.cols()) {
            result.outside_mass += cloud.masses[i];
        } else {
            g(r, c) += cloud.masses[i];
        }
    }
    const double inv_area = 1.0 / (tmpl.dx() * tmpl.dx());
    for (double& v : g.values()) v *= inv_area;
    return result;
}

Grid2D add_data_noise(const Grid2D& w, const NoiseSpec& noise) {
    if (noise.data_noise_level < 0.0)
        throw std::invalid_argument("add_data_noise: delta >= 0");
    Grid2D out = w;
    if (noise.data_noise_level == 0.0) return out;

    double w_sq = 0.0;
    for (double v : w.values()) w_sq += v * v;
    if (w_sq == 0.0) return out;

    std::vector<double> e(w.size());
    rng::Stream rs(rng::combine(noise.seed, kNoiseTag));
    double e_sq = 0.0;
    for (double& v : e) {
        v = rs.next_unit();
        e_sq += v * v;
    }
    const double scale = noise.data_noise_level * std::sqrt(w_sq / e_sq);
    for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] += scale * e[i];
    return out;
}

Grid2D simulate_data(const Grid2D& u, const DiffusionParams& p, double T, int M,
                     const NoiseSpec& noise, std::uint64_t seed) {
    const TimeSplit ts = split_time(p, T);
    ParticleCloud cloud = scatter(u, M, seed);
    for (long m = 0; m < ts.steps; ++m)
        cloud = step_cloud(cloud, p, noise, p.tau, static_cast<int>(m));
    cloud = step_cloud(cloud, p, noise, ts.residual, static_cast<int>(ts.steps));
    GatherResult gathered = gather(cloud, u);

    NoiseSpec keyed = noise;
    keyed.seed = rng::combine(seed, noise.seed);
    return add_data_noise(gathered.grid, keyed);
}

} // namespace cdiff
