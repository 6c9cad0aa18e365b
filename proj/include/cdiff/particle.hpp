#ifndef CDIFF_PARTICLE_HPP
#define CDIFF_PARTICLE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "cdiff/grid.hpp"
#include "cdiff/params.hpp"

namespace cdiff {

// Synthetic-data simulator: per-pixel mass splitting into M equal particles,
// straight-line transport at speed c in directions drawn from the M-line
// lattice {phi = j pi/M} with a uniform sign, radius jitter, and additive
// positive-mean noise. Because the data generator shares nothing with the
// gridded forward operators, reconstructions from it are free of the
// inverse crime.

enum class NoiseKind { uniform_positive_mean };

enum class PerturbationScope {
    per_particle_per_step, // independent radius jitter for every move
    per_step               // one shared jitter per step
};

struct NoiseSpec {
    double radius_rel_perturbation = 0.0; // e.g. 0.0025 for +-0.25%
    double data_noise_level = 0.0;        // relative L2 level (delta)
    NoiseKind kind = NoiseKind::uniform_positive_mean;
    std::uint64_t seed = 0;
    PerturbationScope scope = PerturbationScope::per_particle_per_step;
};

struct ParticleCloud {
    std::vector<std::array<double, 2>> positions;
    std::vector<double> masses;
    std::uint64_t rng_seed = 0;
    int direction_count = 0; // M: split count and direction-lattice size

    std::size_t size() const noexcept { return masses.size(); }
    double total_mass() const;
};

// Each pixel with positive value spawns M particles of mass (pixel mass)/M at
// the pixel center. Negative pixels are a domain error.
ParticleCloud scatter(const Grid2D& u, int M, std::uint64_t seed);

// Moves every particle by R*d: d = +-(cos(j pi/M), sin(j pi/M)) with the line
// index j and the sign drawn uniformly, R = c*duration*(1 + eta), eta uniform
// on [-radius_rel_perturbation, +radius_rel_perturbation]. Draws come from
// counter-based streams keyed (cloud seed, particle, step): reproducible and
// schedule-independent. Repeated directions are allowed.
ParticleCloud step_cloud(const ParticleCloud& cloud, const DiffusionParams& p,
                         const NoiseSpec& noise, double duration, int step_index);

struct GatherResult {
    Grid2D grid;
    double outside_mass = 0.0; // mass of particles beyond the template
};

// Bins particle masses into the template's pixels (nearest pixel center) and
// converts back to concentration values.
GatherResult gather(const ParticleCloud& cloud, const Grid2D& tmpl);

// Adds e * ||w||_2 * delta / ||e||_2 with e an i.i.d. uniform-[0,1] field, so
// the relative L2 perturbation equals delta exactly (up to roundoff).
Grid2D add_data_noise(const Grid2D& w, const NoiseSpec& noise);

// scatter -> m+1 cloud steps (m of length tau, the last of length s) ->
// gather -> add_data_noise, with (m, s) = split_time(T). Byte-deterministic
// for a fixed (seed, noise.seed) pair.
Grid2D simulate_data(const Grid2D& u, const DiffusionParams& p, double T, int M,
                     const NoiseSpec& noise, std::uint64_t seed);

} // namespace cdiff

#endif
