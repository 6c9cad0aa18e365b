#ifndef CDIFF_SYNTHETIC_HPP
#define CDIFF_SYNTHETIC_HPP

#include <string>

#include "cdiff/grid.hpp"

namespace cdiff {

// Built-in test scenes. Coordinates are relative to the grid extent so the
// same scene renders at any resolution.

// Binary glyph scene: a large question mark, a smaller one and an apostrophe
// (arcs, bars and dots with crisp edges) — structured content with both
// coarse and fine features for deblurring experiments.
Grid2D make_question_mark(int rows, int cols, double dx);

// Smooth positive bump, effectively band-limited: exp(-|x - x0|^2 / (2 s^2))
// with s = sigma_frac * min extent.
Grid2D make_gaussian_blob(int rows, int cols, double dx, double sigma_frac = 0.08);

// Single unit-value pixel at the grid center.
Grid2D make_unit_pixel(int rows, int cols, double dx);

// Dispatch by name: "question-mark", "gaussian-blob", "unit-pixel".
Grid2D make_synthetic(const std::string& name, int rows, int cols, double dx);

} // namespace cdiff

#endif
