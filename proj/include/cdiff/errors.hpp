#ifndef CDIFF_ERRORS_HPP
#define CDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cdiff {

// Thrown when a series or iteration fails to reach its tolerance within the
// allowed number of terms/steps. Carries the best value computed so far.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double partial)
        : std::runtime_error(what), partial_value(partial) {}
    double partial_value;
};

// Landweber stagnation: the residual is nonzero but lies in the numerical
// null space of the forward operator, so no relaxation step can reduce it.
class StagnationError : public std::runtime_error {
  public:
    explicit StagnationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cdiff

#endif
