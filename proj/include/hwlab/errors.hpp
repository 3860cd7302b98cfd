#ifndef HWLAB_ERRORS_HPP
#define HWLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hwlab {

// Base class for all failures raised by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A field's mass in the outer 10% annulus of the box exceeds the configured
// bound, so box-truncated weights and rescalings are unreliable.
class TailMassError : public Error {
  public:
    using Error::Error;
};

// Initial data carries too much mass beyond 2/3 Nyquist for the integrator.
class ResolutionError : public Error {
  public:
    using Error::Error;
};

// A conserved quantity drifted past the abort threshold during evolution.
class ConservationError : public Error {
  public:
    using Error::Error;
};

// An iterative solver failed to reach its tolerance or diverged.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

// Degenerate input to a ratio/functional (zero denominator and similar).
class DegenerateInputError : public Error {
  public:
    using Error::Error;
};

} // namespace hwlab

#endif
