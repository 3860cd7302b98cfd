#ifndef HWLAB_RESAMPLE_HPP
#define HWLAB_RESAMPLE_HPP

#include <vector>

#include "hwlab/field.hpp"

namespace hwlab {

// Evaluates the trigonometric interpolant of src at the affinely mapped
// target nodes (ax*x + bx, ay*y + by), (x,y) ranging over target's grid.
// Arguments outside the source box wrap periodically.
Field sample_affine(const Field& src, const GridSpec& target, double ax, double bx, double ay,
                    double by);

// Trigonometric resampling onto another grid (identity map of coordinates).
Field resample_to(const Field& src, const GridSpec& target);

// Continuum-normalized Fourier transform of f evaluated by quadrature at the
// product lattice xis x etas (any real frequencies).  Row-major: result
// [i*etas.size()+j] = fhat(xis[i], etas[j]).  On the grid's own lattice this
// reproduces Field::spectrum up to rounding.
std::vector<cplx> spectrum_at(const Field& f, const std::vector<double>& xis,
                              const std::vector<double>& etas);

} // namespace hwlab

#endif
