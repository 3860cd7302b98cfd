#ifndef HWLAB_GROUNDSTATE_HPP
#define HWLAB_GROUNDSTATE_HPP

#include <optional>

#include "hwlab/field.hpp"
#include "hwlab/norms.hpp"

namespace hwlab {

struct GroundStateResult {
    Field profile;        // real-valued, positive at the box center
    double beta = 0.0;
    double p = 0.0;
    double residual = 0.0;       // ||-Qxx + |Dy|Q + beta Q - |Q|^{p-1}Q|| / ||Q||
    double stabilization = 0.0;  // final Petviashvili factor M_n
    int iterations = 0;
};

struct PetviashviliOptions {
    double tol = 1e-8;
    int max_iter = 500;
    std::optional<Field> seed; // default: exp(-(beta x^2 + beta |y|))
};

// Relative L2 residual of the standing-wave equation for a candidate profile.
double groundstate_residual(const Field& Q, double p, double beta);

Field default_groundstate_seed(const GridSpec& grid, double beta);

// Fixed-point iteration Q_{n+1} = M_n^{p/(p-1)} L^{-1}(|Q_n|^{p-1} Q_n) with
// L = -d_x^2 + |D_y| + beta and M_n = <L Q_n, Q_n> / <|Q_n|^{p-1} Q_n, Q_n>.
// Requires 1 < p < 5 and beta > 0.  Throws ConvergenceError when max_iter is
// exhausted or M_n leaves [1e-8, 1e8].
GroundStateResult petviashvili(double p, double beta, const GridSpec& grid,
                               const PetviashviliOptions& opts = {});

// Q_beta(x,y) = beta^{1/(p-1)} Q_1(sqrt(beta) x, beta y), realized exactly by
// carrying the samples to the box (Lx/sqrt(beta), Ly/beta) on the same index
// lattice.  beta = 1 returns the input unchanged.
Field rescale_groundstate(const Field& Q1, double beta, double p);

// Same scaling resampled onto an explicit target grid by trigonometric
// interpolation.  Checks that the result still decays inside the target box
// (relative tail mass below tail_tol; ground states decay only algebraically
// in y, so the default is looser than the Schwartz-profile checks).
Field rescale_groundstate_onto(const Field& Q1, double beta, double p, const GridSpec& target,
                               double tail_tol = 2e-2);

// Homogeneous-weight inner product <f,g>_{s1,s2} =
// sum |xi|^{2s1}|eta|^{2s2} fhat conj(ghat) dxi deta (zero lines excluded for
// nonzero exponents).  Fields must share a grid.
cplx hs_inner_product(const Field& f, const Field& g, const SobolevIndex& idx);

} // namespace hwlab

#endif
