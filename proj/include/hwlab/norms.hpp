#ifndef HWLAB_NORMS_HPP
#define HWLAB_NORMS_HPP

#include <functional>

#include "hwlab/field.hpp"

namespace hwlab {

// Pair of anisotropic regularity exponents.  Inhomogeneous weights are
// <xi>^{2 s1} <eta>^{2 s2} with <z> = sqrt(1+z^2); homogeneous weights are
// |xi|^{2 s1} |eta|^{2 s2}.  For homogeneous weights with a nonzero exponent
// the corresponding zero-frequency line is excluded from the quadrature
// (weight 0 there); an exponent of exactly 0 means weight 1 everywhere.
struct SobolevIndex {
    double s1 = 0.0;
    double s2 = 0.0;
    bool homogeneous = false;
};

// Per-axis frequency weight raised to the 2s power, with the zero-line
// convention above.
double freq_weight(double z, double s, bool homogeneous);

// Quadrature L2 norm (equals the spectral L2 norm by Plancherel).
double l2_norm(const Field& f);
// Quadrature L^p norm of |f|.
double lp_norm(const Field& f, double p);

// Anisotropic Sobolev norm ||f||_{H^{s1,s2}} (or homogeneous variant).
double sobolev_norm(const Field& f, const SobolevIndex& idx);

// Weighted norm sum_{i=0..k} ||(1+|x|+|y|)^{k-i} d^i f||_{L2} where d^i is the
// full family of mixed derivatives of total order i combined in Euclidean
// norm.  Requires k <= 4 and a field that decays in the outer 10% annulus of
// the box (throws TailMassError otherwise; the weight is meaningless for
// wrapped fields).  tail_tol bounds the admissible relative annulus mass;
// fields produced by |D_y| carry algebraic tails, so callers measuring those
// pass a looser bound than the Schwartz-profile default.
double weighted_norm_hkk(const Field& f, int k, double tail_tol = 1e-10);

// Applies a Fourier multiplier symbol(xi, eta) on the spectral side.
Field apply_multiplier(const Field& f, const std::function<cplx(double, double)>& symbol);

// ||u^{(a,nu,lambda,v)}(t)||_{H^{s1,s2}} computed directly from the spectrum
// of phi at the rescaled time t/lambda^2, without building the boosted field:
//   lambda^{-2/(p-1)} (lambda/nu)^{3/2}
//     * ( sum w1((nu/lambda) xi - v/2) w2((nu^2/lambda^2) eta) |phihat|^2 dxi deta )^{1/2}
// with w1, w2 the per-axis weights of idx.
double boosted_sobolev_norm(const Field& phi, const SobolevIndex& idx, double nu, double lambda,
                            double v, double p);

// Hamiltonian diagnostic of the full equation:
//   1/2 ||d_x u||^2 + 1/2 |||D_y|^{1/2} u||^2 + mu/(p+1) ||u||_{L^{p+1}}^{p+1}.
double energy(const Field& u, double p, int mu);

// Gagliardo-Nirenberg ratio
//   ||u||_{L^{q+1}}^{q+1} / ( ||d_x u||^{(q-1)/2} |||D_y|^{1/2}u||^{q-1} ||u||^{(5-q)/2} )
// for 1 < q < 5.  Throws DegenerateInputError on a vanishing denominator.
double gn_ratio(const Field& u, double q);

// Relative L2 mass of f in the outer 10% annulus of the box.
double tail_mass_fraction(const Field& f);
// Relative spectral L2 mass beyond 2/3 Nyquist in either axis.
double spectral_tail_fraction(const Field& f);

} // namespace hwlab

#endif
