#ifndef HWLAB_TRANSFORMS_HPP
#define HWLAB_TRANSFORMS_HPP

#include "hwlab/dynamics.hpp"
#include "hwlab/field.hpp"

namespace hwlab {

enum class Criticality { subcritical, critical, supercritical };

// Sign of s1 + 2 s2 - (3/2 - 2/(p-1)); |.| <= 1e-12 counts as critical.
Criticality classify_criticality(double p, double s1, double s2);

struct ScaledSolution {
    Field field;
    double time = 0.0;
};

// u_lambda(t,x,y) = lambda^{-2/(p-1)} u(t/lambda^2, x/lambda, y/lambda^2).
// Given u at time `time`, returns u_lambda at time lambda^2 * time.  The
// samples are carried to the rescaled box (lambda*Lx, lambda^2*Ly) on the
// same index lattice, which realizes the rescaling exactly (the trigonometric
// interpolant of the result is the rescaled interpolant of the input).
ScaledSolution scale_solution(const Field& u, double time, double lambda, double p);

// Rounds a boost velocity to the nearest 2*pi*m/Lx so exp(-i v x / 2) is
// exactly periodic on the target box.
double round_boost(double v, const GridSpec& grid);

// u^{(a,nu,lambda,v)}(t) sampled on `target`:
//   lambda^{-2/(p-1)} e^{-i v x/2} e^{-i |v|^2 t/4}
//     phi(t/lambda^2, (nu/lambda)(x+vt), (nu^2/lambda^2) y),
// where phi_rescaled is the phi-field at the rescaled time t/lambda^2.
// Requires the boosted spectrum (occupied band scaled by nu/lambda and
// shifted by v/2) to fit within 2/3 Nyquist of the target grid.
Field build_profile(const Field& phi_rescaled, const ModelParams& params, double t,
                    const GridSpec& target);

// Convenience form using the exact zero-dispersion flow of a*w as phi.
Field build_profile_ode(double a, const Field& w, const ModelParams& params, double t,
                        const GridSpec& target);

struct InflationParameters {
    double lambda = 0.0;
    double sigma = 0.0;
    double delta = 0.0;
};

// Norm-inflation recipe (case of nonnegative indices):
//   delta = ln(eps)/ln(nu),
//   sigma = (3/2 - s1 - 2 s2 + delta) / (3/2 - 2/(p-1) - s1 - 2 s2) > 1,
//   lambda = nu^sigma.
// Requires a supercritical triple with s1, s2 >= 0 (not both zero) and
// 0 < eps, nu < 1.
InflationParameters inflation_parameters(double p, double s1, double s2, double eps, double nu);

// Decoherence boost recipe for s1 < 0:
//   |v| = nu^{(1/s1)(3/2 (1-sigma) + 2 sigma/(p-1))} * eps^{1/s1},
// the positive solution of lambda^{-2/(p-1)} (lambda/nu)^{3/2} |v|^{s1} = eps
// with lambda = nu^sigma.
double decoherence_parameters(double p, double s1, double eps, double nu, double sigma);

} // namespace hwlab

#endif
