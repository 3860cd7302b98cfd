#ifndef HWLAB_DYNAMICS_HPP
#define HWLAB_DYNAMICS_HPP

#include <vector>

#include "hwlab/field.hpp"

namespace hwlab {

// Construction parameters of the solution families.  nu = 1 selects the full
// equation i u_t + u_xx - |D_y| u = mu |u|^{p-1} u; nu < 1 the small-dispersion
// variant with nu^2 in front of both dispersive terms.  mu = 0 switches the
// nonlinearity off (diagnostic use only).
struct ModelParams {
    double p = 3.0;
    int mu = 1;
    double nu = 1.0;
    double a = 1.0;
    double lambda = 1.0;
    double v = 0.0;
    int k = 2;
};

// Validates the Theorem-2 parameter ranges (p > 1, mu in {-1,+1},
// 0 < nu <= lambda <= 1, a in [1/2, 2], |v| >= 1 when boosted).
void validate_theorem2_params(const ModelParams& p);

struct ConservationSample {
    double time = 0.0;
    double mass = 0.0;   // L2 norm
    double energy = 0.0; // nu-weighted Hamiltonian (matches energy() when nu = 1)
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Field> states;
    ModelParams params;
    std::vector<ConservationSample> conservation_log;

    const Field& final_state() const { return states.back(); }
};

struct EvolveOptions {
    int checkpoint_every = 1;          // store a state every this many steps
    bool dealias = true;               // 2/3-rule truncation after nonlinear substeps
    double resolution_tol = 1e-8;      // gate on the initial spectral tail
    double conservation_abort = 1e-6;  // relative mass-drift abort threshold
};

// Exact pointwise flow of i phi_t = mu |phi|^{p-1} phi:
// phi0 * exp(-i mu t |phi0|^{p-1}).
Field ode_flow(const Field& phi0, double t, double p, int mu);

// exp(-i t nu^2 (xi^2 + |eta|)) on the spectral side; nu = 0 is the identity,
// nu = 1 the semigroup of the full linear equation.
Field linear_propagator(const Field& f, double t, double nu);

// One Strang step: nonlinear half-step, full linear step, nonlinear half-step,
// with 2/3 truncation after each nonlinear substep when dealias is set.
// Dealiasing is skipped when params.nu == 0 (the equation is then a pointwise
// ODE with no spatial coupling to alias).
Field step_strang(const Field& f, double dt, const ModelParams& params, bool dealias = true);

// Integrates to time T with steps of ~dt (dt is rounded to divide T).
Trajectory evolve(const Field& f0, double T, double dt, const ModelParams& params,
                  const EvolveOptions& opts = {});

// Window constants for the small-dispersion approximation, T = c1 |log nu|^{c2}.
struct WindowConstants {
    double c1 = 0.5;
    double c2 = 0.5;
    double max_time(double nu) const;
};

// ||phi^{(a,nu)}(t) - phi^{(0)}(t)||_{H^{k,k}} for each t in t_list (ascending,
// within the configured window).  phi^{(a,nu)} is computed with evolve at
// resolution dt; phi^{(0)} is the exact ODE flow of a*w.
std::vector<double> lemma1_error(double a, const Field& w, double nu, int k,
                                 const std::vector<double>& t_list, const ModelParams& params,
                                 double dt, const WindowConstants& window = {});

} // namespace hwlab

#endif
