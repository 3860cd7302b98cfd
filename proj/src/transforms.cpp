#include "hwlab/transforms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hwlab/errors.hpp"
#include "hwlab/norms.hpp"
#include "hwlab/resample.hpp"

namespace hwlab {

Criticality classify_criticality(double p, double s1, double s2) {
    if (!(p > 1.0)) throw std::invalid_argument("classify_criticality: requires p > 1");
    const double gap = s1 + 2.0 * s2 - (1.5 - 2.0 / (p - 1.0));
    if (std::abs(gap) <= 1e-12) return Criticality::critical;
    return gap > 0.0 ? Criticality::subcritical : Criticality::supercritical;
}

ScaledSolution scale_solution(const Field& u, double time, double lambda, double p) {
    if (!(lambda > 0.0)) throw std::invalid_argument("scale_solution: lambda must be positive");
    if (!(p > 1.0)) throw std::invalid_argument("scale_solution: requires p > 1");
    const GridSpec& g = u.grid();
    const GridSpec scaled{lambda * g.half_width_x, lambda * lambda * g.half_width_y, g.modes_x,
                          g.modes_y};
    const double amp = std::pow(lambda, -2.0 / (p - 1.0));
    std::vector<cplx> v(u.values().begin(), u.values().end());
    for (cplx& z : v) z *= amp;
    Field out = Field::from_physical(scaled, std::move(v));
    const double tail = tail_mass_fraction(out);
    if (tail > 1e-10) {
        throw TailMassError("scale_solution: rescaled field has relative tail mass " +
                            std::to_string(tail) + " in the outer annulus");
    }
    return {std::move(out), lambda * lambda * time};
}

double round_boost(double v, const GridSpec& grid) {
    const double quantum = 2.0 * M_PI / grid.half_width_x;
    return quantum * std::round(v / quantum);
}

namespace {
// largest occupied |xi| of phi (relative threshold on the spectrum)
double occupied_band_x(const Field& phi, double rel_tol = 1e-10) {
    const GridSpec& g = phi.grid();
    auto spec = phi.spectrum();
    double peak = 0.0;
    for (const cplx& z : spec) peak = std::max(peak, std::abs(z));
    if (peak == 0.0) return 0.0;
    double band = 0.0;
    for (int i = 0; i < g.modes_x; ++i) {
        for (int j = 0; j < g.modes_y; ++j) {
            if (std::abs(spec[g.index(i, j)]) > rel_tol * peak) {
                band = std::max(band, std::abs(g.freq_x(i)));
                break;
            }
        }
    }
    return band;
}
} // namespace

Field build_profile(const Field& phi_rescaled, const ModelParams& params, double t,
                    const GridSpec& target) {
    const double nu = params.nu, lambda = params.lambda, v = params.v, p = params.p;
    if (!(nu > 0.0) || !(lambda > 0.0)) {
        throw std::invalid_argument("build_profile: nu and lambda must be positive");
    }
    const double band = (nu / lambda) * occupied_band_x(phi_rescaled) + 0.5 * std::abs(v);
    const double limit = (2.0 / 3.0) * target.nyquist_x();
    if (band > limit) {
        throw std::invalid_argument("build_profile: boosted spectrum reaches |xi|=" +
                                    std::to_string(band) + ", beyond 2/3 Nyquist " +
                                    std::to_string(limit) + " of the target grid");
    }
    Field out = sample_affine(phi_rescaled, target, nu / lambda, (nu / lambda) * v * t,
                              (nu * nu) / (lambda * lambda), 0.0);
    const double amp = std::pow(lambda, -2.0 / (p - 1.0));
    const double tphase = -0.25 * v * v * t;
    std::vector<cplx> vals(out.values().begin(), out.values().end());
    for (int ix = 0; ix < target.modes_x; ++ix) {
        const cplx ph = amp * std::polar(1.0, -0.5 * v * target.x(ix) + tphase);
        for (int iy = 0; iy < target.modes_y; ++iy) {
            vals[target.index(ix, iy)] *= ph;
        }
    }
    return Field::from_physical(target, std::move(vals));
}

Field build_profile_ode(double a, const Field& w, const ModelParams& params, double t,
                        const GridSpec& target) {
    std::vector<cplx> v(w.values().begin(), w.values().end());
    for (cplx& z : v) z *= a;
    Field phi0 = Field::from_physical(w.grid(), std::move(v));
    Field phi = ode_flow(phi0, t / (params.lambda * params.lambda), params.p, params.mu);
    return build_profile(phi, params, t, target);
}

InflationParameters inflation_parameters(double p, double s1, double s2, double eps, double nu) {
    if (classify_criticality(p, s1, s2) != Criticality::supercritical) {
        throw std::invalid_argument("inflation_parameters: (p, s1, s2) must be supercritical");
    }
    if (s1 < 0.0 || s2 < 0.0 || (s1 == 0.0 && s2 == 0.0)) {
        throw std::invalid_argument(
            "inflation_parameters: requires s1, s2 >= 0 and not both zero (case (i))");
    }
    if (!(eps > 0.0) || !(eps < 1.0) || !(nu > 0.0) || !(nu < 1.0)) {
        throw std::invalid_argument("inflation_parameters: need 0 < eps, nu < 1");
    }
    InflationParameters out;
    out.delta = std::log(eps) / std::log(nu);
    out.sigma = (1.5 - s1 - 2.0 * s2 + out.delta) / (1.5 - 2.0 / (p - 1.0) - s1 - 2.0 * s2);
    out.lambda = std::pow(nu, out.sigma);
    return out;
}

double decoherence_parameters(double p, double s1, double eps, double nu, double sigma) {
    if (!(s1 < 0.0)) throw std::invalid_argument("decoherence_parameters: requires s1 < 0");
    if (!(p > 1.0)) throw std::invalid_argument("decoherence_parameters: requires p > 1");
    if (!(eps > 0.0) || !(nu > 0.0) || !(nu < 1.0) || !(sigma > 0.0)) {
        throw std::invalid_argument("decoherence_parameters: need 0 < nu < 1, eps > 0, sigma > 0");
    }
    const double expo = (1.5 * (1.0 - sigma) + 2.0 * sigma / (p - 1.0)) / s1;
    return std::pow(nu, expo) * std::pow(eps, 1.0 / s1);
}

} // namespace hwlab
