#include "hwlab/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hwlab/errors.hpp"
#include "hwlab/fft.hpp"

namespace hwlab {

double freq_weight(double z, double s, bool homogeneous) {
    if (!homogeneous) return std::pow(1.0 + z * z, s);
    if (s == 0.0) return 1.0;
    if (z == 0.0) return 0.0;
    return std::pow(z * z, s);
}

double l2_norm(const Field& f) {
    double acc = 0.0;
    for (const cplx& z : f.values()) acc += std::norm(z);
    return std::sqrt(acc * f.grid().cell_area());
}

double lp_norm(const Field& f, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
    double acc = 0.0;
    for (const cplx& z : f.values()) acc += std::pow(std::abs(z), p);
    return std::pow(acc * f.grid().cell_area(), 1.0 / p);
}

double sobolev_norm(const Field& f, const SobolevIndex& idx) {
    if (!f.is_finite()) throw std::invalid_argument("sobolev_norm: field has non-finite values");
    const GridSpec& g = f.grid();
    std::vector<double> wx(g.modes_x), wy(g.modes_y);
    for (int i = 0; i < g.modes_x; ++i) wx[i] = freq_weight(g.freq_x(i), idx.s1, idx.homogeneous);
    for (int j = 0; j < g.modes_y; ++j) wy[j] = freq_weight(g.freq_y(j), idx.s2, idx.homogeneous);
    double acc = 0.0;
    auto spec = f.spectrum();
    for (int i = 0; i < g.modes_x; ++i) {
        double row = 0.0;
        for (int j = 0; j < g.modes_y; ++j) row += wy[j] * std::norm(spec[g.index(i, j)]);
        acc += wx[i] * row;
    }
    return std::sqrt(acc * g.dxi() * g.deta());
}

double tail_mass_fraction(const Field& f) {
    const GridSpec& g = f.grid();
    double total = 0.0, tail = 0.0;
    auto vals = f.values();
    for (int i = 0; i < g.modes_x; ++i) {
        const bool xout = std::abs(g.x(i)) > 0.9 * g.half_width_x;
        for (int j = 0; j < g.modes_y; ++j) {
            const double m = std::norm(vals[g.index(i, j)]);
            total += m;
            if (xout || std::abs(g.y(j)) > 0.9 * g.half_width_y) tail += m;
        }
    }
    if (total == 0.0) return 0.0;
    return std::sqrt(tail / total);
}

double spectral_tail_fraction(const Field& f) {
    const GridSpec& g = f.grid();
    double total = 0.0, tail = 0.0;
    auto spec = f.spectrum();
    const int cx = g.modes_x / 3, cy = g.modes_y / 3;
    for (int i = 0; i < g.modes_x; ++i) {
        const bool xout = std::abs(g.wavenumber_x(i)) > cx;
        for (int j = 0; j < g.modes_y; ++j) {
            const double m = std::norm(spec[g.index(i, j)]);
            total += m;
            if (xout || std::abs(g.wavenumber_y(j)) > cy) tail += m;
        }
    }
    if (total == 0.0) return 0.0;
    return std::sqrt(tail / total);
}

double weighted_norm_hkk(const Field& f, int k, double tail_tol) {
    if (k < 0 || k > 4) {
        throw std::invalid_argument("weighted_norm_hkk: supported order is 0 <= k <= 4, got " +
                                    std::to_string(k));
    }
    if (!f.is_finite()) throw std::invalid_argument("weighted_norm_hkk: non-finite field");
    const double tail = tail_mass_fraction(f);
    if (tail > tail_tol) {
        throw TailMassError("weighted_norm_hkk: relative mass " + std::to_string(tail) +
                            " in the outer 10% annulus exceeds " + std::to_string(tail_tol) +
                            "; weight invalid on a torus");
    }
    const GridSpec& g = f.grid();
    const std::size_t n = g.size();
    auto spec = f.spectrum();

    std::vector<cplx> dspec(n), dphys(n);
    double total = 0.0;
    for (int order = 0; order <= k; ++order) {
        double term_sq = 0.0;
        for (int jx = 0; jx <= order; ++jx) {
            const int jy = order - jx;
            for (int ix = 0; ix < g.modes_x; ++ix) {
                const cplx mx = std::pow(cplx(0.0, g.freq_x(ix)), jx);
                for (int iy = 0; iy < g.modes_y; ++iy) {
                    const cplx my = std::pow(cplx(0.0, g.freq_y(iy)), jy);
                    dspec[g.index(ix, iy)] = spec[g.index(ix, iy)] * mx * my;
                }
            }
            fft::backward(g, dspec.data(), dphys.data());
            const double wexp = k - order;
            double acc = 0.0;
            for (int ix = 0; ix < g.modes_x; ++ix) {
                const double ax = std::abs(g.x(ix));
                for (int iy = 0; iy < g.modes_y; ++iy) {
                    const double w = std::pow(1.0 + ax + std::abs(g.y(iy)), wexp);
                    acc += w * w * std::norm(dphys[g.index(ix, iy)]);
                }
            }
            term_sq += acc * g.cell_area();
        }
        total += std::sqrt(term_sq);
    }
    return total;
}

Field apply_multiplier(const Field& f, const std::function<cplx(double, double)>& symbol) {
    const GridSpec& g = f.grid();
    std::vector<cplx> out(g.size());
    auto spec = f.spectrum();
    for (int i = 0; i < g.modes_x; ++i) {
        const double xi = g.freq_x(i);
        for (int j = 0; j < g.modes_y; ++j) {
            const cplx s = symbol(xi, g.freq_y(j));
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
                throw std::invalid_argument("apply_multiplier: symbol non-finite at (" +
                                            std::to_string(xi) + ", " + std::to_string(g.freq_y(j)) + ")");
            }
            out[g.index(i, j)] = spec[g.index(i, j)] * s;
        }
    }
    return Field::from_spectral(g, std::move(out));
}

double boosted_sobolev_norm(const Field& phi, const SobolevIndex& idx, double nu, double lambda,
                            double v, double p) {
    if (!(nu > 0.0) || !(lambda > 0.0)) {
        throw std::invalid_argument("boosted_sobolev_norm: nu and lambda must be positive");
    }
    const GridSpec& g = phi.grid();
    const double rx = nu / lambda;
    const double ry = (nu * nu) / (lambda * lambda);
    std::vector<double> wx(g.modes_x), wy(g.modes_y);
    for (int i = 0; i < g.modes_x; ++i) {
        wx[i] = freq_weight(rx * g.freq_x(i) - 0.5 * v, idx.s1, idx.homogeneous);
    }
    for (int j = 0; j < g.modes_y; ++j) {
        wy[j] = freq_weight(ry * g.freq_y(j), idx.s2, idx.homogeneous);
    }
    double acc = 0.0;
    auto spec = phi.spectrum();
    for (int i = 0; i < g.modes_x; ++i) {
        double row = 0.0;
        for (int j = 0; j < g.modes_y; ++j) row += wy[j] * std::norm(spec[g.index(i, j)]);
        acc += wx[i] * row;
    }
    const double quad = std::sqrt(acc * g.dxi() * g.deta());
    return std::pow(lambda, -2.0 / (p - 1.0)) * std::pow(lambda / nu, 1.5) * quad;
}

double energy(const Field& u, double p, int mu) {
    if (!(p > 1.0)) throw std::invalid_argument("energy: requires p > 1");
    const GridSpec& g = u.grid();
    double dx2 = 0.0, dyh = 0.0;
    auto spec = u.spectrum();
    for (int i = 0; i < g.modes_x; ++i) {
        const double xi2 = g.freq_x(i) * g.freq_x(i);
        for (int j = 0; j < g.modes_y; ++j) {
            const double m = std::norm(spec[g.index(i, j)]);
            dx2 += xi2 * m;
            dyh += std::abs(g.freq_y(j)) * m;
        }
    }
    const double spec_meas = g.dxi() * g.deta();
    double lpp = 0.0;
    for (const cplx& z : u.values()) lpp += std::pow(std::abs(z), p + 1.0);
    lpp *= g.cell_area();
    return 0.5 * dx2 * spec_meas + 0.5 * dyh * spec_meas + (mu / (p + 1.0)) * lpp;
}

double gn_ratio(const Field& u, double q) {
    if (!(q > 1.0) || !(q < 5.0)) throw std::invalid_argument("gn_ratio: requires 1 < q < 5");
    const GridSpec& g = u.grid();
    double dx2 = 0.0, dyh = 0.0;
    auto spec = u.spectrum();
    for (int i = 0; i < g.modes_x; ++i) {
        const double xi2 = g.freq_x(i) * g.freq_x(i);
        for (int j = 0; j < g.modes_y; ++j) {
            const double m = std::norm(spec[g.index(i, j)]);
            dx2 += xi2 * m;
            dyh += std::abs(g.freq_y(j)) * m;
        }
    }
    const double spec_meas = g.dxi() * g.deta();
    const double ndx = std::sqrt(dx2 * spec_meas);
    const double ndy = std::sqrt(dyh * spec_meas);
    const double nl2 = l2_norm(u);
    if (ndx < 1e-300 || ndy < 1e-300 || nl2 < 1e-300) {
        throw DegenerateInputError("gn_ratio: vanishing derivative or L2 norm");
    }
    double num = 0.0;
    for (const cplx& z : u.values()) num += std::pow(std::abs(z), q + 1.0);
    num *= g.cell_area();
    return num / (std::pow(ndx, 0.5 * (q - 1.0)) * std::pow(ndy, q - 1.0) * std::pow(nl2, 0.5 * (5.0 - q)));
}

} // namespace hwlab
