#include "hwlab/groundstate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hwlab/errors.hpp"
#include "hwlab/fft.hpp"
#include "hwlab/resample.hpp"

namespace hwlab {

namespace {
double lsymbol(const GridSpec& g, int i, int j, double beta) {
    const double xi = g.freq_x(i);
    return xi * xi + std::abs(g.freq_y(j)) + beta;
}
} // namespace

double groundstate_residual(const Field& Q, double p, double beta) {
    const GridSpec& g = Q.grid();
    std::vector<cplx> nl(g.size());
    auto vals = Q.values();
    for (std::size_t i = 0; i < nl.size(); ++i) {
        nl[i] = std::pow(std::abs(vals[i]), p - 1.0) * vals[i];
    }
    std::vector<cplx> nlspec(g.size());
    fft::forward(g, nl.data(), nlspec.data());
    auto spec = Q.spectrum();
    double acc = 0.0;
    for (int i = 0; i < g.modes_x; ++i) {
        for (int j = 0; j < g.modes_y; ++j) {
            const std::size_t idx = g.index(i, j);
            acc += std::norm(lsymbol(g, i, j, beta) * spec[idx] - nlspec[idx]);
        }
    }
    const double qn = l2_norm(Q);
    if (qn == 0.0) throw DegenerateInputError("groundstate_residual: zero profile");
    return std::sqrt(acc * g.dxi() * g.deta()) / qn;
}

Field default_groundstate_seed(const GridSpec& grid, double beta) {
    return Field::from_function(grid, [beta](double x, double y) {
        return cplx(std::exp(-(beta * x * x + beta * std::abs(y))), 0.0);
    });
}

GroundStateResult petviashvili(double p, double beta, const GridSpec& grid,
                               const PetviashviliOptions& opts) {
    if (!(p > 1.0) || !(p < 5.0)) {
        throw std::invalid_argument("petviashvili: existence range is 1 < p < 5, got p=" +
                                    std::to_string(p));
    }
    if (!(beta > 0.0)) throw std::invalid_argument("petviashvili: beta must be positive");

    Field Q = opts.seed ? *opts.seed : default_groundstate_seed(grid, beta);
    if (Q.grid() != grid) throw std::invalid_argument("petviashvili: seed grid mismatch");

    const std::size_t n = grid.size();
    const double gamma = p / (p - 1.0);
    std::vector<cplx> nl(n), nlspec(n), newspec(n);
    double M = 1.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        auto vals = Q.values();
        for (std::size_t i = 0; i < n; ++i) {
            nl[i] = std::pow(std::abs(vals[i]), p - 1.0) * vals[i];
        }
        fft::forward(grid, nl.data(), nlspec.data());
        auto spec = Q.spectrum();
        double num = 0.0, den = 0.0;
        for (int i = 0; i < grid.modes_x; ++i) {
            for (int j = 0; j < grid.modes_y; ++j) {
                const std::size_t idx = grid.index(i, j);
                num += lsymbol(grid, i, j, beta) * std::norm(spec[idx]);
                den += (std::conj(spec[idx]) * nlspec[idx]).real();
            }
        }
        if (den == 0.0) throw ConvergenceError("petviashvili: degenerate stabilization denominator");
        M = num / den;
        if (M < 1e-8 || M > 1e8) {
            throw ConvergenceError("petviashvili: stabilization factor " + std::to_string(M) +
                                   " out of range, iteration diverged");
        }
        const double Mg = std::pow(M, gamma);
        for (int i = 0; i < grid.modes_x; ++i) {
            for (int j = 0; j < grid.modes_y; ++j) {
                const std::size_t idx = grid.index(i, j);
                newspec[idx] = Mg * nlspec[idx] / lsymbol(grid, i, j, beta);
            }
        }
        Q = Field::from_spectral(grid, newspec);
        const double res = groundstate_residual(Q, p, beta);
        if (res <= opts.tol) {
            // unimodular normalization: spatial mean real positive
            cplx mean(0.0, 0.0);
            for (const cplx& z : Q.values()) mean += z;
            if (std::abs(mean) > 0.0) {
                const cplx phase = std::conj(mean) / std::abs(mean);
                std::vector<cplx> v(Q.values().begin(), Q.values().end());
                for (cplx& z : v) z *= phase;
                Q = Field::from_physical(grid, std::move(v));
            }
            return GroundStateResult{std::move(Q), beta, p, res, M, it};
        }
    }
    throw ConvergenceError("petviashvili: no convergence within " + std::to_string(opts.max_iter) +
                           " iterations (residual " + std::to_string(groundstate_residual(Q, p, beta)) +
                           ")");
}

Field rescale_groundstate(const Field& Q1, double beta, double p) {
    if (!(beta > 0.0)) throw std::invalid_argument("rescale_groundstate: beta must be positive");
    if (beta == 1.0) return Q1;
    const GridSpec& g = Q1.grid();
    const GridSpec scaled{g.half_width_x / std::sqrt(beta), g.half_width_y / beta, g.modes_x,
                          g.modes_y};
    const double amp = std::pow(beta, 1.0 / (p - 1.0));
    std::vector<cplx> v(Q1.values().begin(), Q1.values().end());
    for (cplx& z : v) z *= amp;
    return Field::from_physical(scaled, std::move(v));
}

Field rescale_groundstate_onto(const Field& Q1, double beta, double p, const GridSpec& target,
                               double tail_tol) {
    if (!(beta > 0.0)) throw std::invalid_argument("rescale_groundstate_onto: beta must be positive");
    const GridSpec& gs = Q1.grid();
    if (std::sqrt(beta) * target.half_width_x > gs.half_width_x * (1.0 + 1e-12) ||
        beta * target.half_width_y > gs.half_width_y * (1.0 + 1e-12)) {
        throw std::invalid_argument(
            "rescale_groundstate_onto: target box samples outside the source box; the periodic "
            "interpolant would wrap images into view");
    }
    Field out = sample_affine(Q1, target, std::sqrt(beta), 0.0, beta, 0.0);
    const double amp = std::pow(beta, 1.0 / (p - 1.0));
    std::vector<cplx> v(out.values().begin(), out.values().end());
    for (cplx& z : v) z *= amp;
    Field res = Field::from_physical(target, std::move(v));
    const double tail = tail_mass_fraction(res);
    if (tail > tail_tol) {
        throw TailMassError("rescale_groundstate_onto: relative tail mass " + std::to_string(tail) +
                            " exceeds " + std::to_string(tail_tol) +
                            "; profile does not fit the target box");
    }
    return res;
}

cplx hs_inner_product(const Field& f, const Field& g, const SobolevIndex& idx) {
    if (!idx.homogeneous) {
        throw std::invalid_argument("hs_inner_product: defined for homogeneous weights");
    }
    if (!(f.grid() == g.grid())) {
        throw std::invalid_argument("hs_inner_product: fields must share a grid");
    }
    const GridSpec& gr = f.grid();
    std::vector<double> wx(gr.modes_x), wy(gr.modes_y);
    for (int i = 0; i < gr.modes_x; ++i) wx[i] = freq_weight(gr.freq_x(i), idx.s1, true);
    for (int j = 0; j < gr.modes_y; ++j) wy[j] = freq_weight(gr.freq_y(j), idx.s2, true);
    cplx acc(0.0, 0.0);
    auto fs = f.spectrum();
    auto gs = g.spectrum();
    for (int i = 0; i < gr.modes_x; ++i) {
        cplx row(0.0, 0.0);
        for (int j = 0; j < gr.modes_y; ++j) {
            row += wy[j] * fs[gr.index(i, j)] * std::conj(gs[gr.index(i, j)]);
        }
        acc += wx[i] * row;
    }
    return acc * (gr.dxi() * gr.deta());
}

} // namespace hwlab
