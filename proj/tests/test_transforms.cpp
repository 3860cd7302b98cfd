#include <doctest.h>

#include <cmath>

#include "hwlab/errors.hpp"
#include "hwlab/norms.hpp"
#include "hwlab/transforms.hpp"

using namespace hwlab;

namespace {
Field gaussian(const GridSpec& g) {
    return Field::from_function(g, [](double x, double y) {
        return cplx(std::exp(-(x * x + y * y) / 2.0), 0.0);
    });
}
} // namespace

TEST_CASE("classify_criticality trichotomy") {
    CHECK(classify_criticality(5.0, 1.0, 0.0) == Criticality::critical); // energy space at p=5
    CHECK(classify_criticality(3.0, 0.0, 1.0) == Criticality::subcritical);
    CHECK(classify_criticality(7.0, 1.0, 0.0) == Criticality::supercritical);
    CHECK(classify_criticality(3.0, 0.5, 0.0) == Criticality::critical); // 1/2 = 3/2 - 1
    CHECK_THROWS_AS(classify_criticality(1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("scale_solution identity, norm laws, criticality consistency") {
    const GridSpec g = make_grid(15.0, 15.0, 128, 128);
    const Field u = gaussian(g);

    SUBCASE("lambda = 1 is the identity") {
        const ScaledSolution s = scale_solution(u, 0.7, 1.0, 3.0);
        CHECK(s.time == doctest::Approx(0.7));
        CHECK(s.field.grid() == g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(std::abs(s.field.values()[i] - u.values()[i]) < 1e-15);
        }
    }

    SUBCASE("L2 scaling law") {
        const double lam = 0.5, p = 3.0;
        const ScaledSolution s = scale_solution(u, 0.0, lam, p);
        CHECK(l2_norm(s.field) ==
              doctest::Approx(std::pow(lam, 1.5 - 2.0 / (p - 1.0)) * l2_norm(u)).epsilon(1e-8));
    }

    SUBCASE("critical homogeneous norm preserved, p=5, (s1,s2)=(1,0)") {
        const double p = 5.0;
        const SobolevIndex idx{1.0, 0.0, true};
        const double before = sobolev_norm(u, idx);
        const ScaledSolution s = scale_solution(u, 0.0, 0.5, p);
        CHECK(sobolev_norm(s.field, idx) == doctest::Approx(before).epsilon(1e-8));
    }

    SUBCASE("supercritical norms shrink, subcritical grow as lambda -> 0") {
        // p = 7: (1,0) supercritical; p = 3: (0,1) subcritical
        const SobolevIndex idx_sup{1.0, 0.0, true};
        const SobolevIndex idx_sub{0.0, 1.0, true};
        double prev_sup = sobolev_norm(u, idx_sup);
        double prev_sub = sobolev_norm(u, idx_sub);
        for (double lam : {0.5, 0.25}) {
            const double ns = sobolev_norm(scale_solution(u, 0.0, lam, 7.0).field, idx_sup);
            const double nb = sobolev_norm(scale_solution(u, 0.0, lam, 3.0).field, idx_sub);
            CHECK(ns < prev_sup);
            CHECK(nb > prev_sub);
            prev_sup = ns;
            prev_sub = nb;
        }
    }

    CHECK_THROWS_AS(scale_solution(u, 0.0, -1.0, 3.0), std::invalid_argument);
}

TEST_CASE("round_boost lands on the representable lattice") {
    const GridSpec g = make_grid(20.0, 20.0, 64, 64);
    const double q = 2.0 * M_PI / 20.0;
    CHECK(round_boost(0.0, g) == 0.0);
    CHECK(round_boost(3.1 * q, g) == doctest::Approx(3.0 * q));
    CHECK(round_boost(-7.7 * q, g) == doctest::Approx(-8.0 * q));
}

TEST_CASE("build_profile at t=0 with v=0, lambda=nu reduces to a scaled copy") {
    const GridSpec g = make_grid(10.0, 10.0, 64, 64);
    const Field w = gaussian(g);
    ModelParams mp;
    mp.p = 3.0;
    mp.nu = 0.25;
    mp.lambda = 0.25;
    mp.v = 0.0;
    const Field u = build_profile(w, mp, 0.0, g);
    const double amp = std::pow(mp.lambda, -1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        worst = std::max(worst, std::abs(u.values()[i] - amp * w.values()[i]));
    }
    CHECK(worst < 1e-9 * amp);
}

TEST_CASE("build_profile spectral identity at t=0") {
    // uhat(0)(xi,eta) = lambda^{-2/(p-1)} (lambda/nu)^3 phihat((lambda/nu)(xi+v/2), (lambda/nu)^2 eta)
    const GridSpec g = make_grid(10.0, 10.0, 64, 64);
    const Field w = gaussian(g);
    ModelParams mp;
    mp.p = 3.0;
    mp.nu = 0.2;
    mp.lambda = 0.1;
    mp.v = 4.0 * M_PI / 5.0;
    const GridSpec target = make_grid(5.0, 2.5, 128, 128);
    const Field u = build_profile(w, mp, 0.0, target);
    const double pref = std::pow(mp.lambda, -1.0) * std::pow(mp.lambda / mp.nu, 3.0);
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < target.modes_x; ++i) {
        const double xi = target.freq_x(i);
        for (int j = 0; j < target.modes_y; ++j) {
            const double eta = target.freq_y(j);
            // interpolate w's spectrum only at exact source-lattice points
            const double sx = (mp.lambda / mp.nu) * (xi + 0.5 * mp.v);
            const double sy = std::pow(mp.lambda / mp.nu, 2.0) * eta;
            const double kx = sx / g.dxi(), ky = sy / g.deta();
            const double rx = std::round(kx), ry = std::round(ky);
            if (std::abs(kx - rx) > 1e-9 || std::abs(ky - ry) > 1e-9) continue;
            if (std::abs(rx) >= g.modes_x / 2 || std::abs(ry) >= g.modes_y / 2) continue;
            const int ix = rx >= 0 ? static_cast<int>(rx) : static_cast<int>(rx) + g.modes_x;
            const int iy = ry >= 0 ? static_cast<int>(ry) : static_cast<int>(ry) + g.modes_y;
            const cplx expect = pref * w.spectral(ix, iy);
            worst = std::max(worst, std::abs(u.spectral(i, j) - expect));
            scale = std::max(scale, std::abs(expect));
        }
    }
    CHECK(scale > 0.0);
    CHECK(worst / scale < 1e-8);
}

TEST_CASE("build_profile difference linearity in the amplitude") {
    const GridSpec g = make_grid(10.0, 10.0, 64, 64);
    const Field w = gaussian(g);
    ModelParams mp;
    mp.p = 3.0;
    mp.nu = 0.2;
    mp.lambda = 0.2;
    mp.v = 0.0;
    const GridSpec target = make_grid(10.0, 10.0, 64, 64);
    const Field ua = build_profile_ode(1.0, w, mp, 0.0, target);
    const Field ub = build_profile_ode(0.8, w, mp, 0.0, target);
    const Field u1 = build_profile_ode(1.0, w, mp, 0.0, target); // a = 1 reference
    double worst = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        worst = std::max(worst,
                         std::abs((ua.values()[i] - ub.values()[i]) - 0.2 * u1.values()[i]));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("build_profile rejects boosts beyond the grid") {
    const GridSpec g = make_grid(10.0, 10.0, 64, 64);
    const Field w = gaussian(g);
    ModelParams mp;
    mp.p = 3.0;
    mp.nu = 0.2;
    mp.lambda = 0.1;
    mp.v = 500.0;
    CHECK_THROWS_AS(build_profile(w, mp, 0.0, make_grid(5.0, 2.5, 64, 64)),
                    std::invalid_argument);
}

TEST_CASE("inflation_parameters recipe and contracts") {
    // worked example: p=3, s1=1/4, s2=0, nu=0.05, eps=0.1
    const InflationParameters par = inflation_parameters(3.0, 0.25, 0.0, 0.1, 0.05);
    const double delta = std::log(0.1) / std::log(0.05);
    const double sigma = (1.5 - 0.25 + delta) / (0.5 - 0.25);
    CHECK(par.delta == doctest::Approx(delta).epsilon(1e-12));
    CHECK(par.sigma == doctest::Approx(sigma).epsilon(1e-12));
    CHECK(par.delta == doctest::Approx(0.7686).epsilon(1e-4));
    CHECK(par.sigma == doctest::Approx(8.0744).epsilon(1e-4));
    CHECK(par.lambda == doctest::Approx(std::pow(0.05, sigma)).epsilon(1e-12));
    CHECK(par.sigma > 1.0);
    CHECK(par.lambda < 0.05);

    // eps = nu gives delta = 1
    CHECK(inflation_parameters(7.0, 1.0, 0.0, 0.05, 0.05).delta == doctest::Approx(1.0));

    // sigma > 1 across a small sweep of valid inputs
    for (double nu : {0.2, 0.05, 0.01}) {
        for (double eps : {0.5, 0.1}) {
            CHECK(inflation_parameters(7.0, 1.0, 0.0, eps, nu).sigma > 1.0);
        }
    }

    CHECK_THROWS_AS(inflation_parameters(3.0, 0.0, 1.0, 0.1, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(inflation_parameters(3.0, 0.25, 0.0, 1.5, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(inflation_parameters(3.0, 0.0, 0.0, 0.1, 0.05), std::invalid_argument);
}

TEST_CASE("decoherence_parameters satisfies the defining constraint") {
    const double p = 3.0, s1 = -1.0, eps = 0.1, nu = 0.01, sigma = 0.1;
    const double v = decoherence_parameters(p, s1, eps, nu, sigma);
    const double lambda = std::pow(nu, sigma);
    const double lhs = std::pow(lambda, -2.0 / (p - 1.0)) * std::pow(lambda / nu, 1.5) *
                       std::pow(std::abs(v), s1);
    CHECK(std::abs(lhs - eps) / eps < 1e-12);

    // |v| grows as nu decreases
    double prev = 0.0;
    for (double n : {0.1, 0.05, 0.01, 0.001}) {
        const double vv = decoherence_parameters(p, s1, eps, n, sigma);
        CHECK(vv > prev);
        prev = vv;
    }
    CHECK(prev >= 1.0);

    CHECK_THROWS_AS(decoherence_parameters(p, 0.0, eps, nu, sigma), std::invalid_argument);
}
