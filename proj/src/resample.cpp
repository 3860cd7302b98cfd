#include "hwlab/resample.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace hwlab {

namespace {
using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CMap = Eigen::Map<const Mat>;
} // namespace

Field sample_affine(const Field& src, const GridSpec& target, double ax, double bx, double ay,
                    double by) {
    const GridSpec& gs = src.grid();
    // f(X,Y) = (1/2pi) sum fhat(xi,eta) e^{i(X xi + Y eta)} dxi deta
    Mat A(target.modes_x, gs.modes_x);
    for (int j = 0; j < target.modes_x; ++j) {
        const double X = ax * target.x(j) + bx;
        for (int k = 0; k < gs.modes_x; ++k) {
            A(j, k) = std::polar(1.0, gs.freq_x(k) * X);
        }
    }
    Mat B(target.modes_y, gs.modes_y);
    for (int l = 0; l < target.modes_y; ++l) {
        const double Y = ay * target.y(l) + by;
        for (int m = 0; m < gs.modes_y; ++m) {
            B(l, m) = std::polar(1.0, gs.freq_y(m) * Y);
        }
    }
    CMap S(src.spectrum().data(), gs.modes_x, gs.modes_y);
    const double scale = gs.dxi() * gs.deta() / (2.0 * M_PI);
    Mat out = (A * (S * B.transpose())) * scale;
    std::vector<cplx> vals(out.data(), out.data() + target.size());
    return Field::from_physical(target, std::move(vals));
}

Field resample_to(const Field& src, const GridSpec& target) {
    return sample_affine(src, target, 1.0, 0.0, 1.0, 0.0);
}

std::vector<cplx> spectrum_at(const Field& f, const std::vector<double>& xis,
                              const std::vector<double>& etas) {
    const GridSpec& g = f.grid();
    const int nx = static_cast<int>(xis.size());
    const int ny = static_cast<int>(etas.size());
    Mat U(nx, g.modes_x);
    for (int i = 0; i < nx; ++i) {
        for (int a = 0; a < g.modes_x; ++a) {
            U(i, a) = std::polar(1.0, -xis[i] * g.x(a));
        }
    }
    Mat V(g.modes_y, ny);
    for (int b = 0; b < g.modes_y; ++b) {
        for (int j = 0; j < ny; ++j) {
            V(b, j) = std::polar(1.0, -g.y(b) * etas[j]);
        }
    }
    CMap P(f.values().data(), g.modes_x, g.modes_y);
    const double scale = g.cell_area() / (2.0 * M_PI);
    Mat out = (U * (P * V)) * scale;
    return std::vector<cplx>(out.data(), out.data() + static_cast<std::size_t>(nx) * ny);
}

} // namespace hwlab
