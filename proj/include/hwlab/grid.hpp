#ifndef HWLAB_GRID_HPP
#define HWLAB_GRID_HPP

#include <cmath>
#include <cstddef>

namespace hwlab {

// Uniform discretization of the periodic box [-Lx,Lx] x [-Ly,Ly].
//
// Physical nodes   x_i = -Lx + i * dx,          i = 0 .. Nx-1,  dx = 2*Lx/Nx.
// Frequency lattice xi_k = pi*k/Lx,             k = -Nx/2 .. Nx/2-1,
// stored in FFT bin order (k = i for i < Nx/2, k = i - Nx otherwise).
struct GridSpec {
    double half_width_x = 0.0; // Lx
    double half_width_y = 0.0; // Ly
    int modes_x = 0;           // Nx
    int modes_y = 0;           // Ny

    double dx() const { return 2.0 * half_width_x / modes_x; }
    double dy() const { return 2.0 * half_width_y / modes_y; }
    double x(int i) const { return -half_width_x + i * dx(); }
    double y(int j) const { return -half_width_y + j * dy(); }

    int wavenumber_x(int i) const { return i < modes_x / 2 ? i : i - modes_x; }
    int wavenumber_y(int j) const { return j < modes_y / 2 ? j : j - modes_y; }
    double freq_x(int i) const { return M_PI * wavenumber_x(i) / half_width_x; }
    double freq_y(int j) const { return M_PI * wavenumber_y(j) / half_width_y; }

    // frequency-cell widths; the spectral quadrature weight is dxi()*deta()
    double dxi() const { return M_PI / half_width_x; }
    double deta() const { return M_PI / half_width_y; }

    // largest positive lattice frequency pi*(N/2-1)/L
    double max_freq_x() const { return M_PI * (modes_x / 2 - 1) / half_width_x; }
    double max_freq_y() const { return M_PI * (modes_y / 2 - 1) / half_width_y; }
    // magnitude of the Nyquist frequency pi*(N/2)/L
    double nyquist_x() const { return M_PI * (modes_x / 2) / half_width_x; }
    double nyquist_y() const { return M_PI * (modes_y / 2) / half_width_y; }

    double cell_area() const { return dx() * dy(); }
    double box_area() const { return 4.0 * half_width_x * half_width_y; }
    std::size_t size() const { return static_cast<std::size_t>(modes_x) * modes_y; }
    // storage is row-major in x: flat index = ix * Ny + iy
    std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(ix) * modes_y + iy; }

    bool operator==(const GridSpec&) const = default;
};

// Validates box sizes and mode counts (even, >= 16) and builds the spec.
GridSpec make_grid(double Lx, double Ly, int Nx, int Ny);

} // namespace hwlab

#endif
