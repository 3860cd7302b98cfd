#include "hwlab/grid.hpp"

#include <stdexcept>
#include <string>

namespace hwlab {

GridSpec make_grid(double Lx, double Ly, int Nx, int Ny) {
    if (!(Lx > 0.0) || !(Ly > 0.0)) {
        throw std::invalid_argument("make_grid: box half-widths must be positive, got Lx=" +
                                    std::to_string(Lx) + " Ly=" + std::to_string(Ly));
    }
    auto check_modes = [](int n, const char* axis) {
        if (n < 16) {
            throw std::invalid_argument(std::string("make_grid: mode count in ") + axis +
                                        " must be >= 16, got " + std::to_string(n));
        }
        if (n % 2 != 0) {
            throw std::invalid_argument(std::string("make_grid: mode count in ") + axis +
                                        " must be even, got " + std::to_string(n));
        }
    };
    check_modes(Nx, "x");
    check_modes(Ny, "y");
    return GridSpec{Lx, Ly, Nx, Ny};
}

} // namespace hwlab
