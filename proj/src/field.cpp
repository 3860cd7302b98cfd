#include "hwlab/field.hpp"

#include <cmath>
#include <stdexcept>

#include "hwlab/fft.hpp"

namespace hwlab {

namespace {
void check_size(const GridSpec& g, std::size_t n, const char* what) {
    if (n != g.size()) {
        throw std::invalid_argument(std::string("Field: ") + what + " array size " +
                                    std::to_string(n) + " does not match grid size " +
                                    std::to_string(g.size()));
    }
}
} // namespace

Field Field::from_physical(const GridSpec& grid, std::vector<cplx> values) {
    check_size(grid, values.size(), "physical");
    Field f;
    f.grid_ = grid;
    f.values_ = std::move(values);
    f.spectrum_.resize(grid.size());
    fft::forward(grid, f.values_.data(), f.spectrum_.data());
    return f;
}

Field Field::from_spectral(const GridSpec& grid, std::vector<cplx> spectrum) {
    check_size(grid, spectrum.size(), "spectral");
    Field f;
    f.grid_ = grid;
    f.spectrum_ = std::move(spectrum);
    f.values_.resize(grid.size());
    fft::backward(grid, f.spectrum_.data(), f.values_.data());
    return f;
}

Field Field::from_function(const GridSpec& grid, const std::function<cplx(double, double)>& fn) {
    std::vector<cplx> v(grid.size());
    for (int ix = 0; ix < grid.modes_x; ++ix) {
        const double x = grid.x(ix);
        for (int iy = 0; iy < grid.modes_y; ++iy) {
            v[grid.index(ix, iy)] = fn(x, grid.y(iy));
        }
    }
    return from_physical(grid, std::move(v));
}

Field Field::zero(const GridSpec& grid) {
    return from_physical(grid, std::vector<cplx>(grid.size(), cplx(0.0, 0.0)));
}

bool Field::is_finite() const {
    for (const cplx& z : values_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

} // namespace hwlab
