#ifndef HWLAB_FIELD_HPP
#define HWLAB_FIELD_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "hwlab/grid.hpp"

namespace hwlab {

using cplx = std::complex<double>;

// Complex-valued function sampled on a GridSpec, carrying both the physical
// samples and the matching spectrum.  Immutable after construction; both
// representations are materialized eagerly so reads never race.
class Field {
  public:
    Field() = default;

    static Field from_physical(const GridSpec& grid, std::vector<cplx> values);
    static Field from_spectral(const GridSpec& grid, std::vector<cplx> spectrum);
    // sample f(x,y) on the grid
    static Field from_function(const GridSpec& grid, const std::function<cplx(double, double)>& f);
    static Field zero(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    std::span<const cplx> values() const { return values_; }
    std::span<const cplx> spectrum() const { return spectrum_; }
    cplx value(int ix, int iy) const { return values_[grid_.index(ix, iy)]; }
    cplx spectral(int ix, int iy) const { return spectrum_[grid_.index(ix, iy)]; }

    bool is_finite() const;

  private:
    GridSpec grid_;
    std::vector<cplx> values_;   // row-major in x
    std::vector<cplx> spectrum_; // FFT bin order, continuum-normalized
};

} // namespace hwlab

#endif
