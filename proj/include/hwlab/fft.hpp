#ifndef HWLAB_FFT_HPP
#define HWLAB_FFT_HPP

#include <complex>

#include "hwlab/grid.hpp"

namespace hwlab::fft {

using cplx = std::complex<double>;

// Forward transform: physical samples -> spectrum approximating the continuum
// Fourier transform fhat(xi,eta) = (2*pi)^{-1} * integral f exp(-i(x xi + y eta)),
// evaluated on the grid's frequency lattice in FFT bin order.  With this
// normalization the discrete Plancherel identity
//   sum |fhat|^2 dxi deta = sum |f|^2 dx dy
// holds exactly, and forward/backward compose to the identity.
//
// Buffers are row-major in x (index ix*Ny+iy) and may not alias.
// Thread safe: plans are cached per grid size behind a mutex and executed
// on internal per-call scratch.
void forward(const GridSpec& grid, const cplx* phys, cplx* spec);
void backward(const GridSpec& grid, const cplx* spec, cplx* phys);

} // namespace hwlab::fft

#endif
