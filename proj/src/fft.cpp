#include "hwlab/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <utility>

namespace hwlab::fft {

namespace {

// RAII buffer from fftw_malloc so every execution sees the same alignment the
// plans were created with (keeps plan selection, and hence output, identical
// from run to run).
struct AlignedBuffer {
    fftw_complex* data = nullptr;
    explicit AlignedBuffer(std::size_t n) { data = fftw_alloc_complex(n); }
    ~AlignedBuffer() { fftw_free(data); }
    AlignedBuffer(const AlignedBuffer&) = delete;
    AlignedBuffer& operator=(const AlignedBuffer&) = delete;
};

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int nx, int ny) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(nx, ny);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    AlignedBuffer in(n), out(n);
    PlanPair p;
    p.fwd = fftw_plan_dft_2d(nx, ny, in.data, out.data, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_2d(nx, ny, in.data, out.data, FFTW_BACKWARD, FFTW_ESTIMATE);
    return cache.emplace(key, p).first->second;
}

inline double mode_sign(const GridSpec&, int ix, int iy) {
    // exp(i*pi*(kx+ky)) for the -L grid origin; parity of k equals parity of the bin
    return ((ix + iy) % 2 == 0) ? 1.0 : -1.0;
}

} // namespace

void forward(const GridSpec& g, const cplx* phys, cplx* spec) {
    const std::size_t n = g.size();
    PlanPair& p = plans_for(g.modes_x, g.modes_y);
    AlignedBuffer in(n), out(n);
    std::memcpy(in.data, phys, n * sizeof(cplx));
    fftw_execute_dft(p.fwd, in.data, out.data);
    const double scale = g.dx() * g.dy() / (2.0 * M_PI);
    auto* o = reinterpret_cast<cplx*>(out.data);
    for (int ix = 0; ix < g.modes_x; ++ix) {
        for (int iy = 0; iy < g.modes_y; ++iy) {
            const std::size_t idx = g.index(ix, iy);
            spec[idx] = o[idx] * (scale * mode_sign(g, ix, iy));
        }
    }
}

void backward(const GridSpec& g, const cplx* spec, cplx* phys) {
    const std::size_t n = g.size();
    PlanPair& p = plans_for(g.modes_x, g.modes_y);
    AlignedBuffer in(n), out(n);
    auto* i = reinterpret_cast<cplx*>(in.data);
    const double scale = g.dx() * g.dy() / (2.0 * M_PI);
    for (int ix = 0; ix < g.modes_x; ++ix) {
        for (int iy = 0; iy < g.modes_y; ++iy) {
            const std::size_t idx = g.index(ix, iy);
            i[idx] = spec[idx] * (mode_sign(g, ix, iy) / scale);
        }
    }
    fftw_execute_dft(p.bwd, in.data, out.data);
    const double inv_n = 1.0 / static_cast<double>(n);
    auto* o = reinterpret_cast<cplx*>(out.data);
    for (std::size_t idx = 0; idx < n; ++idx) phys[idx] = o[idx] * inv_n;
}

} // namespace hwlab::fft
