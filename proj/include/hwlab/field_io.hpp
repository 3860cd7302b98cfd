#ifndef HWLAB_FIELD_IO_HPP
#define HWLAB_FIELD_IO_HPP

#include <filesystem>

#include "hwlab/field.hpp"

namespace hwlab {

// Binary field file: magic "HWLAB1", then Lx, Ly as little-endian f64 and
// Nx, Ny as little-endian i64, then Nx*Ny complex samples as interleaved
// little-endian f64 pairs, row-major in x.  Round-trips bit-exactly.
void write_field(const std::filesystem::path& path, const Field& f);
Field read_field(const std::filesystem::path& path);

} // namespace hwlab

#endif
