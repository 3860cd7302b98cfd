#include "hwlab/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "hwlab/errors.hpp"
#include "hwlab/grid.hpp"

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; byte swapping is not implemented");

namespace hwlab {

namespace {
constexpr char kMagic[6] = {'H', 'W', 'L', 'A', 'B', '1'};
}

void write_field(const std::filesystem::path& path, const Field& f) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("write_field: cannot open " + path.string());
    out.write(kMagic, sizeof(kMagic));
    const GridSpec& g = f.grid();
    const double l[2] = {g.half_width_x, g.half_width_y};
    const std::int64_t n[2] = {g.modes_x, g.modes_y};
    out.write(reinterpret_cast<const char*>(l), sizeof(l));
    out.write(reinterpret_cast<const char*>(n), sizeof(n));
    out.write(reinterpret_cast<const char*>(f.values().data()),
              static_cast<std::streamsize>(f.values().size() * sizeof(cplx)));
    if (!out) throw Error("write_field: short write to " + path.string());
}

Field read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("read_field: cannot open " + path.string());
    char magic[6];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw Error("read_field: " + path.string() + " is not a HWLAB1 field file");
    }
    double l[2];
    std::int64_t n[2];
    in.read(reinterpret_cast<char*>(l), sizeof(l));
    in.read(reinterpret_cast<char*>(n), sizeof(n));
    if (!in) throw Error("read_field: truncated header in " + path.string());
    if (n[0] <= 0 || n[1] <= 0 || n[0] > (1 << 20) || n[1] > (1 << 20)) {
        throw Error("read_field: implausible mode counts in " + path.string());
    }
    const GridSpec g = make_grid(l[0], l[1], static_cast<int>(n[0]), static_cast<int>(n[1]));
    std::vector<cplx> vals(g.size());
    in.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(cplx)));
    if (!in) throw Error("read_field: truncated samples in " + path.string());
    return Field::from_physical(g, std::move(vals));
}

} // namespace hwlab
