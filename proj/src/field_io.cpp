#include <cstring>
#include <fstream>
#include <vector>

#include "gpe2/grid.hpp"

namespace gpe2 {
namespace {

constexpr char kMagic[4] = {'G', 'P', 'E', '2'};
constexpr std::uint16_t kFormatVersion = 1;

void put_u16(std::vector<unsigned char>& b, std::uint16_t v) {
    b.push_back(static_cast<unsigned char>(v & 0xff));
    b.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& b, std::uint32_t v) {
    for (int k = 0; k < 4; ++k) b.push_back(static_cast<unsigned char>((v >> (8 * k)) & 0xff));
}

void put_f64(std::vector<unsigned char>& b, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int k = 0; k < 8; ++k) b.push_back(static_cast<unsigned char>((bits >> (8 * k)) & 0xff));
}

std::uint16_t get_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

double get_f64(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(p[k]) << (8 * k);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

} // namespace

void save_field(const ScalarField& f, const std::string& path) {
    const Grid2D& g = f.grid();
    std::vector<unsigned char> buf;
    buf.reserve(18 + 8 * g.size());
    buf.insert(buf.end(), kMagic, kMagic + 4);
    put_u16(buf, kFormatVersion);
    put_u32(buf, static_cast<std::uint32_t>(g.n));
    put_f64(buf, g.half_width);
    put_f64(buf, g.omega);
    for (double v : f.values()) put_f64(buf, v);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open field file for writing: " + path);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw io_error("short write to field file: " + path);
}

ScalarField load_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open field file: " + path);
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (buf.size() < 26) throw io_error("truncated field file: " + path);
    if (std::memcmp(buf.data(), kMagic, 4) != 0) throw io_error("bad magic in field file: " + path);
    if (get_u16(buf.data() + 4) != kFormatVersion) {
        throw io_error("unsupported field file version in " + path);
    }
    const std::uint32_t n = get_u32(buf.data() + 6);
    const double L = get_f64(buf.data() + 10);
    const double omega = get_f64(buf.data() + 18);
    const std::size_t need = 26 + 8ull * n * n;
    if (n < 16 || buf.size() != need) throw io_error("inconsistent field file size: " + path);

    ScalarField f(Grid2D(L, static_cast<int>(n), omega));
    double* dst = f.data();
    const unsigned char* p = buf.data() + 26;
    for (std::size_t k = 0; k < static_cast<std::size_t>(n) * n; ++k, p += 8) {
        dst[k] = get_f64(p);
    }
    return f;
}

} // namespace gpe2
