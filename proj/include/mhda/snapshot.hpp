#pragma once

// Binary state snapshots.
//
// Layout (little-endian, 32-byte header):
//   offset  0: magic "MHDA"
//   offset  4: u32 format version (currently 1)
//   offset  8: u32 n (modes per dimension)
//   offset 12: f64 time t
//   offset 20: f64 domain period L
//   offset 28: 4 zero bytes (reserved)
//   offset 32: w coefficients, n^2 (re, im) f64 pairs in row-major k-order
//              (index ix*n + iy, FFT frequency storage order), then the
//              a coefficients in the same layout.

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"

namespace mhda {

inline constexpr std::uint32_t kSnapshotVersion = 1;

class SnapshotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void put_u32le(std::vector<unsigned char>& out, std::uint32_t v)
{
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

inline void put_f64le(std::vector<unsigned char>& out, double d)
{
    const std::uint64_t v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

inline std::uint32_t get_u32le(const unsigned char* p)
{
    return static_cast<std::uint32_t>(p[0]) |
           (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

inline double get_f64le(const unsigned char* p)
{
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

}  // namespace detail

inline void write_snapshot(const std::filesystem::path& path,
                           const MhdAlphaState& s)
{
    const SpectralGrid& g = s.grid();
    std::vector<unsigned char> bytes;
    bytes.reserve(32 + 2 * 16 * g.size());

    bytes.push_back('M');
    bytes.push_back('H');
    bytes.push_back('D');
    bytes.push_back('A');
    detail::put_u32le(bytes, kSnapshotVersion);
    detail::put_u32le(bytes, static_cast<std::uint32_t>(g.n()));
    detail::put_f64le(bytes, s.t);
    detail::put_f64le(bytes, g.length());
    detail::put_u32le(bytes, 0);

    for (const ScalarField* f : {&s.w, &s.a}) {
        for (const Complex& c : f->c) {
            detail::put_f64le(bytes, c.real());
            detail::put_f64le(bytes, c.imag());
        }
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw SnapshotError("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw SnapshotError("write failed: " + path.string());
}

// Reads a snapshot; the grid is owned by the caller and must match the
// stored n and L. Use read_snapshot_header to discover them first.
struct SnapshotHeader {
    std::uint32_t version = 0;
    int n = 0;
    double t = 0.0;
    double length = 0.0;
};

inline SnapshotHeader read_snapshot_header(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open: " + path.string());
    unsigned char head[32];
    in.read(reinterpret_cast<char*>(head), 32);
    if (!in) throw SnapshotError("truncated header: " + path.string());
    if (std::memcmp(head, "MHDA", 4) != 0)
        throw SnapshotError("bad magic: " + path.string());
    SnapshotHeader h;
    h.version = detail::get_u32le(head + 4);
    if (h.version != kSnapshotVersion)
        throw SnapshotError("unsupported snapshot version " +
                            std::to_string(h.version) + ": " + path.string());
    h.n = static_cast<int>(detail::get_u32le(head + 8));
    h.t = detail::get_f64le(head + 12);
    h.length = detail::get_f64le(head + 20);
    return h;
}

inline MhdAlphaState read_snapshot(const std::filesystem::path& path,
                                   const SpectralGrid& g)
{
    const SnapshotHeader h = read_snapshot_header(path);
    if (h.n != g.n() || h.length != g.length())
        throw SnapshotError("snapshot grid mismatch: " + path.string());

    std::ifstream in(path, std::ios::binary);
    in.seekg(32);
    const std::size_t count = 2 * g.size();
    std::vector<unsigned char> bytes(16 * count);
    in.read(reinterpret_cast<char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!in) throw SnapshotError("truncated payload: " + path.string());

    MhdAlphaState s(g);
    s.t = h.t;
    const unsigned char* p = bytes.data();
    for (ScalarField* f : {&s.w, &s.a}) {
        for (Complex& c : f->c) {
            const double re = detail::get_f64le(p);
            const double im = detail::get_f64le(p + 8);
            c = Complex(re, im);
            p += 16;
        }
    }
    return s;
}

// Invariant audit of a stored state, used by the `check` CLI verb.
struct StateCheck {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline StateCheck check_state(const MhdAlphaState& s, double tol = 1e-12)
{
    StateCheck out;
    if (!all_finite(s.w) || !all_finite(s.a))
        out.violations.push_back("non-finite coefficients");

    const double scale_w = 1.0 + max_abs_coeff(s.w);
    const double scale_a = 1.0 + max_abs_coeff(s.a);
    if (hermitian_defect(s.w) > tol * scale_w)
        out.violations.push_back("w breaks Hermitian symmetry");
    if (hermitian_defect(s.a) > tol * scale_a)
        out.violations.push_back("a breaks Hermitian symmetry");
    if (std::abs(s.w.mean()) > tol * scale_w)
        out.violations.push_back("w has nonzero mean");
    if (std::abs(s.a.mean()) > tol * scale_a)
        out.violations.push_back("a has nonzero mean");

    const SpectralGrid& g = s.grid();
    double outside = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m)
        if (!g.dealias_keep(m))
            outside = std::max({outside, std::abs(s.w.c[m]), std::abs(s.a.c[m])});
    if (outside > 0.0)
        out.violations.push_back("energy outside the dealias mask");
    return out;
}

}  // namespace mhda
