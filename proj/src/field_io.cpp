#include "critflow/field_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace critflow {

namespace {

static_assert(sizeof(double) == 8, "CFF1 assumes IEEE-754 float64");

// Coefficients on disk run k = -n/2 .. n/2-1 per axis; enumerate in that
// order and translate to the in-memory DFT layout.
template <typename Fn>
void for_each_file_mode(const Grid& g, Fn&& fn) {
    std::vector<int> kv(g.d, -g.n / 2);
    for (;;) {
        fn(g.flat_index(kv.data()));
        int a = g.d - 1;
        for (; a >= 0; --a) {
            if (++kv[a] < g.n / 2) break;
            kv[a] = -g.n / 2;
        }
        if (a < 0) return;
    }
}

void put_le_double(std::string& buf, double v) {
    char raw[8];
    std::memcpy(raw, &v, 8);  // little-endian host assumed, asserted in tests
    buf.append(raw, 8);
}

double get_le_double(const char* p) {
    double v;
    std::memcpy(&v, p, 8);
    return v;
}

}  // namespace

void write_field(const std::string& path, const SpectralField& f) {
    char header[128];
    int len = std::snprintf(header, sizeof(header), "CFF1 d=%d n=%d L=%.17g m=%d\n",
                            f.grid.d, f.grid.n, f.grid.box_length, f.components);
    std::string buf(header, len);
    buf.reserve(buf.size() + f.coeffs.size() * 16);
    for (int c = 0; c < f.components; ++c) {
        for_each_file_mode(f.grid, [&](std::size_t m) {
            put_le_double(buf, f.at(c, m).real());
            put_le_double(buf, f.at(c, m).imag());
        });
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open field file for writing: " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw Error("short write on field file: " + path);
}

SpectralField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open field file: " + path);

    std::string header;
    std::getline(in, header);
    int d = 0, n = 0, m = 0;
    double L = 0.0;
    if (std::sscanf(header.c_str(), "CFF1 d=%d n=%d L=%lg m=%d", &d, &n, &L, &m) != 4) {
        throw Error("not a CFF1 field file: " + path);
    }
    Grid g = make_grid(d, n, L);
    if (m != 1 && m != d) throw Error("CFF1 component count must be 1 or d");

    SpectralField f(g, m);
    std::vector<char> payload(f.coeffs.size() * 16);
    in.read(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (in.gcount() != static_cast<std::streamsize>(payload.size())) {
        throw Error("truncated CFF1 payload: " + path);
    }
    const char* p = payload.data();
    for (int c = 0; c < m; ++c) {
        for_each_file_mode(g, [&](std::size_t mode) {
            double re = get_le_double(p);
            double im = get_le_double(p + 8);
            p += 16;
            f.at(c, mode) = cplx(re, im);
        });
    }
    return f;
}

}  // namespace critflow
