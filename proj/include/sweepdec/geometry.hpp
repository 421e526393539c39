#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>

namespace sweepdec {

// All lattice coordinates are doubled integers, so cube centres (half-integer
// points) stay exact. A vertex is a corner iff every component is even.
using Coord = std::array<int, 3>;

inline Coord operator+(const Coord& a, const Coord& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Coord operator-(const Coord& a, const Coord& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

// One of the eight sweep directions (+-1, +-1, +-1).
struct Dir {
    std::array<int, 3> v{1, 1, 1};

    int operator[](int i) const { return v[i]; }
    int product() const { return v[0] * v[1] * v[2]; }
    bool operator==(const Dir& o) const { return v == o.v; }

    std::string str() const {
        std::string s;
        for (int i = 0; i < 3; ++i) s += v[i] > 0 ? '+' : '-';
        return s;
    }
};

inline int dot(const Dir& w, const Coord& d) {
    return w[0] * d[0] + w[1] * d[1] + w[2] * d[2];
}

// Index by sign bits: bit i set iff component i is +1.
inline int dir_index(const Dir& w) {
    return (w[0] > 0 ? 1 : 0) | (w[1] > 0 ? 2 : 0) | (w[2] > 0 ? 4 : 0);
}
inline Dir dir_from_index(int idx) {
    return Dir{{(idx & 1) ? 1 : -1, (idx & 2) ? 1 : -1, (idx & 4) ? 1 : -1}};
}

inline const std::array<Dir, 8>& all_dirs() {
    static const std::array<Dir, 8> dirs = [] {
        std::array<Dir, 8> d;
        for (int i = 0; i < 8; ++i) d[i] = dir_from_index(i);
        return d;
    }();
    return dirs;
}

// The paper-reported order has no measurable effect; this is the fixed default.
inline std::array<Dir, 8> default_dir_order() {
    auto mk = [](int x, int y, int z) { return Dir{{x, y, z}}; };
    return {mk(1, 1, 1),  mk(-1, -1, -1), mk(1, -1, -1), mk(-1, 1, 1),
            mk(-1, 1, -1), mk(1, -1, 1),  mk(-1, -1, 1), mk(1, 1, -1)};
}

inline bool is_corner(const Coord& c) {
    return c[0] % 2 == 0 && c[1] % 2 == 0 && c[2] % 2 == 0;
}

inline int mod4(long long x) { return static_cast<int>(((x % 4) + 4) % 4); }

// Corners come in two classes distinguished by the product of the sign offsets
// to their adjacent centres: +1 when the doubled coordinate sum is 2 mod 4.
inline int corner_offset_product(const Coord& c) {
    return mod4(c[0] + c[1] + c[2]) == 2 ? 1 : -1;
}

// A centre of the rhombic lattice has all-odd doubled coordinates with sum 1 mod 4.
inline bool is_rhombic_center(const Coord& c) {
    return (c[0] & 1) && (c[1] & 1) && (c[2] & 1) && mod4(c[0] + c[1] + c[2]) == 1;
}

inline bool is_rhombic_vertex(const Coord& c) {
    return is_corner(c) || is_rhombic_center(c);
}

inline uint64_t pack_coord(const Coord& c) {
    auto enc = [](int x) { return static_cast<uint64_t>(x + (1 << 20)) & 0x1FFFFF; };
    return enc(c[0]) | (enc(c[1]) << 21) | (enc(c[2]) << 42);
}

}  // namespace sweepdec
