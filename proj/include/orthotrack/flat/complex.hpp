#pragma once

// Cylinder complexes: one horizontal cylinder per curve, boundary circles
// marked with zeros from both sides, and band gluings identifying boundary
// intervals across the (collapsed) complementary pieces.  This is the common
// substrate of the flat surface O(X, lambda), the equilateral circle-interval
// model, and the vertical leaf space machinery.
//
// Conventions: every position is a real number modulo the circumference of
// its curve, in the coordinates of the curve's A side.  Side 0 is the A side.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "orthotrack/hyp/geometry.hpp"

namespace otk {

inline double mod_len(double x, double len) {
    double r = std::fmod(x, len);
    if (r < 0) r += len;
    if (r >= len) r -= len;
    return r;
}

// Circular signed difference in (-len/2, len/2].
inline double circ_diff(double a, double b, double len) {
    double d = mod_len(a - b, len);
    if (d > len / 2.0) d -= len;
    return d;
}

struct CxZero {
    int id = 0;      // global zero id
    int side = 0;    // which side of the curve the foot faces (0 = A)
    double pos = 0;  // position mod circumference
};

struct CxBandSide {
    int curve = 0;
    int side = 0;
    double start = 0;  // foot of zero_from
    int dir = +1;      // band covers start + dir * [0, length]
};

struct CxBand {
    CxBandSide a, b;
    double length = 0;
    int zero_from = 0, zero_to = 0;

    double at_a(double t) const { return a.start + a.dir * t; }
    double at_b(double t) const { return b.start + b.dir * t; }
};

struct CylinderComplex {
    std::vector<double> circumference;
    std::vector<double> height;
    std::vector<std::vector<CxZero>> zeros;  // per curve
    std::vector<CxBand> bands;
    int num_zeros = 0;

    int num_curves() const { return static_cast<int>(circumference.size()); }

    double area() const {
        double a = 0;
        for (int c = 0; c < num_curves(); ++c) a += circumference[c] * height[c];
        return a;
    }

    // Band sides incident to (curve, side), for interval queries.
    std::vector<std::pair<int, int>> band_sides_on(int curve, int side) const {
        std::vector<std::pair<int, int>> out;  // (band index, 0 for side a / 1 for side b)
        for (int i = 0; i < static_cast<int>(bands.size()); ++i) {
            if (bands[i].a.curve == curve && bands[i].a.side == side) out.emplace_back(i, 0);
            if (bands[i].b.curve == curve && bands[i].b.side == side) out.emplace_back(i, 1);
        }
        return out;
    }

    // Containment of a position in a band side, returning the band parameter.
    // Positions within tol of the ends are treated as inside.
    std::optional<double> band_parameter(const CxBandSide& s, double length, double pos, double tol = 1e-9) const {
        const double len = circumference[s.curve];
        const double d = mod_len(static_cast<double>(s.dir) * (pos - s.start), len);
        if (d <= length + tol) return std::min(d, length);
        return std::nullopt;
    }

    // The cone angle at each zero is pi times the number of sectors around it;
    // walking the link validates the gluing combinatorics.  Returns the number
    // of prongs (sectors) per zero id.
    std::vector<int> cone_prongs() const;

    void validate() const;
};

namespace detail {

// A germ at a zero's foot: (curve, side, position, horizontal direction).
struct FootGerm {
    int curve, side;
    double pos;
    int dir;  // +1: looking towards increasing position
    bool operator<(const FootGerm& o) const {
        return std::tie(curve, side, dir, pos) < std::tie(o.curve, o.side, o.dir, o.pos);
    }
};

}  // namespace detail

inline std::vector<int> CylinderComplex::cone_prongs() const {
    // Collect germs per zero, with tolerance-based matching throughout:
    // positions of the same foot computed along different routes agree only up
    // to floating-point noise.
    std::map<int, std::vector<detail::FootGerm>> feet;
    for (int c = 0; c < num_curves(); ++c)
        for (const CxZero& z : zeros[c]) {
            feet[z.id].push_back({c, z.side, z.pos, +1});
            feet[z.id].push_back({c, z.side, z.pos, -1});
        }

    auto germ_close = [&](const detail::FootGerm& x, const detail::FootGerm& y) {
        return x.curve == y.curve && x.side == y.side && x.dir == y.dir &&
               std::fabs(circ_diff(x.pos, y.pos, circumference[x.curve])) < 1e-9;
    };

    // Matched germ across the band covering g (g looks away from its foot).
    auto across = [&](const detail::FootGerm& g) -> detail::FootGerm {
        const double len = circumference[g.curve];
        for (const CxBand& band : bands) {
            for (int which : {0, 1}) {
                const CxBandSide& s = which == 0 ? band.a : band.b;
                const CxBandSide& o = which == 0 ? band.b : band.a;
                if (s.curve != g.curve || s.side != g.side) continue;
                if (std::fabs(circ_diff(s.start, g.pos, len)) < 1e-9 && s.dir == g.dir)
                    return {o.curve, o.side, mod_len(o.start, circumference[o.curve]), o.dir};
                const double end_pos = mod_len(s.start + s.dir * band.length, len);
                if (std::fabs(circ_diff(end_pos, g.pos, len)) < 1e-9 && s.dir == -g.dir) {
                    const double o_end = mod_len(o.start + o.dir * band.length, circumference[o.curve]);
                    return {o.curve, o.side, o_end, -o.dir};
                }
            }
        }
        throw Error("CylinderComplex: no band side covers a foot germ (bad gluing data)");
    };

    std::vector<int> prongs(num_zeros, 0);
    for (auto& [zid, germs] : feet) {
        std::vector<bool> used(germs.size(), false);
        auto take = [&](const detail::FootGerm& g) -> int {
            for (size_t i = 0; i < germs.size(); ++i)
                if (!used[i] && germ_close(germs[i], g)) {
                    used[i] = true;
                    return static_cast<int>(i);
                }
            return -1;
        };
        int sectors = 0;
        for (size_t start = 0; start < germs.size(); ++start) {
            if (used[start]) continue;
            const detail::FootGerm first = germs[start];
            detail::FootGerm g = first;
            do {
                take(g);
                detail::FootGerm below{g.curve, g.side, g.pos, -g.dir};
                ++sectors;
                take(below);
                g = across(below);
                if (!germ_close(g, first)) {
                    bool known = false;
                    for (const auto& cand : germs)
                        if (germ_close(cand, g)) known = true;
                    if (!known)
                        throw Error("CylinderComplex: link walk left the zero (zeros misidentified)");
                }
            } while (!germ_close(g, first));
        }
        prongs[zid] = sectors;
    }
    return prongs;
}

inline void CylinderComplex::validate() const {
    for (int c = 0; c < num_curves(); ++c) {
        if (!(circumference[c] > 0) || !(height[c] > 0))
            throw Error("CylinderComplex: nonpositive cylinder dimensions");
        double covered[2] = {0, 0};
        for (const auto& [bi, which] : band_sides_on(c, 0)) covered[0] += bands[bi].length;
        for (const auto& [bi, which] : band_sides_on(c, 1)) covered[1] += bands[bi].length;
        for (int side = 0; side < 2; ++side)
            if (std::fabs(covered[side] - circumference[c]) > 1e-7 * (1 + circumference[c]))
                throw Error("CylinderComplex: band sides do not tile a boundary circle");
    }
    const std::vector<int> prongs = cone_prongs();
    int total_order = 0;
    for (int p : prongs) {
        if (p < 3) throw Error("CylinderComplex: cone point with fewer than 3 prongs");
        total_order += p - 2;
    }
    // Gauss-Bonnet for quadratic differentials: sum of orders = 4g - 4, with
    // the genus recovered from the Euler characteristic of the complex.
    // 2 - 2g = V - E + F computed on the cylinder decomposition:
    //   V = zeros, E = horizontal saddles = bands, F = cylinders (annuli do not
    //   contribute; the complement of the boundary graph is the cylinders).
    // Each cylinder is an annulus (Euler characteristic 0), so
    // chi = V - E and total cone order must be -2 chi.
    const int chi = num_zeros - static_cast<int>(bands.size());
    if (total_order != -2 * chi)
        throw Error("CylinderComplex: cone angles violate Gauss-Bonnet (sum of orders " +
                    std::to_string(total_order) + ", chi " + std::to_string(chi) + ")");
}

}  // namespace otk
