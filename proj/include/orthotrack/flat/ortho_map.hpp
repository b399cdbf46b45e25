#pragma once

// The map O(X, lambda) for full-pants weighted multicurves: one horizontal
// cylinder per pants curve (circumference = hyperbolic length, height =
// weight), boundary markings from the cuff markings shifted by the twists,
// and bands glued along the collapsed spines.
//
// Twist convention: a point at side-B cuff coordinate x sits at side-A
// coordinate (twist - x) mod length; one full twist equals the curve length.

#include "orthotrack/flat/complex.hpp"
#include "orthotrack/surface/holonomy.hpp"

namespace otk {

struct FlatSurface {
    CylinderComplex cx;
    SurfaceSpec spec;             // provenance (lengths/weights/twists)
    std::vector<int> prongs;      // per zero id
    bool has_degenerate_zero = false;  // some band of weight ~0 (4-valent wall)

    int genus() const {
        const int chi = cx.num_zeros - static_cast<int>(cx.bands.size());
        return (2 - chi) / 2;
    }
    double area() const { return cx.area(); }
};

// Converts a pants-local cuff coordinate to the curve's A-side coordinate.
inline double to_curve_coords(const SurfaceSpec& spec, int curve, int side, double x) {
    const double len = spec.lengths[curve];
    if (side == 0) return mod_len(x, len);
    return mod_len(spec.twists[curve] - x, len);
}

// Which side (0 = A, 1 = B) of its curve a pants slot is.
inline int side_of_slot(const SurfaceSpec& spec, int pants, int slot) {
    const int c = spec.pants[pants][slot];
    if (spec.sides[c][0].pants == pants && spec.sides[c][0].slot == slot) return 0;
    return 1;
}

inline FlatSurface build_ortho_surface(const SurfaceSpec& spec) {
    const SurfaceGeometry geo(spec);
    FlatSurface q{.cx = {}, .spec = spec};
    CylinderComplex& cx = q.cx;

    cx.circumference = spec.lengths;
    cx.height = spec.weights;
    cx.zeros.resize(spec.num_curves());
    cx.num_zeros = 2 * spec.num_pants();

    for (int p = 0; p < spec.num_pants(); ++p) {
        const CuffMarking& m = geo.piece(p).marking();
        // zeros: global id = 2p + vertex
        for (int slot = 0; slot < 3; ++slot) {
            const int c = spec.pants[p][slot];
            const int side = side_of_slot(spec, p, slot);
            for (const Basepoint& b : m.basepoints[slot])
                cx.zeros[c].push_back({2 * p + b.vertex, side, to_curve_coords(spec, c, side, b.position)});
        }
        // bands
        for (const Band& band : m.bands) {
            if (band.length < 1e-12) q.has_degenerate_zero = true;
            CxBand out;
            out.length = band.length;
            out.zero_from = 2 * p + band.vertex_from;
            out.zero_to = 2 * p + band.vertex_to;
            auto convert = [&](const BandSide& s) {
                const int c = spec.pants[p][s.slot];
                const int side = side_of_slot(spec, p, s.slot);
                CxBandSide cs;
                cs.curve = c;
                cs.side = side;
                cs.start = to_curve_coords(spec, c, side, s.start);
                cs.dir = side == 0 ? s.dir : -s.dir;
                return cs;
            };
            out.a = convert(band.side_i);
            out.b = convert(band.side_j);
            cx.bands.push_back(out);
        }
    }

    cx.validate();
    q.prongs = cx.cone_prongs();
    return q;
}

}  // namespace otk
