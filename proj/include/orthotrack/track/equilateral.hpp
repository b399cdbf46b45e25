#pragma once

// Equilateral train tracks tau(X, lambda, delta): the leaf space of the
// equilateral neighborhood, computed from the circle-interval model (cuff
// markings shifted by twists, intervals of radius D_delta about the
// basepoints).  Arcs with c_alpha < 2 D_delta are visible, the rest invisible;
// equality is reported as a degeneracy.

#include "orthotrack/flat/leafspace.hpp"
#include "orthotrack/flat/ortho_map.hpp"
#include "orthotrack/hyp/incircle.hpp"

namespace otk {

struct EquilateralTrack {
    double delta = 0;
    double cut_depth = 0;  // D_delta
    LeafSpace leaf_space;
    std::vector<int> visible_bands;    // band ids in the circle model
    std::vector<int> invisible_bands;
    CylinderComplex model;             // the circle-interval model it was built from

    const TrainTrack& track() const { return leaf_space.track; }
    const std::vector<TrackArc>& visible_arcs() const { return leaf_space.arcs; }
};

// The circle-interval model coincides with the cylinder complex of the
// orthogeodesic flat surface: circles are the pants curves with basepoint
// marks from both sides (twists applied), and the covering intervals have
// radius D_delta about the marks.
inline CylinderComplex circle_interval_model(const SurfaceSpec& spec) {
    return build_ortho_surface(spec).cx;
}

inline EquilateralTrack equilateral_track(const SurfaceSpec& spec, double delta) {
    EquilateralTrack out;
    out.delta = delta;
    out.cut_depth = d_delta(delta);  // validates delta in (0, log sqrt 3)
    out.model = circle_interval_model(spec);
    out.leaf_space = vertical_leaf_space(out.model, out.cut_depth);
    out.visible_bands = out.leaf_space.severed_bands;
    out.invisible_bands = out.leaf_space.glued_bands;
    return out;
}

// Largest delta below which the construction is valid for this spec (no
// closed ties, no visibility degeneracy), located by bisection on a validity
// scan.  The construction is monotonically "more cut" as delta decreases.
inline double admissibility_threshold(const SurfaceSpec& spec, double resolution = 1e-3) {
    const CylinderComplex model = circle_interval_model(spec);
    auto valid = [&](double delta) {
        try {
            vertical_leaf_space(model, d_delta(delta));
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    double lo = 1e-4;
    if (!valid(lo)) return 0.0;
    double hi = kLogSqrt3 - 1e-9;
    if (valid(hi)) return hi;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (valid(mid) ? lo : hi) = mid;
    }
    return lo;
}

// Stability margin of Proposition ttstable: per branch, min(length/2,
// D_delta - d_lambda(b)) where d_lambda(b) is the distance from the branch
// midpoint to the nearest basepoint along any leaf through the branch.
inline double stability_margin(const EquilateralTrack& et) {
    double margin = 1e18;
    for (const auto& b : et.leaf_space.branches) {
        margin = std::min(margin, b.length / 2.0);
        // d_lambda(b): distance from the branch midpoint to the nearest
        // basepoint along any leaf through b (the crossings are the levels of
        // the midpoint tie)
        double dmin = 1e18;
        for (const auto& cr : b.crossings)
            for (const CxZero& z : et.model.zeros[cr.curve])
                dmin = std::min(dmin,
                                std::fabs(circ_diff(z.pos, cr.pos, et.model.circumference[cr.curve])));
        margin = std::min(margin, et.cut_depth - dmin);
    }
    return margin;
}

}  // namespace otk
