#pragma once

// Elementary shape-shifting deformations attached to proto-spikes.
// A proto-spike is a pair of disjoint geodesics (g-, g+), either asymptotic
// (a genuine spike, arc_length = 0) or joined by an orthogeodesic arc of the
// given length.  The deformation is
//   phi(V) = T_{g-}^{t} o A o T_{g+}^{-t},   t = s_value + sharpness_f,
// where A is the identity for a spike and the transvection along the
// connecting arc by arc_stretch otherwise.

#include "orthotrack/hyp/geometry.hpp"
#include "orthotrack/hyp/incircle.hpp"

namespace otk {

struct ProtoSpikeData {
    Geodesic g_minus, g_plus;
    double arc_length = 0.0;   // 0 means genuine spike (asymptotic pair)
    double sharpness_f = 0.0;  // f_{X,s}(V)
    double arc_stretch = 0.0;  // l_s(alpha)

    ProtoSpikeData(Geodesic gm, Geodesic gp, double len = 0.0, double f = 0.0, double stretch = 0.0)
        : g_minus(gm), g_plus(gp), arc_length(len), sharpness_f(f), arc_stretch(stretch) {
        if (!disjoint(g_minus, g_plus)) throw Error("ProtoSpikeData: geodesics must be disjoint");
        const bool asymptotic = share_endpoint(g_minus, g_plus);
        if (arc_length == 0.0 && !asymptotic)
            throw Error("ProtoSpikeData: zero arc_length requires asymptotic geodesics");
        if (arc_length > 0.0 && arc_length >= std::log(3.0))
            throw Error("ProtoSpikeData: positive arc_length must be < log 3");
    }

    bool genuine_spike() const { return arc_length == 0.0; }
};

// Oriented common perpendicular from g- to g+.
inline Geodesic connecting_arc_geodesic(const Geodesic& gm, const Geodesic& gp) {
    const Isometry m = to_standard(gm);
    IdealPoint u = m.apply(gp.e1), v = m.apply(gp.e2);
    if (u.infinite || v.infinite) throw Error("connecting_arc: geodesics are asymptotic");
    double a = u.value, b = v.value;
    if (a * b <= 0) throw Error("connecting_arc: geodesics intersect");
    const double s = a < 0 ? -1.0 : 1.0;
    const double r = s * std::sqrt(a * b);  // perpendicular is |z| = |r|, oriented from the axis
    const Isometry inv = m.inverse();
    return Geodesic(inv.apply(IdealPoint(-r)), inv.apply(IdealPoint(r)));
}

inline Isometry spike_shapeshift(const ProtoSpikeData& v, double s_value) {
    const double t = s_value + v.sharpness_f;
    const Isometry left = transvection(v.g_minus, t);
    const Isometry right = transvection(v.g_plus, -t);
    if (v.genuine_spike()) return left * right;
    const Geodesic arc = connecting_arc_geodesic(v.g_minus, v.g_plus);
    return left * transvection(arc, v.arc_stretch) * right;
}

}  // namespace otk
