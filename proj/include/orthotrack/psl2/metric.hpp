#pragma once

// The left-invariant metric d_x^ on PSL(2,R):
//   d_x^(A, B) = sup_{x in H^2} d(A x, B x) e^{-d(x^, x)},
// approximated by a geodesic-polar grid search of radius truncation_radius
// about the basepoint.  The damping is exponential while d(Ax, Bx) grows at
// most linearly in d(x^, x), so the truncation error is at most
// (2R + d(A x^, B x^)) e^{-R} for radius R; see truncation_bound().

#include <map>
#include <string>

#include "orthotrack/hyp/geometry.hpp"

namespace otk {

struct BasepointMetric {
    HPoint basepoint{0.0, 1.0};
    double truncation_radius = 6.0;
    double grid_step = 0.05;

    BasepointMetric() = default;
    BasepointMetric(HPoint base, double radius = 6.0, double step = 0.05)
        : basepoint(base), truncation_radius(radius), grid_step(step) {
        if (radius < 5.0) throw Error("BasepointMetric: truncation_radius must be >= 5");
        if (step > 0.05) throw Error("BasepointMetric: grid_step must be <= 0.05");
    }

    double truncation_bound(double value_at_basepoint) const {
        return (2.0 * truncation_radius + value_at_basepoint) * std::exp(-truncation_radius);
    }
};

// ||A||_x^ = d_x^(id, A), grid-searched.
inline double basepoint_norm(const Isometry& A, const BasepointMetric& m) {
    if (A.dist_to_identity() < 1e-15) return 0.0;
    const Isometry center = move_to_i(m.basepoint).inverse();  // i -> basepoint

    double sup = 0.0;
    const int nr = static_cast<int>(std::ceil(m.truncation_radius / m.grid_step));
    for (int ir = 0; ir <= nr; ++ir) {
        const double rho = m.truncation_radius * ir / nr;
        const double damp = std::exp(-rho);
        const double circ = 2.0 * M_PI * std::sinh(rho);
        const int na = std::max(8, static_cast<int>(std::ceil(circ / m.grid_step)));
        const double er = std::exp(rho);
        for (int ia = 0; ia < na; ++ia) {
            const double theta = 2.0 * M_PI * ia / na;
            // Point at polar coordinates (rho, theta) about the basepoint.
            const Isometry rot = rotation_about_i(theta);
            const HPoint x = center.apply(rot.apply(HPoint(0.0, er)));
            const double v = distance(A.apply(x), x) * damp;
            if (v > sup) sup = v;
            if (ir == 0) break;  // single point at the center
        }
    }
    return sup;
}

inline double psl2_distance(const Isometry& A, const Isometry& B, const BasepointMetric& m) {
    return basepoint_norm(A.inverse() * B, m);
}

// A labeled generating set (images of group generators).
struct GeneratingSet {
    std::map<std::string, Isometry> words;

    GeneratingSet() = default;
    explicit GeneratingSet(std::map<std::string, Isometry> w) : words(std::move(w)) {
        if (words.empty()) throw Error("GeneratingSet: must be nonempty");
    }
};

// d_Gamma: max over labels of d_x^(rho1(g), rho2(g)).  Representatives must be
// marking-compatible; no minimization over conjugation is performed.
inline double rep_distance(const GeneratingSet& rho1, const GeneratingSet& rho2, const BasepointMetric& m) {
    if (rho1.words.size() != rho2.words.size())
        throw Error("rep_distance: generating sets have different sizes");
    double dmax = 0.0;
    for (const auto& [label, A] : rho1.words) {
        const auto it = rho2.words.find(label);
        if (it == rho2.words.end()) throw Error("rep_distance: label mismatch at '" + label + "'");
        dmax = std::max(dmax, psl2_distance(A, it->second, m));
    }
    return dmax;
}

}  // namespace otk
