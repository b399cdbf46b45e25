#pragma once

// Inscribed circles of geodesic configurations, equidistance defects,
// Hausdorff distance of geodesics inside a ball, and the function D_delta.

#include <algorithm>
#include <optional>

#include "orthotrack/hyp/geometry.hpp"

namespace otk {

inline const double kLogSqrt3 = 0.5 * std::log(3.0);

// D_delta = log(coth(delta)/2), defined for 0 < delta < log(sqrt 3).
inline double d_delta(double delta) {
    if (!(delta > 0.0) || !(delta < kLogSqrt3))
        throw Error("d_delta: delta must lie in (0, log sqrt 3), got " + std::to_string(delta));
    return std::log(1.0 / std::tanh(delta) / 2.0);
}

// The equidistant locus of two disjoint geodesics is again a geodesic.
inline Geodesic bisector(const Geodesic& g, const Geodesic& h) {
    if (!disjoint(g, h)) throw Error("bisector: geodesics intersect");
    // Asymptotic case: map the shared endpoint to infinity, average the lines.
    if (share_endpoint(g, h)) {
        IdealPoint shared = (g.e1 == h.e1 || g.e1 == h.e2) ? g.e1 : g.e2;
        const IdealPoint og = (g.e1 == shared) ? g.e2 : g.e1;
        const IdealPoint oh = (h.e1 == shared) ? h.e2 : h.e1;
        if (og == oh) throw Error("bisector: geodesics coincide");
        const Isometry m = to_standard(Geodesic(og, shared));  // shared -> infinity, og -> 0
        const IdealPoint u = m.apply(oh);
        if (u.infinite) throw Error("bisector: degenerate asymptotic pair");
        // g -> x=0 vertical, h -> x=u vertical; locus is x = u/2.
        const Isometry inv = m.inverse();
        return Geodesic(inv.apply(IdealPoint(u.value / 2.0)), inv.apply(IdealPoint::infinity()));
    }
    // Ultraparallel: normalize g to the imaginary axis.
    const Isometry m = to_standard(g);
    IdealPoint u = m.apply(h.e1), v = m.apply(h.e2);
    if (u.infinite || v.infinite)
        throw Error("bisector: unexpected endpoint at infinity after normalization");
    double a = u.value, b = v.value;
    if (a * b <= 0.0) throw Error("bisector: geodesics are not disjoint");
    const double refl = a < 0 ? -1.0 : 1.0;  // work on the positive side
    a *= refl;
    b *= refl;
    if (a > b) std::swap(a, b);
    const double rperp = std::sqrt(a * b);                       // common perpendicular |z| = rperp
    const double dist = std::acosh((b + a) / (b - a));           // distance between the geodesics
    const double t = dist / 2.0;                                 // midpoint along the perpendicular
    const HPoint mid(refl * rperp * std::tanh(t), rperp / std::cosh(t));
    // Bisector is the geodesic through mid orthogonal to the perpendicular circle
    // (endpoints -rperp, rperp): its standard form is |z| = const.
    const Geodesic perp(IdealPoint(-refl * rperp), IdealPoint(refl * rperp));
    const Isometry n = to_standard(perp);
    const HPoint w = n.apply(mid);
    const double s = std::sqrt(w.x * w.x + w.y * w.y);
    const Isometry ninv = n.inverse();
    Geodesic bis(ninv.apply(IdealPoint(-s)), ninv.apply(IdealPoint(s)));
    return m.inverse().apply(bis);
}

struct Incircle {
    HPoint center{0, 1};
    double radius = 0;
    std::vector<HPoint> basepoints;
};

namespace detail {

// Bracketed root of f on the bisector parameter line; scans an expanding grid.
template <class F>
inline double bisect_root(F&& f, double lo, double hi, int iters = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if (flo * fhi > 0) throw Error("incircle: failed to bracket equidistance root");
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0) return mid;
        if (flo * fm < 0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// Inscribed circle of three pairwise disjoint, mutually non-separating geodesics.
// Solved by a 1-parameter equidistance root-find along the bisector of the two
// nearest geodesics, with bisection fallback.
inline Incircle incircle(const Geodesic& g1, const Geodesic& g2, const Geodesic& g3) {
    const GeodesicTuple tuple({g1, g2, g3});  // validates the configuration
    const Geodesic* gs[3] = {&g1, &g2, &g3};

    // Pick the closest pair (asymptotic pairs have distance 0).
    auto pair_dist = [&](int i, int j) {
        if (share_endpoint(*gs[i], *gs[j])) return 0.0;
        const Isometry m = to_standard(*gs[i]);
        const IdealPoint u = m.apply(gs[j]->e1), v = m.apply(gs[j]->e2);
        if (u.infinite || v.infinite)
            throw Error("incircle: unexpected shared endpoint at infinity");
        const double a = std::fabs(u.value), b = std::fabs(v.value);
        const double lo = std::min(a, b), hi = std::max(a, b);
        return std::acosh((hi + lo) / (hi - lo));
    };

    int bi = 0, bj = 1, bk = 2;
    double best = pair_dist(0, 1);
    if (pair_dist(0, 2) < best) {
        best = pair_dist(0, 2);
        bi = 0;
        bj = 2;
        bk = 1;
    }
    if (pair_dist(1, 2) < best) {
        bi = 1;
        bj = 2;
        bk = 0;
    }

    const Geodesic bis = bisector(*gs[bi], *gs[bj]);
    const Geodesic& third = *gs[bk];

    auto f = [&](double t) {
        const HPoint p = point_on_geodesic(bis, t);
        return distance_to_geodesic(p, *gs[bi]) - distance_to_geodesic(p, third);
    };

    // Expanding scan for a sign change, then bisection.
    double root = std::numeric_limits<double>::quiet_NaN();
    for (double range = 4.0; range <= 512.0; range *= 2.0) {
        const int steps = 256;
        double prev_t = -range, prev_f = f(prev_t);
        bool found = false;
        for (int i = 1; i <= steps; ++i) {
            const double t = -range + 2.0 * range * i / steps;
            const double ft = f(t);
            if (prev_f == 0.0 || prev_f * ft < 0.0) {
                root = detail::bisect_root(f, prev_t, t);
                found = true;
                break;
            }
            prev_t = t;
            prev_f = ft;
        }
        if (found) break;
    }
    // Valid non-separating tuples can still lack an inscribed circle: the
    // equidistance gap along the bisector may tend to a nonzero constant and
    // the circle escapes through an ideal boundary arc.
    if (!(root == root))
        throw Error("incircle: tuple has no inscribed circle (equidistant point escapes to the ideal boundary)");

    Incircle result;
    result.center = point_on_geodesic(bis, root);
    double r = 0.0;
    for (const Geodesic* g : gs) r += distance_to_geodesic(result.center, *g);
    result.radius = r / 3.0;
    for (const Geodesic* g : gs) result.basepoints.push_back(project_to_geodesic(result.center, *g));
    return result;
}

inline Incircle incircle(const GeodesicTuple& t) {
    if (t.size() != 3) throw Error("incircle: expected a 3-tuple");
    return incircle(t.geodesics[0], t.geodesics[1], t.geodesics[2]);
}

// Diameter of the set of incircle centers over all 3-subsets.
inline double equidistance_defect(const GeodesicTuple& t) {
    const size_t n = t.size();
    std::vector<HPoint> centers;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k)
                centers.push_back(incircle(t.geodesics[i], t.geodesics[j], t.geodesics[k]).center);
    double diam = 0.0;
    for (size_t i = 0; i < centers.size(); ++i)
        for (size_t j = i + 1; j < centers.size(); ++j) diam = std::max(diam, distance(centers[i], centers[j]));
    return diam;
}

// Intersection of g with the ball B(center, r) as an arc-length interval in the
// coordinates of point_on_geodesic; empty if they do not meet.
inline std::optional<std::pair<double, double>> geodesic_ball_segment(const Geodesic& g, const HPoint& center,
                                                                      double r) {
    const double d = distance_to_geodesic(center, g);
    if (d > r) return std::nullopt;
    const double t0 = foot_coordinate(center, g);
    const double s = std::acosh(std::cosh(r) / std::cosh(d));
    return std::make_pair(t0 - s, t0 + s);
}

// Symmetric Hausdorff distance between g n B and h n B, computed by dense
// arc-length sampling of one side (step = min(1e-3, r/1000); the test oracle
// halves it) against the closed-form distance to the other segment.
// Returns +infinity if either geodesic misses the ball.
inline double geodesic_hausdorff_in_ball(const Geodesic& g, const Geodesic& h, const HPoint& center, double r,
                                         double step = -1.0) {
    const auto sg = geodesic_ball_segment(g, center, r);
    const auto sh = geodesic_ball_segment(h, center, r);
    if (!sg || !sh) return std::numeric_limits<double>::infinity();
    if (step <= 0.0) step = std::min(1e-3, r / 1000.0);

    auto one_sided = [&](const Geodesic& from, std::pair<double, double> seg_from, const Geodesic& to,
                         std::pair<double, double> seg_to) {
        const HPoint end1 = point_on_geodesic(to, seg_to.first);
        const HPoint end2 = point_on_geodesic(to, seg_to.second);
        double sup = 0.0;
        const int n = std::max(1, static_cast<int>(std::ceil((seg_from.second - seg_from.first) / step)));
        for (int i = 0; i <= n; ++i) {
            const double t = seg_from.first + (seg_from.second - seg_from.first) * i / n;
            const HPoint p = point_on_geodesic(from, t);
            const double foot_t = foot_coordinate(p, to);
            double dmin;
            if (foot_t >= seg_to.first && foot_t <= seg_to.second)
                dmin = distance_to_geodesic(p, to);
            else
                dmin = std::min(distance(p, end1), distance(p, end2));
            sup = std::max(sup, dmin);
        }
        return sup;
    };

    return std::max(one_sided(g, *sg, h, *sh), one_sided(h, *sh, g, *sg));
}

}  // namespace otk
