#pragma once

// Upper half-plane primitives: points, ideal points, geodesics, PSL(2,R)
// isometries and frames.  All formulas handle the vertical-line case
// explicitly; ideal points are a tagged value, never a large-number stand-in.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace otk {

inline constexpr double kDefaultTol = 1e-9;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DegeneracyError : Error {
    explicit DegeneracyError(const std::string& what) : Error(what) {}
};

// Point of H^2 = {x + iy : y > 0}.
struct HPoint {
    double x = 0.0;
    double y = 1.0;

    HPoint() = default;
    HPoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0)) throw Error("HPoint: y must be strictly positive, got y=" + std::to_string(y_));
    }
};

// d(p,q) via sinh^2(d/2) = |p-q|^2 / (4 y_p y_q); accurate for near-equal points.
inline double distance(const HPoint& p, const HPoint& q) {
    const double dx = p.x - q.x, dy = p.y - q.y;
    const double s = std::sqrt((dx * dx + dy * dy) / (4.0 * p.y * q.y));
    return 2.0 * std::asinh(s);
}

// Boundary point of H^2: a real number or the point at infinity.
struct IdealPoint {
    double value = 0.0;
    bool infinite = false;

    IdealPoint() = default;
    IdealPoint(double v) : value(v), infinite(false) {}  // NOLINT: implicit by design
    static IdealPoint infinity() {
        IdealPoint p;
        p.infinite = true;
        return p;
    }
    bool operator==(const IdealPoint& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

inline std::string to_string(const IdealPoint& p) {
    return p.infinite ? "inf" : std::to_string(p.value);
}

// Orientation of an ideal triple on the circle at infinity.
// Returns +1 if (a,b,c) is positively (counterclockwise) ordered, -1 if
// negatively, 0 if degenerate.  The circle is R u {inf} with inf between
// +infty and -infty of the real order.
inline int cyclic_orientation(const IdealPoint& a, const IdealPoint& b, const IdealPoint& c) {
    // Map to angles via x -> 2*atan(x), inf -> pi, then orient.
    auto ang = [](const IdealPoint& p) { return p.infinite ? M_PI : 2.0 * std::atan(p.value); };
    const double ta = ang(a), tb = ang(b), tc = ang(c);
    auto wrap = [&](double t) {
        double d = t - ta;
        while (d <= 0) d += 2.0 * M_PI;
        while (d > 2.0 * M_PI) d -= 2.0 * M_PI;
        return d;
    };
    if (a == b || b == c || a == c) return 0;
    const double db = wrap(tb), dc = wrap(tc);
    if (db == dc) return 0;
    return db < dc ? +1 : -1;
}

// Complete geodesic given by its ordered ideal endpoints.
struct Geodesic {
    IdealPoint e1, e2;

    Geodesic() : e1(0.0), e2(IdealPoint::infinity()) {}
    Geodesic(IdealPoint a, IdealPoint b) : e1(a), e2(b) {
        if (a == b) throw Error("Geodesic: endpoints must be distinct (" + to_string(a) + ")");
    }

    bool vertical() const { return e1.infinite || e2.infinite; }
    // For the vertical case, the line x = const.
    double vertical_x() const { return e1.infinite ? e2.value : e1.value; }
    // For the circle case.
    double center() const { return 0.5 * (e1.value + e2.value); }
    double radius() const { return 0.5 * std::fabs(e2.value - e1.value); }

    Geodesic reversed() const { return Geodesic(e2, e1); }
};

// PSL(2,R) matrix, det = 1, sign canonicalized (trace >= 0, ties broken by the
// first nonzero entry being positive).
struct Isometry {
    double a = 1, b = 0, c = 0, d = 1;

    Isometry() = default;
    Isometry(double a_, double b_, double c_, double d_, bool checked = true) : a(a_), b(b_), c(c_), d(d_) {
        normalize(checked);
    }

    void normalize(bool checked = true) {
        const double det = a * d - b * c;
        if (!(det > 0.0)) throw Error("Isometry: determinant must be positive, got " + std::to_string(det));
        const double s = std::sqrt(det);
        a /= s;
        b /= s;
        c /= s;
        d /= s;
        if (checked && std::fabs(a * d - b * c - 1.0) > 1e-12 * 10)
            throw Error("Isometry: failed to normalize determinant");
        canonicalize_sign();
    }

    void canonicalize_sign() {
        const double tr = a + d;
        bool flip = false;
        if (tr < 0)
            flip = true;
        else if (tr == 0) {
            const double entries[4] = {a, b, c, d};
            for (double e : entries) {
                if (e != 0) {
                    flip = e < 0;
                    break;
                }
            }
        }
        if (flip) {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
    }

    double trace_abs() const { return std::fabs(a + d); }

    HPoint apply(const HPoint& p) const {
        const std::complex<double> z(p.x, p.y);
        const std::complex<double> w = (a * z + b) / (c * z + d);
        return HPoint(w.real(), w.imag());
    }

    IdealPoint apply(const IdealPoint& p) const {
        if (p.infinite) {
            if (c == 0.0) return IdealPoint::infinity();
            return IdealPoint(a / c);
        }
        const double den = c * p.value + d;
        if (den == 0.0) return IdealPoint::infinity();
        return IdealPoint((a * p.value + b) / den);
    }

    Geodesic apply(const Geodesic& g) const;  // defined after snap_ideal

    Isometry inverse() const { return Isometry(d, -b, -c, a); }

    friend Isometry operator*(const Isometry& m, const Isometry& n) {
        return Isometry(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
                        m.c * n.b + m.d * n.d);
    }

    // Max entrywise deviation from +-identity.
    double dist_to_identity() const {
        auto dev = [](double a1, double b1, double c1, double d1) {
            return std::max(std::max(std::fabs(a1 - 1), std::fabs(d1 - 1)), std::max(std::fabs(b1), std::fabs(c1)));
        };
        return std::min(dev(a, b, c, d), dev(-a, -b, -c, -d));
    }
};

// Translation by t along the imaginary axis (towards infinity for t > 0).
inline Isometry axis_translation(double t) {
    return Isometry(std::exp(t / 2.0), 0.0, 0.0, std::exp(-t / 2.0));
}

// Rotation by angle theta (counterclockwise) about i.
inline Isometry rotation_about_i(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return Isometry(c, s, -s, c);
}

// Floating-point residue can turn an exactly-infinite endpoint into a huge
// finite value; geometry in this library lives at |x| well below this scale.
inline IdealPoint snap_ideal(const IdealPoint& p, double threshold = 1e10) {
    if (!p.infinite && std::fabs(p.value) > threshold) return IdealPoint::infinity();
    return p;
}

inline Geodesic snap_ideal(const Geodesic& g) { return Geodesic(snap_ideal(g.e1), snap_ideal(g.e2)); }

inline Geodesic Isometry::apply(const Geodesic& g) const {
    return snap_ideal(Geodesic(apply(g.e1), apply(g.e2)));
}

// Isometry taking p to i.
inline Isometry move_to_i(const HPoint& p) {
    // z -> (z - x)/y
    const double s = std::sqrt(p.y);
    return Isometry(1.0 / s, -p.x / s, 0.0, s);
}

// Isometry taking g to the imaginary axis with e1 -> 0 and e2 -> infinity.
inline Isometry to_standard(const Geodesic& g) {
    if (g.e2.infinite) return Isometry(1.0, -g.e1.value, 0.0, 1.0);
    if (g.e1.infinite) return Isometry(0.0, 1.0, -1.0, g.e2.value);
    const double a = g.e1.value, b = g.e2.value;
    if (a < b) return Isometry(1.0, -a, -1.0, b);
    return Isometry(1.0, -a, 1.0, -b);
}

// Signed distance from p to g is not defined here; distance is nonnegative.
inline double distance_to_geodesic(const HPoint& p, const Geodesic& g) {
    const HPoint w = to_standard(g).apply(p);
    return std::asinh(std::fabs(w.x) / w.y);
}

inline HPoint project_to_geodesic(const HPoint& p, const Geodesic& g) {
    const Isometry m = to_standard(g);
    const HPoint w = m.apply(p);
    const double r = std::sqrt(w.x * w.x + w.y * w.y);
    return m.inverse().apply(HPoint(0.0, r));
}

// Arc-length coordinate of the closest point of g to p, in the parametrization
// where g is traversed from e1 to e2 and coordinate 0 maps to the standard lift i.
inline double foot_coordinate(const HPoint& p, const Geodesic& g) {
    const HPoint w = to_standard(g).apply(p);
    return std::log(std::sqrt(w.x * w.x + w.y * w.y));
}

// Point of g at arc-length coordinate t (same convention as foot_coordinate).
inline HPoint point_on_geodesic(const Geodesic& g, double t) {
    return to_standard(g).inverse().apply(HPoint(0.0, std::exp(t)));
}

// Reflection across g (orientation-reversing, so a point map rather than an Isometry).
inline HPoint reflect(const HPoint& p, const Geodesic& g) {
    const Isometry m = to_standard(g);
    const HPoint w = m.apply(p);
    return m.inverse().apply(HPoint(-w.x, w.y));
}

inline IdealPoint reflect(const IdealPoint& p, const Geodesic& g) {
    const Isometry m = to_standard(g);
    const IdealPoint w = m.apply(p);
    if (w.infinite) return m.inverse().apply(w);
    return m.inverse().apply(IdealPoint(-w.value));
}

inline Geodesic reflect(const Geodesic& h, const Geodesic& g) {
    return snap_ideal(Geodesic(reflect(h.e1, g), reflect(h.e2, g)));
}

// Transvection by signed length l along g (towards g.e2 for l > 0).
inline Isometry transvection(const Geodesic& g, double l) {
    const Isometry m = to_standard(g);
    return m.inverse() * axis_translation(l) * m;
}

// Unit-tangent frame: an isometry F, position F(i), direction dF(up).
struct Frame {
    Isometry f;

    HPoint position() const { return f.apply(HPoint(0.0, 1.0)); }
    // Geodesic through the frame in its forward direction.
    Geodesic line() const { return snap_ideal(f.apply(Geodesic(IdealPoint(0.0), IdealPoint::infinity()))); }
    Frame advanced(double t) const { return Frame{f * axis_translation(t)}; }
    Frame turned(double theta) const { return Frame{f * rotation_about_i(theta)}; }
};

// --- configuration predicates -------------------------------------------------

inline bool share_endpoint(const Geodesic& g, const Geodesic& h) {
    return g.e1 == h.e1 || g.e1 == h.e2 || g.e2 == h.e1 || g.e2 == h.e2;
}

// Disjoint in the interior of H^2 (asymptotic geodesics count as disjoint).
inline bool disjoint(const Geodesic& g, const Geodesic& h) {
    if (share_endpoint(g, h)) return true;
    const int s1 = cyclic_orientation(g.e1, h.e1, g.e2);
    const int s2 = cyclic_orientation(g.e1, h.e2, g.e2);
    return s1 == s2;  // unlinked endpoint pairs
}

// Whether g separates h from k (all pairwise disjoint assumed).
inline bool separates(const Geodesic& g, const Geodesic& h, const Geodesic& k) {
    auto side = [&](const IdealPoint& p) { return cyclic_orientation(g.e1, p, g.e2); };
    auto side_of = [&](const Geodesic& x) {
        int s1 = side(x.e1), s2 = side(x.e2);
        return s1 != 0 ? s1 : s2;  // shared endpoints sit on the boundary of both sides
    };
    const int sh = side_of(h), sk = side_of(k);
    return sh != 0 && sk != 0 && sh != sk;
}

// n >= 3 pairwise disjoint geodesics, none separating the others.
struct GeodesicTuple {
    std::vector<Geodesic> geodesics;

    explicit GeodesicTuple(std::vector<Geodesic> gs) : geodesics(std::move(gs)) {
        if (geodesics.size() < 3) throw Error("GeodesicTuple: need at least 3 geodesics");
        const size_t n = geodesics.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (!disjoint(geodesics[i], geodesics[j]))
                    throw Error("GeodesicTuple: geodesics " + std::to_string(i) + " and " + std::to_string(j) +
                                " intersect");
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t k = j + 1; k < n; ++k) {
                    if (i == j || i == k) continue;
                    if (separates(geodesics[i], geodesics[j], geodesics[k]))
                        throw Error("GeodesicTuple: geodesic " + std::to_string(i) + " separates " +
                                    std::to_string(j) + " from " + std::to_string(k));
                }
    }

    size_t size() const { return geodesics.size(); }
};

}  // namespace otk
