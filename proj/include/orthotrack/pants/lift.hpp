#pragma once

// Explicit lift of a hyperbolic pair of pants to H^2 via its right-angled
// hexagon decomposition.  Exposes cuff axes with arc-length coordinates,
// boundary holonomies, spine vertices (as inscribed circles), spine edges as
// bisector segments, and leaf measurements (lengths, kink angles).  This is
// the measurement oracle that validates the linear arc-system formulas; the
// holonomy assembly and the kink-angle/width suites reuse it.

#include <array>
#include <optional>

#include "orthotrack/hyp/geometry.hpp"
#include "orthotrack/hyp/incircle.hpp"
#include "orthotrack/pants/arc_system.hpp"

namespace otk {

struct SpineVertexLift {
    HPoint center{0, 1};
    double radius = 0.0;
    // Foot coordinates in cuff coordinates, per slot (1 or 2 entries).
    std::array<std::vector<double>, 3> feet_by_slot;
};

struct SpineEdgeLift {
    int vertex_from = 0, vertex_to = 0;
    int slot_i = 0, slot_j = 0;       // cuff slots bounding the band (may coincide)
    Geodesic lift_i, lift_j;          // lifted cuff geodesics bounding the band
    Isometry pull_i, pull_j;          // deck maps taking lift back to the base axis
    double start_i = 0, start_j = 0;  // cuff coordinates of vertex_from's feet
    int dir_i = +1, dir_j = +1;       // band direction in cuff coordinates
    double length = 0;                // projection length (= arc weight)
    Geodesic bisector_line;
    double bis_t_from = 0, bis_t_to = 0;
};

class PantsLift {
  public:
    explicit PantsLift(double l1, double l2, double l3) : len_{l1, l2, l3} {
        check_cuff_lengths(l1, l2, l3);
        build_hexagon();
        build_spine();
    }

    const std::array<double, 3>& lengths() const { return len_; }
    const Geodesic& axis(int k) const { return axis_[k]; }
    const Isometry& holonomy(int k) const { return hol_[k]; }
    // Slot frame: at the cuff-coordinate origin, pointing along the cuff.
    const Frame& origin_frame(int k) const { return origin_[k]; }
    const Geodesic& seam(int k) const { return seam_[k]; }  // from cuff k to cuff k+1
    double seam_len(int k) const { return seam_len_[k]; }

    // Cuff coordinates: origin at the foot of the seam to the next cuff,
    // positive direction along the pants boundary orientation.
    HPoint cuff_point(int k, double t) const { return origin_[k].advanced(t).position(); }
    double cuff_coordinate(int k, const HPoint& p) const {
        return foot_coordinate(p, axis_[k]) - origin_t_[k];
    }

    PantsCell cell() const { return cell_; }
    const std::vector<SpineVertexLift>& vertices() const { return vertices_; }
    const std::vector<SpineEdgeLift>& edges() const { return edges_; }

    struct LeafSample {
        HPoint spine_point{0, 1};
        double half_length = 0;           // distance from the spine point to the lamination
        double kink_angle = 0;            // angle of the leaf at its spine kink
        double coord_i = 0, coord_j = 0;  // cuff coordinates of the leaf endpoints
    };

    // Leaf through the spine edge at projection parameter u in [0, length],
    // measured from vertex_from.
    LeafSample leaf_at(const SpineEdgeLift& e, double u) const {
        if (u < -1e-12 || u > e.length + 1e-12) throw Error("leaf_at: parameter outside the edge");
        double lo = e.bis_t_from, hi = e.bis_t_to;
        auto raw_coord = [&](double t) {
            return foot_coordinate(point_on_geodesic(e.bisector_line, t), e.lift_i);
        };
        const double c_lo = raw_coord(lo), c_hi = raw_coord(hi);
        const double tgt = c_lo + (c_hi - c_lo) * (u / e.length);
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((raw_coord(mid) < tgt) == (c_lo < c_hi))
                lo = mid;
            else
                hi = mid;
        }
        LeafSample s;
        s.spine_point = point_on_geodesic(e.bisector_line, 0.5 * (lo + hi));
        s.half_length = 0.5 * (distance_to_geodesic(s.spine_point, e.lift_i) +
                               distance_to_geodesic(s.spine_point, e.lift_j));
        const HPoint fi = project_to_geodesic(s.spine_point, e.lift_i);
        const HPoint fj = project_to_geodesic(s.spine_point, e.lift_j);
        s.kink_angle = angle_at(s.spine_point, fi, fj);
        s.coord_i = cuff_coordinate(e.slot_i, e.pull_i.apply(fi));
        s.coord_j = cuff_coordinate(e.slot_j, e.pull_j.apply(fj));
        return s;
    }

    // Angle at p between the geodesic segments towards q1 and q2.
    static double angle_at(const HPoint& p, const HPoint& q1, const HPoint& q2) {
        const Isometry m = move_to_i(p);
        auto dir = [&](const HPoint& q) {
            const HPoint w = m.apply(q);
            if (std::fabs(w.x) < 1e-14) return w.y > 1.0 ? M_PI / 2.0 : -M_PI / 2.0;
            const double c = (w.x * w.x + w.y * w.y - 1.0) / (2.0 * w.x);
            // tangent at i of the circle centered (c,0), oriented towards w
            return w.x > 0 ? std::atan2(c, 1.0) : std::atan2(-c, -1.0);
        };
        double d = std::fabs(dir(q1) - dir(q2));
        if (d > M_PI) d = 2.0 * M_PI - d;
        return d;
    }

  private:
    std::array<double, 3> len_;
    std::array<Geodesic, 3> axis_{};
    std::array<Geodesic, 3> seam_{};
    std::array<Frame, 3> origin_{};
    std::array<double, 3> origin_t_{};
    std::array<Isometry, 3> hol_{};
    std::array<double, 3> seam_len_{};
    PantsCell cell_ = PantsCell::Theta;
    std::vector<SpineVertexLift> vertices_;
    std::vector<SpineEdgeLift> edges_;

    void build_hexagon() {
        const double d12 = seam_length(len_[0], len_[1], len_[2]);
        const double d23 = seam_length(len_[1], len_[2], len_[0]);
        const double d31 = seam_length(len_[2], len_[0], len_[1]);
        seam_len_ = {d12, d23, d31};

        // Right-angled hexagon, sides l1/2, s12, l2/2, s23, l3/2, s31,
        // traversed counterclockwise (interior left), +pi/2 turns.
        Frame f{rotation_about_i(-M_PI / 2.0)};  // at i heading +x along s12
        const Frame start = f;
        seam_[0] = f.line();
        f = f.advanced(d12).turned(M_PI / 2.0);
        f = f.advanced(len_[1] / 2.0);
        origin_[1] = f;
        f = f.turned(M_PI / 2.0);
        seam_[1] = f.line();
        f = f.advanced(d23).turned(M_PI / 2.0);
        f = f.advanced(len_[2] / 2.0);
        origin_[2] = f;
        f = f.turned(M_PI / 2.0);
        seam_[2] = f.line();
        f = f.advanced(d31).turned(M_PI / 2.0);
        f = f.advanced(len_[0] / 2.0);
        origin_[0] = f;
        f = f.turned(M_PI / 2.0);

        if ((f.f * start.f.inverse()).dist_to_identity() > 1e-8)
            throw Error("PantsLift: hexagon walk failed to close");

        for (int k = 0; k < 3; ++k) {
            axis_[k] = origin_[k].line();
            origin_t_[k] = foot_coordinate(origin_[k].position(), axis_[k]);
        }
        calibrate_holonomy_signs();
    }

    void calibrate_holonomy_signs() {
        for (double sign : {+1.0, -1.0}) {
            std::array<Isometry, 3> h;
            for (int k = 0; k < 3; ++k) h[k] = transvection(axis_[k], sign * len_[k]);
            if ((h[0] * h[1] * h[2]).dist_to_identity() < 1e-8) {
                hol_ = h;
                hol_sign_ = sign;
                return;
            }
        }
        throw Error("PantsLift: boundary holonomies do not compose to the identity");
    }

    std::vector<Isometry> deck_candidates() const {
        std::vector<Isometry> out;
        out.emplace_back();
        for (int k = 0; k < 3; ++k) {
            out.push_back(hol_[k]);
            out.push_back(hol_[k].inverse());
        }
        const size_t first = out.size();
        for (size_t i = 1; i < first; ++i)
            for (size_t j = 1; j < first; ++j) out.push_back(out[i] * out[j]);
        return out;
    }

    static bool same_geodesic(const Geodesic& g, const Geodesic& h, double tol = 1e-8) {
        auto close = [&](const IdealPoint& a, const IdealPoint& b) {
            if (a.infinite || b.infinite) return a.infinite && b.infinite;
            return std::fabs(a.value - b.value) <= tol * (1.0 + std::fabs(a.value));
        };
        return (close(g.e1, h.e1) && close(g.e2, h.e2)) || (close(g.e1, h.e2) && close(g.e2, h.e1));
    }

    // Deck map w with w(lift) = base axis of slot k.
    Isometry pullback_to_axis(const Geodesic& lift, int k) const {
        if (same_geodesic(lift, axis_[k])) return Isometry();
        for (const Isometry& w : deck_candidates())
            if (same_geodesic(w.apply(lift), axis_[k])) return w;
        throw Error("PantsLift: failed to identify a lifted cuff with its base axis");
    }

    SpineVertexLift make_vertex(const std::array<std::pair<int, Geodesic>, 3>& lifts) {
        const Incircle inc = incircle(lifts[0].second, lifts[1].second, lifts[2].second);
        SpineVertexLift v;
        v.center = inc.center;
        v.radius = inc.radius;
        for (int n = 0; n < 3; ++n) {
            const Isometry w = pullback_to_axis(lifts[n].second, lifts[n].first);
            v.feet_by_slot[lifts[n].first].push_back(cuff_coordinate(lifts[n].first, w.apply(inc.basepoints[n])));
        }
        return v;
    }

    void probe_edge(SpineEdgeLift& e, const HPoint& from_center, const HPoint& to_center) {
        e.bisector_line = bisector(e.lift_i, e.lift_j);
        e.bis_t_from = foot_coordinate(from_center, e.bisector_line);
        e.bis_t_to = foot_coordinate(to_center, e.bisector_line);
        e.pull_i = pullback_to_axis(e.lift_i, e.slot_i);
        e.pull_j = pullback_to_axis(e.lift_j, e.slot_j);
        auto coord_i = [&](const HPoint& p) {
            return cuff_coordinate(e.slot_i, e.pull_i.apply(project_to_geodesic(p, e.lift_i)));
        };
        auto coord_j = [&](const HPoint& p) {
            return cuff_coordinate(e.slot_j, e.pull_j.apply(project_to_geodesic(p, e.lift_j)));
        };
        e.start_i = coord_i(from_center);
        e.start_j = coord_j(from_center);
        const double step = (e.bis_t_to - e.bis_t_from) * 1e-4;
        const HPoint probe = point_on_geodesic(e.bisector_line, e.bis_t_from + step);
        e.dir_i = coord_i(probe) > e.start_i ? +1 : -1;
        e.dir_j = coord_j(probe) > e.start_j ? +1 : -1;
        const double li = std::fabs(coord_i(to_center) - e.start_i);
        const double lj = std::fabs(coord_j(to_center) - e.start_j);
        if (std::fabs(li - lj) > 1e-7 * (1.0 + li))
            throw Error("PantsLift: leaf transport is not an isometry across the band");
        e.length = 0.5 * (li + lj);
    }

    void build_spine() {
        const WeightedArcSystem arcs = pants_arc_system(len_[0], len_[1], len_[2]);
        cell_ = arcs.cell;
        if (cell_ == PantsCell::Dumbbell)
            build_dumbbell_spine(arcs);
        else
            build_theta_spine();
    }

    void build_theta_spine() {
        const SpineVertexLift vH = make_vertex({{{0, axis_[0]}, {1, axis_[1]}, {2, axis_[2]}}});
        const SpineVertexLift vH2 = make_vertex(
            {{{0, reflect(axis_[0], seam_[0])}, {1, reflect(axis_[1], seam_[0])}, {2, reflect(axis_[2], seam_[0])}}});
        vertices_ = {vH, vH2};

        // The edge dual to the arc between cuffs i and j crosses the seam
        // joining them; its far endpoint is the reflection of v_H across that
        // seam (a lift of the second hexagon's vertex).
        auto seam_between = [&](int i, int j) -> const Geodesic& {
            if (i == 0 && j == 1) return seam_[0];
            if (i == 1 && j == 2) return seam_[1];
            return seam_[2];  // (0,2)
        };

        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                SpineEdgeLift e;
                e.vertex_from = 0;
                e.vertex_to = 1;
                e.slot_i = i;
                e.slot_j = j;
                e.lift_i = axis_[i];
                e.lift_j = axis_[j];
                probe_edge(e, vH.center, reflect(vH.center, seam_between(i, j)));
                edges_.push_back(e);
            }
    }

    void build_dumbbell_spine(const WeightedArcSystem& arcs) {
        const int d = arcs.dominant;
        const int a = (d + 1) % 3, b = (d + 2) % 3;

        auto loop_vertex = [&](int s) -> std::pair<SpineVertexLift, Isometry> {
            for (const Isometry& w : {hol_[s], hol_[s].inverse()}) {
                try {
                    SpineVertexLift v =
                        make_vertex({{{s, axis_[s]}, {d, axis_[d]}, {d, w.apply(axis_[d])}}});
                    return {v, w};
                } catch (const Error&) {
                    continue;
                }
            }
            throw Error("PantsLift: dumbbell loop vertex has no inscribed circle");
        };

        auto [va, wa] = loop_vertex(a);
        auto [vb, wb] = loop_vertex(b);
        vertices_ = {va, vb};

        // Loop edge around cuff s: from v to its deck translate along
        // bisector(axis_s, w axis_d).
        auto loop_edge = [&](int s, const SpineVertexLift& v, const Isometry& w, int v_id) {
            SpineEdgeLift e;
            e.vertex_from = v_id;
            e.vertex_to = v_id;
            e.slot_i = s;
            e.slot_j = d;
            e.lift_i = axis_[s];
            e.lift_j = axis_[d];
            // The far end of the lifted loop edge is the translate of v by the
            // deck map whose inverse appeared in the vertex triple.
            const HPoint far = w.inverse().apply(v.center);
            if (std::fabs(distance_to_geodesic(far, axis_[s]) - distance_to_geodesic(v.center, axis_[s])) > 1e-8)
                throw Error("PantsLift: dumbbell loop edge endpoint mismatch");
            probe_edge(e, v.center, far);
            edges_.push_back(e);
        };
        loop_edge(a, va, wa, 0);
        loop_edge(b, vb, wb, 1);

        // Bar edge between the lifts of cuff d on either side of the bar: find
        // the translate of vb equidistant from axis_d and wa.apply(axis_d)... the
        // bar runs between v_a and a lift of v_b inside the region bounded by
        // axis_d and its translate through v_a's second cuff-d foot.
        SpineEdgeLift bar;
        bar.vertex_from = 0;
        bar.vertex_to = 1;
        bar.slot_i = d;
        bar.slot_j = d;
        bar.lift_i = axis_[d];
        bar.lift_j = wa.apply(axis_[d]);
        bool found = false;
        for (const Isometry& w : deck_candidates()) {
            const HPoint cand = w.apply(vb.center);
            const double d1 = distance_to_geodesic(cand, bar.lift_i);
            const double d2 = distance_to_geodesic(cand, bar.lift_j);
            if (std::fabs(d1 - vb.radius) < 1e-8 && std::fabs(d2 - vb.radius) < 1e-8 &&
                distance(cand, va.center) < 4.0 * (va.radius + vb.radius) + std::fabs(len_[d])) {
                try {
                    probe_edge(bar, va.center, cand);
                } catch (const Error&) {
                    continue;
                }
                const double expect = (len_[d] - len_[a] - len_[b]) / 2.0;
                if (std::fabs(bar.length - expect) < 1e-6 * (1.0 + expect)) {
                    found = true;
                    break;
                }
            }
        }
        if (!found) throw Error("PantsLift: failed to locate the dumbbell bar edge");
        edges_.push_back(bar);
    }

    double hol_sign_ = 1.0;

  public:
    double holonomy_sign() const { return hol_sign_; }
};

}  // namespace otk
