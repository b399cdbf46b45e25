#pragma once

// Vertical leaf space of a cut cylinder complex.  Cutting every horizontal
// saddle (band) a distance D from each end severs the short bands entirely
// (the visible arcs) and leaves glued "middles" on the long ones.  The
// quotient of the cylinders by their vertical foliation, glued along the
// middles, is a train track; branch lengths are horizontal lengths, branch
// weights the vertical mass of a tie.

#include <numeric>

#include "orthotrack/flat/complex.hpp"
#include "orthotrack/track/augmented.hpp"

namespace otk {

struct TieCrossing {
    int curve = 0;
    double pos = 0;
    int enter_side = 0;  // side through which the tie enters this cylinder, going bottom to top
};

struct TieEnd {
    int curve = 0;
    int side = 0;  // lid side where the tie terminates
    double pos = 0;
    int zero = -1;        // zero of the adjacent complementary piece (zone)
    double zero_pos = 0;  // its position on that circle
};

// Vertical-leaf tracing through a cut complex (shared by the leaf-space
// builder and the cellulation construction).
class TieTracer {
  public:
    TieTracer(const CylinderComplex& cx, std::vector<bool> severed, double cut_depth, double tol = 1e-9)
        : cx_(cx), severed_(std::move(severed)), d_(cut_depth), tol_(tol) {}

    struct Tie {
        std::vector<TieCrossing> crossings;  // ordered bottom (side-1 exit) to top
        TieEnd end0, end1;                   // end0: side-0 exit (top), end1: bottom
    };

    std::optional<std::tuple<int, double, int>> continue_through(int curve, double pos, int side) const {
        for (size_t i = 0; i < cx_.bands.size(); ++i) {
            if (severed_[i]) continue;
            const CxBand& band = cx_.bands[i];
            for (int which : {0, 1}) {
                const CxBandSide& s = which == 0 ? band.a : band.b;
                const CxBandSide& o = which == 0 ? band.b : band.a;
                if (s.curve != curve || s.side != side) continue;
                const auto t = cx_.band_parameter(s, band.length, pos, tol_);
                if (!t) continue;
                if (*t < d_ - tol_ || *t > band.length - d_ + tol_) continue;
                const double tc = std::min(std::max(*t, d_), band.length - d_);
                const double target = mod_len(o.start + o.dir * tc, cx_.circumference[o.curve]);
                return std::make_tuple(o.curve, target, o.side);
            }
        }
        return std::nullopt;
    }

    Tie follow_tie(int curve, double pos) const {
        Tie tie;
        auto walk = [&](int exit_side) {
            std::vector<TieCrossing> list;
            int c = curve, side = exit_side;
            double p = pos;
            for (int step = 0;; ++step) {
                if (step > 10000) throw Error("leaf space: runaway vertical leaf (cut depth too small?)");
                const auto next = continue_through(c, p, side);
                if (!next) break;
                auto [nc, np, nside] = *next;
                const int next_exit = nside == 0 ? 1 : 0;
                if (nc == curve && next_exit == exit_side &&
                    std::fabs(circ_diff(np, pos, cx_.circumference[nc])) < tol_) {
                    throw Error("leaf space: closed vertical leaf through curve " + std::to_string(curve) +
                                " position " + std::to_string(pos));
                }
                list.push_back({nc, np, nside});
                c = nc;
                p = np;
                side = next_exit;
            }
            TieEnd end;
            end.curve = c;
            end.side = side;
            end.pos = p;
            return std::make_pair(list, end);
        };

        auto [down, e1] = walk(1);
        auto [up, e0] = walk(0);
        // Crossings ordered bottom (side-1 direction) to top: the reversed
        // down-list with flipped entry sides, the base, then the up-list.
        for (auto it = down.rbegin(); it != down.rend(); ++it)
            tie.crossings.push_back({it->curve, it->pos, 1 - it->enter_side});
        tie.crossings.push_back({curve, pos, 1});
        for (const auto& cr : up) tie.crossings.push_back(cr);
        tie.end1 = e1;
        tie.end0 = e0;
        return tie;
    }

    // Zone of a tie end: the zero of the complementary piece it lands in.
    TieEnd resolve_zone(TieEnd end) const {
        double best = 1e18;
        for (const CxZero& z : cx_.zeros[end.curve]) {
            if (z.side != end.side) continue;
            const double dist = std::fabs(circ_diff(z.pos, end.pos, cx_.circumference[end.curve]));
            if (dist < best) {
                best = dist;
                end.zero = z.id;
                end.zero_pos = z.pos;
            }
        }
        if (end.zero < 0) throw Error("leaf space: tie terminates on a circle side without zeros");
        if (best > d_ + 1e-6)
            throw Error("leaf space: tie end is farther than the cut depth from every basepoint");
        return end;
    }

    // Developed offset of the end-zone zero relative to from_pos (in the
    // chart at from_pos), and the chart sign of the end level.
    std::pair<double, int> develop_end(int curve, double from_pos, int exit_side, const TieEnd& end) const {
        int c = curve, side = exit_side;
        double p = from_pos;
        int scale = 1;
        for (int step = 0;; ++step) {
            if (step > 10000) throw Error("leaf space: runaway development");
            bool advanced = false;
            for (size_t i = 0; i < cx_.bands.size() && !advanced; ++i) {
                if (severed_[i]) continue;
                const CxBand& band = cx_.bands[i];
                for (int which : {0, 1}) {
                    const CxBandSide& s = which == 0 ? band.a : band.b;
                    const CxBandSide& o = which == 0 ? band.b : band.a;
                    if (s.curve != c || s.side != side) continue;
                    const auto t = cx_.band_parameter(s, band.length, p, tol_);
                    if (!t || *t < d_ - tol_ || *t > band.length - d_ + tol_) continue;
                    const double tc = std::min(std::max(*t, d_), band.length - d_);
                    const double np = mod_len(o.start + o.dir * tc, cx_.circumference[o.curve]);
                    scale *= s.dir * o.dir;
                    c = o.curve;
                    p = np;
                    side = o.side == 0 ? 1 : 0;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
        if (c != end.curve || std::fabs(circ_diff(p, end.pos, cx_.circumference[c])) > 1e-7)
            throw Error("leaf space: development did not reach the recorded tie end");
        const double local = circ_diff(end.zero_pos, p, cx_.circumference[c]);
        return {scale * local, scale};
    }

    const CylinderComplex& complex() const { return cx_; }
    double cut_depth() const { return d_; }
    const std::vector<bool>& severed() const { return severed_; }

  private:
    const CylinderComplex& cx_;
    std::vector<bool> severed_;
    double d_, tol_;
};

struct LeafSpace {
    TrainTrack track;
    std::vector<bool> severed;       // per band of the complex
    std::vector<TrackArc> arcs;      // one per severed band, feet on the track
    std::vector<int> severed_bands;  // band indices (the visible arcs)
    std::vector<int> glued_bands;
    double cut_depth = 0;

    struct BranchInfo {
        double length = 0;
        double weight = 0;                   // vertical mass of a tie (lambda)
        std::vector<TieCrossing> crossings;  // bottom to top along the tie
        TieEnd bottom, top;
        double dev_bottom_zero = 0, dev_top_zero = 0;  // developed offsets of the zone
                                                       // zeros relative to the tie base
        int rep_curve = 0;
        double rep_lo = 0, rep_hi = 0;
    };
    std::vector<BranchInfo> branches;
};

class LeafSpaceBuilder {
  public:
    LeafSpaceBuilder(const CylinderComplex& cx, double cut_depth, double tol = 1e-9)
        : cx_(cx), d_(cut_depth), tol_(tol) {
        if (!(cut_depth > 0)) throw Error("leaf space: cut depth must be positive");
    }

    using Tie = TieTracer::Tie;

    LeafSpace build() {
        classify_bands();
        find_breakpoints();
        build_intervals();
        glue_intervals();
        assemble_branches();
        assemble_switches();
        attach_arcs();
        out_.cut_depth = d_;
        out_.severed = severed_;
        out_.track.finalize();
        validate();
        return out_;
    }

  private:
    const CylinderComplex& cx_;
    double d_, tol_;
    LeafSpace out_;

    std::vector<bool> severed_;
    std::vector<std::vector<double>> breakpoints_;
    std::vector<int> interval_offset_;
    int num_intervals_ = 0;

    std::vector<int> parent_;
    std::vector<int> sign_;

    TieTracer tracer() const { return TieTracer(cx_, severed_, d_, tol_); }
    Tie follow_tie(int curve, double pos) const { return tracer().follow_tie(curve, pos); }

    std::pair<int, int> find_signed(int x) const {
        int sign = 1;
        int cur = x;
        while (parent_[cur] != cur) {
            sign *= sign_[cur];
            cur = parent_[cur];
        }
        return {cur, sign};
    }

    void unite(int x, int y, int rel_sign) {
        auto [rx, sx] = find_signed(x);
        auto [ry, sy] = find_signed(y);
        if (rx == ry) {
            if (sx * sy != rel_sign) throw Error("leaf space: inconsistent gluing orientations (one-sided band?)");
            return;
        }
        parent_[ry] = rx;
        sign_[ry] = sx * rel_sign * sy;
    }

    void classify_bands() {
        severed_.assign(cx_.bands.size(), false);
        for (size_t i = 0; i < cx_.bands.size(); ++i) {
            const double c = cx_.bands[i].length;
            if (std::fabs(c - 2.0 * d_) < tol_)
                throw DegeneracyError("leaf space: band " + std::to_string(i) +
                                      " has length exactly twice the cut depth (degenerate visibility)");
            severed_[i] = c < 2.0 * d_;
            (severed_[i] ? out_.severed_bands : out_.glued_bands).push_back(static_cast<int>(i));
        }
    }

    void add_breakpoint(int curve, double pos) {
        breakpoints_[curve].push_back(mod_len(pos, cx_.circumference[curve]));
    }

    void find_breakpoints() {
        breakpoints_.assign(cx_.num_curves(), {});
        for (int bi : out_.glued_bands) {
            const CxBand& band = cx_.bands[bi];
            for (double t : {d_, band.length - d_}) {
                const double pos = mod_len(band.at_a(t), cx_.circumference[band.a.curve]);
                const Tie tie = follow_tie(band.a.curve, pos);
                for (const TieCrossing& cr : tie.crossings) add_breakpoint(cr.curve, cr.pos);
            }
        }
        for (int c = 0; c < cx_.num_curves(); ++c) {
            auto& b = breakpoints_[c];
            std::sort(b.begin(), b.end());
            std::vector<double> merged;
            for (double x : b) {
                if (!merged.empty() && x - merged.back() < tol_) continue;
                merged.push_back(x);
            }
            if (merged.size() > 1 && cx_.circumference[c] - merged.back() + merged.front() < tol_)
                merged.pop_back();
            b = merged;
        }
    }

    void build_intervals() {
        interval_offset_.assign(cx_.num_curves() + 1, 0);
        for (int c = 0; c < cx_.num_curves(); ++c)
            interval_offset_[c + 1] =
                interval_offset_[c] + std::max<int>(1, static_cast<int>(breakpoints_[c].size()));
        num_intervals_ = interval_offset_[cx_.num_curves()];
        parent_.resize(num_intervals_);
        sign_.assign(num_intervals_, 1);
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int intervals_on(int c) const { return interval_offset_[c + 1] - interval_offset_[c]; }

    int interval_at(int c, double pos) const {
        const auto& b = breakpoints_[c];
        if (b.empty()) return interval_offset_[c];
        const double p = mod_len(pos, cx_.circumference[c]);
        int idx = static_cast<int>(std::upper_bound(b.begin(), b.end(), p) - b.begin()) - 1;
        if (idx < 0) idx = static_cast<int>(b.size()) - 1;
        return interval_offset_[c] + idx;
    }

    std::pair<double, double> interval_span(int c, int local) const {
        const auto& b = breakpoints_[c];
        if (b.empty()) return {0.0, cx_.circumference[c]};
        const double lo = b[local];
        const double hi = local + 1 < static_cast<int>(b.size()) ? b[local + 1] : b[0] + cx_.circumference[c];
        return {lo, hi};
    }

    void glue_intervals() {
        for (int bi : out_.glued_bands) {
            const CxBand& band = cx_.bands[bi];
            std::vector<double> params{d_, band.length - d_};
            for (double bp : breakpoints_[band.a.curve]) {
                const auto t = cx_.band_parameter(band.a, band.length, bp, tol_);
                if (t && *t > d_ + tol_ && *t < band.length - d_ - tol_) params.push_back(*t);
            }
            for (double bp : breakpoints_[band.b.curve]) {
                const auto t = cx_.band_parameter(band.b, band.length, bp, tol_);
                if (t && *t > d_ + tol_ && *t < band.length - d_ - tol_) params.push_back(*t);
            }
            std::sort(params.begin(), params.end());
            const int rel = band.a.dir * band.b.dir;
            for (size_t i = 0; i + 1 < params.size(); ++i) {
                if (params[i + 1] - params[i] < tol_) continue;
                const double tmid = 0.5 * (params[i] + params[i + 1]);
                unite(interval_at(band.a.curve, band.at_a(tmid)), interval_at(band.b.curve, band.at_b(tmid)), rel);
            }
        }
    }

    std::vector<int> branch_of_;
    std::vector<int> sign_to_rep_;
    std::vector<int> rep_interval_;

    int curve_of_interval(int id) const {
        for (int c = 0; c < cx_.num_curves(); ++c)
            if (id < interval_offset_[c + 1]) return c;
        throw Error("leaf space: bad interval id");
    }

    void assemble_branches() {
        branch_of_.assign(num_intervals_, -1);
        sign_to_rep_.assign(num_intervals_, 1);
        rep_interval_.clear();
        for (int i = 0; i < num_intervals_; ++i) {
            auto [root, sign] = find_signed(i);
            (void)sign;
            if (branch_of_[root] < 0) {
                branch_of_[root] = out_.track.num_branches++;
                rep_interval_.push_back(root);
            }
        }
        for (int i = 0; i < num_intervals_; ++i) {
            auto [root, sign] = find_signed(i);
            branch_of_[i] = branch_of_[root];
            sign_to_rep_[i] = sign;
        }

        const TieTracer tr = tracer();
        out_.branches.resize(out_.track.num_branches);
        out_.track.branch_lengths.assign(out_.track.num_branches, 0.0);
        for (int b = 0; b < out_.track.num_branches; ++b) {
            const int rep = rep_interval_[b];
            const int curve = curve_of_interval(rep);
            const auto span = interval_span(curve, rep - interval_offset_[curve]);
            LeafSpace::BranchInfo& info = out_.branches[b];
            info.rep_curve = curve;
            info.rep_lo = span.first;
            info.rep_hi = span.second;
            info.length = span.second - span.first;
            out_.track.branch_lengths[b] = info.length;

            const double mid = mod_len(0.5 * (span.first + span.second), cx_.circumference[curve]);
            const Tie tie = follow_tie(curve, mid);
            info.crossings = tie.crossings;
            info.weight = 0;
            for (const auto& cr : tie.crossings) info.weight += cx_.height[cr.curve];
            info.bottom = tr.resolve_zone(tie.end1);
            info.top = tr.resolve_zone(tie.end0);
            info.dev_bottom_zero = tr.develop_end(curve, mid, 1, info.bottom).first;
            info.dev_top_zero = tr.develop_end(curve, mid, 0, info.top).first;
        }
    }

    int breakpoint_index(int curve, double pos) const {
        const auto& b = breakpoints_[curve];
        for (int i = 0; i < static_cast<int>(b.size()); ++i)
            if (std::fabs(circ_diff(b[i], pos, cx_.circumference[curve])) < 10 * tol_) return i;
        throw Error("leaf space: crossing position is not a breakpoint");
    }

    HalfBranch germ_at(int curve, int idx, int which) const {
        const int n = intervals_on(curve);
        const int local = which == 1 ? idx : (idx + n - 1) % n;
        const int id = interval_offset_[curve] + local;
        auto [root, sign] = find_signed(id);
        const int branch = branch_of_[root];
        const int local_end = which == 1 ? 0 : 1;
        const int end = sign > 0 ? local_end : 1 - local_end;
        return HalfBranch{branch, end};
    }

    void assemble_switches() {
        std::set<std::vector<std::pair<int, int>>> seen;
        for (int bi : out_.glued_bands) {
            const CxBand& band = cx_.bands[bi];
            for (double t : {d_, band.length - d_}) {
                const double pos = mod_len(band.at_a(t), cx_.circumference[band.a.curve]);
                const Tie tie = follow_tie(band.a.curve, pos);

                std::vector<std::pair<int, int>> key;
                for (const auto& cr : tie.crossings) key.emplace_back(cr.curve, breakpoint_index(cr.curve, cr.pos));
                std::sort(key.begin(), key.end());
                if (seen.count(key)) continue;
                seen.insert(key);

                build_switch(tie);
            }
        }
    }

    struct GlueStep {
        int sign = 1;
        bool extends_neg = false, extends_pos = false;  // in the lower level's chart
    };

    GlueStep glue_step(const TieCrossing& lower, const TieCrossing& upper) const {
        const int exit_side = lower.enter_side == 0 ? 1 : 0;
        for (size_t i = 0; i < cx_.bands.size(); ++i) {
            if (severed_[i]) continue;
            const CxBand& band = cx_.bands[i];
            for (int which : {0, 1}) {
                const CxBandSide& s = which == 0 ? band.a : band.b;
                const CxBandSide& o = which == 0 ? band.b : band.a;
                if (s.curve != lower.curve || s.side != exit_side) continue;
                const auto t = cx_.band_parameter(s, band.length, lower.pos, tol_);
                if (!t || *t < d_ - tol_ || *t > band.length - d_ + tol_) continue;
                const double tc = std::min(std::max(*t, d_), band.length - d_);
                const double np = mod_len(o.start + o.dir * tc, cx_.circumference[o.curve]);
                if (o.curve != upper.curve ||
                    std::fabs(circ_diff(np, upper.pos, cx_.circumference[o.curve])) > 10 * tol_)
                    continue;
                GlueStep g;
                g.sign = s.dir * o.dir;
                const bool param_up = *t < band.length - d_ - tol_;
                const bool param_down = *t > d_ + tol_;
                g.extends_pos = s.dir > 0 ? param_up : param_down;
                g.extends_neg = s.dir > 0 ? param_down : param_up;
                return g;
            }
        }
        throw Error("leaf space: consecutive tie levels are not glued");
    }

    void build_switch(const Tie& tie) {
        const int n = static_cast<int>(tie.crossings.size());
        std::vector<int> level_sign(n, 1);
        std::vector<GlueStep> steps;
        for (int k = 0; k + 1 < n; ++k) {
            steps.push_back(glue_step(tie.crossings[k], tie.crossings[k + 1]));
            level_sign[k + 1] = level_sign[k] * steps.back().sign;
        }

        Switch sw;
        for (int coherent_side : {-1, +1}) {
            std::vector<HalfBranch>& side = coherent_side < 0 ? sw.side_a : sw.side_b;
            int run_start = 0;
            for (int k = 0; k < n; ++k) {
                bool connected_up = false;
                if (k + 1 < n) {
                    const int local_dir = coherent_side * level_sign[k];
                    connected_up = local_dir > 0 ? steps[k].extends_pos : steps[k].extends_neg;
                }
                if (!connected_up) {
                    const TieCrossing& cr = tie.crossings[run_start];
                    const int local_dir = coherent_side * level_sign[run_start];
                    const int idx = breakpoint_index(cr.curve, cr.pos);
                    side.push_back(germ_at(cr.curve, idx, local_dir > 0 ? 1 : 0));
                    run_start = k + 1;
                }
            }
        }
        out_.track.switches.push_back(sw);
    }

    void attach_arcs() {
        for (int bi : out_.severed_bands) {
            const CxBand& band = cx_.bands[bi];
            TrackArc arc;
            arc.turn = +1;
            auto foot = [&](const CxBandSide& s) {
                const double pos = mod_len(s.start + s.dir * band.length / 2.0, cx_.circumference[s.curve]);
                const int id = interval_at(s.curve, pos);
                auto [root, sign] = find_signed(id);
                const int branch = branch_of_[root];
                const int local = id - interval_offset_[s.curve];
                const auto span = interval_span(s.curve, local);
                double p = mod_len(pos, cx_.circumference[s.curve]);
                if (p < span.first) p += cx_.circumference[s.curve];
                const double local_coord = p - span.first;
                ArcFoot f;
                f.branch = branch;
                f.position = sign > 0 ? local_coord : (span.second - span.first) - local_coord;
                f.approach = (s.side == 0 ? +1 : -1) * sign;
                return f;
            };
            arc.f1 = foot(band.a);
            arc.f2 = foot(band.b);
            out_.arcs.push_back(arc);
        }
    }

    void validate() const {
        double total = 0;
        for (const auto& b : out_.branches) total += b.length * b.weight;
        if (std::fabs(total - cx_.area()) > 1e-6 * (1.0 + cx_.area()))
            throw Error("leaf space: branch rectangles do not tile the surface (area " + std::to_string(total) +
                        " vs " + std::to_string(cx_.area()) + ")");
        WeightSystem w;
        for (const auto& b : out_.branches) w.weights.push_back(b.weight);
        if (!w.satisfies_switch_conditions(out_.track, 1e-7))
            throw Error("leaf space: lamination weights violate the switch conditions");
    }
};

inline LeafSpace vertical_leaf_space(const CylinderComplex& cx, double cut_depth) {
    return LeafSpaceBuilder(cx, cut_depth).build();
}

}  // namespace otk
