#pragma once

// Augmented train tracks: arcs attached to the complement of a track, and
// their smoothings (extensions of the track by the arcs, with a turn
// direction shared by both feet of each arc).  Flipping an arc reverses its
// smoothing direction and negates its weight.

#include "orthotrack/track/train_track.hpp"

namespace otk {

struct ArcFoot {
    int branch = 0;       // base-track branch carrying the foot
    double position = 0;  // ordering coordinate along that branch
    int approach = +1;    // +1: arc approaches from the left of the branch, -1: right
};

struct TrackArc {
    ArcFoot f1, f2;
    int turn = +1;  // +1: both feet turn left onto the track (standard), -1: right
};

struct AugmentedTrack {
    TrainTrack base;
    std::vector<TrackArc> arcs;

    TrainTrack smoothed;
    std::vector<int> arc_branch;              // smoothed branch of each arc
    std::vector<int> segment_base;            // smoothed branch -> base branch (-1 for arcs)
    std::vector<std::vector<int>> base_segments;  // base branch -> ordered smoothed segments

    void build() {
        if (base.attachment.empty()) base.finalize();
        const int nb = base.num_branches;
        struct Foot {
            double pos;
            int arc;
            int which;  // 1 or 2
        };
        std::vector<std::vector<Foot>> feet(nb);
        for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
            feet[arcs[a].f1.branch].push_back({arcs[a].f1.position, a, 1});
            feet[arcs[a].f2.branch].push_back({arcs[a].f2.position, a, 2});
        }
        for (auto& f : feet)
            std::sort(f.begin(), f.end(), [](const Foot& x, const Foot& y) { return x.pos < y.pos; });

        smoothed = TrainTrack{};
        segment_base.clear();
        base_segments.assign(nb, {});
        arc_branch.assign(arcs.size(), -1);

        auto new_branch = [&](int base_branch) {
            segment_base.push_back(base_branch);
            return smoothed.num_branches++;
        };

        // Split base branches into segments; closed circles split cyclically.
        std::vector<std::array<int, 2>> end_branch(nb);  // segment carrying each original end
        for (int b = 0; b < nb; ++b) {
            const bool closed = base.attachment.empty() ||
                                (base.attachment[b][0] < 0 && base.attachment[b][1] < 0);
            const int k = static_cast<int>(feet[b].size());
            if (k == 0) {
                const int s = new_branch(b);
                base_segments[b] = {s};
                end_branch[b] = {s, s};
                continue;
            }
            const int nseg = closed ? k : k + 1;
            for (int i = 0; i < nseg; ++i) base_segments[b].push_back(new_branch(b));
            end_branch[b] = {base_segments[b].front(), base_segments[b].back()};
        }

        // Arc branches.
        for (int a = 0; a < static_cast<int>(arcs.size()); ++a) arc_branch[a] = new_branch(-1);

        // Original switches with renamed half-branches.
        for (const Switch& s : base.switches) {
            Switch ns;
            auto rename = [&](const HalfBranch& h) {
                return HalfBranch{end_branch[h.branch][h.end], h.end};
            };
            for (const HalfBranch& h : s.side_a) ns.side_a.push_back(rename(h));
            for (const HalfBranch& h : s.side_b) ns.side_b.push_back(rename(h));
            smoothed.switches.push_back(ns);
        }

        // A trivalent switch at every foot.  The "back" side carries the
        // segment before the foot (its end 1), the "front" side the segment
        // after (its end 0); the arc joins front iff approach * turn > 0, and
        // sits above the through-branch in the side order iff it approaches
        // from the left.
        for (int b = 0; b < nb; ++b) {
            const int k = static_cast<int>(feet[b].size());
            if (k == 0) continue;
            const bool closed = base.attachment[b][0] < 0 && base.attachment[b][1] < 0;
            const auto& segs = base_segments[b];
            for (int i = 0; i < k; ++i) {
                const Foot& f = feet[b][i];
                const TrackArc& arc = arcs[f.arc];
                const ArcFoot& af = (f.which == 1) ? arc.f1 : arc.f2;
                const int before = closed ? segs[(i + k - 1) % k] : segs[i];
                const int after = closed ? segs[i] : segs[i + 1];
                const HalfBranch arc_hb{arc_branch[f.arc], f.which - 1};
                Switch ns;
                ns.side_a = {HalfBranch{before, 1}};
                ns.side_b = {HalfBranch{after, 0}};
                const bool attach_front = af.approach * arc.turn > 0;
                auto& side = attach_front ? ns.side_b : ns.side_a;
                if (af.approach > 0)
                    side.insert(side.begin(), arc_hb);
                else
                    side.push_back(arc_hb);
                smoothed.switches.push_back(ns);
            }
        }

        if (!base.branch_lengths.empty()) smoothed.branch_lengths.assign(smoothed.num_branches, 0.0);
        smoothed.finalize();
    }
};

// Standard smoothing: every arc turns left.
inline AugmentedTrack standard_smoothing(const TrainTrack& base, std::vector<TrackArc> arcs) {
    AugmentedTrack out;
    out.base = base;
    for (auto& a : arcs) a.turn = +1;
    out.arcs = std::move(arcs);
    out.build();
    return out;
}

// Flip one arc: reverse its smoothing direction; weights transported by
// negating the arc weight.
inline std::pair<AugmentedTrack, WeightSystem> flip(const AugmentedTrack& t, int arc, const WeightSystem& w) {
    if (arc < 0 || arc >= static_cast<int>(t.arcs.size())) throw Error("flip: no such arc");
    AugmentedTrack out = t;
    out.arcs[arc].turn = -out.arcs[arc].turn;
    out.build();
    WeightSystem wf = w;
    wf.weights[t.arc_branch[arc]] = -wf.weights[t.arc_branch[arc]];
    if (!wf.satisfies_switch_conditions(out.smoothed))
        throw Error("flip: transported weights violate the switch conditions");
    return {out, wf};
}

}  // namespace otk
