#pragma once

// Holonomy representations from Fenchel-Nielsen data via a graph-of-groups
// assembly over the pants graph: each pants contributes two free generators,
// each non-tree edge a stable letter, and every edge an explicit relator word.
//
// Conventions (documented because the paper defers them to its prequel):
//  * cuff coordinates: origin at the foot of the seam to the next cuff in the
//    pants' cyclic order, positive direction along the pants boundary
//    orientation;
//  * gluing at twist tau identifies side-B coordinate x with side-A coordinate
//    tau - x; one full twist equals the curve length;
//  * the root pants' first cuff axis is the imaginary axis, which fixes the
//    marking-compatible normalization used by rep_distance.

#include <map>
#include <memory>

#include "orthotrack/pants/marking.hpp"
#include "orthotrack/psl2/metric.hpp"
#include "orthotrack/surface/spec.hpp"

namespace otk {

using Word = std::vector<std::pair<std::string, int>>;  // (generator label, +-1)

inline Word inverse_word(const Word& w) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.emplace_back(it->first, -it->second);
    return out;
}

inline Word operator*(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

struct HolonomyRep {
    std::map<std::string, Isometry> generators;
    std::vector<Word> relators;
    std::vector<Word> cuff_words;       // per curve
    std::vector<Isometry> placements;   // per pants, the developing frame
    std::vector<Isometry> stable;       // per curve; identity for tree edges
    std::vector<bool> edge_in_tree;     // per curve
    std::vector<std::string> pants_gen_labels;  // 2 per pants: labels[2p], labels[2p+1]

    Isometry evaluate(const Word& w) const {
        Isometry m;
        for (const auto& [label, exp] : w) {
            const auto it = generators.find(label);
            if (it == generators.end()) throw Error("HolonomyRep: unknown generator '" + label + "'");
            m = m * (exp > 0 ? it->second : it->second.inverse());
        }
        return m;
    }

    GeneratingSet generating_set() const { return GeneratingSet(generators); }

    double max_relator_defect(const BasepointMetric& m) const {
        double worst = 0;
        for (const Word& r : relators) worst = std::max(worst, basepoint_norm(evaluate(r), m));
        return worst;
    }
};

// Word for the boundary curve at a pants slot, in that pants' two generators.
inline Word slot_word(const std::vector<std::string>& labels, int pants, int slot) {
    const std::string& x0 = labels[2 * pants];
    const std::string& x1 = labels[2 * pants + 1];
    switch (slot) {
        case 0: return {{x0, +1}};
        case 1: return {{x1, +1}};
        case 2: return {{x1, -1}, {x0, -1}};  // (x0 x1)^{-1}
        default: throw Error("slot_word: bad slot");
    }
}

class SurfaceGeometry {
  public:
    explicit SurfaceGeometry(const SurfaceSpec& spec) : spec_(spec) {
        for (int p = 0; p < spec.num_pants(); ++p) {
            const auto l = spec.pants_cuff_lengths(p);
            pieces_.emplace_back(std::make_shared<PantsPiece>(l[0], l[1], l[2]));
        }
        build_placements();
    }

    const SurfaceSpec& spec() const { return spec_; }
    const PantsPiece& piece(int p) const { return *pieces_[p]; }

    // Gluing isometry mapping pants-local coordinates of the B side of curve c
    // into the local coordinates of its A side.
    Isometry gluing(int c) const {
        const CurveSide a = spec_.sides[c][0], b = spec_.sides[c][1];
        const Frame& fa = pieces_[a.pants]->lift().origin_frame(a.slot);
        const Frame& fb = pieces_[b.pants]->lift().origin_frame(b.slot);
        return fa.advanced(spec_.twists[c]).turned(M_PI).f * fb.f.inverse();
    }

    const Isometry& placement(int p) const { return placements_[p]; }
    bool in_tree(int c) const { return tree_edge_[c]; }

  private:
    void build_placements() {
        const int np = spec_.num_pants(), nc = spec_.num_curves();
        placements_.assign(np, Isometry());
        tree_edge_.assign(nc, false);
        std::vector<bool> placed(np, false);
        placed[0] = true;
        std::vector<int> queue{0};
        while (!queue.empty()) {
            const int p = queue.back();
            queue.pop_back();
            for (int s = 0; s < 3; ++s) {
                const int c = spec_.pants[p][s];
                const CurveSide a = spec_.sides[c][0], b = spec_.sides[c][1];
                // only consider the edge from its A side to avoid doubling
                if (a.pants != p || a.slot != s) continue;
                if (b.pants == p || placed[b.pants]) continue;
                tree_edge_[c] = true;
                placements_[b.pants] = placements_[p] * gluing(c);
                placed[b.pants] = true;
                queue.push_back(b.pants);
            }
        }
        for (int p = 0; p < np; ++p)
            if (!placed[p]) throw Error("SurfaceGeometry: failed to place every pants (disconnected?)");
    }

    SurfaceSpec spec_;
    std::vector<std::shared_ptr<PantsPiece>> pieces_;
    std::vector<Isometry> placements_;
    std::vector<bool> tree_edge_;
};

inline HolonomyRep holonomy_from_fn(const SurfaceSpec& spec) {
    const SurfaceGeometry geo(spec);
    HolonomyRep rep;

    for (int p = 0; p < spec.num_pants(); ++p) {
        rep.pants_gen_labels.push_back("p" + std::to_string(p) + "_x0");
        rep.pants_gen_labels.push_back("p" + std::to_string(p) + "_x1");
        const Isometry& psi = geo.placement(p);
        rep.generators[rep.pants_gen_labels[2 * p]] = psi * geo.piece(p).lift().holonomy(0) * psi.inverse();
        rep.generators[rep.pants_gen_labels[2 * p + 1]] = psi * geo.piece(p).lift().holonomy(1) * psi.inverse();
        rep.placements.push_back(psi);
    }

    rep.edge_in_tree.resize(spec.num_curves());
    rep.stable.resize(spec.num_curves());
    for (int c = 0; c < spec.num_curves(); ++c) {
        rep.edge_in_tree[c] = geo.in_tree(c);
        const CurveSide a = spec.sides[c][0], b = spec.sides[c][1];
        Word relator = slot_word(rep.pants_gen_labels, a.pants, a.slot);
        if (!geo.in_tree(c)) {
            const std::string label = "t_" + spec.curves[c];
            rep.stable[c] =
                geo.placement(a.pants) * geo.gluing(c) * geo.placement(b.pants).inverse();
            rep.generators[label] = rep.stable[c];
            relator = relator * Word{{label, +1}} * slot_word(rep.pants_gen_labels, b.pants, b.slot) *
                      Word{{label, -1}};
        } else {
            rep.stable[c] = Isometry();
            relator = relator * slot_word(rep.pants_gen_labels, b.pants, b.slot);
        }
        rep.relators.push_back(relator);
        rep.cuff_words.push_back(slot_word(rep.pants_gen_labels, a.pants, a.slot));
    }

    // Construction-time sanity: relators must evaluate to the identity and the
    // cuff traces must match the prescribed lengths.
    for (int c = 0; c < spec.num_curves(); ++c) {
        if (rep.evaluate(rep.relators[c]).dist_to_identity() > 1e-8)
            throw Error("holonomy_from_fn: relator of curve '" + spec.curves[c] + "' is not the identity");
        const double tr = rep.evaluate(rep.cuff_words[c]).trace_abs();
        if (std::fabs(tr - 2.0 * std::cosh(spec.lengths[c] / 2.0)) > 1e-8 * (1.0 + tr))
            throw Error("holonomy_from_fn: cuff trace mismatch on '" + spec.curves[c] + "'");
    }
    return rep;
}

// Translation length of the hyperbolic element represented by a word.
inline double curve_length(const SurfaceSpec& spec, const Word& word) {
    if (word.empty()) throw Error("curve_length: trivial word");
    const HolonomyRep rep = holonomy_from_fn(spec);
    const double tr = rep.evaluate(word).trace_abs();
    if (tr <= 2.0 + 1e-12) throw Error("curve_length: word is not hyperbolic (|trace| <= 2)");
    return 2.0 * std::acosh(tr / 2.0);
}

inline double curve_length(const HolonomyRep& rep, const Word& word) {
    if (word.empty()) throw Error("curve_length: trivial word");
    const double tr = rep.evaluate(word).trace_abs();
    if (tr <= 2.0 + 1e-12) throw Error("curve_length: word is not hyperbolic (|trace| <= 2)");
    return 2.0 * std::acosh(tr / 2.0);
}

// Collar half-width about a geodesic of length l (collar lemma).
inline double collar_width(double l) {
    if (!(l > 0)) throw Error("collar_width: length must be positive");
    return std::asinh(1.0 / std::sinh(l / 2.0));
}

// A transverse curve given by its pants-graph itinerary: a cyclic sequence of
// steps, each crossing a curve and then passing through the pants on the far
// side.  A passage with equal entry and exit slots must name the cuff it winds
// around (the direct seam arc is used otherwise).
struct ItineraryStep {
    int cross_curve = 0;   // curve index crossed, entering its B side... direction resolved by slots
    int enter_pants = 0;   // pants entered after crossing
    int enter_slot = 0;    // slot of cross_curve in enter_pants
    int exit_slot = 0;     // slot left through
    int around_slot = -1;  // for enter_slot == exit_slot: the cuff wound around
    int winding = +1;      // sign of the winding for same-slot passages
};

struct TransverseCurve {
    std::vector<ItineraryStep> steps;
};

// Geometric intersection number with the pants multicurve, per component.
inline std::vector<int> crossing_counts(const SurfaceSpec& spec, const TransverseCurve& c) {
    std::vector<int> counts(spec.num_curves(), 0);
    for (const auto& s : c.steps) {
        if (s.cross_curve < 0 || s.cross_curve >= spec.num_curves())
            throw Error("intersection_number: itinerary references an unknown curve");
        if (s.enter_slot == s.exit_slot && s.around_slot < 0)
            throw Error("intersection_number: unsupported word shape (same-slot passage without winding)");
        counts[s.cross_curve]++;
    }
    return counts;
}

inline int intersection_number(const SurfaceSpec& spec, const TransverseCurve& c1,
                               const std::vector<double>* = nullptr) {
    int total = 0;
    for (int n : crossing_counts(spec, c1)) total += n;
    return total;
}

// Word of a transverse itinerary in the holonomy generators.  Crossings
// contribute stable letters (trivial for tree edges); same-slot passages
// contribute the boundary word of the cuff they wind around.
inline Word itinerary_word(const SurfaceSpec& spec, const HolonomyRep& rep, const TransverseCurve& c) {
    Word w;
    for (const auto& s : c.steps) {
        const CurveSide a = spec.sides[s.cross_curve][0];
        const bool forward = !(a.pants == s.enter_pants && a.slot == s.enter_slot);
        // crossing from the A side lands on the B side and vice versa
        if (!rep.edge_in_tree[s.cross_curve]) {
            const std::string label = "t_" + spec.curves[s.cross_curve];
            w.emplace_back(label, forward ? +1 : -1);
        }
        if (s.enter_slot == s.exit_slot) {
            if (s.around_slot < 0) throw Error("itinerary_word: same-slot passage without winding");
            const Word around = slot_word(rep.pants_gen_labels, s.enter_pants, s.around_slot);
            w = w * (s.winding > 0 ? around : inverse_word(around));
        }
        // direct passages between distinct slots stay inside the fundamental
        // domain of the pants and contribute nothing
    }
    if (w.empty()) throw Error("itinerary_word: itinerary produced a trivial word");
    return w;
}

}  // namespace otk
