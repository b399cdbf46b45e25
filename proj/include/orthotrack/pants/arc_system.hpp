#pragma once

// Orthogeodesic arc systems of hyperbolic pairs of pants: cell classification
// (theta / dumbbell / degenerate wall), arc weights c_alpha, seam lengths, and
// the linear inverses.

#include <array>
#include <string>

#include "orthotrack/hyp/geometry.hpp"

namespace otk {

enum class PantsCell { Theta, Dumbbell, Degenerate };

// An arc of a pants arc system, named by the (unordered) pair of cuff slots it
// joins; slots are 0,1,2.
struct PantsArc {
    int slot_a = 0, slot_b = 1;
    double weight = 0.0;
};

struct WeightedArcSystem {
    PantsCell cell = PantsCell::Theta;
    int dominant = -1;  // dumbbell: index of the dominant cuff
    std::array<PantsArc, 3> arcs{};

    double weight(int i, int j) const {
        for (const auto& a : arcs) {
            if ((a.slot_a == i && a.slot_b == j) || (a.slot_a == j && a.slot_b == i)) return a.weight;
        }
        throw Error("WeightedArcSystem: no arc between slots " + std::to_string(i) + "," + std::to_string(j));
    }
};

inline void check_cuff_lengths(double l1, double l2, double l3) {
    if (!(l1 > 0.0) || !(l2 > 0.0) || !(l3 > 0.0))
        throw Error("pants: cuff lengths must be positive, got (" + std::to_string(l1) + "," + std::to_string(l2) +
                    "," + std::to_string(l3) + ")");
}

// Arc weights of the geometric arc system of a pants with the given cuff
// lengths.  Strict triangle inequality gives the theta cell with seam-arc
// weights c_ij = (l_i + l_j - l_k)/2; a dominant cuff k with l_k > l_i + l_j
// gives the dumbbell cell with weights {c_ik = l_i, c_jk = l_j,
// c_kk = (l_k - l_i - l_j)/2}; equality is the degenerate wall, represented
// explicitly with a weight-zero arc.
inline WeightedArcSystem pants_arc_system(double l1, double l2, double l3) {
    check_cuff_lengths(l1, l2, l3);
    const double l[3] = {l1, l2, l3};
    WeightedArcSystem out;

    int dom = -1;
    bool degenerate = false;
    for (int k = 0; k < 3; ++k) {
        const double excess = l[k] - l[(k + 1) % 3] - l[(k + 2) % 3];
        if (excess > 0.0) dom = k;
        if (excess == 0.0) degenerate = true;
    }

    if (dom >= 0) {
        const int i = (dom + 1) % 3, j = (dom + 2) % 3;
        out.cell = PantsCell::Dumbbell;
        out.dominant = dom;
        out.arcs[0] = {std::min(i, dom), std::max(i, dom), l[i]};
        out.arcs[1] = {std::min(j, dom), std::max(j, dom), l[j]};
        out.arcs[2] = {dom, dom, (l[dom] - l[i] - l[j]) / 2.0};
    } else {
        out.cell = degenerate ? PantsCell::Degenerate : PantsCell::Theta;
        int n = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const int k = 3 - i - j;
                out.arcs[n++] = {i, j, (l[i] + l[j] - l[k]) / 2.0};
            }
    }
    return out;
}

// Right-angled hexagon seam: the common perpendicular between cuffs i and j
// (entered as half-lengths of the full cuff lengths).
inline double seam_length(double li, double lj, double lk) {
    check_cuff_lengths(li, lj, lk);
    const double num = std::cosh(li / 2) * std::cosh(lj / 2) + std::cosh(lk / 2);
    const double den = std::sinh(li / 2) * std::sinh(lj / 2);
    return std::acosh(num / den);
}

// Inverts pants_arc_system on each cell via the linear sum rules.
inline std::array<double, 3> arc_weights_to_lengths(const WeightedArcSystem& arcs) {
    std::array<double, 3> l{0.0, 0.0, 0.0};
    for (const auto& a : arcs.arcs) {
        if (a.weight < 0.0) throw Error("arc_weights_to_lengths: negative weight");
        if (a.slot_a == a.slot_b)
            l[a.slot_a] += 2.0 * a.weight;
        else {
            l[a.slot_a] += a.weight;
            l[a.slot_b] += a.weight;
        }
    }
    for (double v : l)
        if (!(v > 0.0)) throw Error("arc_weights_to_lengths: weights do not determine positive lengths");
    // Cell consistency: weights must reproduce themselves.
    const WeightedArcSystem check = pants_arc_system(l[0], l[1], l[2]);
    for (const auto& a : arcs.arcs) {
        if (std::fabs(check.weight(a.slot_a, a.slot_b) - a.weight) > 1e-9 * (1.0 + std::fabs(a.weight)))
            throw Error("arc_weights_to_lengths: weights violate the cell constraints");
    }
    return l;
}

}  // namespace otk
