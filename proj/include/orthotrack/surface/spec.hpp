#pragma once

// Closed-surface specifications: a trivalent pants decomposition with
// Fenchel-Nielsen lengths/twists and a weighted multicurve supported on the
// pants curves (v1 requires full support; see arc_weights positivity).

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "orthotrack/hyp/geometry.hpp"

namespace otk {

// A side of a curve: which pants and slot it bounds.  Every curve has exactly
// two sides (a self-glued pants contributes two slots).
struct CurveSide {
    int pants = -1;
    int slot = -1;
};

struct SurfaceSpec {
    int genus = 2;
    std::vector<std::string> curves;            // 3g-3 names
    std::vector<std::array<int, 3>> pants;      // 2g-2 slot triples (curve indices, cyclic order)
    std::vector<double> lengths;                // per curve, positive
    std::vector<double> twists;                 // per curve
    std::vector<double> weights;                // per curve, positive (full multicurve support)

    std::vector<std::array<CurveSide, 2>> sides;  // derived: per curve, side A and B

    SurfaceSpec(int g, std::vector<std::string> curve_names, std::vector<std::array<int, 3>> pants_slots,
                std::vector<double> len, std::vector<double> tw, std::vector<double> wt)
        : genus(g),
          curves(std::move(curve_names)),
          pants(std::move(pants_slots)),
          lengths(std::move(len)),
          twists(std::move(tw)),
          weights(std::move(wt)) {
        validate();
    }

    int num_curves() const { return static_cast<int>(curves.size()); }
    int num_pants() const { return static_cast<int>(pants.size()); }

    int curve_index(const std::string& name) const {
        for (int i = 0; i < num_curves(); ++i)
            if (curves[i] == name) return i;
        throw Error("SurfaceSpec: unknown curve '" + name + "'");
    }

    std::array<double, 3> pants_cuff_lengths(int p) const {
        return {lengths[pants[p][0]], lengths[pants[p][1]], lengths[pants[p][2]]};
    }

    void validate() {
        if (genus < 2) throw Error("SurfaceSpec: genus must be >= 2");
        const int nc = 3 * genus - 3, np = 2 * genus - 2;
        if (static_cast<int>(curves.size()) != nc)
            throw Error("SurfaceSpec: expected " + std::to_string(nc) + " curves");
        if (static_cast<int>(pants.size()) != np)
            throw Error("SurfaceSpec: expected " + std::to_string(np) + " pants (graph not trivalent)");
        if (lengths.size() != curves.size() || twists.size() != curves.size() || weights.size() != curves.size())
            throw Error("SurfaceSpec: lengths/twists/weights must cover every curve");
        for (int i = 0; i < nc; ++i) {
            if (!(lengths[i] > 0)) throw Error("SurfaceSpec: length of '" + curves[i] + "' must be positive");
            if (!(weights[i] > 0))
                throw Error("SurfaceSpec: weight of '" + curves[i] + "' must be positive (v1 requires full support)");
        }
        std::set<std::string> names(curves.begin(), curves.end());
        if (static_cast<int>(names.size()) != nc) throw Error("SurfaceSpec: duplicate curve names");

        sides.assign(nc, {CurveSide{}, CurveSide{}});
        std::vector<int> count(nc, 0);
        for (int p = 0; p < np; ++p)
            for (int s = 0; s < 3; ++s) {
                const int c = pants[p][s];
                if (c < 0 || c >= nc) throw Error("SurfaceSpec: pants slot references unknown curve");
                if (count[c] >= 2) throw Error("SurfaceSpec: curve '" + curves[c] + "' bounds more than two slots");
                sides[c][count[c]++] = CurveSide{p, s};
            }
        for (int c = 0; c < nc; ++c)
            if (count[c] != 2) throw Error("SurfaceSpec: curve '" + curves[c] + "' must bound exactly two slots");

        // connectivity of the pants graph
        std::vector<int> seen(np, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            for (int s = 0; s < 3; ++s) {
                const int c = pants[p][s];
                for (const CurveSide& cs : sides[c])
                    if (!seen[cs.pants]) {
                        seen[cs.pants] = 1;
                        stack.push_back(cs.pants);
                    }
            }
        }
        for (int p = 0; p < np; ++p)
            if (!seen[p]) throw Error("SurfaceSpec: pants graph is disconnected");
    }

    // The standard symmetric genus-2 spec used throughout the tests: two pants
    // glued along three curves.
    static SurfaceSpec symmetric_genus2(double length = 2.0, double weight = 1.0, double twist = 0.0) {
        return SurfaceSpec(2, {"a", "b", "c"}, {{{0, 1, 2}}, {{0, 2, 1}}}, {length, length, length},
                           {twist, twist, twist}, {weight, weight, weight});
    }
};

}  // namespace otk
