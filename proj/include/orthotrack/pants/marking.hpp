#pragma once

// Cuff markings of a pair of pants: basepoint positions on each cuff (feet of
// the incircle projections of the spine vertices) and the decomposition of
// each cuff circle into arc-band projection intervals.  Positions come from
// the H^2 lift; the linear sum rules are asserted on construction.

#include <algorithm>
#include <memory>

#include "orthotrack/pants/lift.hpp"

namespace otk {

inline double mod_pos(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0) r += period;
    return r;
}

struct Basepoint {
    double position = 0;  // cuff coordinate mod cuff length
    int vertex = 0;       // spine vertex id (0 or 1 for a pants)
};

// One side of a band (the projection interval of a spine edge on a cuff).
struct BandSide {
    int slot = 0;
    double start = 0;  // position of vertex_from's foot, mod cuff length
    int dir = +1;      // the band covers start + dir*[0, length]
};

struct Band {
    int edge_index = 0;  // index into PantsLift::edges()
    int vertex_from = 0, vertex_to = 0;
    double length = 0;  // arc weight c_alpha
    BandSide side_i, side_j;
};

struct CuffMarking {
    std::array<double, 3> cuff_lengths{};
    PantsCell cell = PantsCell::Theta;
    std::array<std::vector<Basepoint>, 3> basepoints;  // per slot, sorted by position
    std::vector<Band> bands;

    // Interval decomposition check: incident band lengths sum to each cuff length.
    void validate(double tol = 1e-8) const {
        for (int k = 0; k < 3; ++k) {
            double total = 0;
            for (const auto& b : bands) {
                if (b.side_i.slot == k) total += b.length;
                if (b.side_j.slot == k) total += b.length;
            }
            if (std::fabs(total - cuff_lengths[k]) > tol * (1.0 + cuff_lengths[k]))
                throw Error("CuffMarking: interval lengths do not sum to the cuff length on slot " +
                            std::to_string(k));
        }
    }
};

class PantsPiece;  // fwd

inline CuffMarking cuff_marking(const PantsLift& lift) {
    CuffMarking m;
    m.cuff_lengths = lift.lengths();
    m.cell = lift.cell();

    for (size_t vid = 0; vid < lift.vertices().size(); ++vid) {
        const auto& v = lift.vertices()[vid];
        for (int k = 0; k < 3; ++k)
            for (double t : v.feet_by_slot[k])
                m.basepoints[k].push_back({mod_pos(t, m.cuff_lengths[k]), static_cast<int>(vid)});
    }
    for (int k = 0; k < 3; ++k)
        std::sort(m.basepoints[k].begin(), m.basepoints[k].end(),
                  [](const Basepoint& a, const Basepoint& b) { return a.position < b.position; });

    for (size_t ei = 0; ei < lift.edges().size(); ++ei) {
        const auto& e = lift.edges()[ei];
        Band b;
        b.edge_index = static_cast<int>(ei);
        b.vertex_from = e.vertex_from;
        b.vertex_to = e.vertex_to;
        b.length = e.length;
        b.side_i = {e.slot_i, mod_pos(e.start_i, m.cuff_lengths[e.slot_i]), e.dir_i};
        b.side_j = {e.slot_j, mod_pos(e.start_j, m.cuff_lengths[e.slot_j]), e.dir_j};
        m.bands.push_back(b);
    }
    m.validate();
    return m;
}

// Pants piece: cuff lengths plus the derived geometric data, cached.
class PantsPiece {
  public:
    explicit PantsPiece(double l1, double l2, double l3)
        : lift_(std::make_shared<PantsLift>(l1, l2, l3)), marking_(cuff_marking(*lift_)) {}

    const PantsLift& lift() const { return *lift_; }
    const CuffMarking& marking() const { return marking_; }
    const std::array<double, 3>& cuff_lengths() const { return lift_->lengths(); }
    WeightedArcSystem arc_system() const {
        return pants_arc_system(cuff_lengths()[0], cuff_lengths()[1], cuff_lengths()[2]);
    }

  private:
    std::shared_ptr<PantsLift> lift_;
    CuffMarking marking_;
};

}  // namespace otk
