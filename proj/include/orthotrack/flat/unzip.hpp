#pragma once

// Horizontal unzipping of a flat surface: cut along all horizontal
// separatrices a distance D from every zero; fully severed saddles become
// arcs, and the vertical leaf space of the remainder is a train track.

#include "orthotrack/flat/leafspace.hpp"
#include "orthotrack/flat/ortho_map.hpp"

namespace otk {

struct UnzipResult {
    double cut_depth = 0;
    LeafSpace leaf_space;
    std::vector<int> severed_saddles;  // recorded compact horizontal saddles

    const TrainTrack& track() const { return leaf_space.track; }
    const std::vector<TrackArc>& arcs() const { return leaf_space.arcs; }
};

inline UnzipResult horizontal_unzip(const FlatSurface& q, double cut_depth) {
    UnzipResult out;
    out.cut_depth = cut_depth;
    out.leaf_space = vertical_leaf_space(q.cx, cut_depth);  // throws if a vertical leaf survives
    out.severed_saddles = out.leaf_space.severed_bands;
    return out;
}

}  // namespace otk
