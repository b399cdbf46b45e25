#pragma once

// Canonical JSON serialization: fixed key order and 17-significant-digit
// numbers so that identical inputs give byte-identical outputs.

#include <cstdio>
#include <json.hpp>

#include "orthotrack/flat/ortho_map.hpp"

namespace otk {

using json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Serialize with %.17g doubles (nlohmann's default emitter is
// shortest-round-trip, which is not byte-stable across writers).
inline void canonical_dump(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                canonical_dump(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                canonical_dump(j[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float:
            out += format_double(j.get<double>());
            break;
        default:
            out += j.dump();
    }
}

inline std::string canonical_dump(const json& j) {
    std::string out;
    canonical_dump(j, out);
    out += '\n';
    return out;
}

// --- SurfaceSpec ----------------------------------------------------------------

inline json to_json(const SurfaceSpec& spec) {
    json j;
    j["genus"] = spec.genus;
    j["curves"] = spec.curves;
    json pants = json::array();
    for (const auto& p : spec.pants)
        pants.push_back(json::array({spec.curves[p[0]], spec.curves[p[1]], spec.curves[p[2]]}));
    j["pants"] = pants;
    for (const char* key : {"lengths", "twists", "weights"}) {
        json m;
        for (int c = 0; c < spec.num_curves(); ++c) {
            const auto& v = std::string(key) == "lengths" ? spec.lengths
                           : std::string(key) == "twists" ? spec.twists
                                                          : spec.weights;
            m[spec.curves[c]] = v[c];
        }
        j[key] = m;
    }
    return j;
}

inline SurfaceSpec spec_from_json(const json& j) {
    const int genus = j.at("genus").get<int>();
    const std::vector<std::string> curves = j.at("curves").get<std::vector<std::string>>();
    auto index = [&](const std::string& name) {
        for (size_t i = 0; i < curves.size(); ++i)
            if (curves[i] == name) return static_cast<int>(i);
        throw Error("SurfaceSpec JSON: unknown curve '" + name + "'");
    };
    std::vector<std::array<int, 3>> pants;
    for (const auto& p : j.at("pants")) {
        if (p.size() != 3) throw Error("SurfaceSpec JSON: pants must have three cuffs");
        pants.push_back({index(p[0].get<std::string>()), index(p[1].get<std::string>()),
                         index(p[2].get<std::string>())});
    }
    auto map_of = [&](const char* key, bool required_positive) {
        std::vector<double> out(curves.size(), 0.0);
        for (size_t i = 0; i < curves.size(); ++i) {
            out[i] = j.at(key).at(curves[i]).get<double>();
            (void)required_positive;
        }
        return out;
    };
    return SurfaceSpec(genus, curves, pants, map_of("lengths", true), map_of("twists", false),
                       map_of("weights", true));
}

// --- FlatSurface ----------------------------------------------------------------

inline json to_json(const FlatSurface& q) {
    json j;
    json cylinders = json::array();
    for (int c = 0; c < q.cx.num_curves(); ++c) {
        json cyl;
        cyl["circumference"] = q.cx.circumference[c];
        cyl["height"] = q.cx.height[c];
        json top = json::array(), bottom = json::array();
        for (const CxZero& z : q.cx.zeros[c]) {
            json zj;
            zj["zero"] = z.id;
            zj["position"] = z.pos;
            (z.side == 0 ? top : bottom).push_back(zj);
        }
        cyl["top"] = top;
        cyl["bottom"] = bottom;
        cylinders.push_back(cyl);
    }
    j["cylinders"] = cylinders;
    json gluing = json::array();
    for (const CxBand& b : q.cx.bands) {
        json g;
        g["length"] = b.length;
        g["zero_from"] = b.zero_from;
        g["zero_to"] = b.zero_to;
        auto side = [&](const CxBandSide& s) {
            json sj;
            sj["cylinder"] = s.curve;
            sj["side"] = s.side == 0 ? "top" : "bottom";
            sj["start"] = s.start;
            sj["dir"] = s.dir;
            return sj;
        };
        g["a"] = side(b.a);
        g["b"] = side(b.b);
        gluing.push_back(g);
    }
    j["gluing"] = gluing;
    return j;
}

inline FlatSurface flat_from_json(const json& j, const SurfaceSpec& spec) {
    FlatSurface q{.cx = {}, .spec = spec};
    CylinderComplex& cx = q.cx;
    int max_zero = -1;
    for (const auto& cyl : j.at("cylinders")) {
        cx.circumference.push_back(cyl.at("circumference").get<double>());
        cx.height.push_back(cyl.at("height").get<double>());
        std::vector<CxZero> zs;
        for (const char* side : {"top", "bottom"})
            for (const auto& zj : cyl.at(side)) {
                CxZero z;
                z.id = zj.at("zero").get<int>();
                z.side = std::string(side) == "top" ? 0 : 1;
                z.pos = zj.at("position").get<double>();
                max_zero = std::max(max_zero, z.id);
                zs.push_back(z);
            }
        cx.zeros.push_back(zs);
    }
    for (const auto& g : j.at("gluing")) {
        CxBand b;
        b.length = g.at("length").get<double>();
        b.zero_from = g.at("zero_from").get<int>();
        b.zero_to = g.at("zero_to").get<int>();
        auto side = [&](const json& sj) {
            CxBandSide s;
            s.curve = sj.at("cylinder").get<int>();
            s.side = sj.at("side").get<std::string>() == "top" ? 0 : 1;
            s.start = sj.at("start").get<double>();
            s.dir = sj.at("dir").get<int>();
            return s;
        };
        b.a = side(g.at("a"));
        b.b = side(g.at("b"));
        cx.bands.push_back(b);
    }
    cx.num_zeros = max_zero + 1;
    cx.validate();
    q.prongs = cx.cone_prongs();
    return q;
}

// --- train track ----------------------------------------------------------------

inline json to_json(const TrainTrack& t, const WeightSystem* w = nullptr) {
    json j;
    j["branches"] = t.num_branches;
    if (!t.branch_lengths.empty()) j["lengths"] = t.branch_lengths;
    if (w) j["weights"] = w->weights;
    json switches = json::array();
    for (const Switch& s : t.switches) {
        json sj;
        json a = json::array(), b = json::array();
        for (const HalfBranch& h : s.side_a) a.push_back(json::array({h.branch, h.end}));
        for (const HalfBranch& h : s.side_b) b.push_back(json::array({h.branch, h.end}));
        sj["side_a"] = a;
        sj["side_b"] = b;
        switches.push_back(sj);
    }
    j["switches"] = switches;
    return j;
}

}  // namespace otk
