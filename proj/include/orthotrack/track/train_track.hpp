#pragma once

// Combinatorial train tracks: branches, switches with two ordered sides of
// half-branches (the tangential data), weight systems and the switch-condition
// kernel over the rationals, canonical-form isomorphism, DOT/JSON export.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orthotrack/hyp/geometry.hpp"

namespace otk {

struct HalfBranch {
    int branch = -1;
    int end = 0;  // 0 or 1
    bool operator==(const HalfBranch& o) const { return branch == o.branch && end == o.end; }
};

struct Switch {
    std::vector<HalfBranch> side_a, side_b;  // ordered along the tie
};

struct TrainTrack {
    int num_branches = 0;
    std::vector<Switch> switches;
    std::vector<double> branch_lengths;  // optional; empty if absent

    // derived: where each half-branch attaches (-1 = free/closed circle)
    std::vector<std::array<int, 2>> attachment;

    void finalize() {
        attachment.assign(num_branches, {-1, -1});
        for (int s = 0; s < static_cast<int>(switches.size()); ++s) {
            if (switches[s].side_a.empty() || switches[s].side_b.empty())
                throw Error("TrainTrack: switch " + std::to_string(s) + " must have half-branches on both sides");
            for (const auto* side : {&switches[s].side_a, &switches[s].side_b})
                for (const HalfBranch& h : *side) {
                    if (h.branch < 0 || h.branch >= num_branches) throw Error("TrainTrack: bad half-branch");
                    if (attachment[h.branch][h.end] != -1)
                        throw Error("TrainTrack: half-branch attached twice");
                    attachment[h.branch][h.end] = s;
                }
        }
    }

    bool trivalent() const {
        for (const auto& s : switches)
            if (s.side_a.size() + s.side_b.size() != 3) return false;
        return true;
    }

    int euler_count() const { return num_branches - static_cast<int>(switches.size()); }
};

// --- rational arithmetic for exact switch-condition kernels --------------------

struct Rational {
    long long num = 0, den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}  // NOLINT
    Rational(long long n, long long d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw Error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(std::llabs(num), den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool zero() const { return num == 0; }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.num * b.num, a.den * b.den); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.zero()) throw Error("Rational: division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Switch-condition matrix rows (side_a sum - side_b sum = 0 per switch).
inline std::vector<std::vector<Rational>> switch_matrix(const TrainTrack& t) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& s : t.switches) {
        std::vector<Rational> row(t.num_branches, Rational(0));
        for (const HalfBranch& h : s.side_a) row[h.branch] = row[h.branch] + Rational(1);
        for (const HalfBranch& h : s.side_b) row[h.branch] = row[h.branch] - Rational(1);
        rows.push_back(std::move(row));
    }
    return rows;
}

// Exact basis of the switch-condition kernel.
inline std::vector<std::vector<Rational>> weight_basis(const TrainTrack& t) {
    auto rows = switch_matrix(t);
    const int n = t.num_branches;
    const int m = static_cast<int>(rows.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i)
            if (!rows[i][c].zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(rows[r], rows[p]);
        const Rational inv = Rational(1) / rows[r][c];
        for (int j = 0; j < n; ++j) rows[r][j] = rows[r][j] * inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || rows[i][c].zero()) continue;
            const Rational f = rows[i][c];
            for (int j = 0; j < n; ++j) rows[i][j] = rows[i][j] - f * rows[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[c] = Rational(1);
        for (int i = 0; i < r; ++i) v[pivot_col[i]] = Rational(0) - rows[i][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

struct WeightSystem {
    std::vector<double> weights;

    bool satisfies_switch_conditions(const TrainTrack& t, double tol = 1e-9) const {
        if (static_cast<int>(weights.size()) != t.num_branches) return false;
        for (const auto& s : t.switches) {
            double a = 0, b = 0;
            for (const HalfBranch& h : s.side_a) a += weights[h.branch];
            for (const HalfBranch& h : s.side_b) b += weights[h.branch];
            if (std::fabs(a - b) > tol * (1.0 + std::fabs(a) + std::fabs(b))) return false;
        }
        return true;
    }
};

// --- isomorphism via canonical certificates ------------------------------------

namespace detail {

// Encode the track by BFS from a starting half-branch; the certificate is the
// lexicographically minimal encoding over all starts and the side/orientation
// flips.  Each switch is read as (its two sides in order), each side as the
// ordered list of half-branches.
inline std::string certificate_from(const TrainTrack& t, int start_switch, bool flip_sides, bool reverse_order) {
    std::map<int, int> sw_label, br_label;
    std::vector<int> queue{start_switch};
    sw_label[start_switch] = 0;
    std::ostringstream out;

    auto side_of = [&](const Switch& s, bool first) -> const std::vector<HalfBranch>& {
        const bool a_first = !flip_sides;
        return (first == a_first) ? s.side_a : s.side_b;
    };

    auto visit_side = [&](const std::vector<HalfBranch>& side) {
        std::vector<HalfBranch> ordered = side;
        if (reverse_order) std::reverse(ordered.begin(), ordered.end());
        out << "[";
        for (const HalfBranch& h : ordered) {
            if (!br_label.count(h.branch)) br_label[h.branch] = static_cast<int>(br_label.size());
            out << br_label[h.branch] << "." << h.end << ",";
            const int other = t.attachment[h.branch][1 - h.end];
            if (other >= 0 && !sw_label.count(other)) {
                sw_label[other] = static_cast<int>(sw_label.size());
                queue.push_back(other);
            }
        }
        out << "]";
    };

    size_t qi = 0;
    while (qi < queue.size()) {
        const Switch& s = t.switches[queue[qi++]];
        out << "{";
        visit_side(side_of(s, true));
        visit_side(side_of(s, false));
        out << "}";
    }
    if (sw_label.size() != t.switches.size()) out << "|disconnected";
    return out.str();
}

}  // namespace detail

// Canonical certificate; equal certificates mean isomorphic tracks (as graphs
// with switch sides and tangential order, up to relabeling and global flips).
// Connected components are certified separately and sorted.
inline std::string track_certificate(const TrainTrack& t) {
    if (t.switches.empty()) {
        // disjoint circles only
        return "circles:" + std::to_string(t.num_branches);
    }
    // component decomposition over switches
    std::vector<int> comp(t.switches.size(), -1);
    int ncomp = 0;
    for (size_t s0 = 0; s0 < t.switches.size(); ++s0) {
        if (comp[s0] >= 0) continue;
        std::vector<int> stack{static_cast<int>(s0)};
        comp[s0] = ncomp;
        while (!stack.empty()) {
            const int s = stack.back();
            stack.pop_back();
            for (const auto* side : {&t.switches[s].side_a, &t.switches[s].side_b})
                for (const HalfBranch& h : *side) {
                    const int o = t.attachment[h.branch][1 - h.end];
                    if (o >= 0 && comp[o] < 0) {
                        comp[o] = ncomp;
                        stack.push_back(o);
                    }
                }
        }
        ++ncomp;
    }
    int free_circles = 0;
    std::set<int> attached;
    for (int b = 0; b < t.num_branches; ++b)
        if (t.attachment[b][0] < 0 && t.attachment[b][1] < 0) ++free_circles;

    std::vector<std::string> certs;
    for (int c = 0; c < ncomp; ++c) {
        std::string best;
        for (size_t s = 0; s < t.switches.size(); ++s) {
            if (comp[s] != c) continue;
            for (bool flip : {false, true})
                for (bool rev : {false, true}) {
                    const std::string enc = detail::certificate_from(t, static_cast<int>(s), flip, rev);
                    if (best.empty() || enc < best) best = enc;
                }
        }
        certs.push_back(best);
    }
    std::sort(certs.begin(), certs.end());
    std::string out = "circles:" + std::to_string(free_circles);
    for (const auto& c : certs) out += ";" + c;
    return out;
}

inline bool isomorphic(const TrainTrack& a, const TrainTrack& b) {
    return track_certificate(a) == track_certificate(b);
}

// --- export --------------------------------------------------------------------

inline std::string to_dot(const TrainTrack& t, const WeightSystem* w = nullptr) {
    std::ostringstream out;
    out << "graph traintrack {\n";
    for (size_t s = 0; s < t.switches.size(); ++s) out << "  s" << s << " [shape=point];\n";
    int free_id = 0;
    for (int b = 0; b < t.num_branches; ++b) {
        std::string from = t.attachment[b][0] >= 0 ? "s" + std::to_string(t.attachment[b][0])
                                                   : "f" + std::to_string(free_id++);
        std::string to = t.attachment[b][1] >= 0 ? "s" + std::to_string(t.attachment[b][1])
                                                 : "f" + std::to_string(free_id++);
        out << "  " << from << " -- " << to << " [label=\"b" << b;
        if (!t.branch_lengths.empty()) out << " l=" << t.branch_lengths[b];
        if (w) out << " w=" << w->weights[b];
        out << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace otk
