#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "orthotrack/surface/holonomy.hpp"

using namespace otk;

namespace {
std::mt19937_64 rng(77123ULL);
double urand(double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

SurfaceSpec genus2_parallel(double l = 2.0, double w = 1.0, double t = 0.0) {
    // Both pants with the same cyclic order; at zero twist the seams of the
    // two pants meet the cuffs at matching points.
    return SurfaceSpec(2, {"a", "b", "c"}, {{{0, 1, 2}}, {{0, 1, 2}}}, {l, l, l}, {t, t, t}, {w, w, w});
}

SurfaceSpec random_genus2(double lo = 1.2, double hi = 3.0) {
    return SurfaceSpec(2, {"a", "b", "c"}, {{{0, 1, 2}}, {{0, 1, 2}}}, {urand(lo, hi), urand(lo, hi), urand(lo, hi)},
                       {urand(-0.5, 0.5), urand(-0.5, 0.5), urand(-0.5, 0.5)}, {1, 1, 1});
}
}  // namespace

TEST_CASE("SurfaceSpec validation") {
    CHECK_NOTHROW(SurfaceSpec::symmetric_genus2());
    CHECK_NOTHROW(genus2_parallel());
    // dumbbell-shaped genus 2: one pants self-glued along curve 0
    CHECK_NOTHROW(SurfaceSpec(2, {"g1", "c", "g2"}, {{{0, 0, 1}}, {{2, 2, 1}}}, {1, 1, 1}, {0, 0, 0}, {1, 1, 1}));
    // not trivalent / miscounted
    CHECK_THROWS_AS(SurfaceSpec(2, {"a", "b", "c"}, {{{0, 1, 2}}}, {1, 1, 1}, {0, 0, 0}, {1, 1, 1}), Error);
    // the other self-glued shape is also a valid genus-2 decomposition
    CHECK_NOTHROW(SurfaceSpec(2, {"a", "b", "c"}, {{{0, 1, 1}}, {{0, 2, 2}}}, {1, 1, 1}, {0, 0, 0}, {1, 1, 1}));
    // a curve may not bound three slots
    CHECK_THROWS_AS(SurfaceSpec(2, {"a", "b", "c"}, {{{0, 0, 0}}, {{1, 1, 2}}}, {1, 1, 1}, {0, 0, 0}, {1, 1, 1}),
                    Error);
    // nonpositive length
    CHECK_THROWS_AS(genus2_parallel(-1.0), Error);
}

TEST_CASE("holonomy from FN: cuff traces and relators") {
    const SurfaceSpec spec = SurfaceSpec::symmetric_genus2();
    const HolonomyRep rep = holonomy_from_fn(spec);

    SECTION("cuff traces are 2 cosh(l/2)") {
        for (int c = 0; c < 3; ++c) {
            const double tr = rep.evaluate(rep.cuff_words[c]).trace_abs();
            CHECK_THAT(tr, Catch::Matchers::WithinAbs(2.0 * std::cosh(1.0), 1e-9));
            CHECK_THAT(tr, Catch::Matchers::WithinAbs(3.086161, 1e-6));
        }
    }

    SECTION("relators evaluate to the identity in the basepoint norm") {
        const BasepointMetric m(HPoint(0.0, 1.0), 6.0, 0.05);
        CHECK(rep.max_relator_defect(m) < 1e-8);
    }

    SECTION("holds for random specs and the self-glued shape") {
        for (int i = 0; i < 5; ++i) {
            const SurfaceSpec s = random_genus2();
            const HolonomyRep r = holonomy_from_fn(s);
            for (int c = 0; c < 3; ++c)
                CHECK_THAT(r.evaluate(r.cuff_words[c]).trace_abs(),
                           Catch::Matchers::WithinAbs(2.0 * std::cosh(s.lengths[c] / 2.0), 1e-8));
        }
        const SurfaceSpec dumb(2, {"g1", "c", "g2"}, {{{0, 0, 1}}, {{2, 2, 1}}}, {1.3, 0.9, 1.7},
                               {0.2, -0.1, 0.4}, {1, 1, 1});
        const HolonomyRep r = holonomy_from_fn(dumb);
        for (int c = 0; c < 3; ++c)
            CHECK_THAT(r.evaluate(r.cuff_words[c]).trace_abs(),
                       Catch::Matchers::WithinAbs(2.0 * std::cosh(dumb.lengths[c] / 2.0), 1e-8));
    }
}

TEST_CASE("curve_length") {
    SECTION("pants curve round trip") {
        SurfaceSpec spec = genus2_parallel();
        spec.lengths[1] = 1.7;
        const HolonomyRep rep = holonomy_from_fn(spec);
        CHECK_THAT(curve_length(rep, rep.cuff_words[1]), Catch::Matchers::WithinAbs(1.7, 1e-9));
    }

    SECTION("conjugation invariance") {
        const SurfaceSpec spec = random_genus2();
        const HolonomyRep rep = holonomy_from_fn(spec);
        const Word w = rep.cuff_words[2];
        const Word conj = Word{{rep.pants_gen_labels[0], +1}} * w * Word{{rep.pants_gen_labels[0], -1}};
        CHECK_THAT(curve_length(rep, conj), Catch::Matchers::WithinAbs(curve_length(rep, w), 1e-9));
    }

    SECTION("trivial and non-hyperbolic words are rejected") {
        const SurfaceSpec spec = genus2_parallel();
        const HolonomyRep rep = holonomy_from_fn(spec);
        CHECK_THROWS_AS(curve_length(rep, Word{}), Error);
        const Word cancel{{rep.pants_gen_labels[0], +1}, {rep.pants_gen_labels[0], -1}};
        CHECK_THROWS_AS(curve_length(rep, cancel), Error);
    }
}

TEST_CASE("transverse curve against the hexagon-trig oracle") {
    // On the parallel genus-2 surface at zero twist, the two seam arcs between
    // cuffs a and b lie over matching feet, so their union is a closed
    // geodesic of length exactly seam_P + seam_Q.
    for (double l : {2.0, 2.6}) {
        const SurfaceSpec spec = genus2_parallel(l);
        const HolonomyRep rep = holonomy_from_fn(spec);
        TransverseCurve omega;
        omega.steps = {{0, 1, 0, 1, -1, +1}, {1, 0, 1, 0, -1, +1}};
        const Word w = itinerary_word(spec, rep, omega);
        const double oracle = 2.0 * seam_length(l, l, l);
        // The itinerary normal form fixes the class only up to cuff-word
        // corrections at the crossings; the geometric union of the two seam
        // arcs is the k = -1 correction, uniformly over the family.
        const Word corrected = w * inverse_word(rep.cuff_words[1]);
        CHECK_THAT(curve_length(rep, corrected), Catch::Matchers::WithinAbs(oracle, 1e-6));

        const auto counts = crossing_counts(spec, omega);
        CHECK(counts[0] == 1);
        CHECK(counts[1] == 1);
        CHECK(counts[2] == 0);
    }
}

TEST_CASE("dual curve crossing one pants curve twice") {
    const SurfaceSpec spec = genus2_parallel();
    const HolonomyRep rep = holonomy_from_fn(spec);
    TransverseCurve delta;
    delta.steps = {{0, 1, 0, 0, 2, +1}, {0, 0, 0, 0, 2, +1}};
    CHECK(intersection_number(spec, delta) == 2);
    const auto counts = crossing_counts(spec, delta);
    CHECK(counts[0] == 2);
    const Word w = itinerary_word(spec, rep, delta);
    CHECK(curve_length(rep, w) > 0.0);

    SECTION("additivity over multicurve components") {
        // i(delta, a + b + c) decomposes as the sum of per-curve crossing counts.
        int total = 0;
        for (int n : counts) total += n;
        CHECK(total == intersection_number(spec, delta));
    }

    SECTION("unsupported word shape") {
        TransverseCurve bad;
        bad.steps = {{0, 1, 0, 0, -1, +1}};
        CHECK_THROWS_AS(intersection_number(spec, bad), Error);
    }
}

TEST_CASE("transverse length is monotone along the proportional cuff family") {
    // Transverse curves cross the cuff collars, which widen as the cuffs
    // shrink: the fixed transverse class gets longer, strictly, as all cuff
    // lengths decrease proportionally.
    double prev = 0.0;
    for (double scale : {1.0, 0.9, 0.8, 0.7, 0.6}) {
        const SurfaceSpec spec = genus2_parallel(2.0 * scale);
        const HolonomyRep rep = holonomy_from_fn(spec);
        TransverseCurve omega;
        omega.steps = {{0, 1, 0, 1, -1, +1}, {1, 0, 1, 0, -1, +1}};
        const double len =
            curve_length(rep, itinerary_word(spec, rep, omega) * inverse_word(rep.cuff_words[1]));
        CHECK(len > prev);
        prev = len;
    }
}

TEST_CASE("full twist with Dehn-twist remarking preserves the length spectrum") {
    // Convention fixed here: positive twist by the full curve length composed
    // with inserting the cuff word with exponent -1 at each crossing.
    const int fixed_eps = -1;
    for (int trial = 0; trial < 4; ++trial) {
        SurfaceSpec spec = random_genus2();
        const HolonomyRep rep = holonomy_from_fn(spec);
        TransverseCurve omega;
        omega.steps = {{0, 1, 0, 1, -1, +1}, {1, 0, 1, 0, -1, +1}};
        const Word w = itinerary_word(spec, rep, omega);
        const double before = curve_length(rep, w);

        SurfaceSpec twisted = spec;
        twisted.twists[1] += twisted.lengths[1];  // full twist along b (crossed once)
        const HolonomyRep rep2 = holonomy_from_fn(twisted);
        // remark: insert b's cuff word at the crossing of b
        Word remarked;
        for (const auto& [label, exp] : w) {
            remarked.emplace_back(label, exp);
            if (label == "t_b") {
                const Word ins = rep2.cuff_words[1];
                const Word use = fixed_eps > 0 ? ins : inverse_word(ins);
                remarked = remarked * use;
            }
        }
        CHECK_THAT(curve_length(rep2, remarked), Catch::Matchers::WithinAbs(before, 1e-7));
    }
}

TEST_CASE("lengths of curves disjoint from the twisted curve are unchanged") {
    SurfaceSpec spec = random_genus2();
    const HolonomyRep rep = holonomy_from_fn(spec);
    SurfaceSpec twisted = spec;
    twisted.twists[2] += 0.37;
    const HolonomyRep rep2 = holonomy_from_fn(twisted);
    for (int c = 0; c < 3; ++c)
        CHECK_THAT(curve_length(rep2, rep2.cuff_words[c]),
                   Catch::Matchers::WithinAbs(curve_length(rep, rep.cuff_words[c]), 1e-9));
}

TEST_CASE("collar width") {
    CHECK_THAT(collar_width(1.0), Catch::Matchers::WithinAbs(1.4068291, 1e-6));
    CHECK(collar_width(1e-6) > 10.0);
    double prev = collar_width(0.05);
    for (double l = 0.1; l < 4.0; l += 0.1) {
        const double w = collar_width(l);
        CHECK(w < prev);
        prev = w;
    }
    CHECK_THROWS_AS(collar_width(0.0), Error);
    CHECK_THROWS_AS(collar_width(-2.0), Error);
}

TEST_CASE("collar disjointness sanity for pants curves") {
    // Two distinct pants curves have disjoint collars: the sum of their collar
    // widths is at most the distance between the axes in sampled specs.
    for (int trial = 0; trial < 3; ++trial) {
        const SurfaceSpec spec = random_genus2(0.8, 2.0);
        const SurfaceGeometry geo(spec);
        for (int p = 0; p < spec.num_pants(); ++p) {
            const PantsLift& lift = geo.piece(p).lift();
            for (int s1 = 0; s1 < 3; ++s1)
                for (int s2 = s1 + 1; s2 < 3; ++s2) {
                    const double w1 = collar_width(spec.lengths[spec.pants[p][s1]]);
                    const double w2 = collar_width(spec.lengths[spec.pants[p][s2]]);
                    const double gap = seam_length(lift.lengths()[s1], lift.lengths()[s2],
                                                   lift.lengths()[3 - s1 - s2]);
                    CHECK(w1 + w2 <= gap + 1e-9);
                }
        }
    }
}

TEST_CASE("rep distance is continuous in FN coordinates") {
    const BasepointMetric m(HPoint(0.0, 1.0), 6.0, 0.05);
    const SurfaceSpec spec = genus2_parallel();
    const HolonomyRep rep = holonomy_from_fn(spec);
    double prev = 1e9;
    for (double eps : {2e-2, 1e-2, 5e-3}) {
        SurfaceSpec near = spec;
        near.lengths[0] += eps;
        near.twists[1] += eps;
        const HolonomyRep rep2 = holonomy_from_fn(near);
        const double d = rep_distance(rep.generating_set(), rep2.generating_set(), m);
        CHECK(d < prev);
        CHECK(d < 20.0 * eps);
        prev = d;
    }
}
