#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "orthotrack/pants/marking.hpp"

using namespace otk;

namespace {
std::mt19937_64 rng(4242ULL);

double urand(double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}
}  // namespace

TEST_CASE("pants_arc_system cells") {
    SECTION("symmetric theta") {
        const WeightedArcSystem w = pants_arc_system(2, 2, 2);
        CHECK(w.cell == PantsCell::Theta);
        CHECK(w.weight(0, 1) == 1.0);
        CHECK(w.weight(0, 2) == 1.0);
        CHECK(w.weight(1, 2) == 1.0);
    }
    SECTION("dumbbell") {
        const WeightedArcSystem w = pants_arc_system(1, 1, 4);
        CHECK(w.cell == PantsCell::Dumbbell);
        CHECK(w.dominant == 2);
        CHECK(w.weight(0, 2) == 1.0);
        CHECK(w.weight(1, 2) == 1.0);
        CHECK(w.weight(2, 2) == 1.0);
    }
    SECTION("degenerate wall has an explicit zero arc") {
        const WeightedArcSystem w = pants_arc_system(1, 1, 2);
        CHECK(w.cell == PantsCell::Degenerate);
        CHECK(w.weight(0, 1) == 0.0);
    }
    SECTION("errors") { CHECK_THROWS_AS(pants_arc_system(0.0, 1, 1), Error); }
}

TEST_CASE("arc_weights_to_lengths round trips") {
    CHECK(arc_weights_to_lengths(pants_arc_system(2, 2, 2)) == std::array<double, 3>{2, 2, 2});
    CHECK(arc_weights_to_lengths(pants_arc_system(1, 1, 4)) == std::array<double, 3>{1, 1, 4});
    for (int i = 0; i < 100; ++i) {
        const double l1 = urand(0.3, 5), l2 = urand(0.3, 5), l3 = urand(0.3, 5);
        const auto back = arc_weights_to_lengths(pants_arc_system(l1, l2, l3));
        CHECK_THAT(back[0], Catch::Matchers::WithinAbs(l1, 1e-12));
        CHECK_THAT(back[1], Catch::Matchers::WithinAbs(l2, 1e-12));
        CHECK_THAT(back[2], Catch::Matchers::WithinAbs(l3, 1e-12));
    }
}

TEST_CASE("seam length") {
    CHECK_THAT(seam_length(2, 2, 2), Catch::Matchers::WithinAbs(1.7049128, 1e-6));
    SECTION("monotone on a grid: increasing in the opposite cuff, decreasing in an adjacent one") {
        double prev = seam_length(2, 2, 0.5);
        for (double lk = 1.0; lk < 6.0; lk += 0.5) {
            const double s = seam_length(2, 2, lk);
            CHECK(s > prev);
            prev = s;
        }
        prev = seam_length(0.5, 2, 2);
        for (double li = 1.0; li < 6.0; li += 0.5) {
            const double s = seam_length(li, 2, 2);
            CHECK(s < prev);
            prev = s;
        }
    }
    SECTION("short seam forces a visible arc weight") {
        // If the seam is shorter than log 3 the dual arc must be part of the
        // geometric structure: its weight is positive in every sampled cell.
        for (int i = 0; i < 50; ++i) {
            const double l1 = urand(0.5, 6), l2 = urand(0.5, 6), l3 = urand(0.5, 6);
            const WeightedArcSystem w = pants_arc_system(l1, l2, l3);
            if (w.cell != PantsCell::Theta) continue;
            if (seam_length(l1, l2, l3) < std::log(3.0)) CHECK(w.weight(0, 1) > 0.0);
        }
    }
}

TEST_CASE("hexagon lift replicates the arc system (theta cell)") {
    for (int trial = 0; trial < 25; ++trial) {
        double l1 = urand(0.8, 4.0), l2 = urand(0.8, 4.0), l3 = urand(0.8, 4.0);
        const WeightedArcSystem w = pants_arc_system(l1, l2, l3);
        if (w.cell != PantsCell::Theta) continue;
        const PantsLift lift(l1, l2, l3);
        REQUIRE(lift.cell() == PantsCell::Theta);
        REQUIRE(lift.edges().size() == 3);
        for (const auto& e : lift.edges()) {
            CHECK_THAT(e.length, Catch::Matchers::WithinAbs(w.weight(e.slot_i, e.slot_j), 1e-8));
        }
        // incircle radius of spine vertices within the universal bounds
        for (const auto& v : lift.vertices()) CHECK(v.radius >= kLogSqrt3 - 1e-9);
    }
}

TEST_CASE("hexagon lift replicates the arc system (dumbbell cell)") {
    for (int trial = 0; trial < 15; ++trial) {
        double la = urand(0.4, 1.5), lb = urand(0.4, 1.5);
        double ld = la + lb + urand(0.3, 2.5);
        const WeightedArcSystem w = pants_arc_system(la, lb, ld);
        REQUIRE(w.cell == PantsCell::Dumbbell);
        const PantsLift lift(la, lb, ld);
        REQUIRE(lift.edges().size() == 3);
        for (const auto& e : lift.edges()) {
            if (e.slot_i == e.slot_j)
                CHECK_THAT(e.length, Catch::Matchers::WithinAbs(w.weight(2, 2), 1e-8));
            else
                CHECK_THAT(e.length, Catch::Matchers::WithinAbs(w.weight(e.slot_i, e.slot_j), 1e-8));
        }
    }
}

TEST_CASE("cuff marking") {
    SECTION("symmetric pants has antipodal basepoints on each cuff") {
        const PantsPiece p(2, 2, 2);
        const CuffMarking& m = p.marking();
        for (int k = 0; k < 3; ++k) {
            REQUIRE(m.basepoints[k].size() == 2);
            const double gap = std::fabs(m.basepoints[k][1].position - m.basepoints[k][0].position);
            CHECK_THAT(gap, Catch::Matchers::WithinAbs(1.0, 1e-8));  // half of cuff length 2
        }
    }
    SECTION("sum rule on random pieces") {
        for (int i = 0; i < 100; ++i) {
            const double l1 = urand(0.5, 4), l2 = urand(0.5, 4), l3 = urand(0.5, 4);
            const PantsPiece p(l1, l2, l3);  // validate() runs in the constructor
            SUCCEED();
        }
    }
    SECTION("dumbbell cuff decomposition 1 + 1 + 2*1") {
        const PantsPiece p(1, 1, 4);
        const CuffMarking& m = p.marking();
        CHECK(m.basepoints[2].size() == 4);
        CHECK(m.basepoints[0].size() == 1);
        CHECK(m.basepoints[1].size() == 1);
        double self_total = 0, cross_total = 0;
        for (const auto& b : m.bands) {
            if (b.side_i.slot == 2 && b.side_j.slot == 2)
                self_total += 2 * b.length;
            else if (b.side_i.slot == 2 || b.side_j.slot == 2)
                cross_total += b.length;
        }
        CHECK_THAT(self_total, Catch::Matchers::WithinAbs(2.0, 1e-8));
        CHECK_THAT(cross_total, Catch::Matchers::WithinAbs(2.0, 1e-8));
    }
    SECTION("theta basepoint positions match the linear formulas") {
        for (int i = 0; i < 10; ++i) {
            const double l1 = urand(1.0, 3.0), l2 = urand(1.0, 3.0), l3 = urand(1.0, 3.0);
            const WeightedArcSystem w = pants_arc_system(l1, l2, l3);
            if (w.cell != PantsCell::Theta) continue;
            const PantsPiece p(l1, l2, l3);
            const std::array<double, 3> len{l1, l2, l3};
            for (int k = 0; k < 3; ++k) {
                const double c = w.weight(k, (k + 1) % 3);
                std::vector<double> expect{mod_pos(-c / 2.0, len[k]), mod_pos(c / 2.0, len[k])};
                std::sort(expect.begin(), expect.end());
                REQUIRE(p.marking().basepoints[k].size() == 2);
                CHECK_THAT(p.marking().basepoints[k][0].position, Catch::Matchers::WithinAbs(expect[0], 1e-8));
                CHECK_THAT(p.marking().basepoints[k][1].position, Catch::Matchers::WithinAbs(expect[1], 1e-8));
            }
        }
    }
}

TEST_CASE("leaf samples: kink angles and widths") {
    const PantsLift lift(2, 2, 2);
    const auto& e = lift.edges()[0];

    SECTION("kink angle >= 2pi/3, approaching pi at the orthogeodesic arc") {
        double prev = 0;
        for (double frac : {0.02, 0.1, 0.25, 0.4, 0.5}) {
            const auto s = lift.leaf_at(e, e.length * frac);
            CHECK(s.kink_angle >= 2.0 * M_PI / 3.0 - 1e-9);
            CHECK(s.kink_angle <= M_PI + 1e-9);
            CHECK(s.kink_angle >= prev - 1e-9);  // opens towards the middle
            prev = s.kink_angle;
        }
    }

    SECTION("leaf through the vertex has half-length = incircle radius") {
        const auto s = lift.leaf_at(e, 0.0);
        CHECK_THAT(s.half_length, Catch::Matchers::WithinAbs(lift.vertices()[0].radius, 1e-7));
    }

    SECTION("midpoint leaf is the orthogeodesic seam") {
        const auto s = lift.leaf_at(e, e.length / 2.0);
        CHECK_THAT(2.0 * s.half_length, Catch::Matchers::WithinAbs(seam_length(2, 2, 2), 1e-7));
        CHECK_THAT(s.kink_angle, Catch::Matchers::WithinAbs(M_PI, 1e-6));
    }

    SECTION("leaf endpoint transport is an isometry") {
        const auto s1 = lift.leaf_at(e, 0.2);
        const auto s2 = lift.leaf_at(e, 0.7);
        CHECK_THAT(std::fabs(s2.coord_i - s1.coord_i), Catch::Matchers::WithinAbs(0.5, 1e-7));
        CHECK_THAT(std::fabs(s2.coord_j - s1.coord_j), Catch::Matchers::WithinAbs(0.5, 1e-7));
    }
}
