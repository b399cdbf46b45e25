#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "orthotrack/psl2/metric.hpp"
#include "orthotrack/psl2/shapeshift.hpp"

using namespace otk;

namespace {
std::mt19937_64 rng(911ULL);

Isometry random_isometry(double scale = 0.5) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return Isometry(1.0 + u(rng), u(rng), u(rng), 1.0 + u(rng));
}
}  // namespace

TEST_CASE("basepoint norm basics") {
    const BasepointMetric m(HPoint(0.0, 1.0), 6.0, 0.05);

    SECTION("identity has norm zero") { CHECK(basepoint_norm(Isometry(), m) == 0.0); }

    SECTION("parabolic bound: ||P|| <= horocyclic displacement") {
        // z -> z + 0.1 fixes infinity; the horocyclic segment through i from i
        // to i + 0.1 has length 0.1.
        const Isometry p(1.0, 0.1, 0.0, 1.0);
        const double n = basepoint_norm(p, m);
        CHECK(n <= 0.1 + 1e-6);
        CHECK(n > 0.05);
    }

    SECTION("small transvection along axis through the basepoint") {
        const Geodesic axis(IdealPoint(0.0), IdealPoint::infinity());
        const double n = basepoint_norm(transvection(axis, 0.01), m);
        CHECK_THAT(n, Catch::Matchers::WithinRel(0.01, 0.05));
    }
}

TEST_CASE("transvection basics") {
    const Geodesic axis(IdealPoint(0.0), IdealPoint::infinity());
    SECTION("zero length is the identity") { CHECK(transvection(axis, 0.0).dist_to_identity() < 1e-15); }
    SECTION("standard diagonal form") {
        const Isometry t = transvection(axis, 1.0);
        CHECK_THAT(t.a, Catch::Matchers::WithinAbs(std::exp(0.5), 1e-12));
        CHECK_THAT(t.d, Catch::Matchers::WithinAbs(std::exp(-0.5), 1e-12));
        CHECK_THAT(t.b, Catch::Matchers::WithinAbs(0.0, 1e-12));
        CHECK_THAT(t.c, Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
    SECTION("norm bound ||T_g^l|| <= l e^{d(x^,g)} on random samples") {
        std::uniform_real_distribution<double> ue(-2.0, 2.0);
        std::uniform_real_distribution<double> ul(-0.2, 0.2);
        const BasepointMetric m(HPoint(0.0, 1.0), 6.0, 0.05);
        for (int i = 0; i < 60; ++i) {
            const double a = ue(rng);
            double b = ue(rng);
            if (std::fabs(b - a) < 0.1) b = a + 0.3;
            const Geodesic g{IdealPoint(a), IdealPoint(b)};
            const double l = ul(rng);
            const double bound = std::fabs(l) * std::exp(distance_to_geodesic(m.basepoint, g));
            CHECK(basepoint_norm(transvection(g, l), m) <= bound * (1.0 + 1e-3) + 1e-9);
        }
    }
}

TEST_CASE("left invariance and basepoint change") {
    const BasepointMetric m(HPoint(0.0, 1.0), 6.0, 0.05);
    SECTION("d(CA, CB) = d(A, B) within grid tolerance") {
        for (int i = 0; i < 5; ++i) {
            const Isometry a = random_isometry(0.05), b = random_isometry(0.05), c = random_isometry(0.3);
            const double d1 = psl2_distance(a, b, m);
            const double d2 = psl2_distance(c * a, c * b, m);
            CHECK_THAT(d2, Catch::Matchers::WithinRel(d1, 0.02));
        }
    }
    SECTION("d_x(A,B) <= d_y(A,B) e^{d(x,y)}") {
        const BasepointMetric my(HPoint(0.4, 1.7), 6.0, 0.05);
        for (int i = 0; i < 5; ++i) {
            const Isometry a = random_isometry(0.05), b = random_isometry(0.05);
            const double lhs = psl2_distance(a, b, m);
            const double rhs = psl2_distance(a, b, my) * std::exp(distance(m.basepoint, my.basepoint));
            CHECK(lhs <= rhs * (1.0 + 0.02));
        }
    }
    SECTION("parabolic bound holds for random parabolics") {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < 5; ++i) {
            // parabolic fixing a random boundary point: conjugate of z -> z + t
            const Isometry c = random_isometry(0.4);
            const double t = 0.3 * u(rng);
            const Isometry p = c * Isometry(1.0, t, 0.0, 1.0) * c.inverse();
            // Horocyclic segment length between x^ and P x^ based at the fixed
            // point: conjugate x^ back, measure in the standard picture, where
            // the horocycle through w based at infinity has length |t| / Im(w).
            const HPoint w = c.inverse().apply(m.basepoint);
            const double horo = std::fabs(t) / w.y;
            CHECK(basepoint_norm(p, m) <= horo * (1.0 + 1e-3) + 1e-9);
        }
    }
}

TEST_CASE("rep distance") {
    const BasepointMetric m(HPoint(0.0, 1.0), 6.0, 0.05);
    GeneratingSet rho1({{"a", random_isometry(0.2)}, {"b", random_isometry(0.2)}});

    SECTION("coincident sets have distance zero") { CHECK(rep_distance(rho1, rho1, m) == 0.0); }

    SECTION("post-composition with a small transvection obeys the bound") {
        const Geodesic axis(IdealPoint(-1.0), IdealPoint(3.0));
        const double eps = 0.01;
        const Isometry t = transvection(axis, eps);
        GeneratingSet rho2;
        for (auto& [k, v] : rho1.words) rho2.words[k] = t * v;
        const double bound = eps * std::exp(distance_to_geodesic(m.basepoint, axis));
        CHECK(rep_distance(rho1, rho2, m) <= bound * 1.01 + 1e-9);
        CHECK_THAT(rep_distance(rho2, rho1, m), Catch::Matchers::WithinRel(rep_distance(rho1, rho2, m), 1e-9));
    }

    SECTION("label mismatch is an error") {
        GeneratingSet rho3({{"a", Isometry()}, {"c", Isometry()}});
        CHECK_THROWS_AS(rep_distance(rho1, rho3, m), Error);
    }
}

TEST_CASE("spike shapeshift") {
    SECTION("unipotent normal form for genuine spikes") {
        const double am = 0.0, ap = 1.0;
        const ProtoSpikeData v(Geodesic(IdealPoint(am), IdealPoint::infinity()),
                               Geodesic(IdealPoint(ap), IdealPoint::infinity()));
        SECTION("t = 0 gives the identity") { CHECK(spike_shapeshift(v, 0.0).dist_to_identity() < 1e-14); }
        SECTION("matrix entries") {
            const Isometry phi = spike_shapeshift(v, 0.2);
            CHECK_THAT(phi.b, Catch::Matchers::WithinAbs((ap - am) * (std::exp(0.2) - 1.0), 1e-12));
            CHECK_THAT(phi.a, Catch::Matchers::WithinAbs(1.0, 1e-12));
            CHECK_THAT(phi.c, Catch::Matchers::WithinAbs(0.0, 1e-12));
            CHECK_THAT(phi.d, Catch::Matchers::WithinAbs(1.0, 1e-12));
            CHECK_THAT(phi.trace_abs(), Catch::Matchers::WithinAbs(2.0, 1e-12));
        }
        SECTION("sharpness shifts the exponent") {
            const ProtoSpikeData vf(v.g_minus, v.g_plus, 0.0, 0.05, 0.0);
            const Isometry phi = spike_shapeshift(vf, 0.15);
            CHECK_THAT(phi.b, Catch::Matchers::WithinAbs((ap - am) * (std::exp(0.2) - 1.0), 1e-12));
        }
    }

    SECTION("continuity in arc length at zero") {
        const Geodesic gm(IdealPoint(0.0), IdealPoint::infinity());
        const Isometry target = spike_shapeshift(
            ProtoSpikeData(gm, Geodesic(IdealPoint(1.0), IdealPoint::infinity())), 0.3);
        double prev_err = 1e9;
        for (int k = 2; k <= 6; ++k) {
            // g+ with a far second endpoint R: the connecting arc has small
            // length ~ 2/R; as R grows the deformation approaches the spike's.
            const double R = std::pow(10.0, k);
            const Geodesic gp(IdealPoint(1.0), IdealPoint(R));
            const Isometry m = to_standard(gm);
            const auto u = m.apply(gp.e1).value, w = m.apply(gp.e2).value;
            const double arclen = std::acosh((std::max(u, w) + std::min(u, w)) / (std::max(u, w) - std::min(u, w)));
            const ProtoSpikeData v(gm, gp, arclen, 0.0, 0.0);
            const Isometry phi = spike_shapeshift(v, 0.3);
            double err = std::max(std::max(std::fabs(phi.a - target.a), std::fabs(phi.b - target.b)),
                                  std::max(std::fabs(phi.c - target.c), std::fabs(phi.d - target.d)));
            CHECK(err < prev_err + 1e-12);
            prev_err = err;
        }
        CHECK(prev_err < 1e-3);
    }
}
