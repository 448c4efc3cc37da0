#include <catch2/catch_amalgamated.hpp>

#include "ginocchio/coordinate_map.hpp"

#include <cmath>
#include <random>

using namespace ginocchio;

namespace {

PotentialParams fig_params() {
    return make_params(1.75, {8.1, 0.0}, {1.25, 0.0}, 0.3);
}

}  // namespace

TEST_CASE("anchor: u = 0 where x + i eps = 0", "[map]") {
    // eps = 0 needs lambda(lambda-1) = 0
    auto p = make_params(1.75, {8.1, 0.0}, {1.0, 0.0}, 0.0);
    MapSample m = map_at(p, 0.0);
    CHECK(std::abs(m.u) < 1e-14);
    // du/dx at the anchor is g2 cosh(0)/sqrt(g2) = gamma
    CHECK(m.dudx.real() == Catch::Approx(1.75).margin(1e-12));
    CHECK(std::abs(m.dudx.imag()) < 1e-13);
}

TEST_CASE("gamma = 1 makes the map the identity", "[map]") {
    auto p = PotentialParams::unchecked(1.0, SParam::real_branch(8.1),
                                        LambdaParam::real_branch(1.25), 0.3);
    MapTable t = map_table(p, -5.0, 5.0, 101, 1e-14);
    for (const auto& m : t.samples) {
        CHECK(std::abs(m.u - cplx(m.x, 0.3)) < 1e-13);
        CHECK(std::abs(m.dudx - cplx(1.0, 0.0)) < 1e-13);
    }
}

TEST_CASE("map against independent closed-form root solve", "[map]") {
    // frozen from a 40-digit solve of the implicit relation
    auto p = fig_params();
    struct Ref {
        double x;
        cplx u;
    };
    const Ref refs[] = {
        {0.0, {0.0, 0.50895829620566178}},
        {1.0, {2.2351097826761629, 0.89549798910430263}},
        {2.0, {5.3022440439513722, 0.91870064694915955}},
        {5.0, {14.489757520011377, 0.91874999999948344}},
        {-5.0, {-14.489757520011377, 0.91874999999948344}},
    };
    for (const auto& r : refs) {
        MapSample m = map_at(p, r.x);
        CAPTURE(r.x);
        CHECK(std::abs(m.u - r.u) < 1e-10);
    }
}

TEST_CASE("derivative matches the transformation rule at the sample", "[map]") {
    auto p = fig_params();
    MapSample m = map_at(p, 1.3);
    // w from dudx must square to g2 + sinh^2 u
    cplx w = p.gamma2() * std::cosh(m.u) / m.dudx;
    CHECK(std::abs(w * w - (p.gamma2() + std::sinh(m.u) * std::sinh(m.u))) < 1e-10);
}

TEST_CASE("table symmetry: Re u odd, Im u even, PT defect small", "[map]") {
    auto p = fig_params();
    MapTable t = map_table(p, -5.0, 5.0, 401);
    CHECK(pt_reflect_check(t) < 1e-10);

    const size_t m = t.samples.size();
    for (size_t i = 0; i < m; ++i) {
        const auto& a = t.samples[i];
        const auto& b = t.samples[m - 1 - i];
        CHECK(std::abs(a.u.real() + b.u.real()) < 1e-10);
        CHECK(std::abs(a.u.imag() - b.u.imag()) < 1e-10);
    }

    SECTION("corrupted sample is caught (negative control)") {
        MapTable bad = t;
        bad.samples[120].u += cplx(1e-3, 0.0);
        CHECK(pt_reflect_check(bad) > 1e-4);
    }
    SECTION("asymmetric grid is rejected") {
        MapTable skew = map_table(p, -4.0, 5.0, 101);
        CHECK_THROWS_AS(pt_reflect_check(skew), GinError);
    }
}

TEST_CASE("gamma = 1 table: identity map and exactly vanishing PT defect", "[map]") {
    auto p = PotentialParams::unchecked(1.0, SParam::real_branch(8.1),
                                        LambdaParam::real_branch(1.25), 0.3);
    MapTable t = map_table(p, -3.0, 3.0, 51, 1e-14);
    CHECK(pt_reflect_check(t) < 1e-13);
}

TEST_CASE("asymptotics: slope gamma^2, offset ln(gamma) - g atan(g)", "[map]") {
    auto p = fig_params();
    const double g2 = p.gamma2();
    const double g = std::sqrt(g2 - 1.0);
    const double c_off = std::log(1.75) - g * std::atan(g);

    MapSample u20 = map_at(p, 20.0);
    MapSample u21 = map_at(p, 21.0);
    cplx slope = u21.u - u20.u;
    CHECK(std::abs(slope.real() - g2) < 1e-8);
    CHECK(std::abs(slope.imag()) < 1e-8);
    CHECK(std::abs(u20.u - (g2 * cplx(20.0, 0.3) + c_off)) < 1e-8);

    MapSample um = map_at(p, -20.0);
    CHECK(std::abs(um.u - (g2 * cplx(-20.0, 0.3) - c_off)) < 1e-8);
}

TEST_CASE("finite-difference derivative converges at order >= 1.9", "[map]") {
    auto p = fig_params();
    auto max_err = [&](int count) {
        MapTable t = map_table(p, -2.0, 2.0, count);
        double h = t.step;
        double worst = 0.0;
        for (size_t i = 1; i + 1 < t.samples.size(); ++i) {
            cplx fd = (t.samples[i + 1].u - t.samples[i - 1].u) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - t.samples[i].dudx));
        }
        return worst;
    };
    double e1 = max_err(101), e2 = max_err(201), e4 = max_err(401);
    double order12 = std::log2(e1 / e2);
    double order24 = std::log2(e2 / e4);
    CAPTURE(e1, e2, e4);
    CHECK(order12 >= 1.9);
    CHECK(order24 >= 1.9);
}

TEST_CASE("gamma -> 1 degeneracy: map collapses onto the identity", "[map]") {
    auto p = PotentialParams::unchecked(1.0 + 1e-6, SParam::real_branch(8.1),
                                        LambdaParam::real_branch(1.25), 0.3);
    MapTable t = map_table(p, -5.0, 5.0, 101);
    for (const auto& m : t.samples)
        CHECK(std::abs(m.u - cplx(m.x, 0.3)) < 1e-4);
}

TEST_CASE("Re u is strictly increasing along the grid", "[map]") {
    for (double eps : {0.1, 0.3, 0.45}) {
        auto p = make_params(1.75, {8.1, 0.0}, {1.25, 0.0}, eps);
        MapTable t = map_table(p, -5.0, 5.0, 201);
        for (size_t i = 1; i < t.samples.size(); ++i)
            CHECK(t.samples[i].u.real() > t.samples[i - 1].u.real());
    }
}

TEST_CASE("randomized parameters keep the residual and PT invariants", "[map][property]") {
    std::mt19937 rng(911);
    std::uniform_real_distribution<double> gam(1.05, 2.4), frac(0.1, 0.9);
    for (int i = 0; i < 25; ++i) {
        double gamma = gam(rng);
        auto probe = PotentialParams::unchecked(gamma, SParam::real_branch(3.0),
                                                LambdaParam::real_branch(1.0), 0.0);
        auto p = make_params(gamma, {3.0, 0.0}, {1.0, 0.0},
                             frac(rng) * critical_shift(probe));
        MapTable t = map_table(p, -4.0, 4.0, 161);
        CHECK(pt_reflect_check(t) < 1e-10);
        for (size_t k = 1; k < t.samples.size(); ++k)
            CHECK(t.samples[k].u.real() > t.samples[k - 1].u.real());
    }
}

TEST_CASE("shifts at or beyond the branch-point height are rejected", "[map]") {
    // for gamma = 1.75 the critical shift is pi/(2 g2) ~ 0.5129; a line at or
    // above that height runs into (or beyond) a branch point of the map
    auto p = make_params(1.75, {8.1, 0.0}, {1.0, 0.0}, 1.0);
    CHECK(critical_shift(p) == Catch::Approx(0.5129131).margin(1e-5));
    CHECK_THROWS_MATCHES(map_at(p, 1.0), GinError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("SingularOnAxis")));
    CHECK_THROWS_AS(map_table(p, -4.0, 4.0, 11), GinError);
}

TEST_CASE("near-critical shift still satisfies every map invariant", "[map]") {
    auto p0 = make_params(1.75, {8.1, 0.0}, {1.0, 0.0}, 0.1);
    double eps = 0.9 * critical_shift(p0);
    auto p = make_params(1.75, {8.1, 0.0}, {1.0, 0.0}, eps);
    MapTable t = map_table(p, -4.0, 4.0, 801);
    CHECK(pt_reflect_check(t) < 1e-10);
    for (size_t k = 1; k < t.samples.size(); ++k)
        CHECK(t.samples[k].u.real() > t.samples[k - 1].u.real());
    // asymptotic height g2*eps approached from below pi/2
    CHECK(t.samples.back().u.imag() < 1.5707963267948966);
    CHECK(std::abs(t.samples.back().u.imag() - p.gamma2() * eps) < 1e-2);
}
