#include <doctest.h>

#include <cmath>

#include "gateaux/diffengine.hpp"
#include "gateaux/error.hpp"
#include "gateaux/oracles.hpp"
#include "support.hpp"

using namespace gateaux;
using namespace gateaux::testing;

namespace {

SpacePoint seq(SpaceTag tag, std::vector<double> c) { return SpacePoint::sequence(tag, std::move(c)); }
SpacePoint linf(std::vector<double> c) { return seq(SpaceTag::LinfSeq, std::move(c)); }
SpacePoint l1(std::vector<double> c) { return seq(SpaceTag::L1Seq, std::move(c)); }

std::vector<SpacePoint> units(const SpacePoint& x) {
    std::vector<SpacePoint> out;
    for (std::size_t p = 1; p <= x.dim(); ++p) out.push_back(unit_direction(x, p));
    return out;
}

}  // namespace

TEST_CASE("directional_quotient examples") {
    const auto f = norm_functional(SpaceTag::LinfSeq);
    CHECK(directional_quotient(f, linf({3, 1}), linf({1, 0}), 0.1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(directional_quotient(f, linf({1, 1}), linf({1, -1}), 0.1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(directional_quotient(f, linf({1, 1}), linf({1, -1}), -0.1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(directional_quotient(f, linf({3, 1}), linf({0, 0}), 0.25) == 0.0);
}

TEST_CASE("one_sided_derivatives examples") {
    const auto n1 = norm_functional(SpaceTag::L1Seq);
    const auto tr = one_sided_derivatives(n1, l1({1, -2, 3}), l1({1, 1, 1}));
    REQUIRE(tr.d_plus);
    REQUIRE(tr.d_minus);
    CHECK(*tr.d_plus == 1.0);
    CHECK(*tr.d_minus == 1.0);

    const auto nbv = norm_functional(SpaceTag::NbvAb);
    const auto c = SpacePoint::piecewise(SpaceTag::NbvAb, {0.0, 1.0}, {{0.0, 0.0}});
    const auto step = SpacePoint::piecewise(SpaceTag::NbvAb, {0.0, 0.5, 1.0}, {{0.0, 0.0}, {1.0, 1.0}});
    const auto nt = one_sided_derivatives(nbv, c, step);
    CHECK(*nt.d_plus == 1.0);
    CHECK(*nt.d_minus == -1.0);
}

TEST_CASE("grid validation") {
    TGrid g;
    g.rho = 1.5;
    CHECK_THROWS_AS(g.validate(), Error);
    g = TGrid{};
    g.count = 1;
    CHECK_THROWS_AS(g.validate(), Error);
    CHECK(TGrid{}.steps().size() == 20u);
}

TEST_CASE("property: reflection d+(h) = -d-(-h) and positive homogeneity") {
    Rng rng(21);
    const auto f = norm_functional(SpaceTag::LinfSeq);
    for (int i = 0; i < 200; ++i) {
        const auto dim = static_cast<std::size_t>(pick(rng, 1, 6));
        const auto x = linf(i % 2 ? random_top_tie(rng, std::max<std::size_t>(dim, 2)) : random_coords(rng, dim));
        const auto h = linf(random_coords(rng, x.dim()));
        const auto neg = linf([&] {
            std::vector<double> c(h.coords().begin(), h.coords().end());
            for (auto& v : c) v = -v;
            return c;
        }());
        const auto a = one_sided_derivatives(f, x, h);
        const auto b = one_sided_derivatives(f, x, neg);
        REQUIRE(a.d_plus);
        REQUIRE(b.d_minus);
        CHECK(*a.d_plus == -*b.d_minus);

        const double s = std::ldexp(1.0, pick(rng, -2, 3));
        const auto scaled = one_sided_derivatives(f, x, linear_combine(s, h, 0.0, h));
        CHECK(*scaled.d_plus == doctest::Approx(s * *a.d_plus).epsilon(1e-12));
        // convexity of a norm
        CHECK(*a.d_plus >= *a.d_minus);
    }
}

TEST_CASE("property: engine matches the l1 and l-infinity closed forms") {
    Rng rng(22);
    const auto n1 = norm_functional(SpaceTag::L1Seq);
    const auto ninf = norm_functional(SpaceTag::LinfSeq);
    for (int i = 0; i < 200; ++i) {
        const auto dim = static_cast<std::size_t>(pick(rng, 1, 8));
        const auto x = random_nonzero_coords(rng, dim);
        const auto h = random_coords(rng, dim);
        const auto t1 = one_sided_derivatives(n1, l1(x), l1(h));
        CHECK(*t1.d_plus == ref_l1_derivative(x, h));
        CHECK(*t1.d_minus == ref_l1_derivative(x, h));

        const auto d = random_dominant(rng, dim);
        const auto t2 = one_sided_derivatives(ninf, linf(d.coords), linf(h));
        CHECK(*t2.d_plus == ref_linf_derivative(d.coords, h));
        CHECK(*t2.d_minus == ref_linf_derivative(d.coords, h));
    }
}

TEST_CASE("gateaux_verdict examples") {
    const auto f = norm_functional(SpaceTag::LinfSeq);
    const auto x = linf({3, 1, 0.5});
    const auto v = gateaux_verdict(f, x, units(x));
    CHECK(v.status == DiffStatus::Gateaux);
    REQUIRE(v.derivative);
    CHECK(apply(*v.derivative, linf({2, 5, 7})) == 2.0);

    const auto y = linf({1, 1, 0});
    auto probes = units(y);
    probes.push_back(linf({1, -1, 0}));
    const auto w = gateaux_verdict(f, y, probes);
    CHECK(w.status == DiffStatus::NotGateaux);
    CHECK(w.failure_witness.has_value());
}

TEST_CASE("NBV norm is nowhere Gateaux differentiable") {
    Rng rng(23);
    const auto f = norm_functional(SpaceTag::NbvAb);
    for (int i = 0; i < 100; ++i) {
        const auto x = random_nbv(rng, 0.0, 1.0);
        const auto v = gateaux_verdict(f, x, {witness_nbv(x)});
        CHECK(v.status == DiffStatus::NotGateaux);
    }
}

TEST_CASE("hadamard_verdict examples") {
    const auto ninf = norm_functional(SpaceTag::LinfSeq);
    std::vector<SpacePoint> fam;
    const TGrid g;
    for (int j = 0; j < g.count; ++j) fam.push_back(linf({std::ldexp(1.0, -j), 1.0 + std::ldexp(1.0, -j)}));
    const auto v = hadamard_verdict(ninf, linf({3, 1}), linf({0, 1}), {fam});
    CHECK(v.status == DiffStatus::Hadamard);
    REQUIRE(v.value);
    CHECK(*v.value == 0.0);

    const auto n1 = norm_functional(SpaceTag::L1Seq);
    std::vector<SpacePoint> fam1;
    for (int j = 0; j < g.count; ++j) fam1.push_back(l1({1.0, 1.0 + std::ldexp(1.0, -j)}));
    const auto w = hadamard_verdict(n1, l1({1, -2}), l1({1, 1}), {fam1});
    CHECK(w.status == DiffStatus::Hadamard);
    CHECK(*w.value == 0.0);
}

TEST_CASE("frechet_verdict examples") {
    Rng rng(24);
    const auto f = norm_functional(SpaceTag::LinfSeq);
    const auto x = linf({3, 1, 0.5});
    std::vector<SpacePoint> sphere;
    for (int i = 0; i < 50; ++i) {
        auto c = random_coords(rng, 3);
        const auto n = eval_norm(linf(c)).value;
        if (n == 0.0) continue;
        for (auto& v : c) v /= n;
        sphere.push_back(linf(c));
    }
    const std::vector<double> radii{0.5, 0.25, 0.125, 0.0625};
    const auto good = frechet_verdict(f, x, LinearFunctionalRep::signed_index(1, 1), sphere, radii);
    CHECK(good.status == DiffStatus::Frechet);
    // samples are scaled onto the sphere, so the remainder is zero up to rounding
    for (double r : good.remainder_profile) CHECK(r <= 1e-13);

    const auto bad = frechet_verdict(f, x, LinearFunctionalRep::zero(), sphere, radii);
    CHECK(bad.status != DiffStatus::Frechet);
}

TEST_CASE("local Lipschitz estimates") {
    const auto f = norm_functional(SpaceTag::LinfSeq);
    const double k = local_lipschitz_estimate(f, linf({3, 1, 0.5}), 0.5, 200, 7);
    CHECK(k <= 1.0 + 1e-12);
    CHECK(k > 0.9);
    const Functional constant{"const", SpaceTag::LinfSeq, [](const SpacePoint&) { return 2.0; }};
    CHECK(local_lipschitz_estimate(constant, linf({1, 2}), 1.0, 50, 7) == 0.0);
}

TEST_CASE("property: Hadamard agrees with Gateaux on certified points") {
    Rng rng(25);
    const auto f = norm_functional(SpaceTag::LinfSeq);
    const TGrid g;
    for (int i = 0; i < 50; ++i) {
        const auto d = random_dominant(rng, 4);
        const auto x = linf(d.coords);
        const auto h = random_coords(rng, 4);
        std::vector<SpacePoint> fam;
        const auto dir = random_coords(rng, 4);
        for (int j = 0; j < g.count; ++j) {
            std::vector<double> k = h;
            for (std::size_t n = 0; n < 4; ++n) k[n] += std::ldexp(dir[n], -j - 2);
            fam.push_back(linf(k));
        }
        const auto gv = gateaux_verdict(f, x, units(x));
        REQUIRE(gv.status == DiffStatus::Gateaux);
        const auto hv = hadamard_verdict(f, x, linf(h), {fam});
        REQUIRE(hv.value);
        CHECK(*hv.value == doctest::Approx(apply(*gv.derivative, linf(h))).epsilon(1e-9));
    }
}
