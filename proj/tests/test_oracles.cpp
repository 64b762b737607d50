#include <doctest.h>

#include "gateaux/diffengine.hpp"
#include "gateaux/error.hpp"
#include "gateaux/oracles.hpp"
#include "support.hpp"

using namespace gateaux;
using namespace gateaux::testing;

namespace {

SpacePoint linf(std::vector<double> c) { return SpacePoint::sequence(SpaceTag::LinfSeq, std::move(c)); }
SpacePoint l1(std::vector<double> c) { return SpacePoint::sequence(SpaceTag::L1Seq, std::move(c)); }

SpacePoint pl(SpaceTag tag, std::vector<double> knots, std::vector<double> values) {
    return PlData{std::move(knots), std::move(values)}.point(tag);
}

}  // namespace

TEST_CASE("oracle_l1 examples") {
    const auto r = oracle_l1(l1({1, -2, 3}));
    REQUIRE(r);
    CHECK(r->coeffs == std::vector<double>{1, -1, 1});
    CHECK_FALSE(oracle_l1(l1({1, 0, 3})));
    CHECK(oracle_l1(l1({-5}))->coeffs == std::vector<double>{-1});
}

TEST_CASE("oracle_linf examples") {
    const auto r = oracle_linf(linf({3, 1, 0.5}), 1.0);
    REQUIRE(r);
    CHECK(r->p == 1u);
    CHECK(r->sigma == 1);
    CHECK_FALSE(oracle_linf(linf({1, 1, 0}), 1e-6));
    const auto s = oracle_linf(linf({-3, 1}), 1.5);
    REQUIRE(s);
    CHECK(s->p == 1u);
    CHECK(s->sigma == -1);
}

TEST_CASE("witness_linf examples") {
    const auto f = norm_functional(SpaceTag::LinfSeq);
    CHECK(witness_linf(linf({1, 1, 0}), 0.0) == linf({1, -1, 0}));
    const auto x = linf({-2, 2});
    const auto h = witness_linf(x, 0.0);
    CHECK(h == linf({-1, -1}));
    const auto tr = one_sided_derivatives(f, x, h);
    CHECK(*tr.d_plus == 1.0);
    CHECK(*tr.d_minus == -1.0);
    CHECK(witness_linf(linf({0, 0}), 0.0) == linf({1, -1}));
    CHECK_THROWS_AS(witness_linf(linf({3, 1}), 0.0), Error);
}

TEST_CASE("oracle_csup examples") {
    // 1 - (t - 0.3)^2 sampled on a fine mesh containing 0.2, 0.3, 0.4
    std::vector<double> k, v;
    for (int i = 0; i <= 100; ++i) {
        const double t = i / 100.0;
        k.push_back(t);
        v.push_back(1.0 - (t - 0.3) * (t - 0.3));
    }
    k.front() = 0.0;
    k.back() = 1.0;
    const auto r = oracle_csup(pl(SpaceTag::CAb, k, v), 0.1);
    REQUIRE(r);
    CHECK(r->t0 == doctest::Approx(0.3));
    CHECK(r->sigma == 1);
    CHECK(*r->gap == doctest::Approx(0.01).epsilon(1e-9));
    CHECK_FALSE(oracle_csup(pl(SpaceTag::CAb, {0.0, 0.5, 1.0}, {0.5, 0.0, 0.5}), 0.1));
    CHECK_FALSE(oracle_csup(pl(SpaceTag::CAb, {0.0, 1.0}, {2.0, 2.0}), 0.1));
}

TEST_CASE("oracle_linf_function examples") {
    const auto bump = pl(SpaceTag::LinfR, {-1.0, 0.0, 1.0}, {0.0, 2.0, 0.0});
    const auto r = oracle_linf_function(bump, 0.25);
    REQUIRE(r);
    CHECK(r->kind == LinearFunctionalRep::Kind::PointMass);
    CHECK(r->t0 == 0.0);
    CHECK(r->sigma == 1);
    CHECK_FALSE(oracle_linf_function(pl(SpaceTag::LinfR, {-1.0, 0.0, 1.0}, {1.0, 0.0, 1.0}), 0.25));
    CHECK_FALSE(oracle_linf_function(pl(SpaceTag::LinfR, {-1.0, 1.0}, {0.0, 0.0}), 0.25));
}

TEST_CASE("witness_linf_function gives opposite one-sided quotients") {
    const auto f = norm_functional(SpaceTag::LinfR);
    const auto two = pl(SpaceTag::LinfR, {-1.0, 0.0, 1.0}, {1.0, 0.0, 1.0});
    const auto h = witness_linf_function(two);
    CHECK(h.has_jumps());
    const auto tr = one_sided_derivatives(f, two, h);
    CHECK(std::abs(*tr.d_plus) == 1.0);
    CHECK(std::abs(*tr.d_minus) == 1.0);
    CHECK(*tr.d_plus != *tr.d_minus);

    const auto opposite = pl(SpaceTag::LinfR, {-1.0, 0.0, 1.0}, {2.0, 0.0, -2.0});
    const auto to = one_sided_derivatives(f, opposite, witness_linf_function(opposite));
    CHECK(std::abs(*to.d_plus) == 1.0);
    CHECK(*to.d_plus != *to.d_minus);
}

TEST_CASE("witness_nbv examples") {
    const auto f = norm_functional(SpaceTag::NbvAb);
    const auto constant = SpacePoint::piecewise(SpaceTag::NbvAb, {0.0, 1.0}, {{0.0, 0.0}});
    auto tr = one_sided_derivatives(f, constant, witness_nbv(constant));
    CHECK(*tr.d_plus == 1.0);
    CHECK(*tr.d_minus == -1.0);

    const auto up = SpacePoint::piecewise(SpaceTag::NbvAb, {0.0, 1.0}, {{0.0, 1.0}});
    const auto e = nbv_extremes(up);
    CHECK(e.c < e.d);
    tr = one_sided_derivatives(f, up, witness_nbv(up));
    CHECK(*tr.d_plus == 1.0);
    CHECK(*tr.d_minus == -1.0);
}

TEST_CASE("property: oracle and engine agree where an oracle applies") {
    Rng rng(31);
    const auto ninf = norm_functional(SpaceTag::LinfSeq);
    const auto ncsup = norm_functional(SpaceTag::CAb);
    for (int i = 0; i < 100; ++i) {
        const auto d = random_dominant(rng, static_cast<std::size_t>(pick(rng, 1, 6)));
        const auto x = linf(d.coords);
        const auto rep = oracle_linf(x, d.gap / 2);
        REQUIRE(rep);
        CHECK(rep->p == d.p + 1);
        for (int j = 0; j < 20; ++j) {
            const auto h = linf(random_coords(rng, x.dim()));
            const auto tr = one_sided_derivatives(ninf, x, h);
            CHECK(std::abs(*tr.d_plus - apply(*rep, h)) <= 1e-9);
        }

        const auto p = random_peaked(rng, 0.0, 1.0);
        const auto f = p.f.point(SpaceTag::CAb);
        const auto cr = oracle_csup(f, 1.0 / 64);
        REQUIRE(cr);
        CHECK(cr->t0 == p.f.knots[p.peak]);
        const auto h = random_pl(rng, 0.0, 1.0);
        const auto tr = one_sided_derivatives(ncsup, f, h.point(SpaceTag::CAb));
        CHECK(std::abs(*tr.d_plus - ref_peak_derivative(p, h)) <= 1e-9);
    }
}

TEST_CASE("property: l-infinity complementarity") {
    Rng rng(32);
    for (int i = 0; i < 300; ++i) {
        const auto dim = static_cast<std::size_t>(pick(rng, 2, 7));
        const auto c = i % 2 ? random_top_tie(rng, dim) : random_coords(rng, dim);
        const auto x = linf(c);
        bool oracle = false;
        for (double eps : {1e-3, 1.0 / 1024, 1e-6}) oracle = oracle || oracle_linf(x, eps).has_value();
        bool witness = true;
        try {
            witness_linf(x, 0.0);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotInComplement);
            witness = false;
        }
        CHECK(oracle != witness);
    }
}

TEST_CASE("property: l-infinity witness is sound") {
    Rng rng(33);
    const auto f = norm_functional(SpaceTag::LinfSeq);
    for (int i = 0; i < 200; ++i) {
        const auto x = linf(random_top_tie(rng, static_cast<std::size_t>(pick(rng, 2, 6))));
        const auto tr = one_sided_derivatives(f, x, witness_linf(x, 0.0));
        CHECK(*tr.d_plus == 1.0);
        CHECK(*tr.d_minus == -1.0);
    }
}
