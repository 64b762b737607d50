#include <doctest.h>

#include <cfloat>
#include <functional>

#include "gateaux/error.hpp"
#include "gateaux/projective.hpp"
#include "support.hpp"

using namespace gateaux;
using namespace gateaux::testing;

namespace {

SpacePoint linf(std::vector<double> c) { return SpacePoint::sequence(SpaceTag::LinfSeq, std::move(c)); }

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::EvalFailure;
}

std::vector<double> padded(std::vector<double> head, std::size_t dim, double fill = 0.0) {
    head.resize(dim, fill);
    return head;
}

}  // namespace

TEST_CASE("truncation systems") {
    const auto sys = make_truncation_system({2, 3, 5});
    const auto x = linf({1, 2, 3, 4, 5});
    const auto x3 = sys.project(x, 3);
    CHECK(sys.connect(2, 3, x3) == sys.project(x, 2));
    CHECK(sys.project(x, 2) == SpacePoint::sequence(SpaceTag::Rt, {1, 2}));
    CHECK(sys.consistent_on(x));
    CHECK(make_truncation_system({1}).dims().size() == 1u);
    CHECK(code_of([] { make_truncation_system({2, 2}); }) == ErrorCode::BadDims);
    CHECK(code_of([] { make_truncation_system({}); }) == ErrorCode::BadDims);
    CHECK(code_of([] { make_truncation_system({0, 1}); }) == ErrorCode::BadDims);
    CHECK(code_of([] { truncate(SpacePoint::sequence(SpaceTag::LinfSeq, {1, 2}), 3); }) == ErrorCode::DimTooSmall);
}

TEST_CASE("weighted series evaluation") {
    CHECK(wseries_eval(linf(std::vector<double>(10, 1.0))) == doctest::Approx(ref_inv_square_sum(10)).epsilon(1e-15));
    CHECK(wseries_eval(linf({0, 0, 0})) == 0.0);
    CHECK(wseries_eval(linf({0, 0, 1, 0})) == doctest::Approx(1.0 / 9));
}

TEST_CASE("weighted series derivative") {
    const auto d = wseries_gateaux(linf({1, -1, 2}), linf({1, 1, 1}));
    REQUIRE(d);
    CHECK(*d == doctest::Approx(1.0 - 0.25 + 1.0 / 9).epsilon(1e-15));
    CHECK_FALSE(wseries_gateaux(linf(std::vector<double>(10, 0.0)), linf(std::vector<double>(10, 1.0))));
    CHECK(*wseries_gateaux(linf({0, 1}), linf({0, 0})) == 0.0);

    const auto f = make_cylindrical("wseries_partial", 10).full;
    const auto tr = one_sided_derivatives(f, linf(std::vector<double>(10, 0.0)), linf(std::vector<double>(10, 1.0)));
    CHECK(*tr.d_plus == doctest::Approx(ref_inv_square_sum(10)).epsilon(1e-12));
    CHECK(*tr.d_minus == doctest::Approx(-ref_inv_square_sum(10)).epsilon(1e-12));
}

TEST_CASE("cylindrical evaluation") {
    const auto sys = make_truncation_system({3});
    const auto cf = make_cylindrical("wseries_partial", 3);
    const auto x = padded({1, -1, 2}, 10, 7.0);
    CHECK(cyl_eval(cf, sys, linf(x)) == doctest::Approx(ref_wseries(x, 3)).epsilon(1e-15));
    CHECK(cyl_eval(constant_cylindrical(2.5, 3), sys, linf(x)) == 2.5);
    CHECK(code_of([&] { cyl_eval(cf, sys, linf({1, 2})); }) == ErrorCode::DimTooSmall);
}

TEST_CASE("cylindrical derivative lifts the base derivative") {
    const auto sys = make_truncation_system({3});
    const auto cf = make_cylindrical("wseries_partial", 3);
    const auto v = cyl_gateaux(cf, sys, linf(padded({1, -1, 2}, 6, 5.0)), linf(std::vector<double>(6, 1.0)));
    CHECK(v.status == DiffStatus::Gateaux);
    REQUIRE(v.value);
    CHECK(*v.value == doctest::Approx(1.0 - 0.25 + 1.0 / 9).epsilon(1e-9));

    const auto w = cyl_gateaux(cf, sys, linf(padded({0, -1, 2}, 6)), linf(padded({1}, 6)));
    CHECK(w.status == DiffStatus::NotGateaux);
    REQUIRE(w.failure_witness);
    CHECK(w.failure_witness->dim() == 6u);
}

TEST_CASE("Lipschitz factorization") {
    const auto sys = make_truncation_system({4});
    const auto cf = make_cylindrical("wseries_partial", 4);
    const auto r = lipschitz_factor_check(cf, sys, linf(padded({1, -1, 2, 0.5}, 8, 1.0)), 0.5, 200, 3);
    CHECK(r.flag);
    CHECK(r.k_m <= r.k_f);
    CHECK(r.k_f <= ref_inv_square_sum(4) * (1 + 1e-12));
    CHECK(code_of([&] {
              lipschitz_factor_check(constant_cylindrical(1.0, 4), sys, linf(padded({1}, 8)), 0.5, 50, 3);
          }) == ErrorCode::NonconstancyUnverified);
}

TEST_CASE("chain rule through outer maps") {
    const auto sys = make_truncation_system({3});
    const auto cf = make_cylindrical("wseries_partial", 3);
    const auto x = linf({1, -1, 2, 4});
    const auto h = linf({1, 1, 1, 1});
    const double fx = 1.0 + 0.25 + 2.0 / 9;
    const double df = 1.0 - 0.25 + 1.0 / 9;

    const auto v = compose_propagate(outer_map("cubic"), cf, sys, x, h);
    CHECK(v.status == DiffStatus::Gateaux);
    CHECK(*v.value == doctest::Approx((3 * fx * fx + 1) * df).epsilon(1e-8));

    const auto e = compose_propagate(outer_map("exp"), cf, sys, x, h);
    CHECK(*e.value == doctest::Approx(std::exp(fx) * df).epsilon(1e-8));

    // abs at a zero of the inner map
    const auto zero = linf({0, 0, 0, 1});
    const auto a = compose_propagate(outer_map("abs"), cf, sys, zero, linf({0, 0, 1, 0}));
    CHECK(a.status == DiffStatus::NotGateaux);

    // inner map not differentiable at x
    const auto n = compose_propagate(outer_map("square"), cf, sys, linf({0, 1, 1, 1}), linf({1, 0, 0, 0}));
    CHECK(n.status == DiffStatus::NotGateaux);

    CHECK_THROWS_AS(outer_map("tan"), Error);
    CHECK(outer_registry().size() == 6u);
}

TEST_CASE("property: cylindrical derivative matches the closed form") {
    Rng rng(51);
    for (int i = 0; i < 100; ++i) {
        const auto t = static_cast<std::size_t>(pick(rng, 1, 6));
        const auto dim = t + static_cast<std::size_t>(pick(rng, 0, 4));
        const auto sys = make_truncation_system({t});
        const auto cf = make_cylindrical("wseries_partial", t);
        const auto x = random_nonzero_coords(rng, dim);
        const auto h = random_coords(rng, dim);
        const auto v = cyl_gateaux(cf, sys, linf(x), linf(h));
        REQUIRE(v.status == DiffStatus::Gateaux);
        double ref = 0.0;
        for (std::size_t k = 1; k <= t; ++k) ref += sign_of(x[k - 1]) * h[k - 1] / static_cast<double>(k * k);
        // quotient rounding at the smallest grid step
        const double bound = 1e-9 + 8 * DBL_EPSILON * cyl_eval(cf, sys, linf(x)) / TGrid{}.steps().back();
        CHECK(std::abs(*v.value - ref) <= bound);
        CHECK(cyl_eval(cf, sys, linf(x)) == doctest::Approx(ref_wseries(x, t)).epsilon(1e-15));
    }
}
