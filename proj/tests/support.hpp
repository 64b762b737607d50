#pragma once

// Generators and reference formulas shared by the unit tests and the
// acceptance suite.  Values are dyadic (multiples of 2^-10, knots multiples of
// 2^-6) so piecewise linear algebra on them is exact in double precision.
// The reference formulas work on the generators' raw data and never call the
// library's evaluators.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gateaux/spaces.hpp"

namespace gateaux::testing {

using Rng = std::mt19937_64;

inline double dyadic(Rng& rng, long lo, long hi, int bits = 10) {
    std::uniform_int_distribution<long> d(lo, hi);
    return std::ldexp(static_cast<double>(d(rng)), -bits);
}

inline int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// ---------------------------------------------------------------- sequences

inline std::vector<double> random_coords(Rng& rng, std::size_t dim, double mag = 4.0) {
    const long m = static_cast<long>(mag * 1024);
    std::vector<double> c(dim);
    for (auto& v : c) v = dyadic(rng, -m, m);
    return c;
}

/// Every coordinate nonzero.
inline std::vector<double> random_nonzero_coords(Rng& rng, std::size_t dim) {
    auto c = random_coords(rng, dim);
    for (auto& v : c) {
        while (v == 0.0) v = dyadic(rng, -4096, 4096);
    }
    return c;
}

/// Coordinate p (0-based) dominates the others by exactly `gap`.
struct Dominant {
    std::vector<double> coords;
    std::size_t p;
    double gap;
};

inline Dominant random_dominant(Rng& rng, std::size_t dim) {
    Dominant d;
    d.coords = random_coords(rng, dim, 2.0);
    d.p = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(dim) - 1));
    d.gap = dyadic(rng, 16, 1024);
    double others = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        if (k != d.p) others = std::max(others, std::abs(d.coords[k]));
    }
    d.coords[d.p] = (pick(rng, 0, 1) ? 1.0 : -1.0) * (others + d.gap);
    return d;
}

/// Two coordinates share the largest magnitude (signs independent).
inline std::vector<double> random_top_tie(Rng& rng, std::size_t dim) {
    auto c = random_coords(rng, dim, 2.0);
    const auto i = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(dim) - 1));
    auto j = i;
    while (j == i) j = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(dim) - 1));
    double top = 0.0;
    for (double v : c) top = std::max(top, std::abs(v));
    top += dyadic(rng, 0, 512);
    c[i] = (pick(rng, 0, 1) ? 1.0 : -1.0) * top;
    c[j] = (pick(rng, 0, 1) ? 1.0 : -1.0) * top;
    return c;
}

/// Some coordinates exactly zero, some ties; used for density inputs.
inline std::vector<double> random_rough_coords(Rng& rng, std::size_t dim) {
    auto c = random_coords(rng, dim, 2.0);
    for (auto& v : c) {
        if (pick(rng, 0, 3) == 0) v = 0.0;
    }
    if (dim >= 2 && pick(rng, 0, 1)) c[1] = -c[0];
    return c;
}

// ---------------------------------------------------------- piecewise data

/// Continuous piecewise linear data: values at knots.
struct PlData {
    std::vector<double> knots;
    std::vector<double> values;

    double at(double s) const {
        if (s <= knots.front()) return values.front();
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            if (s <= knots[i + 1]) {
                const double w = (s - knots[i]) / (knots[i + 1] - knots[i]);
                return values[i] + w * (values[i + 1] - values[i]);
            }
        }
        return values.back();
    }

    SpacePoint point(SpaceTag tag) const {
        std::vector<Segment> segs;
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) segs.push_back({values[i], values[i + 1]});
        return SpacePoint::piecewise(tag, knots, segs);
    }
};

/// Knots: a, b plus interior multiples of 2^-6.
inline std::vector<double> random_knots(Rng& rng, double a, double b, int interior_max = 5) {
    std::vector<double> k{a, b};
    const int cells = static_cast<int>((b - a) * 64);
    const int m = pick(rng, 0, interior_max);
    for (int i = 0; i < m; ++i) k.push_back(a + std::ldexp(pick(rng, 1, cells - 1), -6));
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    return k;
}

inline PlData random_pl(Rng& rng, double a, double b, double mag = 2.0) {
    PlData d;
    d.knots = random_knots(rng, a, b);
    d.values = random_coords(rng, d.knots.size(), mag);
    return d;
}

/// |f| peaks at exactly one knot, by `gap` over every other knot.
struct Peaked {
    PlData f;
    std::size_t peak;
    double gap;
};

inline Peaked random_peaked(Rng& rng, double a, double b) {
    Peaked p;
    p.f = random_pl(rng, a, b);
    p.peak = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(p.f.knots.size()) - 1));
    p.gap = dyadic(rng, 16, 1024);
    double others = 0.0;
    for (std::size_t i = 0; i < p.f.values.size(); ++i) {
        if (i != p.peak) others = std::max(others, std::abs(p.f.values[i]));
    }
    p.f.values[p.peak] = (pick(rng, 0, 1) ? 1.0 : -1.0) * (others + p.gap);
    return p;
}

/// |f| reaches its max at two or more knots, or along a flat stretch.
inline PlData random_flat_top(Rng& rng, double a, double b) {
    auto d = random_pl(rng, a, b);
    while (d.knots.size() < 3) d = random_pl(rng, a, b);
    double top = 0.0;
    for (double v : d.values) top = std::max(top, std::abs(v));
    const auto i = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(d.knots.size()) - 2));
    const auto j = pick(rng, 0, 1) ? i + 1 : static_cast<std::size_t>(pick(rng, 0, static_cast<int>(d.knots.size()) - 1));
    d.values[i] = top;
    d.values[j] = (pick(rng, 0, 1) ? 1.0 : -1.0) * top;
    return d;
}

/// NBV element: random limits per segment, starting at 0.
inline SpacePoint random_nbv(Rng& rng, double a, double b) {
    const auto knots = random_knots(rng, a, b);
    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double left = i == 0 ? 0.0 : dyadic(rng, -2048, 2048);
        segs.push_back({left, pick(rng, 0, 3) == 0 ? left : dyadic(rng, -2048, 2048)});
    }
    return SpacePoint::piecewise(SpaceTag::NbvAb, knots, segs);
}

// ------------------------------------------------------ reference formulas

inline double ref_l1_derivative(const std::vector<double>& x, const std::vector<double>& h) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += sign_of(x[k]) * h[k];
    return s;
}

inline double ref_linf_derivative(const std::vector<double>& x, const std::vector<double>& h) {
    std::size_t p = 0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        if (std::abs(x[k]) > std::abs(x[p])) p = k;
    }
    return sign_of(x[p]) * h[p];
}

inline double ref_peak_derivative(const Peaked& f, const PlData& h) {
    const double t0 = f.f.knots[f.peak];
    return sign_of(f.f.values[f.peak]) * h.at(t0);
}

inline double ref_inv_square_sum(std::size_t n) {
    double s = 0.0;
    for (std::size_t k = 1; k <= n; ++k) s += 1.0 / (static_cast<double>(k) * static_cast<double>(k));
    return s;
}

inline double ref_wseries(const std::vector<double>& x, std::size_t t) {
    double s = 0.0;
    for (std::size_t k = 1; k <= t; ++k) s += std::abs(x[k - 1]) / (static_cast<double>(k) * static_cast<double>(k));
    return s;
}

}  // namespace gateaux::testing
