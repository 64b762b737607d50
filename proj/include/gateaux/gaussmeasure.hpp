#pragma once

// Product Gaussian measures on R^n truncations of l-infinity.
//
// Variates come from a counter-based generator: the uniform for (seed,
// sample, coordinate) is a hash of those three integers, mapped through the
// normal quantile.  Draws are therefore independent of thread count and of
// how many coordinates are requested, so marginals of an n = 3 run reproduce
// an n = 2 run bit for bit.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gateaux/spaces.hpp"

namespace gateaux {

struct GaussianSpec {
    std::vector<double> means;
    std::vector<double> variances;
    double r = 2.0;
    /// Named variance law used to extend the lists on demand ("inv_log":
    /// s_kk = 1 / ln(k + 2), k 1-based; means 0).
    std::optional<std::string> law;

    void validate() const;
    double mean(std::size_t k) const;      ///< 1-based
    double variance(std::size_t k) const;  ///< 1-based
};

/// inv_log law with r = 2: e^{-r / s_kk} = (k + 2)^{-2}.
GaussianSpec default_gaussian_spec(std::size_t listed = 64);

/// Independent standard normals, for the n = 2 tie oracle checks.
GaussianSpec standard_gaussian_spec(std::size_t n);

struct VakhaniaResult {
    bool summable = false;
    double partial_sum = 0.0;
    double raabe = 0.0;  ///< N (a_{N-1}/a_N - 1); > 1 means the tail is dominated by a convergent p-series
};

VakhaniaResult vakhania_check(const GaussianSpec& spec, std::size_t N);

/// Uniform in (0, 1) for (seed, sample, coordinate).
double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t coord);

std::vector<SpacePoint> gaussian_sample(const GaussianSpec& spec, std::size_t n, std::size_t count,
                                        std::uint64_t seed);

struct MeasureEstimate {
    double fraction = 0.0;
    double std_error = 0.0;
    std::size_t sample_count = 0;
    double delta = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t exact_ties = 0;  ///< samples with an exact tie at the top (logged, never expected)
};

/// Fraction of samples in B_n^c(delta): the top two |x_k| differ by less than
/// delta (by exactly 0 when delta = 0).
MeasureEstimate estimate_nondiff_measure(const GaussianSpec& spec, std::size_t n, double delta,
                                         std::size_t count, std::uint64_t seed, unsigned threads = 0);

/// Same samples evaluated against several deltas in one pass.
std::vector<MeasureEstimate> estimate_nondiff_sweep(const GaussianSpec& spec, std::size_t n,
                                                    const std::vector<double>& deltas, std::size_t count,
                                                    std::uint64_t seed, unsigned threads = 0);

/// P(||X_1| - |X_2|| <= delta) by quadrature over x_1 with the X_2 probability
/// in closed form from the normal CDF.  Throws QUADRATURE_NONCONVERGED when
/// the error estimate stays above 1e-6.
double b2_tie_probability_oracle(const GaussianSpec& spec, double delta);

}  // namespace gateaux
