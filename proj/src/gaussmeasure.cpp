#include "gateaux/gaussmeasure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "gateaux/error.hpp"

namespace gateaux {

namespace {

constexpr std::size_t kChunk = 1u << 16;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double standard_normal(double u) { return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Gap between the largest and second-largest |x_k|; the truncated tail is 0.
double top_gap(const GaussianSpec& spec, std::size_t n, std::uint64_t seed, std::uint64_t sample,
               const std::vector<double>& sd) {
    double first = 0.0;
    double second = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double v = std::abs(spec.mean(k) + sd[k - 1] * standard_normal(counter_uniform(seed, sample, k)));
        if (v > first) {
            second = first;
            first = v;
        } else if (v > second) {
            second = v;
        }
    }
    return first - second;
}

bool in_thickened_complement(double gap, double delta) { return delta > 0.0 ? gap < delta : gap == 0.0; }

}  // namespace

void GaussianSpec::validate() const {
    if (!(r > 0.0)) throw Error(ErrorCode::PreconditionFailed, "Vakhania radius r must be positive");
    for (double s : variances) {
        if (!(s > 0.0)) throw Error(ErrorCode::NonpositiveVariance, "variances must be positive");
    }
    for (double m : means) {
        if (!std::isfinite(m)) throw Error(ErrorCode::PreconditionFailed, "means must be finite");
    }
    if (law && *law != "inv_log") throw Error(ErrorCode::PreconditionFailed, "unknown variance law '" + *law + "'");
}

double GaussianSpec::mean(std::size_t k) const {
    if (k >= 1 && k <= means.size()) return means[k - 1];
    if (law) return 0.0;
    if (means.empty() && k >= 1 && k <= variances.size()) return 0.0;
    throw Error(ErrorCode::PreconditionFailed, "mean requested beyond the listed sequence");
}

double GaussianSpec::variance(std::size_t k) const {
    if (k >= 1 && k <= variances.size()) return variances[k - 1];
    if (law) return 1.0 / std::log(static_cast<double>(k) + 2.0);
    throw Error(ErrorCode::PreconditionFailed, "variance requested beyond the listed sequence");
}

GaussianSpec default_gaussian_spec(std::size_t listed) {
    GaussianSpec spec;
    spec.law = "inv_log";
    spec.r = 2.0;
    for (std::size_t k = 1; k <= listed; ++k) {
        spec.means.push_back(0.0);
        spec.variances.push_back(1.0 / std::log(static_cast<double>(k) + 2.0));
    }
    return spec;
}

GaussianSpec standard_gaussian_spec(std::size_t n) {
    GaussianSpec spec;
    spec.means.assign(n, 0.0);
    spec.variances.assign(n, 1.0);
    spec.r = 2.0;
    return spec;
}

VakhaniaResult vakhania_check(const GaussianSpec& spec, std::size_t N) {
    spec.validate();
    if (N < 1) throw Error(ErrorCode::PreconditionFailed, "N must be >= 1");
    auto term = [&](std::size_t k) { return std::exp(-spec.r / spec.variance(k)); };
    VakhaniaResult out;
    for (std::size_t k = N; k >= 1; --k) out.partial_sum += term(k);  // small terms first
    if (N >= 2) {
        const double prev = term(N - 1);
        const double last = term(N);
        if (last == 0.0) {
            out.raabe = prev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            out.summable = true;
        } else {
            out.raabe = static_cast<double>(N - 1) * (prev / last - 1.0);
            out.summable = out.raabe > 1.0;
        }
    }
    return out;
}

double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t coord) {
    std::uint64_t z = mix64(seed + 0x9E3779B97F4A7C15ULL);
    z = mix64(z ^ (sample * 0xD1B54A32D192ED03ULL + 0x632BE59BD9B4E019ULL));
    z = mix64(z ^ (coord * 0x8CB92BA72F3D8DD7ULL + 0x9E3779B97F4A7C15ULL));
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<SpacePoint> gaussian_sample(const GaussianSpec& spec, std::size_t n, std::size_t count,
                                        std::uint64_t seed) {
    spec.validate();
    if (n < 1 || count < 1) throw Error(ErrorCode::PreconditionFailed, "n and count must be >= 1");
    std::vector<SpacePoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> c(n);
        for (std::size_t k = 1; k <= n; ++k)
            c[k - 1] = spec.mean(k) + std::sqrt(spec.variance(k)) * standard_normal(counter_uniform(seed, i, k));
        out.push_back(SpacePoint::sequence(SpaceTag::LinfSeq, std::move(c)));
    }
    return out;
}

std::vector<MeasureEstimate> estimate_nondiff_sweep(const GaussianSpec& spec, std::size_t n,
                                                    const std::vector<double>& deltas, std::size_t count,
                                                    std::uint64_t seed, unsigned threads) {
    spec.validate();
    if (n < 1 || count < 1) throw Error(ErrorCode::PreconditionFailed, "n and count must be >= 1");
    for (double d : deltas) {
        if (!(d >= 0.0)) throw Error(ErrorCode::PreconditionFailed, "delta must be >= 0");
    }
    std::vector<double> sd(n);
    for (std::size_t k = 1; k <= n; ++k) sd[k - 1] = std::sqrt(spec.variance(k));

    const std::size_t chunks = (count + kChunk - 1) / kChunk;
    std::vector<std::vector<std::size_t>> hits(chunks, std::vector<std::size_t>(deltas.size(), 0));
    std::vector<std::size_t> ties(chunks, 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
            const std::size_t end = std::min(count, (c + 1) * kChunk);
            for (std::size_t i = c * kChunk; i < end; ++i) {
                const double gap = top_gap(spec, n, seed, i, sd);
                if (gap == 0.0) ++ties[c];
                for (std::size_t d = 0; d < deltas.size(); ++d) {
                    if (in_thickened_complement(gap, deltas[d])) ++hits[c][d];
                }
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<MeasureEstimate> out;
    for (std::size_t d = 0; d < deltas.size(); ++d) {
        MeasureEstimate e;
        std::size_t total = 0;
        for (std::size_t c = 0; c < chunks; ++c) total += hits[c][d];
        for (std::size_t c = 0; c < chunks; ++c) e.exact_ties += ties[c];
        e.sample_count = count;
        e.fraction = static_cast<double>(total) / static_cast<double>(count);
        e.std_error = std::sqrt(e.fraction * (1.0 - e.fraction) / static_cast<double>(count));
        e.delta = deltas[d];
        e.n = n;
        e.seed = seed;
        out.push_back(e);
    }
    return out;
}

MeasureEstimate estimate_nondiff_measure(const GaussianSpec& spec, std::size_t n, double delta, std::size_t count,
                                         std::uint64_t seed, unsigned threads) {
    return estimate_nondiff_sweep(spec, n, {delta}, count, seed, threads).front();
}

double b2_tie_probability_oracle(const GaussianSpec& spec, double delta) {
    spec.validate();
    if (!(delta >= 0.0)) throw Error(ErrorCode::PreconditionFailed, "delta must be >= 0");
    if (delta == 0.0) return 0.0;
    const double m1 = spec.mean(1);
    const double m2 = spec.mean(2);
    const double s1 = std::sqrt(spec.variance(1));
    const double s2 = std::sqrt(spec.variance(2));

    auto cdf2 = [&](double v) { return normal_cdf((v - m2) / s2); };
    auto integrand = [&](double x) {
        const double ax = std::abs(x);
        const double lo = std::max(0.0, ax - delta);
        const double hi = ax + delta;
        const double p2 = (cdf2(hi) - cdf2(lo)) + (cdf2(-lo) - cdf2(-hi));
        const double z = (x - m1) / s1;
        return std::exp(-0.5 * z * z) / (s1 * std::sqrt(2.0 * M_PI)) * p2;
    };

    const double a = m1 - 12.0 * s1;
    const double b = m1 + 12.0 * s1;
    std::vector<double> cuts{a, b};
    for (double c : {-delta, 0.0, delta}) {
        if (c > a && c < b) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    double err_total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double err = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 15,
                                                                               1e-12, &err);
        err_total += err;
    }
    if (!(err_total <= 1e-6))
        throw Error(ErrorCode::QuadratureNonconverged, "error estimate " + std::to_string(err_total));
    return std::min(1.0, std::max(0.0, total));
}

}  // namespace gateaux
