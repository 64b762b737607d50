#include "gateaux/diffengine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gateaux/error.hpp"

namespace gateaux {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Smallest difference between two quotients at step t that floating point
// can resolve when f has magnitude `scale`.
double quotient_resolution(double scale, double t) { return 4.0 * kEps * scale / std::abs(t); }

bool sides_differ(const QuotientTrace& tr, double tol) {
    return tr.plus_converged && tr.minus_converged &&
           std::abs(*tr.d_plus - *tr.d_minus) > tol + tr.resolution;
}

bool fully_converged(const QuotientTrace& tr) { return tr.plus_converged && tr.minus_converged; }

SpacePoint random_piecewise_direction(const SpacePoint& x, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> knots(x.knots().begin(), x.knots().end());
    std::vector<Segment> segs(knots.size() - 1);
    const bool continuous = x.tag() != SpaceTag::NbvAb;
    double carry = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        segs[i].left = continuous && i > 0 ? carry : unit(rng);
        if (x.tag() == SpaceTag::NbvAb && i == 0) segs[i].left = 0.0;
        segs[i].right = unit(rng);
        carry = segs[i].right;
    }
    if (x.tag() == SpaceTag::LinfR || x.tag() == SpaceTag::CAb) {
        for (std::size_t i = 1; i < segs.size(); ++i) segs[i].left = segs[i - 1].right;
    }
    return SpacePoint::piecewise(x.tag(), std::move(knots), std::move(segs));
}

// Fit error allowance for apply(fit, h): each basis coefficient carries the
// resolution of its own trace.
double fit_allowance(const SpacePoint& x, const SpacePoint& h, const std::vector<double>& basis_res) {
    double acc = 0.0;
    if (x.is_sequence()) {
        const auto c = h.coords();
        for (std::size_t k = 0; k < std::min(c.size(), basis_res.size()); ++k) acc += std::abs(c[k]) * basis_res[k];
    } else {
        const auto knots = x.knots();
        for (std::size_t j = 0; j < std::min(knots.size(), basis_res.size()); ++j)
            acc += std::abs(h.value_at(knots[j])) * basis_res[j];
    }
    return acc;
}

DiffVerdict not_gateaux(const SpacePoint& witness, QuotientTrace trace, std::string note) {
    DiffVerdict v;
    v.status = DiffStatus::NotGateaux;
    v.failure_witness = witness;
    v.traces.push_back(std::move(trace));
    v.note = std::move(note);
    return v;
}

}  // namespace

double Functional::operator()(const SpacePoint& x) const {
    if (x.tag() != space)
        throw Error(ErrorCode::SpaceMismatch, name + " expects " + std::string(to_string(space)) + ", got " +
                                                  std::string(to_string(x.tag())));
    double v = 0.0;
    try {
        v = evaluate(x);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::EvalFailure, name + ": " + e.what());
    }
    if (!std::isfinite(v)) throw Error(ErrorCode::EvalFailure, name + " returned a non-finite value");
    return v;
}

Functional norm_functional(SpaceTag tag) {
    return {std::string("norm_") + std::string(to_string(tag)), tag,
            [](const SpacePoint& x) { return eval_norm(x).value; }};
}

void TGrid::validate() const {
    if (!(t0 > 0.0) || !std::isfinite(t0)) throw Error(ErrorCode::BadGrid, "t0 must be positive");
    if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorCode::BadGrid, "rho must lie in (0, 1)");
    if (count < 3) throw Error(ErrorCode::BadGrid, "count must be >= 3");
}

std::vector<double> TGrid::steps() const {
    validate();
    std::vector<double> out(static_cast<std::size_t>(count));
    double t = t0;
    for (auto& s : out) {
        s = t;
        t *= rho;
    }
    return out;
}

const char* to_string(DiffStatus status) {
    switch (status) {
        case DiffStatus::Frechet: return "FRECHET";
        case DiffStatus::Hadamard: return "HADAMARD";
        case DiffStatus::Gateaux: return "GATEAUX";
        case DiffStatus::NotGateaux: return "NOT_GATEAUX";
        case DiffStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

double directional_quotient(const Functional& f, const SpacePoint& x, const SpacePoint& h, double t) {
    if (t == 0.0 || !std::isfinite(t)) throw Error(ErrorCode::PreconditionFailed, "step t must be finite and nonzero");
    if (x.tag() != h.tag()) throw Error(ErrorCode::SpaceMismatch, "point and direction live in different spaces");
    return (f(shifted(x, t, h)) - f(x)) / t;
}

QuotientTrace one_sided_derivatives(const Functional& f, const SpacePoint& x, const SpacePoint& h,
                                    const TGrid& grid, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::PreconditionFailed, "tol must be positive");
    if (x.tag() != h.tag()) throw Error(ErrorCode::SpaceMismatch, "point and direction live in different spaces");
    QuotientTrace tr;
    tr.steps = grid.steps();
    const double fx = f(x);
    std::vector<double> res;
    res.reserve(tr.steps.size());
    for (double t : tr.steps) {
        const double fp = f(shifted(x, t, h));
        const double fm = f(shifted(x, -t, h));
        tr.forward.push_back((fp - fx) / t);
        tr.backward.push_back((fm - fx) / -t);
        res.push_back(quotient_resolution(std::max({std::abs(fx), std::abs(fp), std::abs(fm)}), t));
    }
    const std::size_t n = tr.steps.size();
    tr.resolution = res[n - 1] + res[n - 2];
    tr.plus_converged = std::abs(tr.forward[n - 1] - tr.forward[n - 2]) <= tol + tr.resolution;
    tr.minus_converged = std::abs(tr.backward[n - 1] - tr.backward[n - 2]) <= tol + tr.resolution;
    if (tr.plus_converged) tr.d_plus = tr.forward[n - 1];
    if (tr.minus_converged) tr.d_minus = tr.backward[n - 1];
    return tr;
}

QuotientTrace extrapolated_one_sided(const Functional& f, const SpacePoint& x, const SpacePoint& h,
                                     const TGrid& grid, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::PreconditionFailed, "tol must be positive");
    if (x.tag() != h.tag()) throw Error(ErrorCode::SpaceMismatch, "point and direction live in different spaces");
    grid.validate();
    if (grid.count < 3) throw Error(ErrorCode::BadGrid, "extrapolation needs at least 3 steps");
    QuotientTrace tr;
    tr.steps = grid.steps();
    const double fx = f(x);
    std::vector<double> res;
    for (double t : tr.steps) {
        const double fp = f(shifted(x, t, h));
        const double fm = f(shifted(x, -t, h));
        tr.forward.push_back((fp - fx) / t);
        tr.backward.push_back((fm - fx) / -t);
        res.push_back(quotient_resolution(std::max({std::abs(fx), std::abs(fp), std::abs(fm)}), t));
    }
    const double rho = grid.rho;
    auto side = [&](const std::vector<double>& q, std::optional<double>& out) {
        std::vector<double> r;
        std::vector<double> rr;
        for (std::size_t j = 0; j + 1 < q.size(); ++j) {
            r.push_back((q[j + 1] - rho * q[j]) / (1.0 - rho));
            rr.push_back((res[j + 1] + rho * res[j]) / (1.0 - rho));
        }
        // Smallest error bar: truncation (spread) plus rounding (allowance).
        auto bar = [&](std::size_t j) { return std::abs(r[j + 1] - r[j]) + rr[j] + rr[j + 1]; };
        std::size_t best = 0;
        for (std::size_t j = 1; j + 1 < r.size(); ++j) {
            if (bar(j) < bar(best)) best = j;
        }
        const double allowance = rr[best] + rr[best + 1];
        const double spread = std::abs(r[best + 1] - r[best]);
        // Reported as the error bar of the limit: rounding plus the spread
        // between the two extrapolants it was read from.
        tr.resolution = std::max(tr.resolution, allowance + spread);
        if (spread <= tol + allowance) out = r[best + 1];
        return out.has_value();
    };
    tr.plus_converged = side(tr.forward, tr.d_plus);
    tr.minus_converged = side(tr.backward, tr.d_minus);
    return tr;
}

SpacePoint unit_direction(const SpacePoint& x, std::size_t p) {
    if (!x.is_sequence()) throw Error(ErrorCode::SpaceMismatch, "unit direction needs a sequence space");
    if (p == 0 || p > x.dim()) throw Error(ErrorCode::PreconditionFailed, "index out of range");
    std::vector<double> c(x.dim(), 0.0);
    c[p - 1] = 1.0;
    return SpacePoint::sequence(x.tag(), std::move(c));
}

SpacePoint nodal_hat(const SpacePoint& x, std::size_t j) {
    if (x.is_sequence()) throw Error(ErrorCode::SpaceMismatch, "nodal hat needs a function space");
    std::vector<double> knots(x.knots().begin(), x.knots().end());
    std::vector<Segment> segs(knots.size() - 1);
    for (std::size_t i = 0; i < segs.size(); ++i) {
        segs[i].left = i == j ? 1.0 : 0.0;
        segs[i].right = i + 1 == j ? 1.0 : 0.0;
    }
    return SpacePoint::piecewise(x.tag(), std::move(knots), std::move(segs));
}

DiffVerdict gateaux_verdict(const Functional& f, const SpacePoint& x, const std::vector<SpacePoint>& probe_dirs,
                            const TGrid& grid, double tol) {
    if (probe_dirs.empty()) throw Error(ErrorCode::PreconditionFailed, "need at least one probe direction");

    std::vector<QuotientTrace> probes;
    probes.reserve(probe_dirs.size());
    for (const auto& h : probe_dirs) {
        probes.push_back(one_sided_derivatives(f, x, h, grid, tol));
        if (sides_differ(probes.back(), tol))
            return not_gateaux(h, probes.back(), "one-sided derivatives differ along a probe direction");
    }

    // Basis adapted to x.
    std::vector<SpacePoint> basis;
    if (x.is_sequence()) {
        for (std::size_t p = 1; p <= x.dim(); ++p) basis.push_back(unit_direction(x, p));
    } else if (x.tag() != SpaceTag::NbvAb) {
        for (std::size_t j = 0; j < x.knots().size(); ++j) basis.push_back(nodal_hat(x, j));
    }
    std::vector<double> coeffs;
    std::vector<double> basis_res;
    bool basis_converged = true;
    for (const auto& e : basis) {
        auto tr = one_sided_derivatives(f, x, e, grid, tol);
        if (sides_differ(tr, tol)) return not_gateaux(e, tr, "one-sided derivatives differ along a basis direction");
        if (!fully_converged(tr)) {
            basis_converged = false;
            continue;
        }
        coeffs.push_back(*tr.d_plus);
        basis_res.push_back(tr.resolution);
    }

    DiffVerdict v;
    v.traces = probes;
    const bool probes_converged = std::all_of(probes.begin(), probes.end(), fully_converged);
    if (!probes_converged || !basis_converged) {
        v.note = "a one-sided limit did not converge on the grid";
        return v;
    }
    if (basis.empty()) {
        v.note = "no finite basis to fit a derivative in this space; no failing probe found";
        return v;
    }

    // Fitted representation.
    LinearFunctionalRep fit;
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] != 0.0) nonzero.push_back(j);
    }
    if (nonzero.empty()) {
        fit = LinearFunctionalRep::zero();
    } else if (x.is_sequence()) {
        if (nonzero.size() == 1 && std::abs(coeffs[nonzero[0]]) == 1.0)
            fit = LinearFunctionalRep::signed_index(nonzero[0] + 1, sig(coeffs[nonzero[0]]));
        else
            fit = LinearFunctionalRep::coeff_seq(coeffs);
    } else {
        const std::size_t j = nonzero[0];
        if (nonzero.size() != 1 || std::abs(std::abs(coeffs[j]) - 1.0) > tol + basis_res[j]) {
            v.note = "derivative on the nodal basis is not a point mass";
            return v;
        }
        fit = LinearFunctionalRep::point_mass(x.knots()[j], sig(coeffs[j]));
    }

    // Linearity on the probes.
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const double allowed = tol + probes[i].resolution + fit_allowance(x, probe_dirs[i], basis_res);
        if (std::abs(apply(fit, probe_dirs[i]) - *probes[i].d_plus) > allowed) {
            v.note = "fitted derivative disagrees with a probe direction";
            return v;
        }
    }
    for (std::size_t i = 0; i + 1 < probes.size(); i += 2) {
        const auto sum = linear_combine(1.0, probe_dirs[i], 1.0, probe_dirs[i + 1]);
        const auto tr_sum = one_sided_derivatives(f, x, sum, grid, tol);
        const auto tr_dbl = one_sided_derivatives(f, x, linear_combine(2.0, probe_dirs[i], 0.0, probe_dirs[i]), grid, tol);
        const double add_tol = tol + tr_sum.resolution + probes[i].resolution + probes[i + 1].resolution;
        const double hom_tol = tol + tr_dbl.resolution + 2.0 * probes[i].resolution;
        if (!fully_converged(tr_sum) || !fully_converged(tr_dbl) ||
            std::abs(*tr_sum.d_plus - (*probes[i].d_plus + *probes[i + 1].d_plus)) > add_tol ||
            std::abs(*tr_dbl.d_plus - 2.0 * *probes[i].d_plus) > hom_tol) {
            v.note = "additivity or homogeneity check failed on a probe pair";
            return v;
        }
    }

    v.status = DiffStatus::Gateaux;
    v.derivative = fit;
    v.value = *probes.front().d_plus;
    return v;
}

DiffVerdict hadamard_verdict(const Functional& f, const SpacePoint& x, const SpacePoint& h,
                             const std::vector<std::vector<SpacePoint>>& perturbations, const TGrid& grid,
                             double tol) {
    DiffVerdict v = gateaux_verdict(f, x, {h}, grid, tol);
    if (v.status != DiffStatus::Gateaux) return v;

    const auto steps = grid.steps();
    const double fx = f(x);
    for (const auto& family : perturbations) {
        const std::size_t m = std::min(family.size(), steps.size());
        if (m < 3) throw Error(ErrorCode::NonconvergentPerturbation, "perturbation family needs at least 3 terms");
        std::vector<double> dist(m);
        for (std::size_t j = 0; j < m; ++j) dist[j] = distance(family[j], h);
        for (std::size_t j = 1; j < m; ++j) {
            if (dist[j] > dist[j - 1])
                throw Error(ErrorCode::NonconvergentPerturbation, "|k_j - h| is not nonincreasing");
        }
        if (dist[m - 1] != 0.0 && dist[m - 1] > 1e-3 * dist[0])
            throw Error(ErrorCode::NonconvergentPerturbation, "|k_j - h| does not shrink by three decades");

        QuotientTrace tr;
        std::vector<double> dev(m), res(m);
        for (std::size_t j = 0; j < m; ++j) {
            const double t = steps[j];
            const double fk = f(shifted(x, t, family[j]));
            const double fh = f(shifted(x, t, h));
            tr.steps.push_back(t);
            tr.forward.push_back((fk - fx) / t);
            tr.backward.push_back((fh - fx) / t);
            dev[j] = std::abs(tr.forward[j] - tr.backward[j]);
            res[j] = quotient_resolution(std::max({std::abs(fx), std::abs(fk), std::abs(fh)}), t);
        }
        // Perturbation sensitivity dev_j / |k_j - h| must stay bounded, so the
        // perturbed quotients share the unperturbed limit.
        double bound = 0.0;
        for (std::size_t j = 0; j < m / 2; ++j) {
            if (dist[j] > 0.0) bound = std::max(bound, dev[j] / dist[j]);
        }
        bool bounded = true;
        for (std::size_t j = m / 2; j < m; ++j) {
            if (dev[j] > bound * (1.0 + 1e-9) * dist[j] + tol + res[j]) bounded = false;
        }
        tr.d_plus = tr.forward.back();
        tr.plus_converged = bounded;
        tr.resolution = res.back();
        v.traces.push_back(std::move(tr));
        if (!bounded) {
            v.status = DiffStatus::Inconclusive;
            v.note = "perturbed quotients drift away from the directional derivative";
            return v;
        }
    }
    v.status = DiffStatus::Hadamard;
    return v;
}

DiffVerdict frechet_verdict(const Functional& f, const SpacePoint& x, const LinearFunctionalRep& u,
                            const std::vector<SpacePoint>& sphere_samples, const std::vector<double>& radii,
                            double tol) {
    if (sphere_samples.empty() || radii.empty())
        throw Error(ErrorCode::PreconditionFailed, "need sphere samples and radii");
    for (const auto& h : sphere_samples) {
        if (std::abs(eval_norm(h).value - 1.0) > 1e-12)
            throw Error(ErrorCode::PreconditionFailed, "sphere samples must have unit norm");
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] < radii[i - 1])))
            throw Error(ErrorCode::PreconditionFailed, "radii must be positive and decreasing");
    }
    const double fx = f(x);
    DiffVerdict v;
    v.derivative = u;
    for (double s : radii) {
        double worst = 0.0;
        for (const auto& h : sphere_samples) {
            const double r = f(shifted(x, s, h)) - fx - s * apply(u, h);
            worst = std::max(worst, std::abs(r) / s);
        }
        v.remainder_profile.push_back(worst);
    }
    if (v.remainder_profile.back() <= tol) {
        v.status = DiffStatus::Frechet;
    } else {
        v.note = "remainder ratio does not vanish at the smallest radius";
    }
    return v;
}

std::vector<BallPair> lipschitz_pairs(const Functional& f, const SpacePoint& x, double radius, int pair_count,
                                      std::uint64_t seed) {
    if (!(radius > 0.0)) throw Error(ErrorCode::PreconditionFailed, "radius must be positive");
    if (pair_count < 1) throw Error(ErrorCode::PreconditionFailed, "pair_count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> frac(0.0, 1.0);

    auto random_dir = [&]() {
        if (!x.is_sequence()) return random_piecewise_direction(x, rng);
        std::vector<double> c(x.dim());
        for (auto& v : c) v = unit(rng);
        return SpacePoint::sequence(x.tag(), std::move(c));
    };

    std::vector<BallPair> pairs;
    pairs.reserve(static_cast<std::size_t>(pair_count));
    for (int i = 0; i < pair_count; ++i) {
        const auto u = random_dir();
        const double un = eval_norm(u).value;
        if (un == 0.0) continue;
        const auto y = shifted(x, 0.5 * radius * (1.0 - frac(rng)) / un, u);

        SpacePoint v = random_dir();
        std::vector<double> signs;
        if (x.is_sequence()) {
            signs.resize(x.dim());
            for (auto& s : signs) s = frac(rng) < 0.5 ? -1.0 : 1.0;
            v = SpacePoint::sequence(x.tag(), signs);
        }
        // Steps stay above radius / 8: shorter increments turn the rounding of
        // f(y) - f(z) into spurious slope.
        const double step = 0.125 * radius * (2.0 - frac(rng));
        auto make_z = [&](const SpacePoint& dir) { return shifted(y, step / eval_norm(dir).value, dir); };
        if (eval_norm(v).value == 0.0) continue;
        auto z = make_z(v);

        if (x.is_sequence()) {
            const double fy = f(y);
            auto ratio = [&](const SpacePoint& zz) {
                const double d = distance(y, zz);
                return d > 0.0 ? std::abs(fy - f(zz)) / d : 0.0;
            };
            double best = ratio(z);
            for (std::size_t k = 0; k < signs.size(); ++k) {
                signs[k] = -signs[k];
                auto cand = make_z(SpacePoint::sequence(x.tag(), signs));
                const double r = ratio(cand);
                if (r > best) {
                    best = r;
                    z = std::move(cand);
                } else {
                    signs[k] = -signs[k];
                }
            }
        }
        pairs.push_back({y, std::move(z)});
    }
    return pairs;
}

double local_lipschitz_estimate(const Functional& f, const SpacePoint& x, double radius, int pair_count,
                                std::uint64_t seed) {
    double best = 0.0;
    for (const auto& pr : lipschitz_pairs(f, x, radius, pair_count, seed)) {
        const double d = distance(pr.y, pr.z);
        if (d == 0.0) continue;  // degenerate pair
        best = std::max(best, std::abs(f(pr.y) - f(pr.z)) / d);
    }
    return best;
}

}  // namespace gateaux
