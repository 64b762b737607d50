#include "gateaux/linear_functional.hpp"

#include <algorithm>

#include "gateaux/error.hpp"

namespace gateaux {

LinearFunctionalRep LinearFunctionalRep::coeff_seq(std::vector<double> c) {
    LinearFunctionalRep r;
    r.kind = Kind::CoeffSeq;
    r.coeffs = std::move(c);
    return r;
}

LinearFunctionalRep LinearFunctionalRep::signed_index(std::size_t p, int sigma, std::optional<double> gap) {
    LinearFunctionalRep r;
    r.kind = Kind::SignedIndex;
    r.p = p;
    r.sigma = sigma;
    r.gap = gap;
    r.validate();
    return r;
}

LinearFunctionalRep LinearFunctionalRep::point_mass(double t0, int sigma, std::optional<double> gap) {
    LinearFunctionalRep r;
    r.kind = Kind::PointMass;
    r.t0 = t0;
    r.sigma = sigma;
    r.gap = gap;
    r.validate();
    return r;
}

void LinearFunctionalRep::validate() const {
    if ((kind == Kind::SignedIndex || kind == Kind::PointMass) && sigma != 1 && sigma != -1)
        throw Error(ErrorCode::MalformedPoint, "sigma must be +1 or -1");
    if (kind == Kind::SignedIndex && p == 0) throw Error(ErrorCode::MalformedPoint, "index p is 1-based");
    if (gap && !(*gap > 0.0)) throw Error(ErrorCode::MalformedPoint, "gap must be positive");
}

double apply(const LinearFunctionalRep& rep, const SpacePoint& h) {
    switch (rep.kind) {
        case LinearFunctionalRep::Kind::Zero:
            return 0.0;
        case LinearFunctionalRep::Kind::CoeffSeq: {
            if (!h.is_sequence()) throw Error(ErrorCode::SpaceMismatch, "coefficient functional on a function space");
            const auto c = h.coords();
            const std::size_t n = std::min(c.size(), rep.coeffs.size());
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += rep.coeffs[k] * c[k];
            return acc;
        }
        case LinearFunctionalRep::Kind::SignedIndex:
            if (!h.is_sequence()) throw Error(ErrorCode::SpaceMismatch, "index functional on a function space");
            if (rep.p > h.dim()) return 0.0;
            return rep.sigma * h.coord(rep.p);
        case LinearFunctionalRep::Kind::PointMass:
            if (h.is_sequence()) throw Error(ErrorCode::SpaceMismatch, "point mass on a sequence space");
            return rep.sigma * h.value_at(rep.t0);
    }
    return 0.0;
}

const char* to_string(LinearFunctionalRep::Kind kind) {
    switch (kind) {
        case LinearFunctionalRep::Kind::CoeffSeq: return "COEFF_SEQ";
        case LinearFunctionalRep::Kind::SignedIndex: return "SIGNED_INDEX";
        case LinearFunctionalRep::Kind::PointMass: return "POINT_MASS";
        case LinearFunctionalRep::Kind::Zero: return "ZERO";
    }
    return "?";
}

}  // namespace gateaux
