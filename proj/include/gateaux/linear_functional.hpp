#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gateaux/spaces.hpp"

namespace gateaux {

/// Sparse representation of a continuous linear functional on a modeled space.
struct LinearFunctionalRep {
    enum class Kind { CoeffSeq, SignedIndex, PointMass, Zero };

    Kind kind = Kind::Zero;
    std::vector<double> coeffs;     ///< CoeffSeq
    std::size_t p = 0;              ///< SignedIndex, 1-based
    int sigma = 1;                  ///< SignedIndex, PointMass
    double t0 = 0.0;                ///< PointMass
    std::optional<double> gap;      ///< certified dominance gap; Frechet radius is gap / 2

    static LinearFunctionalRep zero() { return {}; }
    static LinearFunctionalRep coeff_seq(std::vector<double> c);
    static LinearFunctionalRep signed_index(std::size_t p, int sigma, std::optional<double> gap = std::nullopt);
    static LinearFunctionalRep point_mass(double t0, int sigma, std::optional<double> gap = std::nullopt);

    /// Throws MALFORMED_POINT if the populated fields do not match the kind.
    void validate() const;
};

/// Evaluates the functional at a direction.
double apply(const LinearFunctionalRep& rep, const SpacePoint& h);

const char* to_string(LinearFunctionalRep::Kind kind);

/// sig(0) := 0.
inline int sig(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace gateaux
