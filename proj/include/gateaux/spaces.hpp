#pragma once

// Points and directions of the modeled Banach spaces.
//
// Sequence spaces (l1, l-infinity, R^t) are finite truncations.  Function
// spaces are piecewise linear with finitely many jumps, stored as a knot
// vector a = k_0 < k_1 < ... < k_m = b and, per segment, the two one-sided
// limits at its ends.  The value at an interior knot is the right limit
// (right-continuous representative); at b it is the left limit of the last
// segment.  Storing limits instead of slope/intercept keeps norm evaluation
// and linear combinations exact on dyadic data.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace gateaux {

enum class SpaceTag { L1Seq, LinfSeq, CAb, LinfR, NbvAb, Rt };

std::string_view to_string(SpaceTag tag);
SpaceTag space_tag_from_string(std::string_view name);
bool is_sequence_space(SpaceTag tag);

struct Segment {
    double left = 0.0;   ///< limit at the segment's left knot, from the right
    double right = 0.0;  ///< limit at the segment's right knot, from the left

    bool operator==(const Segment&) const = default;
};

/// Candidate extremum of a piecewise element: a one-sided limit at a knot.
struct KnotLimit {
    double location;
    double value;
};

class SpacePoint {
public:
    static SpacePoint sequence(SpaceTag tag, std::vector<double> coords);
    static SpacePoint piecewise(SpaceTag tag, std::vector<double> knots, std::vector<Segment> segments);

    /// Slope/intercept form: on segment i the value is slope_i * s + intercept_i
    /// plus the sum of jumps at breakpoints <= s.
    static SpacePoint from_linear_parts(SpaceTag tag, double a, double b,
                                        std::vector<double> breakpoints,
                                        const std::vector<double>& slopes,
                                        const std::vector<double>& intercepts,
                                        std::vector<double> jumps);

    /// Zero element with the same tag and shape (dimension or domain).
    static SpacePoint zero_like(const SpacePoint& x);

    SpaceTag tag() const { return tag_; }
    bool is_sequence() const { return is_sequence_space(tag_); }

    // Sequence view.
    std::span<const double> coords() const { return coords_; }
    std::size_t dim() const { return coords_.size(); }
    double coord(std::size_t p) const { return coords_.at(p - 1); }  ///< 1-based

    // Piecewise view.
    double a() const { return knots_.front(); }
    double b() const { return knots_.back(); }
    std::span<const double> knots() const { return knots_; }
    std::span<const Segment> segments() const { return segments_; }
    std::vector<double> breakpoints() const;
    double slope(std::size_t segment) const;
    double intercept(std::size_t segment) const;  ///< absolute: value = slope*s + intercept
    double jump(std::size_t breakpoint) const;    ///< right limit minus left limit

    double value_at(double s) const;
    std::vector<KnotLimit> knot_limits() const;
    /// sup |f| over [lo, hi] intersected with the domain; -1 if empty.
    double sup_abs_on(double lo, double hi) const;
    bool has_jumps() const;

    bool is_zero() const;
    bool operator==(const SpacePoint&) const = default;

private:
    SpacePoint() = default;
    void validate() const;

    SpaceTag tag_ = SpaceTag::Rt;
    std::vector<double> coords_;
    std::vector<double> knots_;
    std::vector<Segment> segments_;
};

struct NormValue {
    double value = 0.0;
    std::optional<std::size_t> index;   ///< 1-based arg-max for sequence sup norms
    std::optional<double> location;     ///< arg-max knot for function sup norms
};

NormValue eval_norm(const SpacePoint& x);

/// alpha * x + beta * y; piecewise operands are merged on the union of knots.
SpacePoint linear_combine(double alpha, const SpacePoint& x, double beta, const SpacePoint& y);

/// x + t * h, the form every difference quotient needs.
inline SpacePoint shifted(const SpacePoint& x, double t, const SpacePoint& h) {
    return linear_combine(1.0, x, t, h);
}

/// Distance in the space's own norm.
double distance(const SpacePoint& x, const SpacePoint& y);

/// Functions equal as elements (piecewise operands compared on merged knots).
bool same_element(const SpacePoint& x, const SpacePoint& y);

}  // namespace gateaux
