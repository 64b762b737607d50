#pragma once

// JSON encodings shared by the CLI and test fixtures.
//
// Piecewise points are written in slope/intercept form with the jumps listed
// separately, plus a "limits" array of one-sided limits per segment.  When
// "knots" and "limits" are present the reader uses them, so a write/read
// round trip is exact.

#include <json.hpp>

#include "gateaux/diffengine.hpp"
#include "gateaux/gaussmeasure.hpp"
#include "gateaux/linear_functional.hpp"
#include "gateaux/projective.hpp"
#include "gateaux/spaces.hpp"
#include "gateaux/topology.hpp"

namespace gateaux {

using Json = nlohmann::ordered_json;

Json to_json(const SpacePoint& x);
SpacePoint point_from_json(const Json& j);

Json to_json(const LinearFunctionalRep& rep);
LinearFunctionalRep rep_from_json(const Json& j);

Json to_json(const NormValue& v);
Json to_json(const QuotientTrace& tr);
Json to_json(const DiffVerdict& v);
Json to_json(const MembershipReport& r);
Json to_json(const MeasureEstimate& e);
Json to_json(const VakhaniaResult& r);

Json to_json(const GaussianSpec& spec);
/// Explicit "means"/"variances" lists, or {"law": "inv_log", "r": 2.0}
/// optionally with "listed" (default 64).
GaussianSpec spec_from_json(const Json& j);

Json to_json(const TGrid& g);
TGrid grid_from_json(const Json& j, TGrid base = {});

/// {"t": 3, "base": "wseries_partial"}.
CylindricalFunction cylindrical_from_json(const Json& j);

}  // namespace gateaux
