#pragma once

// Exact convex-combination feasibility over the rationals (phase-one simplex,
// Bland's rule), used for polytope membership and extremality tests.

#include <optional>
#include <vector>

#include "ccroots/scalar.hpp"

namespace ccroots {

using IntPoint = std::vector<long long>;
using RationalPoint = std::vector<Rational>;

RationalPoint to_rational(const IntPoint& p);

/// Weights lambda >= 0 with sum lambda = 1 and sum lambda_j g_j = q, or nullopt.
/// The returned weights are indexed like the input generators.
std::optional<std::vector<Rational>> convex_combination(const std::vector<IntPoint>& generators,
                                                        const RationalPoint& q);

bool in_convex_hull(const std::vector<IntPoint>& generators, const RationalPoint& q);
bool in_convex_hull(const std::vector<IntPoint>& generators, const IntPoint& q);

/// True when p is not a convex combination of the other points of the set.
bool is_extremal(const std::vector<IntPoint>& points, std::size_t index);

}  // namespace ccroots
