#pragma once

#include <vector>

#include "squashnet/activation.hpp"
#include "squashnet/domain.hpp"
#include "squashnet/network.hpp"

namespace squashnet {

/// A scalar gate (s, t): composed as sigma(s + t x) it pushes values at and
/// beyond one anchor below a small level and values at and beyond the other
/// anchor above one minus that level.
struct ScalarGate {
    double s = 0.0;
    double t = 0.0;
};

/// Solves the two-point linear system  s + t x0 = quantile(eps/2),
/// s + t x1 = quantile(1 - eps/2), so that sigma(s + t x0) = eps/2 < eps and
/// sigma(s + t x1) = 1 - eps/2 > 1 - eps. When additionally x0 < x1 and
/// eps < 1/2, monotonicity gives sigma(s + t x) < eps on (-inf, x0] and
/// > 1 - eps on [x1, inf). Requires x0 != x1 and eps in (0, 1).
ScalarGate separate_scalar_points(const SquashingFunction& sigma, double x0, double x1,
                                  double eps);

/// The affine witness f(x) = (b - x0) . (x - x0) / |b - x0|^2, normalized so
/// f(x0) = 0 and f(b) = 1. Requires x0 != b.
AffineMap hyperplane_witness(const Point& x0, const Point& b);

/// Greedy maximum-coverage selection over a membership matrix
/// (rows = candidates, columns = targets): repeatedly picks the candidate
/// covering the most uncovered columns, smallest index on ties, until all
/// columns are covered. Deterministic; the selection is a cover but is not
/// claimed minimal. Throws InfeasibleCoverError naming the first column no
/// candidate covers.
std::vector<int> greedy_cover(const std::vector<std::vector<bool>>& member);

/// One-hidden-layer separator g with g(x0) < eps and g > 1 - eps on every
/// point of b_set: per-point affine witnesses, a greedy finite cover of the
/// set by the witnesses' high regions, and one shared gate summed over the
/// cover. Requires eps in (0, 1/3), x0 outside the set, a non-empty set and
/// a strictly increasing sigma. The returned contract is re-checked by
/// evaluation before returning.
LayeredNetwork separate_point_from_set(const Point& x0, const PointSet& b_set, double eps,
                                       const SquashingFunction& sigma);

/// Two-hidden-layer separator h with h > 1 - eps on a_set and h < eps on
/// b_set, built from flipped point-vs-set separators covered greedily over
/// a_set. Both sets must be non-empty and disjoint; eps in (0, 1/3).
LayeredNetwork separate_sets_affine(const PointSet& a_set, const PointSet& b_set, double eps,
                                    const SquashingFunction& sigma);

/// Squashed variant H = sigma(s + t h) with 0 <= H < eps on b_set and
/// 1 - eps < H <= 1 on a_set. Degenerate sets are handled here: an empty
/// a_set yields the constant eps/2 network, an empty b_set the constant
/// 1 - eps/2, both shaped as two-hidden-layer squashed networks.
LayeredNetwork separate_sets_squashed(const PointSet& a_set, const PointSet& b_set, double eps,
                                      const SquashingFunction& sigma);

}  // namespace squashnet
