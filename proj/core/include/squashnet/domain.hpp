#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "squashnet/errors.hpp"
#include "squashnet/network.hpp"

namespace squashnet {

/// Axis-aligned box [lower, upper] discretized to an inclusive-endpoint grid
/// with a per-axis point count. The grid is the finite stand-in for the
/// compact domain: every set and every error bound in this library lives on
/// its points. Total point count is capped at 1e8.
class GridDomain {
public:
    GridDomain(Point lower, Point upper, std::vector<int> resolution);

    int dim() const noexcept { return static_cast<int>(lower_.size()); }
    const Point& lower() const noexcept { return lower_; }
    const Point& upper() const noexcept { return upper_; }
    const std::vector<int>& resolution() const noexcept { return res_; }
    long long point_count() const noexcept { return count_; }

    double coordinate(int axis, int index) const;
    Point point_at(long long flat) const;
    void point_at(long long flat, Point& out) const;

    /// Reconstructs the flat index of a coordinate tuple. Coordinates are
    /// matched with a 1e-9 relative tolerance per axis, so values that went
    /// through a decimal round-trip still land on their grid point.
    std::optional<long long> index_of(const Point& p) const;

    bool operator==(const GridDomain& other) const;

    static constexpr long long kMaxPoints = 100'000'000;

private:
    Point lower_;
    Point upper_;
    std::vector<int> res_;
    long long count_ = 0;
};

/// All grid points in lexicographic order (axis 0 slowest, last axis fastest).
std::vector<Point> grid_points(const GridDomain& domain);

/// A finite set of distinct grid points standing in for a closed subset of
/// the domain. Points are stored snapped to the grid's own coordinates, in
/// insertion order.
class PointSet {
public:
    explicit PointSet(GridDomain domain);

    /// Snaps each point to the grid; throws on off-grid points or duplicates.
    PointSet(GridDomain domain, const std::vector<Point>& pts);

    static PointSet from_indices(GridDomain domain, const std::vector<long long>& indices);

    const GridDomain& domain() const noexcept { return domain_; }
    const std::vector<Point>& points() const noexcept { return points_; }
    const std::vector<long long>& indices() const noexcept { return indices_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    /// True iff p snaps to a grid point contained in this set.
    bool contains(const Point& p) const;
    bool disjoint_with(const PointSet& other) const;

private:
    GridDomain domain_;
    std::vector<Point> points_;
    std::vector<long long> indices_;         // aligned with points_
    std::vector<long long> sorted_indices_;  // for membership tests
};

struct SinusoidMode {
    bool cosine = false;    ///< cos(2 pi f x) instead of sin(2 pi f x)
    double frequency = 1.0;
};

struct TabulatedRow {
    long line_no = 0;  ///< source line, for error messages
    Point point;
    double value = 0.0;
};

/// A target to approximate: either an analytic builtin, evaluable anywhere,
/// or a table of per-grid-point values.
class TargetFunction {
public:
    static TargetFunction constant(double c);
    static TargetFunction projection(int axis);
    /// Product over axes of sin(2 pi f_i x_i) or cos(2 pi f_i x_i); one mode
    /// per axis.
    static TargetFunction sinusoid_product(std::vector<SinusoidMode> modes);
    /// exp(-|x - center|^2 / (2 width^2)).
    static TargetFunction gaussian_bump(Point center, double width);
    static TargetFunction max_of_coordinates();
    static TargetFunction tabulated(std::vector<TabulatedRow> rows);

    bool is_tabulated() const noexcept { return kind_ == Kind::tabulated; }

    /// Evaluates an analytic target at an arbitrary point; throws for
    /// tabulated targets (they only exist on their grid).
    double analytic_value(const Point& p) const;

    const std::vector<TabulatedRow>& rows() const;

private:
    enum class Kind { constant, projection, sinusoid, gaussian, max_coord, tabulated };

    TargetFunction() = default;

    Kind kind_ = Kind::constant;
    double scalar_ = 0.0;  // constant value / gaussian width
    int axis_ = 0;
    std::vector<SinusoidMode> modes_;
    Point center_;
    std::vector<TabulatedRow> rows_;
};

/// Values of the target at every grid point, in grid order. Tabulated targets
/// must cover the grid exactly: off-grid rows, duplicate rows and missing
/// grid points are errors.
std::vector<double> sample_target(const TargetFunction& target, const GridDomain& domain);

/// Splits a residual (values of approximation - target over the grid, in grid
/// order) into the overshoot band  alpha/3 <= r <= 4 alpha/3  and the
/// undershoot band  -4 alpha/3 <= r <= -alpha/3, closed inequalities at both
/// ends. The two sets are disjoint for every alpha > 0.
std::pair<PointSet, PointSet> residual_sets(const std::vector<double>& residual,
                                            const GridDomain& domain, double alpha);

/// CSV with n coordinate columns then one value column; header row required.
TargetFunction load_target_csv(const std::string& path);

/// CSV with n coordinate columns; header row required. Rows must be distinct
/// grid points of `domain`.
PointSet load_set_csv(const std::string& path, const GridDomain& domain);

}  // namespace squashnet
