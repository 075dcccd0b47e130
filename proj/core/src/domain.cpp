#include "squashnet/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "csv.hpp"

namespace squashnet {

GridDomain::GridDomain(Point lower, Point upper, std::vector<int> resolution)
    : lower_(std::move(lower)), upper_(std::move(upper)), res_(std::move(resolution)) {
    if (lower_.empty() || lower_.size() != upper_.size() || lower_.size() != res_.size()) {
        throw InvalidInputError("grid: lower, upper and resolution must share a positive dimension");
    }
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i])) {
            throw InvalidInputError("grid: axis " + std::to_string(i) +
                                    " needs finite lower < upper");
        }
        if (res_[i] < 2) {
            throw InvalidInputError("grid: axis " + std::to_string(i) +
                                    " needs at least 2 points");
        }
    }
    count_ = 1;
    for (int r : res_) {
        if (count_ > kMaxPoints / r) {
            throw InvalidInputError("grid: total point count exceeds the 1e8 capacity limit");
        }
        count_ *= r;
    }
}

double GridDomain::coordinate(int axis, int index) const {
    if (index == res_[axis] - 1) {
        return upper_[axis];  // keep the endpoint exact
    }
    double step = (upper_[axis] - lower_[axis]) / (res_[axis] - 1);
    return lower_[axis] + step * index;
}

void GridDomain::point_at(long long flat, Point& out) const {
    out.resize(lower_.size());
    for (int axis = dim() - 1; axis >= 0; --axis) {
        long long r = res_[axis];
        out[axis] = coordinate(axis, static_cast<int>(flat % r));
        flat /= r;
    }
}

Point GridDomain::point_at(long long flat) const {
    Point p;
    point_at(flat, p);
    return p;
}

std::optional<long long> GridDomain::index_of(const Point& p) const {
    if (p.size() != lower_.size()) {
        return std::nullopt;
    }
    long long flat = 0;
    for (int axis = 0; axis < dim(); ++axis) {
        if (!std::isfinite(p[axis])) {
            return std::nullopt;
        }
        double step = (upper_[axis] - lower_[axis]) / (res_[axis] - 1);
        double rel = (p[axis] - lower_[axis]) / step;
        long long idx = std::llround(rel);
        if (idx < 0 || idx >= res_[axis]) {
            return std::nullopt;
        }
        double tol = 1e-9 * std::max(std::abs(lower_[axis]), std::abs(upper_[axis]));
        if (std::abs(p[axis] - coordinate(axis, static_cast<int>(idx))) > tol) {
            return std::nullopt;
        }
        flat = flat * res_[axis] + idx;
    }
    return flat;
}

bool GridDomain::operator==(const GridDomain& other) const {
    return lower_ == other.lower_ && upper_ == other.upper_ && res_ == other.res_;
}

std::vector<Point> grid_points(const GridDomain& domain) {
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(domain.point_count()));
    Point scratch;
    for (long long i = 0; i < domain.point_count(); ++i) {
        domain.point_at(i, scratch);
        pts.push_back(scratch);
    }
    return pts;
}

PointSet::PointSet(GridDomain domain) : domain_(std::move(domain)) {}

PointSet::PointSet(GridDomain domain, const std::vector<Point>& pts) : domain_(std::move(domain)) {
    points_.reserve(pts.size());
    indices_.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto idx = domain_.index_of(pts[i]);
        if (!idx) {
            throw InvalidInputError("point set: point " + std::to_string(i) +
                                    " does not lie on the grid");
        }
        indices_.push_back(*idx);
        points_.push_back(domain_.point_at(*idx));
    }
    sorted_indices_ = indices_;
    std::sort(sorted_indices_.begin(), sorted_indices_.end());
    if (std::adjacent_find(sorted_indices_.begin(), sorted_indices_.end()) !=
        sorted_indices_.end()) {
        throw InvalidInputError("point set: duplicate grid points");
    }
}

PointSet PointSet::from_indices(GridDomain domain, const std::vector<long long>& indices) {
    PointSet set(std::move(domain));
    set.points_.reserve(indices.size());
    set.indices_.reserve(indices.size());
    for (long long idx : indices) {
        if (idx < 0 || idx >= set.domain_.point_count()) {
            throw InvalidInputError("point set: flat index out of range");
        }
        set.indices_.push_back(idx);
        set.points_.push_back(set.domain_.point_at(idx));
    }
    set.sorted_indices_ = set.indices_;
    std::sort(set.sorted_indices_.begin(), set.sorted_indices_.end());
    if (std::adjacent_find(set.sorted_indices_.begin(), set.sorted_indices_.end()) !=
        set.sorted_indices_.end()) {
        throw InvalidInputError("point set: duplicate grid points");
    }
    return set;
}

bool PointSet::contains(const Point& p) const {
    auto idx = domain_.index_of(p);
    if (!idx) {
        return false;
    }
    return std::binary_search(sorted_indices_.begin(), sorted_indices_.end(), *idx);
}

bool PointSet::disjoint_with(const PointSet& other) const {
    std::vector<long long> common;
    std::set_intersection(sorted_indices_.begin(), sorted_indices_.end(),
                          other.sorted_indices_.begin(), other.sorted_indices_.end(),
                          std::back_inserter(common));
    return common.empty();
}

TargetFunction TargetFunction::constant(double c) {
    TargetFunction t;
    t.kind_ = Kind::constant;
    t.scalar_ = c;
    return t;
}

TargetFunction TargetFunction::projection(int axis) {
    if (axis < 0) {
        throw InvalidInputError("projection: axis must be non-negative");
    }
    TargetFunction t;
    t.kind_ = Kind::projection;
    t.axis_ = axis;
    return t;
}

TargetFunction TargetFunction::sinusoid_product(std::vector<SinusoidMode> modes) {
    if (modes.empty()) {
        throw InvalidInputError("sinusoid_product: need one mode per axis");
    }
    TargetFunction t;
    t.kind_ = Kind::sinusoid;
    t.modes_ = std::move(modes);
    return t;
}

TargetFunction TargetFunction::gaussian_bump(Point center, double width) {
    if (center.empty()) {
        throw InvalidInputError("gaussian_bump: center must be non-empty");
    }
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw InvalidInputError("gaussian_bump: width must be positive");
    }
    TargetFunction t;
    t.kind_ = Kind::gaussian;
    t.center_ = std::move(center);
    t.scalar_ = width;
    return t;
}

TargetFunction TargetFunction::max_of_coordinates() {
    TargetFunction t;
    t.kind_ = Kind::max_coord;
    return t;
}

TargetFunction TargetFunction::tabulated(std::vector<TabulatedRow> rows) {
    TargetFunction t;
    t.kind_ = Kind::tabulated;
    t.rows_ = std::move(rows);
    return t;
}

double TargetFunction::analytic_value(const Point& p) const {
    switch (kind_) {
        case Kind::constant:
            return scalar_;
        case Kind::projection:
            if (axis_ >= static_cast<int>(p.size())) {
                throw InvalidInputError("projection: axis exceeds point dimension");
            }
            return p[axis_];
        case Kind::sinusoid: {
            if (modes_.size() != p.size()) {
                throw InvalidInputError("sinusoid_product: mode count must equal dimension");
            }
            double prod = 1.0;
            for (std::size_t i = 0; i < modes_.size(); ++i) {
                double arg = 2.0 * std::numbers::pi_v<double> * modes_[i].frequency * p[i];
                prod *= modes_[i].cosine ? std::cos(arg) : std::sin(arg);
            }
            return prod;
        }
        case Kind::gaussian: {
            if (center_.size() != p.size()) {
                throw InvalidInputError("gaussian_bump: center dimension mismatch");
            }
            double r2 = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                double d = p[i] - center_[i];
                r2 += d * d;
            }
            return std::exp(-r2 / (2.0 * scalar_ * scalar_));
        }
        case Kind::max_coord:
            return *std::max_element(p.begin(), p.end());
        case Kind::tabulated:
            throw InvalidInputError("tabulated target has no off-grid values");
    }
    return 0.0;  // unreachable
}

const std::vector<TabulatedRow>& TargetFunction::rows() const {
    if (kind_ != Kind::tabulated) {
        throw InvalidInputError("rows: not a tabulated target");
    }
    return rows_;
}

std::vector<double> sample_target(const TargetFunction& target, const GridDomain& domain) {
    const long long count = domain.point_count();
    std::vector<double> values(static_cast<std::size_t>(count));
    if (!target.is_tabulated()) {
        Point scratch;
        for (long long i = 0; i < count; ++i) {
            domain.point_at(i, scratch);
            values[static_cast<std::size_t>(i)] = target.analytic_value(scratch);
        }
        return values;
    }
    std::unordered_map<long long, long> seen;  // flat index -> source line
    std::vector<char> filled(static_cast<std::size_t>(count), 0);
    for (const TabulatedRow& row : target.rows()) {
        auto idx = domain.index_of(row.point);
        if (!idx) {
            throw InvalidInputError("target table: row at line " + std::to_string(row.line_no) +
                                    " is not a grid point");
        }
        auto [it, inserted] = seen.emplace(*idx, row.line_no);
        if (!inserted) {
            throw InvalidInputError("target table: lines " + std::to_string(it->second) + " and " +
                                    std::to_string(row.line_no) + " map to the same grid point");
        }
        values[static_cast<std::size_t>(*idx)] = row.value;
        filled[static_cast<std::size_t>(*idx)] = 1;
    }
    for (long long i = 0; i < count; ++i) {
        if (!filled[static_cast<std::size_t>(i)]) {
            throw InvalidInputError("target table: no value for grid point " + std::to_string(i));
        }
    }
    return values;
}

std::pair<PointSet, PointSet> residual_sets(const std::vector<double>& residual,
                                            const GridDomain& domain, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw InvalidInputError("residual_sets: alpha must be positive");
    }
    if (residual.size() != static_cast<std::size_t>(domain.point_count())) {
        throw InvalidInputError("residual_sets: residual length must equal the grid point count");
    }
    const double lo = alpha / 3.0;
    const double hi = 4.0 * alpha / 3.0;
    std::vector<long long> plus;
    std::vector<long long> minus;
    for (long long i = 0; i < domain.point_count(); ++i) {
        double r = residual[static_cast<std::size_t>(i)];
        if (r >= lo && r <= hi) {
            plus.push_back(i);
        } else if (r <= -lo && r >= -hi) {
            minus.push_back(i);
        }
    }
    return {PointSet::from_indices(domain, plus), PointSet::from_indices(domain, minus)};
}

TargetFunction load_target_csv(const std::string& path) {
    auto rows = detail::read_csv_rows(path);
    if (rows.size() < 2) {
        throw ParseError("target CSV " + path + ": need a header row and at least one data row");
    }
    const std::size_t columns = rows[0].fields.size();
    if (columns < 2) {
        throw ParseError("target CSV " + path +
                         ": need at least one coordinate column and a value column");
    }
    std::vector<TabulatedRow> table;
    table.reserve(rows.size() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.fields.size() != columns) {
            throw ParseError("target CSV " + path + ": line " + std::to_string(row.line_no) +
                             " has " + std::to_string(row.fields.size()) + " fields, expected " +
                             std::to_string(columns));
        }
        TabulatedRow out;
        out.line_no = row.line_no;
        out.point.resize(columns - 1);
        for (std::size_t c = 0; c + 1 < columns; ++c) {
            if (!detail::parse_double(row.fields[c], out.point[c])) {
                throw ParseError("target CSV " + path + ": line " + std::to_string(row.line_no) +
                                 " field " + std::to_string(c + 1) + " is not a number");
            }
        }
        if (!detail::parse_double(row.fields[columns - 1], out.value)) {
            throw ParseError("target CSV " + path + ": line " + std::to_string(row.line_no) +
                             " value field is not a number");
        }
        for (double c : out.point) {
            if (!std::isfinite(c)) {
                throw ParseError("target CSV " + path + ": line " + std::to_string(row.line_no) +
                                 " has a non-finite coordinate");
            }
        }
        if (!std::isfinite(out.value)) {
            throw ParseError("target CSV " + path + ": line " + std::to_string(row.line_no) +
                             " has a non-finite value");
        }
        table.push_back(std::move(out));
    }
    return TargetFunction::tabulated(std::move(table));
}

PointSet load_set_csv(const std::string& path, const GridDomain& domain) {
    auto rows = detail::read_csv_rows(path);
    if (rows.empty()) {
        throw ParseError("point set CSV " + path + ": empty file");
    }
    const std::size_t columns = static_cast<std::size_t>(domain.dim());
    std::vector<long long> indices;
    indices.reserve(rows.size());
    std::unordered_map<long long, long> seen;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.fields.size() != columns) {
            throw ParseError("point set CSV " + path + ": line " + std::to_string(row.line_no) +
                             " has " + std::to_string(row.fields.size()) + " fields, expected " +
                             std::to_string(columns));
        }
        Point p(columns);
        for (std::size_t c = 0; c < columns; ++c) {
            if (!detail::parse_double(row.fields[c], p[c])) {
                throw ParseError("point set CSV " + path + ": line " +
                                 std::to_string(row.line_no) + " field " + std::to_string(c + 1) +
                                 " is not a number");
            }
        }
        auto idx = domain.index_of(p);
        if (!idx) {
            throw InvalidInputError("point set CSV " + path + ": line " +
                                    std::to_string(row.line_no) + " is not a grid point");
        }
        auto [it, inserted] = seen.emplace(*idx, row.line_no);
        if (!inserted) {
            throw InvalidInputError("point set CSV " + path + ": line " +
                                    std::to_string(row.line_no) + " duplicates line " +
                                    std::to_string(it->second));
        }
        indices.push_back(*idx);
    }
    return PointSet::from_indices(domain, indices);
}

}  // namespace squashnet
