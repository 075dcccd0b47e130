#include "squashnet/separation.hpp"

#include <cmath>
#include <sstream>

namespace squashnet {

namespace {

std::string format_point(const Point& p) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out << ", ";
        out << p[i];
    }
    out << ")";
    return out.str();
}

void require_strictly_increasing(const SquashingFunction& sigma, const char* op) {
    if (!sigma.strictly_increasing()) {
        throw InvalidInputError(std::string(op) +
                                ": requires a strictly increasing squashing function");
    }
}

void require_separation_eps(double eps, const char* op) {
    if (!(eps > 0.0 && eps < 1.0 / 3.0)) {
        throw InvalidInputError(std::string(op) + ": eps must lie in (0, 1/3)");
    }
}

// Contract tolerance: absorbs the quantile solve and evaluation rounding.
constexpr double kContractTol = 1e-9;

}  // namespace

ScalarGate separate_scalar_points(const SquashingFunction& sigma, double x0, double x1,
                                  double eps) {
    if (!std::isfinite(x0) || !std::isfinite(x1)) {
        throw InvalidInputError("separate_scalar_points: anchors must be finite");
    }
    if (x0 == x1) {
        throw InvalidInputError(
            "separate_scalar_points: degenerate pair, the anchors must be distinct");
    }
    if (!(eps > 0.0 && eps < 1.0)) {
        throw InvalidInputError("separate_scalar_points: eps must lie in (0, 1)");
    }
    const double y0 = sigma.quantile(eps / 2.0);
    const double y1 = sigma.quantile(1.0 - eps / 2.0);
    ScalarGate gate;
    gate.t = (y1 - y0) / (x1 - x0);
    gate.s = y0 - gate.t * x0;
    return gate;
}

AffineMap hyperplane_witness(const Point& x0, const Point& b) {
    if (x0.size() != b.size() || x0.empty()) {
        throw InvalidInputError("hyperplane_witness: points must share a positive dimension");
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double d = b[i] - x0[i];
        norm2 += d * d;
    }
    if (norm2 == 0.0) {
        throw InvalidInputError("hyperplane_witness: coincident points");
    }
    if (!std::isfinite(norm2)) {
        throw InvalidInputError("hyperplane_witness: points must be finite");
    }
    AffineMap f;
    f.weights.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        f.weights[i] = (b[i] - x0[i]) / norm2;
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        dot += f.weights[i] * x0[i];
    }
    f.bias = -dot;
    return f;
}

std::vector<int> greedy_cover(const std::vector<std::vector<bool>>& member) {
    const int rows = static_cast<int>(member.size());
    const int cols = rows > 0 ? static_cast<int>(member[0].size()) : 0;
    for (const auto& row : member) {
        if (static_cast<int>(row.size()) != cols) {
            throw InvalidInputError("greedy_cover: ragged membership matrix");
        }
    }
    if (cols == 0) {
        return {};
    }
    for (int c = 0; c < cols; ++c) {
        bool covered = false;
        for (int r = 0; r < rows && !covered; ++r) {
            covered = member[r][c];
        }
        if (!covered) {
            throw InfeasibleCoverError(
                "greedy_cover: target " + std::to_string(c) + " is covered by no candidate", c);
        }
    }
    std::vector<char> uncovered(cols, 1);
    int remaining = cols;
    std::vector<int> selected;
    while (remaining > 0) {
        int best = -1;
        int best_gain = 0;
        for (int r = 0; r < rows; ++r) {
            int gain = 0;
            for (int c = 0; c < cols; ++c) {
                gain += (uncovered[c] && member[r][c]) ? 1 : 0;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = r;
            }
        }
        selected.push_back(best);
        for (int c = 0; c < cols; ++c) {
            if (uncovered[c] && member[best][c]) {
                uncovered[c] = 0;
                --remaining;
            }
        }
    }
    return selected;
}

LayeredNetwork separate_point_from_set(const Point& x0, const PointSet& b_set, double eps,
                                       const SquashingFunction& sigma) {
    require_strictly_increasing(sigma, "separate_point_from_set");
    require_separation_eps(eps, "separate_point_from_set");
    if (b_set.empty()) {
        throw InvalidInputError("separate_point_from_set: the set must be non-empty");
    }
    const int dim = b_set.domain().dim();
    if (static_cast<int>(x0.size()) != dim) {
        throw InvalidInputError("separate_point_from_set: point dimension mismatch");
    }
    for (double c : x0) {
        if (!std::isfinite(c)) {
            throw InvalidInputError("separate_point_from_set: x0 must be finite");
        }
    }
    if (b_set.contains(x0)) {
        throw InvalidInputError("separate_point_from_set: x0 belongs to the set");
    }

    const std::vector<Point>& pts = b_set.points();
    const int m = static_cast<int>(pts.size());

    std::vector<AffineMap> witnesses;
    witnesses.reserve(m);
    for (const Point& b : pts) {
        witnesses.push_back(hyperplane_witness(x0, b));
    }

    // Candidate b covers target p when p sits in the witness's high region.
    std::vector<std::vector<bool>> member(m, std::vector<bool>(m, false));
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            member[r][c] = witnesses[r](pts[c]) > 1.0 - eps;
        }
    }
    const std::vector<int> cover = greedy_cover(member);
    const int n_cover = static_cast<int>(cover.size());

    // Shared gate: sigma(s + t x) equals eps/N at x = eps and 1 - eps/N at
    // x = 1 - eps, so N summed gates stay below eps at x0 and above 1 - eps
    // on every covered point.
    const ScalarGate gate =
        separate_scalar_points(sigma, eps, 1.0 - eps, 2.0 * eps / n_cover);

    std::vector<LayeredNetwork> terms;
    terms.reserve(n_cover);
    for (int j : cover) {
        LayeredNetwork base(dim, witnesses[j], sigma, /*output_squashed=*/false);
        terms.push_back(squash_affine_of(base, gate.s, gate.t));
    }
    const std::vector<double> ones(static_cast<std::size_t>(n_cover), 1.0);
    LayeredNetwork g = affine_combine(terms, ones, 0.0);

    const double at_x0 = g.evaluate(x0);
    if (!(at_x0 < eps)) {
        throw ConstructionError("separate_point_from_set: contract failed at x0 " +
                                format_point(x0) + ": g = " + std::to_string(at_x0));
    }
    for (const Point& p : pts) {
        const double v = g.evaluate(p);
        if (!(v > 1.0 - eps - kContractTol)) {
            throw ConstructionError("separate_point_from_set: contract failed at set point " +
                                    format_point(p) + ": g = " + std::to_string(v));
        }
    }
    return g;
}

LayeredNetwork separate_sets_affine(const PointSet& a_set, const PointSet& b_set, double eps,
                                    const SquashingFunction& sigma) {
    require_strictly_increasing(sigma, "separate_sets_affine");
    require_separation_eps(eps, "separate_sets_affine");
    if (!(a_set.domain() == b_set.domain())) {
        throw InvalidInputError("separate_sets_affine: sets live on different grids");
    }
    if (a_set.empty() || b_set.empty()) {
        throw InvalidInputError(
            "separate_sets_affine: sets must be non-empty (the squashed variant handles "
            "degenerate cases)");
    }
    if (!a_set.disjoint_with(b_set)) {
        throw InvalidInputError("separate_sets_affine: sets must be disjoint");
    }

    const std::vector<Point>& apts = a_set.points();
    const int m = static_cast<int>(apts.size());

    // Per anchor a: flip the point-vs-set separator so it is high at a and
    // low on the whole b_set.
    std::vector<LayeredNetwork> flipped;
    flipped.reserve(m);
    for (const Point& a : apts) {
        LayeredNetwork g_tilde = separate_point_from_set(a, b_set, eps / 2.0, sigma);
        const double minus_one[] = {-1.0};
        flipped.push_back(superpose({&g_tilde, 1}, minus_one, 1.0));
    }

    std::vector<std::vector<bool>> member(m, std::vector<bool>(m, false));
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            member[r][c] = flipped[r].evaluate(apts[c]) > 1.0 - eps;
        }
    }
    const std::vector<int> cover = greedy_cover(member);
    const int n_cover = static_cast<int>(cover.size());

    const ScalarGate gate =
        separate_scalar_points(sigma, eps, 1.0 - eps, 2.0 * eps / n_cover);

    std::vector<LayeredNetwork> terms;
    terms.reserve(n_cover);
    for (int j : cover) {
        terms.push_back(squash_affine_of(flipped[j], gate.s, gate.t));
    }
    const std::vector<double> ones(static_cast<std::size_t>(n_cover), 1.0);
    LayeredNetwork h = affine_combine(terms, ones, 0.0);

    for (const Point& a : apts) {
        const double v = h.evaluate(a);
        if (!(v > 1.0 - eps - kContractTol)) {
            throw ConstructionError("separate_sets_affine: contract failed at A point " +
                                    format_point(a) + ": h = " + std::to_string(v));
        }
    }
    for (const Point& b : b_set.points()) {
        const double v = h.evaluate(b);
        if (!(v < eps + kContractTol)) {
            throw ConstructionError("separate_sets_affine: contract failed at B point " +
                                    format_point(b) + ": h = " + std::to_string(v));
        }
    }
    return h;
}

LayeredNetwork separate_sets_squashed(const PointSet& a_set, const PointSet& b_set, double eps,
                                      const SquashingFunction& sigma) {
    require_strictly_increasing(sigma, "separate_sets_squashed");
    require_separation_eps(eps, "separate_sets_squashed");
    if (!(a_set.domain() == b_set.domain())) {
        throw InvalidInputError("separate_sets_squashed: sets live on different grids");
    }
    if (!a_set.disjoint_with(b_set)) {
        throw InvalidInputError("separate_sets_squashed: sets must be disjoint");
    }
    const int dim = a_set.domain().dim();
    if (a_set.empty()) {
        return LayeredNetwork::constant(sigma, dim, 2, eps / 2.0, /*squashed=*/true);
    }
    if (b_set.empty()) {
        return LayeredNetwork::constant(sigma, dim, 2, 1.0 - eps / 2.0, /*squashed=*/true);
    }

    LayeredNetwork h = separate_sets_affine(a_set, b_set, eps, sigma);
    const ScalarGate gate = separate_scalar_points(sigma, eps, 1.0 - eps, 2.0 * eps);
    LayeredNetwork squashed = squash_affine_of(h, gate.s, gate.t);

    for (const Point& a : a_set.points()) {
        const double v = squashed.evaluate(a);
        if (!(v > 1.0 - eps - kContractTol)) {
            throw ConstructionError("separate_sets_squashed: contract failed at A point " +
                                    format_point(a) + ": H = " + std::to_string(v));
        }
    }
    for (const Point& b : b_set.points()) {
        const double v = squashed.evaluate(b);
        if (!(v < eps + kContractTol)) {
            throw ConstructionError("separate_sets_squashed: contract failed at B point " +
                                    format_point(b) + ": H = " + std::to_string(v));
        }
    }
    return squashed;
}

}  // namespace squashnet
