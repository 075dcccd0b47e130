#include "squashnet/activation.hpp"

#include <algorithm>
#include <cmath>

#include "csv.hpp"

namespace squashnet {

std::string to_string(SigmaKind kind) {
    switch (kind) {
        case SigmaKind::logistic: return "logistic";
        case SigmaKind::tanh_rescaled: return "tanh-rescaled";
        case SigmaKind::piecewise_linear_ramp: return "piecewise-linear-ramp";
        case SigmaKind::tabulated_monotone: return "tabulated-monotone";
    }
    return "unknown";
}

SigmaKind sigma_kind_from_string(const std::string& name) {
    if (name == "logistic") return SigmaKind::logistic;
    if (name == "tanh-rescaled") return SigmaKind::tanh_rescaled;
    if (name == "piecewise-linear-ramp") return SigmaKind::piecewise_linear_ramp;
    if (name == "tabulated-monotone") return SigmaKind::tabulated_monotone;
    throw InvalidInputError("unknown squashing function kind: " + name);
}

SquashingFunction SquashingFunction::logistic() {
    SquashingFunction f;
    f.kind_ = SigmaKind::logistic;
    f.strictly_increasing_ = true;
    return f;
}

SquashingFunction SquashingFunction::tanh_rescaled() {
    SquashingFunction f;
    f.kind_ = SigmaKind::tanh_rescaled;
    f.strictly_increasing_ = true;
    return f;
}

SquashingFunction SquashingFunction::ramp(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw InvalidInputError("ramp: requires finite lo < hi");
    }
    SquashingFunction f;
    f.kind_ = SigmaKind::piecewise_linear_ramp;
    f.lo_ = lo;
    f.hi_ = hi;
    f.strictly_increasing_ = false;
    return f;
}

SquashingFunction SquashingFunction::tabulated(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size()) {
        throw InvalidInputError("tabulated: x and y columns differ in length");
    }
    if (xs.size() < 2) {
        throw InvalidInputError("tabulated: need at least 2 samples");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
            throw InvalidInputError("tabulated: non-finite sample at row " + std::to_string(i));
        }
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i - 1] < xs[i])) {
            throw InvalidInputError("tabulated: x column must be strictly increasing (row " +
                                    std::to_string(i) + ")");
        }
    }
    SquashingFunction f;
    f.kind_ = SigmaKind::tabulated_monotone;
    f.xs_ = std::move(xs);
    f.ys_ = std::move(ys);
    f.strictly_increasing_ = true;
    for (std::size_t i = 1; i < f.ys_.size(); ++i) {
        if (!(f.ys_[i - 1] < f.ys_[i])) {
            f.strictly_increasing_ = false;
            break;
        }
    }
    return f;
}

SquashingFunction SquashingFunction::from_table_csv(const std::string& path) {
    auto rows = detail::read_csv_rows(path);
    std::vector<double> xs, ys;
    bool first = true;
    for (const auto& row : rows) {
        if (row.fields.size() != 2) {
            throw ParseError("activation table " + path + ": line " + std::to_string(row.line_no) +
                             " has " + std::to_string(row.fields.size()) + " fields, expected 2");
        }
        double x = 0.0, y = 0.0;
        bool ok = detail::parse_double(row.fields[0], x) && detail::parse_double(row.fields[1], y);
        if (!ok) {
            if (first) {
                first = false;  // header row
                continue;
            }
            throw ParseError("activation table " + path + ": line " + std::to_string(row.line_no) +
                             " is not numeric");
        }
        first = false;
        xs.push_back(x);
        ys.push_back(y);
    }
    return tabulated(std::move(xs), std::move(ys));
}

double SquashingFunction::value(double x) const {
    if (!std::isfinite(x)) {
        throw InvalidInputError("value: x must be finite");
    }
    switch (kind_) {
        case SigmaKind::logistic:
            return 1.0 / (1.0 + std::exp(-x));
        case SigmaKind::tanh_rescaled:
            return 0.5 * (1.0 + std::tanh(x));
        case SigmaKind::piecewise_linear_ramp:
            if (x <= lo_) return 0.0;
            if (x >= hi_) return 1.0;
            return (x - lo_) / (hi_ - lo_);
        case SigmaKind::tabulated_monotone: {
            if (x <= xs_.front()) return ys_.front();
            if (x >= xs_.back()) return ys_.back();
            auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
            std::size_t i = static_cast<std::size_t>(it - xs_.begin());
            double u = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
            return ys_[i - 1] + u * (ys_[i] - ys_[i - 1]);
        }
    }
    return 0.0;  // unreachable
}

double SquashingFunction::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidInputError("quantile: level must lie in (0, 1)");
    }
    switch (kind_) {
        case SigmaKind::logistic:
            return std::log(p) - std::log1p(-p);
        case SigmaKind::tanh_rescaled:
            return 0.5 * (std::log(p) - std::log1p(-p));
        case SigmaKind::piecewise_linear_ramp:
            // Unique preimage on the open ramp.
            return lo_ + p * (hi_ - lo_);
        case SigmaKind::tabulated_monotone: {
            if (p < ys_.front() || p > ys_.back()) {
                throw UnattainableLevelError("quantile: level " + detail::format_double(p) +
                                             " outside the tabulated value range [" +
                                             detail::format_double(ys_.front()) + ", " +
                                             detail::format_double(ys_.back()) + "]");
            }
            double a = xs_.front();
            double b = xs_.back();
            for (int iter = 0; iter < 200 && (b - a) > 1e-12; ++iter) {
                double mid = 0.5 * (a + b);
                if (value(mid) < p) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            return 0.5 * (a + b);
        }
    }
    return 0.0;  // unreachable
}

double SquashingFunction::ramp_lo() const {
    if (kind_ != SigmaKind::piecewise_linear_ramp) {
        throw InvalidInputError("ramp_lo: not a ramp activation");
    }
    return lo_;
}

double SquashingFunction::ramp_hi() const {
    if (kind_ != SigmaKind::piecewise_linear_ramp) {
        throw InvalidInputError("ramp_hi: not a ramp activation");
    }
    return hi_;
}

const std::vector<double>& SquashingFunction::table_xs() const {
    if (kind_ != SigmaKind::tabulated_monotone) {
        throw InvalidInputError("table_xs: not a tabulated activation");
    }
    return xs_;
}

const std::vector<double>& SquashingFunction::table_ys() const {
    if (kind_ != SigmaKind::tabulated_monotone) {
        throw InvalidInputError("table_ys: not a tabulated activation");
    }
    return ys_;
}

bool SquashingFunction::operator==(const SquashingFunction& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case SigmaKind::logistic:
        case SigmaKind::tanh_rescaled:
            return true;
        case SigmaKind::piecewise_linear_ramp:
            return lo_ == other.lo_ && hi_ == other.hi_;
        case SigmaKind::tabulated_monotone:
            return xs_ == other.xs_ && ys_ == other.ys_;
    }
    return false;
}

SquashingReport verify_squashing(const SquashingFunction& sigma, int probe_count,
                                 double probe_halfwidth) {
    if (probe_count < 2) {
        throw InvalidInputError("verify_squashing: probe_count must be >= 2");
    }
    if (!(probe_halfwidth > 0.0) || !std::isfinite(probe_halfwidth)) {
        throw InvalidInputError("verify_squashing: probe_halfwidth must be positive and finite");
    }
    SquashingReport report;
    double prev = 0.0;
    for (int i = 0; i < probe_count; ++i) {
        double x = -probe_halfwidth +
                   (2.0 * probe_halfwidth) * static_cast<double>(i) / (probe_count - 1);
        double v = sigma.value(x);
        if (i > 0 && v < prev) {
            if (report.monotonicity_violations == 0) {
                report.first_violation_x = x;
            }
            ++report.monotonicity_violations;
        }
        if (i == 0) report.tail_low = v;
        if (i == probe_count - 1) report.tail_high = v;
        prev = v;
    }
    report.tails_ok =
        std::abs(report.tail_low) <= 1e-6 && std::abs(report.tail_high - 1.0) <= 1e-6;
    report.pass = report.monotonicity_violations == 0 && report.tails_ok;
    return report;
}

}  // namespace squashnet
