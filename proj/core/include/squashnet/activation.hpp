#pragma once

#include <string>
#include <vector>

#include "squashnet/errors.hpp"

namespace squashnet {

enum class SigmaKind {
    logistic,
    tanh_rescaled,
    piecewise_linear_ramp,
    tabulated_monotone,
};

std::string to_string(SigmaKind kind);
SigmaKind sigma_kind_from_string(const std::string& name);

/// A 0-1 squashing function: increasing, continuous, with value 0 in the far
/// negative tail and 1 in the far positive tail. Instances are immutable and
/// freely shareable across threads.
class SquashingFunction {
public:
    /// 1 / (1 + e^-x).
    static SquashingFunction logistic();

    /// (1 + tanh x) / 2, i.e. the logistic curve with slope doubled.
    static SquashingFunction tanh_rescaled();

    /// 0 below `lo`, 1 above `hi`, linear in between. Increasing but not
    /// strictly, so separator constructions reject it.
    static SquashingFunction ramp(double lo, double hi);

    /// Piecewise-linear interpolation through (x, y) samples with constant
    /// extension outside the sampled range. xs must be strictly increasing;
    /// monotonicity of ys is the caller's claim, checkable via
    /// verify_squashing().
    static SquashingFunction tabulated(std::vector<double> xs, std::vector<double> ys);

    /// Loads a tabulated activation from a two-column CSV (x, sigma(x))
    /// sorted by x. A non-numeric first row is treated as a header.
    static SquashingFunction from_table_csv(const std::string& path);

    SigmaKind kind() const noexcept { return kind_; }

    /// True for the analytic strictly increasing kinds and for tables whose
    /// sampled values strictly increase.
    bool strictly_increasing() const noexcept { return strictly_increasing_; }

    double value(double x) const;

    /// Generalized inverse: value(quantile(p)) = p for p in (0, 1), to within
    /// 1e-10. Closed form for the analytic kinds; bisection on the table
    /// (absolute x-tolerance 1e-12, at most 200 iterations) otherwise.
    /// Throws UnattainableLevelError when a table cannot reach the level.
    double quantile(double p) const;

    // Kind-specific parameters, exposed for serialization.
    double ramp_lo() const;
    double ramp_hi() const;
    const std::vector<double>& table_xs() const;
    const std::vector<double>& table_ys() const;

    bool operator==(const SquashingFunction& other) const;

private:
    SquashingFunction() = default;

    SigmaKind kind_ = SigmaKind::logistic;
    double lo_ = 0.0;
    double hi_ = 1.0;
    std::vector<double> xs_;
    std::vector<double> ys_;
    bool strictly_increasing_ = true;
};

/// Result of probing a squashing function on an equispaced sweep.
struct SquashingReport {
    int monotonicity_violations = 0;  ///< adjacent probe pairs where the value decreases
    double first_violation_x = 0.0;   ///< probe where the first decrease was observed
    double tail_low = 0.0;            ///< value at -probe_halfwidth
    double tail_high = 0.0;           ///< value at +probe_halfwidth
    bool tails_ok = false;            ///< tails within 1e-6 of 0 and 1
    bool pass = false;                ///< no violations and tails_ok
};

/// Evaluates sigma at probe_count equispaced points on
/// [-probe_halfwidth, probe_halfwidth] and reports monotonicity violations
/// and tail values. Limits at infinity are not machine-checkable; the finite
/// probes make the assumptions testable.
SquashingReport verify_squashing(const SquashingFunction& sigma, int probe_count = 1001,
                                 double probe_halfwidth = 40.0);

}  // namespace squashnet
