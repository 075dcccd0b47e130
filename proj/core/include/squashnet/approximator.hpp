#pragma once

#include <string>
#include <vector>

#include "squashnet/domain.hpp"
#include "squashnet/network.hpp"

namespace squashnet {

struct IterationRecord {
    int index = 0;  ///< 1-based
    double error_before = 0.0;
    double alpha = 0.0;
    long long size_u_plus = 0;
    long long size_u_minus = 0;
    std::vector<int> cover_sizes;  ///< hidden widths of the separator built this iteration
    double error_after = 0.0;
    long long parameter_count_after = 0;
};

/// Per-iteration record of the refinement loop. Every record satisfies
/// error_after < alpha and error_after < error_before.
struct RefinementTrace {
    std::vector<IterationRecord> iterations;
};

/// One row per iteration; cover_sizes joined with ';'.
std::string trace_to_csv(const RefinementTrace& trace);

/// max over grid points of |net(p) - target(p)|. The reduction is a plain
/// max, so the value does not depend on sweep order.
double sup_error(const LayeredNetwork& net, const TargetFunction& target,
                 const GridDomain& domain);

struct SupErrorDetail {
    double value = 0.0;
    long long argmax_index = 0;  ///< first grid index attaining the max
};

SupErrorDetail sup_error_detail(const LayeredNetwork& net, const TargetFunction& target,
                                const GridDomain& domain);

struct RefineStep {
    LayeredNetwork network;
    double error_before = 0.0;
    double error_after = 0.0;
    long long size_u_plus = 0;
    long long size_u_minus = 0;
    std::vector<int> cover_sizes;
};

/// One contraction step. Splits the residual f_hat - target into the
/// overshoot band [alpha/3, 4 alpha/3] and undershoot band
/// [-4 alpha/3, -alpha/3], separates the bands with a squashed network H at
/// tolerance 1/6, and returns f_hat - alpha H + alpha/2 as a three-hidden-
/// layer network. Requires the grid sup error of f_hat to be below
/// 4 alpha/3; guarantees, and re-verifies by evaluation, that the result's
/// grid sup error is below alpha.
RefineStep refine_once(const LayeredNetwork& f_hat, const TargetFunction& target,
                       const GridDomain& domain, double alpha, const SquashingFunction& sigma);

struct ApproximationResult {
    LayeredNetwork network;
    RefinementTrace trace;
};

/// The refinement loop stopped at max_iterations with the error still at or
/// above the requested eps. Carries the partial result.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, LayeredNetwork partial, RefinementTrace trace)
        : Error(what), partial_(std::move(partial)), trace_(std::move(trace)) {}

    const LayeredNetwork& partial_network() const noexcept { return partial_; }
    const RefinementTrace& partial_trace() const noexcept { return trace_; }

private:
    LayeredNetwork partial_;
    RefinementTrace trace_;
};

/// Builds a three-hidden-layer network whose grid sup error against the
/// target is below eps. Starts from the midrange constant and repeats
/// refine_once with alpha = beta * current error. beta must lie in (3/4, 1):
/// the upper end keeps alpha <= error, the lower end keeps error < 4 alpha/3,
/// and the error then contracts geometrically at rate beta, so the loop ends
/// within ceil(log(e0/eps) / log(1/beta)) iterations. Deterministic:
/// identical inputs produce bit-identical networks.
ApproximationResult approximate(const TargetFunction& target, const GridDomain& domain,
                                double eps, const SquashingFunction& sigma, double beta = 0.8,
                                int max_iterations = 200);

}  // namespace squashnet
