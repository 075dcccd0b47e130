#include "squashnet/approximator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "csv.hpp"
#include "squashnet/separation.hpp"

namespace squashnet {

std::string trace_to_csv(const RefinementTrace& trace) {
    std::ostringstream out;
    out << "index,error_before,alpha,size_u_plus,size_u_minus,cover_sizes,error_after,"
           "parameter_count_after\n";
    for (const IterationRecord& rec : trace.iterations) {
        out << rec.index << ',' << detail::format_double(rec.error_before) << ','
            << detail::format_double(rec.alpha) << ',' << rec.size_u_plus << ','
            << rec.size_u_minus << ',';
        for (std::size_t i = 0; i < rec.cover_sizes.size(); ++i) {
            if (i) out << ';';
            out << rec.cover_sizes[i];
        }
        out << ',' << detail::format_double(rec.error_after) << ',' << rec.parameter_count_after
            << '\n';
    }
    return out.str();
}

SupErrorDetail sup_error_detail(const LayeredNetwork& net, const TargetFunction& target,
                                const GridDomain& domain) {
    if (net.input_dim() != domain.dim()) {
        throw InvalidInputError("sup_error: network and grid dimensions differ");
    }
    const std::vector<double> target_values = sample_target(target, domain);
    SupErrorDetail detail;
    detail.value = -1.0;
    Point scratch;
    for (long long i = 0; i < domain.point_count(); ++i) {
        domain.point_at(i, scratch);
        const double diff =
            std::abs(net.evaluate(scratch) - target_values[static_cast<std::size_t>(i)]);
        if (diff > detail.value) {
            detail.value = diff;
            detail.argmax_index = i;
        }
    }
    return detail;
}

double sup_error(const LayeredNetwork& net, const TargetFunction& target,
                 const GridDomain& domain) {
    return sup_error_detail(net, target, domain).value;
}

RefineStep refine_once(const LayeredNetwork& f_hat, const TargetFunction& target,
                       const GridDomain& domain, double alpha, const SquashingFunction& sigma) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw InvalidInputError("refine_once: alpha must be positive");
    }
    if (f_hat.input_dim() != domain.dim()) {
        throw InvalidInputError("refine_once: network and grid dimensions differ");
    }
    const std::vector<double> target_values = sample_target(target, domain);
    const long long count = domain.point_count();

    std::vector<double> residual(static_cast<std::size_t>(count));
    double error_before = 0.0;
    Point scratch;
    for (long long i = 0; i < count; ++i) {
        domain.point_at(i, scratch);
        const double r = f_hat.evaluate(scratch) - target_values[static_cast<std::size_t>(i)];
        residual[static_cast<std::size_t>(i)] = r;
        error_before = std::max(error_before, std::abs(r));
    }
    if (!(error_before < 4.0 * alpha / 3.0)) {
        throw InvalidInputError("refine_once: grid sup error " +
                                detail::format_double(error_before) +
                                " must be below 4*alpha/3 = " +
                                detail::format_double(4.0 * alpha / 3.0));
    }

    auto [u_plus, u_minus] = residual_sets(residual, domain, alpha);
    LayeredNetwork separator = separate_sets_squashed(u_plus, u_minus, 1.0 / 6.0, sigma);
    std::vector<int> cover_sizes = stats(separator).widths;

    std::vector<LayeredNetwork> parts;
    parts.reserve(2);
    parts.push_back(f_hat);
    parts.push_back(lift(separator));
    const double coeffs[] = {1.0, -alpha};
    LayeredNetwork refined = superpose(parts, coeffs, alpha / 2.0);

    double error_after = 0.0;
    for (long long i = 0; i < count; ++i) {
        domain.point_at(i, scratch);
        error_after = std::max(error_after, std::abs(refined.evaluate(scratch) -
                                                     target_values[static_cast<std::size_t>(i)]));
    }
    if (!(error_after < alpha)) {
        throw ConstructionError("refine_once: step failed to contract, error " +
                                detail::format_double(error_after) + " for alpha " +
                                detail::format_double(alpha));
    }
    return RefineStep{std::move(refined),
                      error_before,
                      error_after,
                      static_cast<long long>(u_plus.size()),
                      static_cast<long long>(u_minus.size()),
                      std::move(cover_sizes)};
}

ApproximationResult approximate(const TargetFunction& target, const GridDomain& domain,
                                double eps, const SquashingFunction& sigma, double beta,
                                int max_iterations) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw InvalidInputError("approximate: eps must be positive");
    }
    if (!(beta > 0.75 && beta < 1.0)) {
        throw InvalidInputError("approximate: beta must lie in (3/4, 1)");
    }
    if (max_iterations < 1) {
        throw InvalidInputError("approximate: max_iterations must be >= 1");
    }

    // Midrange constant start: the smallest sup error any constant attains.
    const std::vector<double> target_values = sample_target(target, domain);
    const auto [mn, mx] = std::minmax_element(target_values.begin(), target_values.end());
    const double midrange = (*mn + *mx) / 2.0;
    LayeredNetwork net = LayeredNetwork::constant(sigma, domain.dim(), 3, midrange,
                                                  /*squashed=*/false);
    RefinementTrace trace;
    double error = sup_error(net, target, domain);
    int iteration = 0;
    while (error >= eps) {
        if (iteration >= max_iterations) {
            throw ConvergenceError("approximate: error " + detail::format_double(error) +
                                       " still at or above eps " + detail::format_double(eps) +
                                       " after " + std::to_string(iteration) + " iterations",
                                   std::move(net), std::move(trace));
        }
        ++iteration;
        const double alpha = beta * error;
        RefineStep step = refine_once(net, target, domain, alpha, sigma);
        net = std::move(step.network);

        IterationRecord rec;
        rec.index = iteration;
        rec.error_before = error;
        rec.alpha = alpha;
        rec.size_u_plus = step.size_u_plus;
        rec.size_u_minus = step.size_u_minus;
        rec.cover_sizes = std::move(step.cover_sizes);
        rec.error_after = step.error_after;
        rec.parameter_count_after = stats(net).parameter_count;
        trace.iterations.push_back(std::move(rec));

        error = step.error_after;
    }
    return {std::move(net), std::move(trace)};
}

}  // namespace squashnet
