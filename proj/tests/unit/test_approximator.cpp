#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <squashnet/approximator.hpp>
#include <squashnet/separation.hpp>

using namespace squashnet;

namespace {

const SquashingFunction kLogistic = SquashingFunction::logistic();

TargetFunction sine_target() {
    return TargetFunction::sinusoid_product({SinusoidMode{false, 1.0}});
}

}  // namespace

TEST_CASE("sup_error: constants, a known sine sweep, and a naive-loop oracle") {
    GridDomain line({0.0}, {1.0}, {5});

    LayeredNetwork c = LayeredNetwork::constant(kLogistic, 1, 0, 2.5, /*squashed=*/false);
    CHECK(sup_error(c, TargetFunction::constant(2.5), line) == 0.0);

    LayeredNetwork zero = LayeredNetwork::constant(kLogistic, 1, 0, 0.0, /*squashed=*/false);
    CHECK(sup_error(zero, sine_target(), line) == doctest::Approx(1.0).epsilon(1e-12));

    // Random network against the target, cross-checked with a naive loop.
    std::mt19937 rng(8888);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    AffineMap f;
    f.bias = dist(rng);
    f.weights = {dist(rng)};
    LayeredNetwork node = squash_affine_of(LayeredNetwork(1, f, kLogistic), dist(rng), 2.0);
    GridDomain fine({0.0}, {1.0}, {101});
    auto target_values = sample_target(sine_target(), fine);
    double expected = 0.0;
    for (long long i = 0; i < fine.point_count(); ++i) {
        expected = std::max(expected, std::abs(node.evaluate(fine.point_at(i)) -
                                               target_values[static_cast<std::size_t>(i)]));
    }
    SupErrorDetail detail = sup_error_detail(node, sine_target(), fine);
    CHECK(detail.value == expected);
    CHECK(detail.argmax_index >= 0);
    CHECK(detail.argmax_index < fine.point_count());
}

TEST_CASE("refine_once: zero residual takes the constant separator path") {
    GridDomain line({0.0}, {1.0}, {33});
    const double c = 0.75;
    LayeredNetwork f_hat = LayeredNetwork::constant(kLogistic, 1, 3, c, /*squashed=*/false);
    const double alpha = 0.6;
    RefineStep step = refine_once(f_hat, TargetFunction::constant(c), line, alpha, kLogistic);
    // Both bands empty: H is the constant 1/12, so the update shifts by
    // alpha/2 - alpha/12 = 5 alpha/12 exactly.
    CHECK(step.size_u_plus == 0);
    CHECK(step.size_u_minus == 0);
    CHECK(step.error_after == doctest::Approx(5.0 * alpha / 12.0).epsilon(1e-9));
    CHECK(step.error_after < alpha);
}

TEST_CASE("refine_once: one sweep on the 1-D sine") {
    GridDomain line({0.0}, {1.0}, {129});
    LayeredNetwork f_hat = LayeredNetwork::constant(kLogistic, 1, 3, 0.0, /*squashed=*/false);
    const double alpha = 0.8;
    RefineStep step = refine_once(f_hat, sine_target(), line, alpha, kLogistic);
    CHECK(step.error_before == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(step.error_after < alpha);
    CHECK(step.size_u_plus > 0);   // sine dips below -alpha/3
    CHECK(step.size_u_minus > 0);  // and rises above alpha/3
    CHECK(step.network.depth() == 4);
    CHECK_FALSE(step.network.output_squashed());

    // Independent sweep of the returned network.
    auto target_values = sample_target(sine_target(), line);
    double resweep = 0.0;
    for (long long i = 0; i < line.point_count(); ++i) {
        resweep = std::max(resweep, std::abs(step.network.evaluate(line.point_at(i)) -
                                             target_values[static_cast<std::size_t>(i)]));
    }
    CHECK(resweep == step.error_after);
}

TEST_CASE("refine_once: rejects alpha with sup error >= 4 alpha / 3") {
    GridDomain line({0.0}, {1.0}, {33});
    LayeredNetwork f_hat = LayeredNetwork::constant(kLogistic, 1, 3, 0.0, /*squashed=*/false);
    // Error is 1, so any alpha <= 3/4 violates the bound.
    CHECK_THROWS_AS(refine_once(f_hat, sine_target(), line, 0.75, kLogistic), InvalidInputError);
    CHECK_THROWS_AS(refine_once(f_hat, sine_target(), line, -1.0, kLogistic), InvalidInputError);
}

TEST_CASE("approximate: constant target needs zero iterations") {
    GridDomain line({0.0}, {1.0}, {17});
    ApproximationResult result =
        approximate(TargetFunction::constant(3.0), line, 0.05, kLogistic, 0.8, 50);
    CHECK(result.trace.iterations.empty());
    CHECK(sup_error(result.network, TargetFunction::constant(3.0), line) == 0.0);
    CHECK(result.network.depth() == 4);
}

TEST_CASE("approximate: 1-D sine converges within the geometric bound") {
    GridDomain line({0.0}, {1.0}, {257});
    const double eps = 0.05;
    const double beta = 0.8;
    ApproximationResult result = approximate(sine_target(), line, eps, kLogistic, beta, 50);

    // e0 = 1, so ceil(ln(1/eps) / ln(1/beta)) = 14.
    CHECK(result.trace.iterations.size() <= 14);
    REQUIRE(!result.trace.iterations.empty());
    CHECK(result.trace.iterations.back().error_after < eps);
    CHECK(sup_error(result.network, sine_target(), line) < eps);

    double previous = 1.0;
    for (const IterationRecord& rec : result.trace.iterations) {
        CHECK(rec.error_before == doctest::Approx(previous).epsilon(1e-12));
        CHECK(rec.alpha == doctest::Approx(beta * rec.error_before).epsilon(1e-12));
        CHECK(rec.error_after < rec.alpha);
        CHECK(rec.error_after < beta * rec.error_before + 1e-9);
        CHECK(rec.error_after < rec.error_before);
        CHECK(rec.parameter_count_after > 0);
        previous = rec.error_after;
    }

    // Membership bookkeeping: three hidden squashing layers, affine output.
    CHECK(result.network.depth() == 4);
    CHECK(stats(result.network).widths.size() == 3);
    CHECK_FALSE(result.network.output_squashed());
}

TEST_CASE("approximate: deterministic bit-identical reruns") {
    GridDomain line({0.0}, {1.0}, {65});
    ApproximationResult a = approximate(sine_target(), line, 0.2, kLogistic, 0.8, 50);
    ApproximationResult b = approximate(sine_target(), line, 0.2, kLogistic, 0.8, 50);
    CHECK(a.network.serialize() == b.network.serialize());
    CHECK(trace_to_csv(a.trace) == trace_to_csv(b.trace));
}

TEST_CASE("approximate: validation and iteration exhaustion") {
    GridDomain line({0.0}, {1.0}, {33});
    CHECK_THROWS_AS(approximate(sine_target(), line, 0.0, kLogistic, 0.8, 10), InvalidInputError);
    CHECK_THROWS_AS(approximate(sine_target(), line, 0.1, kLogistic, 0.7, 10),
                    InvalidInputError);  // beta <= 3/4
    CHECK_THROWS_AS(approximate(sine_target(), line, 0.1, kLogistic, 1.0, 10), InvalidInputError);
    CHECK_THROWS_AS(approximate(sine_target(), line, 0.1, kLogistic, 0.8, 0), InvalidInputError);

    try {
        approximate(sine_target(), line, 0.01, kLogistic, 0.8, 2);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.partial_trace().iterations.size() == 2);
        CHECK(sup_error(e.partial_network(), sine_target(), line) ==
              doctest::Approx(e.partial_trace().iterations.back().error_after));
    }
}

TEST_CASE("trace CSV: header and one row per iteration") {
    GridDomain line({0.0}, {1.0}, {65});
    ApproximationResult result = approximate(sine_target(), line, 0.3, kLogistic, 0.8, 50);
    std::string csv = trace_to_csv(result.trace);

    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "index,error_before,alpha,size_u_plus,size_u_minus,cover_sizes,error_after,"
          "parameter_count_after");
    std::size_t rows = 0;
    std::string line_text;
    while (std::getline(in, line_text)) {
        if (!line_text.empty()) ++rows;
    }
    CHECK(rows == result.trace.iterations.size());
}
