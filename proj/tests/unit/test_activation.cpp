#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include <squashnet/activation.hpp>

using namespace squashnet;

namespace {

SquashingFunction logistic_table(int samples = 4001, double halfwidth = 40.0) {
    SquashingFunction logistic = SquashingFunction::logistic();
    std::vector<double> xs, ys;
    xs.reserve(samples);
    ys.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double x = -halfwidth + 2.0 * halfwidth * i / (samples - 1);
        xs.push_back(x);
        ys.push_back(logistic.value(x));
    }
    return SquashingFunction::tabulated(xs, ys);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("logistic value: closed-form anchors") {
    SquashingFunction sigma = SquashingFunction::logistic();
    CHECK(sigma.value(0.0) == 0.5);
    CHECK(std::abs(sigma.value(50.0) - 1.0) < 1e-9);
    CHECK(std::abs(sigma.value(-50.0)) < 1e-9);
    // 1/(1 + e^-ln 9) = 9/10
    CHECK(sigma.value(std::log(9.0)) == doctest::Approx(0.9).epsilon(1e-14));
}

TEST_CASE("logistic quantile: logit anchors and antisymmetry") {
    SquashingFunction sigma = SquashingFunction::logistic();
    CHECK(sigma.quantile(0.5) == 0.0);
    CHECK(sigma.quantile(0.9) == doctest::Approx(std::log(9.0)).epsilon(1e-14));
    CHECK(sigma.quantile(0.1) == doctest::Approx(-sigma.quantile(0.9)).epsilon(1e-14));
}

TEST_CASE("value(quantile(p)) = p within 1e-10 across kinds") {
    std::vector<SquashingFunction> sigmas = {
        SquashingFunction::logistic(),
        SquashingFunction::tanh_rescaled(),
        logistic_table(),
    };
    for (const auto& sigma : sigmas) {
        for (double p = 1e-6; p < 1.0; p += 0.0097) {
            if (sigma.kind() == SigmaKind::tabulated_monotone &&
                (p < sigma.table_ys().front() || p > sigma.table_ys().back())) {
                continue;
            }
            CHECK(std::abs(sigma.value(sigma.quantile(p)) - p) <= 1e-10);
        }
        double p_hi = 1.0 - 1e-6;
        if (sigma.kind() != SigmaKind::tabulated_monotone) {
            CHECK(std::abs(sigma.value(sigma.quantile(p_hi)) - p_hi) <= 1e-10);
        }
    }
}

TEST_CASE("monotonicity of value and quantile on random samples") {
    std::mt19937 rng(20240701);
    std::uniform_real_distribution<double> xd(-30.0, 30.0);
    std::uniform_real_distribution<double> pd(1e-6, 1.0 - 1e-6);
    SquashingFunction logistic = SquashingFunction::logistic();
    SquashingFunction tanh = SquashingFunction::tanh_rescaled();
    for (int i = 0; i < 500; ++i) {
        double a = xd(rng);
        double b = xd(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        CHECK(logistic.value(a) < logistic.value(b));
        CHECK(tanh.value(a) <= tanh.value(b));
        double p = pd(rng);
        double q = pd(rng);
        if (p == q) continue;
        if (p > q) std::swap(p, q);
        CHECK(logistic.quantile(p) < logistic.quantile(q));
        CHECK(tanh.quantile(p) < tanh.quantile(q));
    }
}

TEST_CASE("ramp kind") {
    SquashingFunction ramp = SquashingFunction::ramp(-1.0, 3.0);
    CHECK(ramp.value(-5.0) == 0.0);
    CHECK(ramp.value(-1.0) == 0.0);
    CHECK(ramp.value(1.0) == doctest::Approx(0.5));
    CHECK(ramp.value(3.0) == 1.0);
    CHECK(ramp.value(7.0) == 1.0);
    CHECK_FALSE(ramp.strictly_increasing());
    // unique preimage on the open ramp
    CHECK(ramp.value(ramp.quantile(0.25)) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(ramp.quantile(0.0), InvalidInputError);
    CHECK_THROWS_AS(ramp.quantile(1.0), InvalidInputError);
    CHECK_THROWS_AS(SquashingFunction::ramp(2.0, 2.0), InvalidInputError);
}

TEST_CASE("input validation") {
    SquashingFunction sigma = SquashingFunction::logistic();
    CHECK_THROWS_AS(sigma.value(std::numeric_limits<double>::infinity()), InvalidInputError);
    CHECK_THROWS_AS(sigma.value(std::nan("")), InvalidInputError);
    CHECK_THROWS_AS(sigma.quantile(0.0), InvalidInputError);
    CHECK_THROWS_AS(sigma.quantile(1.0), InvalidInputError);
    CHECK_THROWS_AS(sigma.quantile(-0.3), InvalidInputError);
}

TEST_CASE("tabulated: unattainable levels and strictness detection") {
    SquashingFunction table = SquashingFunction::tabulated({-1.0, 0.0, 1.0}, {0.2, 0.5, 0.8});
    CHECK(table.strictly_increasing());
    CHECK_THROWS_AS(table.quantile(0.1), UnattainableLevelError);
    CHECK_THROWS_AS(table.quantile(0.9), UnattainableLevelError);
    CHECK(table.value(table.quantile(0.5)) == doctest::Approx(0.5).epsilon(1e-10));

    SquashingFunction flat = SquashingFunction::tabulated({0.0, 1.0, 2.0}, {0.3, 0.3, 0.6});
    CHECK_FALSE(flat.strictly_increasing());

    CHECK_THROWS_AS(SquashingFunction::tabulated({0.0, 0.0}, {0.1, 0.2}), InvalidInputError);
    CHECK_THROWS_AS(SquashingFunction::tabulated({0.0}, {0.1}), InvalidInputError);
}

TEST_CASE("verify_squashing: logistic sweep passes") {
    SquashingReport report = verify_squashing(SquashingFunction::logistic(), 1001, 40.0);
    CHECK(report.monotonicity_violations == 0);
    CHECK(report.tails_ok);
    CHECK(report.pass);
    CHECK(report.tail_low == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(report.tail_high == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("verify_squashing: decreasing table fails monotonicity") {
    SquashingFunction dec = SquashingFunction::tabulated({-40.0, 0.0, 40.0}, {1.0, 0.5, 0.0});
    SquashingReport report = verify_squashing(dec, 101, 40.0);
    CHECK(report.monotonicity_violations >= 1);
    CHECK_FALSE(report.pass);
}

TEST_CASE("verify_squashing: constant-0.5 table fails the tail check") {
    SquashingFunction flat = SquashingFunction::tabulated({-40.0, 40.0}, {0.5, 0.5});
    SquashingReport report = verify_squashing(flat, 101, 40.0);
    CHECK(report.monotonicity_violations == 0);
    CHECK_FALSE(report.tails_ok);
    CHECK_FALSE(report.pass);
}

TEST_CASE("verify_squashing: probe argument validation") {
    CHECK_THROWS_AS(verify_squashing(SquashingFunction::logistic(), 1, 40.0), InvalidInputError);
    CHECK_THROWS_AS(verify_squashing(SquashingFunction::logistic(), 10, 0.0), InvalidInputError);
}

TEST_CASE("activation table CSV: header optional, validation errors") {
    auto path = temp_file("squashnet_activation_table.csv");
    {
        std::ofstream out(path);
        out << "x,sigma\n-40,0\n0,0.5\n40,1\n";
    }
    SquashingFunction with_header = SquashingFunction::from_table_csv(path.string());
    CHECK(with_header.value(0.0) == doctest::Approx(0.5));

    {
        std::ofstream out(path);
        out << "-40,0\n0,0.5\n40,1\n";
    }
    SquashingFunction without_header = SquashingFunction::from_table_csv(path.string());
    CHECK(without_header.table_xs().size() == 3);

    {
        std::ofstream out(path);
        out << "x,sigma\n0,0.5\nbroken,0.6\n";
    }
    CHECK_THROWS_AS(SquashingFunction::from_table_csv(path.string()), ParseError);

    CHECK_THROWS_AS(SquashingFunction::from_table_csv("/nonexistent/table.csv"),
                    InvalidInputError);
    std::filesystem::remove(path);
}
