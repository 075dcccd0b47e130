#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <squashnet/domain.hpp>

using namespace squashnet;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("grid points: 1-D and 2-D enumeration order") {
    GridDomain line({0.0}, {1.0}, {3});
    auto pts = grid_points(line);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == Point{0.0});
    CHECK(pts[1] == Point{0.5});
    CHECK(pts[2] == Point{1.0});

    GridDomain square({0.0, 0.0}, {1.0, 1.0}, {2, 2});
    auto corners = grid_points(square);
    REQUIRE(corners.size() == 4);
    CHECK(corners[0] == Point{0.0, 0.0});
    CHECK(corners[1] == Point{0.0, 1.0});
    CHECK(corners[2] == Point{1.0, 0.0});
    CHECK(corners[3] == Point{1.0, 1.0});
}

TEST_CASE("grid validation and the capacity guard") {
    CHECK_THROWS_AS(GridDomain({0.0}, {0.0}, {3}), InvalidInputError);
    CHECK_THROWS_AS(GridDomain({0.0}, {1.0}, {1}), InvalidInputError);
    CHECK_THROWS_AS(GridDomain({0.0, 1.0}, {1.0}, {2, 2}), InvalidInputError);
    // 1e6 x 1e6 = 1e12 points, beyond the documented 1e8 limit.
    CHECK_THROWS_AS(GridDomain({0.0, 0.0}, {1.0, 1.0}, {1000000, 1000000}), InvalidInputError);
}

TEST_CASE("index_of: exact reconstruction with decimal round-trip noise") {
    GridDomain grid({0.0, -1.0}, {1.0, 1.0}, {11, 21});
    for (long long i = 0; i < grid.point_count(); i += 7) {
        Point p = grid.point_at(i);
        auto idx = grid.index_of(p);
        REQUIRE(idx.has_value());
        CHECK(*idx == i);
        // last-digit noise within the 1e-9 relative tolerance
        Point noisy = p;
        for (double& c : noisy) {
            c += 3e-10;
        }
        auto idx2 = grid.index_of(noisy);
        REQUIRE(idx2.has_value());
        CHECK(*idx2 == i);
    }
    CHECK_FALSE(grid.index_of(Point{0.05, 0.0}).has_value());  // off-grid
    CHECK_FALSE(grid.index_of(Point{1.5, 0.0}).has_value());   // outside the box
    CHECK_FALSE(grid.index_of(Point{0.5}).has_value());        // wrong dimension
}

TEST_CASE("point sets: snapping, duplicates, membership") {
    GridDomain grid({0.0}, {1.0}, {5});
    PointSet set(grid, {Point{0.25}, Point{0.75}});
    CHECK(set.size() == 2);
    CHECK(set.contains(Point{0.25}));
    CHECK_FALSE(set.contains(Point{0.5}));

    CHECK_THROWS_AS(PointSet(grid, {Point{0.3}}), InvalidInputError);  // off-grid
    CHECK_THROWS_AS(PointSet(grid, {Point{0.25}, Point{0.25}}), InvalidInputError);

    PointSet other = PointSet::from_indices(grid, {2});
    CHECK(set.disjoint_with(other));
    PointSet overlapping = PointSet::from_indices(grid, {1, 2});
    CHECK_FALSE(set.disjoint_with(overlapping));
}

TEST_CASE("sample_target: analytic builtins") {
    GridDomain line({0.0}, {1.0}, {5});
    auto constant = sample_target(TargetFunction::constant(3.0), line);
    CHECK(constant == std::vector<double>(5, 3.0));

    auto sine = sample_target(TargetFunction::sinusoid_product({SinusoidMode{false, 1.0}}), line);
    const double expected[] = {0.0, 1.0, 0.0, -1.0, 0.0};
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(sine[i] - expected[i]) <= 1e-12);
    }

    GridDomain square({0.0, 0.0}, {1.0, 1.0}, {2, 2});
    auto proj = sample_target(TargetFunction::projection(1), square);
    CHECK(proj == std::vector<double>{0.0, 1.0, 0.0, 1.0});

    auto maxc = sample_target(TargetFunction::max_of_coordinates(), square);
    CHECK(maxc == std::vector<double>{0.0, 1.0, 1.0, 1.0});

    auto bump = sample_target(TargetFunction::gaussian_bump({0.0, 0.0}, 0.5), square);
    CHECK(bump[0] == doctest::Approx(1.0));
    CHECK(bump[3] == doctest::Approx(std::exp(-4.0)));

    CHECK_THROWS_AS(sample_target(TargetFunction::projection(5), square), InvalidInputError);
}

TEST_CASE("residual_sets: band membership") {
    GridDomain line({0.0}, {1.0}, {3});
    const double alpha = 0.9;

    auto [p0, m0] = residual_sets({0.0, 0.0, 0.0}, line, alpha);
    CHECK(p0.empty());
    CHECK(m0.empty());

    auto [p1, m1] = residual_sets({-alpha, 0.0, alpha}, line, alpha);
    REQUIRE(p1.size() == 1);
    REQUIRE(m1.size() == 1);
    CHECK(p1.points()[0] == Point{1.0});
    CHECK(m1.points()[0] == Point{0.0});

    CHECK_THROWS_AS(residual_sets({0.0, 0.0, 0.0}, line, 0.0), InvalidInputError);
    CHECK_THROWS_AS(residual_sets({0.0}, line, 1.0), InvalidInputError);
}

TEST_CASE("residual_sets: brute-force sweep agreement and disjointness") {
    std::mt19937 rng(909090);
    GridDomain line({-1.0}, {2.0}, {101});
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_real_distribution<double> alpha_dist(0.05, 1.5);
        const double alpha = alpha_dist(rng);
        std::uniform_real_distribution<double> res_dist(-4.0 * alpha / 3.0, 4.0 * alpha / 3.0);
        std::vector<double> residual(101);
        for (double& r : residual) {
            r = res_dist(rng);
        }
        auto [u_plus, u_minus] = residual_sets(residual, line, alpha);
        CHECK(u_plus.disjoint_with(u_minus));

        std::vector<long long> expect_plus, expect_minus;
        for (long long i = 0; i < 101; ++i) {
            const double r = residual[static_cast<std::size_t>(i)];
            if (r >= alpha / 3.0 && r <= 4.0 * alpha / 3.0) expect_plus.push_back(i);
            if (r <= -alpha / 3.0 && r >= -4.0 * alpha / 3.0) expect_minus.push_back(i);
        }
        CHECK(u_plus.indices() == expect_plus);
        CHECK(u_minus.indices() == expect_minus);
        for (long long i : u_plus.indices()) {
            CHECK(std::abs(residual[static_cast<std::size_t>(i)]) >= alpha / 3.0);
        }
        for (long long i : u_minus.indices()) {
            CHECK(std::abs(residual[static_cast<std::size_t>(i)]) >= alpha / 3.0);
        }
    }
}

TEST_CASE("target CSV: load, sample, errors") {
    GridDomain line({0.0}, {1.0}, {3});
    auto path = temp_file("squashnet_target.csv");
    {
        std::ofstream out(path);
        out << "x,value\n0.5,20\n0,10\n1,30\n";
    }
    TargetFunction target = load_target_csv(path.string());
    CHECK(sample_target(target, line) == std::vector<double>{10.0, 20.0, 30.0});

    {
        std::ofstream out(path);
        out << "x,value\n0,10\n0.4,20\n1,30\n";  // 0.4 is off-grid
    }
    CHECK_THROWS_WITH_AS(sample_target(load_target_csv(path.string()), line),
                         doctest::Contains("line 3"), InvalidInputError);

    {
        std::ofstream out(path);
        out << "x,value\n0,10\n1,30\n";  // missing 0.5
    }
    CHECK_THROWS_AS(sample_target(load_target_csv(path.string()), line), InvalidInputError);

    {
        std::ofstream out(path);
        out << "x,value\n0,10\nbad,20\n";
    }
    CHECK_THROWS_AS(load_target_csv(path.string()), ParseError);

    {
        std::ofstream out(path);
        out << "x,value\n0,10\n0.5,nan\n1,30\n";
    }
    CHECK_THROWS_WITH_AS(load_target_csv(path.string()), doctest::Contains("non-finite"),
                         ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("target CSV: write-then-read round-trip of a sampled sinusoid") {
    GridDomain line({0.0}, {1.0}, {17});
    TargetFunction sine = TargetFunction::sinusoid_product({SinusoidMode{false, 1.0}});
    auto values = sample_target(sine, line);

    auto path = temp_file("squashnet_roundtrip.csv");
    {
        std::ofstream out(path);
        out << "x,value\n";
        out.precision(17);
        for (long long i = 0; i < line.point_count(); ++i) {
            out << line.point_at(i)[0] << "," << values[static_cast<std::size_t>(i)] << "\n";
        }
    }
    auto reloaded = sample_target(load_target_csv(path.string()), line);
    CHECK(reloaded == values);
    std::filesystem::remove(path);
}

TEST_CASE("point set CSV: load and errors") {
    GridDomain square({0.0, 0.0}, {1.0, 1.0}, {5, 5});
    auto path = temp_file("squashnet_set.csv");
    {
        std::ofstream out(path);
        out << "x0,x1\n0,0\n0.25,0.5\n1,1\n";
    }
    PointSet set = load_set_csv(path.string(), square);
    CHECK(set.size() == 3);
    CHECK(set.contains(Point{0.25, 0.5}));

    {
        std::ofstream out(path);
        out << "x0,x1\n0,0\n0.3,0.5\n";  // off-grid
    }
    CHECK_THROWS_WITH_AS(load_set_csv(path.string(), square), doctest::Contains("line 3"),
                         InvalidInputError);

    {
        std::ofstream out(path);
        out << "x0,x1\n0.25,0.5\n0.25,0.5\n";
    }
    CHECK_THROWS_WITH_AS(load_set_csv(path.string(), square), doctest::Contains("duplicates"),
                         InvalidInputError);
    std::filesystem::remove(path);
}
