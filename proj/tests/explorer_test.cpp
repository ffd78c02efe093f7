#include <doctest.h>

#include <cmath>
#include <set>

#include "gapforge/explorer.hpp"
#include "gapforge/random.hpp"
#include "gapforge/report.hpp"

using namespace gapforge;

TEST_CASE("n=3 quarter grid has exactly the five known points") {
    const auto points = regular_grid(GridSpec{3, 0.25});
    REQUIRE(points.size() == 5);

    // (p12, p13, p23) in storage order
    const std::set<std::vector<double>> expected{
        {0.50, 0.50, 0.50}, {0.50, 0.75, 0.50}, {0.50, 0.75, 0.75},
        {0.75, 0.75, 0.50}, {0.75, 0.75, 0.75}};
    std::set<std::vector<double>> got;
    for (const auto& p : points) {
        CHECK(is_regular(p).regular);
        got.insert(p.values());
    }
    CHECK(got == expected);
}

TEST_CASE("grid completeness against brute-force filtering") {
    for (double step : {0.25, 0.1}) {
        const int denom = static_cast<int>(std::llround(1.0 / step));
        std::set<std::vector<double>> brute;
        for (int a = 1; a < denom; ++a)
            for (int b = 1; b < denom; ++b)
                for (int c = 1; c < denom; ++c) {
                    const ParamVector p(3, {static_cast<double>(a) / denom,
                                            static_cast<double>(b) / denom,
                                            static_cast<double>(c) / denom});
                    if (is_regular(p).regular) brute.insert(p.values());
                }
        std::set<std::vector<double>> enumerated;
        for (const auto& p : regular_grid(GridSpec{3, step})) enumerated.insert(p.values());
        CHECK(enumerated == brute);
    }
}

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS(regular_grid_size(GridSpec{3, 0.15}), Error);
    CHECK_THROWS_AS(regular_grid_size(GridSpec{3, 0.3}), Error);
    CHECK_THROWS_AS(regular_grid_size(GridSpec{3, 0.0}), Error);
    CHECK_THROWS_AS(regular_grid_size(GridSpec{3, 0.6}), Error);
    CHECK_NOTHROW(regular_grid_size(GridSpec{3, 0.5}));
    CHECK_NOTHROW(regular_grid_size(GridSpec{3, 0.125}));
}

TEST_CASE("unweighted point is always on the grid") {
    for (double step : {0.5, 0.25, 0.1}) {
        bool found = false;
        for_each_regular_grid_point(GridSpec{4, step}, [&](const ParamVector& p) {
            bool all_half = true;
            for (double v : p.values())
                if (v != 0.5) all_half = false;
            found = found || all_half;
        });
        CHECK(found);
    }
}

TEST_CASE("scan finds the n=3 minimum at p12 = p23 = 1/2") {
    const PermTable t = PermTable::build(3);
    const ScanResult result = scan_grid_min(GridSpec{3, 0.25}, 2, t);
    CHECK(result.total == 5);
    CHECK(std::abs(result.min_lambda - 0.25) <= 1e-9);
    REQUIRE(result.argmin.size() == 2);
    for (std::size_t idx : result.argmin) {
        const ParamVector p = result.point(idx);
        CHECK(p(1, 2) == 0.5);
        CHECK(p(2, 3) == 0.5);
    }
}

TEST_CASE("n=2 grid: every point has gap 1") {
    const PermTable t = PermTable::build(2);
    const ScanResult result = scan_grid_min(GridSpec{2, 0.1}, 1, t);
    CHECK(result.total == 5);  // 0.5, 0.6, 0.7, 0.8, 0.9
    for (double l : result.lambda) CHECK(std::abs(l - 1.0) <= 1e-12);
    CHECK(result.argmin.size() == result.total);
}

TEST_CASE("scan results are independent of parallelism") {
    const PermTable t = PermTable::build(4);
    const ScanResult one = scan_grid_min(GridSpec{4, 0.25}, 1, t);
    const ScanResult eight = scan_grid_min(GridSpec{4, 0.25}, 8, t);
    CHECK(one.total == eight.total);
    CHECK(one.assignments == eight.assignments);
    CHECK(one.lambda == eight.lambda);
    CHECK(one.beta_multiplicity == eight.beta_multiplicity);
    CHECK(one.argmin == eight.argmin);
    CHECK(scan_csv(one) == scan_csv(eight));
}

TEST_CASE("scan cap at n=5 by default, overridable") {
    const PermTable t6 = PermTable::build(6);
    CHECK_THROWS_AS(scan_grid_min(GridSpec{6, 0.5}, 1, t6), Error);
    // a 0.5-step grid has the unweighted point only
    const ScanResult r = scan_grid_min(GridSpec{6, 0.5}, 1, t6, kArgTol, {}, 6);
    CHECK(r.total == 1);
    CHECK(std::abs(r.min_lambda - unweighted_gap(6)) <= 1e-9);
}

TEST_CASE("scan records reproduce through gap_report") {
    const PermTable t = PermTable::build(4);
    const ScanResult result = scan_grid_min(GridSpec{4, 0.25}, 2, t);
    for (std::size_t idx = 0; idx < result.total; idx += 7) {
        const GapReport rep = gap_report(result.point(idx), t);
        CHECK(rep.lambda == result.lambda[idx]);
        CHECK(rep.beta_multiplicity == result.beta_multiplicity[idx]);
    }
}

TEST_CASE("interpolation endpoints and regularity") {
    Rng rng(31);
    const ParamVector p = random_regular_param_vector(4, rng);
    CHECK(interpolate_to_unweighted(p, 0.0) == p);
    const ParamVector at_star = interpolate_to_unweighted(p, 1.0);
    for (double v : at_star.values()) CHECK(v == doctest::Approx(0.5).epsilon(1e-15));

    for (int trial = 0; trial < 50; ++trial) {
        const ParamVector q = random_regular_param_vector(4, rng);
        const double t = rng.uniform();
        CHECK(is_regular(interpolate_to_unweighted(q, t)).regular);
    }
}

TEST_CASE("path scan") {
    const PermTable t4 = PermTable::build(4);

    // degenerate path from the unweighted vector is constant
    const PathScanResult flat = scan_path(PathSpec{ParamVector::unweighted(4), 5}, t4);
    for (double l : flat.lambda) CHECK(std::abs(l - unweighted_gap(4)) <= 1e-9);
    CHECK(flat.nonincreasing);
    CHECK(flat.convex);

    const ParamVector strong_a(4, {0.5, 0.7, 0.9, 0.7, 0.8, 0.5});
    const PathScanResult path = scan_path(PathSpec{strong_a, 11}, t4);
    REQUIRE(path.t.size() == 11);
    REQUIRE(path.second_difference.size() == 9);
    CHECK(path.t.front() == 0.0);
    CHECK(path.t.back() == 1.0);
    CHECK(std::abs(path.lambda.back() - unweighted_gap(4)) <= 1e-9);
    CHECK(path.nonincreasing);
    CHECK(path.convex);

    // non-regular endpoint rejected
    CHECK_THROWS_AS(scan_path(PathSpec{ParamVector(3, {0.4, 0.5, 0.5}), 5},
                              PermTable::build(3)),
                    Error);
    CHECK_THROWS_AS(scan_path(PathSpec{ParamVector::unweighted(4), 1}, t4), Error);
}

TEST_CASE("multiplicity census") {
    const PermTable t4 = PermTable::build(4);

    const MultiplicityCensus unweighted = multiplicity_census(ParamVector::unweighted(4), t4);
    CHECK(unweighted.nu == 4);
    CHECK(unweighted.predicted_mu == 3);
    CHECK(unweighted.mu == 3);
    CHECK(unweighted.gap_matches_unweighted);

    ParamVector probe = ParamVector::unweighted(4);
    std::vector<double> values(6, 0.5);
    values[probe.pair_index(1, 4)] = 0.6;
    const MultiplicityCensus nu2 = multiplicity_census(ParamVector(4, values), t4);
    CHECK(nu2.nu == 2);
    CHECK(nu2.predicted_mu == 3);

    // equality test uses the 1e-12 envelope
    std::vector<double> nearly(6, 0.5);
    nearly[0] = 0.5 + 1e-13;
    CHECK(multiplicity_census(ParamVector(4, nearly), t4).nu == 4);

    Rng rng(32);
    const MultiplicityCensus generic = multiplicity_census(random_param_vector(4, rng), t4);
    CHECK(generic.nu == 0);
    CHECK(generic.predicted_mu == 0);
}
