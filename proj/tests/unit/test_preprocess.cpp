#include "doctest.h"

#include "metriclust/linalg.hpp"
#include "metriclust/preprocess.hpp"
#include "oracles.hpp"

using namespace metriclust;
using doctest::Approx;

TEST_SUITE("preprocess") {

TEST_CASE("standardize by hand") {
    const auto s = standardize(make_data({{0}, {2}}));
    CHECK(s.data(0, 0) == Approx(-0.70710678118654752).epsilon(1e-15));
    CHECK(s.data(1, 0) == Approx(0.70710678118654752).epsilon(1e-15));
    CHECK(s.params.mean == Vector{1});
    CHECK(s.params.sd[0] == Approx(std::sqrt(2.0)));
    CHECK_FALSE(s.params.any_zero_variance());
}

TEST_CASE("standardized columns have mean 0 and variance 1") {
    const auto s = standardize(oracle::random_points(100, 4, 3, -50, 300));
    const auto c = linalg::covariance(s.data);
    const auto mu = linalg::mean(s.data);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(std::abs(mu[j]) <= 1e-12);
        CHECK(c(j, j) == Approx(1.0).epsilon(1e-12));
    }
    const auto again = standardize(s.data);
    CHECK(max_abs(again.data - s.data) <= 1e-9);
}

TEST_CASE("constant column is centered and flagged") {
    const auto s = standardize(make_data({{1, 5}, {2, 5}, {3, 5}}));
    CHECK(s.params.any_zero_variance());
    CHECK(s.params.zero_variance == std::vector<bool>{false, true});
    for (std::size_t i = 0; i < 3; ++i) CHECK(s.data(i, 1) == 0.0);
}

TEST_CASE("standardize needs two rows") {
    CHECK_THROWS_AS(standardize(make_data({{1, 2}})), Error);
}

TEST_CASE("pca on a line") {
    const auto m = pca_fit(make_data({{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
    CHECK(m.explained_variance_ratio[0] >= 0.999);
    CHECK(m.explained_variance_ratio[1] <= 1e-9);
    CHECK(m.components(0, 0) == Approx(std::sqrt(0.5)));
}

TEST_CASE("pca on rank-1 data in higher dimension") {
    std::vector<Vector> rows;
    for (int i = 0; i < 20; ++i) rows.push_back({1.0 * i, -2.0 * i, 0.5 * i});
    const auto m = pca_fit(make_data(rows));
    CHECK(m.explained_variance_ratio[1] <= 1e-9);
}

TEST_CASE("pca round trip, conserved trace and uncorrelated scores") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto data = oracle::random_points(80, 4, seed);
        for (std::size_t i = 0; i < 80; ++i) data(i, 3) = 0.7 * data(i, 0) - data(i, 1) + 0.1 * data(i, 3);
        const auto m = pca_fit(data);
        const auto scores = pca_project(m, data, 4);
        const Matrix back = scores * m.components.transposed();
        for (std::size_t i = 0; i < 80; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(back(i, j) + m.center[j] - data(i, j)) <= 1e-8);

        const auto cov = linalg::covariance(data);
        double trace = 0.0, sum = 0.0, ratio = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            trace += cov(j, j);
            sum += m.eigenvalues[j];
            ratio += m.explained_variance_ratio[j];
        }
        CHECK(sum == Approx(trace).epsilon(1e-9));
        CHECK(ratio == Approx(1.0).epsilon(1e-12));

        const auto sc = linalg::covariance(scores);
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b)
                if (a != b) CHECK(std::abs(sc(a, b)) <= 1e-8);
    }
}

TEST_CASE("pca on 2-D data is a rotation") {
    const auto data = oracle::random_points(30, 2, 44);
    const auto m = pca_fit(data);
    const auto s = pca_project(m, data, 2);
    for (std::size_t i = 0; i < 30; ++i) {
        const double r0 = std::hypot(data(i, 0) - m.center[0], data(i, 1) - m.center[1]);
        CHECK(std::hypot(s(i, 0), s(i, 1)) == Approx(r0).epsilon(1e-12));
    }
}

TEST_CASE("pca errors") {
    CHECK_THROWS_AS(pca_fit(make_data({{1, 1}, {1, 1}})), Error);
    const auto m = pca_fit(oracle::random_points(10, 2, 1));
    CHECK_THROWS_AS(pca_project(m, oracle::random_points(10, 2, 1), 3), Error);
}

}  // TEST_SUITE
