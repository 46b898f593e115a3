#include <catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "ubo/lhs.hpp"
#include "ubo/rng.hpp"

namespace {

TEST_CASE("latin hypercube with a single point is a uniform draw in bounds") {
    ubo::Rng rng(3);
    const ubo::Mat design = ubo::latin_hypercube(1, 4, rng);
    REQUIRE(design.rows() == 1);
    REQUIRE(design.cols() == 4);
    for (Eigen::Index k = 0; k < 4; ++k) {
        REQUIRE(design(0, k) >= 0.0);
        REQUIRE(design(0, k) < 1.0);
    }
}

TEST_CASE("latin hypercube stratifies each dimension: p=4, d=1") {
    ubo::Rng rng(17);
    const ubo::Mat design = ubo::latin_hypercube(4, 1, rng);
    std::vector<double> xs(4);
    for (int i = 0; i < 4; ++i) xs[static_cast<std::size_t>(i)] = design(i, 0);
    std::sort(xs.begin(), xs.end());
    for (int j = 0; j < 4; ++j) {
        REQUIRE(xs[static_cast<std::size_t>(j)] >= j / 4.0);
        REQUIRE(xs[static_cast<std::size_t>(j)] < (j + 1) / 4.0);
    }
}

TEST_CASE("latin hypercube per-dimension histogram is all ones: p=10, d=2") {
    ubo::Rng rng(99);
    const ubo::Mat design = ubo::latin_hypercube(10, 2, rng);
    for (Eigen::Index k = 0; k < 2; ++k) {
        std::vector<int> bins(10, 0);
        for (Eigen::Index i = 0; i < 10; ++i) {
            const auto b = static_cast<std::size_t>(design(i, k) * 10.0);
            REQUIRE(b < 10);
            ++bins[b];
        }
        for (const int c : bins) REQUIRE(c == 1);
    }
}

TEST_CASE("latin hypercube stratification holds for larger designs") {
    ubo::Rng rng(2024);
    const int p = 37;
    const ubo::Mat design = ubo::latin_hypercube(p, 3, rng);
    for (Eigen::Index k = 0; k < 3; ++k) {
        std::vector<int> bins(static_cast<std::size_t>(p), 0);
        for (Eigen::Index i = 0; i < p; ++i) {
            REQUIRE(design(i, k) >= 0.0);
            REQUIRE(design(i, k) < 1.0);
            ++bins[static_cast<std::size_t>(design(i, k) * p)];
        }
        for (const int c : bins) REQUIRE(c == 1);
    }
}

TEST_CASE("latin hypercube is reproducible from the seed") {
    ubo::Rng a(5), b(5), c(6);
    const ubo::Mat d1 = ubo::latin_hypercube(8, 2, a);
    const ubo::Mat d2 = ubo::latin_hypercube(8, 2, b);
    const ubo::Mat d3 = ubo::latin_hypercube(8, 2, c);
    REQUIRE(d1 == d2);
    REQUIRE(d1 != d3);
}

}  // namespace
