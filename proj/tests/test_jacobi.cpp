#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "thetarough/jacobi.hpp"

using namespace thetarough;

namespace {

GroupElement random_element(std::mt19937_64& eng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    return {2.0 * U(eng), std::exp(2.0 * U(eng)), 4.0 * U(eng), 3.0 * U(eng), 3.0 * U(eng), 3.0 * U(eng)};
}

}  // namespace

TEST_CASE("group law") {
    std::mt19937_64 eng(1);
    const GroupElement g = random_element(eng);
    CHECK(coordinate_distance(group_mul(g, GroupElement::identity()), g) < 1e-14);
    CHECK(coordinate_distance(group_mul(GroupElement::identity(), g), g) < 1e-14);
    CHECK(coordinate_distance(group_mul(g, group_inverse(g)), GroupElement::identity()) < 1e-12);
    CHECK(coordinate_distance(group_mul(group_inverse(g), g), GroupElement::identity()) < 1e-12);
    for (int r = 0; r < 100; ++r) {
        const GroupElement a = random_element(eng), b = random_element(eng), c = random_element(eng);
        CHECK(coordinate_distance(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c))) < 1e-9);
    }
    const GroupElement h = group_mul(heisenberg(1.0, 0.0, 0.0), heisenberg(0.0, 1.0, 0.0));
    CHECK(h.zeta == doctest::Approx(0.5));
    // the SL2 part is a homomorphism
    const GroupElement a = random_element(eng), b = random_element(eng);
    const Mat2 d = sl2_matrix(group_mul(a, b)) - sl2_matrix(a) * sl2_matrix(b);
    CHECK(d.max_abs() < 1e-12);
}

TEST_CASE("flows") {
    std::mt19937_64 eng(2);
    const GroupElement g{0.3, 2.0, 0.0, 0.1, -0.4, 0.2};
    CHECK(geodesic(g, 0.7).y == doctest::Approx(2.0 * std::exp(-0.7)));
    CHECK(coordinate_distance(geodesic(geodesic(g, 0.4), 0.9), geodesic(g, 1.3)) < 1e-13);
    CHECK(coordinate_distance(geodesic(g, 0.0), g) < 1e-15);
    CHECK(coordinate_distance(horocycle(g, 0.0), g) < 1e-15);
    const double N = 64.0;
    const GroupElement h = geodesic(horocycle(GroupElement::identity(), 0.37), 2.0 * std::log(N));
    CHECK(coordinate_distance(h, {0.37, 1.0 / (N * N), 0.0, 0.0, 0.0, 0.0}) < 1e-14);
    const GroupElement r = random_element(eng);
    CHECK(coordinate_distance(geodesic(geodesic(r, -0.5), 0.5), r) < 1e-12);
}

TEST_CASE("generators and words") {
    CHECK_THROWS_AS(generator(6), std::invalid_argument);
    for (int k = 1; k <= 5; ++k) {
        CHECK(coordinate_distance(generator_power(k, 3), group_mul(generator(k), group_mul(generator(k), generator(k)))) < 1e-13);
        CHECK(coordinate_distance(group_mul(generator_power(k, -2), generator_power(k, 2)), GroupElement::identity()) < 1e-12);
    }
    // gamma_1 acts as z -> -1/z
    const GroupElement g{0.2, 0.5, 0.0, 0.0, 0.0, 0.0};
    const cplx z = group_mul(generator(1), g).z();
    CHECK(std::abs(z + 1.0 / g.z()) < 1e-14);
    Gamma5Word w;
    w.letters = {{2, 3}, {1, -1}, {4, 2}};
    CHECK(w.to_string() == "g2^3 g1^-1 g4^2");
    const GroupElement x{0.1, 0.7, 0.3, 0.2, 0.1, 0.0};
    const GroupElement ref = group_mul(generator_power(2, 3), group_mul(generator_power(1, -1), group_mul(generator_power(4, 2), x)));
    CHECK(coordinate_distance(apply_word(w, x), ref) < 1e-12);
}

TEST_CASE("reduction") {
    const GroupElement top{0.0, 2.0, 0.0, 0.0, 0.0, 0.0};
    const Reduction r0 = reduce(top);
    CHECK(r0.word.empty());
    CHECK(coordinate_distance(r0.reduced, top) == 0.0);

    const Reduction r1 = reduce({0.3, 0.1, 0.0, 0.0, 0.0, 0.0});
    const cplx o = oracle::sl2z_reduce({0.3, 0.1});
    CHECK(std::abs(r1.reduced.z() - o) < 1e-12);
    CHECK(std::norm(r1.reduced.z()) >= 1.0);
    CHECK(in_fundamental_domain(r1.reduced, 1e-12));

    std::mt19937_64 eng(7);
    for (int r = 0; r < 1000; ++r) {
        GroupElement g = random_element(eng);
        g.y *= 0.05;
        const Reduction red = reduce(g);
        CHECK(in_fundamental_domain(red.reduced, 1e-12));
        CHECK(coordinate_distance(apply_word(red.word, red.reduced), g) < 1e-9);
        CHECK(std::abs(red.reduced.z() - oracle::sl2z_reduce(g.z())) < 1e-9);
        CHECK(coordinate_distance(reduce(mirror(g)).reduced, mirror(red.reduced)) < 1e-9);
    }
    CHECK_THROWS_AS(reduce({0.0, -1.0, 0.0, 0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("height function") {
    CHECK(height_H(0.0, 5.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    CHECK(height_H(0.0, 2.0) == doctest::Approx(oracle::height(0.0, 2.0, 20)).epsilon(1e-15));
    for (double x : {0.1, 0.37, -0.25})
        for (double y : {0.05, 0.3, 1.2}) {
            CHECK(height_H(x + 1.0, y) == doctest::Approx(height_H(x, y)).epsilon(1e-12));
            CHECK(height_H(x, y) == doctest::Approx(oracle::height(x, y, 40)).epsilon(1e-12));
        }
    CHECK_THROWS_AS(height_H(0.0, 0.0), std::domain_error);
}
