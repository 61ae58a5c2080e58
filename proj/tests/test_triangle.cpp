#include <doctest.h>

#include <random>
#include <stdexcept>

#include "thetarough/triangle.hpp"

using namespace thetarough;

TEST_CASE("smooth step") {
    CHECK(f0_default(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f0_default(-1.0) == 0.0);
    CHECK(f0_default(0.0) == 0.0);
    CHECK(f0_default(2.0) == 1.0);
    CHECK(f0_default(1.0) == 1.0);
    CHECK(std::abs(f0_default(0.3) + f0_default(0.7) - 1.0) < 1e-15);
}

TEST_CASE("bumps") {
    CHECK(bump(kCornerSpec, kCornerSpec.c2) == 1.0);
    CHECK(bump(kCornerSpec, 0.05) == 0.0);
    CHECK(bump(kCornerSpec, 1.0 / 12.0) == 0.0);
    CHECK(bump(kCornerSpec, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(BumpSpec(0.3, 0.2, 0.5), std::invalid_argument);
    CHECK(kCornerSpec.geometric());
    CHECK(kLineSpec.geometric());
    CHECK(kDeltaSpec.geometric());
}

TEST_CASE("stacked bumps") {
    CHECK(stacked(kCornerSpec, 0.1) == 1.0);
    CHECK(stacked(kCornerSpec, 0.0) == 0.0);
    CHECK(stacked(kCornerSpec, -0.2) == 0.0);
    CHECK(stacked(kCornerSpec, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(stacked(kCornerSpec, 0.4) == 0.0);
    // closed form agrees with the defining series
    for (double x : {1e-4, 0.01, 0.07, 0.09, 0.12, 0.2, 0.3}) {
        const double p = kCornerSpec.p();
        double s = 0.0;
        for (int j = 0; j < 200; ++j) s += bump(kCornerSpec, std::pow(p, j) * x);
        CHECK(stacked(kCornerSpec, x) == doctest::Approx(s).epsilon(1e-14));
    }
    const BumpSpec odd(0.1, 0.2, 0.5);
    CHECK_FALSE(odd.geometric());
    for (double x : {0.01, 0.15, 0.3, 0.45}) {
        double s = 0.0;
        for (int j = 0; j < 200; ++j) s += bump(odd, std::pow(odd.p(), j) * x);
        CHECK(stacked(odd, x) == doctest::Approx(s).epsilon(1e-14));
    }
}

TEST_CASE("pieces") {
    CHECK(t_line(0.5, 0.05) == 1.0);
    CHECK(t_segm(0.5, 0.05) == 1.0);
    CHECK(t_segm(0.49, 0.05) == 0.0);
    CHECK(piece_eval(PieceTag::C01, 0.1, 0.9) == 1.0);
    CHECK(t_cor(0.1, 0.1) == 1.0);
    for (PieceTag t : kAllPieces) {
        CHECK(piece_eval(t, 2.0, 3.0) == 0.0);
        CHECK(tag_from_name(tag_name(t)) == t);
    }
    CHECK_THROWS_AS(tag_from_name("nope"), std::invalid_argument);
}

TEST_CASE("partition") {
    CHECK(partition_defect(0.5, 0.9) == 0.0);
    for (PieceTag t : kAllPieces) CHECK(piece_eval(t, 0.9, 0.1) == 0.0);
    CHECK(triangle_half_open(0.0, 1.0, 0.9, 0.1) == 0.0);
    CHECK(partition_defect(0.9, 0.1) == 0.0);
    CHECK(six_piece_sum(0.5, 0.9995) == 1.0);
    CHECK(partition_defect(0.3, 1.0) == 0.0);
    CHECK(partition_defect(0.5, 1.0) == 0.0);
    CHECK(partition_defect(0.5, 0.75) == 0.0);

    std::mt19937_64 eng(19);
    std::uniform_real_distribution<double> U(-0.5, 1.5);
    for (int r = 0; r < 2000; ++r) CHECK(std::abs(partition_defect(U(eng), U(eng))) < 1e-12);
}

TEST_CASE("smooth remainder") {
    CHECK(piece_eval(PieceTag::Smooth, -0.2, 0.5) == 0.0);
    CHECK(piece_eval(PieceTag::Smooth, 0.5, 0.9995) == 0.0);
    const double b = piece_eval(PieceTag::Smooth, 1.0 / 3.0, 2.0 / 3.0);
    CHECK(b == doctest::Approx(1.0 - six_piece_sum(1.0 / 3.0, 2.0 / 3.0)));
    const RegularityReport r = smooth_remainder_regularity(60);
    CHECK(r.finite);
    CHECK(r.points > 100);
    CHECK(r.max_value <= 1.0 + 1e-12);
}
