#pragma once

#include <cstddef>
#include <vector>

#include "thetarough/linalg.hpp"

namespace thetarough {

struct WeylParams {
    double x = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

// z[k-1] holds z_k; prefix[k] holds S_k.
struct WeylWalk {
    WeylParams params;
    std::size_t N = 0;
    std::vector<cplx> z;
    std::vector<cplx> prefix;
    std::vector<double> phase;  // theta_k mod 1, same indexing as z

    cplx zk(std::size_t k) const { return z[k - 1]; }
    double scale() const;  // N^{-1/2}
};

struct WindowSums {
    std::size_t m = 0, n = 0;
    cplx J, I, M, L, Hplus, Hminus;
    Mat2 A;
    Mat2 B;  // symmetric, B.m12 == B.m21
};

// Grid data of the lift: X_N(k/N) and XX_N(0, k/N).
struct IteratedIntegralGrid {
    std::size_t N = 0;
    std::vector<Vec2> level1;
    std::vector<Mat2> level2;
};

struct DoubleAngleReport {
    double defect11 = 0.0, defect12 = 0.0, defect22 = 0.0;
    double max_defect() const;
};

struct HolderEstimate {
    double value = 0.0;
    bool exact = true;  // false: subsampled pairs, value is a lower bound
};

cplx eval_increment(std::size_t k, const WeylParams& p);
WeylWalk build_walk(const WeylParams& p, std::size_t N);
// S_N by the same recurrence as build_walk, without storing the walk
cplx theta_sum(const WeylParams& p, std::size_t N);

Vec2 path_value(const WeylWalk& w, double t);
WindowSums window_sums(const WeylWalk& w, std::size_t m, std::size_t n);
Mat2 iterated_integral_grid(const WeylWalk& w, std::size_t m, std::size_t n);
Mat2 iterated_integral_continuous(const WeylWalk& w, double s, double t);
double levy_area(const WeylWalk& w, std::size_t m, std::size_t n);
DoubleAngleReport double_angle_checks(const WeylWalk& w, std::size_t m, std::size_t n);

IteratedIntegralGrid lift_grid(const WeylWalk& w);

// sum_{k <= floor(tN)} |Delta X_k|^2
double quadratic_variation(const WeylWalk& w, double t);
// (sum_k |Delta X_k|^p)^{1/p} over the uniform partition
double uniform_pvariation(const WeylWalk& w, double p);
// sup over grid pairs of |X_{s,t}| / |t-s|^gamma
HolderEstimate grid_holder_norm(const WeylWalk& w, double gamma, std::size_t exact_limit = 4096);

}  // namespace thetarough
