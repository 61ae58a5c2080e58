#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "thetarough/jacobi.hpp"
#include "thetarough/weyl.hpp"

namespace thetarough {

struct SampleSpec {
    std::uint64_t seed = 1;
    std::size_t count = 1000;
    double a = 0.0, b = 1.0;  // support of lambda
    // optional density on [a, b]; sampled by rejection below `density_bound`
    std::function<double(double)> density;
    double density_bound = 1.0;
    bool exhaustive = false;  // x_i = a + (b - a)(i + 1/2)/count instead of random draws
    std::size_t N = 4096;
    double alpha = 1.4142135623730951;
    double beta = 0.0;
};

// x for sample i; depends only on (seed, i)
double sample_x(const SampleSpec& spec, std::size_t i);

std::size_t default_threads();  // THETAROUGH_THREADS, else 1

// fixed chunks, results stored by index: output independent of `threads`
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

struct Report {
    std::string claim;
    std::map<std::string, double> parameters;
    double estimate = 0.0;
    double stderr_ = 0.0;
    double target = 0.0;
    double tolerance = 0.0;  // absolute unless noted in the claim
    bool pass = false;
};

struct WilsonInterval {
    double lo = 0.0, hi = 0.0;
};
WilsonInterval wilson_interval(std::size_t hits, std::size_t n, double z = 1.96);

struct TailRow {
    double R = 0.0;
    std::size_t exceed = 0;
    double frequency = 0.0;
    WilsonInterval ci;
    double target = 0.0;  // 6/pi^2 R^-6
    bool zero_count = false;
};

struct TailReport {
    std::size_t count = 0;
    std::vector<TailRow> rows;
    std::vector<Report> reports;  // relative tolerance 20%
};

double tail_law(double R);
TailReport mc_tails(const SampleSpec& spec, const std::vector<double>& Rs, std::size_t threads = 1,
                    double rel_tol = 0.2);

// E|X_N(1)|^2, E|X_N(1)|^4, E[X^1 X^2]
std::vector<Report> mc_moments(const SampleSpec& spec, std::size_t threads = 1);

struct Window {
    double s, t;
};
// E[D1 conj(D2)] real and imaginary parts against 0, E|D1|^2|D2|^2 against the product law
std::vector<Report> mc_increment_correlations(const SampleSpec& spec, Window w1, Window w2,
                                              std::size_t threads = 1);

struct EquidistReport {
    std::size_t count = 0;
    std::size_t mirror_failures = 0;
    std::size_t reduction_failures = 0;
    double max_mirror_defect = 0.0;
    std::vector<Report> reports;
};

// P(Im z' > a) against 3/(pi a); rel_tols[i] is the relative tolerance at levels[i]
EquidistReport equidistribution_experiment(const SampleSpec& spec, double tau, const std::vector<double>& levels,
                                           const std::vector<double>& rel_tols, std::size_t threads = 1);

struct HistogramBin {
    double left, right;
    std::size_t count;
};

struct LevyHistograms {
    std::vector<HistogramBin> im;  // Levy area = Im Theta2
    std::vector<HistogramBin> re;  // Re Theta2 = |X_N(1)|^2 / 2 - 1/2
    double max_re_identity_defect = 0.0;
    double skewness_im = 0.0;
    double skewness_se = 0.0;
    std::vector<Report> reports;
};

LevyHistograms levy_histograms(const SampleSpec& spec, std::size_t bins, std::size_t threads = 1);

struct MomentEstimate {
    double mean = 0.0;
    double se = 0.0;
};
MomentEstimate mean_and_se(const std::vector<double>& v);

}  // namespace thetarough
