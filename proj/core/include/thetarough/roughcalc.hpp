#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "thetarough/roughpath.hpp"

namespace thetarough {

struct ControlledPath {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> Y;
    std::vector<Eigen::MatrixXd> Yprime;  // m x 2

    std::size_t size() const { return times.size(); }
    std::size_t dim() const { return Y.empty() ? 0 : static_cast<std::size_t>(Y.front().size()); }
};

// f: R^m -> R^{m x 2}; Df returns the two m x m Jacobians of the columns of f
struct VectorField {
    int dim = 1;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> f;
    std::function<std::array<Eigen::MatrixXd, 2>(const Eigen::VectorXd&)> Df;
    std::function<std::array<std::vector<Eigen::MatrixXd>, 2>(const Eigen::VectorXd&)> D2f;  // optional

    // max |Df - central difference of f| over the points
    double derivative_check(const std::vector<Eigen::VectorXd>& points, double h = 1e-6) const;
};

// f(Y) = [a1 Y, a2 Y] on R^dim
VectorField linear_field(int dim, double a1, double a2);
// bounded with bounded derivatives on R^2:
// f_1(y) = (tanh y2, tanh(y1) / 2), f_2(y) = (1/2, tanh(y1 - y2))
VectorField tanh_field();

struct YoungResult {
    double value = 0.0;
    double error = 0.0;  // difference of the two finest levels
    std::vector<double> levels;  // coarse to fine
};

// left-point sums over dyadic sub-partitions of a common grid
YoungResult young_integral(const std::vector<double>& f, const std::vector<double>& g);

struct RoughIntegralResult {
    Eigen::MatrixXd value;  // m x 2: int Y (x) dX
    double cauchy = 0.0;    // max-entry difference of the two finest levels
    std::vector<Eigen::MatrixXd> levels;
};

RoughIntegralResult rough_integral(const ControlledPath& Z, const RoughLift& L, std::size_t i, std::size_t j);
RoughIntegralResult rough_integral(const ControlledPath& Z, const RoughLift& L, double s, double t);

// sup over grid pairs of |Y_t - Y_s - Y'_s X_{s,t}| / |t-s|^{2 gamma}
double remainder_seminorm(const ControlledPath& Z, const RoughLift& L, double gamma);

struct RdeSolution {
    ControlledPath path;
    double halving_difference = 0.0;  // max |Y_h - Y_{2h}| on the common points
    double remainder = 0.0;           // 2 gamma remainder seminorm at gamma = 0.45
};

// Davie step on the lift grid, using every `stride`-th grid point
RdeSolution rde_solve(const VectorField& vf, const Eigen::VectorXd& xi0, const RoughLift& L,
                      std::size_t stride = 1, bool diagnostics = true);

struct ContinuityResult {
    double rho = 0.0;                // inhomogeneous rough distance of the lifts
    double xi_distance = 0.0;
    double solution_distance = 0.0;  // gamma-Holder seminorm of Y1 - Y2
    double ratio = 0.0;              // solution_distance / (xi_distance + rho)
};

ContinuityResult continuity_experiment(const VectorField& vf, const Eigen::VectorXd& xi1,
                                       const Eigen::VectorXd& xi2, const RoughLift& L1,
                                       const RoughLift& L2, double gamma);

// Holder seminorm of a sampled R^m path
double path_holder(const std::vector<double>& times, const std::vector<Eigen::VectorXd>& Y, double gamma);

}  // namespace thetarough
