#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "thetarough/linalg.hpp"
#include "thetarough/weyl.hpp"

namespace thetarough {

struct Increment2 {
    Vec2 a;  // X_{s,t}
    Mat2 A;  // XX_{s,t}
};

// Base-point storage: level1[i] = X_{0,t_i}, level2[i] = XX_{0,t_i}.
// Increments are derived through Chen, so Chen holds by construction.
struct RoughLift {
    std::vector<double> times;
    std::vector<Vec2> level1;
    std::vector<Mat2> level2;

    std::size_t size() const { return times.size(); }
    std::size_t index_of(double t) const;  // throws if t is not a grid time

    static RoughLift from_grid(const IteratedIntegralGrid& g);
    static RoughLift from_walk(const WeylWalk& w);
    // piecewise-linear interpolation of samples, exact Riemann-Stieltjes level 2
    static RoughLift from_polyline(const std::vector<double>& times, const std::vector<Vec2>& points);
};

Increment2 increment(const RoughLift& L, std::size_t i, std::size_t j);
Increment2 increment(const RoughLift& L, double s, double t);

Mat2 chen_defect(const Increment2& su, const Increment2& ut, const Increment2& st);
Mat2 geometric_defect(const Increment2& inc);

struct HolderSeminorms {
    double level1 = 0.0;       // ||X||_gamma
    double level2 = 0.0;       // ||XX||_{2 gamma}
    double homogeneous = 0.0;  // ||X||_gamma + sqrt(||XX||_{2 gamma})
};

HolderSeminorms holder_seminorms(const RoughLift& L, double gamma);

// inhomogeneous rough path distance on a common grid
double rough_distance(const RoughLift& L1, const RoughLift& L2, double gamma);

void write_csv(std::ostream& os, const RoughLift& L);
RoughLift read_csv(std::istream& is);

}  // namespace thetarough
