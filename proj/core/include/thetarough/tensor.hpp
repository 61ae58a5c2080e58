#pragma once

#include <vector>

#include "thetarough/linalg.hpp"

namespace thetarough {

// (a, b, c) in R + R^2 + R^{2x2}, truncated at level 2
struct TensorElement {
    double a = 0.0;
    Vec2 b;
    Mat2 c;

    static TensorElement unit() { return {1.0, {}, {}}; }
};

TensorElement tensor_mul(const TensorElement& u, const TensorElement& v);
TensorElement tensor_inverse(const TensorElement& g);  // requires a = 1
TensorElement tensor_exp(const TensorElement& u);      // requires a = 0
TensorElement tensor_log(const TensorElement& g);      // requires a = 1

// |b| + sqrt(|log(g).c|); equivalent to the Carnot-Caratheodory norm
double homogeneous_norm(const TensorElement& g);
// |b - b'| + |c - c'|
double inhomogeneous_distance(const TensorElement& g, const TensorElement& h);

// samples joined by straight segments; level 2 exact per segment
TensorElement signature(const std::vector<Vec2>& samples);

double max_abs_diff(const TensorElement& u, const TensorElement& v);

}  // namespace thetarough
