#include "thetarough/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace thetarough {

namespace {
void require_scalar(const TensorElement& u, double a, const char* what) {
    if (std::abs(u.a - a) > 1e-12) throw std::domain_error(what);
}
}  // namespace

TensorElement tensor_mul(const TensorElement& u, const TensorElement& v) {
    return {u.a * v.a, u.a * v.b + v.a * u.b, u.a * v.c + v.a * u.c + outer(u.b, v.b)};
}

TensorElement tensor_inverse(const TensorElement& g) {
    require_scalar(g, 1.0, "inverse defined for group elements (a = 1)");
    return {1.0, -g.b, -g.c + outer(g.b, g.b)};
}

TensorElement tensor_exp(const TensorElement& u) {
    require_scalar(u, 0.0, "exp defined for a = 0");
    return {1.0, u.b, u.c + 0.5 * outer(u.b, u.b)};
}

TensorElement tensor_log(const TensorElement& g) {
    require_scalar(g, 1.0, "log defined for a = 1");
    return {0.0, g.b, g.c - 0.5 * outer(g.b, g.b)};
}

double homogeneous_norm(const TensorElement& g) {
    const TensorElement l = tensor_log(g);
    return l.b.norm() + std::sqrt(l.c.frobenius());
}

double inhomogeneous_distance(const TensorElement& g, const TensorElement& h) {
    return (g.b - h.b).norm() + (g.c - h.c).frobenius();
}

TensorElement signature(const std::vector<Vec2>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("signature needs at least 2 samples");
    TensorElement s = TensorElement::unit();
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const Vec2 d = samples[i] - samples[i - 1];
        s.c += outer(s.b, d) + 0.5 * outer(d, d);
        s.b += d;
    }
    return s;
}

double max_abs_diff(const TensorElement& u, const TensorElement& v) {
    double m = std::abs(u.a - v.a);
    m = std::max(m, std::abs(u.b.v1 - v.b.v1));
    m = std::max(m, std::abs(u.b.v2 - v.b.v2));
    return std::max(m, (u.c - v.c).max_abs());
}

}  // namespace thetarough
