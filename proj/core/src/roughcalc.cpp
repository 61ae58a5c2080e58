#include "thetarough/roughcalc.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace thetarough {

namespace {

Eigen::Vector2d ev(const Vec2& v) { return {v.v1, v.v2}; }

Eigen::Matrix2d em(const Mat2& m) {
    Eigen::Matrix2d r;
    r << m.m11, m.m12, m.m21, m.m22;
    return r;
}

std::vector<std::size_t> dyadic_strides(std::size_t span) {
    std::vector<std::size_t> s;
    for (std::size_t st = 1; st <= span && span % st == 0; st *= 2) s.push_back(st);
    return s;  // fine to coarse
}

void check_lift(const RoughLift& L) {
    if (L.size() < 2) throw std::invalid_argument("lift needs at least two grid points");
    if (L.level1.size() != L.size() || L.level2.size() != L.size())
        throw std::invalid_argument("lift storage inconsistent");
    // base-point storage encodes Chen only if the path starts at the origin
    if (L.level1[0].norm() != 0.0 || L.level2[0].max_abs() != 0.0)
        throw std::invalid_argument("lift is not Chen-valid: nonzero base point");
    for (std::size_t i = 0; i < L.size(); ++i)
        if (!std::isfinite(L.level1[i].v1) || !std::isfinite(L.level1[i].v2) ||
            !std::isfinite(L.level2[i].max_abs()))
            throw std::invalid_argument("lift is not Chen-valid: non-finite entries");
}

}  // namespace

double VectorField::derivative_check(const std::vector<Eigen::VectorXd>& points, double h) const {
    double worst = 0.0;
    for (const auto& p : points) {
        const auto D = Df(p);
        for (int b = 0; b < dim; ++b) {
            Eigen::VectorXd up = p, dn = p;
            up(b) += h;
            dn(b) -= h;
            const Eigen::MatrixXd fd = (f(up) - f(dn)) / (2.0 * h);
            for (int j = 0; j < 2; ++j)
                for (int a = 0; a < dim; ++a) worst = std::max(worst, std::abs(fd(a, j) - D[j](a, b)));
        }
    }
    return worst;
}

VectorField linear_field(int dim, double a1, double a2) {
    if (dim < 1) throw std::invalid_argument("linear_field: dim must be positive");
    VectorField vf;
    vf.dim = dim;
    vf.f = [a1, a2](const Eigen::VectorXd& y) {
        Eigen::MatrixXd F(y.size(), 2);
        F.col(0) = a1 * y;
        F.col(1) = a2 * y;
        return F;
    };
    vf.Df = [a1, a2, dim](const Eigen::VectorXd&) {
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);
        return std::array<Eigen::MatrixXd, 2>{a1 * I, a2 * I};
    };
    return vf;
}

VectorField tanh_field() {
    VectorField vf;
    vf.dim = 2;
    vf.f = [](const Eigen::VectorXd& y) {
        Eigen::MatrixXd F(2, 2);
        F << std::tanh(y(1)), 0.5, 0.5 * std::tanh(y(0)), std::tanh(y(0) - y(1));
        return F;
    };
    vf.Df = [](const Eigen::VectorXd& y) {
        auto sech2 = [](double u) { const double c = std::cosh(u); return 1.0 / (c * c); };
        Eigen::MatrixXd D0(2, 2), D1(2, 2);
        D0 << 0.0, sech2(y(1)), 0.5 * sech2(y(0)), 0.0;
        const double s = sech2(y(0) - y(1));
        D1 << 0.0, 0.0, s, -s;
        return std::array<Eigen::MatrixXd, 2>{D0, D1};
    };
    return vf;
}

YoungResult young_integral(const std::vector<double>& f, const std::vector<double>& g) {
    if (f.size() != g.size()) throw std::invalid_argument("young_integral: grids differ");
    if (f.size() < 2) throw std::invalid_argument("young_integral: need at least two points");
    const std::size_t n = f.size() - 1;
    YoungResult r;
    auto strides = dyadic_strides(n);
    for (auto it = strides.rbegin(); it != strides.rend(); ++it) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; k += *it) acc += f[k] * (g[k + *it] - g[k]);
        r.levels.push_back(acc);
    }
    r.value = r.levels.back();
    r.error = r.levels.size() > 1 ? std::abs(r.levels.back() - r.levels[r.levels.size() - 2]) : 0.0;
    return r;
}

RoughIntegralResult rough_integral(const ControlledPath& Z, const RoughLift& L, std::size_t i, std::size_t j) {
    if (Z.size() != L.size()) throw std::invalid_argument("rough_integral: grid mismatch");
    for (std::size_t k = 0; k < Z.size(); ++k)
        if (std::abs(Z.times[k] - L.times[k]) > 1e-12) throw std::invalid_argument("rough_integral: grid mismatch");
    if (i > j || j >= L.size()) throw std::out_of_range("rough_integral: bad index range");
    const Eigen::Index m = static_cast<Eigen::Index>(Z.dim());
    RoughIntegralResult r;
    if (i == j) {
        r.value = Eigen::MatrixXd::Zero(m, 2);
        r.levels.push_back(r.value);
        return r;
    }
    auto strides = dyadic_strides(j - i);
    for (auto it = strides.rbegin(); it != strides.rend(); ++it) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, 2);
        for (std::size_t u = i; u < j; u += *it) {
            const Increment2 inc = increment(L, u, u + *it);
            acc += Z.Y[u] * ev(inc.a).transpose() + Z.Yprime[u] * em(inc.A);
        }
        r.levels.push_back(acc);
    }
    r.value = r.levels.back();
    if (r.levels.size() > 1) r.cauchy = (r.levels.back() - r.levels[r.levels.size() - 2]).cwiseAbs().maxCoeff();
    return r;
}

RoughIntegralResult rough_integral(const ControlledPath& Z, const RoughLift& L, double s, double t) {
    return rough_integral(Z, L, L.index_of(s), L.index_of(t));
}

double remainder_seminorm(const ControlledPath& Z, const RoughLift& L, double gamma) {
    if (Z.size() != L.size()) throw std::invalid_argument("remainder_seminorm: grid mismatch");
    double best = 0.0;
    for (std::size_t a = 0; a + 1 < Z.size(); ++a) {
        for (std::size_t b = a + 1; b < Z.size(); ++b) {
            const Eigen::Vector2d X = ev(L.level1[b] - L.level1[a]);
            const double R = (Z.Y[b] - Z.Y[a] - Z.Yprime[a] * X).norm();
            best = std::max(best, R / std::pow(Z.times[b] - Z.times[a], 2.0 * gamma));
        }
    }
    return best;
}

namespace {

ControlledPath davie(const VectorField& vf, const Eigen::VectorXd& xi0, const RoughLift& L, std::size_t stride) {
    ControlledPath out;
    Eigen::VectorXd y = xi0;
    const Eigen::Index m = xi0.size();
    for (std::size_t k = 0; k < L.size(); k += stride) {
        const Eigen::MatrixXd F = vf.f(y);
        out.times.push_back(L.times[k]);
        out.Y.push_back(y);
        out.Yprime.push_back(F);
        if (k + stride >= L.size()) break;
        const Increment2 inc = increment(L, k, k + stride);
        const auto D = vf.Df(y);
        // (Df f)(y) XX: sum_{i,j} D_j f_{.,i} XX^{ij}
        Eigen::VectorXd corr = Eigen::VectorXd::Zero(m);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) corr += D[j] * F.col(i) * inc.A(i, j);
        y = y + F * ev(inc.a) + corr;
        if (!y.allFinite()) {
            std::ostringstream os;
            os << "rde_solve: blow-up at t=" << L.times[k + stride] << " |y_prev|=" << out.Y.back().norm();
            throw std::runtime_error(os.str());
        }
    }
    return out;
}

}  // namespace

RdeSolution rde_solve(const VectorField& vf, const Eigen::VectorXd& xi0, const RoughLift& L, std::size_t stride,
                      bool diagnostics) {
    check_lift(L);
    if (stride == 0) throw std::invalid_argument("rde_solve: stride must be positive");
    if (xi0.size() != vf.dim) throw std::invalid_argument("rde_solve: initial value has wrong dimension");
    if ((L.size() - 1) % stride != 0) throw std::invalid_argument("rde_solve: stride must divide the grid");
    RdeSolution sol;
    sol.path = davie(vf, xi0, L, stride);
    if (diagnostics && (L.size() - 1) % (2 * stride) == 0) {
        const ControlledPath coarse = davie(vf, xi0, L, 2 * stride);
        for (std::size_t k = 0; k < coarse.size(); ++k)
            sol.halving_difference = std::max(sol.halving_difference, (coarse.Y[k] - sol.path.Y[2 * k]).norm());
    }
    if (diagnostics && stride == 1 && L.size() <= 4097) sol.remainder = remainder_seminorm(sol.path, L, 0.45);
    return sol;
}

double path_holder(const std::vector<double>& times, const std::vector<Eigen::VectorXd>& Y, double gamma) {
    double best = 0.0;
    for (std::size_t a = 0; a + 1 < Y.size(); ++a)
        for (std::size_t b = a + 1; b < Y.size(); ++b)
            best = std::max(best, (Y[b] - Y[a]).norm() / std::pow(times[b] - times[a], gamma));
    return best;
}

ContinuityResult continuity_experiment(const VectorField& vf, const Eigen::VectorXd& xi1, const Eigen::VectorXd& xi2,
                                       const RoughLift& L1, const RoughLift& L2, double gamma) {
    ContinuityResult r;
    r.rho = rough_distance(L1, L2, gamma);
    r.xi_distance = (xi1 - xi2).norm();
    const RdeSolution s1 = rde_solve(vf, xi1, L1, 1, false);
    const RdeSolution s2 = rde_solve(vf, xi2, L2, 1, false);
    std::vector<Eigen::VectorXd> diff(s1.path.size());
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = s1.path.Y[k] - s2.path.Y[k];
    r.solution_distance = path_holder(s1.path.times, diff, gamma);
    const double denom = r.xi_distance + r.rho;
    r.ratio = denom > 0.0 ? r.solution_distance / denom : 0.0;
    return r;
}

}  // namespace thetarough
