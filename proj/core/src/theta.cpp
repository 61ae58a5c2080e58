#include "thetarough/theta.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "thetarough/triangle.hpp"

namespace thetarough {

namespace {

constexpr double kPi = std::numbers::pi;

// e(t) with the argument reduced in extended precision
cplx expi2pi_ld(long double t) {
    const long double r = t - std::floor(t);
    const double a = static_cast<double>(2.0L * std::numbers::pi_v<long double> * r);
    return {std::cos(a), std::sin(a)};
}

bool phi_is_zero(double phi) { return std::abs(phi) <= 1e-12; }

cplx lattice_phase(double n, const GroupElement& g) {
    const long double d = static_cast<long double>(n) - g.xi2;
    return expi2pi_ld(0.5L * d * d * static_cast<long double>(g.x) +
                      static_cast<long double>(n) * static_cast<long double>(g.xi1));
}

cplx prefactor(const GroupElement& g) {
    return std::pow(g.y, 0.25) * expi2pi_ld(static_cast<long double>(g.zeta) -
                                            0.5L * static_cast<long double>(g.xi1) * g.xi2);
}

double estimate_delta_kappa(const RegularFunction& f) {
    double k = 0.0;
    auto weight = [&](double w) { return std::pow(1.0 + w * w, 0.5 * f.eta); };
    for (int i = 0; i <= 256; ++i) {
        const double w = -1.0 + 2.0 * i / 256.0;
        k = std::max(k, std::abs(f.f(w)) * weight(w));
    }
    for (int a = 0; a < 8; ++a) {
        const double phi = (a + 0.5) * kPi / 8.0;
        for (int i = 0; i <= 128; ++i) {
            const double w = -16.0 + 0.25 * i;
            k = std::max(k, std::abs(phi_transform(f, phi, w)) * weight(w));
        }
    }
    return 2.0 * k;  // safety margin over the sampled supremum
}

}  // namespace

RegularFunction RegularFunction::gaussian(TransformStrategy s) {
    RegularFunction r;
    r.name = "gaussian";
    r.f = [](double w) { return std::exp(-kPi * w * w); };
    // |f_phi| = |f|; sup exp(-pi w^2)(1+w^2)^{eta/2} is attained at 1 + w^2 = eta/(2 pi)
    r.eta = 40.0;
    const double u = r.eta / (2.0 * kPi);
    r.kappa = std::exp(-kPi * (u - 1.0) + 0.5 * r.eta * std::log(u)) * (1.0 + 1e-12);
    r.strategy = s;
    r.support_lo = -8.0;
    r.support_hi = 8.0;
    r.compact = false;
    return r;
}

RegularFunction RegularFunction::delta(bool reflected) {
    RegularFunction r;
    r.name = reflected ? "delta_minus" : "delta";
    if (reflected) {
        r.f = [](double w) { return delta_bump(-w); };
        r.support_lo = -kDeltaSpec.c3;
        r.support_hi = -kDeltaSpec.c1;
    } else {
        r.f = [](double w) { return delta_bump(w); };
        r.support_lo = kDeltaSpec.c1;
        r.support_hi = kDeltaSpec.c3;
    }
    r.compact = true;
    r.eta = 6.0;
    r.strategy = TransformStrategy::Quadrature;
    r.kappa = estimate_delta_kappa(r);
    return r;
}

int sigma_phi(double phi) {
    const double q = phi / kPi;
    const double nr = std::round(q);
    if (std::abs(phi - nr * kPi) <= 1e-12) return static_cast<int>(2 * nr);
    return static_cast<int>(2 * std::floor(q) + 1);
}

PhiTransformResult phi_transform_report(const RegularFunction& f, double phi, double w) {
    PhiTransformResult res;
    if (f.strategy == TransformStrategy::GaussianClosedForm) {
        res.value = std::polar(f.f(w), -0.5 * phi);
        return res;
    }
    const int sigma = sigma_phi(phi);
    const double s = std::sin(phi);
    if (sigma % 2 == 0 || std::abs(s) < 1e-3) {
        // phi = nu pi (or within the stationary-phase band)
        const long nu = static_cast<long>(std::llround(phi / kPi));
        const double sgn = (nu % 2 == 0) ? 1.0 : -1.0;
        res.value = expi2pi(-static_cast<double>(2 * nu) / 8.0) * f.f(sgn * w);
        res.stationary_phase = (sigma % 2 != 0);
        return res;
    }
    const double c = std::cos(phi);
    // the w^2 term is constant in w' and leaves the integral as a unit factor
    auto kernel_phase = [&](double wp) { return (0.5 * wp * c - w) * wp / s; };
    auto re = [&](double wp) {
        const double v = f.f(wp);
        return v == 0.0 ? 0.0 : v * std::cos(2.0 * kPi * frac(kernel_phase(wp)));
    };
    auto im = [&](double wp) {
        const double v = f.f(wp);
        return v == 0.0 ? 0.0 : v * std::sin(2.0 * kPi * frac(kernel_phase(wp)));
    };
    // panels of at most one period of the chirp (and at most 1/32 wide)
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double a = f.support_lo, b = f.support_hi;
    const double freq = (std::max(std::abs(a), std::abs(b)) * std::abs(c) + std::abs(w)) / std::abs(s);
    const double width = std::min(1.0 / 32.0, 1.0 / std::max(freq, 1.0));
    const auto panels = static_cast<std::size_t>(std::ceil((b - a) / width));
    const double h = (b - a) / static_cast<double>(panels);
    double ir = 0.0, ii = 0.0, e1 = 0.0, e2 = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
        const double lo = a + h * static_cast<double>(k);
        const double hi = k + 1 == panels ? b : lo + h;
        double pe = 0.0;
        ir += GK::integrate(re, lo, hi, 0, 0.0, &pe);
        e1 += pe;
        ii += GK::integrate(im, lo, hi, 0, 0.0, &pe);
        e2 += pe;
    }
    const double scale = 1.0 / std::sqrt(std::abs(s));
    res.value = expi2pi(0.5 * w * w * c / s - static_cast<double>(sigma) / 8.0) * scale * cplx(ir, ii);
    res.error = scale * std::hypot(e1, e2);
    if (res.error > 1e-6) throw std::runtime_error("phi_transform: quadrature did not converge, residual " +
                                                   std::to_string(res.error));
    return res;
}

cplx phi_transform(const RegularFunction& f, double phi, double w) {
    return phi_transform_report(f, phi, w).value;
}

ThetaResult theta_regular_report(const RegularFunction& f, const GroupElement& g, double tail_eps) {
    if (!(f.eta > 1.0)) throw std::invalid_argument("theta_regular needs eta > 1");
    if (!(g.y > 0.0)) throw std::invalid_argument("theta_regular needs y > 0");
    ThetaResult res;
    const double sy = std::sqrt(g.y);
    const double y4 = std::pow(g.y, 0.25);
    double lo_w, hi_w;

    const int sigma = sigma_phi(g.phi);
    const bool exact_support = f.compact && sigma % 2 == 0 && f.strategy == TransformStrategy::Quadrature;
    if (exact_support) {
        const bool flip = (sigma / 2) % 2 != 0;
        lo_w = flip ? -f.support_hi : f.support_lo;
        hi_w = flip ? -f.support_lo : f.support_hi;
    } else {
        // tail of sum_{|n - xi2| sqrt(y) > W} kappa (1 + w^2)^{-eta/2}
        auto bound = [&](double W) {
            return 2.0 * y4 * f.kappa *
                   (std::pow(1.0 + W * W, -0.5 * f.eta) + std::pow(W, 1.0 - f.eta) / ((f.eta - 1.0) * sy));
        };
        double W = 1.0;
        while (bound(W) > tail_eps) {
            W *= 1.25;
            if (W > 1e9) throw std::runtime_error("theta_regular: tail cannot be certified");
        }
        res.tail_bound = bound(W);
        lo_w = -W;
        hi_w = W;
    }
    const double n_lo = std::ceil(g.xi2 + lo_w / sy);
    const double n_hi = std::floor(g.xi2 + hi_w / sy);
    if (n_hi - n_lo > 5e7) throw std::runtime_error("theta_regular: lattice window too large");
    cplx acc{};
    for (double n = n_lo; n <= n_hi; n += 1.0) {
        const double w = (n - g.xi2) * sy;
        const cplx fv = phi_transform(f, g.phi, w);
        if (fv == cplx{}) continue;
        acc += fv * lattice_phase(n, g);
        ++res.terms;
    }
    res.value = prefactor(g) * acc;
    return res;
}

cplx theta_regular(const RegularFunction& f, const GroupElement& g, double tail_eps) {
    return theta_regular_report(f, g, tail_eps).value;
}

cplx theta_indicator(double s, double t, const GroupElement& g) {
    if (!phi_is_zero(g.phi)) throw std::domain_error("theta_indicator requires phi = 0");
    if (!(s <= t)) throw std::invalid_argument("theta_indicator requires s <= t");
    const double sy = std::sqrt(g.y);
    const double n_lo = std::floor(g.xi2 + s / sy);
    const double n_hi = std::ceil(g.xi2 + t / sy);
    cplx acc{};
    for (double n = n_lo; n <= n_hi; n += 1.0) {
        const double w = (n - g.xi2) * sy;
        if (w > s && w <= t) acc += lattice_phase(n, g);
    }
    return prefactor(g) * acc;
}

ChiSeriesResult theta_chi_series(const GroupElement& g, double s_flow, int j_max) {
    if (j_max < 0) throw std::invalid_argument("theta_chi_series needs j_max >= 0");
    static const RegularFunction D = RegularFunction::delta(false);
    static const RegularFunction Dm = RegularFunction::delta(true);
    // chi(w) = sum_j Delta(2^j w) + Delta_-(2^j (w - 1)); the unit shift acts at the flowed point
    const GroupElement base = geodesic(g, s_flow);
    const GroupElement shifted = group_mul(base, heisenberg(0.0, 1.0, 0.0));
    ChiSeriesResult res;
    for (int j = 0; j <= j_max; ++j) {
        const double back = -j * std::log(4.0);
        const double wgt = std::pow(2.0, -0.5 * j);
        const cplx a = wgt * theta_regular(D, geodesic(base, back), 1e-12);
        const cplx b = wgt * theta_regular(Dm, geodesic(shifted, back), 1e-12);
        res.value += a + b;
        if (j == j_max) res.last_term = std::abs(a) + std::abs(b);
    }
    return res;
}

cplx theta2_direct(const PlaneFunction& F, const GroupElement& g1, const GroupElement& g2) {
    if (!phi_is_zero(g1.phi) || !phi_is_zero(g2.phi)) throw std::domain_error("theta2_direct requires phi = 0");
    const Box2& b = F.support;
    if (!std::isfinite(b.lo1) || !std::isfinite(b.hi1) || !std::isfinite(b.lo2) || !std::isfinite(b.hi2))
        throw std::invalid_argument("theta2_direct requires bounded support");

    struct Axis {
        std::vector<double> w;
        std::vector<cplx> ph;
    };
    auto axis = [](const GroupElement& g, double lo, double hi) {
        Axis a;
        const double sy = std::sqrt(g.y);
        const double n_lo = std::floor(g.xi2 + lo / sy) - 1.0;
        const double n_hi = std::ceil(g.xi2 + hi / sy) + 1.0;
        if (n_hi - n_lo > 1e6) throw std::invalid_argument("theta2_direct: lattice window too large");
        for (double n = n_lo; n <= n_hi; n += 1.0) {
            const double w = (n - g.xi2) * sy;
            if (w < lo || w > hi) continue;
            a.w.push_back(w);
            a.ph.push_back(lattice_phase(n, g));
        }
        return a;
    };
    const Axis a1 = axis(g1, b.lo1, b.hi1);
    const Axis a2 = axis(g2, b.lo2, b.hi2);
    cplx acc{};
    for (std::size_t i = 0; i < a1.w.size(); ++i) {
        cplx row{};
        for (std::size_t j = 0; j < a2.w.size(); ++j) {
            const double v = F.F(a1.w[i], a2.w[j]);
            if (v != 0.0) row += v * a2.ph[j];
        }
        acc += a1.ph[i] * row;
    }
    return prefactor(g1) * prefactor(g2) * acc;
}

PlaneFunction triangle_function(double s, double t) {
    if (!(s < t)) throw std::invalid_argument("triangle needs s < t");
    return {[s, t](double w1, double w2) { return triangle_half_open(s, t, w1, w2); }, {s, t, s, t}};
}

GroupElement horocycle_lift(const WeylParams& p, std::size_t N) {
    const double Nd = static_cast<double>(N);
    return {p.x, 1.0 / (Nd * Nd), 0.0, p.alpha + p.beta * p.x, 0.0, 0.0};
}

GroupElement mirror_horocycle_lift(const WeylParams& p, std::size_t N) {
    const double Nd = static_cast<double>(N);
    return {-p.x, 1.0 / (Nd * Nd), 0.0, -(p.alpha + p.beta * p.x), 0.0, 0.0};
}

cplx theta2_triangle_scaled(double s, double t, const GroupElement& g1, const GroupElement& g2) {
    if (!(s < t)) throw std::invalid_argument("triangle needs s < t");
    const GroupElement shift = heisenberg(0.0, s, 0.0);
    GroupElement dil;
    dil.y = 1.0 / ((t - s) * (t - s));
    const GroupElement h1 = group_mul(group_mul(g1, shift), dil);
    const GroupElement h2 = group_mul(group_mul(g2, shift), dil);
    return (t - s) * theta2_direct(triangle_function(0.0, 1.0), h1, h2);
}

}  // namespace thetarough
