#include "thetarough/jacobi.hpp"

#include <cmath>
#include <numeric>
#include <quadmath.h>
#include <sstream>
#include <stdexcept>

namespace thetarough {

namespace {
constexpr double kPi = std::numbers::pi;
}

Mat2 sl2_matrix(const GroupElement& g) {
    const double sy = std::sqrt(g.y);
    const Mat2 n{1.0, g.x, 0.0, 1.0};
    const Mat2 a{sy, 0.0, 0.0, 1.0 / sy};
    const double c = std::cos(g.phi), s = std::sin(g.phi);
    const Mat2 k{c, -s, s, c};
    return n * a * k;
}

cplx mobius(const Mat2& m, cplx z) { return (m.m11 * z + m.m12) / (m.m21 * z + m.m22); }

double beta_k(double phi, cplx w) {
    // phi = nu pi + r with r in [-pi/2, pi/2)
    const double nu = std::floor((phi + 0.5 * kPi) / kPi);
    const double r = phi - nu * kPi;
    const cplx v = std::cos(r) + w * std::sin(r);
    return nu * kPi + std::arg(v);
}

GroupElement group_mul(const GroupElement& g, const GroupElement& h) {
    const Mat2 M = sl2_matrix(g);
    const cplx zh = h.z();
    const cplx z = mobius(M, zh);
    const Vec2 gxi = M * h.xi();
    GroupElement r;
    r.x = z.real();
    r.y = z.imag();
    r.phi = beta_k(g.phi, zh) + h.phi;
    r.xi1 = g.xi1 + gxi.v1;
    r.xi2 = g.xi2 + gxi.v2;
    r.zeta = g.zeta + h.zeta + 0.5 * omega(g.xi(), gxi);
    return r;
}

GroupElement group_inverse(const GroupElement& g) {
    const Mat2 M = sl2_matrix(g);
    const Mat2 Minv{M.m22, -M.m12, -M.m21, M.m11};
    const cplx z = mobius(Minv, cplx(0.0, 1.0));
    const Vec2 xi = -(Minv * g.xi());
    GroupElement r;
    r.x = z.real();
    r.y = z.imag();
    r.phi = -beta_k(g.phi, z);
    r.xi1 = xi.v1;
    r.xi2 = xi.v2;
    r.zeta = -g.zeta;
    return r;
}

double coordinate_distance(const GroupElement& g, const GroupElement& h) {
    return std::max({std::abs(g.x - h.x), std::abs(g.y - h.y), std::abs(g.phi - h.phi),
                     std::abs(g.xi1 - h.xi1), std::abs(g.xi2 - h.xi2), std::abs(g.zeta - h.zeta)});
}

GroupElement geodesic(const GroupElement& g, double s) {
    GroupElement a;
    a.y = std::exp(-s);
    return group_mul(g, a);
}

GroupElement horocycle(const GroupElement& g, double x) {
    GroupElement n;
    n.x = x;
    return group_mul(g, n);
}

GroupElement heisenberg(double xi1, double xi2, double zeta) {
    GroupElement h;
    h.xi1 = xi1;
    h.xi2 = xi2;
    h.zeta = zeta;
    return h;
}

GroupElement rotation(double phi) {
    GroupElement k;
    k.phi = phi;
    return k;
}

GroupElement generator(int index) {
    switch (index) {
        case 1: return {0.0, 1.0, 0.5 * kPi, 0.0, 0.0, 0.125};
        case 2: return {1.0, 1.0, 0.0, 0.5, 0.0, 0.0};
        case 3: return heisenberg(1.0, 0.0, 0.0);
        case 4: return heisenberg(0.0, 1.0, 0.0);
        case 5: return heisenberg(0.0, 0.0, 1.0);
        default: throw std::invalid_argument("generator index must be 1..5");
    }
}

GroupElement generator_power(int index, long power) {
    GroupElement base = power >= 0 ? generator(index) : group_inverse(generator(index));
    unsigned long e = static_cast<unsigned long>(power >= 0 ? power : -power);
    GroupElement acc = GroupElement::identity();
    while (e) {
        if (e & 1UL) acc = group_mul(acc, base);
        base = group_mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::string Gamma5Word::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ' ';
        os << 'g' << letters[i].gen;
        if (letters[i].power != 1) os << '^' << letters[i].power;
    }
    return os.str();
}

GroupElement apply_word(const Gamma5Word& w, const GroupElement& g) {
    GroupElement acc = g;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        acc = group_mul(generator_power(it->gen, it->power), acc);
    return acc;
}

namespace {

// quad-precision copy of the group law for the reduction; at y ~ e^{-16} a pass through the
// cusp amplifies rounding by 1e11 or more, which even long double cannot absorb
using real = __float128;
const real kPiQ = M_PIq;

struct GL {
    real x = 0, y = 1, phi = 0, xi1 = 0, xi2 = 0, zeta = 0;
};

struct CQ {
    real re, im;
};
CQ cdiv(CQ a, CQ b) {
    const real n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

struct M2L {
    real a, b, c, d;
};

M2L sl2_l(const GL& g) {
    const real sy = sqrtq(g.y), cs = cosq(g.phi), sn = sinq(g.phi);
    return {sy * cs + g.x / sy * sn, -sy * sn + g.x / sy * cs, sn / sy, cs / sy};
}

CQ mobius_l(const M2L& M, CQ z) { return cdiv({M.a * z.re + M.b, M.a * z.im}, {M.c * z.re + M.d, M.c * z.im}); }

real beta_l(real phi, CQ w) {
    const real nu = floorq((phi + 0.5Q * kPiQ) / kPiQ);
    const real r = phi - nu * kPiQ;
    const real cr = cosq(r), sr = sinq(r);
    return nu * kPiQ + atan2q(w.im * sr, cr + w.re * sr);
}

GL mul_l(const GL& g, const GL& h) {
    const M2L M = sl2_l(g);
    const CQ zh{h.x, h.y};
    const CQ z = mobius_l(M, zh);
    const real v1 = M.a * h.xi1 + M.b * h.xi2, v2 = M.c * h.xi1 + M.d * h.xi2;
    GL r;
    r.x = z.re;
    r.y = z.im;
    r.phi = beta_l(g.phi, zh) + h.phi;
    r.xi1 = g.xi1 + v1;
    r.xi2 = g.xi2 + v2;
    r.zeta = g.zeta + h.zeta + 0.5Q * (g.xi1 * v2 - g.xi2 * v1);
    return r;
}

GL inverse_l(const GL& g) {
    const M2L M = sl2_l(g);
    const M2L Mi{M.d, -M.b, -M.c, M.a};
    const CQ z = mobius_l(Mi, {0, 1});
    GL r;
    r.x = z.re;
    r.y = z.im;
    r.phi = -beta_l(g.phi, z);
    r.xi1 = -(Mi.a * g.xi1 + Mi.b * g.xi2);
    r.xi2 = -(Mi.c * g.xi1 + Mi.d * g.xi2);
    r.zeta = -g.zeta;
    return r;
}

GL generator_l(int index) {
    GL g;
    switch (index) {
        case 1: g.phi = 0.5Q * kPiQ; g.zeta = 0.125Q; break;
        case 2: g.x = 1; g.xi1 = 0.5Q; break;
        case 3: g.xi1 = 1; break;
        case 4: g.xi2 = 1; break;
        default: g.zeta = 1; break;
    }
    return g;
}

GL power_l(int index, long power) {
    GL base = power >= 0 ? generator_l(index) : inverse_l(generator_l(index));
    unsigned long e = static_cast<unsigned long>(power >= 0 ? power : -power);
    GL acc;
    while (e) {
        if (e & 1UL) acc = mul_l(acc, base);
        base = mul_l(base, base);
        e >>= 1;
    }
    return acc;
}

struct ReductionL {
    GL g;
    Gamma5Word word;
};

// h <- gamma_gen^{-power} h, recording gamma_gen^{power} in the word
void strip(ReductionL& red, int gen, long power) {
    if (power == 0) return;
    red.g = mul_l(power_l(gen, -power), red.g);
    auto& L = red.word.letters;
    if (!L.empty() && L.back().gen == gen) {
        L.back().power += power;
        if (L.back().power == 0) L.pop_back();
    } else {
        L.push_back({gen, power});
    }
}

long nearest_shift(real v) { return static_cast<long>(floorq(v + 0.5Q)); }

}  // namespace

Reduction reduce(const GroupElement& g, std::size_t max_iterations) {
    if (!(g.y > 0.0) || !std::isfinite(g.x) || !std::isfinite(g.phi))
        throw std::invalid_argument("reduce: invalid group element");
    Reduction red;
    ReductionL st;
    st.g = {g.x, g.y, g.phi, g.xi1, g.xi2, g.zeta};
    for (;;) {
        if (++red.iterations > max_iterations) {
            std::ostringstream os;
            os << "reduce: no convergence after " << max_iterations << " steps (x=" << static_cast<double>(st.g.x)
               << ", y=" << static_cast<double>(st.g.y) << ")";
            throw std::runtime_error(os.str());
        }
        strip(st, 2, nearest_shift(st.g.x));
        if (st.g.x * st.g.x + st.g.y * st.g.y < 1) {
            // inversion z -> -1/z
            strip(st, 1, -1);
            continue;
        }
        break;
    }
    // phi into [-pi/2, pi/2) with gamma_1^2
    const long k = static_cast<long>(floorq((st.g.phi + 0.5Q * kPiQ) / kPiQ));
    strip(st, 1, 2 * k);
    strip(st, 4, nearest_shift(st.g.xi2));
    strip(st, 3, nearest_shift(st.g.xi1));
    strip(st, 5, nearest_shift(st.g.zeta));
    red.word = std::move(st.word);
    const GL& r = st.g;
    red.reduced = {static_cast<double>(r.x),   static_cast<double>(r.y),   static_cast<double>(r.phi),
                   static_cast<double>(r.xi1), static_cast<double>(r.xi2), static_cast<double>(r.zeta)};
    return red;
}

bool in_fundamental_domain(const GroupElement& g, double tol) {
    const bool zok = std::norm(g.z()) >= 1.0 - tol && g.x >= -0.5 - tol && g.x < 0.5 + tol;
    const bool pok = g.phi >= -0.5 * kPi - tol && g.phi < 0.5 * kPi + tol;
    auto half = [tol](double v) { return v >= -0.5 - tol && v < 0.5 + tol; };
    return zok && pok && half(g.xi1) && half(g.xi2) && half(g.zeta);
}

GroupElement mirror(const GroupElement& g) { return {-g.x, g.y, -g.phi, -g.xi1, g.xi2, -g.zeta}; }

double height_H(double x, double y) {
    if (!(y > 0.0)) throw std::domain_error("height_H needs y > 0");
    double h = y >= 0.25 ? std::sqrt(y) : 0.0;
    const long cmax = static_cast<long>(std::floor(2.0 / std::sqrt(y)));
    for (long c = 1; c <= cmax; ++c) {
        const double cy = static_cast<double>(c) * y;
        const double rad2 = 4.0 * y - cy * static_cast<double>(c) * y;
        if (rad2 < 0.0) continue;
        const double r = std::sqrt(rad2);
        const double cx = static_cast<double>(c) * x;
        const long dlo = static_cast<long>(std::ceil(-cx - r));
        const long dhi = static_cast<long>(std::floor(-cx + r));
        for (long d = dlo; d <= dhi; ++d) {
            if (std::gcd(c, d) != 1) continue;
            const double re = cx + static_cast<double>(d);
            const double n2 = re * re + cy * cy;
            if (n2 > 4.0 * y) continue;
            h += std::sqrt(y / n2);
        }
    }
    return h;
}

}  // namespace thetarough
