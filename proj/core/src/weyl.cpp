#include "thetarough/weyl.hpp"

#include <cmath>
#include <stdexcept>

namespace thetarough {

namespace {

cplx unit_from_phase(long double theta) {
    const long double r = theta - std::floor(theta);
    const double a = static_cast<double>(2.0L * std::numbers::pi_v<long double> * r);
    return {std::cos(a), std::sin(a)};
}

void check_window(const WeylWalk& w, std::size_t m, std::size_t n) {
    if (m >= n) throw std::invalid_argument("window requires m < n");
    if (n > w.N) throw std::out_of_range("window end exceeds N");
}

}  // namespace

double WeylWalk::scale() const { return 1.0 / std::sqrt(static_cast<double>(N)); }

double DoubleAngleReport::max_defect() const {
    return std::max(defect11, std::max(defect12, defect22));
}

cplx eval_increment(std::size_t k, const WeylParams& p) {
    if (k == 0) throw std::invalid_argument("increment index starts at 1");
    const long double kk = static_cast<long double>(k);
    const long double theta =
        (0.5L * kk * kk + static_cast<long double>(p.beta) * kk) * static_cast<long double>(p.x) +
        static_cast<long double>(p.alpha) * kk;
    return unit_from_phase(theta);
}

// second differences: dtheta_{k+1} = dtheta_k + x, all kept mod 1
template <class Visit>
void walk_phases(const WeylParams& p, std::size_t N, Visit&& visit) {
    if (N == 0) throw std::invalid_argument("walk length must be positive");
    if (!std::isfinite(p.x) || !std::isfinite(p.alpha) || !std::isfinite(p.beta))
        throw std::invalid_argument("walk parameters must be finite");
    const long double x = p.x;
    const long double xf = x - std::floor(x);
    long double d = (0.5L + static_cast<long double>(p.beta)) * x + static_cast<long double>(p.alpha);
    d -= std::floor(d);
    long double th = d;
    for (std::size_t k = 1; k <= N; ++k) {
        if (k > 1) {
            d += xf;
            if (d >= 1.0L) d -= 1.0L;
            th += d;
            if (th >= 1.0L) th -= 1.0L;
        }
        visit(k, th);
    }
}

WeylWalk build_walk(const WeylParams& p, std::size_t N) {
    WeylWalk w;
    w.params = p;
    w.N = N;
    w.z.resize(N);
    w.phase.resize(N);
    w.prefix.assign(N + 1, cplx{0.0, 0.0});
    walk_phases(p, N, [&](std::size_t k, long double th) {
        w.phase[k - 1] = static_cast<double>(th);
        w.z[k - 1] = unit_from_phase(th);
        w.prefix[k] = w.prefix[k - 1] + w.z[k - 1];
    });
    return w;
}

cplx theta_sum(const WeylParams& p, std::size_t N) {
    cplx S{};
    walk_phases(p, N, [&](std::size_t, long double th) { S += unit_from_phase(th); });
    return S;
}

Vec2 path_value(const WeylWalk& w, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("path_value: t outside [0,1]");
    const double tn = t * static_cast<double>(w.N);
    std::size_t k = static_cast<std::size_t>(std::floor(tn));
    if (k >= w.N) return Vec2::of(w.prefix[w.N] * w.scale());
    const double r = tn - static_cast<double>(k);
    return Vec2::of((w.prefix[k] + r * w.z[k]) * w.scale());
}

WindowSums window_sums(const WeylWalk& w, std::size_t m, std::size_t n) {
    check_window(w, m, n);
    const double invN = 1.0 / static_cast<double>(w.N);
    WindowSums ws;
    ws.m = m;
    ws.n = n;
    cplx J{}, I{}, M{};
    double b11 = 0.0, b12 = 0.0, b22 = 0.0;
    const cplx Sm = w.prefix[m];
    for (std::size_t l = m + 1; l <= n; ++l) {
        const cplx zl = w.z[l - 1];
        const cplx before = w.prefix[l - 1] - Sm;
        J += zl * std::conj(before);
        I += zl * before;
        M += zl * zl;
        b11 += zl.real() * zl.real();
        b12 += zl.real() * zl.imag();
        b22 += zl.imag() * zl.imag();
    }
    ws.J = J * invN;
    ws.I = I * invN;
    ws.M = M * invN;
    ws.L = (w.prefix[n] - Sm) * w.scale();
    ws.Hplus = ws.I + ws.J;
    ws.Hminus = ws.I - ws.J;
    const cplx hp = 0.5 * ws.Hplus;
    const cplx hm = ws.Hminus / cplx(0.0, 2.0);
    ws.A = {hp.real(), hp.imag(), hm.real(), hm.imag()};
    const double h = 0.5 * invN;
    ws.B = {h * b11, h * b12, h * b12, h * b22};
    return ws;
}

Mat2 iterated_integral_grid(const WeylWalk& w, std::size_t m, std::size_t n) {
    const WindowSums ws = window_sums(w, m, n);
    return ws.A + ws.B;
}

Mat2 iterated_integral_continuous(const WeylWalk& w, double s, double t) {
    if (!(s < t)) throw std::invalid_argument("iterated integral requires s < t");
    if (s < 0.0 || t > 1.0) throw std::domain_error("iterated integral: times outside [0,1]");
    const double Nd = static_cast<double>(w.N);
    const double sc = w.scale();

    std::size_t a = static_cast<std::size_t>(std::ceil(s * Nd));
    std::size_t b = static_cast<std::size_t>(std::floor(t * Nd));
    a = std::min(a, w.N);
    b = std::min(b, w.N);

    if (a > b) {
        // s and t inside the same segment
        const std::size_t k = b;  // segment (k, k+1)
        const Vec2 d = Vec2::of(w.z[k] * ((t - s) * Nd * sc));
        return 0.5 * outer(d, d);
    }

    Vec2 x1{};
    Mat2 xx{};
    auto append = [&](const Vec2& d1, const Mat2& d2) {
        xx += d2 + outer(x1, d1);
        x1 += d1;
    };
    if (static_cast<double>(a) > s * Nd) {
        const Vec2 d = Vec2::of(w.z[a - 1] * ((static_cast<double>(a) - s * Nd) * sc));
        append(d, 0.5 * outer(d, d));
    }
    if (b > a) {
        append(Vec2::of((w.prefix[b] - w.prefix[a]) * sc), iterated_integral_grid(w, a, b));
    }
    if (t * Nd > static_cast<double>(b)) {
        const Vec2 d = Vec2::of(w.z[b] * ((t * Nd - static_cast<double>(b)) * sc));
        append(d, 0.5 * outer(d, d));
    }
    return xx;
}

double levy_area(const WeylWalk& w, std::size_t m, std::size_t n) {
    const Mat2 xx = iterated_integral_grid(w, m, n);
    return xx.m12 - xx.m21;
}

DoubleAngleReport double_angle_checks(const WeylWalk& w, std::size_t m, std::size_t n) {
    const WindowSums ws = window_sums(w, m, n);
    const WeylParams p2{2.0 * w.params.x, 2.0 * w.params.alpha, w.params.beta};
    const WeylWalk w2 = build_walk(p2, w.N);
    const cplx L2 = (w2.prefix[n] - w2.prefix[m]) * w2.scale();
    const double Nd = static_cast<double>(w.N);
    const double cnt = static_cast<double>(n - m);
    // a^2 = 1/2 + 1/2 Re z', b^2 = 1/2 - 1/2 Re z', ab = 1/2 Im z' with z' at (2x, 2alpha, beta)
    const double s = 1.0 / (4.0 * std::sqrt(Nd));
    DoubleAngleReport r;
    r.defect11 = std::abs(ws.B.m11 - (cnt / (4.0 * Nd) + s * L2.real()));
    r.defect22 = std::abs(ws.B.m22 - (cnt / (4.0 * Nd) - s * L2.real()));
    r.defect12 = std::abs(ws.B.m12 - s * L2.imag());
    return r;
}

IteratedIntegralGrid lift_grid(const WeylWalk& w) {
    IteratedIntegralGrid g;
    g.N = w.N;
    g.level1.resize(w.N + 1);
    g.level2.resize(w.N + 1);
    const double sc = w.scale();
    for (std::size_t k = 1; k <= w.N; ++k) {
        const Vec2 d = Vec2::of(w.z[k - 1] * sc);
        g.level2[k] = g.level2[k - 1] + outer(g.level1[k - 1], d) + 0.5 * outer(d, d);
        g.level1[k] = Vec2::of(w.prefix[k] * sc);
    }
    return g;
}

double quadratic_variation(const WeylWalk& w, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("quadratic_variation: t outside [0,1]");
    const std::size_t k = std::min(w.N, static_cast<std::size_t>(std::floor(t * static_cast<double>(w.N))));
    const double sc = w.scale();
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) acc += std::norm(w.z[j] * sc);
    return acc;
}

double uniform_pvariation(const WeylWalk& w, double p) {
    if (!(p >= 1.0)) throw std::domain_error("p-variation requires p >= 1");
    const double sc = w.scale();
    double acc = 0.0;
    for (std::size_t j = 0; j < w.N; ++j) acc += std::pow(std::abs(w.z[j]) * sc, p);
    return std::pow(acc, 1.0 / p);
}

HolderEstimate grid_holder_norm(const WeylWalk& w, double gamma, std::size_t exact_limit) {
    HolderEstimate est;
    const double Nd = static_cast<double>(w.N);
    auto ratio = [&](std::size_t i, std::size_t j) {
        const double len = static_cast<double>(j - i) / Nd;
        return std::abs(w.prefix[j] - w.prefix[i]) * w.scale() / std::pow(len, gamma);
    };
    if (w.N <= exact_limit) {
        for (std::size_t i = 0; i < w.N; ++i)
            for (std::size_t j = i + 1; j <= w.N; ++j) est.value = std::max(est.value, ratio(i, j));
        return est;
    }
    // all start points for a geometric ladder of lags
    est.exact = false;
    std::size_t lag = 1;
    while (lag <= w.N) {
        for (std::size_t i = 0; i + lag <= w.N; ++i) est.value = std::max(est.value, ratio(i, i + lag));
        lag = std::max(lag + 1, static_cast<std::size_t>(static_cast<double>(lag) * 1.25));
    }
    est.value = std::max(est.value, ratio(0, w.N));
    return est;
}

}  // namespace thetarough
