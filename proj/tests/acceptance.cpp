// Acceptance checks, one criterion per invocation: `acceptance <k>`, k = 1..8.
// Prints one PASS/FAIL line per check and INFO lines for related diagnostics.
// Exit status is nonzero if any check of the criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "oracles.hpp"
#include "thetarough/harness.hpp"
#include "thetarough/jacobi.hpp"
#include "thetarough/roughcalc.hpp"
#include "thetarough/roughpath.hpp"
#include "thetarough/theta.hpp"
#include "thetarough/triangle.hpp"
#include "thetarough/weyl.hpp"

using namespace thetarough;

namespace {

int failures = 0;

void line(const std::string& id, bool pass, const std::string& what) {
    std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), what.c_str());
    if (!pass) ++failures;
}

void info(const std::string& id, const std::string& what) { std::printf("INFO %s: %s\n", id.c_str(), what.c_str()); }

std::string num(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.3e", v);
    return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- 1

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 eng(20240601);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double da = 0, db = 0, dc = 0, dd = 0, de = 0, de_fixed = 0, df = 0, dg = 0;
    for (std::size_t N : {16UL, 64UL, 256UL}) {
        const double Nd = static_cast<double>(N);
        for (int r = 0; r < 100; ++r) {
            const WeylParams p{U(eng), U(eng), U(eng)};
            const WeylWalk w = build_walk(p, N);
            const auto z = oracle::walk(p.x, p.alpha, p.beta, N);

            // independent all-pairs table: XX(m, n) built forward from m
            std::vector<std::vector<Mat2>> XX;
            std::vector<std::vector<Vec2>> X;
            if (N <= 64) {
                XX.assign(N + 1, std::vector<Mat2>(N + 1));
                X.assign(N + 1, std::vector<Vec2>(N + 1));
                for (std::size_t m = 0; m <= N; ++m)
                    for (std::size_t n = m + 1; n <= N; ++n) {
                        const Vec2 d = Vec2::of(z[n - 1] / std::sqrt(Nd));
                        XX[m][n] = XX[m][n - 1] + outer(X[m][n - 1], d) + 0.5 * outer(d, d);
                        X[m][n] = X[m][n - 1] + d;
                    }
                for (std::size_t i = 0; i <= N; ++i)
                    for (std::size_t u = i; u <= N; ++u)
                        for (std::size_t k = u; k <= N; ++k)
                            db = std::max(db, (XX[i][k] - XX[i][u] - XX[u][k] - outer(X[i][u], X[u][k])).max_abs());
            }

            // (a), (c), (f) on windows; all windows for N <= 64, a fixed random subset at N = 256
            std::vector<std::pair<std::size_t, std::size_t>> wins;
            if (N <= 64) {
                for (std::size_t m = 0; m < N; ++m)
                    for (std::size_t n = m + 1; n <= N; ++n) wins.emplace_back(m, n);
            } else {
                wins.emplace_back(0, N);
                for (int k = 0; k < 40; ++k) {
                    auto m = static_cast<std::size_t>(U(eng) * Nd), n = static_cast<std::size_t>(U(eng) * Nd);
                    if (m > n) std::swap(m, n);
                    if (m == n) ++n;
                    wins.emplace_back(m, n);
                }
            }
            const RoughLift L = RoughLift::from_walk(w);
            for (auto [m, n] : wins) {
                const WindowSums ws = window_sums(w, m, n);
                da = std::max(da, std::abs(ws.L * ws.L - 2.0 * ws.I - ws.M));
                const Mat2 lvl2 = N <= 64 ? XX[m][n] : oracle::iterated_segments(z, m, n);
                const Vec2 lvl1 = Vec2::of((w.prefix[n] - w.prefix[m]) * w.scale());
                dc = std::max(dc, (0.5 * (lvl2 + lvl2.transpose()) - 0.5 * outer(lvl1, lvl1)).max_abs());
                dc = std::max(dc, geometric_defect(increment(L, m, n)).max_abs());
                df = std::max(df, std::abs((lvl2.m12 - lvl2.m21) - (ws.A.m12 - ws.A.m21)));
            }

            // (d), (e): rank-2 theta on a few windows
            for (int k = 0; k < 3; ++k) {
                std::size_t m = 0, n = N;
                if (k > 0) {
                    m = static_cast<std::size_t>(U(eng) * Nd);
                    n = static_cast<std::size_t>(U(eng) * Nd);
                    if (m > n) std::swap(m, n);
                    if (m == n) ++n;
                }
                const cplx th = theta2_direct(triangle_function(m / Nd, n / Nd), mirror_horocycle_lift(p, N),
                                              horocycle_lift(p, N));
                dd = std::max(dd, std::abs(th - window_sums(w, m, n).J));
                if (m == 0 && n == N) {
                    const double X2 = std::norm(w.prefix[N]) / Nd;
                    de = std::max(de, std::abs(th.real() - (X2 - 0.5)));
                    de_fixed = std::max(de_fixed, std::abs(th.real() - (0.5 * X2 - 0.5)));
                }
            }

            // (g): prefix-sum windows against O(N^2) sums
            for (int k = 0; k < (N <= 64 ? 20 : 5); ++k) {
                auto m = static_cast<std::size_t>(U(eng) * Nd), n = static_cast<std::size_t>(U(eng) * Nd);
                if (m > n) std::swap(m, n);
                if (m == n) ++n;
                const WindowSums ws = window_sums(w, m, n);
                const auto o = oracle::windows(z, m, n);
                dg = std::max({dg, std::abs(ws.J - o.J), std::abs(ws.I - o.I), std::abs(ws.M - o.M),
                               std::abs(ws.B.m11 - o.b11), std::abs(ws.B.m12 - o.b12), std::abs(ws.B.m22 - o.b22)});
            }
        }
    }
    line("1a", da < 1e-10, "L^2 = 2I + M, max defect " + num(da));
    line("1b", db < 1e-10, "Chen on all grid triples (N <= 64), max defect " + num(db));
    line("1c", dc < 1e-10, "geometric on grid pairs, max defect " + num(dc));
    line("1d", dd < 1e-10, "J_N = Theta2 of T_(s,t], max defect " + num(dd));
    line("1e", de < 1e-10, "Re Theta2 = |X_N(1)|^2 - 1/2 as stated, max defect " + num(de));
    info("1e", "Re Theta2 = |X_N(1)|^2/2 - 1/2 holds with max defect " + num(de_fixed));
    line("1f", df < 1e-10, "XX12 - XX21 = A12 - A21, max defect " + num(df));
    line("1g", dg < 1e-10, "prefix windows vs O(N^2) sums, max defect " + num(dg));
    const double secs = seconds_since(t0);
    line("1-time", secs < 10.0, "runtime " + num(secs) + " s");
}

// ---------------------------------------------------------------- 2

void criterion2() {
    const cplx g5 = theta_sum({0.4, 0.0, 0.0}, 5);
    line("2a", std::abs(g5 - cplx(std::sqrt(5.0), 0.0)) < 1e-12, "S_5(2/5;0,0) = sqrt 5, defect " + num(std::abs(g5 - std::sqrt(5.0))));

    double qv = 0.0, pv = 0.0;
    std::mt19937_64 eng(77);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (std::size_t N : {16UL, 100UL, 1024UL, 4096UL}) {
        const WeylWalk w = build_walk({U(eng), U(eng), U(eng)}, N);
        for (int k = 0; k < 50; ++k) {
            const double t = U(eng);
            const double target = std::floor(t * static_cast<double>(N)) / static_cast<double>(N);
            qv = std::max(qv, std::abs(quadratic_variation(w, t) - target));
        }
        for (double p : {1.5, 2.0, 3.0})
            pv = std::max(pv, std::abs(uniform_pvariation(w, p) - std::pow(static_cast<double>(N), 1.0 / p - 0.5)));
    }
    line("2b", qv < 1e-12, "uniform-partition QV = floor(tN)/N, max defect " + num(qv));
    line("2c", pv < 1e-12, "uniform-partition p-variation = N^(1/p - 1/2), max defect " + num(pv));

    double sc = 0.0, literal = 0.0;
    for (int r = 0; r < 50; ++r) {
        const std::size_t N = 128;
        const WeylParams p{U(eng), U(eng), U(eng)};
        double s = U(eng), t = U(eng);
        if (s > t) std::swap(s, t);
        if (t - s < 0.05) t = std::min(1.0, s + 0.05);
        const GroupElement g1 = mirror_horocycle_lift(p, N), g2 = horocycle_lift(p, N);
        const cplx direct = theta2_direct(triangle_function(s, t), g1, g2);
        sc = std::max(sc, std::abs(direct - theta2_triangle_scaled(s, t, g1, g2)));
        // coordinate reading: y -> y/(t-s)^2 and xi2 -> xi2 + s
        auto lit = [&](GroupElement g) {
            g.y /= (t - s) * (t - s);
            g.xi2 += s;
            return g;
        };
        literal = std::max(literal, std::abs(direct - (t - s) * theta2_direct(triangle_function(0.0, 1.0), lit(g1), lit(g2))));
    }
    line("2d", sc < 1e-10, "general-triangle scaling through the group law, max defect " + num(sc));
    info("2d", "coordinate form with y/(t-s)^2 and a xi2-shift by s: max defect " + num(literal));
}

// ---------------------------------------------------------------- 3

void criterion3() {
    std::mt19937_64 eng(303);
    std::uniform_real_distribution<double> U(-0.5, 1.5), V(0.0, 1.0);
    double pd = 0.0;
    for (int r = 0; r < 10000; ++r) {
        const double w1 = U(eng), w2 = U(eng);
        pd = std::max(pd, std::abs(partition_defect(w1, w2)));
    }
    line("3a", pd < 1e-12, "partition defect at 1e4 points of [-1/2, 3/2]^2, max " + num(pd));

    // collar: inside the triangle within 1e-3 of an edge
    double worst = 0.0, ww1 = 0, ww2 = 0;
    std::size_t bad = 0;
    for (int r = 0; r < 1000; ++r) {
        const int edge = r % 3;
        const double u = V(eng), d = 1e-3 * (1.0 - V(eng));
        double w1, w2;
        if (edge == 0) {  // top w2 = 1
            w1 = d + (1.0 - 2.0 * d) * u;
            w2 = 1.0 - d * V(eng);
        } else if (edge == 1) {  // left w1 = 0
            w1 = d * V(eng);
            w2 = 1e-3 + (1.0 - 2e-3) * u;
            w2 = std::max(w2, w1 + 1e-3);
        } else {  // diagonal w2 = w1 + h
            w1 = 1e-3 + (1.0 - 2e-3) * u;
            w2 = w1 + d * V(eng) * std::sqrt(2.0);
            if (w2 <= w1) w2 = std::nextafter(w1, 2.0);
        }
        if (!(0.0 < w1 && w1 < w2 && w2 < 1.0)) continue;
        const double e = std::abs(six_piece_sum(w1, w2) - 1.0);
        if (e > 1e-12) ++bad;
        if (e > worst) {
            worst = e;
            ww1 = w1;
            ww2 = w2;
        }
    }
    line("3b", bad == 0, "six-piece sum = 1 on 1e3 collar points; " + std::to_string(bad) + " misses, worst " +
                             num(worst) + " at (" + num(ww1) + ", " + num(ww2) + ")");

    // lattice linearity at N = 256
    const std::size_t N = 256;
    std::uniform_real_distribution<double> P(0.0, 1.0);
    double lin = 0.0;
    for (int r = 0; r < 10; ++r) {
        const WeylParams p{P(eng), P(eng), P(eng)};
        const GroupElement g1 = mirror_horocycle_lift(p, N), g2 = horocycle_lift(p, N);
        const cplx whole = theta2_direct(triangle_function(0.0, 1.0), g1, g2);
        cplx sum{};
        for (PieceTag tag : kPartitionPieces) {
            PlaneFunction F{[tag](double a, double b) { return piece_eval(tag, a, b); }, {0.0, 1.0, 0.0, 1.0}};
            sum += theta2_direct(F, g1, g2);
        }
        lin = std::max(lin, std::abs(sum - whole));
    }
    line("3c", lin < 1e-10, "sum of piece thetas = triangle theta at N = 256, max defect " + num(lin));
}

// ---------------------------------------------------------------- 4

void criterion4() {
    std::mt19937_64 eng(404);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const RegularFunction gc = RegularFunction::gaussian();
    const RegularFunction gq = RegularFunction::gaussian(TransformStrategy::Quadrature);
    double d12 = 0.0, d12q = 0.0, d345 = 0.0;
    for (int r = 0; r < 10; ++r) {
        const GroupElement g{U(eng), 0.7 + 0.4 * U(eng), 1.3 * U(eng), U(eng), U(eng), U(eng)};
        const cplx b = theta_regular(gc, g), bq = theta_regular(gq, g);
        for (int k = 1; k <= 5; ++k) {
            const GroupElement h = group_mul(generator(k), g);
            const double e = std::abs(theta_regular(gc, h) - b) / std::abs(b);
            if (k <= 2) {
                d12 = std::max(d12, e);
                d12q = std::max(d12q, std::abs(theta_regular(gq, h) - bq) / std::abs(bq));
            } else {
                d345 = std::max(d345, e);
            }
        }
    }
    line("4a", std::max(d12, d12q) < 1e-6, "Theta_f(gamma g) = Theta_f(g) for gamma_1, gamma_2 (closed form " + num(d12) +
                                               ", quadrature " + num(d12q) + ")");
    line("4b", d345 < 1e-10, "Theta_f(gamma g) = Theta_f(g) for gamma_3..5, max relative defect " + num(d345));

    double rt = 0.0, mir = 0.0;
    std::size_t outside = 0;
    for (int r = 0; r < 10000; ++r) {
        const GroupElement g{3.0 * U(eng), std::exp(3.0 * U(eng)), 5.0 * U(eng), 4.0 * U(eng), 4.0 * U(eng), 4.0 * U(eng)};
        const Reduction red = reduce(g);
        if (!in_fundamental_domain(red.reduced, 1e-12)) ++outside;
        if (r < 2000) rt = std::max(rt, coordinate_distance(apply_word(red.word, red.reduced), g));
        mir = std::max(mir, coordinate_distance(reduce(mirror(g)).reduced, mirror(red.reduced)));
    }
    line("4c", rt < 1e-9 && outside == 0, "reduce round trip through the word, max defect " + num(rt) +
                                             ", outside domain " + std::to_string(outside));
    line("4d", mir < 1e-9, "reduce(mirror g) = mirror(reduce g) on 1e4 elements, max defect " + num(mir));
    const double h = height_H(0.0, 2.0), ho = oracle::height(0.0, 2.0, 10);
    line("4e", h == ho, "H(2i) = " + num(h) + " vs coprime enumeration " + num(ho));
}

// ---------------------------------------------------------------- 5

void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    SampleSpec s;
    s.seed = 2024;
    s.count = 200000;
    s.N = 4096;
    const std::size_t threads = default_threads();
    const TailReport tails = mc_tails(s, {1.5, 2.0, 2.5}, threads, 0.2);
    for (std::size_t i = 0; i < tails.rows.size(); ++i) {
        const auto& row = tails.rows[i];
        line("5-tail-R" + num(row.R), tails.reports[i].pass,
             "frequency " + num(row.frequency) + " [" + num(row.ci.lo) + ", " + num(row.ci.hi) + "] vs " +
                 num(row.target) + " (20% relative)");
    }
    const auto mom = mc_moments(s, threads);
    line("5-m2", mom[0].estimate >= 0.98 && mom[0].estimate <= 1.02, "E|X_N(1)|^2 = " + num(mom[0].estimate) + " +- " + num(mom[0].stderr_));
    line("5-m4", mom[1].estimate >= 1.9 && mom[1].estimate <= 2.1, "E|X_N(1)|^4 = " + num(mom[1].estimate) + " +- " + num(mom[1].stderr_));
    info("5-cov", "E[X^1 X^2] = " + num(mom[2].estimate) + " +- " + num(mom[2].stderr_));
    const auto corr = mc_increment_correlations(s, {0.0, 0.25}, {0.5, 1.0}, threads);
    line("5-corr-re", corr[0].pass, "Re E[D1 conj D2] = " + num(corr[0].estimate) + " +- " + num(corr[0].stderr_) + " vs 0");
    line("5-corr-im", corr[1].pass, "Im E[D1 conj D2] = " + num(corr[1].estimate) + " +- " + num(corr[1].stderr_) + " vs 0");
    line("5-corr-prod", corr[2].pass, "E|D1|^2|D2|^2 = " + num(corr[2].estimate) + " +- " + num(corr[2].stderr_) + " vs " + num(corr[2].target));
    info("5-time", "runtime " + num(seconds_since(t0)) + " s with " + std::to_string(threads) + " thread(s)");
}

// ---------------------------------------------------------------- 6

void criterion6() {
    SampleSpec s;
    s.seed = 6;
    s.count = 10000;
    const EquidistReport r = equidistribution_experiment(s, 16.0, {1.0, 2.0}, {0.05, 0.10}, default_threads());
    line("6a", r.reports[0].pass, "mirror constraint on all samples: failures " + std::to_string(r.mirror_failures) +
                                      ", max defect " + num(r.max_mirror_defect));
    line("6b", r.reports[1].pass, "P(Im z' > 1) = " + num(r.reports[1].estimate) + " vs 3/pi = " + num(r.reports[1].target) + " (5%)");
    line("6c", r.reports[2].pass, "P(Im z' > 2) = " + num(r.reports[2].estimate) + " vs 3/(2pi) = " + num(r.reports[2].target) + " (10%)");
}

// ---------------------------------------------------------------- 7

RoughLift smooth_lift(std::size_t n) {
    std::vector<double> t;
    std::vector<Vec2> p;
    for (std::size_t i = 0; i <= n; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(n);
        t.push_back(u);
        p.push_back({std::sin(2.0 * std::numbers::pi * u), u * u});
    }
    return RoughLift::from_polyline(t, p);
}

void criterion7() {
    const RoughLift L = RoughLift::from_walk(build_walk({0.61803398874989485, std::sqrt(2.0), 0.0}, 4096));
    ControlledPath Z;
    Z.times = L.times;
    for (std::size_t k = 0; k < L.size(); ++k) {
        Z.Y.push_back(Eigen::Vector2d(L.level1[k].v1, L.level1[k].v2));
        Z.Yprime.push_back(Eigen::Matrix2d::Identity());
    }
    double ri = 0.0;
    std::mt19937_64 eng(7);
    std::uniform_int_distribution<std::size_t> I(0, 4096);
    for (int r = 0; r < 50; ++r) {
        std::size_t i = I(eng), j = I(eng);
        if (i > j) std::swap(i, j);
        const Eigen::MatrixXd v = rough_integral(Z, L, i, j).value;
        const Increment2 inc = increment(L, i, j);
        const Mat2 e = outer(L.level1[i], inc.a) + inc.A;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) ri = std::max(ri, std::abs(v(a, b) - e(a, b)));
    }
    line("7a", ri < 1e-8, "rough integral of (X, Id) = X_s (x) X_st + XX_st, max defect " + num(ri));

    const RoughLift S = smooth_lift(1 << 16);
    Eigen::VectorXd y0(1);
    y0 << 1.3;
    const RdeSolution lin = rde_solve(linear_field(1, 0.7, 0.3), y0, S, 16);
    double ode = 0.0;
    for (std::size_t k = 0; k < lin.path.size(); ++k) {
        const std::size_t g = 16 * k;
        ode = std::max(ode, std::abs(lin.path.Y[k](0) - 1.3 * std::exp(0.7 * S.level1[g].v1 + 0.3 * S.level1[g].v2)));
    }
    line("7b", ode < 1e-6, "RDE with smooth driver vs exact solution at mesh 2^-12, max error " + num(ode));

    const RoughLift T = RoughLift::from_walk(build_walk({0.61803398874989485, std::sqrt(2.0), 0.0}, 1024));
    const Eigen::Vector2d xi(0.2, -0.1);
    std::vector<double> ratios;
    std::string text;
    bool finite = true;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        const ContinuityResult c = continuity_experiment(tanh_field(), xi, xi + Eigen::Vector2d(eps, -eps), T, T, 0.45);
        finite = finite && std::isfinite(c.ratio) && c.ratio > 0.0;
        ratios.push_back(c.ratio);
        text += num(c.ratio) + " ";
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    line("7c", finite && *hi / *lo <= 10.0, "continuity ratio over eps = 1e-2..1e-6: " + text);
    const RoughLift T2 = RoughLift::from_walk(build_walk({0.61803398874989485 + 1e-4, std::sqrt(2.0), 0.0}, 1024));
    const ContinuityResult near = continuity_experiment(tanh_field(), xi, xi, T, T2, 0.45);
    info("7c", "lift pair with |dx| = 1e-4: rho = " + num(near.rho) + ", ratio = " + num(near.ratio));
}

// ---------------------------------------------------------------- 8

void criterion8() {
    auto run = [](std::vector<std::string> args, const char* threads) {
        args.push_back("--threads");
        args.push_back(threads);
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return std::make_pair(code, out.str());
    };
    const std::vector<std::vector<std::string>> cmds{
        {"mc-tails", "--count", "20000", "--N", "1024", "--seed", "8"},
        {"mc-moments", "--count", "20000", "--N", "1024", "--seed", "8", "--corr", "0,0.25,0.5,1"},
        {"equidist", "--count", "2000", "--seed", "8"},
        {"levy", "--count", "5000", "--N", "512", "--seed", "8", "--format", "csv"}};
    for (const auto& c : cmds) {
        const auto a = run(c, "1");
        bool same = !a.second.empty();
        for (const char* t : {"2", "4", "7"}) {
            const auto b = run(c, t);
            same = same && b.second == a.second && b.first == a.first;
        }
        line("8-" + c[0], same, "byte-identical output for --threads 1, 2, 4, 7 (" + std::to_string(a.second.size()) + " bytes)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..8>\n");
        return 2;
    }
    const int k = std::atoi(argv[1]);
    switch (k) {
        case 1: criterion1(); break;
        case 2: criterion2(); break;
        case 3: criterion3(); break;
        case 4: criterion4(); break;
        case 5: criterion5(); break;
        case 6: criterion6(); break;
        case 7: criterion7(); break;
        case 8: criterion8(); break;
        default: std::fprintf(stderr, "criterion must be 1..8\n"); return 2;
    }
    return failures == 0 ? 0 : 1;
}
