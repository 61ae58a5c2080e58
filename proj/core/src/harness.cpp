#include "thetarough/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>

namespace thetarough {

namespace {

constexpr std::size_t kChunk = 512;

double unit_draw(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

Report make_report(std::string claim, const SampleSpec& spec, double est, double se, double target,
                   double tol, bool pass) {
    Report r;
    r.claim = std::move(claim);
    r.parameters = {{"N", static_cast<double>(spec.N)},
                    {"count", static_cast<double>(spec.count)},
                    {"seed", static_cast<double>(spec.seed)},
                    {"alpha", spec.alpha},
                    {"beta", spec.beta},
                    {"exhaustive", spec.exhaustive ? 1.0 : 0.0}};
    r.estimate = est;
    r.stderr_ = se;
    r.target = target;
    r.tolerance = tol;
    r.pass = pass;
    return r;
}

WeylParams params_for(const SampleSpec& spec, std::size_t i) {
    return {sample_x(spec, i), spec.alpha, spec.beta};
}

void check_spec(const SampleSpec& spec) {
    if (spec.count == 0) throw std::invalid_argument("sample count must be at least 1");
    if (!(spec.b > spec.a)) throw std::invalid_argument("sampling interval must have b > a");
    if (spec.N == 0) throw std::invalid_argument("walk length must be positive");
}

}  // namespace

double sample_x(const SampleSpec& spec, std::size_t i) {
    const double width = spec.b - spec.a;
    if (spec.exhaustive) return spec.a + width * (static_cast<double>(i) + 0.5) / static_cast<double>(spec.count);
    const auto s = spec.seed;
    const auto k = static_cast<std::uint64_t>(i);
    std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    std::mt19937_64 eng(seq);
    if (!spec.density) return spec.a + width * unit_draw(eng);
    for (int tries = 0; tries < 1000000; ++tries) {
        const double x = spec.a + width * unit_draw(eng);
        const double v = spec.density_bound * unit_draw(eng);
        const double d = spec.density(x);
        if (d < 0.0 || d > spec.density_bound) throw std::domain_error("density outside [0, bound]");
        if (v <= d) return x;
    }
    throw std::runtime_error("rejection sampling did not accept within 1e6 draws");
}

std::size_t default_threads() {
    if (const char* env = std::getenv("THETAROUGH_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 1;
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
    const std::size_t chunks = (count + kChunk - 1) / kChunk;
    threads = std::max<std::size_t>(1, std::min(threads, chunks));
    auto run = [&](std::size_t tid) {
        for (std::size_t c = tid; c < chunks; c += threads) {
            const std::size_t end = std::min(count, (c + 1) * kChunk);
            for (std::size_t i = c * kChunk; i < end; ++i) body(i);
        }
    };
    if (threads == 1) {
        run(0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
}

WilsonInterval wilson_interval(std::size_t hits, std::size_t n, double z) {
    if (n == 0) return {0.0, 1.0};
    const double nd = static_cast<double>(n);
    const double p = static_cast<double>(hits) / nd;
    const double z2 = z * z;
    const double den = 1.0 + z2 / nd;
    const double center = (p + z2 / (2.0 * nd)) / den;
    const double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / den;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

MomentEstimate mean_and_se(const std::vector<double>& v) {
    MomentEstimate m;
    if (v.empty()) return m;
    double s = 0.0;
    for (double x : v) s += x;
    m.mean = s / static_cast<double>(v.size());
    if (v.size() < 2) return m;
    double ss = 0.0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.se = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
    return m;
}

double tail_law(double R) { return 6.0 / (std::numbers::pi * std::numbers::pi) * std::pow(R, -6.0); }

TailReport mc_tails(const SampleSpec& spec, const std::vector<double>& Rs, std::size_t threads, double rel_tol) {
    check_spec(spec);
    std::vector<double> mod(spec.count);
    const double sc = 1.0 / std::sqrt(static_cast<double>(spec.N));
    parallel_for(spec.count, threads, [&](std::size_t i) { mod[i] = std::abs(theta_sum(params_for(spec, i), spec.N)) * sc; });
    TailReport rep;
    rep.count = spec.count;
    for (double R : Rs) {
        TailRow row;
        row.R = R;
        row.exceed = static_cast<std::size_t>(std::count_if(mod.begin(), mod.end(), [R](double m) { return m > R; }));
        row.frequency = static_cast<double>(row.exceed) / static_cast<double>(spec.count);
        row.ci = wilson_interval(row.exceed, spec.count);
        row.target = tail_law(R);
        row.zero_count = row.exceed == 0;
        rep.rows.push_back(row);
        const double se = std::sqrt(row.frequency * (1.0 - row.frequency) / static_cast<double>(spec.count));
        const bool pass = !row.zero_count && std::abs(row.frequency - row.target) <= rel_tol * row.target;
        Report r = make_report("tail frequency P(|X_N(1)| > R) vs 6/pi^2 R^-6 (relative tolerance)", spec,
                               row.frequency, se, row.target, rel_tol, pass);
        r.parameters["R"] = R;
        r.parameters["ci_lo"] = row.ci.lo;
        r.parameters["ci_hi"] = row.ci.hi;
        rep.reports.push_back(r);
    }
    return rep;
}

std::vector<Report> mc_moments(const SampleSpec& spec, std::size_t threads) {
    check_spec(spec);
    std::vector<double> m2(spec.count), m4(spec.count), cov(spec.count);
    const double sc = 1.0 / std::sqrt(static_cast<double>(spec.N));
    parallel_for(spec.count, threads, [&](std::size_t i) {
        const cplx X = theta_sum(params_for(spec, i), spec.N) * sc;
        const double n2 = std::norm(X);
        m2[i] = n2;
        m4[i] = n2 * n2;
        cov[i] = X.real() * X.imag();
    });
    const auto e2 = mean_and_se(m2), e4 = mean_and_se(m4), ec = mean_and_se(cov);
    return {make_report("E|X_N(1)|^2", spec, e2.mean, e2.se, 1.0, 0.02, std::abs(e2.mean - 1.0) <= 0.02),
            make_report("E|X_N(1)|^4", spec, e4.mean, e4.se, 2.0, 0.1, std::abs(e4.mean - 2.0) <= 0.1),
            make_report("E[X^1(1) X^2(1)] (3 standard errors)", spec, ec.mean, ec.se, 0.0, 3.0 * ec.se,
                        std::abs(ec.mean) <= 3.0 * ec.se)};
}

std::vector<Report> mc_increment_correlations(const SampleSpec& spec, Window w1, Window w2, std::size_t threads) {
    check_spec(spec);
    for (const Window& w : {w1, w2})
        if (!(0.0 <= w.s && w.s < w.t && w.t <= 1.0)) throw std::invalid_argument("window outside [0,1]");
    const double Nd = static_cast<double>(spec.N);
    auto idx = [&](double t) { return std::min(spec.N, static_cast<std::size_t>(std::floor(t * Nd))); };
    std::vector<double> re(spec.count), im(spec.count), prod(spec.count);
    parallel_for(spec.count, threads, [&](std::size_t i) {
        const WeylWalk w = build_walk(params_for(spec, i), spec.N);
        const cplx d1 = (w.prefix[idx(w1.t)] - w.prefix[idx(w1.s)]) * w.scale();
        const cplx d2 = (w.prefix[idx(w2.t)] - w.prefix[idx(w2.s)]) * w.scale();
        const cplx c = d1 * std::conj(d2);
        re[i] = c.real();
        im[i] = c.imag();
        prod[i] = std::norm(d1) * std::norm(d2);
    });
    const auto er = mean_and_se(re), ei = mean_and_se(im), ep = mean_and_se(prod);
    const bool same = w1.s == w2.s && w1.t == w2.t;
    const double target_c = same ? (w1.t - w1.s) : 0.0;
    const double target_p = same ? 2.0 * (w1.t - w1.s) * (w1.t - w1.s) : (w1.t - w1.s) * (w2.t - w2.s);
    std::vector<Report> out{
        make_report("Re E[D1 conj(D2)] (3 standard errors)", spec, er.mean, er.se, target_c, 3.0 * er.se,
                    std::abs(er.mean - target_c) <= 3.0 * er.se),
        make_report("Im E[D1 conj(D2)] (3 standard errors)", spec, ei.mean, ei.se, 0.0, 3.0 * ei.se,
                    std::abs(ei.mean) <= 3.0 * ei.se),
        make_report("E|D1|^2 |D2|^2 (3 standard errors)", spec, ep.mean, ep.se, target_p, 3.0 * ep.se,
                    std::abs(ep.mean - target_p) <= 3.0 * ep.se)};
    for (auto& r : out) {
        r.parameters["s1"] = w1.s;
        r.parameters["t1"] = w1.t;
        r.parameters["s2"] = w2.s;
        r.parameters["t2"] = w2.t;
    }
    return out;
}

EquidistReport equidistribution_experiment(const SampleSpec& spec, double tau, const std::vector<double>& levels,
                                           const std::vector<double>& rel_tols, std::size_t threads) {
    check_spec(spec);
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    if (levels.size() != rel_tols.size()) throw std::invalid_argument("one tolerance per level");
    const double y = std::exp(-tau);
    std::vector<double> im(spec.count, 0.0), mdef(spec.count, 0.0);
    std::vector<char> failed(spec.count, 0);
    parallel_for(spec.count, threads, [&](std::size_t i) {
        const double x = sample_x(spec, i);
        const double xi = spec.alpha + spec.beta * x;
        const GroupElement gp{x, y, 0.0, xi, 0.0, 0.0};
        const GroupElement gm{-x, y, 0.0, -xi, 0.0, 0.0};
        try {
            const Reduction rp = reduce(gp);
            const Reduction rm = reduce(gm);
            im[i] = rp.reduced.y;
            mdef[i] = coordinate_distance(rm.reduced, mirror(rp.reduced));
        } catch (const std::runtime_error&) {
            failed[i] = 1;
        }
    });
    EquidistReport rep;
    rep.count = spec.count;
    for (std::size_t i = 0; i < spec.count; ++i) {
        if (failed[i]) {
            ++rep.reduction_failures;
            continue;
        }
        rep.max_mirror_defect = std::max(rep.max_mirror_defect, mdef[i]);
        if (mdef[i] > 1e-9) ++rep.mirror_failures;
    }
    Report m = make_report("mirror constraint on reduced horocycle pairs (failures)", spec,
                           static_cast<double>(rep.mirror_failures + rep.reduction_failures), 0.0, 0.0, 0.0,
                           rep.mirror_failures == 0 && rep.reduction_failures == 0);
    m.parameters["tau"] = tau;
    m.parameters["max_defect"] = rep.max_mirror_defect;
    rep.reports.push_back(m);
    const double n = static_cast<double>(spec.count - rep.reduction_failures);
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const double a = levels[k];
        std::size_t hits = 0;
        for (std::size_t i = 0; i < spec.count; ++i)
            if (!failed[i] && im[i] > a) ++hits;
        const double p = static_cast<double>(hits) / n;
        const double target = 3.0 / (std::numbers::pi * a);
        Report r = make_report("P(Im z' > a) vs 3/(pi a) (relative tolerance)", spec, p, std::sqrt(p * (1.0 - p) / n),
                               target, rel_tols[k], std::abs(p - target) <= rel_tols[k] * target);
        r.parameters["tau"] = tau;
        r.parameters["a"] = a;
        rep.reports.push_back(r);
    }
    return rep;
}

LevyHistograms levy_histograms(const SampleSpec& spec, std::size_t bins, std::size_t threads) {
    check_spec(spec);
    if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
    std::vector<double> im(spec.count), re(spec.count), defect(spec.count), levy_defect(spec.count);
    parallel_for(spec.count, threads, [&](std::size_t i) {
        const WeylWalk w = build_walk(params_for(spec, i), spec.N);
        const WindowSums ws = window_sums(w, 0, spec.N);
        const double x2 = std::norm(w.prefix[spec.N]) / static_cast<double>(spec.N);
        im[i] = ws.J.imag();
        re[i] = ws.J.real();
        defect[i] = std::abs(re[i] + 0.5 - 0.5 * x2);
        levy_defect[i] = std::abs(levy_area(w, 0, spec.N) - im[i]);
    });
    LevyHistograms h;
    auto fill = [&](const std::vector<double>& v, double lo, double hi) {
        std::vector<HistogramBin> out(bins);
        const double width = (hi - lo) / static_cast<double>(bins);
        for (std::size_t k = 0; k < bins; ++k)
            out[k] = {lo + width * static_cast<double>(k), lo + width * static_cast<double>(k + 1), 0};
        for (double x : v) {
            auto k = static_cast<std::size_t>(std::floor((x - lo) / width));
            out[std::min(k, bins - 1)].count++;
        }
        return out;
    };
    double m_im = 0.0, m_re = -0.5;
    for (std::size_t i = 0; i < spec.count; ++i) {
        m_im = std::max(m_im, std::abs(im[i]));
        m_re = std::max(m_re, re[i]);
    }
    h.im = fill(im, -m_im - 1e-12, m_im + 1e-12);
    h.re = fill(re, -0.5, m_re + 1e-12);
    double worst_levy = 0.0;
    for (std::size_t i = 0; i < spec.count; ++i) {
        h.max_re_identity_defect = std::max(h.max_re_identity_defect, defect[i]);
        worst_levy = std::max(worst_levy, levy_defect[i]);
    }
    // sample skewness of the Levy area
    const auto e = mean_and_se(im);
    double m2 = 0.0, m3 = 0.0;
    for (double x : im) {
        const double d = x - e.mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    const double n = static_cast<double>(spec.count);
    m2 /= n;
    m3 /= n;
    h.skewness_im = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    h.skewness_se = std::sqrt(6.0 / n);
    h.reports = {
        make_report("Re Theta2 + 1/2 = |X_N(1)|^2 / 2, max per-sample defect", spec, h.max_re_identity_defect, 0.0,
                    0.0, 1e-10, h.max_re_identity_defect < 1e-10),
        make_report("Levy area = Im Theta2, max per-sample defect", spec, worst_levy, 0.0, 0.0, 1e-10,
                    worst_levy < 1e-10),
        make_report("skewness of Levy area (3 standard errors)", spec, h.skewness_im, h.skewness_se, 0.0,
                    3.0 * h.skewness_se, std::abs(h.skewness_im) < 3.0 * h.skewness_se)};
    return h;
}

}  // namespace thetarough
