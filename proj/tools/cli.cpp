#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <random>
#include <sstream>

#include "thetarough/format.hpp"
#include "thetarough/harness.hpp"
#include "thetarough/jacobi.hpp"
#include "thetarough/roughcalc.hpp"
#include "thetarough/roughpath.hpp"
#include "thetarough/theta.hpp"
#include "thetarough/triangle.hpp"
#include "thetarough/version.hpp"
#include "thetarough/weyl.hpp"

namespace thetarough::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::optional<double> x;
    double alpha = std::sqrt(2.0);
    double beta = 0.0;
    std::size_t N = 4096;
    double s = 0.0, t = 1.0;
    double gamma = 0.45;
    std::vector<double> R{1.5, 2.0, 2.5};
    double tau = 16.0;
    std::vector<double> levels{1.0, 2.0};
    std::vector<double> level_tols{0.05, 0.10};
    std::string out;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    std::string format = "json";
    std::size_t count = 0;
    double a = 0.0, b = 1.0;
    bool exhaustive = false;
    std::size_t samples = 10;
    std::size_t bins = 50;
    std::string histogram = "im";
    std::string g, g1, g2;
    std::string f = "gaussian";
    std::string action = "dump";
    std::size_t grid = 101;
    double lo = -0.5, hi = 1.5;
    double w1 = 0.5, w2 = 0.9;
    std::string field = "tanh";
    std::string xi0 = "0.5,-0.25";
    std::string lift;
    std::size_t stride = 1;
    std::vector<double> corr;
    double tail_tol = 0.2;
};

SampleSpec sample_spec(const Config& c, std::size_t default_count) {
    SampleSpec s;
    s.seed = c.seed;
    s.count = c.count ? c.count : default_count;
    s.a = c.a;
    s.b = c.b;
    s.exhaustive = c.exhaustive;
    s.N = c.N;
    s.alpha = c.alpha;
    s.beta = c.beta;
    return s;
}

// fixed --x, otherwise sample 0 of the sampling spec
WeylParams walk_params(const Config& c) {
    const double x = c.x ? *c.x : sample_x(sample_spec(c, 1), 0);
    return {x, c.alpha, c.beta};
}

std::size_t threads_of(const Config& c) { return c.threads ? c.threads : default_threads(); }

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_num(item));
    return v;
}

GroupElement parse_group(const std::string& s) {
    const auto v = parse_list(s);
    if (v.size() != 6) throw UsageError("group element needs 6 comma-separated values x,y,phi,xi1,xi2,zeta");
    if (!(v[1] > 0.0)) throw UsageError("group element needs y > 0");
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

json cjson(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json gjson(const GroupElement& g) {
    return json{{"x", g.x}, {"y", g.y}, {"phi", g.phi}, {"xi1", g.xi1}, {"xi2", g.xi2}, {"zeta", g.zeta}};
}

json mjson(const Mat2& m) { return json::array({json::array({m.m11, m.m12}), json::array({m.m21, m.m22})}); }

json report_json(const Report& r) {
    json p = json::object();
    for (const auto& [k, v] : r.parameters) p[k] = v;
    return json{{"claim", r.claim},       {"parameters", p},         {"estimate", r.estimate},
                {"stderr", r.stderr_},    {"target", r.target},      {"tolerance", r.tolerance},
                {"pass", r.pass}};
}

// thread count is deliberately not echoed: output bytes must not depend on it
json echo(const std::string& sub, const Config& c, bool sampled) {
    json p{{"alpha", c.alpha}, {"beta", c.beta}, {"N", c.N}, {"seed", c.seed}};
    if (c.x) p["x"] = *c.x;
    if (sampled) {
        p["a"] = c.a;
        p["b"] = c.b;
        p["exhaustive"] = c.exhaustive;
    }
    return json{{"version", kVersion}, {"subcommand", sub}, {"parameters", p}};
}

class Sink {
public:
    explicit Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw UsageError("cannot open output file " + path);
            os_ = &file_;
        }
    }
    std::ostream& os() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void emit_json(const Config& c, std::ostream& out, const json& j) {
    Sink sink(c.out, out);
    sink.os() << j.dump(2) << '\n';
}

int status(bool pass) { return pass ? 0 : 1; }

bool all_pass(const std::vector<Report>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const Report& r) { return r.pass; });
}

std::pair<std::size_t, std::size_t> window_indices(const Config& c) {
    if (!(0.0 <= c.s && c.s < c.t && c.t <= 1.0)) throw UsageError("need 0 <= s < t <= 1");
    const double Nd = static_cast<double>(c.N);
    const auto m = static_cast<std::size_t>(std::floor(c.s * Nd));
    const auto n = static_cast<std::size_t>(std::floor(c.t * Nd));
    if (m >= n) throw UsageError("window contains no lattice points at this N");
    return {m, n};
}

// ---------------------------------------------------------------- subcommands

int cmd_path(const Config& c, std::ostream& out) {
    const WeylWalk w = build_walk(walk_params(c), c.N);
    Sink sink(c.out, out);
    auto& os = sink.os();
    os << "t,x1,x2\n";
    for (std::size_t k = 0; k <= c.N; ++k) {
        const Vec2 v = Vec2::of(w.prefix[k] * w.scale());
        os << fmt_num(static_cast<double>(k) / static_cast<double>(c.N)) << ',' << fmt_num(v.v1) << ','
           << fmt_num(v.v2) << '\n';
    }
    return 0;
}

int cmd_lift(const Config& c, std::ostream& out) {
    const RoughLift L = RoughLift::from_walk(build_walk(walk_params(c), c.N));
    if (c.format == "csv") {
        Sink sink(c.out, out);
        write_csv(sink.os(), L);
        return 0;
    }
    const HolderSeminorms h = holder_seminorms(L, c.gamma);
    json j = echo("lift", c, !c.x);
    j["parameters"]["gamma"] = c.gamma;
    j["x"] = walk_params(c).x;
    j["holder"] = {{"level1", h.level1}, {"level2", h.level2}, {"homogeneous", h.homogeneous}};
    j["X_end"] = {L.level1.back().v1, L.level1.back().v2};
    j["XX_end"] = mjson(L.level2.back());
    emit_json(c, out, j);
    return 0;
}

int cmd_window(const Config& c, std::ostream& out) {
    const auto [m, n] = window_indices(c);
    const WeylWalk w = build_walk(walk_params(c), c.N);
    const WindowSums ws = window_sums(w, m, n);
    json j = echo("window", c, !c.x);
    j["parameters"]["s"] = c.s;
    j["parameters"]["t"] = c.t;
    j["m"] = m;
    j["n"] = n;
    j["J"] = cjson(ws.J);
    j["I"] = cjson(ws.I);
    j["M"] = cjson(ws.M);
    j["L"] = cjson(ws.L);
    j["A"] = mjson(ws.A);
    j["B"] = mjson(ws.B);
    j["XX"] = mjson(ws.A + ws.B);
    const double defect = std::abs(ws.L * ws.L - 2.0 * ws.I - ws.M);
    j["L2_minus_2I_minus_M"] = defect;
    j["pass"] = defect < 1e-10;
    emit_json(c, out, j);
    return status(defect < 1e-10);
}

int cmd_levy(const Config& c, std::ostream& out) {
    if (c.x) {
        const auto [m, n] = window_indices(c);
        const WeylWalk w = build_walk(walk_params(c), c.N);
        const WindowSums ws = window_sums(w, m, n);
        const double area = levy_area(w, m, n);
        const double re_target = 0.5 * std::norm(ws.L) - 0.5 * static_cast<double>(n - m) / static_cast<double>(c.N);
        json j = echo("levy", c, false);
        j["parameters"]["s"] = c.s;
        j["parameters"]["t"] = c.t;
        j["levy_area"] = area;
        j["theta2"] = cjson(ws.J);
        j["levy_minus_im_theta2"] = std::abs(area - ws.J.imag());
        j["re_theta2_minus_half_L2_plus_half_len"] = std::abs(ws.J.real() - re_target);
        const bool pass = std::abs(area - ws.J.imag()) < 1e-10 && std::abs(ws.J.real() - re_target) < 1e-10;
        j["pass"] = pass;
        emit_json(c, out, j);
        return status(pass);
    }
    const SampleSpec spec = sample_spec(c, 10000);
    const LevyHistograms h = levy_histograms(spec, c.bins, threads_of(c));
    const bool pass = all_pass(h.reports);
    if (c.format == "csv") {
        if (c.histogram != "im" && c.histogram != "re") throw UsageError("--histogram must be im or re");
        Sink sink(c.out, out);
        auto& os = sink.os();
        os << "bin_left,bin_right,count\n";
        for (const auto& b : c.histogram == "im" ? h.im : h.re)
            os << fmt_num(b.left) << ',' << fmt_num(b.right) << ',' << b.count << '\n';
        return status(pass);
    }
    auto hist = [](const std::vector<HistogramBin>& bins) {
        json a = json::array();
        for (const auto& b : bins) a.push_back({{"bin_left", b.left}, {"bin_right", b.right}, {"count", b.count}});
        return a;
    };
    json j = echo("levy", c, true);
    j["parameters"]["count"] = spec.count;
    j["parameters"]["bins"] = c.bins;
    j["reports"] = json::array();
    for (const auto& r : h.reports) j["reports"].push_back(report_json(r));
    j["skewness_im"] = h.skewness_im;
    j["skewness_se"] = h.skewness_se;
    j["histogram_im"] = hist(h.im);
    j["histogram_re"] = hist(h.re);
    j["pass"] = pass;
    emit_json(c, out, j);
    return status(pass);
}

RegularFunction function_named(const std::string& name) {
    if (name == "gaussian") return RegularFunction::gaussian();
    if (name == "gaussian-quadrature") return RegularFunction::gaussian(TransformStrategy::Quadrature);
    if (name == "delta") return RegularFunction::delta(false);
    if (name == "delta-reflected") return RegularFunction::delta(true);
    throw UsageError("--f must be gaussian, gaussian-quadrature, delta or delta-reflected");
}

int cmd_theta(const Config& c, std::ostream& out) {
    if (c.g.empty()) throw UsageError("theta needs --g x,y,phi,xi1,xi2,zeta");
    const GroupElement g = parse_group(c.g);
    const RegularFunction f = function_named(c.f);
    const ThetaResult r = theta_regular_report(f, g);
    json j{{"version", kVersion}, {"subcommand", "theta"}, {"parameters", {{"f", c.f}, {"g", gjson(g)}}}};
    j["value"] = cjson(r.value);
    j["tail_bound"] = r.tail_bound;
    j["terms"] = r.terms;
    emit_json(c, out, j);
    return 0;
}

int cmd_theta2(const Config& c, std::ostream& out) {
    if (!(c.s < c.t)) throw UsageError("need s < t");
    json j;
    bool pass = true;
    if (!c.g1.empty() || !c.g2.empty()) {
        if (c.g1.empty() || c.g2.empty()) throw UsageError("theta2 needs both --g1 and --g2");
        const GroupElement g1 = parse_group(c.g1), g2 = parse_group(c.g2);
        j = {{"version", kVersion},
             {"subcommand", "theta2"},
             {"parameters", {{"s", c.s}, {"t", c.t}, {"g1", gjson(g1)}, {"g2", gjson(g2)}}}};
        const cplx v = theta2_direct(triangle_function(c.s, c.t), g1, g2);
        const cplx vs = theta2_triangle_scaled(c.s, c.t, g1, g2);
        j["value"] = cjson(v);
        j["scaling_identity_defect"] = std::abs(v - vs);
        pass = std::abs(v - vs) < 1e-10;
    } else {
        const auto [m, n] = window_indices(c);
        const WeylParams p = walk_params(c);
        const WeylWalk w = build_walk(p, c.N);
        const GroupElement g1 = mirror_horocycle_lift(p, c.N), g2 = horocycle_lift(p, c.N);
        const double s = static_cast<double>(m) / static_cast<double>(c.N);
        const double t = static_cast<double>(n) / static_cast<double>(c.N);
        const cplx v = theta2_direct(triangle_function(s, t), g1, g2);
        const cplx J = window_sums(w, m, n).J;
        j = echo("theta2", c, !c.x);
        j["parameters"]["s"] = c.s;
        j["parameters"]["t"] = c.t;
        j["value"] = cjson(v);
        j["J"] = cjson(J);
        j["J_defect"] = std::abs(v - J);
        j["scaling_identity_defect"] = std::abs(v - theta2_triangle_scaled(s, t, g1, g2));
        pass = std::abs(v - J) < 1e-10 && j["scaling_identity_defect"].get<double>() < 1e-10;
    }
    j["pass"] = pass;
    emit_json(c, out, j);
    return status(pass);
}

int cmd_reduce(const Config& c, std::ostream& out) {
    if (c.g.empty()) throw UsageError("reduce needs --g x,y,phi,xi1,xi2,zeta");
    const GroupElement g = parse_group(c.g);
    const Reduction r = reduce(g);
    const double rt = coordinate_distance(apply_word(r.word, r.reduced), g);
    const Reduction rm = reduce(mirror(g));
    const double md = coordinate_distance(rm.reduced, mirror(r.reduced));
    json j{{"version", kVersion}, {"subcommand", "reduce"}, {"parameters", {{"g", gjson(g)}}}};
    json letters = json::array();
    for (const auto& l : r.word.letters) letters.push_back({{"gen", l.gen}, {"power", l.power}});
    j["word"] = r.word.to_string();
    j["letters"] = letters;
    j["reduced"] = gjson(r.reduced);
    j["iterations"] = r.iterations;
    j["in_fundamental_domain"] = in_fundamental_domain(r.reduced, 1e-12);
    j["roundtrip_defect"] = rt;
    j["mirror_defect"] = md;
    const bool pass = rt < 1e-9 && md < 1e-9;
    j["pass"] = pass;
    emit_json(c, out, j);
    return status(pass);
}

int cmd_triangle(const Config& c, std::ostream& out) {
    if (c.action == "dump") {
        if (c.grid < 2) throw UsageError("--grid must be at least 2");
        if (!(c.lo < c.hi)) throw UsageError("need lo < hi");
        Sink sink(c.out, out);
        auto& os = sink.os();
        os << "w1,w2,piece_tag,value\n";
        const double step = (c.hi - c.lo) / static_cast<double>(c.grid - 1);
        for (std::size_t i = 0; i < c.grid; ++i) {
            const double w1 = c.lo + step * static_cast<double>(i);
            for (std::size_t k = 0; k < c.grid; ++k) {
                const double w2 = c.lo + step * static_cast<double>(k);
                for (PieceTag tag : kAllPieces)
                    os << fmt_num(w1) << ',' << fmt_num(w2) << ',' << tag_name(tag) << ','
                       << fmt_num(piece_eval(tag, w1, w2)) << '\n';
            }
        }
        return 0;
    }
    if (c.action == "eval") {
        json j{{"version", kVersion}, {"subcommand", "triangle"},
               {"parameters", {{"action", "eval"}, {"w1", c.w1}, {"w2", c.w2}}}};
        json pieces = json::object();
        for (PieceTag tag : kAllPieces) pieces[tag_name(tag)] = piece_eval(tag, c.w1, c.w2);
        j["pieces"] = pieces;
        j["six_piece_sum"] = six_piece_sum(c.w1, c.w2);
        j["indicator"] = triangle_half_open(0.0, 1.0, c.w1, c.w2);
        const double d = partition_defect(c.w1, c.w2);
        j["partition_defect"] = d;
        j["pass"] = d < 1e-12;
        emit_json(c, out, j);
        return status(d < 1e-12);
    }
    if (c.action == "regularity") {
        const RegularityReport r = smooth_remainder_regularity(c.grid);
        json j{{"version", kVersion}, {"subcommand", "triangle"},
               {"parameters", {{"action", "regularity"}, {"grid", c.grid}}}};
        j["max_value"] = r.max_value;
        j["max_gradient"] = r.max_gradient;
        j["max_hessian"] = r.max_hessian;
        j["points"] = r.points;
        j["finite"] = r.finite;
        j["pass"] = r.finite;
        emit_json(c, out, j);
        return status(r.finite);
    }
    throw UsageError("triangle action must be dump, eval or regularity");
}

int cmd_mc_tails(const Config& c, std::ostream& out) {
    const SampleSpec spec = sample_spec(c, 200000);
    const TailReport rep = mc_tails(spec, c.R, threads_of(c), c.tail_tol);
    json j = echo("mc-tails", c, true);
    j["parameters"]["count"] = spec.count;
    j["parameters"]["R"] = c.R;
    j["parameters"]["rel_tol"] = c.tail_tol;
    j["rows"] = json::array();
    for (const auto& r : rep.rows)
        j["rows"].push_back({{"R", r.R},
                             {"exceed", r.exceed},
                             {"frequency", r.frequency},
                             {"ci_lo", r.ci.lo},
                             {"ci_hi", r.ci.hi},
                             {"target", r.target},
                             {"zero_count", r.zero_count}});
    j["reports"] = json::array();
    for (const auto& r : rep.reports) j["reports"].push_back(report_json(r));
    const bool pass = all_pass(rep.reports);
    j["pass"] = pass;
    emit_json(c, out, j);
    return status(pass);
}

int cmd_mc_moments(const Config& c, std::ostream& out) {
    const SampleSpec spec = sample_spec(c, 200000);
    std::vector<Report> reps = mc_moments(spec, threads_of(c));
    if (!c.corr.empty()) {
        if (c.corr.size() != 4) throw UsageError("--corr needs s1,t1,s2,t2");
        auto more = mc_increment_correlations(spec, {c.corr[0], c.corr[1]}, {c.corr[2], c.corr[3]}, threads_of(c));
        reps.insert(reps.end(), more.begin(), more.end());
    }
    json j = echo("mc-moments", c, true);
    j["parameters"]["count"] = spec.count;
    j["reports"] = json::array();
    for (const auto& r : reps) j["reports"].push_back(report_json(r));
    const bool pass = all_pass(reps);
    j["pass"] = pass;
    emit_json(c, out, j);
    return status(pass);
}

int cmd_equidist(const Config& c, std::ostream& out) {
    const SampleSpec spec = sample_spec(c, 10000);
    if (c.levels.size() != c.level_tols.size()) throw UsageError("--levels and --level-tols differ in length");
    const EquidistReport rep = equidistribution_experiment(spec, c.tau, c.levels, c.level_tols, threads_of(c));
    json j = echo("equidist", c, true);
    j["parameters"]["count"] = spec.count;
    j["parameters"]["tau"] = c.tau;
    j["max_mirror_defect"] = rep.max_mirror_defect;
    j["mirror_failures"] = rep.mirror_failures;
    j["reduction_failures"] = rep.reduction_failures;
    j["reports"] = json::array();
    for (const auto& r : rep.reports) j["reports"].push_back(report_json(r));
    const bool pass = all_pass(rep.reports);
    j["pass"] = pass;
    emit_json(c, out, j);
    return status(pass);
}

int cmd_rde(const Config& c, std::ostream& out) {
    RoughLift L;
    if (!c.lift.empty()) {
        std::ifstream in(c.lift, std::ios::binary);
        if (!in) throw UsageError("cannot open lift file " + c.lift);
        L = read_csv(in);
    } else {
        L = RoughLift::from_walk(build_walk(walk_params(c), c.N));
    }
    const auto xi = parse_list(c.xi0);
    VectorField vf;
    if (c.field == "tanh") {
        vf = tanh_field();
    } else if (c.field == "linear") {
        vf = linear_field(static_cast<int>(xi.size()), 0.7, 0.3);
    } else {
        throw UsageError("--field must be tanh or linear");
    }
    if (static_cast<int>(xi.size()) != vf.dim) throw UsageError("--xi0 has the wrong dimension for the field");
    const Eigen::VectorXd xi0 = Eigen::Map<const Eigen::VectorXd>(xi.data(), static_cast<Eigen::Index>(xi.size()));
    const RdeSolution sol = rde_solve(vf, xi0, L, c.stride);
    if (c.format == "csv") {
        Sink sink(c.out, out);
        auto& os = sink.os();
        os << 't';
        for (int i = 0; i < vf.dim; ++i) os << ",y" << (i + 1);
        os << '\n';
        for (std::size_t k = 0; k < sol.path.size(); ++k) {
            os << fmt_num(sol.path.times[k]);
            for (int i = 0; i < vf.dim; ++i) os << ',' << fmt_num(sol.path.Y[k](i));
            os << '\n';
        }
        return 0;
    }
    json j = echo("rde", c, !c.x && c.lift.empty());
    j["parameters"]["field"] = c.field;
    j["parameters"]["xi0"] = xi;
    j["parameters"]["stride"] = c.stride;
    if (!c.lift.empty()) j["parameters"]["lift"] = c.lift;
    j["Y_end"] = std::vector<double>(sol.path.Y.back().data(), sol.path.Y.back().data() + vf.dim);
    j["halving_difference"] = sol.halving_difference;
    j["remainder_seminorm"] = sol.remainder;
    j["steps"] = sol.path.size() - 1;
    emit_json(c, out, j);
    return 0;
}

// exact identities on random parameters; nonzero exit on any defect above 1e-10
int cmd_verify(const Config& c, std::ostream& out) {
    std::seed_seq seq{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32)};
    std::mt19937_64 eng(seq);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const std::size_t N = c.N;
    const double tol = 1e-10;

    double chen = 0.0, geo = 0.0, l2 = 0.0, jth = 0.0, levy = 0.0, re = 0.0, part = 0.0, mir = 0.0;
    for (std::size_t sample = 0; sample < c.samples; ++sample) {
        const WeylParams p{U(eng), U(eng), U(eng)};
        const WeylWalk w = build_walk(p, N);
        const RoughLift L = RoughLift::from_walk(w);
        // Chen on all triples for small N, random triples otherwise
        auto chen_at = [&](std::size_t i, std::size_t u, std::size_t k) {
            chen = std::max(chen, chen_defect(increment(L, i, u), increment(L, u, k), increment(L, i, k)).max_abs());
        };
        if (N <= 64) {
            for (std::size_t i = 0; i <= N; ++i)
                for (std::size_t u = i; u <= N; ++u)
                    for (std::size_t k = u; k <= N; ++k) chen_at(i, u, k);
        } else {
            std::uniform_int_distribution<std::size_t> I(0, N);
            for (int r = 0; r < 20000; ++r) {
                std::size_t v[3] = {I(eng), I(eng), I(eng)};
                std::sort(v, v + 3);
                chen_at(v[0], v[1], v[2]);
            }
        }
        const std::size_t pair_step = N <= 256 ? 1 : N / 256;
        for (std::size_t i = 0; i < N; i += pair_step)
            for (std::size_t k = i + 1; k <= N; k += pair_step) {
                geo = std::max(geo, geometric_defect(increment(L, i, k)).max_abs());
                const Mat2 xx = iterated_integral_grid(w, i, k);
                geo = std::max(geo, (xx - increment(L, i, k).A).max_abs());
            }
        for (int r = 0; r < 4; ++r) {
            std::size_t m = static_cast<std::size_t>(U(eng) * static_cast<double>(N));
            std::size_t n = static_cast<std::size_t>(U(eng) * static_cast<double>(N));
            if (m > n) std::swap(m, n);
            if (r == 0) m = 0, n = N;
            if (m == n) ++n;
            const WindowSums ws = window_sums(w, m, n);
            l2 = std::max(l2, std::abs(ws.L * ws.L - 2.0 * ws.I - ws.M));
            const double Nd = static_cast<double>(N);
            const cplx th = theta2_direct(triangle_function(static_cast<double>(m) / Nd, static_cast<double>(n) / Nd),
                                          mirror_horocycle_lift(p, N), horocycle_lift(p, N));
            jth = std::max(jth, std::abs(th - ws.J));
            levy = std::max(levy, std::abs(levy_area(w, m, n) - th.imag()));
            re = std::max(re, std::abs(th.real() - 0.5 * std::norm(ws.L) + 0.5 * static_cast<double>(n - m) / Nd));
        }
        for (int r = 0; r < 100; ++r) part = std::max(part, partition_defect(2.0 * U(eng) - 0.5, 2.0 * U(eng) - 0.5));
        for (int r = 0; r < 10; ++r) {
            const GroupElement g{4.0 * U(eng) - 2.0, 0.05 + U(eng), 6.0 * U(eng) - 3.0,
                                 4.0 * U(eng) - 2.0, 4.0 * U(eng) - 2.0, 4.0 * U(eng) - 2.0};
            mir = std::max(mir, coordinate_distance(reduce(mirror(g)).reduced, mirror(reduce(g).reduced)));
        }
    }
    struct Row {
        const char* name;
        double defect;
        double tol;
    };
    const Row rows[] = {{"chen", chen, tol},
                        {"geometric", geo, tol},
                        {"L2_eq_2I_plus_M", l2, tol},
                        {"J_eq_theta2", jth, tol},
                        {"levy_eq_im_theta2", levy, tol},
                        {"levy_re_eq_half_L2_minus_half_len", re, tol},
                        {"partition", part, 1e-12},
                        {"mirror", mir, 1e-9}};
    json j = echo("verify", c, false);
    j["parameters"]["samples"] = c.samples;
    j["identities"] = json::array();
    bool pass = true;
    for (const auto& r : rows) {
        const bool ok = r.defect < r.tol;
        pass = pass && ok;
        j["identities"].push_back({{"identity", r.name}, {"max_defect", r.defect}, {"tolerance", r.tol}, {"pass", ok}});
    }
    j["pass"] = pass;
    emit_json(c, out, j);
    return status(pass);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"theta sums, their rough path lift and related tools", "thetarough"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    auto common = [&](CLI::App* s, bool fixed_x, bool sampling) {
        s->add_option("--alpha", c.alpha, "linear phase coefficient");
        s->add_option("--beta", c.beta, "shift in the quadratic phase");
        s->add_option("--N", c.N, "walk length")->check(CLI::PositiveNumber);
        s->add_option("--seed", c.seed, "seed");
        s->add_option("--out", c.out, "output file (default stdout)");
        s->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        CLI::Option* xo = nullptr;
        if (fixed_x) xo = s->add_option("--x", c.x, "fixed x");
        if (sampling) {
            auto* co = s->add_option("--count", c.count, "number of samples")->check(CLI::PositiveNumber);
            auto* ao = s->add_option("--a", c.a, "left end of the sampling interval");
            auto* bo = s->add_option("--b", c.b, "right end of the sampling interval");
            auto* eo = s->add_flag("--exhaustive", c.exhaustive, "midpoint grid instead of random draws");
            s->add_option("--threads", c.threads, "worker threads (default from THETAROUGH_THREADS)");
            if (xo)
                for (auto* o : {co, ao, bo, eo}) xo->excludes(o);
        }
    };

    auto* path = app.add_subcommand("path", "piecewise-linear path X_N at the grid times (CSV)");
    common(path, true, true);
    auto* lift = app.add_subcommand("lift", "rough path lift of X_N");
    common(lift, true, true);
    lift->add_option("--gamma", c.gamma, "Holder exponent");
    auto* verify = app.add_subcommand("verify", "exact identity suite on random parameters");
    common(verify, false, false);
    verify->add_option("--samples", c.samples, "random parameter draws");
    auto* window = app.add_subcommand("window", "window sums J, I, M, L and the level-2 blocks");
    common(window, true, true);
    auto* levy = app.add_subcommand("levy", "Levy area; histograms when x is sampled");
    common(levy, true, true);
    levy->add_option("--bins", c.bins, "histogram bins")->check(CLI::PositiveNumber);
    levy->add_option("--histogram", c.histogram, "im or re (CSV output)");
    auto* theta = app.add_subcommand("theta", "theta function of a regular function on the Jacobi group");
    theta->add_option("--g", c.g, "x,y,phi,xi1,xi2,zeta");
    theta->add_option("--f", c.f, "gaussian | gaussian-quadrature | delta | delta-reflected");
    theta->add_option("--out", c.out, "output file");
    auto* theta2 = app.add_subcommand("theta2", "rank-2 theta sum of a triangle indicator");
    common(theta2, true, true);
    theta2->add_option("--g1", c.g1, "x,y,phi,xi1,xi2,zeta");
    theta2->add_option("--g2", c.g2, "x,y,phi,xi1,xi2,zeta");
    auto* red = app.add_subcommand("reduce", "reduce a group element into the fundamental domain");
    red->add_option("--g", c.g, "x,y,phi,xi1,xi2,zeta");
    red->add_option("--out", c.out, "output file");
    auto* tri = app.add_subcommand("triangle", "dyadic triangle decomposition");
    tri->add_option("action", c.action, "dump | eval | regularity");
    tri->add_option("--grid", c.grid, "grid points per axis");
    tri->add_option("--lo", c.lo, "grid lower end");
    tri->add_option("--hi", c.hi, "grid upper end");
    tri->add_option("--w1", c.w1, "first coordinate (eval)");
    tri->add_option("--w2", c.w2, "second coordinate (eval)");
    tri->add_option("--out", c.out, "output file");
    auto* tails = app.add_subcommand("mc-tails", "tail frequencies of |X_N(1)|");
    common(tails, false, true);
    tails->add_option("--R", c.R, "thresholds")->delimiter(',');
    tails->add_option("--rel-tol", c.tail_tol, "relative tolerance");
    auto* moments = app.add_subcommand("mc-moments", "moments and increment correlations of X_N");
    common(moments, false, true);
    moments->add_option("--corr", c.corr, "windows s1,t1,s2,t2")->delimiter(',');
    auto* eq = app.add_subcommand("equidist", "reduced horocycle pairs pushed by the geodesic flow");
    common(eq, false, true);
    eq->add_option("--tau", c.tau, "geodesic time");
    eq->add_option("--levels", c.levels, "levels a for P(Im z' > a)")->delimiter(',');
    eq->add_option("--level-tols", c.level_tols, "relative tolerance per level")->delimiter(',');
    auto* rde = app.add_subcommand("rde", "solve dY = f(Y) dX driven by the lift");
    common(rde, true, true);
    rde->add_option("--field", c.field, "tanh | linear");
    rde->add_option("--xi0", c.xi0, "initial value, comma separated");
    rde->add_option("--lift", c.lift, "lift CSV (t,x1,x2,X11,X12,X21,X22)");
    rde->add_option("--stride", c.stride, "grid stride")->check(CLI::PositiveNumber);
    for (auto* s : {window, levy, theta2}) {
        s->add_option("--s", c.s, "window start in [0,1]");
        s->add_option("--t", c.t, "window end in [0,1]");
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*path) return cmd_path(c, out);
        if (*lift) return cmd_lift(c, out);
        if (*verify) return cmd_verify(c, out);
        if (*window) return cmd_window(c, out);
        if (*levy) return cmd_levy(c, out);
        if (*theta) return cmd_theta(c, out);
        if (*theta2) return cmd_theta2(c, out);
        if (*red) return cmd_reduce(c, out);
        if (*tri) return cmd_triangle(c, out);
        if (*tails) return cmd_mc_tails(c, out);
        if (*moments) return cmd_mc_moments(c, out);
        if (*eq) return cmd_equidist(c, out);
        if (*rde) return cmd_rde(c, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << "error: no subcommand\n";
    return 2;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace thetarough::cli
