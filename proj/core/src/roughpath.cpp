#include "thetarough/roughpath.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "thetarough/format.hpp"

namespace thetarough {

std::size_t RoughLift::index_of(double t) const {
    auto it = std::lower_bound(times.begin(), times.end(), t - 1e-12);
    if (it == times.end() || std::abs(*it - t) > 1e-12)
        throw std::out_of_range("time not on the lift grid");
    return static_cast<std::size_t>(it - times.begin());
}

RoughLift RoughLift::from_grid(const IteratedIntegralGrid& g) {
    RoughLift L;
    L.times.resize(g.N + 1);
    for (std::size_t k = 0; k <= g.N; ++k) L.times[k] = static_cast<double>(k) / static_cast<double>(g.N);
    L.level1 = g.level1;
    L.level2 = g.level2;
    return L;
}

RoughLift RoughLift::from_walk(const WeylWalk& w) { return from_grid(lift_grid(w)); }

RoughLift RoughLift::from_polyline(const std::vector<double>& times, const std::vector<Vec2>& points) {
    if (times.size() != points.size() || times.size() < 2)
        throw std::invalid_argument("polyline needs matching times/points, at least 2");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw std::invalid_argument("polyline times must increase");
    RoughLift L;
    L.times = times;
    L.level1.resize(times.size());
    L.level2.resize(times.size());
    for (std::size_t i = 1; i < times.size(); ++i) {
        const Vec2 d = points[i] - points[i - 1];
        L.level2[i] = L.level2[i - 1] + outer(L.level1[i - 1], d) + 0.5 * outer(d, d);
        L.level1[i] = points[i] - points[0];
    }
    return L;
}

Increment2 increment(const RoughLift& L, std::size_t i, std::size_t j) {
    if (i >= L.size() || j >= L.size()) throw std::out_of_range("increment index outside lift");
    Increment2 r;
    r.a = L.level1[j] - L.level1[i];
    r.A = L.level2[j] - L.level2[i] - outer(L.level1[i], r.a);
    return r;
}

Increment2 increment(const RoughLift& L, double s, double t) {
    return increment(L, L.index_of(s), L.index_of(t));
}

Mat2 chen_defect(const Increment2& su, const Increment2& ut, const Increment2& st) {
    return st.A - su.A - ut.A - outer(su.a, ut.a);
}

Mat2 geometric_defect(const Increment2& inc) {
    return 0.5 * (inc.A + inc.A.transpose()) - 0.5 * outer(inc.a, inc.a);
}

HolderSeminorms holder_seminorms(const RoughLift& L, double gamma) {
    if (L.size() < 2) throw std::invalid_argument("holder seminorms need at least 2 grid points");
    if (!(gamma > 1.0 / 3.0 && gamma <= 1.0)) throw std::domain_error("gamma must lie in (1/3, 1]");
    HolderSeminorms h;
    const std::size_t n = L.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double len = L.times[j] - L.times[i];
            const Increment2 inc = increment(L, i, j);
            h.level1 = std::max(h.level1, inc.a.norm() / std::pow(len, gamma));
            h.level2 = std::max(h.level2, inc.A.frobenius() / std::pow(len, 2.0 * gamma));
        }
    }
    h.homogeneous = h.level1 + std::sqrt(h.level2);
    return h;
}

double rough_distance(const RoughLift& L1, const RoughLift& L2, double gamma) {
    if (L1.size() != L2.size()) throw std::invalid_argument("rough distance needs a common grid");
    for (std::size_t i = 0; i < L1.size(); ++i)
        if (std::abs(L1.times[i] - L2.times[i]) > 1e-12)
            throw std::invalid_argument("rough distance needs a common grid");
    double d1 = 0.0, d2 = 0.0;
    const std::size_t n = L1.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double len = L1.times[j] - L1.times[i];
            const Increment2 a = increment(L1, i, j);
            const Increment2 b = increment(L2, i, j);
            d1 = std::max(d1, (a.a - b.a).norm() / std::pow(len, gamma));
            d2 = std::max(d2, (a.A - b.A).frobenius() / std::pow(len, 2.0 * gamma));
        }
    }
    return d1 + d2;
}

void write_csv(std::ostream& os, const RoughLift& L) {
    os << "t,x1,x2,X11,X12,X21,X22\n";
    for (std::size_t i = 0; i < L.size(); ++i) {
        const Vec2& a = L.level1[i];
        const Mat2& A = L.level2[i];
        os << fmt_num(L.times[i]) << ',' << fmt_num(a.v1) << ',' << fmt_num(a.v2) << ','
           << fmt_num(A.m11) << ',' << fmt_num(A.m12) << ',' << fmt_num(A.m21) << ','
           << fmt_num(A.m22) << '\n';
    }
}

RoughLift read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty lift csv");
    if (line.rfind("t,x1,x2,X11,X12,X21,X22", 0) != 0) throw std::runtime_error("bad lift csv header");
    RoughLift L;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double v[7];
        std::size_t pos = 0;
        for (int k = 0; k < 7; ++k) {
            const std::size_t next = line.find(',', pos);
            if (k < 6 && next == std::string::npos) throw std::runtime_error("short lift csv row");
            v[k] = parse_num(std::string_view(line).substr(pos, next == std::string::npos ? std::string::npos : next - pos));
            pos = next + 1;
        }
        L.times.push_back(v[0]);
        L.level1.push_back({v[1], v[2]});
        L.level2.push_back({v[3], v[4], v[5], v[6]});
    }
    return L;
}

}  // namespace thetarough
