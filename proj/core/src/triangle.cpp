#include "thetarough/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thetarough {

double f0_default(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

BumpSpec::BumpSpec(double c1_, double c2_, double c3_) : c1(c1_), c2(c2_), c3(c3_) {
    if (!(0.0 < c1 && c1 < c2 && c2 < c3 && c3 < 1.0))
        throw std::invalid_argument("bump spec needs 0 < c1 < c2 < c3 < 1");
    if (!(p() > 1.0)) throw std::invalid_argument("bump spec needs p > 1");
}

bool BumpSpec::geometric() const { return std::abs(c1 * c3 - c2 * c2) <= 1e-14 * c2 * c2; }

double bump(const BumpSpec& s, double x) {
    if (x <= s.c1 || x >= s.c3) return 0.0;
    if (x <= s.c2) return f0_default((x - s.c1) / (s.c2 - s.c1));
    return f0_default((s.c3 - x) / (s.c3 - s.c2));
}

double stacked(const BumpSpec& s, double x) {
    if (x <= 0.0 || x >= s.c3) return 0.0;
    if (s.geometric()) {
        if (x <= s.c2) return 1.0;
        return bump(s, x);
    }
    // generic triple: only the finitely many j with p^j x in (c1, c3) contribute
    const double p = s.p();
    double acc = 0.0;
    double y = x;
    while (y < s.c3) {
        acc += bump(s, y);
        y *= p;
    }
    return acc;
}

double t_cor(double x, double y) { return stacked(kCornerSpec, x) * stacked(kCornerSpec, y); }

double t_line(double x, double y) {
    const double fy = stacked(kLineSpec, y);
    if (fy == 0.0) return 0.0;
    const double seg = (x == 0.5) ? 1.0 : 0.0;
    return (stacked(kCornerSpec, 0.5 - x) + seg + stacked(kCornerSpec, x - 0.5)) * fy;
}

double t_segm(double x, double y) { return x == 0.5 ? stacked(kLineSpec, y) : 0.0; }

std::string tag_name(PieceTag t) {
    switch (t) {
        case PieceTag::C00: return "C00";
        case PieceTag::C01: return "C01";
        case PieceTag::C11: return "C11";
        case PieceTag::Lh: return "Lh";
        case PieceTag::Lv: return "Lv";
        case PieceTag::Ld: return "Ld";
        case PieceTag::Smooth: return "Smooth";
        case PieceTag::Seg_h: return "Seg_h";
        case PieceTag::Seg_v: return "Seg_v";
        case PieceTag::Seg_d: return "Seg_d";
        case PieceTag::Seg_top: return "Seg_top";
    }
    throw std::invalid_argument("unknown piece tag");
}

PieceTag tag_from_name(const std::string& name) {
    for (PieceTag t : kAllPieces)
        if (tag_name(t) == name) return t;
    throw std::invalid_argument("unknown piece tag: " + name);
}

double triangle_half_open(double s, double t, double w1, double w2) {
    return (s < w1 && w1 < w2 && w2 <= t) ? 1.0 : 0.0;
}

double triangle_open(double s, double t, double w1, double w2) {
    return (s < w1 && w1 < w2 && w2 < t) ? 1.0 : 0.0;
}

double six_piece_sum(double w1, double w2) {
    return t_cor(w1, w2 - w1) + t_cor(w1, 1.0 - w2) + t_cor(1.0 - w2, w2 - w1) +
           t_line(w1, 1.0 - w2) + t_line(w2, w1) + t_line(w1, w2 - w1);
}

double piece_eval(PieceTag tag, double w1, double w2) {
    switch (tag) {
        case PieceTag::C00: return t_cor(w1, w2 - w1);
        case PieceTag::C01: return t_cor(w1, 1.0 - w2);
        case PieceTag::C11: return t_cor(1.0 - w2, w2 - w1);
        case PieceTag::Lh: return t_line(w1, 1.0 - w2);
        case PieceTag::Lv: return t_line(w2, w1);
        case PieceTag::Ld: return t_line(w1, w2 - w1);
        case PieceTag::Smooth:
            if (triangle_open(0.0, 1.0, w1, w2) == 0.0) return 0.0;
            return 1.0 - six_piece_sum(w1, w2);
        case PieceTag::Seg_h: return t_segm(w1, 1.0 - w2);
        case PieceTag::Seg_v: return t_segm(w2, w1);
        case PieceTag::Seg_d: return t_segm(w1, w2 - w1);
        case PieceTag::Seg_top: return (w2 == 1.0 && 0.0 < w1 && w1 < 1.0) ? 1.0 : 0.0;
    }
    throw std::invalid_argument("unknown piece tag");
}

double partition_defect(double w1, double w2) {
    double acc = 0.0;
    for (PieceTag t : kPartitionPieces) acc += piece_eval(t, w1, w2);
    return acc - triangle_half_open(0.0, 1.0, w1, w2);
}

RegularityReport smooth_remainder_regularity(std::size_t n, double margin, double h) {
    if (n < 2) throw std::invalid_argument("regularity grid needs n >= 2");
    RegularityReport r;
    auto S = [](double a, double b) { return piece_eval(PieceTag::Smooth, a, b); };
    // distance from (w1, w2) to the perimeter of {0 < w1 < w2 < 1}
    auto dist = [](double a, double b) {
        return std::min({a, 1.0 - b, (b - a) / std::sqrt(2.0)});
    };
    const double pad = margin + 2.0 * h;
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
            const double a = static_cast<double>(i) / static_cast<double>(n);
            const double b = static_cast<double>(j) / static_cast<double>(n);
            if (!(a < b) || dist(a, b) < pad) continue;
            const double c = S(a, b);
            const double gx = (S(a + h, b) - S(a - h, b)) / (2.0 * h);
            const double gy = (S(a, b + h) - S(a, b - h)) / (2.0 * h);
            const double hxx = (S(a + h, b) - 2.0 * c + S(a - h, b)) / (h * h);
            const double hyy = (S(a, b + h) - 2.0 * c + S(a, b - h)) / (h * h);
            const double hxy = (S(a + h, b + h) - S(a + h, b - h) - S(a - h, b + h) + S(a - h, b - h)) / (4.0 * h * h);
            if (!std::isfinite(c) || !std::isfinite(gx) || !std::isfinite(gy) || !std::isfinite(hxx) ||
                !std::isfinite(hyy) || !std::isfinite(hxy))
                r.finite = false;
            r.max_value = std::max(r.max_value, std::abs(c));
            r.max_gradient = std::max(r.max_gradient, std::hypot(gx, gy));
            r.max_hessian = std::max(r.max_hessian, std::max({std::abs(hxx), std::abs(hyy), std::abs(hxy)}));
            ++r.points;
        }
    }
    return r;
}

}  // namespace thetarough
