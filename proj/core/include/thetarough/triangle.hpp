#pragma once

#include <array>
#include <string>

namespace thetarough {

// h(x)/(h(x)+h(1-x)) with h(x) = exp(-1/x) for x > 0
double f0_default(double x);

struct BumpSpec {
    double c1, c2, c3;

    BumpSpec(double c1_, double c2_, double c3_);
    double p() const { return (c3 - c2) / (c2 - c1); }
    // c1 c3 = c2^2: the stacked series collapses to the two-term closed form
    bool geometric() const;
};

inline const BumpSpec kCornerSpec{1.0 / 12.0, 1.0 / 6.0, 1.0 / 3.0};
inline const BumpSpec kLineSpec{1.0 / 24.0, 1.0 / 12.0, 1.0 / 6.0};
inline const BumpSpec kDeltaSpec{1.0 / 6.0, 1.0 / 3.0, 2.0 / 3.0};

double bump(const BumpSpec& s, double x);     // f_{c1,c2,c3}
double stacked(const BumpSpec& s, double x);  // F_{c1,c2,c3} = sum_j f(p^j x)

// Delta = f_{1/6,1/3,2/3}
inline double delta_bump(double w) { return bump(kDeltaSpec, w); }

double t_cor(double x, double y);
double t_line(double x, double y);
double t_segm(double x, double y);

enum class PieceTag { C00, C01, C11, Lh, Lv, Ld, Smooth, Seg_h, Seg_v, Seg_d, Seg_top };

// Pieces whose sum is T_{(0,1]}. Seg_h, Seg_v, Seg_d are the segment parts
// already contained in Lh, Lv, Ld and are not listed here.
inline constexpr std::array<PieceTag, 8> kPartitionPieces{
    PieceTag::C00, PieceTag::C01, PieceTag::C11, PieceTag::Lh,
    PieceTag::Lv,  PieceTag::Ld,  PieceTag::Smooth, PieceTag::Seg_top};

inline constexpr std::array<PieceTag, 11> kAllPieces{
    PieceTag::C00, PieceTag::C01, PieceTag::C11, PieceTag::Lh, PieceTag::Lv, PieceTag::Ld,
    PieceTag::Smooth, PieceTag::Seg_h, PieceTag::Seg_v, PieceTag::Seg_d, PieceTag::Seg_top};

std::string tag_name(PieceTag t);
PieceTag tag_from_name(const std::string& name);

// s < w1 < w2 <= t
double triangle_half_open(double s, double t, double w1, double w2);
// s < w1 < w2 < t
double triangle_open(double s, double t, double w1, double w2);

double six_piece_sum(double w1, double w2);
double piece_eval(PieceTag tag, double w1, double w2);
double partition_defect(double w1, double w2);

struct RegularityReport {
    double max_value = 0.0;
    double max_gradient = 0.0;
    double max_hessian = 0.0;
    bool finite = true;
    std::size_t points = 0;
};

// finite differences of Smooth on an n x n grid of the triangle, kept
// at least `margin` away from the perimeter
RegularityReport smooth_remainder_regularity(std::size_t n, double margin = 1e-3, double h = 1e-4);

}  // namespace thetarough
