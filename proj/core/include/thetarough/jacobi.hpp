#pragma once

#include <string>
#include <vector>

#include "thetarough/linalg.hpp"

namespace thetarough {

// (x + iy, phi; (xi1, xi2), zeta); phi is the angle on the universal cover
struct GroupElement {
    double x = 0.0;
    double y = 1.0;
    double phi = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    double zeta = 0.0;

    cplx z() const { return {x, y}; }
    Vec2 xi() const { return {xi1, xi2}; }
    static GroupElement identity() { return {}; }
};

// Haar density 3/pi^2 y^-2 dx dy dphi dxi dzeta, normalized on the quotient
inline constexpr double kHaarConstant = 3.0 / (std::numbers::pi * std::numbers::pi);

Mat2 sl2_matrix(const GroupElement& g);  // n_x a_y k_phi
cplx mobius(const Mat2& m, cplx z);
// continuous angle of c w + d for k_phi, pinned to phi at w = i
double beta_k(double phi, cplx w);

GroupElement group_mul(const GroupElement& g, const GroupElement& h);
GroupElement group_inverse(const GroupElement& g);
double coordinate_distance(const GroupElement& g, const GroupElement& h);

GroupElement geodesic(const GroupElement& g, double s);   // g (a_{e^{-s}}; 0, 0)
GroupElement horocycle(const GroupElement& g, double x);  // g (n_x; 0, 0)
GroupElement heisenberg(double xi1, double xi2, double zeta);
GroupElement rotation(double phi);

// the lattice generators gamma_1 .. gamma_5
GroupElement generator(int index);

struct GammaLetter {
    int gen;    // 1..5
    long power; // nonzero
};

struct Gamma5Word {
    std::vector<GammaLetter> letters;

    bool empty() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }
    std::string to_string() const;
};

GroupElement generator_power(int index, long power);
// letters[0] letters[1] ... letters[k-1] g
GroupElement apply_word(const Gamma5Word& w, const GroupElement& g);

struct Reduction {
    Gamma5Word word;       // apply_word(word, reduced) == original
    GroupElement reduced;  // in the fundamental domain
    std::size_t iterations = 0;
};

Reduction reduce(const GroupElement& g, std::size_t max_iterations = 10000);
bool in_fundamental_domain(const GroupElement& g, double tol = 0.0);

// (x, y, phi, xi1, xi2, zeta) -> (-x, y, -phi, -xi1, xi2, -zeta)
GroupElement mirror(const GroupElement& g);

// sum over cosets with y_gamma >= 1/4 of y_gamma^{1/2}
double height_H(double x, double y);

}  // namespace thetarough
