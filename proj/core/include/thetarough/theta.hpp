#pragma once

#include <functional>
#include <limits>
#include <string>

#include "thetarough/jacobi.hpp"
#include "thetarough/linalg.hpp"
#include "thetarough/weyl.hpp"

namespace thetarough {

enum class TransformStrategy { GaussianClosedForm, Quadrature };

struct RegularFunction {
    std::string name;
    std::function<double(double)> f;
    double eta = 6.0;    // decay exponent of the majorant
    double kappa = 1.0;  // sup |f_phi(w)| (1 + w^2)^{eta/2}
    TransformStrategy strategy = TransformStrategy::Quadrature;
    // effective support used by quadrature (and exact at phi = 0 if compact)
    double support_lo = -std::numeric_limits<double>::infinity();
    double support_hi = std::numeric_limits<double>::infinity();
    bool compact = false;

    static RegularFunction gaussian(TransformStrategy s = TransformStrategy::GaussianClosedForm);
    // Delta = f_{1/6,1/3,2/3}; kappa estimated by sampling f_phi
    static RegularFunction delta(bool reflected = false);
};

struct PhiTransformResult {
    cplx value;
    double error = 0.0;              // quadrature error estimate
    bool stationary_phase = false;   // |sin phi| < 1e-3, routed to the phi = 0/pi branch
};

// sigma_phi of the phase prefactor
int sigma_phi(double phi);
PhiTransformResult phi_transform_report(const RegularFunction& f, double phi, double w);
cplx phi_transform(const RegularFunction& f, double phi, double w);

struct ThetaResult {
    cplx value;
    double tail_bound = 0.0;
    std::size_t terms = 0;
};

ThetaResult theta_regular_report(const RegularFunction& f, const GroupElement& g, double tail_eps = 1e-12);
cplx theta_regular(const RegularFunction& f, const GroupElement& g, double tail_eps = 1e-12);

// sum over lattice n with (n - xi2) sqrt(y) in (s, t]; requires phi = 0
cplx theta_indicator(double s, double t, const GroupElement& g);

struct ChiSeriesResult {
    cplx value;
    double last_term = 0.0;  // magnitude of the j = J_max contributions
};

ChiSeriesResult theta_chi_series(const GroupElement& g, double s_flow, int j_max);

struct Box2 {
    double lo1, hi1, lo2, hi2;
};

struct PlaneFunction {
    std::function<double(double, double)> F;
    Box2 support;  // closed box containing the support
};

// rank-2 theta at phi1 = phi2 = 0 (finite double sum)
cplx theta2_direct(const PlaneFunction& F, const GroupElement& g1, const GroupElement& g2);

PlaneFunction triangle_function(double s, double t);  // T_{(s,t]}

// horocycle lifts for a theta sum of length N: (x + i/N^2, 0; (alpha + beta x, 0), 0)
GroupElement horocycle_lift(const WeylParams& p, std::size_t N);
// (-x + i/N^2, 0; (-alpha - beta x, 0), 0)
GroupElement mirror_horocycle_lift(const WeylParams& p, std::size_t N);

// T_{(s,t]} expressed through T_{(0,1]}: g -> g (I; (0, s), 0) (a_{(t-s)^{-2}}; 0, 0),
// value scaled by (t - s)
cplx theta2_triangle_scaled(double s, double t, const GroupElement& g1, const GroupElement& g2);

}  // namespace thetarough
