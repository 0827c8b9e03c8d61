#pragma once

#include <cmath>
#include <utility>

#include "mft/errors.hpp"
#include "mft/geometry.hpp"
#include "mft/surfaces.hpp"

namespace mft {

/// Profile-level state feeding the reduced eigen-system of the non-null-axis
/// charts: the angle phi with two derivatives, the profile values, and the
/// curvature ratio r = 2H/K with its s-derivative.
struct PhiState {
    double phi = 0, dphi = 0, ddphi = 0;
    double f = 0, g = 0;
    double r = 0, rprime = 0;
};

/// State for the null-axis eigenvalue formulas.  s != 0 and k'' != 0 are hard
/// requirements; k' > 0 (spacelike surface) is the hypothesis under which the
/// chart formulas were derived, but the algebra below stays finite for any
/// k' != 0, and the quadric branch with k' < 0 is deliberately admitted.
using NullAxisState = KState;

/// Builds the PhiState of a spacelike/timelike-axis family at parameter s,
/// with r and r' from the closed-form curvature expressions.
inline PhiState phi_state(const SurfaceFamily& fam, double s) {
    if (fam.axis() == AxisClass::Null) throw Error("phi_state: null-axis family");
    const ProfileState st = fam.profile_state(s);
    if (std::abs(st.dphi) <= kEpsDegenerate) throw OutOfDomain("phi'(s) = 0");
    PhiState ps;
    ps.phi = st.phi;
    ps.dphi = st.dphi;
    ps.ddphi = st.ddphi;
    ps.f = st.f;
    ps.g = st.g;
    if (fam.axis() == AxisClass::Spacelike) {
        const double sp = std::sin(st.phi), cp = std::cos(st.phi);
        if (std::abs(sp) <= kEpsDegenerate) throw OutOfDomain("sin(phi) = 0");
        ps.r = -(1.0 / st.dphi + st.f / sp);
        ps.rprime = st.ddphi / (st.dphi * st.dphi) + st.f * st.dphi * cp / (sp * sp) - cp / sp;
    } else {
        const double sp = std::sinh(st.phi), cp = std::cosh(st.phi);
        if (std::abs(sp) <= kEpsDegenerate) throw OutOfDomain("sinh(phi) = 0");
        ps.r = 1.0 / st.dphi + st.f / sp;
        ps.rprime = -st.ddphi / (st.dphi * st.dphi) - st.f * st.dphi * cp / (sp * sp) + cp / sp;
    }
    return ps;
}

/// Residuals of the two reduced equations of the eigen-system, LHS - RHS:
///   spacelike axis:  -r sin(phi) + r' cos(phi)/phi' = lambda f
///                     r cos(phi) + r' sin(phi)/phi' = mu g
///   timelike axis:   -r sinh(phi) - r' cosh(phi)/phi' = lambda f
///                    -r cosh(phi) - r' sinh(phi)/phi' = mu g
/// Both vanish identically on exact solution surfaces with their (lambda, mu).
inline std::pair<double, double> residual_reduced_system(const PhiState& st, AxisClass axis,
                                                         double lambda, double mu) {
    if (axis == AxisClass::Spacelike) {
        const double sp = std::sin(st.phi), cp = std::cos(st.phi);
        return {-st.r * sp + st.rprime * cp / st.dphi - lambda * st.f,
                st.r * cp + st.rprime * sp / st.dphi - mu * st.g};
    }
    if (axis == AxisClass::Timelike) {
        const double sp = std::sinh(st.phi), cp = std::cosh(st.phi);
        return {-st.r * sp - st.rprime * cp / st.dphi - lambda * st.f,
                -st.r * cp - st.rprime * sp / st.dphi - mu * st.g};
    }
    throw Error("residual_reduced_system: non-null axes only");
}

/// Solves the two reduced equations for (lambda, mu) at one profile point.
/// Constant across the surface exactly when the eigen-relation holds.
inline std::pair<double, double> solve_reduced_lambda_mu(const PhiState& st, AxisClass axis) {
    if (std::abs(st.f) <= kEpsDegenerate || std::abs(st.g) <= kEpsDegenerate)
        throw OutOfDomain("f or g = 0: reduced system not solvable for (lambda, mu)");
    if (axis == AxisClass::Spacelike) {
        const double sp = std::sin(st.phi), cp = std::cos(st.phi);
        return {(-st.r * sp + st.rprime * cp / st.dphi) / st.f,
                (st.r * cp + st.rprime * sp / st.dphi) / st.g};
    }
    if (axis == AxisClass::Timelike) {
        const double sp = std::sinh(st.phi), cp = std::cosh(st.phi);
        return {(-st.r * sp - st.rprime * cp / st.dphi) / st.f,
                (-st.r * cp - st.rprime * sp / st.dphi) / st.g};
    }
    throw Error("solve_reduced_lambda_mu: non-null axes only");
}

/// r' minus the value the solved system forces on it:
///   spacelike axis: r' - phi'( lambda f cos(phi) + mu g sin(phi))
///   timelike axis:  r' - phi'(-lambda f cosh(phi) + mu g sinh(phi))
/// Zero for any exact solution state.
inline double rprime_consistency(const PhiState& st, AxisClass axis, double lambda, double mu) {
    if (axis == AxisClass::Spacelike)
        return st.rprime -
               st.dphi * (lambda * st.f * std::cos(st.phi) + mu * st.g * std::sin(st.phi));
    if (axis == AxisClass::Timelike)
        return st.rprime -
               st.dphi * (-lambda * st.f * std::cosh(st.phi) + mu * st.g * std::sinh(st.phi));
    throw Error("rprime_consistency: non-null axes only");
}

/// The derivative pattern r' must equal on solutions:
///   spacelike axis: (mu - lambda)/2 * cos(phi) sin(phi)
///   timelike axis:  (lambda - mu)/2 * sinh(phi) cosh(phi), obtained by
///   differentiating r = lambda f sinh(phi) - mu g cosh(phi) and eliminating
///   with the solved r'
inline double rprime_pattern(AxisClass axis, double lambda, double mu, double phi) {
    if (axis == AxisClass::Spacelike) return 0.5 * (mu - lambda) * std::cos(phi) * std::sin(phi);
    if (axis == AxisClass::Timelike) return 0.5 * (lambda - mu) * std::sinh(phi) * std::cosh(phi);
    throw Error("rprime_pattern: non-null axes only");
}

/// phi'' forced by the mu-equation of the reduced system (both charts):
///   phi'' = phi'^2/sin(phi) * (mu g phi' + 2 cos(phi))   [spacelike]
///   phi'' = phi'^2/sinh(phi) * (mu g phi' + 2 cosh(phi)) [timelike]
inline double phi_second_from_reduced(const PhiState& st, AxisClass axis, double mu) {
    if (axis == AxisClass::Spacelike)
        return st.dphi * st.dphi / std::sin(st.phi) *
               (mu * st.g * st.dphi + 2.0 * std::cos(st.phi));
    if (axis == AxisClass::Timelike)
        return st.dphi * st.dphi / std::sinh(st.phi) *
               (mu * st.g * st.dphi + 2.0 * std::cosh(st.phi));
    throw Error("phi_second_from_reduced: non-null axes only");
}

/// Final obstruction polynomial of the mixed-eigenvalue case, evaluated at
/// c2 = cos^2(phi) (spacelike axis, c2 in [0,1]) or c2 = cosh^2(phi)
/// (timelike axis, c2 >= 1; the source prints cos powers there — the
/// hyperbolic-consistent reading is used, flagged in sweep reports):
///   spacelike: -L(M-L)^2 c2^2 + (M-L)((M-L)(L-1) - 6L + 2) c2 + 6M(L-1) - 2L(L+1)
///   timelike:  -L(M-L)^2 c2^3 + (M-L)((M-L)(L-1) + 4L) c2^2
///              + (6L^2 - 2L - 2M - 2LM + 8) c2 + 8(L+1)
/// with L = lambda, M = mu.
inline double obstruction_poly(AxisClass axis, double lambda, double mu, double c2) {
    const double d = mu - lambda;
    if (axis == AxisClass::Spacelike) {
        if (c2 < 0.0 || c2 > 1.0) throw OutOfDomain("cos^2(phi) must lie in [0,1]");
        return -lambda * d * d * c2 * c2 + d * (d * (lambda - 1.0) - 6.0 * lambda + 2.0) * c2 +
               6.0 * mu * (lambda - 1.0) - 2.0 * lambda * (lambda + 1.0);
    }
    if (axis == AxisClass::Timelike) {
        if (c2 < 1.0) throw OutOfDomain("cosh^2(phi) must be >= 1");
        return -lambda * d * d * c2 * c2 * c2 + d * (d * (lambda - 1.0) + 4.0 * lambda) * c2 * c2 +
               (6.0 * lambda * lambda - 2.0 * lambda - 2.0 * mu - 2.0 * lambda * mu + 8.0) * c2 +
               8.0 * (lambda + 1.0);
    }
    throw Error("obstruction_poly: non-null axes only");
}

/// (lambda, mu) forced by the null-axis chart at one parameter value:
///   lambda = k'(2s - k + s k')/(s^2 k'') * (2 k' k'''/k''^2 - 1) - 2 k'^2/(s k'') + k'
///   mu     = k'(2s + k - s k')/(s^2 k'') * (2 k' k'''/k''^2 - 1) + 2 k'^2/(s k'') - k'
/// Constant in s exactly for the solution families (quadric: both -2;
/// cubic a s^3 + b: both 0).
inline std::pair<double, double> lambda_mu_null_axis(const NullAxisState& st,
                                                     double eps_deg = kEpsDegenerate) {
    if (std::abs(st.s) <= eps_deg) throw OutOfDomain("s = 0");
    if (std::abs(st.ddk) <= eps_deg) throw DegenerateK();
    const double k = st.k, k1 = st.dk, k2 = st.ddk, k3 = st.dddk, s = st.s;
    const double factor = 2.0 * k1 * k3 / (k2 * k2) - 1.0;
    const double lambda =
        k1 * (2.0 * s - k + s * k1) / (s * s * k2) * factor - 2.0 * k1 * k1 / (s * k2) + k1;
    const double mu =
        k1 * (2.0 * s + k - s * k1) / (s * s * k2) * factor + 2.0 * k1 * k1 / (s * k2) - k1;
    return {lambda, mu};
}

} // namespace mft
