#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "mft/errors.hpp"
#include "mft/jet.hpp"
#include "mft/lorentz.hpp"
#include "mft/surfaces.hpp"

namespace mft {

enum class FormChoice { FirstForm, SecondForm, ThirdForm };

inline const char* to_string(FormChoice j) {
    switch (j) {
        case FormChoice::FirstForm: return "I";
        case FormChoice::SecondForm: return "II";
        case FormChoice::ThirdForm: return "III";
    }
    return "?";
}

/// Coefficients of the three fundamental forms at a chart point, kept as jets
/// so one more (s, theta)-derivative is available to the Beltrami operator.
///
/// The third-form coefficients are computed twice: from the rational
/// combinations of E..N (primary, stored as jets) and from the derivatives of
/// the unit normal (cross-check values e11_n, e12_n, e22_n).
struct FormCoefficients {
    Jet2 E, F, G;       // first form, valid to total order 2
    Jet2 L, M, N;       // second form, valid to total order 1
    Jet2 e11, e12, e22; // third form (rational formulas), valid to order 1
    double e11_n = 0, e12_n = 0, e22_n = 0; // <n_s,n_s>, <n_s,n_t>, <n_t,n_t>
    Vec3J normal;       // unit normal jets, valid to order 2
    Signature sig = Signature::plus_plus_minus();

    double det_first() const { return E.value() * G.value() - F.value() * F.value(); }
    double det_second() const { return L.value() * N.value() - M.value() * M.value(); }

    /// Degeneracy scale: max of |E|,|G|,|L|,|N|,1.
    double scale() const {
        return std::max({std::abs(E.value()), std::abs(G.value()), std::abs(L.value()),
                         std::abs(N.value()), 1.0});
    }
};

/// Curvatures and curvature ratios at a point.  K and H come from the forms;
/// r1, r2 are the principal curvatures in the orientation fixed by the cross
/// product normal; r = 2H/K and r' is its s-derivative.
struct CurvatureData {
    double K = 0, H = 0;
    double r1 = 0, r2 = 0;
    double r = 0, rprime = 0;
    Jet2 Kj, Hj; // valid to total order 1
};

/// E..N, the unit normal n = normal_sign * normalize(x_s x x_theta), and the
/// third form both ways.  Throws DegenerateMetric / LightlikeNormal /
/// ParabolicPoint at degenerate points.
inline FormCoefficients fundamental_forms(const SurfaceJet& sj, double eps_deg = kEpsDegenerate) {
    FormCoefficients fc;
    fc.sig = sj.sig;
    const Vec3J xs{d_ds(sj.x1), d_ds(sj.x2), d_ds(sj.x3)};
    const Vec3J xt{d_dtheta(sj.x1), d_dtheta(sj.x2), d_dtheta(sj.x3)};

    fc.E = inner(xs, xs, sj.sig);
    fc.F = inner(xs, xt, sj.sig);
    fc.G = inner(xt, xt, sj.sig);

    const Jet2 det1 = fc.E * fc.G - fc.F * fc.F;
    const double s2 = fc.scale() * fc.scale();
    if (std::abs(det1.value()) <= eps_deg * s2) throw DegenerateMetric();

    Vec3J raw = lorentz_cross(xs, xt, sj.sig);
    Jet2 nn = inner(raw, raw, sj.sig);
    if (std::abs(nn.value()) <= eps_deg * s2) throw LightlikeNormal();
    const Jet2 inv = sj.normal_sign / sqrt(abs(nn));
    fc.normal = {raw.x1 * inv, raw.x2 * inv, raw.x3 * inv};

    const Vec3J xss{d_ds(xs.x1), d_ds(xs.x2), d_ds(xs.x3)};
    const Vec3J xst{d_dtheta(xs.x1), d_dtheta(xs.x2), d_dtheta(xs.x3)};
    const Vec3J xtt{d_dtheta(xt.x1), d_dtheta(xt.x2), d_dtheta(xt.x3)};
    fc.L = inner(xss, fc.normal, sj.sig);
    fc.M = inner(xst, fc.normal, sj.sig);
    fc.N = inner(xtt, fc.normal, sj.sig);

    const Jet2 det2 = fc.L * fc.N - fc.M * fc.M;
    if (std::abs(det2.value()) <= eps_deg * fc.scale() * fc.scale()) throw ParabolicPoint();

    // Rational formulas for the third form.
    fc.e11 = (fc.E * (fc.M * fc.M) - 2.0 * (fc.F * (fc.L * fc.M)) + fc.G * (fc.L * fc.L)) / det1;
    fc.e12 = (fc.E * (fc.M * fc.N) - fc.F * (fc.L * fc.N) + fc.G * (fc.L * fc.M) -
              fc.F * (fc.M * fc.M)) /
             det1;
    fc.e22 = (fc.G * (fc.M * fc.M) - 2.0 * (fc.F * (fc.N * fc.M)) + fc.E * (fc.N * fc.N)) / det1;

    // Cross-check: same coefficients as inner products of normal derivatives.
    const Vec3J ns{d_ds(fc.normal.x1), d_ds(fc.normal.x2), d_ds(fc.normal.x3)};
    const Vec3J nt{d_dtheta(fc.normal.x1), d_dtheta(fc.normal.x2), d_dtheta(fc.normal.x3)};
    fc.e11_n = inner(ns, ns, sj.sig).value();
    fc.e12_n = inner(ns, nt, sj.sig).value();
    fc.e22_n = inner(nt, nt, sj.sig).value();
    return fc;
}

/// Optional profile context for the closed-form r' of the two non-null-axis
/// charts; without it r' falls back to the jet derivative of 2H/K.
struct ProfileContext {
    AxisClass axis = AxisClass::Spacelike;
    ProfileState st;
};

inline CurvatureData curvatures(const FormCoefficients& fc,
                                const std::optional<ProfileContext>& ctx = std::nullopt,
                                double eps_deg = kEpsDegenerate) {
    CurvatureData cd;
    const Jet2 det1 = fc.E * fc.G - fc.F * fc.F;
    const Jet2 det2 = fc.L * fc.N - fc.M * fc.M;
    cd.Kj = det2 / det1;
    cd.Hj = (fc.E * fc.N - 2.0 * (fc.F * fc.M) + fc.G * fc.L) / (2.0 * det1);
    cd.K = cd.Kj.value();
    cd.H = cd.Hj.value();
    if (std::abs(cd.K) <= eps_deg) throw FlatPoint();

    // Principal curvatures; all built-in charts are orthogonal (F = M = 0),
    // where the shape operator is diagonal.
    cd.r1 = fc.L.value() / fc.E.value();
    cd.r2 = fc.N.value() / fc.G.value();

    const Jet2 rj = 2.0 * cd.Hj / cd.Kj;
    cd.r = rj.value();
    if (ctx) {
        const ProfileState& st = ctx->st;
        if (ctx->axis == AxisClass::Spacelike) {
            const double sp = std::sin(st.phi), cp = std::cos(st.phi);
            cd.rprime = st.ddphi / (st.dphi * st.dphi) + st.f * st.dphi * cp / (sp * sp) - cp / sp;
        } else if (ctx->axis == AxisClass::Timelike) {
            const double sp = std::sinh(st.phi), cp = std::cosh(st.phi);
            cd.rprime = -st.ddphi / (st.dphi * st.dphi) - st.f * st.dphi * cp / (sp * sp) + cp / sp;
        } else {
            cd.rprime = rj.partial(1, 0);
        }
    } else {
        cd.rprime = rj.partial(1, 0);
    }
    return cd;
}

namespace detail {

// Laplace-Beltrami of p for the form with entries (a, b; b, c), leading-minus
// convention:  -(1/sqrt|det|) * [ d_s(sqrt|det| (J^11 p_s + J^12 p_t))
//                                + d_t(sqrt|det| (J^21 p_s + J^22 p_t)) ].
inline double beltrami_from_form(const Jet2& a, const Jet2& b, const Jet2& c, const Jet2& p) {
    const Jet2 det = a * c - b * b;
    const double sign = det.value() > 0.0 ? 1.0 : -1.0;
    const Jet2 sd = sqrt(abs(det));
    const Jet2 ps = d_ds(p);
    const Jet2 pt = d_dtheta(p);
    const Jet2 flux_s = sign * ((c * ps - b * pt) / sd);
    const Jet2 flux_t = sign * ((a * pt - b * ps) / sd);
    return -(d_ds(flux_s).value() + d_dtheta(flux_t).value()) / sd.value();
}

} // namespace detail

/// Beltrami operator of p with respect to the chosen fundamental form.
/// The third-form branch follows the expanded rational form: numerators
/// G M^2 - 2 F N M + E N^2 (s-flux), E M N - F L N + G L M - F M^2 (mixed)
/// and E M^2 - 2 F L M + G L^2 (theta-flux), all over (LN - M^2) sqrt|EG - F^2|,
/// with the prefactor -sqrt|EG - F^2| / (LN - M^2).
inline double beltrami(const FormCoefficients& fc, const Jet2& p, FormChoice which,
                       double eps_deg = kEpsDegenerate) {
    const double s2 = fc.scale() * fc.scale();
    switch (which) {
        case FormChoice::FirstForm:
            if (std::abs(fc.det_first()) <= eps_deg * s2) throw DegenerateMetric();
            return detail::beltrami_from_form(fc.E, fc.F, fc.G, p);
        case FormChoice::SecondForm:
            if (std::abs(fc.det_second()) <= eps_deg * s2) throw ParabolicPoint();
            return detail::beltrami_from_form(fc.L, fc.M, fc.N, p);
        case FormChoice::ThirdForm: {
            if (std::abs(fc.det_second()) <= eps_deg * s2) throw ParabolicPoint();
            if (std::abs(fc.det_first()) <= eps_deg * s2) throw DegenerateMetric();
            const Jet2 w = fc.L * fc.N - fc.M * fc.M;
            const Jet2 sd = sqrt(abs(fc.E * fc.G - fc.F * fc.F));
            const Jet2 den = w * sd;
            const Jet2 num_s = fc.G * (fc.M * fc.M) - 2.0 * (fc.F * (fc.N * fc.M)) +
                               fc.E * (fc.N * fc.N);
            const Jet2 num_x = fc.E * (fc.M * fc.N) - fc.F * (fc.L * fc.N) +
                               fc.G * (fc.L * fc.M) - fc.F * (fc.M * fc.M);
            const Jet2 num_t = fc.E * (fc.M * fc.M) - 2.0 * (fc.F * (fc.L * fc.M)) +
                               fc.G * (fc.L * fc.L);
            const Jet2 ps = d_ds(p);
            const Jet2 pt = d_dtheta(p);
            const Jet2 term_s = (num_s * ps - num_x * pt) / den;
            const Jet2 term_t = (num_x * ps - num_t * pt) / den;
            return -(sd.value() / w.value()) *
                   (d_ds(term_s).value() - d_dtheta(term_t).value());
        }
    }
    throw Error("beltrami: unknown form choice");
}

/// Third-form Beltrami operator evaluated from the per-chart closed forms:
///
///   spacelike axis: -p_ss/phi'^2 + p_tt/sin^2(phi)
///                   + (phi''/phi'^3 - cos(phi)/(phi' sin(phi))) p_s
///   timelike axis:  -p_ss/phi'^2 - p_tt/sinh^2(phi)
///                   + (phi''/phi'^3 - cosh(phi)/(phi' sinh(phi))) p_s
///   null axis:      -4k'^2/k''^2 p_ss - k' p_tt
///                   + (2k'/k''^3)(2k'k''' - k''^2) p_s   (requires k' > 0)
inline double beltrami_closed_form(const SurfaceFamily& fam, ChartPoint pt, const Jet2& p) {
    const double pss = p.partial(2, 0);
    const double ptt = p.partial(0, 2);
    const double ps = p.partial(1, 0);
    switch (fam.axis()) {
        case AxisClass::Spacelike: {
            const ProfileState st = fam.profile_state(pt.s);
            const double sp = std::sin(st.phi), cp = std::cos(st.phi), dp = st.dphi;
            if (std::abs(dp) <= kEpsDegenerate) throw OutOfDomain("phi'(s) = 0");
            if (std::abs(sp) <= kEpsDegenerate) throw OutOfDomain("sin(phi) = 0");
            return -pss / (dp * dp) + ptt / (sp * sp) +
                   (st.ddphi / (dp * dp * dp) - cp / (dp * sp)) * ps;
        }
        case AxisClass::Timelike: {
            const ProfileState st = fam.profile_state(pt.s);
            const double sp = std::sinh(st.phi), cp = std::cosh(st.phi), dp = st.dphi;
            if (std::abs(dp) <= kEpsDegenerate) throw OutOfDomain("phi'(s) = 0");
            if (std::abs(sp) <= kEpsDegenerate) throw OutOfDomain("sinh(phi) = 0");
            return -pss / (dp * dp) - ptt / (sp * sp) +
                   (st.ddphi / (dp * dp * dp) - cp / (dp * sp)) * ps;
        }
        case AxisClass::Null: {
            const KState ks = fam.k_state(pt.s);
            if (ks.dk <= kEpsDegenerate)
                throw OutOfDomain("k'(s) <= 0 (closed form assumes a spacelike surface)");
            if (std::abs(ks.ddk) <= kEpsDegenerate) throw OutOfDomain("k''(s) = 0 (parabolic)");
            const double k1 = ks.dk, k2 = ks.ddk, k3 = ks.dddk;
            return -4.0 * k1 * k1 / (k2 * k2) * pss - k1 * ptt +
                   (2.0 * k1 / (k2 * k2 * k2)) * (2.0 * k1 * k3 - k2 * k2) * ps;
        }
    }
    throw Error("beltrami_closed_form: unknown axis");
}

/// Componentwise Beltrami of the position vector.
inline Vec3M laplacian_position(const SurfaceFamily& fam, ChartPoint pt, FormChoice which) {
    const SurfaceJet sj = fam.eval_chart(pt);
    const FormCoefficients fc = fundamental_forms(sj);
    return {beltrami(fc, sj.x1, which), beltrami(fc, sj.x2, which), beltrami(fc, sj.x3, which)};
}

} // namespace mft
