#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mft/cases.hpp"
#include "mft/parallel.hpp"
#include "mft/surfaces.hpp"

namespace mft {

/// Which case of the five-way eigenvalue analysis a sweep witnesses.
enum class CaseId { CaseIII, CaseIV, CaseV };

inline const char* to_string(CaseId c) {
    switch (c) {
        case CaseId::CaseIII: return "III";
        case CaseId::CaseIV: return "IV";
        case CaseId::CaseV: return "V";
    }
    return "?";
}

/// Sweep box.  u is the angular variable (phi, or s on the null-axis chart);
/// v is the free eigen-parameter (lambda or mu); the null-axis Case V sweep
/// uses only u and the KSpec.
struct SweepSpec {
    double u0 = 0, u1 = 1;
    int nu = 200;
    double v0 = 0, v1 = 1;
    int nv = 200;
    KSpec k = KSpec::monomial(1.0, 2);

    double u_at(int i) const { return nu > 1 ? u0 + (u1 - u0) * i / (nu - 1) : u0; }
    double v_at(int j) const { return nv > 1 ? v0 + (v1 - v0) * j / (nv - 1) : v0; }
};

struct SweepReport {
    AxisClass axis = AxisClass::Spacelike;
    CaseId case_id = CaseId::CaseIII;
    std::string expression_id;
    std::string expression; // as evaluated
    bool errata = false;
    std::string errata_note;
    std::string constraint_note;
    SweepSpec spec;

    double min_abs = 0;
    double argmin_u = 0, argmin_v = 0;

    // Null-axis Case V only: variation of the pointwise eigenvalues.
    std::optional<double> cv_lambda, cv_mu;
    std::optional<double> lambda_mean, mu_mean;
};

inline SweepSpec default_sweep_spec(AxisClass axis, CaseId c) {
    SweepSpec sp;
    switch (axis) {
        case AxisClass::Spacelike:
            sp.u0 = 0.05;
            sp.u1 = 3.0915926535897931; // pi - 0.05
            sp.v0 = 0.1;
            sp.v1 = 5.0;
            if (c == CaseId::CaseV) {
                sp.v0 = -3.0;
                sp.v1 = 3.0;
                sp.u0 = -3.0;
                sp.u1 = 3.0;
            }
            break;
        case AxisClass::Timelike:
            sp.u0 = 0.05;
            sp.u1 = 2.0;
            sp.v0 = 0.1;
            sp.v1 = 5.0;
            if (c == CaseId::CaseV) {
                sp.v0 = -3.0;
                sp.v1 = 3.0;
                sp.u0 = -3.0;
                sp.u1 = 3.0;
            }
            break;
        case AxisClass::Null:
            sp.u0 = 0.5;
            sp.u1 = 2.0;
            sp.nv = 1;
            sp.k = KSpec::monomial(1.0, 2);
            break;
    }
    return sp;
}

namespace detail {

struct SweepExpr {
    std::string id;
    std::string text;
    bool errata;
    std::string errata_note;
    std::string constraint_note;
    double (*eval)(double u, double v);
};

inline const SweepExpr* find_expr(AxisClass axis, CaseId c) {
    // Contradiction expressions of the single-eigenvalue cases, with f = 1
    // (the reported magnitude scales linearly in f > 0).
    static const SweepExpr kSpaceIII{
        "spacelike.case3", "f*(1 + lambda*sin^2(phi)), f=1", false, "",
        "witness valid on the sign region 1 + lambda*sin^2(phi) > 0 (any lambda >= 0)",
        [](double u, double v) { return 1.0 + v * std::sin(u) * std::sin(u); }};
    static const SweepExpr kSpaceIV{
        "spacelike.case4", "3 + (mu/2 - 1)*cos^2(phi)", false, "",
        "can only vanish for mu <= -4; bounded away from zero on mu > -4",
        [](double u, double v) { return 3.0 + (v / 2.0 - 1.0) * std::cos(u) * std::cos(u); }};
    static const SweepExpr kTimeIII{
        "timelike.case3", "f*(1 + lambda*sinh^2(phi)), f=1", true,
        "printed as f*(1 - lambda*sin^2(phi)); the hyperbolic-consistent reading "
        "f*(1 + lambda*sinh^2(phi)) is evaluated",
        "witness valid on the sign region 1 + lambda*sinh^2(phi) > 0 (any lambda >= 0)",
        [](double u, double v) { return 1.0 + v * std::sinh(u) * std::sinh(u); }};
    static const SweepExpr kTimeIV{
        "timelike.case4", "3 - (mu/2 + 1)*cosh^2(phi)", false, "",
        "CAN vanish (e.g. mu=4 at phi=0): the contradiction relies on the accompanying "
        "profile ODE constraints, not on sign alone; the sweep records where",
        [](double u, double v) { return 3.0 - (v / 2.0 + 1.0) * std::cosh(u) * std::cosh(u); }};
    switch (axis) {
        case AxisClass::Spacelike:
            if (c == CaseId::CaseIII) return &kSpaceIII;
            if (c == CaseId::CaseIV) return &kSpaceIV;
            return nullptr;
        case AxisClass::Timelike:
            if (c == CaseId::CaseIII) return &kTimeIII;
            if (c == CaseId::CaseIV) return &kTimeIV;
            return nullptr;
        case AxisClass::Null: return nullptr;
    }
    return nullptr;
}

} // namespace detail

/// Evaluates a case's contradiction expression over the sweep grid and
/// reports min |value| with its location.
///
/// Case V of the non-null-axis charts sweeps (lambda, mu) and reports the
/// minimum over the box of max over a c2-grid of |obstruction polynomial|
/// (zero only where the polynomial vanishes identically, i.e. at the exact
/// solution eigenvalues).  Case V of the null-axis chart evaluates
/// lambda(s), mu(s) along s and reports their coefficient of variation in
/// min_abs (non-solution k must exceed a constancy tolerance).
inline SweepReport case_sweep(AxisClass axis, CaseId c, const SweepSpec& spec) {
    SweepReport rep;
    rep.axis = axis;
    rep.case_id = c;
    rep.spec = spec;

    if (axis == AxisClass::Null) {
        if (c != CaseId::CaseV)
            throw std::invalid_argument(
                "null-axis cases III/IV have no printed sweep expression; only Case V sweeps");
        rep.expression_id = "nullaxis.case5";
        rep.expression = "coefficient of variation of lambda(s), mu(s) along the sweep";
        rep.constraint_note =
            "constant eigenvalues occur exactly for the quadric and cubic k; "
            "variation above tolerance witnesses a non-solution k";
        KSpec k = spec.k;
        std::vector<double> ls(static_cast<std::size_t>(spec.nu)),
            ms(static_cast<std::size_t>(spec.nu));
        for (int i = 0; i < spec.nu; ++i) {
            const double s = spec.u_at(i);
            const auto d = k.derivatives(s);
            const auto [l, m] = lambda_mu_null_axis({s, d[0], d[1], d[2], d[3]});
            ls[static_cast<std::size_t>(i)] = l;
            ms[static_cast<std::size_t>(i)] = m;
        }
        // Variation relative to max(|mean|, 1): a plain ratio would report
        // huge "variation" for the zero-eigenvalue cubic family, whose values
        // are pure roundoff around 0.
        auto cv = [](const std::vector<double>& x, double& mean_out) {
            double mean = 0;
            for (double v : x) mean += v;
            mean /= static_cast<double>(x.size());
            double var = 0;
            for (double v : x) var += (v - mean) * (v - mean);
            var /= static_cast<double>(x.size());
            mean_out = mean;
            return std::sqrt(var) / std::max(std::abs(mean), 1.0);
        };
        double lm = 0, mm = 0;
        rep.cv_lambda = cv(ls, lm);
        rep.cv_mu = cv(ms, mm);
        rep.lambda_mean = lm;
        rep.mu_mean = mm;
        rep.min_abs = std::min(*rep.cv_lambda, *rep.cv_mu);
        return rep;
    }

    if (c == CaseId::CaseV) {
        // Obstruction polynomial over the (lambda, mu) box; inner c2 grid.
        const bool trig = axis == AxisClass::Spacelike;
        rep.expression_id = trig ? "spacelike.case5" : "timelike.case5";
        rep.expression = trig ? "max over cos^2(phi) in [0,1] of |obstruction polynomial|"
                              : "max over cosh^2(phi) in [1,cosh^2(2)] of |obstruction polynomial|";
        rep.errata = !trig;
        if (!trig)
            rep.errata_note =
                "final display prints cos^6/cos^4/cos^2 inside a hyperbolic derivation; "
                "evaluated in cosh^2(phi).  Transcribed as printed: the elimination "
                "substitutes the ratio f*phi'/sinh(phi) with its sign negated relative to "
                "the constraint it was solved from, so unlike the trigonometric chart the "
                "polynomial does not vanish identically at the equal-eigenvalue solution";
        rep.constraint_note = trig ? "vanishes identically only at lambda = mu in {0, 2}"
                                   : "vanishing locus marks candidate eigenvalue pairs";
        const int nc = 33;
        const double c2lo = trig ? 0.0 : 1.0;
        const double c2hi = trig ? 1.0 : std::cosh(2.0) * std::cosh(2.0);
        std::vector<double> best(static_cast<std::size_t>(spec.nu),
                                 std::numeric_limits<double>::infinity());
        std::vector<std::pair<double, double>> arg(static_cast<std::size_t>(spec.nu));
        parallel_for(static_cast<std::size_t>(spec.nu), [&](std::size_t i) {
            const double l = spec.u_at(static_cast<int>(i));
            for (int j = 0; j < spec.nv; ++j) {
                const double m = spec.v_at(j);
                double worst = 0;
                for (int q = 0; q < nc; ++q) {
                    const double c2 = c2lo + (c2hi - c2lo) * q / (nc - 1);
                    worst = std::max(worst, std::abs(obstruction_poly(axis, l, m, c2)));
                }
                if (worst < best[i]) {
                    best[i] = worst;
                    arg[i] = {l, m};
                }
            }
        });
        rep.min_abs = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < best.size(); ++i) {
            if (best[i] < rep.min_abs) {
                rep.min_abs = best[i];
                rep.argmin_u = arg[i].first;
                rep.argmin_v = arg[i].second;
            }
        }
        return rep;
    }

    const detail::SweepExpr* expr = detail::find_expr(axis, c);
    if (!expr) throw std::invalid_argument("no sweep expression for this (type, case)");
    rep.expression_id = expr->id;
    rep.expression = expr->text;
    rep.errata = expr->errata;
    rep.errata_note = expr->errata_note;
    rep.constraint_note = expr->constraint_note;

    std::vector<double> best(static_cast<std::size_t>(spec.nu),
                             std::numeric_limits<double>::infinity());
    std::vector<std::pair<double, double>> arg(static_cast<std::size_t>(spec.nu));
    parallel_for(static_cast<std::size_t>(spec.nu), [&](std::size_t i) {
        const double u = spec.u_at(static_cast<int>(i));
        for (int j = 0; j < spec.nv; ++j) {
            const double v = spec.v_at(j);
            const double val = std::abs(expr->eval(u, v));
            if (val < best[i]) {
                best[i] = val;
                arg[i] = {u, v};
            }
        }
    });
    rep.min_abs = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < best.size(); ++i) {
        if (best[i] < rep.min_abs) {
            rep.min_abs = best[i];
            rep.argmin_u = arg[i].first;
            rep.argmin_v = arg[i].second;
        }
    }
    return rep;
}

} // namespace mft
