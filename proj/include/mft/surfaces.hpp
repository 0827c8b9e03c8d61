#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "mft/errors.hpp"
#include "mft/jet.hpp"
#include "mft/lorentz.hpp"
#include "mft/profile.hpp"

namespace mft {

struct ChartPoint {
    double s = 0, theta = 0;
};

/// Default (s, theta) box a family is safe to sample on.
struct GridRange {
    double s0 = 0, s1 = 0, t0 = 0, t1 = 0;
    bool contains(double s, double t) const {
        return s >= s0 - 1e-12 && s <= s1 + 1e-12 && t >= t0 - 1e-12 && t <= t1 + 1e-12;
    }
};

enum class FamilyKind {
    RevSpacelikeAxis,
    RevTimelikeAxis,
    RevNullAxis,
    PseudosphereS21,
    HyperbolicH2,
    MinimalProfileI,
    MinimalProfileII,
    CubicNullMinimal,
};

inline const char* to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::RevSpacelikeAxis: return "RevSpacelikeAxis";
        case FamilyKind::RevTimelikeAxis: return "RevTimelikeAxis";
        case FamilyKind::RevNullAxis: return "RevNullAxis";
        case FamilyKind::PseudosphereS21: return "PseudosphereS21";
        case FamilyKind::HyperbolicH2: return "HyperbolicH2";
        case FamilyKind::MinimalProfileI: return "MinimalProfileI";
        case FamilyKind::MinimalProfileII: return "MinimalProfileII";
        case FamilyKind::CubicNullMinimal: return "CubicNullMinimal";
    }
    return "?";
}

/// k(s) choices for the null-axis chart x = (k - s - theta^2 s, k + s - theta^2 s, -2 s theta).
struct KSpec {
    enum class Form { Quadric, Cubic, Monomial };
    Form form = Form::Quadric;
    // Quadric: k = sign * c^2 / (4 s).  sign=-1 gives k' > 0 on s > 0 (spacelike
    // surface, <x,x> = -c^2); sign=+1 the timelike branch with <x,x> = +c^2.
    double c = 1.0;
    int sign = -1;
    // Cubic: k = a s^3 + b (a > 0 is the zero-mean-curvature family).
    double a = 1.0, b = 0.0;
    // Monomial: k = coef * s^power.
    double coef = 1.0;
    int power = 2;

    static KSpec quadric(double c, int sign) {
        KSpec k;
        k.form = Form::Quadric;
        k.c = c;
        k.sign = sign;
        return k;
    }
    static KSpec cubic(double a, double b) {
        KSpec k;
        k.form = Form::Cubic;
        k.a = a;
        k.b = b;
        return k;
    }
    static KSpec monomial(double coef, int power) {
        KSpec k;
        k.form = Form::Monomial;
        k.coef = coef;
        k.power = power;
        return k;
    }

    template <typename Real>
    Real value(Real s) const {
        using std::pow;
        switch (form) {
            case Form::Quadric: return Real(sign) * Real(c) * Real(c) / (4 * s);
            case Form::Cubic: return Real(a) * s * s * s + Real(b);
            case Form::Monomial: return Real(coef) * pow(s, Real(power));
        }
        return Real(0);
    }

    /// k and its first three derivatives, in closed form.
    std::array<double, 4> derivatives(double s) const {
        switch (form) {
            case Form::Quadric: {
                const double q = sign * c * c / 4.0;
                return {q / s, -q / (s * s), 2 * q / (s * s * s), -6 * q / (s * s * s * s)};
            }
            case Form::Cubic:
                return {a * s * s * s + b, 3 * a * s * s, 6 * a * s, 6 * a};
            case Form::Monomial: {
                const int p = power;
                auto pw = [&](int n) { return std::pow(s, p - n); };
                return {coef * pw(0), coef * p * pw(1), coef * p * (p - 1) * pw(2),
                        coef * p * (p - 1) * (p - 2) * pw(3)};
            }
        }
        return {};
    }

    /// Same k as a jet in s, built through jet arithmetic.
    Jet2 jet(double s) const {
        const Jet2 sj = Jet2::var_s(s);
        switch (form) {
            case Form::Quadric: return (sign * c * c / 4.0) * recip(sj);
            case Form::Cubic: return a * powi(sj, 3) + Jet2::constant(b);
            case Form::Monomial: return coef * powi(sj, power);
        }
        return Jet2{};
    }

    std::string describe() const {
        char buf[96];
        switch (form) {
            case Form::Quadric:
                std::snprintf(buf, sizeof(buf), "k=%+d*c^2/(4s), c=%g", sign, c);
                break;
            case Form::Cubic: std::snprintf(buf, sizeof(buf), "k=%g*s^3%+g", a, b); break;
            case Form::Monomial: std::snprintf(buf, sizeof(buf), "k=%g*s^%d", coef, power); break;
        }
        return buf;
    }
};

/// k(s) and derivatives at one parameter value of the null-axis chart.
struct KState {
    double s = 0, k = 0, dk = 0, ddk = 0, dddk = 0;
};

/// Position jets at one chart point: each component carries all partials up
/// to total order 3 in (s, theta).
struct SurfaceJet {
    Jet2 x1, x2, x3;
    Signature sig = Signature::plus_plus_minus();
    double normal_sign = 1.0;
};

/// One of the built-in revolution families, immutable after construction.
///
/// Spacelike- and timelike-axis charts are driven by a profile (f, g, phi):
/// analytic for the constant-curvature quadrics, tabulated for the minimal
/// and generic families.  The null-axis chart is driven by a KSpec.
class SurfaceFamily {
  public:
    static SurfaceFamily pseudosphere(double c) {
        require(c > 0, "pseudosphere radius must be positive");
        SurfaceFamily f(FamilyKind::PseudosphereS21, AxisClass::Spacelike,
                        Signature::plus_plus_minus(), {0.1, 1.4, -1.0, 1.0}, "pseudosphere-s21");
        f.c_ = c;
        return f;
    }

    static SurfaceFamily hyperbolic_plane(double c) {
        require(c > 0, "hyperbolic radius must be positive");
        SurfaceFamily f(FamilyKind::HyperbolicH2, AxisClass::Timelike,
                        Signature::plus_plus_minus(), {0.1, 1.4, -1.0, 1.0}, "hyperbolic-h2");
        f.c_ = c;
        return f;
    }

    static SurfaceFamily minimal_spacelike(double f0 = 1.0, double phi0 = 1.5707963267948966,
                                           double ds = 1e-3, int n = 1500) {
        SurfaceFamily f(FamilyKind::MinimalProfileI, AxisClass::Spacelike,
                        Signature::plus_plus_minus(), {0.1, 1.4, -1.0, 1.0}, "minimal-profile-i");
        f.table_ = std::make_shared<ProfileTable>(
            solve_minimal_profile(AxisClass::Spacelike, f0, phi0, ds, n));
        return f;
    }

    static SurfaceFamily minimal_timelike(double f0 = 1.0, double phi0 = 0.8813735870195430,
                                          double ds = 1e-3, int n = 1500) {
        SurfaceFamily f(FamilyKind::MinimalProfileII, AxisClass::Timelike,
                        Signature::plus_plus_minus(), {0.1, 1.4, -1.0, 1.0}, "minimal-profile-ii");
        f.table_ = std::make_shared<ProfileTable>(
            solve_minimal_profile(AxisClass::Timelike, f0, phi0, ds, n));
        return f;
    }

    static SurfaceFamily spacelike_axis(ProfileTable table, std::string name = "rev-spacelike-axis") {
        require(table.axis() == AxisClass::Spacelike, "table axis mismatch");
        SurfaceFamily f(FamilyKind::RevSpacelikeAxis, AxisClass::Spacelike,
                        Signature::plus_plus_minus(), {0.1, 1.4, -1.0, 1.0}, std::move(name));
        f.table_ = std::make_shared<ProfileTable>(std::move(table));
        f.clamp_domain_to_table();
        return f;
    }

    static SurfaceFamily timelike_axis(ProfileTable table, std::string name = "rev-timelike-axis") {
        require(table.axis() == AxisClass::Timelike, "table axis mismatch");
        SurfaceFamily f(FamilyKind::RevTimelikeAxis, AxisClass::Timelike,
                        Signature::plus_plus_minus(), {0.1, 1.4, -1.0, 1.0}, std::move(name));
        f.table_ = std::make_shared<ProfileTable>(std::move(table));
        f.clamp_domain_to_table();
        return f;
    }

    static SurfaceFamily null_axis(KSpec k, std::string name = "rev-null-axis") {
        SurfaceFamily f(FamilyKind::RevNullAxis, AxisClass::Null, Signature::minus_plus_plus(),
                        {0.2, 2.0, -1.0, 1.0}, std::move(name));
        f.k_ = k;
        return f;
    }

    static SurfaceFamily cubic_null_minimal(double a, double b) {
        require(a > 0, "cubic-null-minimal requires a > 0");
        SurfaceFamily f(FamilyKind::CubicNullMinimal, AxisClass::Null,
                        Signature::minus_plus_plus(), {0.2, 2.0, -1.0, 1.0}, "cubic-null-minimal");
        f.k_ = KSpec::cubic(a, b);
        return f;
    }

    /// Non-solution control: phi(s) = s + amp*sin(s) integrated through the
    /// arclength relations on the spacelike-axis chart.
    static SurfaceFamily perturbed_spacelike(double amp = 0.3) {
        ProfileTable tab = integrate_profile(
            AxisClass::Spacelike, [amp](double s) { return s + amp * std::sin(s); },
            [amp](double s) { return 1.0 + amp * std::cos(s); },
            [amp](double s) { return -amp * std::sin(s); }, 1.0, 0.0, 0.0, 1e-3, 1500);
        return spacelike_axis(std::move(tab), "perturbed-profile-i");
    }

    /// Timelike-axis analogue of the control profile.
    static SurfaceFamily perturbed_timelike(double amp = 0.3) {
        ProfileTable tab = integrate_profile(
            AxisClass::Timelike, [amp](double s) { return s + amp * std::sin(s); },
            [amp](double s) { return 1.0 + amp * std::cos(s); },
            [amp](double s) { return -amp * std::sin(s); }, 1.0, 0.0, 0.0, 1e-3, 1500);
        return timelike_axis(std::move(tab), "perturbed-profile-ii");
    }

    FamilyKind kind() const { return kind_; }
    AxisClass axis() const { return axis_; }
    const Signature& signature() const { return sig_; }
    const GridRange& domain() const { return domain_; }
    const std::string& name() const { return name_; }
    double radius() const { return c_; }
    const KSpec& kspec() const { return k_; }
    bool has_table() const { return table_ != nullptr; }
    const ProfileTable& table() const { return *table_; }

    SurfaceFamily with_domain(GridRange d) const {
        SurfaceFamily f = *this;
        f.domain_ = d;
        return f;
    }

    /// Profile state (f, g, phi, phi', phi'') at s; non-null-axis charts only.
    ProfileState profile_state(double s) const {
        switch (kind_) {
            case FamilyKind::PseudosphereS21: {
                ProfileState st;
                st.f = c_ * std::cos(s / c_);
                st.g = c_ * std::sin(s / c_);
                st.phi = s / c_ + 1.5707963267948966;
                st.dphi = 1.0 / c_;
                st.ddphi = 0.0;
                return st;
            }
            case FamilyKind::HyperbolicH2: {
                ProfileState st;
                st.f = c_ * std::sinh(s / c_);
                st.g = c_ * std::cosh(s / c_);
                st.phi = s / c_;
                st.dphi = 1.0 / c_;
                st.ddphi = 0.0;
                return st;
            }
            case FamilyKind::MinimalProfileI:
            case FamilyKind::MinimalProfileII:
            case FamilyKind::RevSpacelikeAxis:
            case FamilyKind::RevTimelikeAxis: return table_->state(s);
            default: throw Error("profile_state: null-axis family has no profile state");
        }
    }

    /// k(s) and derivatives at s; null-axis charts only.
    KState k_state(double s) const {
        if (axis_ != AxisClass::Null) throw Error("k_state: not a null-axis family");
        const auto d = k_.derivatives(s);
        return {s, d[0], d[1], d[2], d[3]};
    }

    /// Throws OutOfDomain (naming the excluded locus) if the chart point sits
    /// on a singular locus of the family.
    void validate(ChartPoint p) const {
        if (!std::isfinite(p.s) || !std::isfinite(p.theta))
            throw OutOfDomain("non-finite chart point");
        if (axis_ == AxisClass::Null) {
            if (std::abs(p.s) <= kEpsDegenerate) throw OutOfDomain("s = 0 (null-axis chart)");
            const KState ks = k_state(p.s);
            if (std::abs(ks.dk) <= kEpsDegenerate) throw OutOfDomain("k'(s) = 0 (degenerate metric)");
            return;
        }
        const ProfileState st = profile_state(p.s); // may throw table-range OutOfDomain
        if (st.f <= kEpsDegenerate) throw OutOfDomain("f(s) <= 0");
        if (std::abs(st.dphi) <= kEpsDegenerate) throw OutOfDomain("phi'(s) = 0 (parabolic profile)");
        if (axis_ == AxisClass::Spacelike && std::abs(std::sin(st.phi)) <= kEpsDegenerate)
            throw OutOfDomain("sin(phi) = 0");
        if (axis_ == AxisClass::Timelike && std::abs(std::sinh(st.phi)) <= kEpsDegenerate)
            throw OutOfDomain("sinh(phi) = 0");
    }

    /// Position jets at the chart point (all partials to total order 3).
    SurfaceJet eval_chart(ChartPoint p) const {
        validate(p);
        SurfaceJet sj;
        sj.sig = sig_;
        sj.normal_sign = normal_sign_;
        if (axis_ == AxisClass::Null) {
            const Jet2 kj = k_.jet(p.s);
            const Jet2 s = Jet2::var_s(p.s);
            const Jet2 t = Jet2::var_theta(p.theta);
            const Jet2 t2s = t * t * s;
            sj.x1 = kj - s - t2s;
            sj.x2 = kj + s - t2s;
            sj.x3 = -2.0 * (s * t);
            return sj;
        }
        const auto [fj, gj] = profile_jets(p.s);
        if (axis_ == AxisClass::Spacelike) {
            const Jet2 th = Jet2::var_theta(p.theta);
            sj.x1 = fj * cosh(th);
            sj.x2 = gj;
            sj.x3 = fj * sinh(th);
        } else {
            const Jet2 th = Jet2::var_theta(p.theta);
            sj.x1 = fj * cos(th);
            sj.x2 = fj * sin(th);
            sj.x3 = gj;
        }
        return sj;
    }

    /// Position values only, in the requested precision.  Kept deliberately
    /// independent of the jet arithmetic so finite differences of these
    /// values can serve as an oracle for the jet coefficients.
    template <typename Real>
    Vec3<Real> position(Real s, Real theta) const {
        using std::cos;
        using std::cosh;
        using std::sin;
        using std::sinh;
        validate({static_cast<double>(s), static_cast<double>(theta)});
        if (axis_ == AxisClass::Null) {
            const Real k = k_.value(s);
            return {k - s - theta * theta * s, k + s - theta * theta * s, Real(-2) * s * theta};
        }
        Real f, g;
        profile_values(s, f, g);
        if (axis_ == AxisClass::Spacelike) return {f * cosh(theta), g, f * sinh(theta)};
        return {f * cos(theta), f * sin(theta), g};
    }

  private:
    SurfaceFamily(FamilyKind kind, AxisClass axis, Signature sig, GridRange dom, std::string name)
        : kind_(kind), axis_(axis), sig_(sig), domain_(dom), name_(std::move(name)) {}

    static void require(bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    }

    void clamp_domain_to_table() {
        // Keep half a step of margin so oracle stencils never leave the table.
        const double m = table_->step();
        domain_.s0 = std::max(domain_.s0, table_->s_front() + m);
        domain_.s1 = std::min(domain_.s1, table_->s_back() - m);
    }

    /// s-only jets of f and g through the chart relations.
    std::pair<Jet2, Jet2> profile_jets(double s) const {
        const ProfileState st = profile_state(s);
        const bool trig = axis_ == AxisClass::Spacelike;
        const double w = trig ? std::sin(st.phi) : std::sinh(st.phi);
        const double wp = trig ? std::cos(st.phi) : std::cosh(st.phi);
        const double sgn = trig ? -1.0 : 1.0; // d/dphi of cos vs cosh
        Jet2 fj, gj;
        fj.c[Jet2::index(0, 0)] = st.f;
        fj.c[Jet2::index(1, 0)] = wp;
        fj.c[Jet2::index(2, 0)] = sgn * w * st.dphi;
        fj.c[Jet2::index(3, 0)] = sgn * (wp * st.dphi * st.dphi + w * st.ddphi);
        gj.c[Jet2::index(0, 0)] = st.g;
        gj.c[Jet2::index(1, 0)] = w;
        gj.c[Jet2::index(2, 0)] = wp * st.dphi;
        gj.c[Jet2::index(3, 0)] = sgn * w * st.dphi * st.dphi + wp * st.ddphi;
        return {fj, gj};
    }

    template <typename Real>
    void profile_values(Real s, Real& f, Real& g) const {
        using std::cos;
        using std::cosh;
        using std::sin;
        using std::sinh;
        switch (kind_) {
            case FamilyKind::PseudosphereS21:
                f = Real(c_) * cos(s / Real(c_));
                g = Real(c_) * sin(s / Real(c_));
                return;
            case FamilyKind::HyperbolicH2:
                f = Real(c_) * sinh(s / Real(c_));
                g = Real(c_) * cosh(s / Real(c_));
                return;
            default: table_->values(s, f, g); return;
        }
    }

    FamilyKind kind_;
    AxisClass axis_;
    Signature sig_;
    GridRange domain_;
    std::string name_;
    double normal_sign_ = 1.0;
    double c_ = 0;
    std::shared_ptr<const ProfileTable> table_;
    KSpec k_;
};

} // namespace mft
