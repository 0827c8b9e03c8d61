#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mft/errors.hpp"

namespace mft {

inline constexpr double kEpsDegenerate = 1e-9;

/// Axis class of the revolution surface; fixes the chart and the profile
/// arclength convention (trigonometric for a spacelike axis, hyperbolic for
/// a timelike axis; the null axis uses its own k(s)-based chart).
enum class AxisClass { Spacelike, Timelike, Null };

/// Profile state at one parameter value, with enough phi-derivatives to build
/// third-order position jets through the chart relations.
struct ProfileState {
    double f = 0, g = 0, phi = 0, dphi = 0, ddphi = 0;
};

struct ProfileNode {
    double s = 0, f = 0, g = 0, phi = 0, dphi = 0;
    double ddphi = 0; // derived from the generating model, not stored in CSV
};

namespace detail {

// Classical fixed-step RK4 on a small state vector.
template <std::size_t N, typename F>
inline std::array<double, N> rk4_step(const F& rhs, double t, const std::array<double, N>& y,
                                      double h) {
    auto add = [](const std::array<double, N>& a, const std::array<double, N>& b, double w) {
        std::array<double, N> r;
        for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + w * b[i];
        return r;
    };
    const auto k1 = rhs(t, y);
    const auto k2 = rhs(t + 0.5 * h, add(y, k1, 0.5 * h));
    const auto k3 = rhs(t + 0.5 * h, add(y, k2, 0.5 * h));
    const auto k4 = rhs(t + h, add(y, k3, h));
    std::array<double, N> r;
    for (std::size_t i = 0; i < N; ++i)
        r[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return r;
}

// Two-point quintic Hermite basis: value, first and second derivative data at
// both ends give a C^2 interpolant with O(h^6) value error.  Takes the
// normalized segment coordinate u in [0,1] directly; deriving u from a
// per-node abscissa would leave ulp-level value jumps at segment switches,
// which finite differences of the interpolant amplify by 1/h^2.  The value
// basis is grouped around (v1 - v0): the H0/H5 terms otherwise cancel across
// magnitudes ~|v|/h^2 and dominate the derivative roundoff.
template <typename Real>
inline Real quintic_hermite(Real u, Real h, Real v0, Real d0, Real a0, Real v1, Real d1, Real a1) {
    const Real u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
    const Real H1 = u - 6 * u3 + 8 * u4 - 3 * u5;
    const Real H2 = (u2 - 3 * u3 + 3 * u4 - u5) / 2;
    const Real H3 = (u3 - 2 * u4 + u5) / 2;
    const Real H4 = -4 * u3 + 7 * u4 - 3 * u5;
    const Real H5 = 10 * u3 - 15 * u4 + 6 * u5;
    return v0 + (v1 - v0) * H5 + h * (d0 * H1 + d1 * H4) + h * h * (a0 * H2 + a1 * H3);
}

template <typename Real>
inline Real quintic_hermite_d1(Real u, Real h, Real v0, Real d0, Real a0, Real v1, Real d1,
                               Real a1) {
    const Real u2 = u * u, u3 = u2 * u, u4 = u3 * u;
    const Real dH1 = 1 - 18 * u2 + 32 * u3 - 15 * u4;
    const Real dH2 = (2 * u - 9 * u2 + 12 * u3 - 5 * u4) / 2;
    const Real dH3 = (3 * u2 - 8 * u3 + 5 * u4) / 2;
    const Real dH4 = -12 * u2 + 28 * u3 - 15 * u4;
    const Real dH5 = 30 * u2 - 60 * u3 + 30 * u4;
    return (v1 - v0) / h * dH5 + d0 * dH1 + d1 * dH4 + h * (a0 * dH2 + a1 * dH3);
}

template <typename Real>
inline Real quintic_hermite_d2(Real u, Real h, Real v0, Real d0, Real a0, Real v1, Real d1,
                               Real a1) {
    const Real u2 = u * u, u3 = u2 * u;
    const Real dH1 = -36 * u + 96 * u2 - 60 * u3;
    const Real dH2 = (2 - 18 * u + 36 * u2 - 20 * u3) / 2;
    const Real dH3 = (6 * u - 24 * u2 + 20 * u3) / 2;
    const Real dH4 = -24 * u + 84 * u2 - 60 * u3;
    const Real dH5 = 60 * u - 180 * u2 + 120 * u3;
    return (v1 - v0) / (h * h) * dH5 + (d0 * dH1 + d1 * dH4) / h + a0 * dH2 + a1 * dH3;
}

inline void format_g17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

} // namespace detail

/// Uniformly sampled profile curve (s, f, g, phi, phi') with a derived phi''
/// column.  Off-node queries use quintic Hermite interpolation per channel;
/// the second-derivative node data comes from the generating model's analytic
/// right-hand side, which keeps interpolated states consistent with the chart
/// relations far below the oracle tolerances.
class ProfileTable {
  public:
    /// Recomputes the phi-derivatives of an interpolated state from the
    /// generating model's analytic right-hand side.  Interpolating them
    /// instead would inherit the ~eps/step^2 noise floor of second-derivative
    /// interpolation from double-stored nodes.
    using StateRefiner = std::function<void(double s, ProfileState&)>;

    ProfileTable() = default;
    ProfileTable(AxisClass axis, std::vector<ProfileNode> nodes)
        : axis_(axis), nodes_(std::move(nodes)) {
        if (nodes_.size() < 2) throw ProfileDegenerate("profile table needs at least 2 nodes");
        ds_ = nodes_[1].s - nodes_[0].s;
        for (std::size_t i = 1; i < nodes_.size(); ++i) {
            const double step = nodes_[i].s - nodes_[i - 1].s;
            if (std::abs(step - ds_) > 1e-9 * std::max(1.0, std::abs(ds_)))
                throw ProfileDegenerate("profile table spacing is not uniform");
        }
    }

    void set_refiner(StateRefiner r) { refiner_ = std::move(r); }

    AxisClass axis() const { return axis_; }
    std::size_t size() const { return nodes_.size(); }
    const ProfileNode& node(std::size_t i) const { return nodes_[i]; }
    double s_front() const { return nodes_.front().s; }
    double s_back() const { return nodes_.back().s; }
    double step() const { return ds_; }

    bool contains(double s) const { return s >= s_front() - 1e-12 && s <= s_back() + 1e-12; }

    /// Interpolated state at s (quintic Hermite per channel).
    ProfileState state(double s) const {
        if (!contains(s)) throw OutOfDomain("s outside profile table range");
        const std::size_t i = segment(s);
        const double u = (s - nodes_.front().s) / ds_ - static_cast<double>(i);
        const ProfileNode& a = nodes_[i];
        const ProfileNode& b = nodes_[i + 1];
        ProfileState st;
        st.f = detail::quintic_hermite<double>(u, ds_, a.f, fprime(a), fsecond(a), b.f, fprime(b),
                                               fsecond(b));
        st.g = detail::quintic_hermite<double>(u, ds_, a.g, gprime(a), gsecond(a), b.g, gprime(b),
                                               gsecond(b));
        st.phi = detail::quintic_hermite<double>(u, ds_, a.phi, a.dphi, a.ddphi, b.phi, b.dphi,
                                                 b.ddphi);
        st.dphi = detail::quintic_hermite_d1<double>(u, ds_, a.phi, a.dphi, a.ddphi, b.phi, b.dphi,
                                                     b.ddphi);
        st.ddphi = detail::quintic_hermite_d2<double>(u, ds_, a.phi, a.dphi, a.ddphi, b.phi,
                                                      b.dphi, b.ddphi);
        if (refiner_) refiner_(s, st);
        return st;
    }

    /// Interpolated (f, g) values only, in the requested precision.
    template <typename Real>
    void values(Real s, Real& f, Real& g) const {
        if (!contains(static_cast<double>(s))) throw OutOfDomain("s outside profile table range");
        const std::size_t i = segment(static_cast<double>(s));
        const ProfileNode& a = nodes_[i];
        const ProfileNode& b = nodes_[i + 1];
        const Real u = (s - Real(nodes_.front().s)) / Real(ds_) - Real(static_cast<double>(i));
        const Real h = Real(ds_);
        f = detail::quintic_hermite<Real>(u, h, Real(a.f), Real(fprime(a)), Real(fsecond(a)),
                                          Real(b.f), Real(fprime(b)), Real(fsecond(b)));
        g = detail::quintic_hermite<Real>(u, h, Real(a.g), Real(gprime(a)), Real(gsecond(a)),
                                          Real(b.g), Real(gprime(b)), Real(gsecond(b)));
    }

    void save_csv(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot open " + path + " for writing");
        out << csv_string();
    }

    /// CSV body: header s,f,g,phi,dphi then one node per row at 17 significant
    /// digits, LF line endings.
    std::string csv_string() const {
        std::string out = "s,f,g,phi,dphi\n";
        for (const ProfileNode& n : nodes_) {
            detail::format_g17(out, n.s);
            out += ',';
            detail::format_g17(out, n.f);
            out += ',';
            detail::format_g17(out, n.g);
            out += ',';
            detail::format_g17(out, n.phi);
            out += ',';
            detail::format_g17(out, n.dphi);
            out += '\n';
        }
        return out;
    }

    static ProfileTable load_csv(const std::string& path, AxisClass axis) {
        std::ifstream in(path);
        if (!in) throw Error("cannot open " + path);
        std::string line;
        if (!std::getline(in, line)) throw Error("empty profile CSV");
        std::vector<ProfileNode> nodes;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            ProfileNode n;
            std::istringstream ss(line);
            char comma;
            if (!(ss >> n.s >> comma >> n.f >> comma >> n.g >> comma >> n.phi >> comma >> n.dphi))
                throw Error("malformed profile CSV row: " + line);
            if (n.f <= 0.0) throw ProfileDegenerate("profile CSV has f <= 0");
            nodes.push_back(n);
        }
        ProfileTable tab(axis, std::move(nodes));
        tab.estimate_ddphi_nodes();
        return tab;
    }

  private:
    std::size_t segment(double s) const {
        const double pos = (s - nodes_.front().s) / ds_;
        auto i = static_cast<std::ptrdiff_t>(std::floor(pos));
        if (i < 0) i = 0;
        if (i >= static_cast<std::ptrdiff_t>(nodes_.size()) - 1)
            i = static_cast<std::ptrdiff_t>(nodes_.size()) - 2;
        return static_cast<std::size_t>(i);
    }

    bool trig() const { return axis_ == AxisClass::Spacelike; }

    // Chart relations: f' and g' in terms of phi, and their s-derivatives.
    double fprime(const ProfileNode& n) const {
        return trig() ? std::cos(n.phi) : std::cosh(n.phi);
    }
    double gprime(const ProfileNode& n) const {
        return trig() ? std::sin(n.phi) : std::sinh(n.phi);
    }
    double fsecond(const ProfileNode& n) const {
        return trig() ? -std::sin(n.phi) * n.dphi : std::sinh(n.phi) * n.dphi;
    }
    double gsecond(const ProfileNode& n) const {
        return trig() ? std::cos(n.phi) * n.dphi : std::cosh(n.phi) * n.dphi;
    }

    // For CSV-loaded tables the model is unknown; estimate phi'' nodes from
    // the stored dphi column (4th-order interior stencils, one-sided edges).
    void estimate_ddphi_nodes() {
        const std::size_t n = nodes_.size();
        auto dp = [&](std::size_t i) { return nodes_[i].dphi; };
        for (std::size_t i = 0; i < n; ++i) {
            double v;
            if (n < 5) {
                if (i == 0)
                    v = (dp(1) - dp(0)) / ds_;
                else if (i + 1 == n)
                    v = (dp(i) - dp(i - 1)) / ds_;
                else
                    v = (dp(i + 1) - dp(i - 1)) / (2 * ds_);
            } else if (i >= 2 && i + 2 < n) {
                v = (-dp(i + 2) + 8 * dp(i + 1) - 8 * dp(i - 1) + dp(i - 2)) / (12 * ds_);
            } else if (i < 2) {
                v = (-25 * dp(i) + 48 * dp(i + 1) - 36 * dp(i + 2) + 16 * dp(i + 3) -
                     3 * dp(i + 4)) /
                    (12 * ds_);
            } else {
                v = (25 * dp(i) - 48 * dp(i - 1) + 36 * dp(i - 2) - 16 * dp(i - 3) +
                     3 * dp(i - 4)) /
                    (12 * ds_);
            }
            nodes_[i].ddphi = v;
        }
    }

    AxisClass axis_ = AxisClass::Spacelike;
    std::vector<ProfileNode> nodes_;
    double ds_ = 0;
    StateRefiner refiner_; // not carried through CSV round trips
};

/// Integrates the zero-mean-curvature profile system with classical RK4:
///   spacelike axis: f' = cos(phi),  g' = sin(phi),  phi' = -sin(phi)/f
///   timelike axis:  f' = cosh(phi), g' = sinh(phi), phi' = -sinh(phi)/f
/// Throws ProfileDegenerate if f <= 0 at any node, or (spacelike axis) if
/// sin(phi) falls within the degeneracy band.
inline ProfileTable solve_minimal_profile(AxisClass axis, double f0, double phi0, double ds, int n,
                                          double s0 = 0.0) {
    if (axis == AxisClass::Null) throw std::invalid_argument("minimal profile: non-null axis only");
    if (f0 <= 0.0) throw ProfileDegenerate("minimal profile: f0 must be positive");
    const bool trig = axis == AxisClass::Spacelike;
    if (trig && std::abs(std::sin(phi0)) < kEpsDegenerate)
        throw ProfileDegenerate("minimal profile: sin(phi0) ~ 0");

    auto rhs = [trig](double, const std::array<double, 3>& y) {
        const double f = y[0], phi = y[2];
        if (f <= 0.0) throw ProfileDegenerate("minimal profile: f <= 0 during integration");
        if (trig) return std::array<double, 3>{std::cos(phi), std::sin(phi), -std::sin(phi) / f};
        return std::array<double, 3>{std::cosh(phi), std::sinh(phi), -std::sinh(phi) / f};
    };
    auto ddphi_of = [trig](double f, double phi) {
        // d/ds of the minimal-surface relation phi' = -w(phi)/f, with
        // w = sin or sinh and f' = cos or cosh.
        const double w = trig ? std::sin(phi) : std::sinh(phi);
        const double wp = trig ? std::cos(phi) : std::cosh(phi);
        const double dphi = -w / f;
        return -wp * dphi / f + w * wp / (f * f);
    };

    std::vector<ProfileNode> nodes;
    nodes.reserve(static_cast<std::size_t>(n) + 1);
    std::array<double, 3> y{f0, 0.0, phi0};
    for (int i = 0; i <= n; ++i) {
        const double s = s0 + i * ds;
        if (y[0] <= 0.0) throw ProfileDegenerate("minimal profile: f <= 0 at node");
        const double w = trig ? std::sin(y[2]) : std::sinh(y[2]);
        if (trig && std::abs(w) < kEpsDegenerate)
            throw ProfileDegenerate("minimal profile: sin(phi) ~ 0 at node");
        ProfileNode nd;
        nd.s = s;
        nd.f = y[0];
        nd.g = y[1];
        nd.phi = y[2];
        nd.dphi = -w / y[0];
        nd.ddphi = ddphi_of(y[0], y[2]);
        nodes.push_back(nd);
        if (i < n) y = detail::rk4_step<3>(rhs, s, y, ds);
    }
    ProfileTable tab(axis, std::move(nodes));
    tab.set_refiner([trig, ddphi_of](double, ProfileState& st) {
        const double w = trig ? std::sin(st.phi) : std::sinh(st.phi);
        st.dphi = -w / st.f;
        st.ddphi = ddphi_of(st.f, st.phi);
    });
    return tab;
}

/// Integrates f' = cos/cosh(phi(s)), g' = sin/sinh(phi(s)) for an analytic
/// phi with known first and second derivatives (RK4 on the nonautonomous
/// system).  Used for non-solution control profiles.
inline ProfileTable integrate_profile(AxisClass axis, const std::function<double(double)>& phi,
                                      const std::function<double(double)>& dphi,
                                      const std::function<double(double)>& ddphi, double f0,
                                      double g0, double s0, double ds, int n) {
    if (axis == AxisClass::Null) throw std::invalid_argument("profile integration: non-null axis");
    const bool trig = axis == AxisClass::Spacelike;
    auto rhs = [&](double s, const std::array<double, 2>&) {
        const double p = phi(s);
        if (trig) return std::array<double, 2>{std::cos(p), std::sin(p)};
        return std::array<double, 2>{std::cosh(p), std::sinh(p)};
    };
    std::vector<ProfileNode> nodes;
    nodes.reserve(static_cast<std::size_t>(n) + 1);
    std::array<double, 2> y{f0, g0};
    for (int i = 0; i <= n; ++i) {
        const double s = s0 + i * ds;
        if (y[0] <= 0.0) throw ProfileDegenerate("profile integration: f <= 0 at node");
        ProfileNode nd;
        nd.s = s;
        nd.f = y[0];
        nd.g = y[1];
        nd.phi = phi(s);
        nd.dphi = dphi(s);
        nd.ddphi = ddphi(s);
        nodes.push_back(nd);
        if (i < n) y = detail::rk4_step<2>(rhs, s, y, ds);
    }
    ProfileTable tab(axis, std::move(nodes));
    tab.set_refiner([phi, dphi, ddphi](double s, ProfileState& st) {
        st.phi = phi(s);
        st.dphi = dphi(s);
        st.ddphi = ddphi(s);
    });
    return tab;
}

/// Max over nodes of |f'^2 + g'^2 - 1| (spacelike axis) or |f'^2 - g'^2 - 1|
/// (timelike axis), with f', g' from finite differences of the table columns
/// (4th-order interior stencils where the table is long enough).  Checks that
/// the stored values really trace an arclength-parametrized profile.
inline double profile_constraint_residual(const ProfileTable& tab) {
    const std::size_t n = tab.size();
    if (n < 3) throw Error("profile_constraint_residual: table too short");
    const double ds = tab.step();
    const bool trig = tab.axis() == AxisClass::Spacelike;
    auto fd = [&](auto col, std::size_t i) {
        if (n >= 5 && i >= 2 && i + 2 < n)
            return (-col(i + 2) + 8 * col(i + 1) - 8 * col(i - 1) + col(i - 2)) / (12 * ds);
        if (i == 0) return (col(1) - col(0)) / ds;
        if (i + 1 == n) return (col(i) - col(i - 1)) / ds;
        return (col(i + 1) - col(i - 1)) / (2 * ds);
    };
    auto fcol = [&](std::size_t i) { return tab.node(i).f; };
    auto gcol = [&](std::size_t i) { return tab.node(i).g; };
    double worst = 0.0;
    const std::size_t lo = n >= 5 ? 2 : 0;
    const std::size_t hi = n >= 5 ? n - 2 : n;
    for (std::size_t i = lo; i < hi; ++i) {
        const double fp = fd(fcol, i), gp = fd(gcol, i);
        const double res = trig ? fp * fp + gp * gp - 1.0 : fp * fp - gp * gp - 1.0;
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

} // namespace mft
