#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "mft/errors.hpp"

namespace mft {

inline constexpr double kEpsDiv = 1e-12;

/// Bivariate truncated Taylor expansion in the chart coordinates (s, theta).
///
/// Stores the raw derivative values c_ij = d^{i+j} p / ds^i dtheta^j for all
/// i + j <= 3 (ten coefficients, dense).  Arithmetic follows the truncated
/// Leibniz/chain rules, so building an expression out of seeded variables
/// yields the exact derivatives of that expression at the base point.
struct Jet2 {
    static constexpr int kOrder = 3;
    static constexpr int kCoeffs = 10;

    // Coefficient layout, grouped by total order:
    //   00 | 10 01 | 20 11 02 | 30 21 12 03
    std::array<double, kCoeffs> c{};

    static constexpr int index(int i, int j) {
        const int n = i + j;
        return n * (n + 1) / 2 + j;
    }

    static Jet2 constant(double v) {
        Jet2 r;
        r.c[0] = v;
        return r;
    }
    static Jet2 var_s(double v) {
        Jet2 r;
        r.c[0] = v;
        r.c[index(1, 0)] = 1.0;
        return r;
    }
    static Jet2 var_theta(double v) {
        Jet2 r;
        r.c[0] = v;
        r.c[index(0, 1)] = 1.0;
        return r;
    }

    double value() const { return c[0]; }

    /// d^{i+j} p / ds^i dtheta^j; throws OrderOutOfRange for i+j > 3.
    double partial(int i, int j) const {
        if (i < 0 || j < 0 || i + j > kOrder) throw OrderOutOfRange();
        return c[static_cast<std::size_t>(index(i, j))];
    }

    Jet2& operator+=(const Jet2& o) {
        for (int k = 0; k < kCoeffs; ++k) c[k] += o.c[k];
        return *this;
    }
    Jet2& operator-=(const Jet2& o) {
        for (int k = 0; k < kCoeffs; ++k) c[k] -= o.c[k];
        return *this;
    }
    Jet2& operator*=(double t) {
        for (double& x : c) x *= t;
        return *this;
    }
};

inline Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
inline Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
inline Jet2 operator-(const Jet2& a) {
    Jet2 r;
    for (int k = 0; k < Jet2::kCoeffs; ++k) r.c[k] = -a.c[k];
    return r;
}
inline Jet2 operator*(Jet2 a, double t) { return a *= t; }
inline Jet2 operator*(double t, Jet2 a) { return a *= t; }
inline Jet2 operator+(const Jet2& a, double t) {
    Jet2 r = a;
    r.c[0] += t;
    return r;
}
inline Jet2 operator+(double t, const Jet2& a) { return a + t; }
inline Jet2 operator-(const Jet2& a, double t) { return a + (-t); }
inline Jet2 operator-(double t, const Jet2& a) { return (-a) + t; }
inline Jet2 operator/(Jet2 a, double t) { return a *= (1.0 / t); }

namespace detail {

// Binomial coefficients up to n = 3.
inline constexpr int kBinom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

// Index pairs in storage order.
inline constexpr int kI[Jet2::kCoeffs] = {0, 1, 0, 2, 1, 0, 3, 2, 1, 0};
inline constexpr int kJ[Jet2::kCoeffs] = {0, 0, 1, 0, 1, 2, 0, 1, 2, 3};

} // namespace detail

/// Truncated Leibniz product: exact derivative values of a*b up to order 3.
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    for (int k = 0; k < Jet2::kCoeffs; ++k) {
        const int i = detail::kI[k], j = detail::kJ[k];
        double acc = 0.0;
        for (int p = 0; p <= i; ++p)
            for (int q = 0; q <= j; ++q)
                acc += detail::kBinom[i][p] * detail::kBinom[j][q] *
                       a.c[Jet2::index(p, q)] * b.c[Jet2::index(i - p, j - q)];
        r.c[k] = acc;
    }
    return r;
}

/// Composition with a univariate function given by its derivatives at a.value().
/// With w = a - a.value() (zero constant term), phi(a) truncates exactly to
///   phi0 + phi1*w + phi2/2*w^2 + phi3/6*w^3.
inline Jet2 compose(const Jet2& a, double phi0, double phi1, double phi2, double phi3) {
    Jet2 w = a;
    w.c[0] = 0.0;
    Jet2 r = Jet2::constant(phi3 / 6.0);
    r = r * w + Jet2::constant(phi2 / 2.0);
    r = r * w + Jet2::constant(phi1);
    r = r * w + Jet2::constant(phi0);
    return r;
}

inline Jet2 recip(const Jet2& a) {
    const double v = a.value();
    if (std::abs(v) <= kEpsDiv) throw DivisionNearZero();
    const double iv = 1.0 / v;
    return compose(a, iv, -iv * iv, 2.0 * iv * iv * iv, -6.0 * iv * iv * iv * iv);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * recip(b); }
inline Jet2 operator/(double t, const Jet2& b) { return recip(b) * t; }

inline Jet2 sin(const Jet2& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    return compose(a, s, c, -s, -c);
}
inline Jet2 cos(const Jet2& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    return compose(a, c, -s, -c, s);
}
inline Jet2 sinh(const Jet2& a) {
    const double s = std::sinh(a.value()), c = std::cosh(a.value());
    return compose(a, s, c, s, c);
}
inline Jet2 cosh(const Jet2& a) {
    const double s = std::sinh(a.value()), c = std::cosh(a.value());
    return compose(a, c, s, c, s);
}
inline Jet2 sqrt(const Jet2& a) {
    const double v = a.value();
    if (v <= kEpsDiv) throw DomainError("sqrt of non-positive jet value");
    const double r = std::sqrt(v);
    return compose(a, r, 0.5 / r, -0.25 / (v * r), 0.375 / (v * v * r));
}

/// Integer power; negative exponents require a nonzero value.
inline Jet2 powi(const Jet2& a, int n) {
    if (n < 0) return recip(powi(a, -n));
    Jet2 r = Jet2::constant(1.0);
    Jet2 base = a;
    while (n > 0) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return r;
}

/// Jet of |a|; requires a nonzero value (sign locally constant).
inline Jet2 abs(const Jet2& a) {
    if (std::abs(a.value()) <= kEpsDiv) throw DivisionNearZero("abs of near-zero jet value");
    return a.value() > 0.0 ? a : -a;
}

/// Derivative of the jet with respect to s.  The result carries valid
/// coefficients only up to total order 2; its top-order entries are zeroed.
inline Jet2 d_ds(const Jet2& a) {
    Jet2 r;
    for (int k = 0; k < Jet2::kCoeffs; ++k) {
        const int i = detail::kI[k], j = detail::kJ[k];
        r.c[k] = (i + j < Jet2::kOrder) ? a.c[Jet2::index(i + 1, j)] : 0.0;
    }
    return r;
}

/// Derivative with respect to theta; same order bookkeeping as d_ds.
inline Jet2 d_dtheta(const Jet2& a) {
    Jet2 r;
    for (int k = 0; k < Jet2::kCoeffs; ++k) {
        const int i = detail::kI[k], j = detail::kJ[k];
        r.c[k] = (i + j < Jet2::kOrder) ? a.c[Jet2::index(i, j + 1)] : 0.0;
    }
    return r;
}

} // namespace mft
