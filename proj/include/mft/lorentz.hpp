#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "mft/errors.hpp"
#include "mft/jet.hpp"

namespace mft {

inline constexpr double kEpsLight = 1e-10;

/// Diagonal metric signature of the ambient 3-space: exactly one -1 entry.
/// Each chart carries its own signature (the coefficient tables of the two
/// non-null-axis charts come out right under (+,+,-), the null-axis chart
/// under (-,+,+)).
class Signature {
  public:
    Signature(int e1, int e2, int e3) : eps_{e1, e2, e3} {
        int minus = 0;
        for (int e : eps_) {
            if (e != 1 && e != -1) throw std::invalid_argument("signature entries must be +1 or -1");
            if (e == -1) ++minus;
        }
        if (minus != 1) throw std::invalid_argument("signature must have exactly one -1 entry");
    }

    static Signature minus_plus_plus() { return Signature(-1, 1, 1); }
    static Signature plus_plus_minus() { return Signature(1, 1, -1); }

    int eps(int k) const { return eps_[static_cast<std::size_t>(k)]; }

    bool operator==(const Signature& o) const { return eps_ == o.eps_; }

  private:
    std::array<int, 3> eps_;
};

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

/// 3-vector over double (point values) or Jet2 (values with chart partials).
template <typename T>
struct Vec3 {
    T x1{}, x2{}, x3{};
};

using Vec3M = Vec3<double>;
using Vec3J = Vec3<Jet2>;

template <typename T>
inline Vec3<T> operator+(const Vec3<T>& a, const Vec3<T>& b) {
    return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
}
template <typename T>
inline Vec3<T> operator-(const Vec3<T>& a, const Vec3<T>& b) {
    return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
}
template <typename T>
inline Vec3<T> operator*(const Vec3<T>& a, double t) {
    return {a.x1 * t, a.x2 * t, a.x3 * t};
}
template <typename T>
inline Vec3<T> operator*(double t, const Vec3<T>& a) {
    return a * t;
}

/// Indefinite inner product  eps1*u1*v1 + eps2*u2*v2 + eps3*u3*v3.
template <typename T>
inline T inner(const Vec3<T>& u, const Vec3<T>& v, const Signature& sig) {
    return u.x1 * v.x1 * static_cast<double>(sig.eps(0)) +
           u.x2 * v.x2 * static_cast<double>(sig.eps(1)) +
           u.x3 * v.x3 * static_cast<double>(sig.eps(2));
}

/// Lorentzian cross product, defined by <u x v, w> = det[u v w] for all w.
/// Componentwise this is the Euclidean cross product rescaled by the metric
/// signs: (u x v)_k = eps_k * (u x_E v)_k.
template <typename T>
inline Vec3<T> lorentz_cross(const Vec3<T>& u, const Vec3<T>& v, const Signature& sig) {
    Vec3<T> e{u.x2 * v.x3 - u.x3 * v.x2,
              u.x3 * v.x1 - u.x1 * v.x3,
              u.x1 * v.x2 - u.x2 * v.x1};
    return {e.x1 * static_cast<double>(sig.eps(0)),
            e.x2 * static_cast<double>(sig.eps(1)),
            e.x3 * static_cast<double>(sig.eps(2))};
}

namespace detail {
inline double scalar_value(double v) { return v; }
inline double scalar_value(const Jet2& v) { return v.value(); }
inline double sqrt_abs(double v) { return std::sqrt(std::abs(v)); }
inline Jet2 sqrt_abs(const Jet2& v) { return mft::sqrt(mft::abs(v)); }
} // namespace detail

/// v / sqrt(|<v,v>|); throws LightlikeNormalize when the norm is within
/// eps_light of zero (degenerate surface point).
template <typename T>
inline Vec3<T> normalize(const Vec3<T>& v, const Signature& sig, double eps_light = kEpsLight) {
    T q = inner(v, v, sig);
    if (std::abs(detail::scalar_value(q)) <= eps_light) throw LightlikeNormalize();
    T inv = 1.0 / detail::sqrt_abs(q);
    return {v.x1 * inv, v.x2 * inv, v.x3 * inv};
}

/// Timelike / spacelike / lightlike classification with tolerance band.
inline CausalCharacter causal_character(const Vec3M& v, const Signature& sig,
                                        double eps_light = kEpsLight) {
    if (v.x1 == 0.0 && v.x2 == 0.0 && v.x3 == 0.0)
        throw std::invalid_argument("causal_character: zero vector");
    const double q = inner(v, v, sig);
    if (q < -eps_light) return CausalCharacter::Timelike;
    if (q > eps_light) return CausalCharacter::Spacelike;
    return CausalCharacter::Lightlike;
}

inline bool is_finite(const Vec3M& v) {
    return std::isfinite(v.x1) && std::isfinite(v.x2) && std::isfinite(v.x3);
}

} // namespace mft
