#pragma once

#include <stdexcept>
#include <string>

namespace mft {

/// Base class for all domain/degeneracy errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Attempt to normalize a vector whose Lorentzian norm is (numerically) zero.
struct LightlikeNormalize : Error {
    explicit LightlikeNormalize(const std::string& what = "cannot normalize a lightlike vector")
        : Error(what) {}
};

/// Jet division by a jet whose value is numerically zero (singular chart point).
struct DivisionNearZero : Error {
    explicit DivisionNearZero(const std::string& what = "jet division by near-zero value")
        : Error(what) {}
};

/// Elementary function evaluated outside its domain (e.g. sqrt of a non-positive jet).
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Requested a jet coefficient beyond the stored truncation order.
struct OrderOutOfRange : Error {
    explicit OrderOutOfRange(const std::string& what = "jet partial order out of range")
        : Error(what) {}
};

/// Chart point outside the family's valid domain; carries the excluded-locus name.
struct OutOfDomain : Error {
    explicit OutOfDomain(const std::string& locus) : Error("point outside valid domain: " + locus) {}
};

/// First fundamental form degenerate at the point (EG - F^2 ~ 0).
struct DegenerateMetric : Error {
    DegenerateMetric() : Error("degenerate first fundamental form (EG - F^2 ~ 0)") {}
};

/// Surface normal is lightlike; no unit normal exists at the point.
struct LightlikeNormal : Error {
    LightlikeNormal() : Error("lightlike surface normal") {}
};

/// LN - M^2 ~ 0: second/third fundamental forms unusable at the point.
struct ParabolicPoint : Error {
    ParabolicPoint() : Error("parabolic point (LN - M^2 ~ 0)") {}
};

/// Gauss curvature numerically zero; curvature ratios undefined.
struct FlatPoint : Error {
    FlatPoint() : Error("flat point (K ~ 0)") {}
};

/// Profile integration produced a degenerate state (f <= 0 or excluded angle).
struct ProfileDegenerate : Error {
    explicit ProfileDegenerate(const std::string& what) : Error(what) {}
};

/// Grid sampling left fewer accepted samples than the fit needs.
struct TooFewSamples : Error {
    explicit TooFewSamples(const std::string& what) : Error(what) {}
};

/// Least-squares design matrix numerically rank deficient.
struct RankDeficient : Error {
    explicit RankDeficient(const std::string& what) : Error(what) {}
};

/// k''(s) vanishes where the null-axis eigenvalue formulas divide by it.
struct DegenerateK : Error {
    DegenerateK() : Error("k'' ~ 0: null-axis eigenvalue formulas degenerate") {}
};

} // namespace mft
