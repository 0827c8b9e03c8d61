#pragma once

// Finite-difference oracle for the position jets, independent of the jet
// arithmetic: it probes the value-only evaluator in quad precision with
// central differences at step h = 1e-5 (5-point stencils for pure second
// derivatives, the 4-point cross stencil for the mixed one).

#include <array>
#include <cmath>
#include <random>

#include "mft/surfaces.hpp"
#include "quad.hpp"

namespace mfttest {

struct FdJet {
    // [component][which]: which = d/ds, d/dt, d2/ds2, d2/dsdt, d2/dt2
    std::array<std::array<double, 5>, 3> d{};
    std::array<double, 3> value{};
};

inline FdJet fd_oracle(const mft::SurfaceFamily& fam, double s, double t, double h = 1e-5) {
    auto at = [&](double ds, double dt) {
        return fam.position<Quad>(Quad(s) + Quad(ds), Quad(t) + Quad(dt));
    };
    const Quad h2 = Quad(h) * Quad(h);
    auto comp = [](const mft::Vec3<Quad>& v, int c) { return c == 0 ? v.x1 : c == 1 ? v.x2 : v.x3; };

    const auto c00 = at(0, 0);
    const auto sp = at(h, 0), sm = at(-h, 0), sp2 = at(2 * h, 0), sm2 = at(-2 * h, 0);
    const auto tp = at(0, h), tm = at(0, -h), tp2 = at(0, 2 * h), tm2 = at(0, -2 * h);
    const auto pp = at(h, h), pm = at(h, -h), mp = at(-h, h), mm = at(-h, -h);

    FdJet r;
    for (int c = 0; c < 3; ++c) {
        r.value[c] = double(comp(c00, c));
        r.d[c][0] = double((comp(sp, c) - comp(sm, c)) / (2 * Quad(h)));
        r.d[c][1] = double((comp(tp, c) - comp(tm, c)) / (2 * Quad(h)));
        r.d[c][2] = double((-comp(sp2, c) + 16 * comp(sp, c) - 30 * comp(c00, c) +
                            16 * comp(sm, c) - comp(sm2, c)) /
                           (12 * h2));
        r.d[c][3] = double((comp(pp, c) - comp(pm, c) - comp(mp, c) + comp(mm, c)) / (4 * h2));
        r.d[c][4] = double((-comp(tp2, c) + 16 * comp(tp, c) - 30 * comp(c00, c) +
                            16 * comp(tm, c) - comp(tm2, c)) /
                           (12 * h2));
    }
    return r;
}

/// Worst mismatch between jet coefficients and the oracle over the first and
/// second partials of all three components, measured as
/// |jet - fd| / max(|fd|, abs_floor/rel_tol) so a single number can be
/// compared against rel_tol.
inline double fd_oracle_worst(const mft::SurfaceFamily& fam, double s, double t,
                              double abs_floor = 1e-8, double rel_tol = 1e-6) {
    const mft::SurfaceJet sj = fam.eval_chart({s, t});
    const FdJet fd = fd_oracle(fam, s, t);
    const std::array<const mft::Jet2*, 3> comps{&sj.x1, &sj.x2, &sj.x3};
    const int oi[5] = {1, 0, 2, 1, 0};
    const int oj[5] = {0, 1, 0, 1, 2};
    double worst = 0;
    for (int c = 0; c < 3; ++c) {
        for (int w = 0; w < 5; ++w) {
            const double jet = comps[c]->partial(oi[w], oj[w]);
            const double ref = fd.d[c][w];
            const double denom = std::max(std::abs(ref), abs_floor / rel_tol);
            worst = std::max(worst, std::abs(jet - ref) / denom);
        }
    }
    return worst;
}

/// Random chart points inside the family's default domain, shrunk so the
/// widest stencil stays inside.
inline std::vector<mft::ChartPoint> random_points(const mft::SurfaceFamily& fam, int n,
                                                  unsigned seed, double margin = 5e-5) {
    std::mt19937_64 rng(seed);
    const auto& d = fam.domain();
    std::uniform_real_distribution<double> us(d.s0 + margin, d.s1 - margin);
    std::uniform_real_distribution<double> ut(d.t0 + margin, d.t1 - margin);
    std::vector<mft::ChartPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back({us(rng), ut(rng)});
    return pts;
}

/// The families every cross-family test iterates over.
inline std::vector<mft::SurfaceFamily> builtin_families() {
    using mft::KSpec;
    using mft::SurfaceFamily;
    std::vector<SurfaceFamily> fams;
    fams.push_back(SurfaceFamily::pseudosphere(1.0));
    fams.push_back(SurfaceFamily::hyperbolic_plane(1.0));
    fams.push_back(SurfaceFamily::minimal_spacelike());
    fams.push_back(SurfaceFamily::minimal_timelike());
    fams.push_back(SurfaceFamily::null_axis(KSpec::quadric(1.0, -1), "rev-null-axis-quadric-spacelike"));
    fams.push_back(SurfaceFamily::null_axis(KSpec::quadric(1.0, +1), "rev-null-axis-quadric-timelike"));
    fams.push_back(SurfaceFamily::cubic_null_minimal(1.0, 0.0));
    fams.push_back(SurfaceFamily::perturbed_spacelike());
    fams.push_back(SurfaceFamily::perturbed_timelike());
    fams.push_back(SurfaceFamily::null_axis(KSpec::monomial(1.0, 2), "rev-null-axis-s2"));
    return fams;
}

} // namespace mfttest
