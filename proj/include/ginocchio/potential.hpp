#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "ginocchio/coordinate_map.hpp"
#include "ginocchio/errors.hpp"
#include "ginocchio/params.hpp"

namespace ginocchio {

struct PotentialSample {
    double x = 0.0;
    cplx v{};
};

// The four terms of the potential, exposed separately so figure-level
// disagreements can be localised.
struct PotentialTerms {
    cplx well{};         // -g4 (s(s+1)+1-g2) / D
    cplx centrifugal{};  //  g4 l(l-1) coth^2 u / D
    cplx quadratic{};    // -3 g4 (g2-1)(3g2-1) / (4 D^2)
    cplx cubic{};        //  5 g6 (g2-1)^2 / (4 D^3)

    cplx total() const { return well + centrifugal + quadratic + cubic; }
};

struct PotentialTable {
    PotentialParams params;
    MapTable map;
    std::vector<PotentialSample> samples;

    bool symmetric() const { return map.symmetric(); }
};

namespace detail {

// Couplings passed explicitly (and allowed complex) so limit checks and
// negative controls can drive the raw expression.
inline PotentialTerms potential_terms_raw(double g2, cplx c_s, cplx c_lam, cplx u) {
    const double g4 = g2 * g2;
    const cplx sh = std::sinh(u);
    const cplx ch = std::cosh(u);
    const cplx d = g2 + sh * sh;

    PotentialTerms t;
    t.well = -g4 * (c_s + 1.0 - g2) / d;
    if (c_lam == cplx(0.0, 0.0)) {
        t.centrifugal = 0.0;
    } else {
        if (std::abs(sh) < 1e-13)
            raise(errc::singular_point, "sinh u vanishes with lambda(lambda-1) != 0");
        // coth^2 as cosh^2/sinh^2: library coth for complex arguments varies
        // in edge behaviour across platforms
        t.centrifugal = g4 * c_lam * (ch * ch) / (sh * sh) / d;
    }
    t.quadratic = -3.0 * g4 * (g2 - 1.0) * (3.0 * g2 - 1.0) / (4.0 * d * d);
    t.cubic = 5.0 * g4 * g2 * (g2 - 1.0) * (g2 - 1.0) / (4.0 * d * d * d);
    return t;
}

}  // namespace detail

inline PotentialTerms potential_terms_at(const PotentialParams& p, const MapSample& m) {
    auto [c_s, c_lam] = p.coupling_coefficients();
    return detail::potential_terms_raw(p.gamma2(), c_s, c_lam, m.u);
}

inline PotentialSample potential_at(const PotentialParams& p, const MapSample& m) {
    return PotentialSample{m.x, potential_terms_at(p, m).total()};
}

inline PotentialTable potential_table(const PotentialParams& p, const MapTable& map) {
    PotentialTable t{p, map, {}};
    t.samples.reserve(map.samples.size());
    for (const auto& m : map.samples) t.samples.push_back(potential_at(p, m));
    return t;
}

// max_x |V(-x) - conj(V(x))|; zero for an exactly PT-symmetric potential.
inline double pt_symmetry_defect(const PotentialTable& t) {
    if (!t.symmetric())
        raise(errc::asymmetric_grid, "pt_symmetry_defect needs a grid symmetric about 0");
    double worst = 0.0;
    const size_t m = t.samples.size();
    for (size_t i = 0; i < m; ++i)
        worst = std::max(worst,
                         std::abs(t.samples[i].v - std::conj(t.samples[m - 1 - i].v)));
    return worst;
}

// Deviation of the four-term expression from the generalised Poschl-Teller
// closed form -s(s+1)/cosh^2 u + l(l-1)/sinh^2 u, evaluated pointwise in u.
// At gamma = 1 this is an algebraic identity; near gamma = 1 it measures
// continuity of the family.
inline double hermitian_limit_check(const PotentialParams& p, const MapTable& grid) {
    auto [c_s, c_lam] = p.coupling_coefficients();
    double worst = 0.0;
    for (const auto& m : grid.samples) {
        cplx sh = std::sinh(m.u);
        cplx ch = std::cosh(m.u);
        cplx closed = -c_s / (ch * ch);
        if (c_lam != 0.0) closed += c_lam / (sh * sh);
        cplx full = detail::potential_terms_raw(p.gamma2(), c_s, c_lam, m.u).total();
        worst = std::max(worst, std::abs(full - closed));
    }
    return worst;
}

// Smallest x beyond which every term is below `bound`, from the asymptotic
// map u ~ g2 x + C with C = ln(gamma) - sqrt(g2-1) atan(sqrt(g2-1)):
// |D| ~ e^{2(g2 x + C)}/4 there, so the slowest-decaying terms (well and
// centrifugal, both ~ 1/D) dominate. One unit of margin absorbs the
// pre-asymptotic region.
inline double decay_cutoff(const PotentialParams& p, double bound = 1e-6) {
    auto [c_s, c_lam] = p.coupling_coefficients();
    const double g2 = p.gamma2();
    const double g4 = g2 * g2;
    double amp = 4.0 * g4 * (std::abs(c_s + 1.0 - g2) + std::abs(c_lam) + g2);
    double c_off = std::log(p.gamma());
    if (g2 > 1.0) c_off -= std::sqrt(g2 - 1.0) * std::atan(std::sqrt(g2 - 1.0));
    return (0.5 * std::log(amp / bound) - c_off) / g2 + 1.0;
}

}  // namespace ginocchio
