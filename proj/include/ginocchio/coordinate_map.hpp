#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "ginocchio/errors.hpp"
#include "ginocchio/params.hpp"

namespace ginocchio {

// Complex transformed coordinate u(x + i eps), defined implicitly by
//
//   x + i eps = (1/g2) [ atanh(sinh u / w) + sqrt(g2-1) atan(sqrt(g2-1) sinh u / w) ]
//
// with w = sqrt(g2 + sinh^2 u), g2 = gamma^2. The closed formula has branch
// cuts, so u is *defined* here by continuation of the equivalent ODE
//
//   du/dz = g2 cosh u / w,   u = 0 at z = 0,
//
// integrated first along the imaginary segment 0 -> i eps and then along the
// horizontal line Im z = eps. The square root w is tracked continuously from
// w(0) = gamma; the implicit formula serves as a residual check (with the
// log/arctan winding offsets fitted per sample) and as the Newton polish
// target.

struct MapSample {
    double x = 0.0;
    cplx u{};
    cplx dudx{};  // g2 cosh u / w with the continuation-consistent w
};

struct MapTable {
    PotentialParams params;
    std::vector<MapSample> samples;
    double map_tol = 1e-12;
    double step = 0.0;

    double x_min() const { return samples.front().x; }
    double x_max() const { return samples.back().x; }
    bool symmetric() const {
        return std::abs(samples.front().x + samples.back().x) <
               1e-12 * std::max(1.0, std::abs(samples.back().x));
    }
};

namespace detail {

// sqrt(g2 + sinh^2 u) on the sheet nearest to w_hint.
inline cplx branch_sqrt(cplx value, cplx w_hint) {
    cplx r = std::sqrt(value);
    if (std::norm(r - w_hint) > std::norm(r + w_hint)) r = -r;
    return r;
}

// Augmented continuation state: carrying w = sqrt(g2 + sinh^2 u) as a second
// ODE variable makes the branch choice automatic (no per-evaluation sheet
// selection, which is fragile where w rotates quickly):
//
//   du/dz = g2 cosh u / w
//   dw/dz = sinh u cosh u / w * du/dz = g2 sinh u cosh^2 u / w^2
//
// After each accepted step w is snapped onto the exact root nearest the
// integrated value, removing any drift off the algebraic manifold.
struct UW {
    cplx u{}, w{};
};

inline UW operator+(UW a, UW b) { return {a.u + b.u, a.w + b.w}; }
inline UW operator*(double c, UW a) { return {c * a.u, c * a.w}; }
inline UW operator*(cplx c, UW a) { return {c * a.u, c * a.w}; }

// Dormand-Prince 5(4) over t in [0,1] along a straight segment dz = delta.
inline void integrate_segment(double g2, UW& y, cplx delta, double rtol,
                              const char* what) {
    if (delta == cplx(0.0, 0.0)) return;
    auto rhs = [&](UW s) -> UW {
        cplx ch = std::cosh(s.u);
        cplx sh = std::sinh(s.u);
        cplx du = g2 * ch / s.w;
        cplx dw = g2 * sh * ch * ch / (s.w * s.w);
        return {delta * du, delta * dw};
    };

    double t = 0.0;
    double h = 0.5;
    const double atol = rtol;
    int steps = 0;
    while (t < 1.0) {
        if (++steps > 200000)
            raise(errc::no_convergence,
                  std::string(what) + ": step budget exhausted at t=" + std::to_string(t));
        h = std::min(h, 1.0 - t);

        UW k1 = rhs(y);
        UW k2 = rhs(y + h * (0.2 * k1));
        UW k3 = rhs(y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
        UW k4 = rhs(y + h * (44.0 / 45.0 * k1 + -56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
        UW k5 = rhs(y + h * (19372.0 / 6561.0 * k1 + -25360.0 / 2187.0 * k2 +
                             64448.0 / 6561.0 * k3 + -212.0 / 729.0 * k4));
        UW k6 = rhs(y + h * (9017.0 / 3168.0 * k1 + -355.0 / 33.0 * k2 +
                             46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 +
                             -5103.0 / 18656.0 * k5));
        UW y5 = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 +
                         -2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
        UW k7 = rhs(y5);
        UW y4 = y + h * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 +
                         393.0 / 640.0 * k4 + -92097.0 / 339200.0 * k5 +
                         187.0 / 2100.0 * k6 + 1.0 / 40.0 * k7);

        double scale_u = atol + rtol * std::max(std::abs(y.u), std::abs(y5.u));
        double scale_w = atol + rtol * std::max(std::abs(y.w), std::abs(y5.w));
        double err = std::max(std::abs(y5.u - y4.u) / scale_u,
                              std::abs(y5.w - y4.w) / scale_w);
        if (!std::isfinite(err)) err = 1e6;
        if (err <= 1.0) {
            t += h;
            y = y5;
            cplx sh = std::sinh(y.u);
            y.w = branch_sqrt(g2 + sh * sh, y.w);
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
    }
}

}  // namespace detail

// Implicit-relation evaluator. atanh(sinh u / w) is computed as
// log(w + sinh u) - log(gamma), an identity that stays cancellation-free for
// large |u|; the winding offsets of the log (2 pi i) and of the arctan (pi)
// are fitted so the residual is measured against the branch actually reached
// by continuation.
class ImplicitRelation {
public:
    explicit ImplicitRelation(const PotentialParams& p)
        : g2_(p.gamma2()), g_(std::sqrt(cplx(p.gamma2() - 1.0, 0.0))),
          log_gamma_(std::log(p.gamma())) {}

    cplx principal(cplx u, cplx w) const {
        cplx s = std::sinh(u);
        // atanh(s/w) = log(w+s) - log(gamma); since (w+s)(w-s) = g2, evaluate
        // whichever sum avoids cancellation (w+s ~ e^u decays for Re u < 0)
        cplx main;
        if (std::abs(w + s) >= std::abs(w - s))
            main = std::log(w + s) - log_gamma_;
        else
            main = log_gamma_ - std::log(w - s);
        if (g_ == cplx(0.0, 0.0)) return main / g2_;
        return (main + g_ * std::atan(g_ * s / w)) / g2_;
    }

    // Residual |F(u) - z| minimised over the winding lattice; the fitted
    // offset is reported so Newton polish can reuse it.
    double residual(cplx u, cplx w, cplx z, cplx* offset = nullptr) const {
        cplx f0 = principal(u, w);
        const double pi = 3.14159265358979323846;
        int range = 3 + static_cast<int>(std::abs(z.imag()) * g2_ / pi);
        double best = std::abs(f0 - z);
        cplx best_off(0.0, 0.0);
        for (int k1 = -range; k1 <= range; ++k1) {
            for (int k2 = -range; k2 <= range; ++k2) {
                cplx off = (cplx(0.0, pi) * static_cast<double>(k1) +
                            g_ * pi * static_cast<double>(k2)) / g2_;
                double r = std::abs(f0 + off - z);
                if (r < best) {
                    best = r;
                    best_off = off;
                }
            }
        }
        if (offset) *offset = best_off;
        return best;
    }

private:
    double g2_;
    cplx g_;
    double log_gamma_;
};

// Continuation solver. One instance carries the (z, u, w) state from the
// anchor through subsequent targets, so a table walk seeds each sample with
// its predecessor.
class MapSolver {
public:
    explicit MapSolver(const PotentialParams& p, double rtol = 1e-13)
        : p_(p), rel_(p), rtol_(rtol) {
        state_.u = cplx(0.0, 0.0);
        state_.w = cplx(p.gamma(), 0.0);
        z_ = cplx(0.0, 0.0);
    }

    // Continue (u, w) along the straight segment z_ -> z.
    void advance_to(cplx z) {
        detail::integrate_segment(p_.gamma2(), state_, z - z_, rtol_, "coordinate map");
        z_ = z;
    }

    // Newton-polish the current point against the implicit relation and
    // emit a sample. 25-iteration budget; reports the last residual.
    MapSample sample(double x, double map_tol) {
        cplx offset;
        double res = rel_.residual(state_.u, state_.w, z_, &offset);
        for (int it = 0; it < 25 && res > map_tol; ++it) {
            // dF/du = 1/f(u), so the Newton step is (F - z) * f(u)
            cplx f = rel_.principal(state_.u, state_.w) + offset;
            state_.u -= (f - z_) * (p_.gamma2() * std::cosh(state_.u)) / state_.w;
            cplx sh = std::sinh(state_.u);
            state_.w = detail::branch_sqrt(p_.gamma2() + sh * sh, state_.w);
            res = std::abs(rel_.principal(state_.u, state_.w) + offset - z_);
        }
        if (!(res <= map_tol) || !std::isfinite(res)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3e", res);
            raise(errc::no_convergence, "map residual " + std::string(buf) +
                                            " above tolerance at x=" + std::to_string(x));
        }
        return MapSample{x, state_.u, p_.gamma2() * std::cosh(state_.u) / state_.w};
    }

    cplx u() const { return state_.u; }
    cplx w() const { return state_.w; }

private:
    PotentialParams p_;
    ImplicitRelation rel_;
    double rtol_;
    detail::UW state_;
    cplx z_;
};

// Largest admissible imaginary shift for the horizontal-line contour. The
// implicit relation has square-root branch points at u = arccosh(gamma) +
// i pi/2 (gamma^2 > 1) whose image lies at Im z = pi/(2 g2); a line at that
// height runs through a singularity of the potential, and beyond it the
// continuation leaves the sheet connected to the Hermitian problem (the
// asymptotic law u -> g2 (x + i eps) and the monotonicity of Re u both
// fail). For gamma^2 < 1 the branch point sits on the imaginary u axis at
// i arcsin(gamma), reached at shift pi/(2 g2) (1 - sqrt(1 - g2)).
inline double critical_shift(const PotentialParams& p) {
    const double pi = 3.14159265358979323846;
    const double g2 = p.gamma2();
    if (g2 >= 1.0) return pi / (2.0 * g2);
    return pi / (2.0 * g2) * (1.0 - std::sqrt(1.0 - g2));
}

namespace detail {

inline void check_shift(const PotentialParams& p) {
    if (p.epsilon() >= critical_shift(p) * (1.0 - 1e-9))
        raise(errc::singular_on_axis,
              "imaginary shift " + std::to_string(p.epsilon()) +
                  " at or beyond the critical value " +
                  std::to_string(critical_shift(p)) +
                  " where the line contour meets a branch point");
}

}  // namespace detail

// u at a single real x, continued from the anchor u(0) = 0 through the
// vertical segment 0 -> i eps and then horizontally to x + i eps.
inline MapSample map_at(const PotentialParams& p, double x, double map_tol = 1e-12) {
    detail::check_shift(p);
    MapSolver solver(p);
    solver.advance_to(cplx(0.0, p.epsilon()));
    solver.advance_to(cplx(x, p.epsilon()));
    return solver.sample(x, map_tol);
}

// Uniform-grid table; continuation proceeds along the grid so each sample
// seeds the next.
inline MapTable map_table(const PotentialParams& p, double x_min, double x_max,
                          int count, double map_tol = 1e-12) {
    if (!(x_min < x_max) || count < 2)
        throw std::invalid_argument("map_table: need x_min < x_max and count >= 2");
    detail::check_shift(p);
    MapTable table{p, {}, map_tol, (x_max - x_min) / (count - 1)};
    table.samples.reserve(count);
    MapSolver solver(p);
    solver.advance_to(cplx(0.0, p.epsilon()));
    solver.advance_to(cplx(x_min, p.epsilon()));
    for (int i = 0; i < count; ++i) {
        double x = x_min + table.step * i;
        if (i + 1 == count) x = x_max;
        solver.advance_to(cplx(x, p.epsilon()));
        table.samples.push_back(solver.sample(x, map_tol));
    }
    return table;
}

// max_x |u(-x) + conj(u(x))|; zero for an exact PT-odd map.
inline double pt_reflect_check(const MapTable& t) {
    if (!t.symmetric())
        raise(errc::asymmetric_grid, "pt_reflect_check needs a grid symmetric about 0");
    double worst = 0.0;
    const size_t m = t.samples.size();
    for (size_t i = 0; i < m; ++i) {
        const cplx& u_pos = t.samples[m - 1 - i].u;
        const cplx& u_neg = t.samples[i].u;
        worst = std::max(worst, std::abs(u_neg + std::conj(u_pos)));
    }
    return worst;
}

}  // namespace ginocchio
