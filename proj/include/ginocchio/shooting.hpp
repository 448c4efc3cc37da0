#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "ginocchio/errors.hpp"
#include "ginocchio/params.hpp"

namespace ginocchio {

// Independent numerical oracle: fixed-step RK4 shooting for -psi'' + V psi =
// E psi with an arbitrary complex potential sampled on a uniform half-step
// grid (RK4 needs V at interval midpoints). Both integrations start from
// decaying asymptotics psi ~ exp(-|kappa x|), kappa = sqrt(-E) with
// Re kappa > 0, and the matching Wronskian at x = 0 is driven to zero by a
// damped 2x2 real Newton iteration in (Re E, Im E).

struct SampledPotential {
    double x_min = 0.0;
    double half_step = 0.0;           // grid spacing of v
    std::vector<cplx> v;              // values at x_min + k*half_step

    double x_max() const { return x_min + half_step * (v.size() - 1); }
    double step() const { return 2.0 * half_step; }
    size_t intervals() const { return (v.size() - 1) / 2; }
};

struct ShootingProblem {
    SampledPotential potential;
    cplx energy_seed{};
    double match_tol = 1e-12;
    double de_tol = 1e-11;            // relative Newton-step stopping size
    int max_iterations = 60;
    double basin_halfwidth = 0.0;     // 0 -> 0.3 * max(1, |seed|)
};

struct EigenResult {
    cplx energy{};
    double match_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string error;
};

namespace detail {

struct ShotEndpoint {
    cplx psi, dpsi;
};

// RK4 over the sampled potential, from one end to the matching index
// (midpoint of the grid). dir = +1 integrates from the left end, -1 from
// the right.
inline ShotEndpoint integrate_half(const SampledPotential& vpot, cplx energy, int dir) {
    const size_t n_int = vpot.intervals();
    const size_t n_half = n_int / 2;
    const double h = dir * vpot.step();

    cplx kappa = std::sqrt(-energy);
    if (kappa.real() < 0.0) kappa = -kappa;

    cplx psi(1.0, 0.0);
    cplx dpsi = dir > 0 ? kappa : -kappa;

    auto v_at = [&](size_t interval, int sub) {
        // sub: 0 = start of step, 1 = midpoint, 2 = end (half-step indices)
        size_t base = dir > 0 ? 2 * interval : vpot.v.size() - 1 - 2 * interval;
        return dir > 0 ? vpot.v[base + sub] : vpot.v[base - sub];
    };

    for (size_t i = 0; i < n_half; ++i) {
        cplx v0 = v_at(i, 0), vm = v_at(i, 1), v1 = v_at(i, 2);
        cplx k1p = dpsi;
        cplx k1d = (v0 - energy) * psi;
        cplx k2p = dpsi + 0.5 * h * k1d;
        cplx k2d = (vm - energy) * (psi + 0.5 * h * k1p);
        cplx k3p = dpsi + 0.5 * h * k2d;
        cplx k3d = (vm - energy) * (psi + 0.5 * h * k2p);
        cplx k4p = dpsi + h * k3d;
        cplx k4d = (v1 - energy) * (psi + h * k3p);
        psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        dpsi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    }
    return {psi, dpsi};
}

// Scale-invariant matching defect at x = 0.
inline cplx matching_function(const SampledPotential& vpot, cplx energy) {
    ShotEndpoint left = integrate_half(vpot, energy, +1);
    ShotEndpoint right = integrate_half(vpot, energy, -1);
    cplx w = left.psi * right.dpsi - left.dpsi * right.psi;
    double scale = std::abs(left.psi * right.dpsi) + std::abs(left.dpsi * right.psi);
    return w / scale;
}

}  // namespace detail

inline EigenResult shoot(const ShootingProblem& problem) {
    const SampledPotential& vpot = problem.potential;
    if (vpot.intervals() % 2 != 0)
        throw std::invalid_argument("shoot: interval count must be even (matching at 0)");

    const cplx seed = problem.energy_seed;
    const double basin = problem.basin_halfwidth > 0.0
                             ? problem.basin_halfwidth
                             : 0.3 * std::max(1.0, std::abs(seed));

    cplx e = seed;
    cplx m = detail::matching_function(vpot, e);
    EigenResult result;
    for (int it = 1; it <= problem.max_iterations; ++it) {
        result.iterations = it;
        if (std::abs(e - seed) > basin)
            raise(errc::basin_escape, "iterate left the seed neighbourhood");

        const double delta = 1e-7 * std::max(1.0, std::abs(e));
        cplx m_re = detail::matching_function(vpot, e + delta);
        cplx m_im = detail::matching_function(vpot, e + cplx(0.0, delta));
        // real 2x2 Jacobian by finite differences
        double j11 = (m_re.real() - m.real()) / delta;
        double j21 = (m_re.imag() - m.imag()) / delta;
        double j12 = (m_im.real() - m.real()) / delta;
        double j22 = (m_im.imag() - m.imag()) / delta;
        double det = j11 * j22 - j12 * j21;
        if (!(std::abs(det) > 1e-300))
            raise(errc::no_convergence, "singular matching Jacobian");
        double dre = (j22 * m.real() - j12 * m.imag()) / det;
        double dim = (j11 * m.imag() - j21 * m.real()) / det;
        cplx step(-dre, -dim);

        // damp by halves while the residual increases
        double damp = 1.0;
        cplx e_next = e + step;
        cplx m_next = detail::matching_function(vpot, e_next);
        for (int k = 0; k < 6 && std::abs(m_next) > std::abs(m); ++k) {
            damp *= 0.5;
            e_next = e + damp * step;
            m_next = detail::matching_function(vpot, e_next);
        }
        e = e_next;
        m = m_next;

        if (std::abs(m) < problem.match_tol ||
            std::abs(damp * step) < problem.de_tol * std::max(1.0, std::abs(e))) {
            if (std::abs(m) > 1e-6)
                raise(errc::no_convergence, "stalled with matching residual " +
                                                std::to_string(std::abs(m)));
            result.energy = e;
            result.match_residual = std::abs(m);
            result.converged = true;
            return result;
        }
    }
    raise(errc::no_convergence, "matching residual " + std::to_string(std::abs(m)) +
                                    " after iteration budget");
}

// Per-seed failures are collected, not fatal; converged eigenvalues are
// deduplicated within 1e-6.
inline std::vector<EigenResult> spectrum_sweep(const SampledPotential& vpot,
                                               const std::vector<cplx>& seeds,
                                               double match_tol = 1e-12) {
    std::vector<EigenResult> out;
    for (cplx seed : seeds) {
        ShootingProblem prob{vpot, seed, match_tol};
        EigenResult r;
        try {
            r = shoot(prob);
        } catch (const GinError& e) {
            r.converged = false;
            r.error = e.what();
        }
        if (r.converged) {
            bool dup = false;
            for (const auto& prev : out)
                if (prev.converged && std::abs(prev.energy - r.energy) < 1e-6) dup = true;
            if (dup) continue;
        }
        out.push_back(r);
    }
    return out;
}

// Max relative drift of the two-solution Wronskian across an overlap window
// around the matching point; a constant Wronskian is a consistency property
// of the integrator.
inline double wronskian_drift(const SampledPotential& vpot, cplx energy,
                              double overlap_halfwidth = 1.0) {
    const size_t n_int = vpot.intervals();
    const double h = vpot.step();
    cplx kappa = std::sqrt(-energy);
    if (kappa.real() < 0.0) kappa = -kappa;

    // integrate both solutions across the full domain, recording (psi, psi')
    auto sweep = [&](int dir) {
        std::vector<detail::ShotEndpoint> states(n_int + 1);
        cplx psi(1.0, 0.0);
        cplx dpsi = dir > 0 ? kappa : -kappa;
        size_t start = dir > 0 ? 0 : n_int;
        states[start] = {psi, dpsi};
        for (size_t i = 0; i < n_int; ++i) {
            size_t base = dir > 0 ? 2 * i : 2 * (n_int - i);
            auto v_of = [&](int sub) {
                return vpot.v[dir > 0 ? base + sub : base - sub];
            };
            double hh = dir * h;
            cplx k1p = dpsi, k1d = (v_of(0) - energy) * psi;
            cplx k2p = dpsi + 0.5 * hh * k1d, k2d = (v_of(1) - energy) * (psi + 0.5 * hh * k1p);
            cplx k3p = dpsi + 0.5 * hh * k2d, k3d = (v_of(1) - energy) * (psi + 0.5 * hh * k2p);
            cplx k4p = dpsi + hh * k3d, k4d = (v_of(2) - energy) * (psi + hh * k3p);
            psi += hh / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            dpsi += hh / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
            size_t idx = dir > 0 ? i + 1 : n_int - i - 1;
            states[idx] = {psi, dpsi};
        }
        return states;
    };
    auto left = sweep(+1);
    auto right = sweep(-1);

    const double mid_x = 0.5 * (vpot.x_min + vpot.x_max());
    size_t lo = 0, hi = n_int;
    for (size_t i = 0; i <= n_int; ++i) {
        double x = vpot.x_min + h * i;
        if (x < mid_x - overlap_halfwidth) lo = i;
        if (x <= mid_x + overlap_halfwidth) hi = i;
    }
    cplx w_ref = left[(lo + hi) / 2].psi * right[(lo + hi) / 2].dpsi -
                 left[(lo + hi) / 2].dpsi * right[(lo + hi) / 2].psi;
    double worst = 0.0;
    for (size_t i = lo; i <= hi; ++i) {
        cplx w = left[i].psi * right[i].dpsi - left[i].dpsi * right[i].psi;
        worst = std::max(worst, std::abs(w - w_ref) / std::abs(w_ref));
    }
    return worst;
}

// Build a sampled potential over [-L, L] with 2*n_intervals+1 half-step
// values from any pointwise source.
inline SampledPotential sample_potential(const std::function<cplx(double)>& v, double L,
                                         double h) {
    size_t n_int = static_cast<size_t>(std::round(2.0 * L / h));
    if (n_int % 2) ++n_int;  // matching point must sit on the grid centre
    SampledPotential sp;
    sp.x_min = -L;
    sp.half_step = 2.0 * L / (2.0 * n_int);
    sp.v.resize(2 * n_int + 1);
    for (size_t k = 0; k < sp.v.size(); ++k) sp.v[k] = v(-L + sp.half_step * k);
    return sp;
}

}  // namespace ginocchio
