#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "ginocchio/coordinate_map.hpp"
#include "ginocchio/errors.hpp"
#include "ginocchio/jacobi.hpp"
#include "ginocchio/params.hpp"
#include "ginocchio/potential.hpp"
#include "ginocchio/spectrum.hpp"

namespace ginocchio {

// Bound-state wavefunctions. Two equivalent assemblies are provided:
//
//   Compact:  (g2+sinh^2 u)^{1/4} (cosh u)^{-2n-1-mu-Q} (sinh u)^{1/2+Q}
//                 * P_n^{(Q, -2n-1-mu-Q)}(cosh 2u)
//   Radial:   (g2+sinh^2 u)^{1/4} (cosh u)^{-mu-Q-1}    (sinh u)^{1/2+Q}
//                 * P_n^{(mu, Q)}(2 tanh^2 u - 1)
//
// with Q = q (lambda - 1/2). The Jacobi transformation
// P_n^{(a,b)}(x) = ((x+1)/2)^n P_n^{(a, -2n-a-b-1)}((3-x)/(x+1)) maps one
// onto the other exactly up to the factor (-1)^n, so they describe the same
// state; both are kept because the Schrodinger-residual suite uses the
// agreement (and the residual itself) as the correctness arbiter.
//
// Complex powers are exp(w log(.)) with the logarithms of sinh u, cosh u and
// g2+sinh^2 u unwound continuously along the grid from the first sample;
// pointwise principal branches would jump where the argument crosses a cut.

enum class PsiForm { Compact, Radial };

struct WaveSample {
    double x = 0.0;
    cplx psi{};
    cplx psi_dd{};  // second derivative along real x, analytic via the chain rule
};

namespace detail {

// Unwind `value`'s log against the previous tracked log. A phase step close
// to pi between neighbours is ambiguous -> BranchJump (grid too coarse).
inline cplx tracked_log(cplx value, const cplx* prev) {
    cplx lp = std::log(value);
    if (!prev) return lp;
    constexpr double two_pi = 6.28318530717958647692;
    double k = std::round((prev->imag() - lp.imag()) / two_pi);
    cplx lt = lp + cplx(0.0, two_pi * k);
    if (std::abs(lt.imag() - prev->imag()) > 2.4)
        raise(errc::branch_jump,
              "phase step ~pi between adjacent grid samples; refine the grid");
    return lt;
}

}  // namespace detail

class WavefunctionEvaluator {
public:
    WavefunctionEvaluator(const PotentialParams& p, const SpectralValue& sv,
                          const MapTable& table, PsiForm form = PsiForm::Compact)
        : p_(p), sv_(sv), table_(&table), form_(form) {
        const cplx q_off =
            static_cast<double>(p.effective_q(sv.label.q)) * p.lambda().half_offset();
        ps_ = 0.5 + q_off;
        if (form == PsiForm::Compact) {
            pc_ = -2.0 * sv.label.n - 1.0 - sv.mu - q_off;
            jacobi_ = JacobiSpec{sv.label.n, q_off, pc_};
        } else {
            pc_ = -sv.mu - q_off - 1.0;
            jacobi_ = JacobiSpec{sv.label.n, sv.mu, q_off};
        }

        const size_t m = table.samples.size();
        log_sinh_.resize(m);
        log_cosh_.resize(m);
        log_d_.resize(m);
        for (size_t i = 0; i < m; ++i) {
            cplx sh = std::sinh(table.samples[i].u);
            cplx ch = std::cosh(table.samples[i].u);
            cplx d = p.gamma2() + sh * sh;
            const cplx* prev_s = i ? &log_sinh_[i - 1] : nullptr;
            const cplx* prev_c = i ? &log_cosh_[i - 1] : nullptr;
            const cplx* prev_d = i ? &log_d_[i - 1] : nullptr;
            log_sinh_[i] = detail::tracked_log(sh, prev_s);
            log_cosh_[i] = detail::tracked_log(ch, prev_c);
            log_d_[i] = detail::tracked_log(d, prev_d);
        }
    }

    size_t size() const { return table_->samples.size(); }
    const MapTable& table() const { return *table_; }

    WaveSample at(size_t i) const {
        const MapSample& m = table_->samples[i];
        const cplx u = m.u;
        const cplx sh = std::sinh(u);
        const cplx ch = std::cosh(u);
        const cplx d = p_.gamma2() + sh * sh;
        const cplx sinh2u = 2.0 * sh * ch;
        const cplx cosh2u = 1.0 + 2.0 * sh * sh;

        const cplx log_amp = 0.25 * log_d_[i] + pc_ * log_cosh_[i] + ps_ * log_sinh_[i];
        const cplx amp = std::exp(log_amp);

        cplx z, dz, ddz;
        if (form_ == PsiForm::Compact) {
            z = cosh2u;
            dz = 2.0 * sinh2u;
            ddz = 4.0 * cosh2u;
        } else {
            cplx th = sh / ch;
            z = 2.0 * th * th - 1.0;
            dz = 4.0 * th / (ch * ch);
            ddz = (4.0 - 8.0 * sh * sh) / (ch * ch * ch * ch);
        }
        const cplx pj = jacobi_eval(jacobi_, z);
        const cplx pj1 = jacobi_derivative(jacobi_, z);
        const cplx pj2 = jacobi_second_derivative(jacobi_, z);

        const cplx lp = 0.25 * sinh2u / d + pc_ * sh / ch + ps_ * ch / sh;
        const cplx lpp = 0.25 * (2.0 * cosh2u * d - sinh2u * sinh2u) / (d * d) +
                         pc_ / (ch * ch) - ps_ / (sh * sh);

        const cplx a1 = lp * pj + dz * pj1;
        const cplx a2 = (lpp + lp * lp) * pj + (2.0 * lp * dz + ddz) * pj1 +
                        dz * dz * pj2;
        // u'' = (g2-1) tanh(u) u'^2 / D
        const cplx upp_over_up2 = (p_.gamma2() - 1.0) * (sh / ch) / d;

        WaveSample out;
        out.x = m.x;
        out.psi = amp * pj;
        out.psi_dd = m.dudx * m.dudx * amp * (a2 + a1 * upp_over_up2);
        return out;
    }

    std::vector<WaveSample> all() const {
        std::vector<WaveSample> v;
        v.reserve(size());
        for (size_t i = 0; i < size(); ++i) v.push_back(at(i));
        return v;
    }

private:
    PotentialParams p_;
    SpectralValue sv_;
    const MapTable* table_;
    PsiForm form_;
    cplx pc_{}, ps_{};
    JacobiSpec jacobi_;
    std::vector<cplx> log_sinh_, log_cosh_, log_d_;
};

inline std::vector<WaveSample> psi_nq(const PotentialParams& p, const SpectralValue& sv,
                                      const MapTable& table,
                                      PsiForm form = PsiForm::Compact) {
    if (!sv.normalizable)
        raise(errc::out_of_window, "psi_nq: state is not normalizable");
    return WavefunctionEvaluator(p, sv, table, form).all();
}

// max_i |-psi''_fd + (V - E) psi| / max|psi| with psi'' from 5-point finite
// differences of the analytic psi. The finite difference keeps this check
// independent of the analytic psi_dd path (which it can also be tested
// against separately).
inline double schrodinger_residual(const PotentialParams& p, const SpectralValue& sv,
                                   const MapTable& table,
                                   PsiForm form = PsiForm::Compact) {
    WavefunctionEvaluator ev(p, sv, table, form);
    const size_t m = ev.size();
    if (m < 5) throw std::invalid_argument("schrodinger_residual: need >= 5 samples");
    const double h = table.step;

    std::vector<cplx> psi(m), v(m);
    double psi_max = 0.0;
    for (size_t i = 0; i < m; ++i) {
        psi[i] = ev.at(i).psi;
        v[i] = potential_at(p, table.samples[i]).v;
        psi_max = std::max(psi_max, std::abs(psi[i]));
    }
    double worst = 0.0;
    for (size_t i = 2; i + 2 < m; ++i) {
        cplx dd = (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] + 16.0 * psi[i + 1] -
                   psi[i + 2]) / (12.0 * h * h);
        worst = std::max(worst, std::abs(-dd + (v[i] - sv.energy) * psi[i]));
    }
    return worst / psi_max;
}

// Cross-check of the analytic second derivative against the same 5-point
// finite difference, relative to max |psi''|.
inline double psi_dd_consistency(const PotentialParams& p, const SpectralValue& sv,
                                 const MapTable& table,
                                 PsiForm form = PsiForm::Compact) {
    WavefunctionEvaluator ev(p, sv, table, form);
    const size_t m = ev.size();
    const double h = table.step;
    std::vector<WaveSample> w(m);
    double dd_max = 0.0;
    for (size_t i = 0; i < m; ++i) {
        w[i] = ev.at(i);
        dd_max = std::max(dd_max, std::abs(w[i].psi_dd));
    }
    double worst = 0.0;
    for (size_t i = 2; i + 2 < m; ++i) {
        cplx dd = (-w[i - 2].psi + 16.0 * w[i - 1].psi - 30.0 * w[i].psi +
                   16.0 * w[i + 1].psi - w[i + 2].psi) / (12.0 * h * h);
        worst = std::max(worst, std::abs(dd - w[i].psi_dd));
    }
    return worst / dd_max;
}

struct NormalizationConstant {
    double value = 0.0;
};

// Hermitian-sector closed-form normalisation (real parameters, eps = 0,
// q = +1 with the Radial assembly):
//
//   N_n^2 = 2 g2 n! Gam(mu+lam+n+1/2) mu (mu+lam+2n+1/2)
//           / [Gam(mu+n+1) Gam(lam+n+1/2) (mu g2 + lam + 2n + 1/2)]
inline NormalizationConstant hermitian_norm(const PotentialParams& p, int n) {
    if (!p.s().is_real() || !p.lambda().is_real() || p.epsilon() != 0.0)
        raise(errc::out_of_window, "hermitian_norm: real parameters with eps = 0 required");
    double mu = hermitian_mu(p, n);
    if (!(mu > 0.0))
        raise(errc::out_of_window, "hermitian_norm: n outside the bound-state window");
    double lam = p.lambda().raw();
    double g2 = p.gamma2();
    double n_fact = std::tgamma(n + 1.0);
    double num = 2.0 * g2 * n_fact * std::tgamma(mu + lam + n + 0.5) * mu *
                 (mu + lam + 2.0 * n + 0.5);
    double den = std::tgamma(mu + n + 1.0) * std::tgamma(lam + n + 0.5) *
                 (mu * g2 + lam + 2.0 * n + 0.5);
    return NormalizationConstant{std::sqrt(num / den)};
}

// Diagnostic PT pseudo-norm: integral of psi^2 dx (no conjugation) over the
// table domain by composite Simpson, with an exponential-tail estimate from
// the asymptotic decay rate g2 Re(mu). Not an invariant; reported as-is.
inline cplx pt_pseudo_norm(const PotentialParams& p, const SpectralValue& sv,
                           const MapTable& table, PsiForm form = PsiForm::Compact) {
    WavefunctionEvaluator ev(p, sv, table, form);
    const size_t m = ev.size();
    const double h = table.step;
    std::vector<cplx> f(m);
    for (size_t i = 0; i < m; ++i) {
        cplx psi = ev.at(i).psi;
        f[i] = psi * psi;
    }
    cplx integral(0.0, 0.0);
    size_t i = 0;
    for (; i + 2 < m; i += 2) integral += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    if (i + 1 < m) integral += 0.5 * h * (f[i] + f[i + 1]);

    double kappa = p.gamma2() * sv.mu.real();
    double tail = (std::abs(f.front()) + std::abs(f.back())) / (2.0 * kappa);
    if (tail > 1e-8 * std::abs(integral))
        raise(errc::tail_too_large, "pseudo-norm truncation estimate " +
                                        std::to_string(tail) + " exceeds 1e-8 of value");
    return integral;
}

}  // namespace ginocchio
