#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "ginocchio/errors.hpp"
#include "ginocchio/params.hpp"

namespace ginocchio {

// Exact quasi-parity spectrum:
//
//   mu_nq = [ -L + sqrt(A) ] / g2,     L = 2n + 1 + q (lambda - 1/2)
//   A     = g2 (s + 1/2)^2 + (1 - g2) L^2
//   E_nq  = -g4 mu_nq^2
//
// sqrt is the principal branch (Re >= 0, tie-break Im >= 0); this recovers
// the Hermitian formula at q = +1 and the reference complex spectra.
// Normalisability is Re(mu) > 0.

struct SpectralValue {
    StateLabel label;
    cplx mu{};
    cplx energy{};
    bool normalizable = false;
    bool boundary = false;  // Re(mu) = 0 within tolerance; excluded from the window
};

enum class DiscriminantRegime { NonNegative, Negative, Complex };

struct Discriminant {
    cplx a_value{};
    DiscriminantRegime regime = DiscriminantRegime::NonNegative;
};

struct HypergeometricParams {
    cplx a{}, b{}, c{}, omega{};
};

enum class SpectrumVerdict { Unbroken, BrokenPT, Empty };

inline const char* verdict_name(SpectrumVerdict v) {
    switch (v) {
        case SpectrumVerdict::Unbroken: return "Unbroken";
        case SpectrumVerdict::BrokenPT: return "BrokenPT";
        case SpectrumVerdict::Empty:    return "Empty";
    }
    return "?";
}

struct SpectrumReport {
    PotentialParams params;
    std::vector<SpectralValue> states;  // normalizable states, both q
    SpectrumVerdict verdict = SpectrumVerdict::Empty;
    int count_plus = 0;
    int count_minus = 0;
    std::vector<StateLabel> boundary_states;
};

namespace detail {

// L = 2n + 1 + q (lambda - 1/2) with the canonical-mirror q applied.
inline cplx lambda_combination(const PotentialParams& p, const StateLabel& label) {
    int qe = p.effective_q(label.q);
    return 2.0 * label.n + 1.0 + static_cast<double>(qe) * p.lambda().half_offset();
}

inline SpectralValue spectral_value_from(const PotentialParams& p, StateLabel label,
                                         cplx big_l) {
    const double g2 = p.gamma2();
    cplx mu;
    if (big_l.imag() == 0.0) {
        // real-lambda path in real arithmetic so the A < 0 branch pins
        // sqrt(A) = +i sqrt(-A) without relying on the sign of Im(A)
        double lr = big_l.real();
        double a = g2 * p.s().half_shift_sq() + (1.0 - g2) * lr * lr;
        mu = a >= 0.0 ? cplx((-lr + std::sqrt(a)) / g2, 0.0)
                      : cplx(-lr / g2, std::sqrt(-a) / g2);
    } else {
        cplx a = g2 * p.s().half_shift_sq() + (1.0 - g2) * big_l * big_l;
        cplx root = std::sqrt(a);
        if (root.real() < 0.0) root = -root;
        mu = (-big_l + root) / g2;
    }
    SpectralValue sv;
    sv.label = label;
    sv.mu = mu;
    cplx e = -p.gamma4() * mu * mu;
    sv.energy = cplx(e.real() + 0.0, e.imag() + 0.0);  // flush -0.0
    double tol = 1e-12 * std::max(1.0, std::abs(mu));
    sv.boundary = std::abs(mu.real()) <= tol;
    sv.normalizable = mu.real() > tol;
    return sv;
}

}  // namespace detail

inline SpectralValue mu_nq(const PotentialParams& p, StateLabel label) {
    return detail::spectral_value_from(p, label, detail::lambda_combination(p, label));
}

inline Discriminant discriminant(const PotentialParams& p, StateLabel label) {
    cplx big_l = detail::lambda_combination(p, label);
    cplx a = p.gamma2() * p.s().half_shift_sq() + (1.0 - p.gamma2()) * big_l * big_l;
    Discriminant d;
    d.a_value = a;
    if (std::abs(a.imag()) > 1e-12)
        d.regime = DiscriminantRegime::Complex;
    else
        d.regime = a.real() >= 0.0 ? DiscriminantRegime::NonNegative
                                   : DiscriminantRegime::Negative;
    return d;
}

// mu from the closed form satisfies g2 mu^2 + 2 L mu + L^2 - (s+1/2)^2 = 0
// (the quadratic obtained by isolating the square root and squaring).
inline double quadratic_residual(const PotentialParams& p, const SpectralValue& sv) {
    cplx big_l = detail::lambda_combination(p, sv.label);
    cplx r = p.gamma2() * sv.mu * sv.mu + 2.0 * big_l * sv.mu + big_l * big_l -
             p.s().half_shift_sq();
    return std::abs(r);
}

// |omega^2 - [(s+1/2)^2 - (g2-1) mu^2]| with omega = 2n + 1 + mu + q(lambda-1/2),
// linking the polynomial condition to the parameter relations.
inline double quantization_residual(const PotentialParams& p, const SpectralValue& sv) {
    cplx omega = detail::lambda_combination(p, sv.label) + sv.mu;
    cplx rhs = p.s().half_shift_sq() - (p.gamma2() - 1.0) * sv.mu * sv.mu;
    return std::abs(omega * omega - rhs);
}

// Hypergeometric parameter set (a, b, c, omega) with the omega branch fixed
// by the polynomial condition; b = -n results, terminating the series.
inline HypergeometricParams hyper_params(const PotentialParams& p, const SpectralValue& sv) {
    HypergeometricParams h;
    cplx q_off = static_cast<double>(p.effective_q(sv.label.q)) * p.lambda().half_offset();
    h.omega = 2.0 * sv.label.n + 1.0 + sv.mu + q_off;
    h.c = 1.0 + sv.mu;
    cplx apb = h.c + q_off;  // a + b = c + q(lambda - 1/2)
    h.a = 0.5 * (apb + h.omega);
    h.b = 0.5 * (apb - h.omega);
    return h;
}

struct CountWindow {
    bool empty = true;
    int n_lo = 0;
    int n_hi = -1;
    bool contiguous = true;

    int count() const { return empty ? 0 : n_hi - n_lo + 1; }
};

inline constexpr int kEnumerationCap = 200;

// Window of n with Re(mu_nq) > 0, found by direct enumeration up to the cap.
// The closed-form inequalities for the real regimes are a cross-check in the
// test suite, not the source of truth here.
inline CountWindow count_window(const PotentialParams& p, int q) {
    CountWindow w;
    for (int n = 0; n <= kEnumerationCap; ++n) {
        SpectralValue sv = mu_nq(p, StateLabel{n, q});
        if (sv.normalizable) {
            if (w.empty) {
                w.empty = false;
                w.n_lo = w.n_hi = n;
            } else {
                if (n != w.n_hi + 1) w.contiguous = false;
                w.n_hi = n;
            }
        }
    }
    return w;
}

inline SpectrumReport full_spectrum(const PotentialParams& p) {
    SpectrumReport report{p, {}, SpectrumVerdict::Empty, 0, 0, {}};
    for (int q : {+1, -1}) {
        for (int n = 0; n <= kEnumerationCap; ++n) {
            SpectralValue sv = mu_nq(p, StateLabel{n, q});
            if (sv.normalizable) {
                report.states.push_back(sv);
                (q > 0 ? report.count_plus : report.count_minus)++;
            } else if (sv.boundary) {
                report.boundary_states.push_back(sv.label);
            }
        }
    }
    if (report.states.empty()) return report;

    bool all_real = true;
    for (const auto& sv : report.states)
        if (std::abs(sv.energy.imag()) > std::max(1e-9, 1e-9 * std::abs(sv.energy)))
            all_real = false;
    report.verdict = all_real ? SpectrumVerdict::Unbroken : SpectrumVerdict::BrokenPT;

    // In the complex-discriminant regime (lambda on the critical line) the
    // spectrum must pair as (E_nq)* = E_{n,-q}; a violation is an
    // implementation bug, not a physics outcome. The negative-discriminant
    // mechanism (complexification via s) produces one-sided complex spectra
    // with no partner to pair with, so the check does not apply there.
    if (!p.lambda().is_real() && p.lambda().raw() != 0.0) {
        if (report.count_plus != report.count_minus)
            raise(errc::inconsistent_pairing, "unequal quasi-parity counts in the "
                                              "complex-discriminant regime");
        for (const auto& sv : report.states) {
            if (sv.label.q != +1) continue;
            SpectralValue partner = mu_nq(p, StateLabel{sv.label.n, -1});
            double tol = 1e-12 * std::max(1.0, std::abs(sv.energy));
            if (std::abs(std::conj(sv.energy) - partner.energy) > tol)
                raise(errc::inconsistent_pairing,
                      "conjugate pairing violated at n=" + std::to_string(sv.label.n));
        }
    }
    return report;
}

// Degenerate (n,+1) <-> (n', -1) pairs; these exist when lambda - 1/2 is a
// nonnegative integer (n' = n + lambda - 1/2), both states normalizable.
inline std::vector<std::pair<StateLabel, StateLabel>> degeneracy_scan(
    const PotentialParams& p) {
    if (!p.lambda().is_real())
        throw std::invalid_argument("degeneracy_scan requires real lambda");
    std::vector<std::pair<StateLabel, StateLabel>> pairs;
    double k = p.lambda().raw() - 0.5;
    double k_round = std::round(k);
    if (std::abs(k - k_round) > 1e-12 || k_round < 0.0) return pairs;
    int shift = static_cast<int>(k_round);
    int plus_user = p.parity_mirrored() ? -1 : +1;
    for (int n = 0; n <= kEnumerationCap; ++n) {
        SpectralValue a = mu_nq(p, StateLabel{n, plus_user});
        SpectralValue b = mu_nq(p, StateLabel{n + shift, -plus_user});
        if (a.normalizable && b.normalizable)
            pairs.emplace_back(a.label, b.label);
    }
    return pairs;
}

// Hermitian reference (q = +1 sector, real parameters): same closed form,
// kept separate so the reference limit is explicit in tests and reports.
inline double hermitian_mu(const PotentialParams& p, int n) {
    double lam = p.lambda().raw();
    double big_l = 2.0 * n + lam + 0.5;
    double a = (1.0 - p.gamma2()) * big_l * big_l + p.gamma2() * p.s().half_shift_sq();
    if (a < 0.0) return -1.0;  // outside the bound-state window
    return (-big_l + std::sqrt(a)) / p.gamma2();
}

inline double hermitian_energy(const PotentialParams& p, int n) {
    double mu = hermitian_mu(p, n);
    return -p.gamma4() * mu * mu;
}

// Largest n with mu_n > 0; the closed-form bound is n_max < (s - lambda)/2.
inline std::optional<int> hermitian_n_max(const PotentialParams& p) {
    std::optional<int> last;
    for (int n = 0; n <= kEnumerationCap; ++n)
        if (hermitian_mu(p, n) > 0.0) last = n;
    return last;
}

}  // namespace ginocchio
