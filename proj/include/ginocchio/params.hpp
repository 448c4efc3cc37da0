#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "ginocchio/errors.hpp"

namespace ginocchio {

using cplx = std::complex<double>;

// The PT-symmetric potential needs s(s+1) and lambda(lambda-1) real, which
// restricts each parameter to its real axis or to a critical line:
//   s      in {real} u {-1/2 + i sigma}
//   lambda in {real} u { 1/2 + i l}
// Both parameters are stored as tagged unions so the reality constraint is
// structural rather than a numeric tolerance on Re(s) = -1/2.

class SParam {
public:
    static SParam real_branch(double s) { return SParam{true, s}; }
    static SParam critical_line(double sigma) { return SParam{false, sigma}; }

    bool is_real() const { return real_; }
    // real branch: the value of s; critical branch: sigma in s = -1/2 + i sigma
    double raw() const { return v_; }

    cplx value() const { return real_ ? cplx(v_, 0.0) : cplx(-0.5, v_); }

    // s(s+1); real on both branches: (-1/2+is)(1/2+is) = -1/4 - sigma^2
    double coupling() const { return real_ ? v_ * (v_ + 1.0) : -0.25 - v_ * v_; }

    // (s+1/2)^2 = s(s+1) + 1/4
    double half_shift_sq() const { return real_ ? (v_ + 0.5) * (v_ + 0.5) : -v_ * v_; }

private:
    SParam(bool real, double v) : real_(real), v_(v) {}
    bool real_;
    double v_;
};

class LambdaParam {
public:
    static LambdaParam real_branch(double lam) { return LambdaParam{true, lam}; }
    static LambdaParam critical_line(double l) { return LambdaParam{false, l}; }

    bool is_real() const { return real_; }
    // real branch: lambda itself; critical branch: l in lambda = 1/2 + i l
    double raw() const { return v_; }

    cplx value() const { return real_ ? cplx(v_, 0.0) : cplx(0.5, v_); }

    // lambda(lambda-1); real on both branches: (1/2+il)(-1/2+il) = -1/4 - l^2
    double coupling() const { return real_ ? v_ * (v_ - 1.0) : -0.25 - v_ * v_; }

    // lambda - 1/2, purely real or purely imaginary
    cplx half_offset() const { return real_ ? cplx(v_ - 0.5, 0.0) : cplx(0.0, v_); }

private:
    LambdaParam(bool real, double v) : real_(real), v_(v) {}
    bool real_;
    double v_;
};

// (n, q) with q the quasi-parity labelling the two solution families.
struct StateLabel {
    int n = 0;
    int q = +1;
};

enum class PhaseTag { UnbrokenCandidate, BrokenCandidate };

class PotentialParams {
public:
    // Validating factory. Canonicalises to lambda >= 1/2, l > 0, sigma > 0;
    // the mirrored lambda cases are equivalent under a q-flip, recorded in
    // parity_mirrored() and applied transparently by effective_q().
    static PotentialParams make(double gamma, cplx s, cplx lambda, double epsilon) {
        return make(gamma, classify_s(s), classify_lambda(lambda), epsilon);
    }

    static PotentialParams make(double gamma, SParam s, LambdaParam lambda, double epsilon) {
        if (!(gamma > 0.0) || gamma == 1.0)
            raise(errc::invalid_gamma, "gamma must satisfy gamma > 0, gamma != 1; got " +
                                           std::to_string(gamma));
        if (!(epsilon >= 0.0))
            throw std::invalid_argument("epsilon must be >= 0");

        bool mirrored = false;
        if (!s.is_real() && s.raw() < 0.0) s = SParam::critical_line(-s.raw());
        if (lambda.is_real()) {
            if (lambda.raw() < 0.5) {
                lambda = LambdaParam::real_branch(1.0 - lambda.raw());
                mirrored = !mirrored;
            }
        } else if (lambda.raw() < 0.0) {
            lambda = LambdaParam::critical_line(-lambda.raw());
            mirrored = !mirrored;
        }

        if (epsilon == 0.0 && lambda.coupling() != 0.0)
            raise(errc::singular_on_axis,
                  "epsilon = 0 puts the sinh^-2 singularity on the real axis; "
                  "requires lambda(lambda-1) = 0");

        PotentialParams p(gamma, s, lambda, epsilon);
        p.parity_mirrored_ = mirrored;
        return p;
    }

    // Hermitian radial reference sector (r > 0). gamma = 1 and epsilon = 0
    // are legitimate here; lambda is kept as given because the boundary
    // condition at the origin is not symmetric under lambda -> 1 - lambda.
    static PotentialParams radial_reference(double gamma, double s, double lambda) {
        if (!(gamma > 0.0))
            raise(errc::invalid_gamma, "gamma must be > 0");
        PotentialParams p(gamma, SParam::real_branch(s), LambdaParam::real_branch(lambda), 0.0);
        p.radial_ = true;
        return p;
    }

    // No validation, no canonicalisation. For limit checks and negative
    // controls in tests.
    static PotentialParams unchecked(double gamma, SParam s, LambdaParam lambda, double epsilon) {
        return PotentialParams(gamma, s, lambda, epsilon);
    }

    double gamma() const { return gamma_; }
    double gamma2() const { return gamma_ * gamma_; }
    double gamma4() const { return gamma2() * gamma2(); }
    const SParam& s() const { return s_; }
    const LambdaParam& lambda() const { return lambda_; }
    double epsilon() const { return epsilon_; }
    bool parity_mirrored() const { return parity_mirrored_; }
    bool radial() const { return radial_; }
    // gamma^2 < 1 changes the character of the coordinate map; supported but
    // outside the primary analysis regime.
    bool experimental() const { return gamma_ < 1.0; }

    int effective_q(int q) const { return parity_mirrored_ ? -q : q; }

    // (s(s+1), lambda(lambda-1)) -- exactly real by construction.
    std::pair<double, double> coupling_coefficients() const {
        return {s_.coupling(), lambda_.coupling()};
    }

    // Parameter-regime tag only; the definitive verdict is spectral.
    PhaseTag pt_phase() const {
        if (!lambda_.is_real() && lambda_.raw() != 0.0) return PhaseTag::BrokenCandidate;
        return PhaseTag::UnbrokenCandidate;
    }

private:
    PotentialParams(double gamma, SParam s, LambdaParam lambda, double epsilon)
        : gamma_(gamma), s_(s), lambda_(lambda), epsilon_(epsilon) {}

    static SParam classify_s(cplx s) {
        if (s.imag() == 0.0) return SParam::real_branch(s.real());
        if (s.real() == -0.5) return SParam::critical_line(s.imag());
        raise(errc::invalid_branch,
              "s must be real or lie on the line -1/2 + i sigma");
    }

    static LambdaParam classify_lambda(cplx lam) {
        if (lam.imag() == 0.0) return LambdaParam::real_branch(lam.real());
        if (lam.real() == 0.5) return LambdaParam::critical_line(lam.imag());
        raise(errc::invalid_branch,
              "lambda must be real or lie on the line 1/2 + i l");
    }

    double gamma_;
    SParam s_;
    LambdaParam lambda_;
    double epsilon_;
    bool parity_mirrored_ = false;
    bool radial_ = false;
};

inline PotentialParams make_params(double gamma, cplx s, cplx lambda, double epsilon) {
    return PotentialParams::make(gamma, s, lambda, epsilon);
}

}  // namespace ginocchio
