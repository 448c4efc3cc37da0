#pragma once

#include <complex>
#include <stdexcept>

#include "ginocchio/params.hpp"

namespace ginocchio {

struct JacobiSpec {
    int degree = 0;
    cplx alpha{};
    cplx beta{};
};

// P_n^{(alpha,beta)}(z) by the terminating sum
//
//   P_n = sum_k (-n)_k (n+a+b+1)_k (a+k+1)_{n-k} / (n! k!) * ((1-z)/2)^k
//
// which is the hypergeometric form with the (a+1)_n prefactor folded into
// each term: (a+1)_n / (a+1)_k = (a+k+1)_{n-k}. Every term is a polynomial
// in alpha, beta and z, so the apparent poles of the naive sum at
// alpha+1 in {0,-1,...} cancel identically and no singular case remains.
// Valid for arbitrary complex parameters; degrees here stay small.
inline cplx jacobi_eval(const JacobiSpec& spec, cplx z) {
    const int n = spec.degree;
    if (n < 0 || n > 64)
        throw std::invalid_argument("jacobi_eval: degree must be in [0, 64]");
    if (n == 0) return cplx(1.0, 0.0);

    const cplx a = spec.alpha;
    const cplx b = spec.beta;
    const cplx half_one_minus_z = 0.5 * (1.0 - z);

    double n_fact = 1.0;
    for (int i = 2; i <= n; ++i) n_fact *= i;

    cplx sum(0.0, 0.0);
    for (int k = 0; k <= n; ++k) {
        cplx term(1.0, 0.0);
        for (int j = 0; j < k; ++j) {
            term *= cplx(static_cast<double>(-n + j), 0.0);   // (-n)_k
            term *= (a + b + cplx(static_cast<double>(n + 1 + j), 0.0));
        }
        for (int j = 0; j < n - k; ++j)
            term *= (a + cplx(static_cast<double>(k + 1 + j), 0.0));  // (a+k+1)_{n-k}
        double k_fact = 1.0;
        for (int j = 2; j <= k; ++j) k_fact *= j;
        cplx pw(1.0, 0.0);
        for (int j = 0; j < k; ++j) pw *= half_one_minus_z;
        sum += term * pw / (n_fact * k_fact);
    }
    return sum;
}

// d/dz P_n^{(a,b)}(z) = (n+a+b+1)/2 * P_{n-1}^{(a+1,b+1)}(z)
inline cplx jacobi_derivative(const JacobiSpec& spec, cplx z) {
    if (spec.degree == 0) return cplx(0.0, 0.0);
    JacobiSpec d{spec.degree - 1, spec.alpha + 1.0, spec.beta + 1.0};
    return 0.5 * (static_cast<double>(spec.degree) + spec.alpha + spec.beta + 1.0) *
           jacobi_eval(d, z);
}

inline cplx jacobi_second_derivative(const JacobiSpec& spec, cplx z) {
    if (spec.degree < 2) return cplx(0.0, 0.0);
    JacobiSpec d{spec.degree - 2, spec.alpha + 2.0, spec.beta + 2.0};
    cplx c = (static_cast<double>(spec.degree) + spec.alpha + spec.beta + 1.0) *
             (static_cast<double>(spec.degree) + spec.alpha + spec.beta + 2.0);
    return 0.25 * c * jacobi_eval(d, z);
}

}  // namespace ginocchio
