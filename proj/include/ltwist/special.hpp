// Complex Gamma, upper incomplete Gamma and the asymptotic expansion of
// Gamma(z+it) on vertical lines, all at arbitrary precision.

#ifndef LTWIST_SPECIAL_HPP
#define LTWIST_SPECIAL_HPP

#include "ltwist/ap.hpp"

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace ltwist {

// Exact Bernoulli numbers B_0, B_1, B_2, ... (B_1 = -1/2).  Grows on demand,
// thread safe.
const mpq_class& bernoulli(std::size_t n);

// Gamma(z).  Throws std::domain_error on a pole (z a nonpositive integer),
// naming the pole location.
Complex gamma(const Complex& z);

// log Gamma(z) for Re z > 0 (principal branch along the recursion path).
Complex log_gamma_right_half(const Complex& z);

// Upper incomplete Gamma(nu, x) = int_x^inf e^{-t} t^{nu-1} dt, x > 0.
// Series below the crossover x = |nu| + 2, continued fraction above.
Complex upper_incomplete_gamma(const Complex& nu, const Real& x);

// Gamma(m, x) for integer m >= 1: (m-1)! e^{-x} sum_{i<m} x^i / i!.
Real upper_incomplete_gamma_int(long m, const Real& x);

// Main term of the vertical-line asymptotic for Gamma(z+it):
//   sqrt(2pi) e^{-i pi sgn(t)/4} |t|^{z-1/2}
//     exp(-pi|t|/2 + i t log|t| - i t + i z pi sgn(t)/2).
Complex stirling_main_term(const Complex& z, const Real& t);

// Coefficients a_1..a_M of the correction series
//   Gamma(z+it) ~ main_term * (1 + sum_m a_m(z) |t|^{-m}),
// derived from the classical Stirling series re-expanded in 1/|t|.
// sgn is the sign of t.
std::vector<Complex> stirling_expansion_coeffs(const Complex& z, int sgn, int order);

struct StirlingResult {
    Complex approximation;
    Real relative_deviation;  // |Gamma(z+it) - approximation| / |main term|
};

// Evaluates the order-M approximation and its deviation from gamma(z+it).
// Requires Re z >= 0 and |t| > 1/2.
StirlingResult stirling_approx(const Complex& z, const Real& t, int order);

}  // namespace ltwist

#endif
