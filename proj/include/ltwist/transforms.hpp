// Contour-quadrature checks of the integral-transform identities: the
// shifted Mellin representation of e(x), residues of Gamma-weighted
// L-integrands, the exact J(x) evaluation, the approximate I(x,s)
// evaluation and the two routes to Q(x,0).

#ifndef LTWIST_TRANSFORMS_HPP
#define LTWIST_TRANSFORMS_HPP

#include "ltwist/ap.hpp"
#include "ltwist/hecke.hpp"
#include "ltwist/modarith.hpp"

#include <cstdint>
#include <functional>

namespace ltwist {

enum class IntegrandTag {
    mellin_exp,   // Gamma(w) e^{i pi w/2} (2 pi x)^{-w}
    gamma_mellin, // Gamma(w) x^{-w}  (classical pair, two-sided exponential decay)
    I_integrand,  // Gamma(w) e^{i pi w/2} x^w Gamma(k/2-s-w)/Gamma(k/2+s+w)
    J_integrand,  // Gamma(w) e^{i pi w/2} x^w Gamma(k/2-w)/Gamma(k/2+w)
    Q0_integrand, // J_integrand at x = 2 pi n q / (p r)
};

struct TransformParams {
    Real x;        // the positive scale parameter
    Complex s;     // shift (I_integrand only)
    int weight = 12;
};

struct ContourSpec {
    Real abscissa;
    Real truncation = 0;     // 0: choose adaptively from the tail estimate
    int nodes_per_unit = 12;
    IntegrandTag id = IntegrandTag::J_integrand;
};

struct QuadratureResult {
    Complex value;
    Real error_estimate;  // quadrature refinement disagreement + tail estimate
};

// (1/2 pi i) int_{(c), |Im w| <= T} integrand dw by adaptive panel
// Gauss-Legendre.  Rejects abscissae where the Stirling decay exponent is
// >= -1; throws (with the tail estimate) when tol is unachievable.
QuadratureResult vertical_line_integral(const ContourSpec& spec, const TransformParams& params,
                                        const Real& tol, unsigned digits = 25);

// Same engine for a caller-supplied integrand with a caller-supplied
// negative-side envelope exponent/amplitude (positive side is assumed
// exponentially damped unless two_sided_exponential).
QuadratureResult integrate_vertical_line(const std::function<Complex(const Complex&)>& f,
                                         const Real& abscissa, const Real& truncation,
                                         int nodes_per_unit, const Real& tol);

// |  e(x) - sum_{n<=N} (2 pi i x)^n/n!  -  (1/2 pi i) int_{(-N-1/2)} ... |.
Real mellin_exp_residual(const Real& x, int shift_depth, const Real& tol, unsigned digits = 25);

// Closed-form residue at w = -n of Gamma(w) e^{i pi w/2} x^w L(1/2+s+w, f x e(alpha)):
//   i^n/n! x^{-n} L(1/2+s-n, f x e(alpha)).
Complex residue_value(int n, const Real& x, const Complex& s, const HeckeEigenform& form,
                      const ReducedPhase& phase, unsigned digits = 25);

// The same residue by an equally spaced circle quadrature of radius 1/4.
Complex residue_circle_quadrature(int n, const Real& x, const Complex& s,
                                  const HeckeEigenform& form, const ReducedPhase& phase,
                                  unsigned digits = 25, int nodes = 64);

// J(x) = sum_{j=0}^{k/2-1} (i x)^{-j} ((k/2-1+j)!/(j!(k/2-1-j)!)) ((-1)^j + i^k e^{-ix}).
Complex J_closed_form(const Real& x, int weight, unsigned digits = 25);

// J(x) by quadrature.  The defining line is (3/4); the integral is evaluated
// on Re w = abscissa (default k/2-1), which crosses no poles and decays one
// power of k/2 faster.
Complex J_numeric(const Real& x, int weight, const Real& tol, unsigned digits = 25,
                  double abscissa = -1);

// I(x,s) on the defining line (-15/8); s must lie in the strip
// 19/16 < Re s < 11/8, |Im s| < 1 where the integral converges absolutely.
Complex I_numeric(const Real& x, const Complex& s, int weight, const Real& tol,
                  unsigned digits = 25);

// Q(2 pi n q/(p r), 0), closed form:
//   -i (pr/(2 pi q n)) Gamma(k/2+1)/Gamma(k/2-1)
//   + sum_{j=1}^{k/2-1} (2 pi i q n/(p r))^{-j} ((k/2-1+j)!/(j!(k/2-1-j)!))
//                       ((-1)^j + i^k e(-q n/(p r))).
Complex Q_closed_form(std::int64_t n, std::int64_t p, std::int64_t q, std::int64_t r, int weight,
                      unsigned digits = 25);

// Q(2 pi n q/(p r), 0) through the shifted-line identity:
//   (J-type integral at x) + (pr/(2 pi i n q)) Gamma(k/2+1)/Gamma(k/2-1)
//   - 1 - i^k e(-q n/(p r)).
// With use_closed_J the integral is taken from the closed form, turning the
// comparison into an exact algebraic identity.
Complex Q_via_Q0identity(std::int64_t n, std::int64_t p, std::int64_t q, std::int64_t r, int weight,
                         const Real& tol, unsigned digits = 25, bool use_closed_J = false);

}  // namespace ltwist

#endif
