// Additively twisted L-values L(1/2 + s, f x e(a/b)) in a vertical strip,
// through the incomplete-Gamma split of the period integral:
//
//   L(1/2+s, f x e(a/b)) = (2pi)^nu / Gamma(nu) * [ S1 + i^k b^{k-2nu} S2 ],
//   S1 = sum_n a_f(n) e( n a/b) (2pi n)^{-nu}     Gamma(nu,   2pi n / b),
//   S2 = sum_n a_f(n) e(-n a^{-1}/b) (2pi n)^{-(k-nu)} Gamma(k-nu, 2pi n / b),
//   nu = k/2 + s,
//
// obtained by splitting the period integral at y0 = 1/b and applying the
// level-1 modular transformation f(a/b + iy) = (i b y)^{-k} f(-a^{-1}/b + i/(b^2 y)).

#ifndef LTWIST_LFUNCTION_HPP
#define LTWIST_LFUNCTION_HPP

#include "ltwist/ap.hpp"
#include "ltwist/hecke.hpp"
#include "ltwist/modarith.hpp"

namespace ltwist {

struct LQuery {
    const HeckeEigenform* form = nullptr;
    ReducedPhase phase;
    Complex s;            // the point evaluated is 1/2 + s
    unsigned digits = 30;
};

// Truncation length for the two n-sums at the given denominator/precision,
// resolved by one fixed-point pass of N = (b/2pi)((P+15) ln 10 + (k/2) ln N).
std::int64_t truncation_length(int weight, std::int64_t b, unsigned digits);

// L(1/2+s, f x e(a/b)), absolute error below 10^{-(digits-5)}.
// Requires |Re s| <= k/2 - 1.
Complex evaluate(const LQuery& query);
Complex evaluate(const HeckeEigenform& form, const ReducedPhase& phase, const Complex& s,
                 unsigned digits);

// Completed function Lambda(s; a/b) = (b/2pi)^s Gamma(k/2+s) L(1/2+s, f x e(a/b)),
// satisfying Lambda(s; -a^{-1}/b) = i^k Lambda(-s; a/b).
Complex completed(const LQuery& query);
Complex completed(const HeckeEigenform& form, const ReducedPhase& phase, const Complex& s,
                  unsigned digits);

// | Lambda(s; (-a^{-1} mod b)/b) - i^k Lambda(-s; a/b) |.
Real fe_residual(const HeckeEigenform& form, const ReducedPhase& phase, const Complex& s,
                 unsigned digits);

// Phase paired with a/b under the functional equation: (-a^{-1} mod b)/b.
ReducedPhase fe_dual_phase(const ReducedPhase& phase);

}  // namespace ltwist

#endif
