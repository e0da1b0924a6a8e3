// The exact reciprocity identity for twisted moments of central L-values,
// the character-side decomposition of those moments, and machine-readable
// verification reports.

#ifndef LTWIST_RECIPROCITY_HPP
#define LTWIST_RECIPROCITY_HPP

#include "ltwist/ap.hpp"
#include "ltwist/hecke.hpp"
#include "ltwist/lfunction.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ltwist {

// Distinct odd primes p, q, r; r = 1 is accepted in corollary mode only.
void validate_triple(std::int64_t p, std::int64_t q, std::int64_t r, bool allow_unit_r);

// c_f(s,q) = lambda_f(q) q^{1/2 - s} - q^{-2s} - 1.
Complex c_f(const HeckeEigenform& form, const Complex& s, std::int64_t q, unsigned digits);

// M_f(s, a, b; m) = L(s + 1/2, f x e(a^{-1} b / m)); a may be negative, m = 1
// gives the untwisted value.
Complex modular_symbol_moment(const HeckeEigenform& form, std::int64_t a, std::int64_t b,
                              std::int64_t m, const Complex& s, unsigned digits);

// The same moment assembled from the character side:
//   (1/phi(q)) [ sum*_chi tau(chi) L(s+1/2, f x conj(chi)) chi(p) conj(chi)(r)
//                + c_f(s,q) L(s+1/2, f) ],
// with L(s+1/2, f x conj(chi)) = (1/tau(chi)) sum_m chi(m) L(s+1/2, f x e(m/q)).
// q must be an odd prime <= 101 (the decomposition costs phi(q) full L-values).
Complex moment_via_characters(const HeckeEigenform& form, std::int64_t p, std::int64_t r,
                              std::int64_t q, const Complex& s, unsigned digits);

struct SideTerm {
    int j = 0;
    Complex value;
};

struct VerificationReport {
    int schema_version = 1;
    std::string mode;  // "theorem" or "corollary"
    int weight = 0;
    std::int64_t p = 0, q = 0, r = 0;
    unsigned digits = 0;
    Complex lhs, rhs;
    std::vector<SideTerm> terms;  // the j-indexed right-hand side terms
    Real residual;
    double error_budget = 0;  // sum of the a-priori accuracy bounds of the L-values used
    double wall_ms = 0;
};

// lhs = M_f(p,r;q) - M_f(-q,r;p) - M_f(-p,q;r),
// rhs = sum_{j=1}^{k/2-1} (1/j!) Gamma(k/2+j)/Gamma(k/2-j) (2 pi i q/(pr))^{-j}
//         [ L(1/2+j, f x e(-p^{-1}q/r)) + (-1)^j i^k L(1/2+j, f x e(q r^{-1}/p)) ].
VerificationReport verify_theorem(const HeckeEigenform& form, std::int64_t p, std::int64_t q,
                                  std::int64_t r, unsigned digits);

// The r = 1 specialization:
// lhs = M_f(p,1;q) - M_f(-q,1;p),
// rhs = L(1/2,f) + sum_j ... [ L(1/2+j, f) + (-1)^j i^k L(1/2+j, f x e(q/p)) ].
VerificationReport verify_corollary(const HeckeEigenform& form, std::int64_t p, std::int64_t q,
                                    unsigned digits);

// Lossless (decimal string) JSON round-trip of a report.
nlohmann::json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& j);

}  // namespace ltwist

#endif
