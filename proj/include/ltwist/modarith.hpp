// Exact modular and rational arithmetic: reduced phases, modular inverses,
// additive reciprocity, Dirichlet characters modulo odd primes and their
// Gauss sums.

#ifndef LTWIST_MODARITH_HPP
#define LTWIST_MODARITH_HPP

#include "ltwist/ap.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace ltwist {

// A rational phase a/b in lowest terms with 0 <= a < b.  b = 1 is the
// trivial phase.
struct ReducedPhase {
    std::int64_t a = 0;
    std::int64_t b = 1;

    bool trivial() const { return b == 1; }
    bool operator==(const ReducedPhase&) const = default;
};

// Canonical representative of a/b mod 1.  Inputs with a common factor are
// rejected (every phase in the identities is automatically reduced).
ReducedPhase reduce_phase(std::int64_t a, std::int64_t b);

// Inverse of a mod b, in [0, b); mod_inverse(x, 1) == 0.
std::int64_t mod_inverse(std::int64_t a, std::int64_t b);

// Exact defect of  n a^{-1}/b - (-n b^{-1}/a + n/(ab))  mod 1.
// Lemma-level contract: always zero for coprime a, b.
mpq_class additive_reciprocity_check(std::int64_t n, std::int64_t a, std::int64_t b);

bool is_odd_prime(std::int64_t q);
std::int64_t smallest_primitive_root(std::int64_t q);

// A Dirichlet character mod an odd prime q, indexed by the exponent on the
// smallest primitive root: chi_index(g^t) = e(index * t / (q-1)).
struct DirichletCharacter {
    std::int64_t modulus = 0;
    std::int64_t index = 0;

    bool primitive() const { return index != 0; }
    int parity() const { return (index % 2 == 0) ? 1 : -1; }  // chi(-1)
};

class CharacterGroup {
public:
    explicit CharacterGroup(std::int64_t q);  // q an odd prime

    std::int64_t modulus() const { return q_; }
    std::int64_t primitive_root() const { return root_; }
    std::int64_t order() const { return q_ - 1; }

    // Discrete log of m (coprime to q) against the primitive root.
    std::int64_t dlog(std::int64_t m) const;

    DirichletCharacter character(std::int64_t index) const;

    // chi_index(m) at the current working precision; 0 for q | m.
    Complex value(std::int64_t index, std::int64_t m) const;

private:
    std::int64_t q_;
    std::int64_t root_;
    std::vector<std::int64_t> dlog_;  // dlog_[m] for m in [1, q-1]
};

// Gauss sum tau(chi) = sum_{n mod q} chi(n) e(n/q) at P digits.
// Rejects the principal character (not primitive).
Complex gauss_sum(const DirichletCharacter& chi, unsigned digits);

// | (1/phi(q)) sum*_chi tau(chi) chi(m) - e(m^{-1}/q) - 1/phi(q) |,
// gcd(m, q) = 1.
Real gauss_orthogonality_residual(std::int64_t q, std::int64_t m, unsigned digits);

}  // namespace ltwist

#endif
