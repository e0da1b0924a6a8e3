// Fourier coefficients of the normalized Hecke eigenforms of level 1 in the
// one-dimensional weights {12, 16, 18, 20, 22, 26}.
//
// Delta is built from the log-derivative recurrence of prod (1-q^n)^24;
// the higher weights multiply Delta by E4^a E6^b with
//   E4 = 1 + 240 sum sigma_3(n) q^n,   E6 = 1 - 504 sum sigma_5(n) q^n.
// Coefficients stay exact integers; the normalization lambda(n) = a(n) /
// n^{(k-1)/2} is applied only at the precision boundary.

#ifndef LTWIST_HECKE_HPP
#define LTWIST_HECKE_HPP

#include "ltwist/ap.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

namespace ltwist {

bool weight_supported(int weight);

class HeckeEigenform {
public:
    // Throws std::invalid_argument for weights outside the supported set.
    HeckeEigenform(int weight, std::int64_t n_coeffs);

    int weight() const { return weight_; }

    // a_f(n), exact.  Extends the cache if n exceeds it.
    mpz_class a(std::int64_t n) const;

    // lambda_f(n) = a_f(n) n^{-(k-1)/2} at `digits` decimal digits.
    Real lambda(std::int64_t n, unsigned digits) const;

    std::int64_t cache_len() const;

    // Snapshot of a_f(1..n).
    std::vector<mpz_class> coefficients(std::int64_t n) const;

    // Grow the cache to cover a_f(1..n).  Many readers, single writer;
    // readers never observe a partially written prefix.
    void extend(std::int64_t n) const;

private:
    int weight_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

// Convenience factory mirroring the library's primary entry point.
inline HeckeEigenform build_form(int weight, std::int64_t n = 64) {
    return HeckeEigenform(weight, n);
}

// Coefficient-cache files: JSON keyed by (weight, n) with decimal coefficient
// strings.  Directory taken from the LTWIST_CACHE_DIR environment variable;
// when unset the cache is purely in-memory.
std::string coefficient_cache_dir();
bool load_coefficient_cache(int weight, std::int64_t n, std::vector<mpz_class>& out);
void store_coefficient_cache(int weight, std::int64_t n, const std::vector<mpz_class>& coeffs);

// Truncated product of two integer power series (index = exponent).
std::vector<mpz_class> multiply_series(const std::vector<mpz_class>& a,
                                       const std::vector<mpz_class>& b,
                                       std::size_t len);

}  // namespace ltwist

#endif
