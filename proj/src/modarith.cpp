#include "ltwist/modarith.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <string>

namespace ltwist {

ReducedPhase reduce_phase(std::int64_t a, std::int64_t b) {
    if (b == 0) throw std::invalid_argument("reduce_phase: zero denominator");
    if (b < 0) { a = -a; b = -b; }
    std::int64_t r = a % b;
    if (r < 0) r += b;
    if (std::gcd(r, b) != 1 && b != 1)
        throw std::invalid_argument("reduce_phase: " + std::to_string(a) + "/" + std::to_string(b) +
                                    " is not in lowest terms");
    if (b == 1) r = 0;
    return ReducedPhase{r, b};
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t b) {
    if (b < 1) throw std::invalid_argument("mod_inverse: modulus must be positive");
    if (b == 1) return 0;
    mpz_class am = a, bm = b, inv;
    if (mpz_invert(inv.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t()) == 0)
        throw std::invalid_argument("mod_inverse: " + std::to_string(a) + " is not invertible mod " +
                                    std::to_string(b));
    return inv.get_si();
}

mpq_class additive_reciprocity_check(std::int64_t n, std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0 || std::gcd(std::abs(a), std::abs(b)) != 1)
        throw std::invalid_argument("additive_reciprocity_check: a, b must be nonzero and coprime");
    std::int64_t ab = std::abs(b), aa = std::abs(a);
    std::int64_t a_inv = mod_inverse(a, ab);
    std::int64_t b_inv = mod_inverse(b, aa);

    mpq_class lhs(mpz_class(n) * a_inv, mpz_class(ab));
    lhs.canonicalize();
    mpq_class t1(mpz_class(-n) * b_inv, mpz_class(aa));
    t1.canonicalize();
    mpq_class t2(mpz_class(n), mpz_class(a) * b);
    t2.canonicalize();
    mpq_class defect = lhs - (t1 + t2);
    // Reduce mod 1.
    mpz_class num = defect.get_num(), den = defect.get_den(), r;
    mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpq_class result(r, den);
    result.canonicalize();
    return result;
}

bool is_odd_prime(std::int64_t q) {
    if (q < 3 || q % 2 == 0) return false;
    mpz_class z = q;
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

namespace {
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    mpz_class b = base, e = exp, m = mod, r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r.get_si();
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> fs;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            fs.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}
}  // namespace

std::int64_t smallest_primitive_root(std::int64_t q) {
    if (!is_odd_prime(q)) throw std::invalid_argument("smallest_primitive_root: modulus must be an odd prime");
    static std::map<std::int64_t, std::int64_t> cache;
    static std::shared_mutex mtx;
    {
        std::shared_lock lock(mtx);
        auto it = cache.find(q);
        if (it != cache.end()) return it->second;
    }
    auto factors = prime_factors(q - 1);
    std::int64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto f : factors) {
            if (pow_mod(g, (q - 1) / f, q) == 1) { ok = false; break; }
        }
        if (ok) break;
    }
    std::unique_lock lock(mtx);
    cache.emplace(q, g);
    return g;
}

CharacterGroup::CharacterGroup(std::int64_t q) : q_(q), root_(smallest_primitive_root(q)) {
    dlog_.assign(static_cast<std::size_t>(q), -1);
    std::int64_t v = 1;
    for (std::int64_t t = 0; t < q - 1; ++t) {
        dlog_[static_cast<std::size_t>(v)] = t;
        v = (v * root_) % q;
    }
}

std::int64_t CharacterGroup::dlog(std::int64_t m) const {
    std::int64_t r = m % q_;
    if (r < 0) r += q_;
    if (r == 0) throw std::invalid_argument("dlog: argument divisible by the modulus");
    return dlog_[static_cast<std::size_t>(r)];
}

DirichletCharacter CharacterGroup::character(std::int64_t index) const {
    std::int64_t j = index % (q_ - 1);
    if (j < 0) j += q_ - 1;
    return DirichletCharacter{q_, j};
}

Complex CharacterGroup::value(std::int64_t index, std::int64_t m) const {
    std::int64_t r = m % q_;
    if (r < 0) r += q_;
    if (r == 0) return Complex(Real(0));
    std::int64_t t = (dlog_[static_cast<std::size_t>(r)] * (index % (q_ - 1))) % (q_ - 1);
    return e_of(Real(t) / Real(q_ - 1));
}

Complex gauss_sum(const DirichletCharacter& chi, unsigned digits) {
    if (!is_odd_prime(chi.modulus)) throw std::invalid_argument("gauss_sum: modulus must be an odd prime");
    if (!chi.primitive()) throw std::invalid_argument("gauss_sum: principal character is not primitive");
    PrecisionGuard guard(digits + kGuardDigits);
    CharacterGroup group(chi.modulus);
    Complex sum(Real(0));
    for (std::int64_t n = 1; n < chi.modulus; ++n) {
        sum += group.value(chi.index, n) * e_of(Real(n) / Real(chi.modulus));
    }
    return sum;
}

Real gauss_orthogonality_residual(std::int64_t q, std::int64_t m, unsigned digits) {
    if (!is_odd_prime(q)) throw std::invalid_argument("gauss_orthogonality_residual: q must be an odd prime");
    if (m % q == 0)
        throw std::invalid_argument("gauss_orthogonality_residual: m divisible by q (identity changes form)");
    PrecisionGuard guard(digits + kGuardDigits);
    CharacterGroup group(q);
    Complex acc(Real(0));
    for (std::int64_t j = 1; j < q - 1; ++j) {  // all non-principal characters mod a prime are primitive
        acc += gauss_sum(group.character(j), digits) * group.value(j, m);
    }
    Real phi = q - 1;
    Complex lhs = acc / Complex(phi);
    std::int64_t m_inv = mod_inverse(m, q);
    Complex rhs = e_of(Real(m_inv) / Real(q)) + Complex(Real(1) / phi);
    return abs(lhs - rhs);
}

}  // namespace ltwist
