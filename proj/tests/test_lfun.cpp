#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ltwist/lfunction.hpp"
#include "ltwist/special.hpp"

#include <numeric>

using namespace ltwist;

namespace {

// Truncated q-expansion f(z) = sum a(n) e(nz), Im z > 0.
Complex q_expansion(const HeckeEigenform& form, const Complex& z, std::int64_t terms) {
    form.extend(terms);
    Complex acc(Real(0));
    for (std::int64_t n = 1; n <= terms; ++n) {
        Real an;
        mpfr_set_z(an.backend().data(), form.a(n).get_mpz_t(), MPFR_RNDN);
        // e(nz) = e^{2 pi i n z}
        Real damp = boost::multiprecision::exp(-2 * pi() * n * z.im);
        acc += Complex(an * damp) * e_of(Real(n) * z.re);
    }
    return acc;
}

// Direct Dirichlet series sum_{n<=N} lambda(n) e(n a/b) n^{-(1/2+s)}, real s.
Complex direct_series(const HeckeEigenform& form, const ReducedPhase& phase, const Real& s,
                      std::int64_t terms) {
    form.extend(terms);
    Complex acc(Real(0));
    for (std::int64_t n = 1; n <= terms; ++n) {
        Real coeff = form.lambda(n, Real::default_precision()) *
                     boost::multiprecision::pow(Real(n), -(Real(1) / 2 + s));
        std::int64_t idx = (n * phase.a) % phase.b;
        acc += Complex(coeff) * e_of(Real(idx) / Real(phase.b));
    }
    return acc;
}

}  // namespace

TEST_CASE("level-1 modular transformation of the q-expansion") {
    // f(a/b + iy) = (i b y)^{-k} f(-a^{-1}/b + i/(b^2 y)); both sides from the
    // raw q-expansion, independent of the L-value engine.
    PrecisionGuard guard(40);
    const Real y = Real(3) / 10;
    for (int k : {12, 16}) {
        HeckeEigenform f = build_form(k, 200);
        for (std::int64_t b = 1; b <= 5; ++b) {
            for (std::int64_t a = 0; a < b; ++a) {
                if (std::gcd(a, b) != 1 && b > 1) continue;
                Complex lhs = q_expansion(f, Complex(Real(a) / b, y), 130);
                std::int64_t a_inv = mod_inverse(a == 0 ? 1 : a, b);
                Real y_dual = 1 / (Real(b) * b * y);
                Complex z_dual(Real(((-a_inv % b) + b) % b) / b, y_dual);
                std::int64_t terms = 40 + 30 * b;  // dual side decays like e^{-2 pi n/(b^2 y)}
                Complex rhs = pow_int(Complex(Real(0), Real(b) * y), -k) *
                              q_expansion(f, z_dual, terms);
                CHECK(abs(lhs - rhs) < Real("1e-30"));
            }
        }
    }
}

TEST_CASE("central value of the weight-12 form (regression)") {
    HeckeEigenform delta = build_form(12);
    Complex L = evaluate(delta, ReducedPhase{}, Complex(), 30);
    PrecisionGuard guard(40);
    CHECK(abs(L - Complex(Real("0.7921228386460305693559449"))) < Real("1e-24"));
    CHECK(abs(Complex(L.im)) < Real("1e-24"));
}

TEST_CASE("odd-sign weights have vanishing central value") {
    // i^k = -1 for k = 2 mod 4 forces Lambda(0) = -Lambda(0).
    for (int k : {18, 22, 26}) {
        HeckeEigenform f = build_form(k);
        Complex L = evaluate(f, ReducedPhase{}, Complex(), 30);
        CHECK(abs(L) < Real("1e-24"));
    }
}

TEST_CASE("direct Dirichlet series oracle in the absolute-convergence range") {
    PrecisionGuard guard(40);
    struct Case {
        int k;
        std::int64_t a, b;
    };
    for (const Case& c : {Case{12, 0, 1}, Case{12, 1, 3}, Case{16, 2, 5}}) {
        HeckeEigenform f = build_form(c.k);
        ReducedPhase phase = reduce_phase(c.a, c.b);
        // s = 4: tail of the direct sum is below sum_{n>2000} n^{-7/2} ~ 6e-10.
        Complex oracle = direct_series(f, phase, Real(4), 2000);
        Complex engine = evaluate(f, phase, Complex(Real(4)), 30);
        CHECK(abs(engine - oracle) < Real("1e-8"));
    }
}

TEST_CASE("direct series sanity just right of the convergence abscissa") {
    PrecisionGuard guard(40);
    HeckeEigenform delta = build_form(12);
    ReducedPhase phase = reduce_phase(1, 5);
    // s = 3/2 converges too slowly for a sharp check; the divisor-bound tail
    // after 2*10^4 terms is ~ 6e-4.
    Complex oracle = direct_series(delta, phase, Real(3) / 2, 20000);
    Complex engine = evaluate(delta, phase, Complex(Real(3) / 2), 30);
    CHECK(abs(engine - oracle) < Real("2e-3"));
}

TEST_CASE("functional equation residuals") {
    struct Case {
        int k;
        std::int64_t a, b;
        double s_re, s_im;
    };
    const Case cases[] = {{12, 1, 5, 0.25, 0.0}, {16, 3, 7, 0.2, 0.3},
                          {18, 1, 2, -0.5, 0.0}, {22, 5, 48, 1.0, -0.7}};
    for (const Case& c : cases) {
        HeckeEigenform f = build_form(c.k);
        PrecisionGuard guard(40);
        Complex s(Real(c.s_re), Real(c.s_im));
        Real residual = fe_residual(f, reduce_phase(c.a, c.b), s, 30);
        CHECK(residual < Real("1e-24"));
    }
}

TEST_CASE("functional equation pairs phases as an involution") {
    ReducedPhase phase = reduce_phase(2, 7);  // 2^{-1} = 4 mod 7 -> dual -4 = 3/7
    ReducedPhase dual = fe_dual_phase(phase);
    CHECK(dual == ReducedPhase{3, 7});
    // Applying the map twice gives a/b back: -(-a^{-1})^{-1} = a.
    CHECK(fe_dual_phase(dual) == phase);
    CHECK(fe_dual_phase(ReducedPhase{}) == ReducedPhase{});
}

TEST_CASE("conjugation symmetry of the twisted values") {
    HeckeEigenform f = build_form(16);
    PrecisionGuard guard(40);
    Complex s(Real(1) / 3, Real(2) / 7);
    Complex lhs = evaluate(f, reduce_phase(-2, 9), conj(s), 30);
    Complex rhs = conj(evaluate(f, reduce_phase(2, 9), s, 30));
    CHECK(abs(lhs - rhs) < Real("1e-24"));
}

TEST_CASE("requesting more digits refines the value monotonically") {
    HeckeEigenform f = build_form(12);
    ReducedPhase phase = reduce_phase(3, 11);
    Complex s(Real(1) / 4, Real(1) / 9);
    Complex v30 = evaluate(f, phase, s, 30);
    Complex v60 = evaluate(f, phase, s, 60);
    PrecisionGuard guard(70);
    CHECK(abs(v30 - v60) < Real("1e-24"));
}

TEST_CASE("completed function matches its definition") {
    HeckeEigenform f = build_form(12);
    PrecisionGuard guard(55);
    ReducedPhase phase = reduce_phase(1, 7);
    Complex s(Real(1) / 2, Real(1) / 5);
    Complex L = evaluate(f, phase, s, 30);
    Complex lambda = completed(f, phase, s, 30);
    Complex expected = pow_real_base(Real(7) / (2 * pi()), s) *
                       gamma(Complex(Real(6)) + s) * L;
    CHECK(abs(lambda - expected) < Real("1e-20"));
}

TEST_CASE("input validation") {
    HeckeEigenform f = build_form(12);
    CHECK_THROWS_AS(evaluate(f, ReducedPhase{}, Complex(Real(6)), 30), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(f, ReducedPhase{}, Complex(Real(-6)), 30), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(f, ReducedPhase{}, Complex(), 5), std::invalid_argument);
}

TEST_CASE("truncation length grows with denominator and digits") {
    CHECK(truncation_length(12, 10, 30) < truncation_length(12, 50, 30));
    CHECK(truncation_length(12, 10, 30) < truncation_length(12, 10, 60));
    CHECK(truncation_length(12, 1, 10) >= 8);
}
