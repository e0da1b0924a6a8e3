#include "ltwist/special.hpp"

#include <deque>
#include <mutex>
#include <sstream>

namespace ltwist {

namespace {

Real real_from_mpq(const mpq_class& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real eps_for_current_precision(int extra = 5) {
    Real e = 10;
    return boost::multiprecision::pow(e, -static_cast<long>(Real::default_precision()) - extra);
}

// sin(pi z) without going through the generic complex exp (keeps the huge
// |Im z| cases well-behaved: sinh/cosh carry the growth).
Complex sin_pi(const Complex& z) {
    Real x = pi() * z.re, y = pi() * z.im;
    using boost::multiprecision::cos;
    using boost::multiprecision::cosh;
    using boost::multiprecision::sin;
    using boost::multiprecision::sinh;
    return Complex(sin(x) * cosh(y), cos(x) * sinh(y));
}

}  // namespace

const mpq_class& bernoulli(std::size_t n) {
    static std::deque<mpq_class> cache;  // deque: growth keeps references valid
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (cache.empty()) {
        cache.emplace_back(1);
        cache.emplace_back(-1, 2);
    }
    while (cache.size() <= n) {
        std::size_t m = cache.size();
        // B_m = -1/(m+1) * sum_{k<m} C(m+1,k) B_k
        mpq_class acc = 0;
        mpz_class binom = 1;  // C(m+1, 0)
        for (std::size_t k = 0; k < m; ++k) {
            acc += binom * cache[k];
            binom *= static_cast<unsigned long>(m + 1 - k);
            binom /= static_cast<unsigned long>(k + 1);
        }
        acc /= static_cast<unsigned long>(m + 1);
        cache.emplace_back(-acc);
    }
    return cache[n];
}

Complex log_gamma_right_half(const Complex& z) {
    const long prec = static_cast<long>(Real::default_precision());
    // Shift until |z+n| is large enough that the Bernoulli series reaches
    // the working precision (smallest term ~ e^{-2 pi |zeta|}).
    const double z0 = 0.4 * static_cast<double>(prec + 12);
    double re_d = z.re.convert_to<double>();
    double im_d = z.im.convert_to<double>();
    long shift = 0;
    double need = z0 * z0 - im_d * im_d;
    if (need > 0) {
        double s = std::sqrt(need) - re_d;
        if (s > 0) shift = static_cast<long>(s) + 1;
    }

    Complex zeta = z + Complex(Real(shift));
    Complex log_zeta = log(zeta);
    Complex ln = (zeta - Complex(Real(1) / 2)) * log_zeta - zeta;
    ln += Complex(boost::multiprecision::log(2 * pi()) / 2);

    Real eps = eps_for_current_precision();
    Complex inv = Complex(Real(1)) / zeta;
    Complex inv2 = inv * inv;
    Complex t = inv;  // zeta^{1-2j}, starting at j=1
    Real last = 0;
    for (std::size_t j = 1; j < 4096; ++j) {
        Real cj = real_from_mpq(bernoulli(2 * j)) / static_cast<long>(2 * j * (2 * j - 1));
        Complex term = Complex(cj) * t;
        Real mag = abs(term);
        ln += term;
        if (mag < eps) break;
        if (j > 4 && mag > last && last != 0) break;  // divergence guard
        last = mag;
        t *= inv2;
    }

    for (long i = 0; i < shift; ++i) ln -= log(z + Complex(Real(i)));
    return ln;
}

Complex gamma(const Complex& z) {
    if (z.im == 0 && z.re <= 0 && mpfr_integer_p(z.re.backend().data())) {
        std::ostringstream os;
        os << "gamma: pole at z = " << z.re.convert_to<long>();
        throw std::domain_error(os.str());
    }
    if (z.re < Real(1) / 2) {
        // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1-z)).
        Complex one_minus(Real(1) - z.re, -z.im);
        return Complex(pi()) / (sin_pi(z) * gamma(one_minus));
    }
    return exp(log_gamma_right_half(z));
}

Real upper_incomplete_gamma_int(long m, const Real& x) {
    if (m < 1) throw std::domain_error("upper_incomplete_gamma_int: m must be >= 1");
    if (x <= 0) throw std::domain_error("upper_incomplete_gamma_int: x must be positive");
    Real sum = 1, term = 1, fact = 1;
    for (long i = 1; i < m; ++i) {
        term *= x / i;
        sum += term;
        fact *= i;
    }
    return fact * boost::multiprecision::exp(-x) * sum;
}

Complex upper_incomplete_gamma(const Complex& nu, const Real& x) {
    if (x <= 0) throw std::domain_error("upper_incomplete_gamma: x must be positive");
    if (nu.im == 0 && nu.re >= 1 && nu.re <= Real(1000000) &&
        mpfr_integer_p(nu.re.backend().data())) {
        return Complex(upper_incomplete_gamma_int(nu.re.convert_to<long>(), x));
    }

    Real eps = eps_for_current_precision();
    Real anu = abs(nu);
    if (x < anu + 2) {
        // Gamma(nu) - x^nu e^{-x} sum_{n>=0} x^n / (nu (nu+1) ... (nu+n))
        Complex t = Complex(Real(1)) / nu;
        Complex sum = t;
        for (long n = 1; n < 100000; ++n) {
            t *= Complex(x) / (nu + Complex(Real(n)));
            sum += t;
            if (abs(t) < eps * abs(sum)) break;
        }
        Complex lower = pow_real_base(x, nu) * Complex(boost::multiprecision::exp(-x)) * sum;
        return gamma(nu) - lower;
    }

    // Continued fraction (modified Lentz):
    //   Gamma(nu,x) = e^{-x} x^nu / (x+1-nu - 1(1-nu)/(x+3-nu - 2(2-nu)/(...)))
    Real tiny = eps * eps;
    if (tiny == 0) tiny = Real("1e-100000");
    Complex b(x + 1 - nu.re, -nu.im);
    Complex f = (abs(b) == 0) ? Complex(tiny) : b;
    Complex C = f, D(Real(0));
    for (long j = 1; j < 100000; ++j) {
        Complex a = Complex(Real(-j)) * (Complex(Real(j)) - nu);
        b += Complex(Real(2));
        D = b + a * D;
        if (abs(D) == 0) D = Complex(tiny);
        C = b + a / C;
        if (abs(C) == 0) C = Complex(tiny);
        D = Complex(Real(1)) / D;
        Complex delta = C * D;
        f *= delta;
        if (abs(delta - Complex(Real(1))) < eps) break;
    }
    Real damp = boost::multiprecision::exp(-x);
    return Complex(damp) * pow_real_base(x, nu) / f;
}

Complex stirling_main_term(const Complex& z, const Real& t) {
    using boost::multiprecision::abs;
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    using boost::multiprecision::sqrt;
    int sgn = (t > 0) ? 1 : -1;
    Real at = abs(t);
    Real p = pi();
    Complex amp = pow_real_base(at, z - Complex(Real(1) / 2));
    Real phase_re = -p * at / 2 - z.im * p * sgn / 2;
    Real phase_im = t * log(at) - t + z.re * p * sgn / 2 - p * sgn / 4;
    Complex osc = ltwist::exp(Complex(phase_re, phase_im));
    return Complex(sqrt(2 * p)) * amp * osc;
}

namespace {

using Series = std::vector<Complex>;  // coefficients in u = 1/|t|, index = power

Series series_mul(const Series& a, const Series& b, std::size_t order) {
    Series c(order + 1, Complex(Real(0)));
    for (std::size_t i = 0; i <= order && i < a.size(); ++i)
        for (std::size_t j = 0; i + j <= order && j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

// exp of a series with zero constant term.
Series series_exp(const Series& d, std::size_t order) {
    Series r(order + 1, Complex(Real(0)));
    r[0] = Complex(Real(1));
    Series power = r;
    Real fact = 1;
    for (std::size_t i = 1; i <= order; ++i) {
        power = series_mul(power, d, order);
        fact *= static_cast<long>(i);
        for (std::size_t m = 0; m <= order; ++m) r[m] += power[m] / Complex(fact);
    }
    return r;
}

}  // namespace

std::vector<Complex> stirling_expansion_coeffs(const Complex& z, int sgn, int order) {
    const std::size_t M = static_cast<std::size_t>(order);
    Complex is(Real(0), Real(sgn));  // i*sgn
    Complex w = is * z;              // (i sgn) z

    // D(u) = log Gamma(z + it) - log(main term), as a power series in u = 1/|t|:
    //   (z - 1/2) L + [i sgn |t| L - z] + Bernoulli tail,
    // with L = log(1 - (i sgn) z u) = -sum_m w^m u^m / m.
    Series D(M + 1, Complex(Real(0)));

    Complex wp = w;
    for (std::size_t m = 1; m <= M; ++m) {
        Complex Lm = -wp / Complex(Real(static_cast<long>(m)));
        D[m] += (z - Complex(Real(1) / 2)) * Lm;
        // i sgn |t| L - z contributes -i sgn w^{m+1}/(m+1) at u^m.
        D[m] += -is * wp * w / Complex(Real(static_cast<long>(m + 1)));
        wp *= w;
    }

    // Bernoulli tail: sum_j c_j (i sgn)^{1-2j} u^{2j-1} (1 - w u)^{1-2j}.
    for (std::size_t j = 1; 2 * j - 1 <= M; ++j) {
        Real cj;
        mpfr_set_q(cj.backend().data(), bernoulli(2 * j).get_mpq_t(), MPFR_RNDN);
        cj /= static_cast<long>(2 * j * (2 * j - 1));
        Complex pref = Complex(cj) * pow_int(is, 1 - static_cast<long>(2 * j));
        // (1 - w u)^{p}, p = 1-2j: binomial series sum_n C(p,n) (-w)^n u^n.
        Complex binom(Real(1));
        long p = 1 - static_cast<long>(2 * j);
        Complex term = pref;
        for (std::size_t n = 0; 2 * j - 1 + n <= M; ++n) {
            D[2 * j - 1 + n] += term;
            binom = Complex(Real(p - static_cast<long>(n))) / Complex(Real(static_cast<long>(n) + 1));
            term *= binom * (-w);
        }
    }

    Series E = series_exp(D, M);
    std::vector<Complex> a(M + 1, Complex(Real(0)));
    for (std::size_t m = 1; m <= M; ++m) a[m] = E[m];
    return a;
}

StirlingResult stirling_approx(const Complex& z, const Real& t, int order) {
    using boost::multiprecision::abs;
    if (z.re < 0) throw std::domain_error("stirling_approx: Re z must be >= 0");
    if (abs(t) <= Real(1) / 2) throw std::domain_error("stirling_approx: |t| must exceed 1/2");
    int sgn = (t > 0) ? 1 : -1;
    Real at = abs(t);

    Complex main = stirling_main_term(z, t);
    auto a = stirling_expansion_coeffs(z, sgn, order);
    Complex corr(Real(1));
    Real up = 1;
    for (int m = 1; m <= order; ++m) {
        up /= at;
        corr += a[static_cast<std::size_t>(m)] * Complex(up);
    }
    Complex approx = main * corr;
    Complex exact = gamma(z + Complex(Real(0), t));
    StirlingResult res;
    res.approximation = approx;
    res.relative_deviation = ltwist::abs(exact - approx) / ltwist::abs(main);
    return res;
}

}  // namespace ltwist
