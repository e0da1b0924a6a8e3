#include "ltwist/lfunction.hpp"

#include "ltwist/special.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ltwist {

std::int64_t truncation_length(int weight, std::int64_t b, unsigned digits) {
    const double scale = static_cast<double>(b) / (2 * 3.14159265358979324);
    const double target = (static_cast<double>(digits) + 15.0) * std::log(10.0);
    double n = scale * target;
    if (n < 8) n = 8;
    n = scale * (target + (weight / 2.0) * std::log(n));
    return static_cast<std::int64_t>(n * 1.1) + 16;
}

namespace {

struct EvalSetup {
    unsigned working_digits;
    std::int64_t trunc;
};

EvalSetup setup_for(const HeckeEigenform& form, const ReducedPhase& phase, const Complex& s,
                    unsigned digits) {
    const int k = form.weight();
    double re_s = s.re.convert_to<double>();
    if (std::fabs(re_s) > k / 2.0 - 1.0 + 1e-12) {
        std::ostringstream os;
        os << "evaluate: Re s = " << re_s << " outside the supported strip |Re s| <= " << (k / 2 - 1);
        throw std::invalid_argument(os.str());
    }
    if (digits < 10) throw std::invalid_argument("evaluate: precision must be at least 10 digits");
    // b^{k-2nu} = b^{-2 Re s} inflates the dual sum when Re s < 0.
    unsigned extra = 0;
    if (re_s < 0) extra = static_cast<unsigned>(std::ceil(-2.0 * re_s * std::log10(double(phase.b)))) + 2;
    return EvalSetup{digits + kGuardDigits + extra, truncation_length(form.weight(), phase.b, digits)};
}

bool is_integer_shift(const Complex& s) {
    return s.im == 0 && mpfr_integer_p(s.re.backend().data());
}

// e(j/b) for j = 0..b-1.
std::vector<Complex> root_of_unity_table(std::int64_t b) {
    std::vector<Complex> w(static_cast<std::size_t>(b));
    for (std::int64_t j = 0; j < b; ++j) w[static_cast<std::size_t>(j)] = e_of(Real(j) / Real(b));
    return w;
}

Real real_from_mpz(const mpz_class& z) {
    Real r;
    mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

// One of the two n-sums: sum_n a_f(n) e(n*mult/b) (2pi n)^{-expo} Gamma(expo, 2pi n/b).
Complex twisted_sum(const HeckeEigenform& form, std::int64_t b, std::int64_t mult,
                    const Complex& expo, std::int64_t trunc,
                    const std::vector<Complex>& roots, const Real& tail_eps) {
    const Real two_pi = 2 * pi();
    const bool int_expo = is_integer_shift(expo);
    const long m_expo = int_expo ? expo.re.convert_to<long>() : 0;
    const Real log_two_pi = boost::multiprecision::log(two_pi);

    Complex sum(Real(0));
    Real last_mag = 0;
    for (std::int64_t n = 1; n <= trunc; ++n) {
        const mpz_class an = form.a(n);
        Real x = two_pi * n / b;
        Complex term;
        if (int_expo) {
            Real base = two_pi * n;
            Real p = boost::multiprecision::pow(base, static_cast<long>(-m_expo));
            term = Complex(real_from_mpz(an) * p * upper_incomplete_gamma_int(m_expo, x));
        } else {
            Real ln = log_two_pi + boost::multiprecision::log(Real(n));
            Complex npow = exp(Complex(-expo.re * ln, -expo.im * ln));
            term = Complex(real_from_mpz(an)) * npow * upper_incomplete_gamma(expo, x);
        }
        std::int64_t idx = (n % b) * (mult % b) % b;
        if (idx < 0) idx += b;
        sum += roots[static_cast<std::size_t>(idx)] * term;
        if (n > trunc - 3) last_mag = std::max(last_mag, abs(term));
    }
    if (last_mag > tail_eps) {
        std::ostringstream os;
        os << "evaluate: truncation fixed point did not settle; achieved bound ~ "
           << last_mag.convert_to<double>();
        throw std::runtime_error(os.str());
    }
    return sum;
}

}  // namespace

Complex evaluate(const HeckeEigenform& form, const ReducedPhase& phase, const Complex& s,
                 unsigned digits) {
    const int k = form.weight();
    EvalSetup setup = setup_for(form, phase, s, digits);
    form.extend(setup.trunc);  // outside the guard: coefficient work is exact
    PrecisionGuard guard(setup.working_digits);

    const Complex sw = Complex(to_working(s.re), to_working(s.im));
    const Complex nu = Complex(Real(k) / 2) + sw;
    const Complex k_minus_nu = Complex(Real(k)) - nu;
    const std::int64_t b = phase.b;
    const std::int64_t a_inv = mod_inverse(phase.a == 0 ? 1 : phase.a, b);

    auto roots = root_of_unity_table(b);
    Real tail_eps = boost::multiprecision::pow(Real(10), -static_cast<long>(digits) - 8);

    Complex s1 = twisted_sum(form, b, phase.a, nu, setup.trunc, roots, tail_eps);
    Complex s2 = twisted_sum(form, b, -a_inv, k_minus_nu, setup.trunc, roots, tail_eps);

    const Real two_pi = 2 * pi();
    Complex prefactor;
    if (is_integer_shift(sw)) {
        long m = nu.re.convert_to<long>();
        Real num = boost::multiprecision::pow(two_pi, m);
        Real fact = 1;
        for (long i = 2; i < m; ++i) fact *= i;
        prefactor = Complex(num / fact);
    } else {
        prefactor = pow_real_base(two_pi, nu) / gamma(nu);
    }

    Complex dual_scale = (b == 1) ? Complex(Real(1)) : pow_real_base(Real(b), k_minus_nu - nu);
    Complex value = prefactor * (s1 + Complex(Real(root_number_ik(k))) * dual_scale * s2);
    return value;
}

Complex evaluate(const LQuery& query) {
    return evaluate(*query.form, query.phase, query.s, query.digits);
}

Complex completed(const HeckeEigenform& form, const ReducedPhase& phase, const Complex& s,
                  unsigned digits) {
    Complex L = evaluate(form, phase, s, digits);
    PrecisionGuard guard(digits + kGuardDigits);
    const Complex sw = Complex(to_working(s.re), to_working(s.im));
    Complex half_k(Real(form.weight()) / 2);
    Complex gamma_factor = gamma(half_k + sw);
    Complex conductor = pow_real_base(Real(phase.b) / (2 * pi()), sw);
    return conductor * gamma_factor * L;
}

Complex completed(const LQuery& query) {
    return completed(*query.form, query.phase, query.s, query.digits);
}

ReducedPhase fe_dual_phase(const ReducedPhase& phase) {
    if (phase.trivial()) return phase;
    std::int64_t a_inv = mod_inverse(phase.a, phase.b);
    return reduce_phase(-a_inv, phase.b);
}

Real fe_residual(const HeckeEigenform& form, const ReducedPhase& phase, const Complex& s,
                 unsigned digits) {
    Complex lhs = completed(form, fe_dual_phase(phase), s, digits);
    Complex rhs = completed(form, phase, -s, digits);
    PrecisionGuard guard(digits + kGuardDigits);
    return abs(lhs - Complex(Real(root_number_ik(form.weight()))) * rhs);
}

}  // namespace ltwist
