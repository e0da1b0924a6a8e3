#include "ltwist/reciprocity.hpp"

#include "ltwist/modarith.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ltwist {

void validate_triple(std::int64_t p, std::int64_t q, std::int64_t r, bool allow_unit_r) {
    auto reject = [](const std::string& msg) { throw std::invalid_argument("validate_triple: " + msg); };
    if (!is_odd_prime(p)) reject("p = " + std::to_string(p) + " is not an odd prime");
    if (!is_odd_prime(q)) reject("q = " + std::to_string(q) + " is not an odd prime");
    if (r == 1) {
        if (!allow_unit_r) reject("r = 1 is only valid in corollary mode");
    } else if (!is_odd_prime(r)) {
        reject("r = " + std::to_string(r) + " is not an odd prime");
    }
    if (p == q || p == r || q == r) reject("p, q, r must be distinct");
}

Complex c_f(const HeckeEigenform& form, const Complex& s, std::int64_t q, unsigned digits) {
    PrecisionGuard guard(digits + kGuardDigits);
    const Complex sw = Complex(to_working(s.re), to_working(s.im));
    Real aq;
    mpfr_set_z(aq.backend().data(), form.a(q).get_mpz_t(), MPFR_RNDN);
    // lambda_f(q) q^{1/2-s} = a_f(q) q^{1 - k/2 - s}
    Complex expo = Complex(Real(1) - Real(form.weight()) / 2) - sw;
    Complex first = Complex(aq) * pow_real_base(Real(q), expo);
    Complex second = pow_real_base(Real(q), Complex(Real(-2)) * sw);
    return first - second - Complex(Real(1));
}

Complex modular_symbol_moment(const HeckeEigenform& form, std::int64_t a, std::int64_t b,
                              std::int64_t m, const Complex& s, unsigned digits) {
    if (m < 1) throw std::invalid_argument("modular_symbol_moment: modulus must be positive");
    if (m == 1) return evaluate(form, ReducedPhase{}, s, digits);
    std::int64_t a_mod = ((a % m) + m) % m;
    if (a_mod == 0 || std::gcd(a_mod, m) != 1)
        throw std::invalid_argument("modular_symbol_moment: twist not invertible mod " +
                                    std::to_string(m));
    std::int64_t inv = mod_inverse(a_mod, m);
    std::int64_t b_mod = ((b % m) + m) % m;
    return evaluate(form, reduce_phase(inv * b_mod, m), s, digits);
}

Complex moment_via_characters(const HeckeEigenform& form, std::int64_t p, std::int64_t r,
                              std::int64_t q, const Complex& s, unsigned digits) {
    if (!is_odd_prime(q))
        throw std::invalid_argument("moment_via_characters: q must be an odd prime");
    if (q > 101)
        throw std::invalid_argument(
            "moment_via_characters: q > 101 refused; the decomposition costs phi(q) L-values");
    std::int64_t p_mod = ((p % q) + q) % q, r_mod = ((r % q) + q) % q;
    if (p_mod == 0 || r_mod == 0)
        throw std::invalid_argument("moment_via_characters: p and r must be coprime to q");

    PrecisionGuard guard(digits + kGuardDigits);
    const Complex sw = Complex(to_working(s.re), to_working(s.im));
    CharacterGroup group(q);

    std::vector<Complex> L_m(static_cast<std::size_t>(q));
    for (std::int64_t m = 1; m < q; ++m)
        L_m[static_cast<std::size_t>(m)] = evaluate(form, reduce_phase(m, q), sw, digits);

    Complex acc(Real(0));
    for (std::int64_t t = 1; t < q - 1; ++t) {  // every non-principal character mod q is primitive
        Complex tau = gauss_sum(group.character(t), digits);
        Complex twisted(Real(0));
        for (std::int64_t m = 1; m < q; ++m)
            twisted += group.value(t, m) * L_m[static_cast<std::size_t>(m)];
        Complex L_chi_bar = twisted / tau;
        acc += tau * L_chi_bar * group.value(t, p_mod) * conj(group.value(t, r_mod));
    }

    acc += c_f(form, sw, q, digits) * evaluate(form, ReducedPhase{}, sw, digits);
    return acc / Complex(Real(q - 1));
}

namespace {

// Gamma(k/2+j) / (j! Gamma(k/2-j)) as an exact integer ratio.
Real theorem_coefficient(int k, int j) {
    mpz_class num = 1;
    for (int i = k / 2 - j; i <= k / 2 + j - 1; ++i) num *= i;
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(j));
    mpq_class ratio(num, fact);
    ratio.canonicalize();
    Real out;
    mpfr_set_q(out.backend().data(), ratio.get_mpq_t(), MPFR_RNDN);
    return out;
}

double accuracy_budget(int l_value_count, unsigned digits) {
    double per_value = std::pow(10.0, -(static_cast<double>(digits) - 5.0));
    if (per_value == 0) per_value = 1e-300;
    return l_value_count * per_value;
}

}  // namespace

VerificationReport verify_theorem(const HeckeEigenform& form, std::int64_t p, std::int64_t q,
                                  std::int64_t r, unsigned digits) {
    validate_triple(p, q, r, false);
    auto start = std::chrono::steady_clock::now();
    const int k = form.weight();

    VerificationReport report;
    report.mode = "theorem";
    report.weight = k;
    report.p = p;
    report.q = q;
    report.r = r;
    report.digits = digits;

    Complex zero;
    Complex lhs = modular_symbol_moment(form, p, r, q, zero, digits) -
                  modular_symbol_moment(form, -q, r, p, zero, digits) -
                  modular_symbol_moment(form, -p, q, r, zero, digits);

    PrecisionGuard guard(digits + kGuardDigits);
    const Complex ik(Real(root_number_ik(k)));
    const Complex ix(Real(0), 2 * pi() * q / (Real(p) * r));  // 2 pi i q / (p r)

    Complex rhs(Real(0));
    for (int j = 1; j <= k / 2 - 1; ++j) {
        Complex shift{Real(j)};
        Complex L_r = modular_symbol_moment(form, -p, q, r, shift, digits);
        Complex L_p = modular_symbol_moment(form, r, q, p, shift, digits);
        Complex sign(Real((j % 2 == 0) ? 1 : -1));
        Complex term =
            Complex(theorem_coefficient(k, j)) * pow_int(ix, -j) * (L_r + sign * ik * L_p);
        rhs += term;
        report.terms.push_back(SideTerm{j, term});
    }

    report.lhs = lhs;
    report.rhs = rhs;
    report.residual = abs(lhs - rhs);
    report.error_budget = accuracy_budget(3 + 2 * (k / 2 - 1), digits);
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return report;
}

VerificationReport verify_corollary(const HeckeEigenform& form, std::int64_t p, std::int64_t q,
                                    unsigned digits) {
    validate_triple(p, q, 1, true);
    auto start = std::chrono::steady_clock::now();
    const int k = form.weight();

    VerificationReport report;
    report.mode = "corollary";
    report.weight = k;
    report.p = p;
    report.q = q;
    report.r = 1;
    report.digits = digits;

    Complex zero;
    Complex lhs = modular_symbol_moment(form, p, 1, q, zero, digits) -
                  modular_symbol_moment(form, -q, 1, p, zero, digits);

    PrecisionGuard guard(digits + kGuardDigits);
    const Complex ik(Real(root_number_ik(k)));
    const Complex ix(Real(0), 2 * pi() * q / Real(p));  // 2 pi i q / p

    Complex rhs = evaluate(form, ReducedPhase{}, zero, digits);
    for (int j = 1; j <= k / 2 - 1; ++j) {
        Complex shift{Real(j)};
        Complex L_triv = evaluate(form, ReducedPhase{}, shift, digits);
        Complex L_p = modular_symbol_moment(form, 1, q, p, shift, digits);
        Complex sign(Real((j % 2 == 0) ? 1 : -1));
        Complex term =
            Complex(theorem_coefficient(k, j)) * pow_int(ix, -j) * (L_triv + sign * ik * L_p);
        rhs += term;
        report.terms.push_back(SideTerm{j, term});
    }

    report.lhs = lhs;
    report.rhs = rhs;
    report.residual = abs(lhs - rhs);
    report.error_budget = accuracy_budget(3 + 2 * (k / 2 - 1), digits);
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return report;
}

namespace {

std::string encode(const Real& x, unsigned digits) { return x.str(digits + 12); }

nlohmann::json encode(const Complex& z, unsigned digits) {
    return {{"re", encode(z.re, digits)}, {"im", encode(z.im, digits)}};
}

Real decode_real(const nlohmann::json& j) { return Real(j.get<std::string>()); }

Complex decode_complex(const nlohmann::json& j) {
    return Complex(decode_real(j.at("re")), decode_real(j.at("im")));
}

}  // namespace

nlohmann::json report_to_json(const VerificationReport& report) {
    nlohmann::json terms = nlohmann::json::array();
    for (const SideTerm& t : report.terms)
        terms.push_back({{"j", t.j}, {"value", encode(t.value, report.digits)}});
    return {
        {"schema_version", report.schema_version},
        {"inputs",
         {{"mode", report.mode},
          {"weight", report.weight},
          {"p", report.p},
          {"q", report.q},
          {"r", report.r},
          {"digits", report.digits}}},
        {"lhs", encode(report.lhs, report.digits)},
        {"rhs", encode(report.rhs, report.digits)},
        {"terms", terms},
        {"residual", encode(report.residual, report.digits)},
        {"error_budget", report.error_budget},
        {"wall_ms", report.wall_ms},
    };
}

VerificationReport report_from_json(const nlohmann::json& j) {
    VerificationReport report;
    report.schema_version = j.at("schema_version").get<int>();
    if (report.schema_version != 1)
        throw std::invalid_argument("report_from_json: unknown schema version " +
                                    std::to_string(report.schema_version));
    const nlohmann::json& in = j.at("inputs");
    report.mode = in.at("mode").get<std::string>();
    report.weight = in.at("weight").get<int>();
    report.p = in.at("p").get<std::int64_t>();
    report.q = in.at("q").get<std::int64_t>();
    report.r = in.at("r").get<std::int64_t>();
    report.digits = in.at("digits").get<unsigned>();
    PrecisionGuard guard(report.digits + kGuardDigits);
    report.lhs = decode_complex(j.at("lhs"));
    report.rhs = decode_complex(j.at("rhs"));
    for (const auto& t : j.at("terms"))
        report.terms.push_back(SideTerm{t.at("j").get<int>(), decode_complex(t.at("value"))});
    report.residual = decode_real(j.at("residual"));
    report.error_budget = j.at("error_budget").get<double>();
    report.wall_ms = j.at("wall_ms").get<double>();
    return report;
}

}  // namespace ltwist
