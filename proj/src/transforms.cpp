#include "ltwist/transforms.hpp"

#include "ltwist/lfunction.hpp"
#include "ltwist/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace ltwist {

namespace {

// ---------------------------------------------------------------------------
// Gauss-Legendre rules at the current working precision.

struct GLRule {
    std::vector<Real> nodes;    // on (-1, 1)
    std::vector<Real> weights;
};

// Nodes are roots of P_n found by Newton from the Chebyshev seed; each
// iteration roughly doubles the correct digits, so iterate until the step
// falls below the working epsilon.
GLRule compute_gauss_legendre(int n) {
    GLRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const long prec = static_cast<long>(Real::default_precision());
    Real eps = boost::multiprecision::pow(Real(10), -prec + 2);
    Real p = pi();
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real x = boost::multiprecision::cos(p * (4 * i + 3) / (4 * n + 2));
        Real pd = 0;
        for (int iter = 0; iter < 200; ++iter) {
            Real p0 = 1, p1 = x;
            for (int j = 2; j <= n; ++j) {
                Real p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pd = n * (x * p1 - p0) / (x * x - 1);
            Real dx = p1 / pd;
            x -= dx;
            if (boost::multiprecision::abs(dx) < eps) break;
        }
        Real w = 2 / ((1 - x * x) * pd * pd);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0;
    return rule;
}

const GLRule& gauss_legendre(int n) {
    static std::map<std::pair<int, unsigned>, GLRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(n, Real::default_precision());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, compute_gauss_legendre(n)).first;
    return it->second;
}

// Integral of f over the segment Im w in [t0, t1] on the vertical line.
Complex panel(const std::function<Complex(const Complex&)>& f, const Real& c, const Real& t0,
              const Real& t1, int order) {
    const GLRule& rule = gauss_legendre(order);
    Real mid = (t0 + t1) / 2, half = (t1 - t0) / 2;
    Complex acc(Real(0));
    for (int i = 0; i < order; ++i) {
        Real t = mid + half * rule.nodes[static_cast<std::size_t>(i)];
        Complex v = f(Complex(c, t));
        acc += Complex(rule.weights[static_cast<std::size_t>(i)]) * v;
    }
    return Complex(half) * acc;
}

// ---------------------------------------------------------------------------
// Decay envelopes.  All estimates live in double precision; they only steer
// the truncation point and the reported error bound.
//
// On the line Re w = c with t = Im w, Stirling gives
//   |Gamma(w) e^{i pi w/2}|               ~ sqrt(2pi) |t|^{c-1/2} e^{-pi(t+|t|)/2},
//   |Gamma(k/2-s-w) / Gamma(k/2+s+w)|     ~ |t|^{-2c-2 Re s},
// so every oscillatory tag decays exponentially for t > 0 and polynomially,
// with the exponent below, for t < 0.  The oscillatory phase on the
// polynomial side is -t log(|t|/(xeff e)), whose derivative log(|t|/xeff)
// funds the first-derivative-test credit used in neg_tail.

constexpr double kEnvelopeFudge = 3.0;

struct Envelope {
    double amplitude = 0;
    double exponent = 0;   // polynomial exponent on the slow (t < 0) side
    double xeff = 0;       // oscillation scale; 0 disables the credit
    bool two_sided_exponential = false;
    double pos_rate = M_PI;  // e^{-rate t} damping on the t > 0 side
};

Envelope make_envelope(IntegrandTag id, double c, double x, double re_s) {
    const double root_2pi = std::sqrt(2 * M_PI);
    Envelope env;
    switch (id) {
        case IntegrandTag::mellin_exp:
            env.amplitude = kEnvelopeFudge * root_2pi * std::pow(2 * M_PI * x, -c);
            env.exponent = c - 0.5;
            env.xeff = 2 * M_PI * x;
            break;
        case IntegrandTag::gamma_mellin:
            env.amplitude = kEnvelopeFudge * root_2pi * std::pow(x, -c);
            env.exponent = c - 0.5;
            env.two_sided_exponential = true;
            env.pos_rate = M_PI / 2;
            break;
        case IntegrandTag::I_integrand:
        case IntegrandTag::J_integrand:
        case IntegrandTag::Q0_integrand:
            env.amplitude = kEnvelopeFudge * root_2pi * std::pow(x, c);
            env.exponent = -c - 0.5 - 2 * re_s;
            env.xeff = x;
            break;
    }
    return env;
}

double neg_tail(const Envelope& env, double T) {
    double head = env.amplitude * std::pow(T, env.exponent);
    if (env.two_sided_exponential) return head * std::exp(-env.pos_rate * T) / env.pos_rate;
    double bound = std::numeric_limits<double>::infinity();
    if (env.exponent < -1) bound = head * T / (-env.exponent - 1);
    if (env.xeff > 0 && T > 3 * env.xeff)
        bound = std::min(bound, 4 * head / std::log(T / env.xeff));
    return bound;
}

double pos_tail(const Envelope& env, double T) {
    double head = env.amplitude * std::pow(T, std::max(env.exponent, 0.0));
    return head * std::exp(-env.pos_rate * T) / env.pos_rate;
}

double grow_until(const std::function<double(double)>& tail, double T0, double budget,
                  double cap) {
    double T = T0;
    while (tail(T) > budget) {
        T *= 2;
        if (T > cap) return -1;
    }
    return T;
}

void check_pole_distance(IntegrandTag id, double c, int weight) {
    double d = std::abs(c - std::round(c));
    bool near_gamma_pole = (c < 0.5 && d < 1e-6);
    bool near_ratio_pole = false;
    if (id == IntegrandTag::J_integrand || id == IntegrandTag::Q0_integrand)
        near_ratio_pole = (c > weight / 2.0 - 0.5 && d < 1e-6);
    if (near_gamma_pole || near_ratio_pole) {
        std::ostringstream os;
        os << "vertical_line_integral: abscissa " << c << " is within 1e-6 of an integrand pole";
        throw std::invalid_argument(os.str());
    }
}

Complex half_exp_phase(const Complex& w, const Real& half_pi) {
    // e^{i pi w / 2}
    return exp(Complex(-half_pi * w.im, half_pi * w.re));
}

// Gamma(z + it) along one vertical line.  Panels near the real axis use the
// reflection/shift algorithm; beyond a precision-derived |t| threshold the
// Stirling correction series (coefficients computed once per line) is
// cheaper by the cost of the recurrence shifts.
class LineGamma {
public:
    explicit LineGamma(Complex z) : z_(std::move(z)) {
        const double digits = static_cast<double>(Real::default_precision());
        const double az = std::hypot(z_.re.convert_to<double>(), z_.im.convert_to<double>());
        threshold_ = std::max({80.0, az * std::pow(10.0, (digits + 5) / (kOrder + 1)),
                               std::pow(10.0, (digits + 20) / kOrder)});
    }

    Complex operator()(const Real& t) const {
        double td = t.convert_to<double>();
        if (std::fabs(td) < threshold_) return gamma(z_ + Complex(Real(0), t));
        const std::vector<Complex>& a = coeffs(td > 0 ? 1 : -1);
        Real u = 1 / boost::multiprecision::abs(t);
        Complex corr = a[kOrder];
        for (int m = kOrder - 1; m >= 1; --m) corr = corr * Complex(u) + a[static_cast<std::size_t>(m)];
        corr = corr * Complex(u) + Complex(Real(1));
        return stirling_main_term(z_, t) * corr;
    }

private:
    static constexpr int kOrder = 48;

    const std::vector<Complex>& coeffs(int sgn) const {
        std::vector<Complex>& slot = (sgn > 0) ? pos_ : neg_;
        if (slot.empty()) slot = stirling_expansion_coeffs(z_, sgn, kOrder);
        return slot;
    }

    Complex z_;
    double threshold_;
    mutable std::vector<Complex> pos_, neg_;
};

struct PanelSum {
    Complex value;
    Real error;
};

PanelSum sum_panels(const std::function<Complex(const Complex&)>& f, const Real& c, double t_lo,
                    double t_hi, int base_order, const Real& panel_tol) {
    PanelSum out{Complex(Real(0)), Real(0)};
    int order = std::clamp(base_order, 4, 48);
    long lo = static_cast<long>(std::floor(t_lo));
    long hi = static_cast<long>(std::ceil(t_hi));
    for (long m = lo; m < hi; ++m) {
        Real t0(m), t1(m + 1);
        Complex coarse = panel(f, c, t0, t1, order);
        Complex fine = panel(f, c, t0, t1, 2 * order);
        Real err = abs(fine - coarse);
        if (err > panel_tol && 2 * order < 96) {
            Complex finest = panel(f, c, t0, t1, std::min(4 * order, 96));
            err = abs(finest - fine);
            fine = finest;
        }
        out.value += fine;
        out.error += err;
    }
    return out;
}

}  // namespace

QuadratureResult integrate_vertical_line(const std::function<Complex(const Complex&)>& f,
                                         const Real& abscissa, const Real& truncation,
                                         int nodes_per_unit, const Real& tol) {
    if (truncation <= 0)
        throw std::invalid_argument("integrate_vertical_line: truncation must be positive");
    double T = truncation.convert_to<double>();
    Real panel_tol = tol / (4 * truncation);
    PanelSum s = sum_panels(f, abscissa, -T, T, nodes_per_unit, panel_tol);
    Real two_pi = 2 * pi();
    return QuadratureResult{s.value / Complex(two_pi), s.error / two_pi};
}

QuadratureResult vertical_line_integral(const ContourSpec& spec, const TransformParams& params,
                                        const Real& tol, unsigned digits) {
    PrecisionGuard guard(digits + kGuardDigits);
    const Real c = to_working(spec.abscissa);
    const Real x = to_working(params.x);
    const Complex s = Complex(to_working(params.s.re), to_working(params.s.im));
    const int k = params.weight;
    if (x <= 0) throw std::domain_error("vertical_line_integral: x must be positive");

    const double cd = c.convert_to<double>();
    const double xd = x.convert_to<double>();
    const double re_s = s.re.convert_to<double>();
    check_pole_distance(spec.id, cd, k);

    Envelope env = make_envelope(spec.id, cd, xd, re_s);
    if (!env.two_sided_exponential) {
        // With the oscillatory credit the tail still converges at exponent -1;
        // without it we need strictly less than -1.
        double limit = (env.xeff > 0) ? -1.0 + 1e-9 : -1.0;
        if (env.exponent >= limit) {
            std::ostringstream os;
            os << "vertical_line_integral: integrand decays like |t|^(" << env.exponent
               << ") on the slow side of Re w = " << cd << "; the integral does not converge";
            throw std::invalid_argument(os.str());
        }
    }

    const Real half_pi = pi() / 2;
    const Real half_k = Real(k) / 2;
    auto lg_w = std::make_shared<LineGamma>(Complex(c));
    std::function<Complex(const Complex&)> f;
    switch (spec.id) {
        case IntegrandTag::mellin_exp: {
            Real two_pi_x = 2 * pi() * x;
            f = [=](const Complex& w) {
                return (*lg_w)(w.im) * half_exp_phase(w, half_pi) * pow_real_base(two_pi_x, -w);
            };
            break;
        }
        case IntegrandTag::gamma_mellin:
            f = [=](const Complex& w) { return (*lg_w)(w.im) * pow_real_base(x, -w); };
            break;
        case IntegrandTag::J_integrand:
        case IntegrandTag::Q0_integrand: {
            // Gamma(k/2 - w) = Gamma((k/2 - c) + i(-t)),  Gamma(k/2 + w) at +t.
            auto lg_num = std::make_shared<LineGamma>(Complex(half_k - c));
            auto lg_den = std::make_shared<LineGamma>(Complex(half_k + c));
            f = [=](const Complex& w) {
                return (*lg_w)(w.im) * half_exp_phase(w, half_pi) * pow_real_base(x, w) *
                       (*lg_num)(-w.im) / (*lg_den)(w.im);
            };
            break;
        }
        case IntegrandTag::I_integrand: {
            auto lg_num = std::make_shared<LineGamma>(Complex(half_k - c) - s);
            auto lg_den = std::make_shared<LineGamma>(Complex(half_k + c) + s);
            f = [=](const Complex& w) {
                return (*lg_w)(w.im) * half_exp_phase(w, half_pi) * pow_real_base(x, w) *
                       (*lg_num)(-w.im) / (*lg_den)(w.im);
            };
            break;
        }
    }

    const double tol_d = tol.convert_to<double>();
    double t_neg, t_pos;
    if (spec.truncation > 0) {
        t_neg = t_pos = spec.truncation.convert_to<double>();
    } else {
        double T0 = std::max({32.0, 4.0 * k, 8 * env.xeff, 4 * std::fabs(cd)});
        t_neg = grow_until([&](double T) { return neg_tail(env, T); }, T0, tol_d / 4, 4e6);
        t_pos = grow_until([&](double T) { return pos_tail(env, T); }, 32.0, tol_d / 4, 4e6);
        if (t_neg < 0 || t_pos < 0) {
            std::ostringstream os;
            os << "vertical_line_integral: tolerance " << tol_d
               << " unachievable; tail estimate ~ " << neg_tail(env, 4e6)
               << " at the truncation cap";
            throw std::runtime_error(os.str());
        }
    }

    Real panel_tol = tol / Real(4 * (t_neg + t_pos));
    PanelSum neg = sum_panels(f, c, -t_neg, 0, spec.nodes_per_unit, panel_tol);
    PanelSum pos = sum_panels(f, c, 0, t_pos, spec.nodes_per_unit, panel_tol);

    Real two_pi = 2 * pi();
    QuadratureResult out;
    out.value = (neg.value + pos.value) / Complex(two_pi);
    out.error_estimate = (neg.error + pos.error) / two_pi + Real(neg_tail(env, t_neg)) +
                Real(pos_tail(env, t_pos));
    return out;
}

Real mellin_exp_residual(const Real& x, int shift_depth, const Real& tol, unsigned digits) {
    if (shift_depth < 0) throw std::invalid_argument("mellin_exp_residual: shift depth must be >= 0");
    PrecisionGuard guard(digits + kGuardDigits);
    Real xw = to_working(x);

    Complex lhs = e_of(xw);
    Complex z(Real(0), 2 * pi() * xw);  // 2 pi i x
    Complex term(Real(1));              // z^n / n!
    for (int n = 0; n <= shift_depth; ++n) {
        lhs -= term;
        term *= z / Complex(Real(n + 1));
    }

    ContourSpec spec;
    spec.abscissa = -Real(shift_depth) - Real(1) / 2;
    spec.id = IntegrandTag::mellin_exp;
    TransformParams params;
    params.x = xw;
    QuadratureResult q = vertical_line_integral(spec, params, tol, digits);
    return abs(lhs - q.value);
}

Complex residue_value(int n, const Real& x, const Complex& s, const HeckeEigenform& form,
                      const ReducedPhase& phase, unsigned digits) {
    if (n < 0) throw std::invalid_argument("residue_value: n must be >= 0");
    Complex L = evaluate(form, phase, s - Complex(Real(n)), digits);
    PrecisionGuard guard(digits + kGuardDigits);
    Real fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    Complex in = pow_int(i_unit(), n);
    return in * pow_real_base(to_working(x), Complex(Real(-n))) * L / Complex(fact);
}

Complex residue_circle_quadrature(int n, const Real& x, const Complex& s,
                                  const HeckeEigenform& form, const ReducedPhase& phase,
                                  unsigned digits, int nodes) {
    if (n < 0) throw std::invalid_argument("residue_circle_quadrature: n must be >= 0");
    if (nodes < 8) throw std::invalid_argument("residue_circle_quadrature: need at least 8 nodes");
    PrecisionGuard guard(digits + kGuardDigits);
    const Real xw = to_working(x);
    const Real half_pi = pi() / 2;
    const Real radius = Real(1) / 4;
    const Complex sw = Complex(to_working(s.re), to_working(s.im));

    Complex acc(Real(0));
    for (int j = 0; j < nodes; ++j) {
        Complex dir = e_of(Real(j) / nodes);
        Complex w = Complex(Real(-n)) + Complex(radius) * dir;
        Complex L = evaluate(form, phase, sw + w, digits);
        Complex val = gamma(w) * half_exp_phase(w, half_pi) * pow_real_base(xw, w) * L;
        acc += val * Complex(radius) * dir;
    }
    return acc / Complex(Real(nodes));
}

namespace {

void check_transform_weight(int weight, const char* where) {
    if (weight < 12 || weight % 2 != 0) {
        std::ostringstream os;
        os << where << ": weight must be an even integer >= 12, got " << weight;
        throw std::invalid_argument(os.str());
    }
}

// (k/2-1+j)! / (j! (k/2-1-j)!)
Real j_coefficient(int k, int j) {
    mpz_class num = 1;
    for (int i = k / 2 - j; i <= k / 2 - 1 + j; ++i) num *= i;
    mpz_class den;
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(j));
    num /= den;
    Real r;
    mpfr_set_z(r.backend().data(), num.get_mpz_t(), MPFR_RNDN);
    return r;
}

}  // namespace

Complex J_closed_form(const Real& x, int weight, unsigned digits) {
    check_transform_weight(weight, "J_closed_form");
    if (x <= 0) throw std::domain_error("J_closed_form: x must be positive");
    PrecisionGuard guard(digits + kGuardDigits);
    const Real xw = to_working(x);
    const Complex ix(Real(0), xw);
    const Complex em = exp(Complex(Real(0), -xw));  // e^{-ix}
    const Complex ik(Real(root_number_ik(weight)));

    Complex sum(Real(0));
    for (int j = 0; j <= weight / 2 - 1; ++j) {
        Complex sign(Real((j % 2 == 0) ? 1 : -1));
        sum += Complex(j_coefficient(weight, j)) * pow_int(ix, -j) * (sign + ik * em);
    }
    return sum;
}

Complex J_numeric(const Real& x, int weight, const Real& tol, unsigned digits, double abscissa) {
    check_transform_weight(weight, "J_numeric");
    ContourSpec spec;
    spec.abscissa = (abscissa < 0) ? Real(weight) / 2 - 1 : Real(abscissa);
    spec.id = IntegrandTag::J_integrand;
    TransformParams params;
    params.x = x;
    params.weight = weight;
    return vertical_line_integral(spec, params, tol, digits).value;
}

Complex I_numeric(const Real& x, const Complex& s, int weight, const Real& tol, unsigned digits) {
    check_transform_weight(weight, "I_numeric");
    double re = s.re.convert_to<double>(), im = s.im.convert_to<double>();
    if (!(re > 19.0 / 16 && re < 11.0 / 8 && im > -1 && im < 1)) {
        std::ostringstream os;
        os << "I_numeric: s = (" << re << ", " << im
           << ") outside the convergence strip 19/16 < Re s < 11/8, |Im s| < 1";
        throw std::invalid_argument(os.str());
    }
    ContourSpec spec;
    spec.abscissa = -Real(15) / 8;
    spec.id = IntegrandTag::I_integrand;
    TransformParams params;
    params.x = x;
    params.s = s;
    params.weight = weight;
    return vertical_line_integral(spec, params, tol, digits).value;
}

Complex Q_closed_form(std::int64_t n, std::int64_t p, std::int64_t q, std::int64_t r, int weight,
                      unsigned digits) {
    check_transform_weight(weight, "Q_closed_form");
    if (n <= 0 || p <= 0 || q <= 0 || r <= 0)
        throw std::invalid_argument("Q_closed_form: n, p, q, r must be positive");
    PrecisionGuard guard(digits + kGuardDigits);
    const Real ratio = Real(q) * n / (Real(p) * r);   // q n / (p r)
    const Real xw = 2 * pi() * ratio;
    const int half = weight / 2;
    const Complex ik(Real(root_number_ik(weight)));
    const Complex phase = e_of(-ratio);  // e(-qn/(pr))

    // - i (pr/(2 pi q n)) * (k/2)(k/2 - 1)
    Complex lead = Complex(Real(0), -Real(half) * (half - 1) / xw);

    Complex sum(Real(0));
    const Complex ix(Real(0), xw);
    for (int j = 1; j <= half - 1; ++j) {
        Complex sign(Real((j % 2 == 0) ? 1 : -1));
        sum += Complex(j_coefficient(weight, j)) * pow_int(ix, -j) * (sign + ik * phase);
    }
    return lead + sum;
}

Complex Q_via_Q0identity(std::int64_t n, std::int64_t p, std::int64_t q, std::int64_t r, int weight,
                         const Real& tol, unsigned digits, bool use_closed_J) {
    check_transform_weight(weight, "Q_via_Q0identity");
    if (n <= 0 || p <= 0 || q <= 0 || r <= 0)
        throw std::invalid_argument("Q_via_Q0identity: n, p, q, r must be positive");
    PrecisionGuard guard(digits + kGuardDigits);
    const Real ratio = Real(q) * n / (Real(p) * r);
    const Real xw = 2 * pi() * ratio;
    const int half = weight / 2;

    Complex integral = use_closed_J ? J_closed_form(xw, weight, digits)
                                    : J_numeric(xw, weight, tol, digits);
    // (pr/(2 pi i n q)) (k/2)(k/2-1)  =  -i (k/2)(k/2-1) / x
    Complex pole_term = Complex(Real(0), -Real(half) * (half - 1) / xw);
    Complex ik(Real(root_number_ik(weight)));
    return integral + pole_term - Complex(Real(1)) - ik * e_of(-ratio);
}

}  // namespace ltwist
