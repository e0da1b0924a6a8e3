// Arbitrary-precision real/complex layer on top of MPFR.
//
// Real is a variable-precision mpfr_float.  Precision is managed through
// PrecisionGuard: every public operation of the library sets its working
// precision (requested digits + guard digits) on entry, and all temporaries
// created inside pick that precision up.  Complex is a plain re/im pair;
// its precision tag is the minimum of the component precisions.

#ifndef LTWIST_AP_HPP
#define LTWIST_AP_HPP

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ltwist {

using Real = boost::multiprecision::mpfr_float;

// Guard digits carried on top of every requested precision.
inline constexpr unsigned kGuardDigits = 25;

class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits)
        : saved_(Real::default_precision()) {
        Real::default_precision(std::max(digits, 15u));
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

// Re-round x to the current default precision (copies normally inherit the
// precision of their source, which may be lower than the working precision).
inline Real to_working(const Real& x) {
    Real r;
    mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

inline Real pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long r) : re(r), im(0) {}
    Complex(int r) : re(r), im(0) {}
    Complex(double r) : re(r), im(0) {}

    unsigned precision() const { return std::min(re.precision(), im.precision()); }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o);
};

inline Complex operator+(Complex a, const Complex& b) { a += b; return a; }
inline Complex operator-(Complex a, const Complex& b) { a -= b; return a; }
inline Complex operator*(Complex a, const Complex& b) { a *= b; return a; }
inline Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }

inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) {
    Real r;
    mpfr_hypot(r.backend().data(), z.re.backend().data(), z.im.backend().data(), MPFR_RNDN);
    return r;
}
inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

inline Complex& Complex::operator/=(const Complex& o) {
    Real d = norm(o);
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
}
inline Complex operator/(Complex a, const Complex& b) { a /= b; return a; }

inline Real arg(const Complex& z) {
    Real r;
    mpfr_atan2(r.backend().data(), z.im.backend().data(), z.re.backend().data(), MPFR_RNDN);
    return r;
}

inline Complex exp(const Complex& z) {
    Real m = boost::multiprecision::exp(z.re);
    return Complex(m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im));
}

inline Complex log(const Complex& z) {
    return Complex(boost::multiprecision::log(abs(z)), arg(z));
}

// z^w through exp(w log z); principal branch.
inline Complex pow(const Complex& z, const Complex& w) {
    if (w.im == 0 && w.re == 0) return Complex(Real(1));
    return exp(w * log(z));
}

// x^w for real x > 0.
inline Complex pow_real_base(const Real& x, const Complex& w) {
    if (x <= 0) throw std::domain_error("pow_real_base: base must be positive");
    Real lx = boost::multiprecision::log(x);
    return exp(Complex(w.re * lx, w.im * lx));
}

// Integer power by repeated squaring.
inline Complex pow_int(Complex z, long n) {
    if (n < 0) return Complex(Real(1)) / pow_int(std::move(z), -n);
    Complex r(Real(1));
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

// e(x) = exp(2 pi i x).
inline Complex e_of(const Real& x) {
    Real t = 2 * pi() * x;
    return Complex(boost::multiprecision::cos(t), boost::multiprecision::sin(t));
}

// i^k for even integer weight k; equals +1 or -1.
inline int root_number_ik(int k) {
    if (k % 2 != 0) throw std::invalid_argument("root_number_ik: weight must be even");
    return (k % 4 == 0) ? 1 : -1;
}

inline Complex i_unit() { return Complex(Real(0), Real(1)); }

inline std::string to_string(const Real& x, unsigned digits) {
    return x.str(digits);
}

}  // namespace ltwist

#endif
