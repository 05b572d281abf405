#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

#include "cantor/errors.hpp"

namespace cantor {

// Complex number with an extended power-of-two exponent:
//
//     value = (re_m + i*im_m) * 2^e2
//
// Normalized so that max(|re_m|, |im_m|) lies in [1/2, 1), or the value is
// exactly zero (0, 0, 0).  Products of many factors whose magnitudes are far
// below DBL_MIN (|a_i|^(d_i+d_{i+1}) routinely is) stay exact in the exponent
// and lose only mantissa precision.
struct XComplex {
    double re_m = 0.0;
    double im_m = 0.0;
    std::int64_t e2 = 0;

    XComplex() = default;
    XComplex(double re, double im, std::int64_t e) : re_m(re), im_m(im), e2(e) { normalize(); }
    explicit XComplex(std::complex<double> z) : re_m(z.real()), im_m(z.imag()), e2(0) { normalize(); }
    explicit XComplex(double x) : re_m(x), im_m(0.0), e2(0) { normalize(); }

    bool is_zero() const { return re_m == 0.0 && im_m == 0.0; }

    // Mantissa pair as a plain complex; arg(mantissa()) == arg(value).
    std::complex<double> mantissa() const { return {re_m, im_m}; }

    // Plain complex value; under/overflows when e2 is outside double range.
    std::complex<double> to_complex() const {
        return {std::ldexp(re_m, static_cast<int>(clamp_exp())), std::ldexp(im_m, static_cast<int>(clamp_exp()))};
    }

    double arg() const { return std::atan2(im_m, re_m); }

    // log |value|; safe for any exponent.
    double log_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return 0.5 * std::log(re_m * re_m + im_m * im_m) + static_cast<double>(e2) * kLn2;
    }

    XComplex operator-() const { return make_raw(-re_m, -im_m, e2); }

    void normalize() {
        double m = std::max(std::fabs(re_m), std::fabs(im_m));
        if (m == 0.0) {
            re_m = im_m = 0.0;
            e2 = 0;
            return;
        }
        int k = 0;
        std::frexp(m, &k);  // m = f * 2^k, f in [1/2, 1)
        if (k != 0) {
            re_m = std::ldexp(re_m, -k);
            im_m = std::ldexp(im_m, -k);
            e2 += k;
        }
    }

    static XComplex zero() { return XComplex(); }
    static XComplex one() { return XComplex(1.0); }

    // From polar data with a natural-log magnitude (may be far below double range).
    static XComplex from_log_polar(double log_mag, double phase) {
        double le = log_mag / kLn2;
        double ef = std::floor(le);
        double scale = std::exp2(le - ef);  // in [1, 2)
        return XComplex(scale * std::cos(phase), scale * std::sin(phase), static_cast<std::int64_t>(ef));
    }

    static constexpr double kLn2 = 0.6931471805599453094;

  private:
    std::int64_t clamp_exp() const {
        // ldexp takes int; saturate so extreme exponents flush to 0/inf predictably.
        if (e2 > 3000) return 3000;
        if (e2 < -3000) return -3000;
        return e2;
    }
    static XComplex make_raw(double re, double im, std::int64_t e) {
        XComplex x;
        x.re_m = re;
        x.im_m = im;
        x.e2 = e;
        return x;
    }
    friend XComplex xc_add(const XComplex&, const XComplex&);
    friend XComplex xc_mul(const XComplex&, const XComplex&);
    friend XComplex xc_div(const XComplex&, const XComplex&);
};

inline XComplex xc_add(const XComplex& a, const XComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::int64_t d = a.e2 - b.e2;
    // Beyond ~2^80 the smaller operand is below one ulp of the larger.
    if (d > 80) return a;
    if (d < -80) return b;
    const XComplex *hi = &a, *lo = &b;
    if (d < 0) {
        hi = &b;
        lo = &a;
        d = -d;
    }
    double s = std::ldexp(1.0, -static_cast<int>(d));
    XComplex r(hi->re_m + lo->re_m * s, hi->im_m + lo->im_m * s, hi->e2);
    return r;
}

inline XComplex xc_sub(const XComplex& a, const XComplex& b) { return xc_add(a, -b); }

inline XComplex xc_mul(const XComplex& a, const XComplex& b) {
    if (a.is_zero() || b.is_zero()) return XComplex::zero();
    double re = a.re_m * b.re_m - a.im_m * b.im_m;
    double im = a.re_m * b.im_m + a.im_m * b.re_m;
    return XComplex(re, im, a.e2 + b.e2);
}

inline XComplex xc_div(const XComplex& a, const XComplex& b) {
    if (b.is_zero()) throw DomainError("xc_div: division by exact zero");
    if (a.is_zero()) return XComplex::zero();
    // Mantissas are normalized, so the plain complex quotient is well scaled.
    std::complex<double> q = std::complex<double>(a.re_m, a.im_m) / std::complex<double>(b.re_m, b.im_m);
    return XComplex(q.real(), q.imag(), a.e2 - b.e2);
}

// a^k for signed integer k, |k| <= 2^16, by binary exponentiation.
inline XComplex xc_int_pow(XComplex a, long k) {
    if (k < -(1L << 16) || k > (1L << 16)) throw DomainError("xc_int_pow: exponent out of range");
    if (k == 0) return XComplex::one();
    bool inv = k < 0;
    unsigned long e = inv ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    if (a.is_zero()) {
        if (inv) throw DomainError("xc_int_pow: zero to negative power");
        return XComplex::zero();
    }
    XComplex acc = XComplex::one();
    while (e > 0) {
        if (e & 1UL) acc = xc_mul(acc, a);
        a = xc_mul(a, a);
        e >>= 1UL;
    }
    return inv ? xc_div(XComplex::one(), acc) : acc;
}

enum class XcOp { add, sub, mul, div, int_pow };

// Dispatcher form; for int_pow the exponent rides in `b` as a real integer.
inline XComplex xc_arith(const XComplex& a, const XComplex& b, XcOp op) {
    switch (op) {
        case XcOp::add: return xc_add(a, b);
        case XcOp::sub: return xc_sub(a, b);
        case XcOp::mul: return xc_mul(a, b);
        case XcOp::div: return xc_div(a, b);
        case XcOp::int_pow: return xc_int_pow(a, static_cast<long>(b.to_complex().real()));
    }
    return XComplex::zero();
}

}  // namespace cantor
