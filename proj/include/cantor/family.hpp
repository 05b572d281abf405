#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cantor/xcomplex.hpp"

namespace cantor {

// One parameter a_i, stored as natural-log magnitude plus phase so magnitudes
// far below double range stay exact.
struct LogPolar {
    double log_mag = 0.0;       // natural log of |a|
    double phase = 0.0;         // in [0, 2*pi)

    XComplex value() const { return XComplex::from_log_polar(log_mag, phase); }
    double abs() const { return std::exp(log_mag); }
};

// The z^((-1)^(n-p) d_1) * prod (z^(D_i) - a_i^(D_i))^((-1)^(n-i-p)) family,
// with D_i = d_i + d_{i+1}.  p in {0,1}; degrees d_1..d_n; params a_1..a_{n-1}
// with 0 < |a_1| < ... < |a_{n-1}| < 1.
struct FamilySpec {
    int p = 1;
    std::vector<int> degrees;
    std::vector<LogPolar> params;

    int n() const { return static_cast<int>(degrees.size()); }
    int big_d(int i) const { return degrees[i - 1] + degrees[i]; }  // D_i, i in [1, n-1]
    int max_degree() const;
    double inv_degree_sum() const;                                  // sum 1/d_i
    int degree() const;                                             // sum d_i

    // Exponent of the leading z power.
    int lead_exponent() const { return parity_sign(n() - p) * degrees.front(); }
    // Sign (-1)^(n-i-p) of factor i, i in [1, n-1].
    int factor_sign(int i) const { return parity_sign(n() - i - p); }

    static int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }
};

// g_eta(z) = z^k + eta / z^l.
struct McMullenSpec {
    int k = 2;
    int l = 3;
    std::complex<double> eta{0.0, 0.0};
};

// Empty when the spec satisfies every structural invariant; otherwise one
// message per violated invariant, naming the offending values.
std::vector<std::string> validate(const FamilySpec& spec);

struct EvalInfo {
    bool near_singularity = false;  // within 1e-3 relative of a zero/pole factor
};

// Factor-by-factor evaluation in extended-exponent arithmetic.
XComplex eval(const FamilySpec& spec, std::complex<double> z, EvalInfo* info = nullptr);

// (-1)^p z f'(z)/f(z) = sum_i (-1)^(n-i) D_i z^(D_i)/(z^(D_i)-a_i^(D_i)) + (-1)^n d_1,
// each term formed from whichever of z/a_i, a_i/z has magnitude <= 1.
std::complex<double> eval_log_deriv(const FamilySpec& spec, std::complex<double> z);

// d/dz of eval_log_deriv, same ratio normalization (used by Newton refinement).
std::complex<double> eval_log_deriv_prime(const FamilySpec& spec, std::complex<double> z);

std::complex<double> mcmullen_eval(const McMullenSpec& spec, std::complex<double> z);

enum class BasinLabel { D0, DInfinity };

struct BasinImages {
    BasinLabel image_of_d0;
    BasinLabel image_of_dinf;
};

// The four (p, parity of n) cases for where the two simply connected Fatou
// components map.
BasinImages basin_combinatorics(int p, int n);

// The equivalent McMullen parameters for an n = 2 spec with p = 1:
// k = d_2, l = d_1, eta = -a_1^(d_1+d_2).
McMullenSpec mcmullen_of(const FamilySpec& spec);

}  // namespace cantor
