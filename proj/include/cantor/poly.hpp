#pragma once

#include <complex>
#include <vector>

namespace cantor {

// Dense polynomial, coefficients in ascending order: p[k] multiplies z^k.
using Poly = std::vector<std::complex<double>>;

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, std::complex<double> c);
Poly poly_derivative(const Poly& a);
std::complex<double> poly_eval(const Poly& a, std::complex<double> z);

// Strips leading near-zero coefficients relative to the largest magnitude.
int poly_degree(const Poly& a, double rel_tol = 0.0);

// All complex roots by Aberth-Ehrlich simultaneous iteration.  Exact zero
// roots (trailing zero coefficients) are deflated first and returned as
// repeated zeros.  Intended for well-separated roots of modest degree.
std::vector<std::complex<double>> aberth_roots(Poly p, int max_iter = 400, double tol = 1e-13);

}  // namespace cantor
