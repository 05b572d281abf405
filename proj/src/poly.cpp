#include "cantor/poly.hpp"

#include <algorithm>
#include <cmath>

#include "cantor/errors.hpp"

namespace cantor {

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, {0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), {0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return c;
}

Poly poly_scale(const Poly& a, std::complex<double> c) {
    Poly r = a;
    for (auto& x : r) x *= c;
    return r;
}

Poly poly_derivative(const Poly& a) {
    if (a.size() <= 1) return {};
    Poly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * static_cast<double>(i);
    return d;
}

std::complex<double> poly_eval(const Poly& a, std::complex<double> z) {
    std::complex<double> r(0.0, 0.0);
    for (std::size_t i = a.size(); i-- > 0;) r = r * z + a[i];
    return r;
}

int poly_degree(const Poly& a, double rel_tol) {
    double big = 0.0;
    for (const auto& c : a) big = std::max(big, std::abs(c));
    if (big == 0.0) return -1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (std::abs(a[i]) > rel_tol * big) return static_cast<int>(i);
    return -1;
}

std::vector<std::complex<double>> aberth_roots(Poly p, int max_iter, double tol) {
    std::vector<std::complex<double>> roots;
    int deg = poly_degree(p, 0.0);
    if (deg <= 0) return roots;
    p.resize(static_cast<std::size_t>(deg) + 1);

    // Deflate exact roots at the origin.
    std::size_t t = 0;
    while (t < p.size() && p[t] == std::complex<double>(0.0, 0.0)) ++t;
    for (std::size_t i = 0; i < t; ++i) roots.emplace_back(0.0, 0.0);
    if (t > 0) p.erase(p.begin(), p.begin() + static_cast<long>(t));
    deg = static_cast<int>(p.size()) - 1;
    if (deg <= 0) return roots;

    if (!std::isfinite(std::abs(p.back())) || !std::isfinite(std::abs(p.front())))
        throw ScaleError("aberth_roots: non-finite coefficients, rescale first");

    Poly dp = poly_derivative(p);

    // Initial guesses on a circle sized by the geometric mean of the
    // root-product magnitude, with an irrational angular offset.
    double r0 = std::pow(std::abs(p.front() / p.back()), 1.0 / deg);
    if (!(r0 > 0.0) || !std::isfinite(r0)) r0 = 1.0;
    std::vector<std::complex<double>> z(static_cast<std::size_t>(deg));
    for (int j = 0; j < deg; ++j) {
        double th = 2.0 * 3.14159265358979323846 * (j + 0.35) / deg + 0.5;
        z[static_cast<std::size_t>(j)] = r0 * std::complex<double>(std::cos(th), std::sin(th));
    }

    for (int it = 0; it < max_iter; ++it) {
        double worst = 0.0;
        for (int j = 0; j < deg; ++j) {
            std::complex<double> zj = z[static_cast<std::size_t>(j)];
            std::complex<double> pv = poly_eval(p, zj);
            std::complex<double> dv = poly_eval(dp, zj);
            if (dv == std::complex<double>(0.0, 0.0)) dv = std::complex<double>(tol, tol);
            std::complex<double> w = pv / dv;
            std::complex<double> s(0.0, 0.0);
            for (int k = 0; k < deg; ++k)
                if (k != j) s += 1.0 / (zj - z[static_cast<std::size_t>(k)]);
            std::complex<double> corr = w / (1.0 - w * s);
            z[static_cast<std::size_t>(j)] = zj - corr;
            worst = std::max(worst, std::abs(corr) / (1.0 + std::abs(zj)));
        }
        if (worst < tol) break;
    }
    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

}  // namespace cantor
