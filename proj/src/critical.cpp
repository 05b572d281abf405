#include "cantor/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cantor/errors.hpp"
#include "cantor/sampling.hpp"
#include "cantor/util.hpp"

namespace cantor {

std::vector<CriticalCluster> predicted_critical(const FamilySpec& spec, const ParamBudget& budget) {
    const int n = spec.n();
    const double eps = std::exp(budget.log_eps());
    std::vector<CriticalCluster> clusters;
    clusters.reserve(static_cast<std::size_t>(n - 1));
    for (int i = 1; i <= n - 1; ++i) {
        CriticalCluster c;
        c.ring_index = i;
        const int di = spec.big_d(i);
        c.r_i = std::pow(static_cast<double>(spec.degrees[i - 1]) / spec.degrees[i], 1.0 / di);
        const LogPolar& a = spec.params[i - 1];
        c.bound = eps * a.abs();
        c.bound_floor = 256.0 * std::numeric_limits<double>::epsilon() * c.r_i * a.abs();
        std::complex<double> ai = a.value().to_complex();
        for (int j = 1; j <= di; ++j) {
            double th = kPi * (2.0 * j - 1.0) / di;
            c.predicted.push_back(c.r_i * ai * std::complex<double>(std::cos(th), std::sin(th)));
        }
        clusters.push_back(std::move(c));
    }
    return clusters;
}

std::vector<std::string> refine_critical_soft(const FamilySpec& spec,
                                              std::vector<CriticalCluster>& clusters) {
    std::vector<std::string> all_failures;
    for (auto& c : clusters) {
        const double amag = spec.params[c.ring_index - 1].abs();
        const double lo = 0.25 * std::min(c.r_i, 1.0) * amag;
        const double hi = 4.0 * std::max(c.r_i, 1.0) * amag;
        c.refined.assign(c.predicted.size(), {0.0, 0.0});
        c.residuals.assign(c.predicted.size(), 0.0);
        c.distances.assign(c.predicted.size(), 0.0);
        std::vector<std::string> failures(c.predicted.size());
        parallel_for(c.predicted.size(), [&](std::size_t j) {
            std::complex<double> z = c.predicted[j];
            double res = std::abs(eval_log_deriv(spec, z));
            bool done = false;
            for (int it = 0; it < 100; ++it) {
                std::complex<double> num = eval_log_deriv(spec, z);
                res = std::abs(num);
                if (res < 1e-13) {
                    done = true;
                    break;
                }
                std::complex<double> den = eval_log_deriv_prime(spec, z);
                if (den == std::complex<double>(0.0, 0.0)) break;
                std::complex<double> next = z - num / den;
                double r = std::abs(next);
                if (r < lo || r > hi) break;  // left the cluster annulus
                if (next == z) {
                    done = true;
                    break;
                }
                z = next;
            }
            res = std::abs(eval_log_deriv(spec, z));
            if (!done && res > 1e-9) {
                std::ostringstream os;
                os << "refine: Newton did not converge from seed (" << c.predicted[j].real() << ", "
                   << c.predicted[j].imag() << ") of ring " << c.ring_index << ", residual " << res;
                failures[j] = os.str();
                z = c.predicted[j];
                res = std::abs(eval_log_deriv(spec, z));
            }
            c.refined[j] = z;
            c.residuals[j] = res;
            c.distances[j] = std::abs(z - c.predicted[j]);
        });
        for (const auto& f : failures)
            if (!f.empty()) all_failures.push_back(f);

        c.bound_ok = true;
        for (double d : c.distances)
            if (!(d < c.bound + c.bound_floor)) c.bound_ok = false;
        c.distinct_ok = true;
        for (std::size_t j = 0; j < c.refined.size(); ++j)
            for (std::size_t k = j + 1; k < c.refined.size(); ++k)
                if (!(std::abs(c.refined[j] - c.refined[k]) > c.bound)) c.distinct_ok = false;
        if (!failures.empty() &&
            std::any_of(failures.begin(), failures.end(), [](const std::string& s) { return !s.empty(); }))
            c.bound_ok = false;
    }
    return all_failures;
}

void refine_critical(const FamilySpec& spec, std::vector<CriticalCluster>& clusters) {
    auto failures = refine_critical_soft(spec, clusters);
    if (!failures.empty()) throw ConvergenceError(failures.front());
}

std::vector<CriticalCluster> refined_critical(const FamilySpec& spec, const ParamBudget& budget) {
    auto clusters = predicted_critical(spec, budget);
    refine_critical(spec, clusters);
    return clusters;
}

RationalParts rational_parts(const FamilySpec& spec) {
    int total = 0;
    for (int i = 1; i <= spec.n() - 1; ++i) total += spec.big_d(i);
    if (total + spec.degrees.front() > 60)
        throw ScaleError("rational_parts: expanded degree above the coefficient-growth guard");

    const int lead = spec.lead_exponent();
    Poly num, den;
    num.assign(static_cast<std::size_t>(std::max(lead, 0)) + 1, {0.0, 0.0});
    num.back() = {1.0, 0.0};
    den.assign(static_cast<std::size_t>(std::max(-lead, 0)) + 1, {0.0, 0.0});
    den.back() = {1.0, 0.0};

    for (int i = 1; i <= spec.n() - 1; ++i) {
        const int di = spec.big_d(i);
        XComplex aD = xc_int_pow(spec.params[i - 1].value(), di);
        std::complex<double> c = aD.to_complex();
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw ScaleError("rational_parts: a_i^D_i not representable, use the log-space path");
        Poly factor(static_cast<std::size_t>(di) + 1, {0.0, 0.0});
        factor[0] = -c;
        factor.back() = {1.0, 0.0};
        if (spec.factor_sign(i) > 0)
            num = poly_mul(num, factor);
        else
            den = poly_mul(den, factor);
    }
    return {num, den};
}

CriticalEnumeration oracle_all_critical(const FamilySpec& spec) {
    const int n = spec.n();
    int total = 0;
    for (int i = 1; i <= n - 1; ++i) total += spec.big_d(i);
    if (total > 60) throw ScaleError("oracle_all_critical: degree above the coefficient-growth guard");

    // Numerator of (-1)^p z f'/f * prod_i (z^(D_i) - a_i^(D_i)):
    //   (-1)^n d_1 * prod_i F_i + sum_i (-1)^(n-i) D_i z^(D_i) prod_{j != i} F_j.
    // Scale z = c zeta with c = |a_{n-1}| to keep coefficients conditioned.
    const double c = spec.params.back().abs();
    std::vector<Poly> factors;
    for (int i = 1; i <= n - 1; ++i) {
        const int di = spec.big_d(i);
        // (c zeta)^D - a^D, divided by c^D: zeta^D - (a/c)^D
        double lr = di * (spec.params[i - 1].log_mag - std::log(c));
        double ph = di * spec.params[i - 1].phase;
        std::complex<double> scaled = std::exp(lr) * std::complex<double>(std::cos(ph), std::sin(ph));
        Poly f(static_cast<std::size_t>(di) + 1, {0.0, 0.0});
        f[0] = -scaled;
        f.back() = {1.0, 0.0};
        factors.push_back(std::move(f));
    }
    Poly acc = {std::complex<double>(FamilySpec::parity_sign(n) * spec.degrees.front(), 0.0)};
    for (const auto& f : factors) acc = poly_mul(acc, f);
    for (int i = 1; i <= n - 1; ++i) {
        const int di = spec.big_d(i);
        Poly term(static_cast<std::size_t>(di) + 1, {0.0, 0.0});
        term.back() = std::complex<double>(FamilySpec::parity_sign(n - i) * di, 0.0);
        for (int j = 1; j <= n - 1; ++j)
            if (j != i) term = poly_mul(term, factors[static_cast<std::size_t>(j - 1)]);
        acc = poly_add(acc, term);
    }

    CriticalEnumeration e;
    e.multiplicity_at_zero = spec.degrees.front() - 1;
    e.multiplicity_at_infinity = spec.degrees.back() - 1;
    for (auto z : aberth_roots(acc)) e.free_roots.push_back(z * c);
    return e;
}

}  // namespace cantor
