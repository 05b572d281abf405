#pragma once

#include <complex>
#include <vector>

#include "cantor/certify.hpp"
#include "cantor/dynamics.hpp"
#include "cantor/family.hpp"
#include "cantor/xcomplex.hpp"

namespace cantor {

// P_lambda(z) = ((1/n)((1+z)^n - 1) + (lambda z)^(m+n)) / (1 - (lambda z)^(m+n)),
// a degree m+n perturbation of ((1+z)^n - 1)/n with a multiplier-one fixed
// point at 0.
struct PLambdaSpec {
    int m = 3;
    int n = 2;
    std::complex<double> lambda{1e-10, 0.0};

    double r0() const { return std::pow(static_cast<double>(n) / m, 1.0 / (m + n)); }
    // certification hypothesis |lambda| <= 1/(2^(10m) n^3)
    double lambda_bound() const { return 1.0 / (std::pow(2.0, 10.0 * m) * n * n * n); }
};

// P_n(z) = A_n (n+1) z^((-1)^(n+1)(n+1)) / (n z^(n+1) + 1)
//              * prod (z^(2n+2) - b_i^(2n+2))^((-1)^(i-1)) + B_n,
// normalized by (A_n, B_n) so that 1 is a fixed point with multiplier one.
struct PnSpec {
    int n = 2;
    std::vector<LogPolar> b;  // decreasing magnitudes 1 > |b_1| > ... > |b_{n-1}| > 0
    std::complex<double> A{1.0, 0.0};
    std::complex<double> B{0.0, 0.0};
    std::complex<double> C{0.0, 0.0};
};

struct ABC {
    std::complex<double> A, B, C;
};

// C_n = sum (-1)^(i-1) b_i^(2n+2)/(1 - b_i^(2n+2)); B_n and A_n from it.
ABC compute_ABC(int n, const std::vector<std::complex<double>>& b);

// |b_i| = s^i with zero phases, derived A/B/C attached.
PnSpec make_pn(int n, double s);
PnSpec make_pn(int n, std::vector<LogPolar> b);

XComplex plambda_eval_x(const PLambdaSpec& spec, std::complex<double> z);
std::complex<double> plambda_eval(const PLambdaSpec& spec, std::complex<double> z);

XComplex pn_eval_x(const PnSpec& spec, std::complex<double> z);
std::complex<double> pn_eval(const PnSpec& spec, std::complex<double> z);

struct FixedPointResiduals {
    double value_residual = 0.0;  // |P(z*) - z*|
    double deriv_residual = 0.0;  // |P'(z*) - expected multiplier|
};

// Derivative by Richardson-extrapolated central differences (steps h, h/2).
FixedPointResiduals parabolic_fixed_check(const MapFunc& f, std::complex<double> fixed_point,
                                          std::complex<double> expected_multiplier = {1.0, 0.0});

// Boundary-sampling trap verification with angular exclusion neighborhoods
// around the parabolic contact points (strict outside, non-strict inside).
std::vector<CheckResult> trap_checks_parabolic(const PLambdaSpec& spec,
                                               std::size_t samples = kDefaultSamples,
                                               double exclusion = 1e-3);
std::vector<CheckResult> trap_checks_parabolic(const PnSpec& spec,
                                               std::size_t samples = kDefaultSamples,
                                               double exclusion = 1e-3);

// Critical clusters: predicted ring positions, Newton-refined roots of the
// critical equation, localization bound per cluster.
struct ParabolicCluster {
    std::string name;
    double bound = 0.0;  // allowed |refined - predicted|
    std::vector<std::complex<double>> predicted;
    std::vector<std::complex<double>> refined;
    std::vector<double> residuals;
    std::vector<double> distances;
    bool bound_ok = false;
};

// For P_lambda: the n-1 roots inside D(-1, |lambda|) (counted by winding and
// refined), and the m+n ring roots near radius r0/|lambda| within 2(m+n)/m.
std::vector<ParabolicCluster> parabolic_critical(const PLambdaSpec& spec);
// For P_n: 2n+2 roots per ring i, each within s^(n+1/2) |b_i|.
std::vector<ParabolicCluster> parabolic_critical(const PnSpec& spec);

CertificationReport certify_parabolic(const PLambdaSpec& spec, std::size_t samples = kDefaultSamples);
CertificationReport certify_parabolic(const PnSpec& spec, std::size_t samples = kDefaultSamples);

// Alternating parity sum that the ring analysis needs to vanish; returns the
// exact integer value of the left side (0 for all 1 <= i <= n-1).
int sum_of_check(int n, int i);

RegionMap region_map(const PLambdaSpec& spec);
RegionMap region_map(const PnSpec& spec);

MapFunc plambda_map(const PLambdaSpec& spec);
MapFunc pn_map(const PnSpec& spec);

}  // namespace cantor
