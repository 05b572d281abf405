#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cantor/errors.hpp"
#include "cantor/family.hpp"
#include "cantor/params.hpp"

using namespace cantor;

namespace {
const double ln4 = std::log(4.0);
}

TEST_CASE("equal-degree synthesis hits the frozen scale chain") {
    auto [spec, budget] = synth(1, {4, 4, 4}, 1.0);
    CHECK(budget.xi == doctest::Approx(0.75));
    CHECK(budget.K == 4);
    // s = min(4^-15, 4^-3) = 4^-15; u = 4^-20; v = 4^-17
    CHECK(budget.log_s == doctest::Approx(-15.0 * ln4).epsilon(1e-14));
    CHECK(budget.log_u == doctest::Approx(-20.0 * ln4).epsilon(1e-14));
    CHECK(budget.log_v == doctest::Approx(-17.0 * ln4).epsilon(1e-14));
    // |a_2| = 4^(-17/4); |a_1| = 4^-5 |a_2|
    CHECK(spec.params[1].log_mag == doctest::Approx(-17.0 / 4.0 * ln4).epsilon(1e-14));
    CHECK(spec.params[0].log_mag == doctest::Approx((-5.0 - 17.0 / 4.0) * ln4).epsilon(1e-14));
    CHECK(validate(spec).empty());
}

TEST_CASE("n=2 synthesis degenerates to a single magnitude") {
    auto [spec, budget] = synth(1, {2, 3}, 1.0);
    REQUIRE(spec.params.size() == 1);
    CHECK(spec.params[0].log_mag == doctest::Approx(budget.log_v / 3.0).epsilon(1e-14));
    CHECK_NOTHROW(mcmullen_of(spec));
}

TEST_CASE("p=0 scale bound is the minimum of three independently computed terms") {
    auto [spec, budget] = synth(0, {4, 4, 4}, 1.0);
    (void)spec;
    const double xi = 0.75;
    const int K = 4, dn = 4;
    double t1 = -std::log(2.0) / ((1.0 - xi) * (1.0 + 1.0 / dn - 2.0 * xi / 3.0));
    double t2 = -3.0 / (1.0 - xi) * std::log(4.0 * K);
    double t3 = -2.0 * K * std::log(static_cast<double>(K)) / (1.0 + 1.0 / dn + 2.0 * (1.0 - xi) / 3.0);
    REQUIRE(budget.bound_terms.size() == 3);
    CHECK(budget.bound_terms[0] == doctest::Approx(t1).epsilon(1e-13));
    CHECK(budget.bound_terms[1] == doctest::Approx(t2).epsilon(1e-13));
    CHECK(budget.bound_terms[2] == doctest::Approx(t3).epsilon(1e-13));
    CHECK(budget.log_s == doctest::Approx(std::min({t1, t2, t3})).epsilon(1e-13));
}

TEST_CASE("uniform synthesis formulas") {
    FamilySpec s2 = synth_uniform(2, 0.1);
    CHECK(s2.degrees == std::vector<int>{3, 3});
    CHECK(std::exp(s2.params[0].log_mag) == doctest::Approx(0.1).epsilon(1e-14));

    FamilySpec s3 = synth_uniform(3, 0.1);
    CHECK(std::exp(s3.params[1].log_mag) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(std::exp(s3.params[0].log_mag) == doctest::Approx(0.0075).epsilon(1e-14));

    FamilySpec s4 = synth_uniform(4, 0.1);
    for (std::size_t i = 0; i + 1 < s4.params.size(); ++i)
        CHECK(s4.params[i].log_mag < s4.params[i + 1].log_mag);
    CHECK(s4.params.back().log_mag < 0.0);

    CHECK_THROWS_AS(synth_uniform(3, 0.2), DomainError);
    CHECK_THROWS_AS(synth(1, {3, 3, 3}, 1.0), DomainError);
    CHECK_THROWS_AS(synth(1, {4, 4, 4}, 1.5), DomainError);
}

TEST_CASE("audit confirms the eps inequality the localization uses") {
    auto [spec, budget] = synth(1, {4, 4, 4}, 1.0);
    AuditReport rep = audit_budget(spec, budget);
    CHECK(rep.all_pass());
    bool found = false;
    for (const auto& e : rep.entries) {
        if (e.name == "eps-bound") {
            found = true;
            CHECK(e.lhs_log == doctest::Approx(0.5 * budget.log_u));
            CHECK(e.rhs_log == doctest::Approx(-4.0 * std::log(4.0)));
            CHECK(e.pass);
        }
        if (e.name.rfind("param-ratio-", 0) == 0) CHECK(e.pass);
    }
    CHECK(found);
}

TEST_CASE("inflating the scale tenfold breaks the audit") {
    std::vector<int> degrees{4, 4, 4};
    ParamBudget good = make_budget(1, degrees, 1.0);
    ParamBudget inflated = budget_from_log_s(1, degrees, good.log_s + std::log(10.0));
    FamilySpec spec = spec_from_budget(degrees, inflated);
    AuditReport rep = audit_budget(spec, inflated);
    CHECK(!rep.all_pass());
    int failures = 0;
    for (const auto& e : rep.entries)
        if (!e.pass) {
            ++failures;
            CHECK(e.margin_log < 0.0);
        }
    CHECK(failures >= 1);
}

TEST_CASE("synthesized budgets audit clean across the advertised range") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> deg(2, 12);
    int tuples_checked = 0;
    for (int n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 40; ++rep) {
            std::vector<int> degrees;
            double xi = 0.0;
            for (int i = 0; i < n; ++i) {
                int d = deg(rng);
                degrees.push_back(d);
                xi += 1.0 / d;
            }
            if (xi >= 1.0) continue;
            for (int p : {0, 1}) {
                auto [spec, budget] = synth(p, degrees, 1.0);
                CHECK(validate(spec).empty());
                AuditReport audit = audit_budget(spec, budget);
                if (!audit.all_pass()) {
                    CAPTURE(p);
                    CAPTURE(n);
                    for (const auto& e : audit.entries)
                        if (!e.pass) MESSAGE(e.name, " margin ", e.margin_log);
                }
                CHECK(audit.all_pass());
            }
            ++tuples_checked;
        }
    }
    CHECK(tuples_checked > 60);
}

TEST_CASE("log-space scales reproduce plain arithmetic when it does not underflow") {
    auto [spec, budget] = synth(1, {3, 4, 5}, 1.0);
    (void)spec;
    double xi = 1.0 / 3 + 1.0 / 4 + 1.0 / 5;
    double K = 5;
    double s_plain = std::min(std::pow(K, -5.0 * xi / (1.0 - xi)), std::pow(K, 5.0 - 2.0 * K));
    CHECK(budget.s() == doctest::Approx(s_plain).epsilon(1e-12));
    CHECK(budget.u() == doctest::Approx(s_plain * std::pow(K, -5.0)).epsilon(1e-12));
    CHECK(budget.v() == doctest::Approx(s_plain * std::pow(K, -2.0)).epsilon(1e-12));
}

TEST_CASE("budget_fit inverts synthesis") {
    for (int p : {0, 1}) {
        auto [spec, budget] = synth(p, {4, 5, 6}, 0.7);
        ParamBudget fit = budget_fit(spec);
        CHECK(fit.log_s == doctest::Approx(budget.log_s).epsilon(1e-12));
        CHECK(fit.log_u == doctest::Approx(budget.log_u).epsilon(1e-12));
        for (std::size_t i = 0; i < fit.log_a.size(); ++i)
            CHECK(fit.log_a[i] == doctest::Approx(budget.log_a[i]).epsilon(1e-12));
    }
}

TEST_CASE("elementary bound oracle: power growth inequalities") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> ndist(2, 12);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double guard = 1.0 + 1e-15;
    for (int trial = 0; trial < 10000; ++trial) {
        int n = ndist(rng);
        double eps = u01(rng) / n;
        if (eps <= 0.0) continue;
        double grow = std::pow(1.0 + eps, n) - 1.0;
        CHECK(n * eps < grow * guard);
        CHECK(grow < 3.0 * n * eps * guard);
        double decay = 1.0 - std::pow(1.0 - eps, n);
        CHECK(n * eps / 3.0 < decay * guard);
        CHECK(decay < n * eps * guard);
    }
}

TEST_CASE("elementary bound oracle: nearby points have nearby powers") {
    std::mt19937_64 rng(124);
    std::uniform_int_distribution<int> ndist(2, 12);
    std::uniform_real_distribution<double> u01(0.0, 1.0), ang(0.0, 2.0 * 3.14159265358979);
    const double guard = 1.0 + 1e-15;
    for (int trial = 0; trial < 10000; ++trial) {
        int n = ndist(rng);
        double eps = 0.499 * u01(rng) + 1e-6;
        std::complex<double> a = std::polar(0.1 + 3.0 * u01(rng), ang(rng));
        std::complex<double> z = a * (1.0 + std::polar(eps * u01(rng), ang(rng)));
        double lhs = std::abs(std::pow(z, n) - std::pow(a, n));
        double rhs = (std::pow(1.0 + eps, n) - 1.0) * std::pow(std::abs(a), n);
        CHECK(lhs <= rhs * guard);
    }
}

TEST_CASE("elementary bound oracle: n-th root proximity") {
    std::mt19937_64 rng(125);
    std::uniform_int_distribution<int> ndist(2, 12);
    std::uniform_real_distribution<double> u01(0.0, 1.0), ang(0.0, 2.0 * 3.14159265358979);
    const double guard = 1.0 + 1e-15;
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (int trial = 0; trial < 10000; ++trial) {
        int n = ndist(rng);
        double eps = 0.499 * u01(rng) + 1e-6;
        std::complex<double> a = std::polar(0.1 + 3.0 * u01(rng), ang(rng));
        // sample z from the hypothesis set z^n = a^n (1 + r e^(i t)), r <= eps
        std::complex<double> an = std::pow(a, n) * (1.0 + std::polar(eps * u01(rng), ang(rng)));
        std::complex<double> z = std::pow(an, 1.0 / n);
        CHECK(std::pow(std::abs(a / z), n) < (1.0 + 2.0 * eps) * guard);
        double best = 1e300;
        for (int j = 0; j < n; ++j)
            best = std::min(best, std::abs(z - a * std::polar(1.0, two_pi * j / n)));
        CHECK(best < eps * std::abs(a) * guard);
    }
}
