#include "cantor/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

void check_degrees(int p, const std::vector<int>& degrees) {
    if (p != 0 && p != 1) throw DomainError("synth: p must be 0 or 1");
    if (degrees.size() < 2) throw DomainError("synth: need n >= 2 degrees");
    for (int d : degrees)
        if (d < 2) throw DomainError("synth: degrees must be >= 2");
    double xi = 0.0;
    for (int d : degrees) xi += 1.0 / d;
    if (!(xi < 1.0)) {
        std::ostringstream os;
        os << "synth: sum 1/d_i = " << xi << " violates the hyperbolicity budget (< 1)";
        throw DomainError(os.str());
    }
}

std::vector<double> scale_bound_terms(int p, const std::vector<int>& degrees) {
    double xi = 0.0;
    int K = 0;
    for (int d : degrees) {
        xi += 1.0 / d;
        K = std::max(K, d);
    }
    const double lnK = std::log(static_cast<double>(K));
    const int dn = degrees.back();
    std::vector<double> terms;
    if (p == 1) {
        terms.push_back(-5.0 * xi / (1.0 - xi) * lnK);
        terms.push_back((5.0 - 2.0 * K) * lnK);
    } else {
        terms.push_back(-kLn2 / ((1.0 - xi) * (1.0 + 1.0 / dn - 2.0 * xi / 3.0)));
        terms.push_back(-3.0 / (1.0 - xi) * std::log(4.0 * static_cast<double>(K)));
        terms.push_back(-2.0 * K * lnK / (1.0 + 1.0 / dn + 2.0 * (1.0 - xi) / 3.0));
    }
    return terms;
}

}  // namespace

ParamBudget budget_from_log_s(int p, const std::vector<int>& degrees, double log_s) {
    check_degrees(p, degrees);
    ParamBudget b;
    b.p = p;
    b.K = 0;
    b.xi = 0.0;
    for (int d : degrees) {
        b.xi += 1.0 / d;
        b.K = std::max(b.K, d);
    }
    const double lnK = std::log(static_cast<double>(b.K));
    const int n = static_cast<int>(degrees.size());
    const int dn = degrees.back();
    b.log_s = log_s;
    if (p == 1) {
        b.log_u = log_s - 5.0 * lnK;
        b.log_v = log_s - 2.0 * lnK;
    } else {
        b.log_u = (1.0 + 1.0 / dn + 2.0 * (1.0 - b.xi) / 3.0) * log_s;
        b.log_v = (1.0 / dn + (1.0 - b.xi) / 3.0) * log_s;
    }
    b.bound_terms = scale_bound_terms(p, degrees);
    b.log_a.assign(n - 1, 0.0);
    b.log_a[n - 2] = b.log_v / dn;
    for (int i = n - 3; i >= 0; --i)
        b.log_a[i] = b.log_u / degrees[i + 1] + b.log_a[i + 1];
    return b;
}

ParamBudget make_budget(int p, const std::vector<int>& degrees, double shrink) {
    if (!(shrink > 0.0 && shrink <= 1.0)) throw DomainError("synth: shrink must be in (0, 1]");
    std::vector<double> terms = scale_bound_terms(p, degrees);
    double log_bound = *std::min_element(terms.begin(), terms.end());
    return budget_from_log_s(p, degrees, log_bound + std::log(shrink));
}

FamilySpec spec_from_budget(const std::vector<int>& degrees, const ParamBudget& budget) {
    FamilySpec spec;
    spec.p = budget.p;
    spec.degrees = degrees;
    spec.params.resize(degrees.size() - 1);
    for (std::size_t i = 0; i < spec.params.size(); ++i)
        spec.params[i] = LogPolar{budget.log_a[i], 0.0};
    return spec;
}

SynthResult synth(int p, const std::vector<int>& degrees, double shrink) {
    ParamBudget budget = make_budget(p, degrees, shrink);
    return {spec_from_budget(degrees, budget), budget};
}

FamilySpec synth_uniform(int n, double s) {
    if (n < 2) throw DomainError("synth_uniform: n must be >= 2");
    if (!(s > 0.0 && s <= 0.1)) throw DomainError("synth_uniform: s must be in (0, 1/10]");
    FamilySpec spec;
    spec.p = 1;
    spec.degrees.assign(n, n + 1);
    spec.params.resize(n - 1);
    const double log_ratio = std::log(static_cast<double>(n) / (n + 1));
    const double log_s = std::log(s);
    // |a_{n-i}| = (n/(n+1))^(i-1) s^i for i = 1..n-1
    for (int i = 1; i <= n - 1; ++i)
        spec.params[n - i - 1] = LogPolar{(i - 1) * log_ratio + i * log_s, 0.0};
    return spec;
}

ParamBudget budget_fit(const FamilySpec& spec) {
    check_degrees(spec.p, spec.degrees);
    const int dn = spec.degrees.back();
    const double log_v = dn * spec.params.back().log_mag;
    double xi = spec.inv_degree_sum();
    const double lnK = std::log(static_cast<double>(spec.max_degree()));
    double log_s;
    if (spec.p == 1) {
        log_s = log_v + 2.0 * lnK;
    } else {
        log_s = log_v / (1.0 / dn + (1.0 - xi) / 3.0);
    }
    return budget_from_log_s(spec.p, spec.degrees, log_s);
}

AuditReport audit_budget(const FamilySpec& spec, const ParamBudget& budget) {
    AuditReport rep;
    const int n = spec.n();
    const int K = budget.K;
    const double lnK = std::log(static_cast<double>(K));
    const int d1 = spec.degrees.front();
    const int dn = spec.degrees.back();
    const double ls = budget.log_s, lu = budget.log_u, lv = budget.log_v;
    const double la1 = spec.params.front().log_mag;

    auto push = [&rep](const std::string& name, double lhs, double rhs, bool strict) {
        AuditEntry e;
        e.name = name;
        e.lhs_log = lhs;
        e.rhs_log = rhs;
        e.margin_log = rhs - lhs;
        // non-strict inequalities sit exactly on their boundary for equal-degree
        // chains, so allow rounding noise there
        double guard = 1e-12 * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
        e.pass = strict ? (e.margin_log > 0.0) : (e.margin_log >= -guard);
        rep.entries.push_back(e);
    };

    // Admissible scale range (boundary itself is admissible, hence non-strict).
    double log_bound = *std::min_element(budget.bound_terms.begin(), budget.bound_terms.end());
    push("scale-bound", ls, log_bound, false);

    // u^(2/K) <= K^-4
    push("eps-bound", 2.0 * lu / K, -4.0 * lnK, false);

    // |a_j/a_i| <= u^((i-j)/K) for j < i (equality exactly at equal degrees).
    for (int i = 2; i <= n - 1; ++i) {
        for (int j = 1; j < i; ++j) {
            std::ostringstream os;
            os << "param-ratio-" << j << "-" << i;
            double lhs = spec.params[j - 1].log_mag - spec.params[i - 1].log_mag;
            double rhs = static_cast<double>(i - j) / K * lu;
            push(os.str(), lhs, rhs, false);
        }
    }

    // Spec magnitudes must follow the budget chain.
    for (int i = 1; i <= n - 1; ++i) {
        std::ostringstream os;
        os << "param-chain-" << i;
        double diff = std::fabs(spec.params[i - 1].log_mag - budget.log_a[i - 1]);
        double tol = 1e-9 * std::max(1.0, std::fabs(budget.log_a[i - 1]));
        push(os.str(), diff, tol, false);
    }

    if (budget.p == 1) {
        // (s/|a_1|)^d1 < s u/(2v)
        push("inner-trap-small", d1 * (ls - la1), ls + lu - lv - kLn2, true);
        // (|a_1|/s)^d1 v/2 > K
        push("inner-trap-large", lnK, d1 * (la1 - ls) + lv - kLn2, true);
    } else {
        push("ring-small-clears-trap", kLn2 + lnK + lu - lv, ls, true);
        push("ring-large-clears-trap", (kLn2 - ls) / dn, -kLn2 - lnK - lv, true);
        push("inner-trap-small", d1 * (ls - la1), ls + lv - kLn2, true);
        push("inner-trap-small-aux", ls + lv - kLn2, lu / 2.0 - kLn2, true);
        push("inner-trap-large", (kLn2 - ls) / dn, d1 * (la1 - ls) + lu - lv - kLn2, true);
    }
    return rep;
}

}  // namespace cantor
