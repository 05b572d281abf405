#pragma once

#include <string>
#include <vector>

#include "cantor/family.hpp"

namespace cantor {

// Derived scale quantities behind a synthesized parameter set.  Everything is
// carried as a natural logarithm alongside the plain value; for large max
// degree the plain values underflow and the logs are the authority.
struct ParamBudget {
    int p = 1;
    double xi = 0.0;  // sum 1/d_i
    int K = 3;        // max d_i
    double log_s = 0.0, log_u = 0.0, log_v = 0.0;
    std::vector<double> log_a;         // log |a_i|, i = 1..n-1
    std::vector<double> bound_terms;   // candidate log upper bounds for s; min was taken

    double s() const { return std::exp(log_s); }
    double u() const { return std::exp(log_u); }
    double v() const { return std::exp(log_v); }
    // log of the critical localization radius factor u^(2/K)
    double log_eps() const { return 2.0 * log_u / K; }
};

// Budget with s = shrink * (the admissible upper bound) for the given degrees.
ParamBudget make_budget(int p, const std::vector<int>& degrees, double shrink);

// Budget from an explicit log s (used for audits of perturbed scales).
ParamBudget budget_from_log_s(int p, const std::vector<int>& degrees, double log_s);

// Spec whose parameter magnitudes follow the budget chain, phases all zero.
FamilySpec spec_from_budget(const std::vector<int>& degrees, const ParamBudget& budget);

struct SynthResult {
    FamilySpec spec;
    ParamBudget budget;
};

// Certified parameter synthesis.  shrink in (0, 1] moves strictly inside the
// admissible scale bound.
SynthResult synth(int p, const std::vector<int>& degrees, double shrink = 1.0);

// Equal-degree synthesis d_i = n+1 with |a_{n-i}| = (n/(n+1))^(i-1) s^i,
// valid for 0 < s <= 1/10; p = 1.
FamilySpec synth_uniform(int n, double s);

// Recover the budget implied by a spec's |a_{n-1}| (inverts the |a| chain's
// last link).  Used when only the spec is on hand, e.g. across a CLI pipe;
// audit_budget tells whether the rest of the chain is consistent.
ParamBudget budget_fit(const FamilySpec& spec);

struct AuditEntry {
    std::string name;
    double lhs_log = 0.0;
    double rhs_log = 0.0;
    double margin_log = 0.0;  // positive = inequality holds with that much slack
    bool pass = false;
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

// Log-space audit of the scale-bound inequality and every derived-budget
// inequality the construction relies on, including the parameter chain itself.
AuditReport audit_budget(const FamilySpec& spec, const ParamBudget& budget);

}  // namespace cantor
