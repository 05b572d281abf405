#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantor/critical.hpp"
#include "cantor/family.hpp"
#include "cantor/params.hpp"
#include "cantor/sampling.hpp"

namespace cantor {

enum class TrapMode { Budget, Empirical };

struct RingAnnulus {
    double lo = 0.0;
    double hi = 0.0;
    bool maps_inner = false;  // image lands in the inner trap; otherwise the outer one
};

// Certified region geometry: two trap radii with the ring annuli between them.
struct TrapSpec {
    TrapMode mode = TrapMode::Budget;
    double inner_radius = 0.0;
    double outer_radius = 0.0;
    std::vector<RingAnnulus> rings;  // ordered by increasing radius
};

struct CheckResult {
    std::string name;
    double margin_log = 0.0;  // positive = pass, as a log-ratio
    bool pass = false;
};

// The combinatorial invariant (p, n, d_1..d_n) that classifies these Julia
// sets up to topological conjugacy.
struct Signature {
    int p = 1;
    int n = 2;
    std::vector<int> degrees;

    bool operator==(const Signature&) const = default;
};

enum class Verdict { Certified, Failed, Inconclusive };

struct WindingEntry {
    double radius = 0.0;
    int degree = 0;
};

struct CertificationReport {
    std::string spec_hash;
    TrapSpec traps;
    std::vector<CheckResult> trap_checks;
    std::vector<CheckResult> ring_checks;
    std::vector<CheckResult> critical_checks;
    std::vector<WindingEntry> winding;
    Signature signature;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> failures;
    std::vector<std::string> caveats;
    std::vector<CriticalCluster> clusters;
    int p = 1;
    int n = 2;

    bool certified() const { return verdict == Verdict::Certified; }
};

struct CertifyOptions {
    std::optional<TrapMode> mode;           // unset = budget when the audit passes, else empirical
    std::optional<double> inner_override;   // empirical s_trap
    std::optional<double> outer_override;   // empirical outer radius
    std::size_t samples = kDefaultSamples;  // per circle
    int circles = 16;                       // grid circles per ring check
};

// Where ring i's image must land for this (p, n).
bool ring_maps_inner(int p, int n, int i);

// Trap radii and ring annuli straight from the synthesis budget:
// inner = s, outer = K (p = 1) or (2/s)^(1/d_n) (p = 0), ring half-widths 2 u^(2/K).
TrapSpec budget_traps(const FamilySpec& spec, const ParamBudget& budget);

// Trap radii fitted from sampled ring images, for parameters outside the
// synthesis regime (clusters supply the ring geometry).
TrapSpec fit_empirical_traps(const FamilySpec& spec, const std::vector<CriticalCluster>& clusters,
                             const CertifyOptions& opts = {});

// max/min of log|f| over a grid of circles filling [inner_r, outer_r];
// for a "small" target the margin is log(target) - max log|f|, for a "large"
// target it is min log|f| - log(target).
CheckResult ring_image_check(const FamilySpec& spec, int i, double inner_r, double outer_r,
                             const TrapSpec& traps, std::size_t samples, int circles = 16);

// The two trap containments selected by basin_combinatorics(p, n).
std::vector<CheckResult> trap_checks(const FamilySpec& spec, double s_trap, double outer_trap,
                                     std::size_t samples);

// Winding number of f along each circle (argument-principle covering degrees).
std::vector<WindingEntry> winding_profile(const FamilySpec& spec, const std::vector<double>& radii,
                                          std::size_t samples = kDefaultSamples);

CertificationReport certify(const FamilySpec& spec, const CertifyOptions& opts = {});

// Equality up to the z -> 1/z relabeling: degree list reversed and p flipped
// exactly when n is even.  No other identifications are implemented.
bool signatures_conjugate(const Signature& s1, const Signature& s2);

// (p, n, degrees) read off an outward winding profile: |w_k| = d_{k+1} with
// sign (-1)^(n-k-p).  Empty when the signs don't alternate that way.
std::optional<Signature> extract_signature(const std::vector<WindingEntry>& winding);

std::string spec_hash(const FamilySpec& spec);

}  // namespace cantor
