#pragma once

#include <complex>
#include <vector>

#include "cantor/family.hpp"
#include "cantor/params.hpp"
#include "cantor/poly.hpp"

namespace cantor {

// The D_i free critical points attached to ring i: predicted positions
// r_i a_i exp(i pi (2j-1)/D_i) on the circle of radius r_i |a_i| with
// r_i = (d_i/d_{i+1})^(1/D_i), Newton-refined roots of the logarithmic
// derivative, and the localization radius bound = u^(2/K) |a_i|.
struct CriticalCluster {
    int ring_index = 1;  // i in [1, n-1]
    double r_i = 1.0;
    double bound = 0.0;
    // Coordinate resolution floor: deep synthesized scales push the bound
    // below the double-precision spacing at the cluster radius, where the
    // measured distance is representation noise.  Localization is asserted
    // against bound + bound_floor; any wrong-root failure exceeds both by
    // many orders of magnitude.
    double bound_floor = 0.0;
    std::vector<std::complex<double>> predicted;
    std::vector<std::complex<double>> refined;
    std::vector<double> residuals;   // |log deriv| at each refined point
    std::vector<double> distances;   // |refined - predicted|
    bool bound_ok = false;           // every distance < bound + bound_floor
    bool distinct_ok = false;        // pairwise separation > bound
};

std::vector<CriticalCluster> predicted_critical(const FamilySpec& spec, const ParamBudget& budget);

// Newton refinement from every predicted seed; one root per seed, with
// basin-escape rejection if an iterate leaves the cluster's annulus.
// Throws ConvergenceError naming the first stalled seed.
void refine_critical(const FamilySpec& spec, std::vector<CriticalCluster>& clusters);

// Non-throwing variant: stalled seeds keep their predicted position and an
// honest (large) residual; returns one message per stalled seed.
std::vector<std::string> refine_critical_soft(const FamilySpec& spec,
                                              std::vector<CriticalCluster>& clusters);

std::vector<CriticalCluster> refined_critical(const FamilySpec& spec, const ParamBudget& budget);

// Numerator / denominator polynomials of the factored family map (used by the
// independent root-counting oracles).  Coefficients can underflow for deep
// synthesized scales; guarded by ScaleError.
struct RationalParts {
    Poly num;
    Poly den;
};
RationalParts rational_parts(const FamilySpec& spec);

// Independent enumeration of all critical points: expands the derivative
// numerator and solves it with the simultaneous-iteration root finder,
// deflating the known roots at the origin.
struct CriticalEnumeration {
    std::vector<std::complex<double>> free_roots;  // the sum-of-D_i finite free roots
    int multiplicity_at_zero = 0;                  // d_1 - 1
    int multiplicity_at_infinity = 0;              // d_n - 1
    int total_with_multiplicity() const {
        return static_cast<int>(free_roots.size()) + multiplicity_at_zero + multiplicity_at_infinity;
    }
};
CriticalEnumeration oracle_all_critical(const FamilySpec& spec);

}  // namespace cantor
