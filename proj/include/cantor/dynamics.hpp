#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "cantor/certify.hpp"
#include "cantor/family.hpp"

namespace cantor {

using MapFunc = std::function<std::complex<double>(std::complex<double>)>;

// Certified geometry the symbolic dynamics runs against.  Symbol j means the
// orbit point sits in the j-th band between consecutive ring annuli, counted
// outward; the rings themselves map into traps and end symbol collection.
struct RegionMap {
    bool inner_is_disk = false;                // inner trap centered off the origin
    std::complex<double> inner_center{0.0, 0.0};
    double inner_radius = 0.0;
    double outer_radius = 0.0;
    struct Ring {
        double lo = 0.0, hi = 0.0;
    };
    std::vector<Ring> rings;  // increasing; n-1 rings separate n bands
    int p = 1;
    int n = 2;  // symbol count

    bool in_inner_trap(std::complex<double> z) const {
        return inner_is_disk ? std::abs(z - inner_center) < inner_radius : std::abs(z) < inner_radius;
    }
    bool in_outer_trap(std::complex<double> z) const { return std::abs(z) > outer_radius; }
    // -1 when inside ring k's annulus, otherwise the band index of |z|.
    int band_or_ring(std::complex<double> z, int* ring_out) const;
};

RegionMap region_map(const CertificationReport& report);

enum class Outcome { Basin0, BasinInfinity, Undecided };
enum class TrapSide { None, Inner, Outer };

struct OrbitClass {
    Outcome outcome = Outcome::Undecided;
    TrapSide entered = TrapSide::None;  // which trap the orbit first entered
    int steps = 0;
    std::vector<int> itinerary;
};

// Final-basin label for an orbit that entered the given trap, following the
// (p, n) case table until an invariant component (the two-cycle case keeps
// the entered trap's own label).
Outcome final_basin(TrapSide entered, int p, int n);

OrbitClass classify(const MapFunc& f, const RegionMap& region, std::complex<double> z, int max_iter = 1000);

OrbitClass classify(const FamilySpec& spec, const CertificationReport& report, std::complex<double> z,
                    int max_iter = 1000);

struct ItineraryResult {
    std::vector<int> symbols;
    bool escaped = false;
    int escaped_at = -1;
};

// First `length` symbols, or Escaped(step) when a trap or ring is entered first.
ItineraryResult itinerary(const MapFunc& f, const RegionMap& region, std::complex<double> z, int length);

ItineraryResult itinerary(const FamilySpec& spec, const CertificationReport& report,
                          std::complex<double> z, int length);

struct RadiusInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// Radial interval on the ray of the given angle whose points realize the
// symbol prefix for its full length; the edges are bisected against the
// first-mismatch-or-escape behavior (the run just below lo leaves inward,
// just above hi outward, or vice versa).
RadiusInterval locate_component(const MapFunc& f, const RegionMap& region, const std::vector<int>& prefix,
                                double angle);

RadiusInterval locate_component(const FamilySpec& spec, const CertificationReport& report,
                                const std::vector<int>& prefix, double angle);

MapFunc family_map(const FamilySpec& spec);

}  // namespace cantor
