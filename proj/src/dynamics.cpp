#include "cantor/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "cantor/errors.hpp"

namespace cantor {

int RegionMap::band_or_ring(std::complex<double> z, int* ring_out) const {
    double rho = std::abs(z);
    int band = 0;
    for (std::size_t k = 0; k < rings.size(); ++k) {
        if (rho < rings[k].lo) break;
        if (rho <= rings[k].hi) {
            if (ring_out) *ring_out = static_cast<int>(k);
            return -1;
        }
        band = static_cast<int>(k) + 1;
    }
    if (ring_out) *ring_out = -1;
    return band;
}

RegionMap region_map(const CertificationReport& report) {
    RegionMap r;
    r.inner_radius = report.traps.inner_radius;
    r.outer_radius = report.traps.outer_radius;
    for (const auto& ring : report.traps.rings) r.rings.push_back({ring.lo, ring.hi});
    r.p = report.p;
    r.n = report.n;
    return r;
}

Outcome final_basin(TrapSide entered, int p, int n) {
    if (entered == TrapSide::None) return Outcome::Undecided;
    const auto images = basin_combinatorics(p, n);
    const bool both_to_inf =
        images.image_of_d0 == BasinLabel::DInfinity && images.image_of_dinf == BasinLabel::DInfinity;
    const bool both_to_zero =
        images.image_of_d0 == BasinLabel::D0 && images.image_of_dinf == BasinLabel::D0;
    if (both_to_inf) return Outcome::BasinInfinity;
    if (both_to_zero) return Outcome::Basin0;
    // fixed traps or the inner/outer two-cycle: the entered side's own label
    return entered == TrapSide::Inner ? Outcome::Basin0 : Outcome::BasinInfinity;
}

OrbitClass classify(const MapFunc& f, const RegionMap& region, std::complex<double> z, int max_iter) {
    OrbitClass oc;
    for (int step = 0; step <= max_iter; ++step) {
        if (region.in_inner_trap(z)) {
            oc.entered = TrapSide::Inner;
            oc.outcome = final_basin(TrapSide::Inner, region.p, region.n);
            oc.steps = step;
            return oc;
        }
        if (region.in_outer_trap(z)) {
            oc.entered = TrapSide::Outer;
            oc.outcome = final_basin(TrapSide::Outer, region.p, region.n);
            oc.steps = step;
            return oc;
        }
        if (step == max_iter) break;
        int ring = -1;
        int band = region.band_or_ring(z, &ring);
        if (band >= 0) oc.itinerary.push_back(band);
        z = f(z);
    }
    oc.steps = max_iter;
    oc.outcome = Outcome::Undecided;
    return oc;
}

OrbitClass classify(const FamilySpec& spec, const CertificationReport& report, std::complex<double> z,
                    int max_iter) {
    return classify(family_map(spec), region_map(report), z, max_iter);
}

ItineraryResult itinerary(const MapFunc& f, const RegionMap& region, std::complex<double> z, int length) {
    ItineraryResult res;
    for (int t = 0; t < length; ++t) {
        if (region.in_inner_trap(z) || region.in_outer_trap(z)) {
            res.escaped = true;
            res.escaped_at = t;
            return res;
        }
        int ring = -1;
        int band = region.band_or_ring(z, &ring);
        if (band < 0) {  // inside a ring annulus: next stop is a trap
            res.escaped = true;
            res.escaped_at = t;
            return res;
        }
        res.symbols.push_back(band);
        z = f(z);
    }
    return res;
}

ItineraryResult itinerary(const FamilySpec& spec, const CertificationReport& report,
                          std::complex<double> z, int length) {
    return itinerary(family_map(spec), region_map(report), z, length);
}

namespace {

// Position of the orbit of r e^(i angle) relative to the prefix: 0 when the
// first |prefix| symbols match, otherwise -1/+1 for deviating below/above the
// expected band at the first mismatch-or-escape step.
int prefix_side(const MapFunc& f, const RegionMap& region, const std::vector<int>& prefix, double angle,
                double r) {
    std::complex<double> z = r * std::complex<double>(std::cos(angle), std::sin(angle));
    for (std::size_t t = 0; t < prefix.size(); ++t) {
        const int want = prefix[t];
        if (region.in_inner_trap(z)) return -1;
        if (region.in_outer_trap(z)) return +1;
        int ring = -1;
        int band = region.band_or_ring(z, &ring);
        if (band < 0) return ring <= want ? -1 : +1;  // ring k bounds band k from below
        if (band != want) return band < want ? -1 : +1;
        z = f(z);
    }
    return 0;
}

struct Edge {
    double zero;     // radius realizing the prefix
    double nonzero;  // radius just off it
};

double bisect_edge(const MapFunc& f, const RegionMap& region, const std::vector<int>& prefix,
                   double angle, Edge e) {
    for (int it = 0; it < 60; ++it) {
        double mid = std::exp(0.5 * (std::log(e.zero) + std::log(e.nonzero)));
        if (std::fabs(e.zero - e.nonzero) <= 1e-12 * std::max(e.zero, e.nonzero)) break;
        if (prefix_side(f, region, prefix, angle, mid) == 0)
            e.zero = mid;
        else
            e.nonzero = mid;
    }
    return e.zero;
}

}  // namespace

RadiusInterval locate_component(const MapFunc& f, const RegionMap& region, const std::vector<int>& prefix,
                                double angle) {
    if (prefix.empty()) throw DomainError("locate_component: empty prefix");
    for (int s : prefix)
        if (s < 0 || s >= region.n) throw DomainError("locate_component: symbol out of range");

    // Depth-1 interval: the band itself, clipped off its separators.
    double lo, hi;
    const int b0 = prefix.front();
    if (b0 == 0) {
        if (region.inner_is_disk) {
            // ray hits the inner disk iff r < -2 Re(center) cos(angle) (center on the real axis)
            double hit = -2.0 * region.inner_center.real() * std::cos(angle);
            lo = hit > 0.0 ? hit : 1e-9 * region.rings.front().lo;
        } else {
            lo = region.inner_radius;
        }
    } else {
        lo = region.rings[static_cast<std::size_t>(b0 - 1)].hi;
    }
    hi = (b0 == region.n - 1) ? region.outer_radius : region.rings[static_cast<std::size_t>(b0)].lo;
    RadiusInterval iv{lo * (1.0 + 1e-12), hi * (1.0 - 1e-12)};
    if (prefix.size() == 1) return iv;

    for (std::size_t depth = 2; depth <= prefix.size(); ++depth) {
        std::vector<int> sub(prefix.begin(), prefix.begin() + static_cast<long>(depth));
        // Scan for a contiguous run realizing the prefix, densifying if needed.
        std::size_t samples = 64;
        std::vector<double> rs;
        std::vector<int> side;
        std::size_t run_lo = 0, run_hi = 0;
        bool found = false;
        for (; samples <= (1u << 13); samples *= 2) {
            rs.clear();
            side.clear();
            double la = std::log(iv.lo), lb = std::log(iv.hi);
            for (std::size_t k = 0; k < samples; ++k) {
                double r = std::exp(la + (lb - la) * (static_cast<double>(k) + 0.5) / samples);
                rs.push_back(r);
                side.push_back(prefix_side(f, region, sub, angle, r));
            }
            // longest zero run
            std::size_t best_len = 0;
            std::size_t k = 0;
            while (k < samples) {
                if (side[k] != 0) {
                    ++k;
                    continue;
                }
                std::size_t j = k;
                while (j + 1 < samples && side[j + 1] == 0) ++j;
                if (j - k + 1 > best_len) {
                    best_len = j - k + 1;
                    run_lo = k;
                    run_hi = j;
                }
                k = j + 1;
            }
            if (best_len > 0) {
                found = true;
                break;
            }
        }
        if (!found)
            throw NotBracketed("locate_component: prefix not realizable on this ray within the scan budget");

        double left = rs[run_lo], right = rs[run_hi];
        if (run_lo > 0)
            left = bisect_edge(f, region, sub, angle, {rs[run_lo], rs[run_lo - 1]});
        else if (prefix_side(f, region, sub, angle, iv.lo) != 0)
            left = bisect_edge(f, region, sub, angle, {rs[run_lo], iv.lo});
        if (run_hi + 1 < rs.size())
            right = bisect_edge(f, region, sub, angle, {rs[run_hi], rs[run_hi + 1]});
        else if (prefix_side(f, region, sub, angle, iv.hi) != 0)
            right = bisect_edge(f, region, sub, angle, {rs[run_hi], iv.hi});
        iv = {left, right};
    }
    return iv;
}

RadiusInterval locate_component(const FamilySpec& spec, const CertificationReport& report,
                                const std::vector<int>& prefix, double angle) {
    if (!report.certified()) throw DomainError("locate_component: report is not Certified");
    return locate_component(family_map(spec), region_map(report), prefix, angle);
}

MapFunc family_map(const FamilySpec& spec) {
    return [spec](std::complex<double> z) { return eval(spec, z).to_complex(); };
}

}  // namespace cantor
