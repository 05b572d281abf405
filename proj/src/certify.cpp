#include "cantor/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "cantor/errors.hpp"
#include "cantor/util.hpp"

namespace cantor {

namespace {

XFunc family_xfunc(const FamilySpec& spec) {
    return [&spec](std::complex<double> z) { return eval(spec, z); };
}

double geomean(double a, double b) { return std::exp(0.5 * (std::log(a) + std::log(b))); }

// Range of log|f| over a circle, retrying off an exact pole/zero hit.
LogRange safe_range(const FamilySpec& spec, double radius, std::size_t samples) {
    XFunc f = family_xfunc(spec);
    double r = radius;
    for (int attempt = 0; attempt < 3; ++attempt) {
        try {
            LogRange lr = log_abs_range_on_circle(f, {0.0, 0.0}, r, samples);
            if (std::isfinite(lr.min_log) && std::isfinite(lr.max_log)) return lr;
        } catch (const PoleError&) {
        }
        r *= 1.0 + 1e-9;  // nudge off the exceptional circle
    }
    throw ResolutionError("sampling kept hitting a zero/pole on radius " + std::to_string(radius));
}

LogRange range_over_circles(const FamilySpec& spec, const std::vector<double>& radii,
                            std::size_t samples) {
    LogRange out;
    out.min_log = std::numeric_limits<double>::infinity();
    out.max_log = -std::numeric_limits<double>::infinity();
    for (double r : radii) {
        LogRange lr = safe_range(spec, r, samples);
        out.min_log = std::min(out.min_log, lr.min_log);
        out.max_log = std::max(out.max_log, lr.max_log);
    }
    return out;
}

std::vector<double> grid_radii(double lo, double hi, int circles) {
    std::vector<double> r;
    if (circles < 2 || lo >= hi) return {geomean(lo, hi)};
    double llo = std::log(lo), lhi = std::log(hi);
    for (int k = 0; k < circles; ++k)
        r.push_back(std::exp(llo + (lhi - llo) * k / (circles - 1)));
    return r;
}

}  // namespace

bool ring_maps_inner(int p, int n, int i) {
    const bool odd = ((n - i) % 2) != 0;
    return p == 1 ? odd : !odd;
}

TrapSpec budget_traps(const FamilySpec& spec, const ParamBudget& budget) {
    TrapSpec t;
    t.mode = TrapMode::Budget;
    t.inner_radius = budget.s();
    if (budget.p == 1) {
        t.outer_radius = static_cast<double>(budget.K);
    } else {
        // (2/s)^(1/d_n)
        t.outer_radius = std::exp((std::log(2.0) - budget.log_s) / spec.degrees.back());
    }
    const double eps = std::exp(budget.log_eps());
    for (int i = 1; i <= spec.n() - 1; ++i) {
        const int di = spec.big_d(i);
        double ri = std::pow(static_cast<double>(spec.degrees[i - 1]) / spec.degrees[i], 1.0 / di);
        double amag = spec.params[i - 1].abs();
        RingAnnulus ring;
        ring.lo = (std::min(ri, 1.0) - 2.0 * eps) * amag;
        ring.hi = (std::max(ri, 1.0) + 2.0 * eps) * amag;
        ring.maps_inner = ring_maps_inner(spec.p, spec.n(), i);
        t.rings.push_back(ring);
    }
    return t;
}

TrapSpec fit_empirical_traps(const FamilySpec& spec, const std::vector<CriticalCluster>& clusters,
                             const CertifyOptions& opts) {
    const int n = spec.n();
    TrapSpec t;
    t.mode = TrapMode::Empirical;

    // Ring annuli hugging the refined clusters (plus the two reference circles).
    for (int i = 1; i <= n - 1; ++i) {
        const auto& c = clusters[static_cast<std::size_t>(i - 1)];
        double amag = spec.params[i - 1].abs();
        double lo = std::min(c.r_i, 1.0) * amag, hi = std::max(c.r_i, 1.0) * amag;
        for (const auto& w : c.refined) {
            lo = std::min(lo, std::abs(w));
            hi = std::max(hi, std::abs(w));
        }
        RingAnnulus ring;
        ring.lo = lo / 1.01;
        ring.hi = hi * 1.01;
        ring.maps_inner = ring_maps_inner(spec.p, n, i);
        t.rings.push_back(ring);
    }

    const std::size_t samples = opts.samples;
    double small_images = -std::numeric_limits<double>::infinity();  // max log|f| over inner-bound rings
    double large_images = std::numeric_limits<double>::infinity();   // min log|f| over outer-bound rings
    for (int i = 1; i <= n - 1; ++i) {
        const auto& ring = t.rings[static_cast<std::size_t>(i - 1)];
        LogRange lr = range_over_circles(spec, grid_radii(ring.lo, ring.hi, opts.circles), samples);
        if (ring.maps_inner)
            small_images = std::max(small_images, lr.max_log);
        else
            large_images = std::min(large_images, lr.min_log);
    }

    const auto images = basin_combinatorics(spec.p, n);
    const double log_a1 = spec.params.front().log_mag;

    std::vector<double> inner_cands, outer_cands;
    if (opts.inner_override) {
        inner_cands.push_back(std::log(*opts.inner_override));
    } else {
        double lo = small_images + std::log(1.02);
        double hi = std::log(std::min(t.rings.front().lo / 1.02, std::exp(log_a1) * 0.9));
        if (!(lo < hi)) lo = hi - 8.0;  // infeasible; scan below anyway and let the checks fail
        for (int k = 0; k < 40; ++k) inner_cands.push_back(lo + (hi - lo) * k / 39.0);
    }
    if (opts.outer_override) {
        outer_cands.push_back(std::log(*opts.outer_override));
    } else {
        double lo = std::log(std::max(1.25, 1.5 * t.rings.back().hi));
        double hi = std::log(std::max(4.0 * spec.max_degree(), 10.0));
        if (!(lo < hi)) hi = lo + 4.0;
        for (int k = 0; k < 24; ++k) outer_cands.push_back(lo + (hi - lo) * k / 23.0);
    }

    // Per-candidate circle statistics, computed once.
    auto region_stats = [&](double log_r, bool is_inner) {
        std::vector<double> radii;
        double r = std::exp(log_r);
        if (is_inner)
            radii = {0.25 * r, 0.5 * r, 0.75 * r, r};
        else
            radii = {r, 2.0 * r, 4.0 * r};
        return range_over_circles(spec, radii, samples);
    };
    std::vector<LogRange> inner_stats(inner_cands.size()), outer_stats(outer_cands.size());
    parallel_for(inner_cands.size(), [&](std::size_t k) { inner_stats[k] = region_stats(inner_cands[k], true); });
    parallel_for(outer_cands.size(), [&](std::size_t k) { outer_stats[k] = region_stats(outer_cands[k], false); });

    double best = -std::numeric_limits<double>::infinity();
    double best_in = inner_cands.front(), best_out = outer_cands.front();
    for (std::size_t a = 0; a < inner_cands.size(); ++a) {
        for (std::size_t b = 0; b < outer_cands.size(); ++b) {
            const double ls = inner_cands[a], lr = outer_cands[b];
            double m = std::min(ls - small_images, large_images - lr);
            m = std::min(m, std::log(t.rings.front().lo) - ls);
            m = std::min(m, lr - std::log(t.rings.back().hi));
            // inner trap containment
            m = std::min(m, images.image_of_d0 == BasinLabel::D0 ? ls - inner_stats[a].max_log
                                                                 : inner_stats[a].min_log - lr);
            // outer trap containment
            m = std::min(m, images.image_of_dinf == BasinLabel::DInfinity ? outer_stats[b].min_log - lr
                                                                          : ls - outer_stats[b].max_log);
            if (m > best) {
                best = m;
                best_in = ls;
                best_out = lr;
            }
        }
    }
    t.inner_radius = std::exp(best_in);
    t.outer_radius = std::exp(best_out);
    return t;
}

CheckResult ring_image_check(const FamilySpec& spec, int i, double inner_r, double outer_r,
                             const TrapSpec& traps, std::size_t samples, int circles) {
    CheckResult res;
    const bool small_target = ring_maps_inner(spec.p, spec.n(), i);
    std::ostringstream os;
    os << "ring-" << i << (small_target ? "-into-inner" : "-into-outer");
    res.name = os.str();
    LogRange lr = range_over_circles(spec, grid_radii(inner_r, outer_r, circles), samples);
    res.margin_log = small_target ? std::log(traps.inner_radius) - lr.max_log
                                  : lr.min_log - std::log(traps.outer_radius);
    res.pass = res.margin_log > 0.0;
    return res;
}

std::vector<CheckResult> trap_checks(const FamilySpec& spec, double s_trap, double outer_trap,
                                     std::size_t samples) {
    const auto images = basin_combinatorics(spec.p, spec.n());
    std::vector<CheckResult> out;

    {
        CheckResult inner;
        LogRange lr = range_over_circles(
            spec, {0.25 * s_trap, 0.5 * s_trap, 0.75 * s_trap, s_trap}, samples);
        if (images.image_of_d0 == BasinLabel::D0) {
            inner.name = "inner-trap-into-inner";
            inner.margin_log = std::log(s_trap) - lr.max_log;
        } else {
            inner.name = "inner-trap-into-outer";
            inner.margin_log = lr.min_log - std::log(outer_trap);
        }
        inner.pass = inner.margin_log > 0.0;
        out.push_back(inner);
    }
    {
        CheckResult outer;
        LogRange lr = range_over_circles(spec, {outer_trap, 2.0 * outer_trap, 4.0 * outer_trap}, samples);
        if (images.image_of_dinf == BasinLabel::DInfinity) {
            outer.name = "outer-trap-into-outer";
            outer.margin_log = lr.min_log - std::log(outer_trap);
        } else {
            outer.name = "outer-trap-into-inner";
            outer.margin_log = std::log(s_trap) - lr.max_log;
        }
        outer.pass = outer.margin_log > 0.0;
        out.push_back(outer);
    }
    return out;
}

std::vector<WindingEntry> winding_profile(const FamilySpec& spec, const std::vector<double>& radii,
                                          std::size_t samples) {
    std::vector<WindingEntry> out(radii.size());
    XFunc f = family_xfunc(spec);
    for (std::size_t k = 0; k < radii.size(); ++k) {
        out[k].radius = radii[k];
        out[k].degree = winding_number_adaptive(f, {0.0, 0.0}, radii[k], samples);
    }
    return out;
}

std::optional<Signature> extract_signature(const std::vector<WindingEntry>& winding) {
    if (winding.empty()) return std::nullopt;
    Signature sig;
    sig.n = static_cast<int>(winding.size());
    sig.p = winding.back().degree > 0 ? 1 : 0;
    for (std::size_t k = 0; k < winding.size(); ++k) {
        int w = winding[k].degree;
        if (w == 0) return std::nullopt;
        sig.degrees.push_back(std::abs(w));
        int expect = FamilySpec::parity_sign(sig.n - static_cast<int>(k) - sig.p);
        if ((w > 0 ? 1 : -1) != expect) return std::nullopt;
    }
    return sig;
}

bool signatures_conjugate(const Signature& s1, const Signature& s2) {
    if (s1 == s2) return true;
    if (s1.n != s2.n) return false;
    std::vector<int> rev(s2.degrees.rbegin(), s2.degrees.rend());
    int p_expected = (s2.n % 2 == 0) ? 1 - s2.p : s2.p;
    return s1.degrees == rev && s1.p == p_expected;
}

std::string spec_hash(const FamilySpec& spec) {
    std::ostringstream os;
    os << spec.p;
    for (int d : spec.degrees) os << ',' << d;
    char buf[64];
    for (const auto& a : spec.params) {
        std::snprintf(buf, sizeof buf, ";%.17g:%.17g", a.log_mag, a.phase);
        os << buf;
    }
    std::uint64_t h = 1469598103934665603ULL;
    for (char ch : os.str()) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CertificationReport certify(const FamilySpec& spec, const CertifyOptions& opts) {
    {
        auto bad = validate(spec);
        if (!bad.empty()) throw DomainError("certify: invalid spec: " + bad.front());
    }
    CertificationReport rep;
    rep.spec_hash = spec_hash(spec);
    rep.p = spec.p;
    rep.n = spec.n();

    ParamBudget budget = budget_fit(spec);
    AuditReport audit = audit_budget(spec, budget);
    TrapMode mode = opts.mode.value_or(audit.all_pass() ? TrapMode::Budget : TrapMode::Empirical);

    rep.clusters = predicted_critical(spec, budget);
    std::vector<std::string> refine_failures = refine_critical_soft(spec, rep.clusters);
    if (!refine_failures.empty()) {
        CheckResult rc;
        rc.name = "critical-refinement";
        rc.pass = false;
        rc.margin_log = -static_cast<double>(refine_failures.size());
        rep.critical_checks.push_back(rc);
        rep.failures.push_back(refine_failures.front());
    }

    try {
        rep.traps = mode == TrapMode::Budget ? budget_traps(spec, budget)
                                             : fit_empirical_traps(spec, rep.clusters, opts);
    } catch (const ResolutionError& e) {
        rep.verdict = Verdict::Inconclusive;
        rep.failures.push_back(e.what());
        return rep;
    }

    // Structural sanity: rings ordered, pairwise disjoint, strictly between the traps.
    {
        CheckResult sep;
        sep.name = "ring-separation";
        double worst = std::numeric_limits<double>::infinity();
        double prev = std::log(rep.traps.inner_radius);
        for (const auto& ring : rep.traps.rings) {
            worst = std::min(worst, std::log(ring.lo) - prev);
            prev = std::log(ring.hi);
        }
        worst = std::min(worst, std::log(rep.traps.outer_radius) - prev);
        sep.margin_log = worst;
        sep.pass = worst > 0.0;
        rep.trap_checks.push_back(sep);
    }

    bool inconclusive = false;
    try {
        auto containment = trap_checks(spec, rep.traps.inner_radius, rep.traps.outer_radius, opts.samples);
        rep.trap_checks.insert(rep.trap_checks.end(), containment.begin(), containment.end());

        rep.ring_checks.resize(rep.traps.rings.size());
        parallel_for(rep.traps.rings.size(), [&](std::size_t k) {
            const auto& ring = rep.traps.rings[k];
            rep.ring_checks[k] = ring_image_check(spec, static_cast<int>(k) + 1, ring.lo, ring.hi,
                                                  rep.traps, opts.samples, opts.circles);
        });
    } catch (const ResolutionError& e) {
        inconclusive = true;
        rep.failures.push_back(e.what());
    }

    // Critical localization and critical-value containment.
    {
        CheckResult residuals;
        residuals.name = "critical-residuals";
        double worst = 0.0;
        for (const auto& c : rep.clusters)
            for (double r : c.residuals) worst = std::max(worst, r);
        residuals.margin_log = std::log(1e-9) - std::log(std::max(worst, 1e-300));
        residuals.pass = worst < 1e-9;
        rep.critical_checks.push_back(residuals);

        if (mode == TrapMode::Budget) {
            CheckResult locbound;
            locbound.name = "critical-localization";
            double worst_ratio = 0.0;
            bool ok = true;
            for (const auto& c : rep.clusters) {
                for (double d : c.distances)
                    worst_ratio = std::max(worst_ratio, d / (c.bound + c.bound_floor));
                ok = ok && c.bound_ok && c.distinct_ok;
            }
            locbound.margin_log = -std::log(std::max(worst_ratio, 1e-300));
            locbound.pass = ok;
            rep.critical_checks.push_back(locbound);
        } else {
            std::ostringstream os;
            double worst_ratio = 0.0;
            for (const auto& c : rep.clusters)
                for (double d : c.distances) worst_ratio = std::max(worst_ratio, d / c.bound);
            os << "empirical traps: localization distances reported against a fitted scale only "
                  "(worst distance/bound ratio "
               << worst_ratio << "), not asserted";
            rep.caveats.push_back(os.str());
        }

        CheckResult values;
        values.name = "critical-values-in-traps";
        double worst_value_margin = std::numeric_limits<double>::infinity();
        for (const auto& c : rep.clusters) {
            const bool small_target = ring_maps_inner(spec.p, spec.n(), c.ring_index);
            for (const auto& w : c.refined) {
                double lv = eval(spec, w).log_abs();
                double m = small_target ? std::log(rep.traps.inner_radius) - lv
                                        : lv - std::log(rep.traps.outer_radius);
                worst_value_margin = std::min(worst_value_margin, m);
            }
        }
        values.margin_log = worst_value_margin;
        values.pass = worst_value_margin > 0.0;
        rep.critical_checks.push_back(values);
    }

    // Covering-degree profile read outward between the rings.
    try {
        std::vector<double> radii;
        radii.push_back(geomean(rep.traps.inner_radius, rep.traps.rings.front().lo));
        for (std::size_t k = 0; k + 1 < rep.traps.rings.size(); ++k)
            radii.push_back(geomean(rep.traps.rings[k].hi, rep.traps.rings[k + 1].lo));
        radii.push_back(geomean(rep.traps.rings.back().hi, rep.traps.outer_radius));
        rep.winding = winding_profile(spec, radii, opts.samples);
    } catch (const ResolutionError& e) {
        inconclusive = true;
        rep.failures.push_back(e.what());
    }

    // Signature extraction: |w_k| = d_{k+1}, sign(w_k) = (-1)^(n-k-p).
    bool winding_ok = !rep.winding.empty();
    if (winding_ok) {
        auto sig = extract_signature(rep.winding);
        if (sig) rep.signature = *sig;
        winding_ok = sig && sig->degrees == spec.degrees && sig->p == spec.p;
        if (!winding_ok) rep.failures.push_back("winding profile inconsistent with the spec's degrees");
    }

    if (rep.traps.mode == TrapMode::Empirical)
        rep.caveats.push_back(
            "certified with empirical traps: symbol bands use the fitted ring separators, which "
            "coincide with the covering bands only as verified by these samples");

    bool all_pass = winding_ok;
    for (const auto& c : rep.trap_checks) all_pass = all_pass && c.pass;
    for (const auto& c : rep.ring_checks) all_pass = all_pass && c.pass;
    for (const auto& c : rep.critical_checks) all_pass = all_pass && c.pass;
    for (const auto& c : rep.trap_checks)
        if (!c.pass) rep.failures.push_back(c.name + " failed");
    for (const auto& c : rep.ring_checks)
        if (!c.pass) rep.failures.push_back(c.name + " failed");
    for (const auto& c : rep.critical_checks)
        if (!c.pass) rep.failures.push_back(c.name + " failed");

    if (inconclusive)
        rep.verdict = Verdict::Inconclusive;
    else
        rep.verdict = all_pass ? Verdict::Certified : Verdict::Failed;
    return rep;
}

}  // namespace cantor
