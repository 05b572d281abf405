#include "cantor/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cantor/errors.hpp"
#include "cantor/sampling.hpp"
#include "cantor/util.hpp"

namespace cantor {

namespace {

constexpr std::complex<double> kOne{1.0, 0.0};

std::complex<double> cpow_uint(std::complex<double> z, unsigned k) {
    std::complex<double> acc(1.0, 0.0);
    while (k > 0) {
        if (k & 1U) acc *= z;
        z *= z;
        k >>= 1U;
    }
    return acc;
}

double geomean(double a, double b) { return std::exp(0.5 * (std::log(a) + std::log(b))); }

// s for a P_n spec (|b_1| when the magnitudes follow |b_i| = s^i).
double pn_scale(const PnSpec& spec) { return std::exp(spec.b.front().log_mag); }

double pn_eps(const PnSpec& spec) { return std::pow(pn_scale(spec), spec.n + 0.5); }

CheckResult count_check(const std::string& name, int got, int want) {
    CheckResult c;
    c.name = name;
    c.pass = got == want;
    c.margin_log = c.pass ? 0.0 : -std::fabs(static_cast<double>(got - want));
    return c;
}

CheckResult bound_check(const std::string& name, const ParabolicCluster& cluster) {
    CheckResult c;
    c.name = name;
    double worst = 0.0;
    for (double d : cluster.distances) worst = std::max(worst, d);
    c.margin_log = std::log(cluster.bound) - std::log(std::max(worst, 1e-300));
    c.pass = cluster.bound_ok;
    return c;
}

CheckResult residual_check(const std::string& name, const std::vector<ParabolicCluster>& clusters) {
    CheckResult c;
    c.name = name;
    double worst = 0.0;
    for (const auto& cl : clusters)
        for (double r : cl.residuals) worst = std::max(worst, r);
    c.margin_log = std::log(1e-9) - std::log(std::max(worst, 1e-300));
    c.pass = worst < 1e-9;
    return c;
}

}  // namespace

ABC compute_ABC(int n, const std::vector<std::complex<double>>& b) {
    const double e = 2.0 * n + 2.0;
    std::complex<double> C(0.0, 0.0);
    std::complex<double> prod(1.0, 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::complex<double> bi_e = cpow_uint(b[i], static_cast<unsigned>(e));
        std::complex<double> den = kOne - bi_e;
        if (den == std::complex<double>(0.0, 0.0)) throw DomainError("compute_ABC: b_i^(2n+2) = 1");
        std::complex<double> term = bi_e / den;
        C += (i % 2 == 0 ? 1.0 : -1.0) * term;
        // prod (1 - b_i^(2n+2))^((-1)^i); i here is 1-based in the formula
        prod = (i % 2 == 0) ? prod / den : prod * den;
    }
    std::complex<double> scale = kOne + (2.0 * n + 2.0) * C;
    if (scale == std::complex<double>(0.0, 0.0)) throw DomainError("compute_ABC: 1 + (2n+2) C_n = 0");
    ABC abc;
    abc.C = C;
    abc.B = (2.0 * n + 2.0) * C / scale;
    abc.A = prod / scale;
    return abc;
}

PnSpec make_pn(int n, std::vector<LogPolar> b) {
    if (n < 2) throw DomainError("make_pn: n must be >= 2");
    if (static_cast<int>(b.size()) != n - 1) throw DomainError("make_pn: need n-1 parameters");
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        if (!(b[i].log_mag > b[i + 1].log_mag))
            throw DomainError("make_pn: need strictly decreasing magnitudes");
    if (!b.empty() && !(b.front().log_mag < 0.0)) throw DomainError("make_pn: need |b_1| < 1");
    PnSpec spec;
    spec.n = n;
    spec.b = std::move(b);
    std::vector<std::complex<double>> bc;
    for (const auto& x : spec.b) bc.push_back(x.value().to_complex());
    ABC abc = compute_ABC(n, bc);
    spec.A = abc.A;
    spec.B = abc.B;
    spec.C = abc.C;
    return spec;
}

PnSpec make_pn(int n, double s) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("make_pn: s must be in (0, 1)");
    std::vector<LogPolar> b;
    for (int i = 1; i <= n - 1; ++i) b.push_back(LogPolar{i * std::log(s), 0.0});
    return make_pn(n, std::move(b));
}

XComplex plambda_eval_x(const PLambdaSpec& spec, std::complex<double> z) {
    const int mn = spec.m + spec.n;
    XComplex lz = xc_mul(XComplex(spec.lambda), XComplex(z));
    XComplex t = xc_int_pow(lz, mn);
    XComplex den = xc_sub(XComplex::one(), t);
    if (den.is_zero()) throw PoleError("plambda_eval: (lambda z)^(m+n) = 1");
    XComplex head = xc_int_pow(XComplex(kOne + z), spec.n);
    XComplex num = xc_add(xc_div(xc_sub(head, XComplex::one()), XComplex(static_cast<double>(spec.n))), t);
    return xc_div(num, den);
}

std::complex<double> plambda_eval(const PLambdaSpec& spec, std::complex<double> z) {
    return plambda_eval_x(spec, z).to_complex();
}

XComplex pn_eval_x(const PnSpec& spec, std::complex<double> z) {
    const int n = spec.n;
    const int e = FamilySpec::parity_sign(n + 1) * (n + 1);
    if (z == std::complex<double>(0.0, 0.0)) {
        if (e < 0) throw PoleError("pn_eval: z = 0 is a pole for even n");
        return XComplex(spec.B);
    }
    XComplex zx(z);
    XComplex zn1 = xc_int_pow(zx, n + 1);
    XComplex den = xc_add(xc_mul(XComplex(static_cast<double>(n)), zn1), XComplex::one());
    if (den.is_zero()) throw PoleError("pn_eval: n z^(n+1) + 1 = 0");
    XComplex acc = xc_div(xc_mul(XComplex(static_cast<double>(n + 1)), xc_int_pow(zx, e)), den);
    for (int i = 1; i <= n - 1; ++i) {
        XComplex bi = spec.b[static_cast<std::size_t>(i - 1)].value();
        XComplex factor = xc_sub(xc_int_pow(zx, 2 * n + 2), xc_int_pow(bi, 2 * n + 2));
        if (factor.is_zero()) {
            if (i % 2 == 0) throw PoleError("pn_eval: z on the pole circle of ring " + std::to_string(i));
            return XComplex(spec.B);
        }
        acc = (i % 2 == 1) ? xc_mul(acc, factor) : xc_div(acc, factor);
    }
    return xc_add(xc_mul(XComplex(spec.A), acc), XComplex(spec.B));
}

std::complex<double> pn_eval(const PnSpec& spec, std::complex<double> z) {
    return pn_eval_x(spec, z).to_complex();
}

FixedPointResiduals parabolic_fixed_check(const MapFunc& f, std::complex<double> fixed_point,
                                          std::complex<double> expected_multiplier) {
    FixedPointResiduals r;
    r.value_residual = std::abs(f(fixed_point) - fixed_point);
    const double h = 1e-3;
    auto central = [&](double step) {
        return (f(fixed_point + std::complex<double>(step, 0.0)) -
                f(fixed_point - std::complex<double>(step, 0.0))) /
               (2.0 * step);
    };
    std::complex<double> d1 = central(h), d2 = central(h / 2.0);
    std::complex<double> deriv = (4.0 * d2 - d1) / 3.0;
    r.deriv_residual = std::abs(deriv - expected_multiplier);
    return r;
}

std::vector<CheckResult> trap_checks_parabolic(const PLambdaSpec& spec, std::size_t samples,
                                               double exclusion) {
    std::vector<CheckResult> out;
    const double al = std::abs(spec.lambda);
    const double far_radius = 2.0 / std::pow(al, 1.0 + static_cast<double>(spec.n) / spec.m);

    {
        CheckResult hyp;
        hyp.name = "lambda-hypothesis";
        hyp.margin_log = std::log(spec.lambda_bound()) - std::log(al);
        hyp.pass = hyp.margin_log >= 0.0;
        out.push_back(hyp);
    }

    // The invariant disk about -3/4, strict away from the contact at 0.
    {
        double worst_strict = -std::numeric_limits<double>::infinity();
        double worst_contact = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < samples; ++k) {
            double th = -kPi + 2.0 * kPi * (static_cast<double>(k) + 0.5) / samples;
            std::complex<double> z =
                std::complex<double>(-0.75, 0.0) + 0.75 * std::complex<double>(std::cos(th), std::sin(th));
            double v = std::log(std::abs(plambda_eval(spec, z) + std::complex<double>(0.75, 0.0)));
            if (std::fabs(th) > exclusion)
                worst_strict = std::max(worst_strict, v);
            else
                worst_contact = std::max(worst_contact, v);
        }
        CheckResult strict;
        strict.name = "disk-into-disk";
        strict.margin_log = std::log(0.75) - worst_strict;
        strict.pass = strict.margin_log > 0.0;
        out.push_back(strict);

        CheckResult contact;
        contact.name = "disk-contact-nonstrict";
        contact.margin_log = std::log(0.75) + 1e-9 - worst_contact;
        contact.pass = contact.margin_log >= 0.0;
        out.push_back(contact);
    }

    // Critical ring annulus maps far out: |P| > 2/|lambda|^(1+n/m) on
    // 1/(2|lambda|) < |z| < 2/|lambda| (the poles inside only help the minimum).
    {
        XFunc f = [&spec](std::complex<double> z) { return plambda_eval_x(spec, z); };
        double min_log = std::numeric_limits<double>::infinity();
        for (int c = 0; c < 16; ++c) {
            double r = 0.5 / al * std::pow(4.0, (c + 0.5) / 16.0);
            LogRange lr = log_abs_range_on_circle(f, {0.0, 0.0}, r, samples);
            min_log = std::min(min_log, lr.min_log);
        }
        CheckResult ring;
        ring.name = "ring-into-far";
        ring.margin_log = min_log - std::log(far_radius);
        ring.pass = ring.margin_log > 0.0;
        out.push_back(ring);
    }

    // Far region lands next to -1: |P(z) + 1| < 1/2 for |z| >= 2/|lambda|^(1+n/m).
    {
        double worst = -std::numeric_limits<double>::infinity();
        for (double mult : {1.0, 2.0, 4.0}) {
            for (std::size_t k = 0; k < samples; ++k) {
                double th = 2.0 * kPi * (static_cast<double>(k) + 0.5) / samples;
                std::complex<double> z =
                    far_radius * mult * std::complex<double>(std::cos(th), std::sin(th));
                worst = std::max(worst, std::log(std::abs(plambda_eval(spec, z) + kOne)));
            }
        }
        CheckResult far;
        far.name = "far-into-disk";
        far.margin_log = std::log(0.5) - worst;
        far.pass = far.margin_log > 0.0;
        out.push_back(far);
    }
    return out;
}

std::vector<CheckResult> trap_checks_parabolic(const PnSpec& spec, std::size_t samples,
                                               double exclusion) {
    std::vector<CheckResult> out;
    const int n = spec.n;
    const double s = pn_scale(spec);
    const double eps = pn_eps(spec);
    const double r_inner = eps;  // U_0 = D_r with r = s^(n+1/2)
    XFunc f = [&spec](std::complex<double> z) { return pn_eval_x(spec, z); };

    {
        CheckResult hyp;
        hyp.name = "scale-hypothesis";
        hyp.margin_log = std::log(1.0 / (25.0 * n * n)) - std::log(s);
        hyp.pass = hyp.margin_log >= 0.0;
        out.push_back(hyp);
    }

    // Unit circle maps outside itself except at the n+1 parabolic contacts.
    {
        double worst_strict = std::numeric_limits<double>::infinity();
        double worst_contact = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < samples; ++k) {
            double th = 2.0 * kPi * static_cast<double>(k) / samples;
            double dist = std::numeric_limits<double>::infinity();
            for (int j = 0; j <= n; ++j) {
                double cj = 2.0 * kPi * j / (n + 1);
                double d = std::fabs(std::remainder(th - cj, 2.0 * kPi));
                dist = std::min(dist, d);
            }
            std::complex<double> z(std::cos(th), std::sin(th));
            double v = pn_eval_x(spec, z).log_abs();
            if (dist > exclusion)
                worst_strict = std::min(worst_strict, v);
            else
                worst_contact = std::min(worst_contact, v);
        }
        CheckResult strict;
        strict.name = "unit-circle-strict";
        strict.margin_log = worst_strict;
        strict.pass = strict.margin_log > 0.0;
        out.push_back(strict);

        CheckResult contact;
        contact.name = "unit-circle-contact-nonstrict";
        contact.margin_log = worst_contact + 1e-9;
        contact.pass = contact.margin_log >= 0.0;
        out.push_back(contact);
    }

    // A few exterior circles stay outside the closed unit disk.
    {
        double min_log = std::numeric_limits<double>::infinity();
        for (double r : {1.5, 3.0, 10.0}) {
            LogRange lr = log_abs_range_on_circle(f, {0.0, 0.0}, r, samples);
            min_log = std::min(min_log, lr.min_log);
        }
        CheckResult ext;
        ext.name = "exterior-into-exterior";
        ext.margin_log = min_log;
        ext.pass = ext.margin_log > 0.0;
        out.push_back(ext);
    }

    // Ring annuli about each |b_i|: odd rings map into U_0, even rings into U_infinity.
    for (int i = 1; i <= n - 1; ++i) {
        double bmag = std::exp(spec.b[static_cast<std::size_t>(i - 1)].log_mag);
        double lo = bmag * (1.0 - 2.0 * eps), hi = bmag * (1.0 + 2.0 * eps);
        LogRange range;
        range.min_log = std::numeric_limits<double>::infinity();
        range.max_log = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < 8; ++c) {
            double r = lo + (hi - lo) * (c + 0.5) / 8.0;
            LogRange lr = log_abs_range_on_circle(f, {0.0, 0.0}, r, samples);
            range.min_log = std::min(range.min_log, lr.min_log);
            range.max_log = std::max(range.max_log, lr.max_log);
        }
        CheckResult ring;
        std::ostringstream os;
        os << "ring-" << i << (i % 2 == 1 ? "-into-inner" : "-into-exterior");
        ring.name = os.str();
        ring.margin_log = (i % 2 == 1) ? std::log(r_inner) - range.max_log : range.min_log;
        ring.pass = ring.margin_log > 0.0;
        out.push_back(ring);
    }

    // Inner disk D_r: invariant for odd n, mapped beyond the unit circle for even n.
    {
        LogRange range;
        range.min_log = std::numeric_limits<double>::infinity();
        range.max_log = -std::numeric_limits<double>::infinity();
        for (double frac : {0.25, 0.5, 0.75, 1.0}) {
            LogRange lr = log_abs_range_on_circle(f, {0.0, 0.0}, frac * r_inner, samples);
            range.min_log = std::min(range.min_log, lr.min_log);
            range.max_log = std::max(range.max_log, lr.max_log);
        }
        CheckResult inner;
        inner.name = n % 2 == 1 ? "inner-trap-into-inner" : "inner-trap-into-exterior";
        inner.margin_log = n % 2 == 1 ? std::log(r_inner) - range.max_log : range.min_log;
        inner.pass = inner.margin_log > 0.0;
        out.push_back(inner);
    }
    return out;
}

namespace {

// --- P_lambda critical refinement -----------------------------------------

// Near the degenerate cluster the roots sit within |lambda|^(m+n)-ish of -1,
// far below double spacing around -1, so everything runs in the shifted
// coordinate t = 1 + z.
struct NearMinusOne {
    const PLambdaSpec& spec;
    XComplex lam_pow;  // lambda^(m+n)

    std::complex<double> B(std::complex<double> t) const {
        double c = 1.0 + static_cast<double>(spec.m) / spec.n;
        return c * (cpow_uint(t, static_cast<unsigned>(spec.n)) + std::complex<double>(spec.n - 1, 0.0)) -
               (t - kOne) * cpow_uint(t, static_cast<unsigned>(spec.n - 1));
    }
    std::complex<double> Bp(std::complex<double> t) const {
        double c = 1.0 + static_cast<double>(spec.m) / spec.n;
        std::complex<double> tn1 = cpow_uint(t, static_cast<unsigned>(spec.n - 1));
        std::complex<double> tn2 =
            spec.n >= 2 ? cpow_uint(t, static_cast<unsigned>(spec.n - 2)) : kOne;
        return c * static_cast<double>(spec.n) * tn1 - tn1 -
               (t - kOne) * static_cast<double>(spec.n - 1) * tn2;
    }
    std::complex<double> W(std::complex<double> t) const {
        std::complex<double> lp = lam_pow.to_complex();
        unsigned mn1 = static_cast<unsigned>(spec.m + spec.n - 1);
        return cpow_uint(t, static_cast<unsigned>(spec.n - 1)) + lp * cpow_uint(t - kOne, mn1) * B(t);
    }
    std::complex<double> Wp(std::complex<double> t) const {
        std::complex<double> lp = lam_pow.to_complex();
        unsigned mn1 = static_cast<unsigned>(spec.m + spec.n - 1);
        std::complex<double> head =
            spec.n >= 2 ? static_cast<double>(spec.n - 1) * cpow_uint(t, static_cast<unsigned>(spec.n - 2))
                        : std::complex<double>(0.0, 0.0);
        return head + lp * (static_cast<double>(mn1) * cpow_uint(t - kOne, mn1 - 1) * B(t) +
                            cpow_uint(t - kOne, mn1) * Bp(t));
    }
};

// Scaled ring equation n/(m lambda^(m+n)) + z^(m+n) + ((m+n)/m) z^(m+n-1) (1 + (n-1)/(1+z)^(n-1)).
struct RingEquation {
    const PLambdaSpec& spec;
    XComplex head;  // n/(m lambda^(m+n))

    XComplex V(std::complex<double> z) const {
        const int mn = spec.m + spec.n;
        XComplex zx(z);
        XComplex tail = xc_div(XComplex(static_cast<double>(spec.n - 1)),
                               xc_int_pow(XComplex(kOne + z), spec.n - 1));
        XComplex paren = xc_add(XComplex::one(), tail);
        XComplex second = xc_mul(XComplex(static_cast<double>(mn) / spec.m),
                                 xc_mul(xc_int_pow(zx, mn - 1), paren));
        return xc_add(head, xc_add(xc_int_pow(zx, mn), second));
    }
    XComplex Vp(std::complex<double> z) const {
        const int mn = spec.m + spec.n;
        XComplex zx(z);
        XComplex one_z(kOne + z);
        XComplex tail = xc_div(XComplex(static_cast<double>(spec.n - 1)), xc_int_pow(one_z, spec.n - 1));
        XComplex paren = xc_add(XComplex::one(), tail);
        XComplex a = xc_mul(XComplex(static_cast<double>(mn)), xc_int_pow(zx, mn - 1));
        XComplex b = xc_mul(XComplex(static_cast<double>(mn) / spec.m * (mn - 1)),
                            xc_mul(xc_int_pow(zx, mn - 2), paren));
        XComplex c = xc_mul(XComplex(static_cast<double>(mn) / spec.m * (spec.n - 1) * (spec.n - 1)),
                            xc_div(xc_int_pow(zx, mn - 1), xc_int_pow(one_z, spec.n)));
        return xc_add(a, xc_sub(b, c));
    }
};

}  // namespace

std::vector<ParabolicCluster> parabolic_critical(const PLambdaSpec& spec) {
    if (spec.m < 2 || spec.n < 2 || 1.0 / spec.m + 1.0 / spec.n >= 1.0)
        throw DomainError("parabolic_critical: need m, n >= 2 with 1/m + 1/n < 1");
    const double al = std::abs(spec.lambda);
    std::vector<ParabolicCluster> out;

    // Cluster of n-1 roots inside D(-1, |lambda|), in the shifted coordinate.
    {
        NearMinusOne h{spec, xc_int_pow(XComplex(spec.lambda), spec.m + spec.n)};
        ParabolicCluster c;
        c.name = "near-fixed-of-base-map";
        c.bound = al;
        const int count = spec.n - 1;
        const double scale = std::abs(h.lam_pow.to_complex()) * (1.0 + static_cast<double>(spec.m) / spec.n) *
                             (spec.n - 1);
        double delta = std::pow(scale, 1.0 / std::max(count, 1));
        for (int j = 0; j < count; ++j) {
            double th = 2.0 * kPi * (j + 0.3) / count;
            std::complex<double> t = delta * std::complex<double>(std::cos(th), std::sin(th));
            double res = 0.0;
            for (int it = 0; it < 100; ++it) {
                std::complex<double> w = h.W(t);
                res = std::abs(w) / scale;
                if (res < 1e-12) break;
                std::complex<double> wp = h.Wp(t);
                if (wp == std::complex<double>(0.0, 0.0)) break;
                std::complex<double> next = t - w / wp;
                if (std::abs(next) > al) break;
                if (next == t) break;
                t = next;
            }
            res = std::abs(h.W(t)) / scale;
            if (res > 1e-9)
                throw ConvergenceError("parabolic_critical: Newton stalled near the -1 cluster");
            c.predicted.push_back(std::complex<double>(-1.0, 0.0));
            c.refined.push_back(std::complex<double>(-1.0, 0.0) + t);
            c.residuals.push_back(res);
            c.distances.push_back(std::abs(t));
        }
        c.bound_ok = true;
        for (double d : c.distances)
            if (!(d < c.bound)) c.bound_ok = false;
        out.push_back(std::move(c));
    }

    // Ring cluster of m+n roots near radius r0/|lambda|.
    {
        const int mn = spec.m + spec.n;
        RingEquation eq{spec, xc_div(XComplex(static_cast<double>(spec.n) / spec.m),
                                     xc_int_pow(XComplex(spec.lambda), mn))};
        ParabolicCluster c;
        c.name = "ring";
        c.bound = 2.0 * mn / static_cast<double>(spec.m);
        const double r0 = spec.r0();
        std::complex<double> base = std::complex<double>(r0, 0.0) / spec.lambda;
        c.predicted.resize(static_cast<std::size_t>(mn));
        c.refined.resize(static_cast<std::size_t>(mn));
        c.residuals.resize(static_cast<std::size_t>(mn));
        c.distances.resize(static_cast<std::size_t>(mn));
        const double head_log = eq.head.log_abs();
        std::vector<std::string> failures(static_cast<std::size_t>(mn));
        parallel_for(static_cast<std::size_t>(mn), [&](std::size_t idx) {
            int j = static_cast<int>(idx) + 1;
            double th = kPi * (2.0 * j - 1.0) / mn;
            std::complex<double> seed = base * std::complex<double>(std::cos(th), std::sin(th));
            std::complex<double> z = seed;
            double res = 0.0;
            for (int it = 0; it < 100; ++it) {
                XComplex v = eq.V(z);
                res = std::exp(v.log_abs() - head_log);
                if (res < 1e-12) break;
                XComplex vp = eq.Vp(z);
                if (vp.is_zero()) break;
                std::complex<double> step = xc_div(v, vp).to_complex();
                std::complex<double> next = z - step;
                double r = std::abs(next) * al;
                if (r < 0.5 * r0 || r > 2.0 * r0) break;
                if (next == z) break;
                z = next;
            }
            res = std::exp(eq.V(z).log_abs() - head_log);
            if (res > 1e-9) {
                failures[idx] = "parabolic_critical: Newton stalled on the ring cluster";
                return;
            }
            c.predicted[idx] = seed;
            c.refined[idx] = z;
            c.residuals[idx] = res;
            c.distances[idx] = std::abs(z - seed);
        });
        for (const auto& fmsg : failures)
            if (!fmsg.empty()) throw ConvergenceError(fmsg);
        c.bound_ok = true;
        for (double d : c.distances)
            if (!(d < c.bound)) c.bound_ok = false;
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

// --- P_n critical refinement ------------------------------------------------

// F(z) = sum (-1)^(i-1)(2n+2) z^(2n+2)/(z^(2n+2)-b_i^(2n+2))
//        + (-1)^(n+1)(n+1) - n(n+1) z^(n+1)/(n z^(n+1)+1).
struct PnCritical {
    const PnSpec& spec;

    struct Ratio {
        std::complex<double> rho;
        bool small_side;
    };
    Ratio ratio(std::complex<double> z, const LogPolar& b) const {
        const int e = 2 * spec.n + 2;
        double lz = std::log(std::abs(z));
        Ratio r;
        if (lz <= b.log_mag) {
            double lr = e * (lz - b.log_mag);
            double ph = e * (std::arg(z) - b.phase);
            r.rho = std::exp(lr) * std::complex<double>(std::cos(ph), std::sin(ph));
            r.small_side = true;
        } else {
            double lr = e * (b.log_mag - lz);
            double ph = e * (b.phase - std::arg(z));
            r.rho = std::exp(lr) * std::complex<double>(std::cos(ph), std::sin(ph));
            r.small_side = false;
        }
        return r;
    }

    std::complex<double> F(std::complex<double> z) const {
        const int n = spec.n;
        std::complex<double> sum(FamilySpec::parity_sign(n + 1) * (n + 1), 0.0);
        for (int i = 1; i <= n - 1; ++i) {
            Ratio r = ratio(z, spec.b[static_cast<std::size_t>(i - 1)]);
            std::complex<double> denom = kOne - r.rho;
            std::complex<double> t = r.small_side ? -r.rho / denom : kOne / denom;
            sum += std::complex<double>(FamilySpec::parity_sign(i - 1) * (2 * n + 2), 0.0) * t;
        }
        std::complex<double> zn1 = cpow_uint(z, static_cast<unsigned>(n + 1));
        sum -= static_cast<double>(n) * static_cast<double>(n + 1) * zn1 /
               (static_cast<double>(n) * zn1 + kOne);
        return sum;
    }
    std::complex<double> Fp(std::complex<double> z) const {
        const int n = spec.n;
        std::complex<double> sum(0.0, 0.0);
        for (int i = 1; i <= n - 1; ++i) {
            Ratio r = ratio(z, spec.b[static_cast<std::size_t>(i - 1)]);
            std::complex<double> denom = kOne - r.rho;
            sum += std::complex<double>(FamilySpec::parity_sign(i - 1), 0.0) * r.rho / (denom * denom);
        }
        sum *= -std::complex<double>(static_cast<double>(2 * n + 2) * (2 * n + 2), 0.0) / z;
        std::complex<double> zn = cpow_uint(z, static_cast<unsigned>(n));
        std::complex<double> den = static_cast<double>(n) * zn * z + kOne;
        sum -= static_cast<double>(n) * static_cast<double>(n + 1) * static_cast<double>(n + 1) * zn /
               (den * den);
        return sum;
    }
};

}  // namespace

std::vector<ParabolicCluster> parabolic_critical(const PnSpec& spec) {
    const int n = spec.n;
    const double eps = pn_eps(spec);
    PnCritical eq{spec};
    std::vector<ParabolicCluster> out;
    for (int i = 1; i <= n - 1; ++i) {
        ParabolicCluster c;
        std::ostringstream os;
        os << "ring-" << i;
        c.name = os.str();
        std::complex<double> bi = spec.b[static_cast<std::size_t>(i - 1)].value().to_complex();
        const double bmag = std::abs(bi);
        c.bound = eps * bmag;
        const int count = 2 * n + 2;
        c.predicted.resize(static_cast<std::size_t>(count));
        c.refined.resize(static_cast<std::size_t>(count));
        c.residuals.resize(static_cast<std::size_t>(count));
        c.distances.resize(static_cast<std::size_t>(count));
        std::vector<std::string> failures(static_cast<std::size_t>(count));
        parallel_for(static_cast<std::size_t>(count), [&](std::size_t idx) {
            int j = static_cast<int>(idx) + 1;
            double th = kPi * (2.0 * j - 1.0) / count;
            std::complex<double> seed = bi * std::complex<double>(std::cos(th), std::sin(th));
            std::complex<double> z = seed;
            double res = 0.0;
            for (int it = 0; it < 100; ++it) {
                std::complex<double> f = eq.F(z);
                res = std::abs(f);
                if (res < 1e-13) break;
                std::complex<double> fp = eq.Fp(z);
                if (fp == std::complex<double>(0.0, 0.0)) break;
                std::complex<double> next = z - f / fp;
                double r = std::abs(next);
                if (r < 0.25 * bmag || r > 4.0 * bmag) break;
                if (next == z) break;
                z = next;
            }
            res = std::abs(eq.F(z));
            if (res > 1e-9) {
                failures[idx] = "parabolic_critical: Newton stalled on ring " + std::to_string(i);
                return;
            }
            c.predicted[idx] = seed;
            c.refined[idx] = z;
            c.residuals[idx] = res;
            c.distances[idx] = std::abs(z - seed);
        });
        for (const auto& fmsg : failures)
            if (!fmsg.empty()) throw ConvergenceError(fmsg);
        c.bound_ok = true;
        for (double d : c.distances)
            if (!(d < c.bound)) c.bound_ok = false;
        out.push_back(std::move(c));
    }
    return out;
}

int sum_of_check(int n, int i) {
    if (i < 1 || i > n - 1) throw DomainError("sum_of_check: need 1 <= i <= n-1");
    int s = 0;
    for (int j = 1; j < i; ++j) s += (j % 2 == 0) ? 1 : -1;
    for (int j = i + 1; j <= n - 1; ++j) s += (j % 2 == 1) ? 1 : -1;
    s += (1 + ((n + 1) % 2 == 0 ? 1 : -1)) / 2;
    return s;
}

RegionMap region_map(const PLambdaSpec& spec) {
    RegionMap r;
    r.inner_is_disk = true;
    r.inner_center = {-0.75, 0.0};
    r.inner_radius = 0.75;
    const double al = std::abs(spec.lambda);
    r.outer_radius = 2.0 / std::pow(al, 1.0 + static_cast<double>(spec.n) / spec.m);
    r.rings.push_back({0.5 / al, 2.0 / al});
    r.p = 0;
    r.n = 2;
    return r;
}

RegionMap region_map(const PnSpec& spec) {
    RegionMap r;
    const double eps = pn_eps(spec);
    r.inner_radius = eps;
    r.outer_radius = 1.0;
    for (int i = spec.n - 1; i >= 1; --i) {
        double bmag = std::exp(spec.b[static_cast<std::size_t>(i - 1)].log_mag);
        r.rings.push_back({bmag * (1.0 - 2.0 * eps), bmag * (1.0 + 2.0 * eps)});
    }
    r.p = 1;
    r.n = spec.n;
    return r;
}

MapFunc plambda_map(const PLambdaSpec& spec) {
    return [spec](std::complex<double> z) { return plambda_eval(spec, z); };
}

MapFunc pn_map(const PnSpec& spec) {
    return [spec](std::complex<double> z) { return pn_eval(spec, z); };
}

CertificationReport certify_parabolic(const PLambdaSpec& spec, std::size_t samples) {
    CertificationReport rep;
    rep.p = 0;
    rep.n = 2;
    {
        std::ostringstream os;
        os << "plambda:m=" << spec.m << ":n=" << spec.n << ":lambda=" << spec.lambda;
        rep.spec_hash = os.str();
    }
    const double al = std::abs(spec.lambda);
    rep.traps.mode = TrapMode::Budget;
    rep.traps.inner_radius = 0.75;
    rep.traps.outer_radius = 2.0 / std::pow(al, 1.0 + static_cast<double>(spec.n) / spec.m);
    rep.traps.rings.push_back({0.5 / al, 2.0 / al, false});
    rep.caveats.push_back("inner trap is the disk of radius 3/4 about -3/4 (parabolic point on its boundary)");

    bool inconclusive = false;
    try {
        rep.trap_checks = trap_checks_parabolic(spec, samples);
    } catch (const ResolutionError& e) {
        inconclusive = true;
        rep.failures.push_back(e.what());
    }

    std::vector<ParabolicCluster> clusters;
    try {
        clusters = parabolic_critical(spec);
        // Count the roots inside D(-1, |lambda|) by the argument principle,
        // in the shifted coordinate.
        NearMinusOne h{spec, xc_int_pow(XComplex(spec.lambda), spec.m + spec.n)};
        XFunc wfun = [&h](std::complex<double> t) { return XComplex(h.W(t)); };
        int count = winding_number_adaptive(wfun, {0.0, 0.0}, al, samples);
        rep.critical_checks.push_back(count_check("critical-count-near-fixed", count, spec.n - 1));
        rep.critical_checks.push_back(bound_check("near-fixed-localization", clusters[0]));
        rep.critical_checks.push_back(bound_check("ring-localization", clusters[1]));
        rep.critical_checks.push_back(residual_check("critical-residuals", clusters));

        CheckResult values;
        values.name = "critical-values-in-traps";
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& w : clusters[1].refined) {
            double lv = plambda_eval_x(spec, w).log_abs();
            worst = std::min(worst, lv - std::log(rep.traps.outer_radius));
        }
        for (const auto& w : clusters[0].refined) {
            double lv = std::log(std::abs(plambda_eval(spec, w) + std::complex<double>(0.75, 0.0)));
            worst = std::min(worst, std::log(0.75) - lv);
        }
        values.margin_log = worst;
        values.pass = worst > 0.0;
        rep.critical_checks.push_back(values);
    } catch (const ConvergenceError& e) {
        inconclusive = true;
        rep.failures.push_back(e.what());
    } catch (const ResolutionError& e) {
        inconclusive = true;
        rep.failures.push_back(e.what());
    }

    try {
        XFunc f = [&spec](std::complex<double> z) { return plambda_eval_x(spec, z); };
        double rho1 = geomean(3.0, 0.5 / al);
        double rho2 = geomean(2.0 / al, rep.traps.outer_radius);
        for (double r : {rho1, rho2})
            rep.winding.push_back({r, winding_number_adaptive(f, {0.0, 0.0}, r, samples)});
    } catch (const ResolutionError& e) {
        inconclusive = true;
        rep.failures.push_back(e.what());
    }

    bool winding_ok = false;
    if (rep.winding.size() == 2) {
        auto sig = extract_signature(rep.winding);
        winding_ok = sig && sig->p == 0 && sig->degrees == std::vector<int>{spec.n, spec.m};
        if (sig) rep.signature = *sig;
    }
    if (!winding_ok) rep.failures.push_back("winding profile inconsistent with covering degrees (n, m)");

    bool all_pass = winding_ok;
    for (const auto& c : rep.trap_checks) all_pass = all_pass && c.pass;
    for (const auto& c : rep.critical_checks) all_pass = all_pass && c.pass;
    for (const auto& c : rep.trap_checks)
        if (!c.pass) rep.failures.push_back(c.name + " failed");
    for (const auto& c : rep.critical_checks)
        if (!c.pass) rep.failures.push_back(c.name + " failed");
    rep.clusters.clear();
    rep.verdict = inconclusive ? Verdict::Inconclusive : (all_pass ? Verdict::Certified : Verdict::Failed);
    return rep;
}

CertificationReport certify_parabolic(const PnSpec& spec, std::size_t samples) {
    CertificationReport rep;
    rep.p = 1;
    rep.n = spec.n;
    {
        std::ostringstream os;
        os << "pn:n=" << spec.n << ":s=" << pn_scale(spec);
        rep.spec_hash = os.str();
    }
    const int n = spec.n;
    const double eps = pn_eps(spec);
    rep.traps.mode = TrapMode::Budget;
    rep.traps.inner_radius = eps;
    rep.traps.outer_radius = 1.0;
    for (int i = n - 1; i >= 1; --i) {
        double bmag = std::exp(spec.b[static_cast<std::size_t>(i - 1)].log_mag);
        rep.traps.rings.push_back({bmag * (1.0 - 2.0 * eps), bmag * (1.0 + 2.0 * eps), i % 2 == 1});
    }
    rep.caveats.push_back("outer trap is the exterior of the unit disk (parabolic point 1 on its boundary)");

    bool inconclusive = false;
    try {
        rep.trap_checks = trap_checks_parabolic(spec, samples);
    } catch (const ResolutionError& e) {
        inconclusive = true;
        rep.failures.push_back(e.what());
    }

    try {
        auto clusters = parabolic_critical(spec);
        for (const auto& c : clusters)
            rep.critical_checks.push_back(bound_check(c.name + "-localization", c));
        rep.critical_checks.push_back(residual_check("critical-residuals", clusters));

        CheckResult values;
        values.name = "critical-values-in-traps";
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < clusters.size(); ++k) {
            const int i = static_cast<int>(k) + 1;
            for (const auto& w : clusters[k].refined) {
                double lv = pn_eval_x(spec, w).log_abs();
                double m = (i % 2 == 1) ? std::log(eps) - lv : lv;  // into D_r or past the unit circle
                worst = std::min(worst, m);
            }
        }
        values.margin_log = worst;
        values.pass = worst > 0.0;
        rep.critical_checks.push_back(values);
    } catch (const ConvergenceError& e) {
        inconclusive = true;
        rep.failures.push_back(e.what());
    }

    try {
        XFunc f = [&spec](std::complex<double> z) { return pn_eval_x(spec, z); };
        std::vector<double> radii;
        radii.push_back(geomean(eps, rep.traps.rings.front().lo));
        for (std::size_t k = 0; k + 1 < rep.traps.rings.size(); ++k)
            radii.push_back(geomean(rep.traps.rings[k].hi, rep.traps.rings[k + 1].lo));
        double pole_circle = std::pow(1.0 / n, 1.0 / (n + 1));
        radii.push_back(geomean(rep.traps.rings.back().hi, pole_circle));
        for (double r : radii) rep.winding.push_back({r, winding_number_adaptive(f, {0.0, 0.0}, r, samples)});
    } catch (const ResolutionError& e) {
        inconclusive = true;
        rep.failures.push_back(e.what());
    }

    bool winding_ok = false;
    if (static_cast<int>(rep.winding.size()) == n) {
        auto sig = extract_signature(rep.winding);
        winding_ok = sig && sig->p == 1 && sig->degrees == std::vector<int>(static_cast<std::size_t>(n), n + 1);
        if (sig) rep.signature = *sig;
    }
    if (!winding_ok) rep.failures.push_back("winding profile inconsistent with the n+1 covering degrees");

    bool all_pass = winding_ok;
    for (const auto& c : rep.trap_checks) all_pass = all_pass && c.pass;
    for (const auto& c : rep.critical_checks) all_pass = all_pass && c.pass;
    for (const auto& c : rep.trap_checks)
        if (!c.pass) rep.failures.push_back(c.name + " failed");
    for (const auto& c : rep.critical_checks)
        if (!c.pass) rep.failures.push_back(c.name + " failed");
    rep.verdict = inconclusive ? Verdict::Inconclusive : (all_pass ? Verdict::Certified : Verdict::Failed);
    return rep;
}

}  // namespace cantor
