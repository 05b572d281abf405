#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "cantor/errors.hpp"
#include "cantor/xcomplex.hpp"

namespace cantor {

inline constexpr double kPi = 3.14159265358979323846;

// Samples of a function along a circle, in angular order starting at angle 0.
// `values` holds exponent-stripped mantissas (same argument as the true
// values), so curves whose magnitude under/overflows doubles still carry
// usable phase information.  count is a power of two, >= 64.
struct CircleSamples {
    std::complex<double> center;
    double radius = 1.0;
    std::vector<std::complex<double>> values;

    std::size_t count() const { return values.size(); }
};

using XFunc = std::function<XComplex(std::complex<double>)>;

inline CircleSamples sample_circle(const XFunc& f, std::complex<double> center, double radius,
                                   std::size_t count) {
    CircleSamples s;
    s.center = center;
    s.radius = radius;
    s.values.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count);
        std::complex<double> z = center + radius * std::complex<double>(std::cos(th), std::sin(th));
        s.values[k] = f(z).mantissa();
    }
    return s;
}

// Total change of argument along the closed curve divided by 2*pi, by
// unwrapped phase summation with nearest-branch selection per step.  A zero
// sample or an argument jump >= pi/2 raises ResolutionError so the caller can
// resample denser; the result is an exact integer, never a silently wrong one.
inline int winding_number(const CircleSamples& s) {
    const std::size_t n = s.count();
    if (n < 64) throw ResolutionError("winding_number: need at least 64 samples");
    double total = 0.0;
    double prev = std::arg(s.values[0]);
    if (s.values[0] == std::complex<double>(0.0, 0.0))
        throw ResolutionError("winding_number: zero sample at index 0");
    for (std::size_t k = 1; k <= n; ++k) {
        const std::complex<double>& v = s.values[k % n];
        if (v == std::complex<double>(0.0, 0.0))
            throw ResolutionError("winding_number: zero sample");
        double a = std::arg(v);
        double d = a - prev;
        while (d > kPi) d -= 2.0 * kPi;
        while (d < -kPi) d += 2.0 * kPi;
        if (std::fabs(d) >= kPi / 2.0)
            throw ResolutionError("winding_number: argument jump >= pi/2, resample denser");
        total += d;
        prev = a;
    }
    double turns = total / (2.0 * kPi);
    long r = std::lround(turns);
    if (std::fabs(turns - static_cast<double>(r)) > 0.25)
        throw ResolutionError("winding_number: phase sum not near an integer");
    return static_cast<int>(r);
}

inline constexpr std::size_t kDefaultSamples = 4096;
inline constexpr std::size_t kMaxSamples = std::size_t(1) << 22;

// winding_number with automatic doubling on ResolutionError.
inline int winding_number_adaptive(const XFunc& f, std::complex<double> center, double radius,
                                   std::size_t start = kDefaultSamples) {
    for (std::size_t count = start; count <= kMaxSamples; count *= 2) {
        try {
            return winding_number(sample_circle(f, center, radius, count));
        } catch (const ResolutionError&) {
            if (count * 2 > kMaxSamples) throw;
        }
    }
    throw ResolutionError("winding_number_adaptive: gave up above 2^22 samples");
}

// min / max of log|f| over one circle.  Pole or zero hits simply produce
// +/-inf entries; callers treat those as honest extremes.
struct LogRange {
    double min_log = 0.0;
    double max_log = 0.0;
};

inline LogRange log_abs_range_on_circle(const XFunc& f, std::complex<double> center, double radius,
                                        std::size_t count) {
    LogRange r;
    r.min_log = std::numeric_limits<double>::infinity();
    r.max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < count; ++k) {
        double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count);
        std::complex<double> z = center + radius * std::complex<double>(std::cos(th), std::sin(th));
        double la = f(z).log_abs();
        r.min_log = std::min(r.min_log, la);
        r.max_log = std::max(r.max_log, la);
    }
    return r;
}

}  // namespace cantor
