#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cantor/errors.hpp"
#include "cantor/json_io.hpp"
#include "cantor/sampling.hpp"

using namespace cantor;

namespace {

XFunc monomial(int k) {
    return [k](std::complex<double> z) { return xc_int_pow(XComplex(z), k); };
}

// prod (z - roots[i]) / prod (z - poles[i]) as an XFunc
XFunc factored(std::vector<std::complex<double>> roots, std::vector<std::complex<double>> poles) {
    return [roots = std::move(roots), poles = std::move(poles)](std::complex<double> z) {
        XComplex acc = XComplex::one();
        for (const auto& r : roots) acc = xc_mul(acc, XComplex(z - r));
        for (const auto& p : poles) acc = xc_div(acc, XComplex(z - p));
        return acc;
    };
}

}  // namespace

TEST_CASE("z^3 on the unit circle winds 3 times") {
    CHECK(winding_number(sample_circle(monomial(3), {0.0, 0.0}, 1.0, 4096)) == 3);
}

TEST_CASE("1/z^2 winds -2 on any circle about the origin") {
    for (double r : {0.01, 1.0, 250.0})
        CHECK(winding_number(sample_circle(monomial(-2), {0.0, 0.0}, r, 4096)) == -2);
}

TEST_CASE("the explicit degree-(5,5,5,5) example winds -5 on |z| = 0.02") {
    Preset p = preset("fig1");
    const auto& spec = std::get<FamilySpec>(p.value);
    XFunc f = [&spec](std::complex<double> z) { return eval(spec, z); };
    // pole of order 5 at 0, ten zeros inside (|a_1| ring), ten poles (|a_2| ring)
    CHECK(winding_number_adaptive(f, {0.0, 0.0}, 0.02) == -5);
}

TEST_CASE("winding equals zeros minus poles for random factored maps") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> rad(0.05, 3.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    std::uniform_int_distribution<int> nroots(0, 6), npoles(0, 6);
    for (int trial = 0; trial < 60; ++trial) {
        double circle_r = 1.0;
        std::vector<std::complex<double>> roots, poles;
        int inside = 0;
        auto place = [&](std::vector<std::complex<double>>& v, int count, int sign) {
            for (int i = 0; i < count; ++i) {
                double r = rad(rng);
                if (std::fabs(r - circle_r) < 0.02) r += 0.05;  // keep off the contour
                double a = ang(rng);
                v.emplace_back(r * std::cos(a), r * std::sin(a));
                if (r < circle_r) inside += sign;
            }
        };
        place(roots, nroots(rng), +1);
        place(poles, npoles(rng), -1);
        XFunc f = factored(roots, poles);
        CHECK(winding_number_adaptive(f, {0.0, 0.0}, circle_r) == inside);
    }
}

TEST_CASE("zero sample raises ResolutionError") {
    XFunc f = [](std::complex<double> z) { return XComplex(z - std::complex<double>(1.0, 0.0)); };
    // samples start at angle 0, so z = 1 gives an exact zero
    CHECK_THROWS_AS(winding_number(sample_circle(f, {0.0, 0.0}, 1.0, 4096)), ResolutionError);
}

TEST_CASE("argument jump guard catches undersampling and doubling resolves it") {
    // z^20 on 64 samples jumps by 1.96 rad per step, over the pi/2 guard
    auto samples = sample_circle(monomial(20), {0.0, 0.0}, 1.0, 64);
    CHECK_THROWS_AS(winding_number(samples), ResolutionError);
    CHECK(winding_number_adaptive(monomial(20), {0.0, 0.0}, 1.0, 64) == 20);
}

TEST_CASE("circles off the origin count enclosed roots") {
    XFunc f = factored({{1.0, 0.0}, {1.2, 0.1}, {-5.0, 0.0}}, {{0.9, -0.05}});
    CHECK(winding_number_adaptive(f, {1.0, 0.0}, 0.5) == 2 - 1);
}
