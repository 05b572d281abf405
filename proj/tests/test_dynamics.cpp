#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cantor/dynamics.hpp"
#include "cantor/errors.hpp"
#include "cantor/json_io.hpp"
#include "cantor/params.hpp"

using namespace cantor;

namespace {

struct Fig1 {
    FamilySpec spec;
    CertificationReport report;
    Fig1() : spec(std::get<FamilySpec>(preset("fig1").value)), report(certify(spec)) {}
};

const Fig1& fig1() {
    static Fig1 f;
    return f;
}

}  // namespace

TEST_CASE("a point already inside the inner trap classifies in zero steps") {
    auto [spec, budget] = synth(1, {4, 4, 4}, 1.0);  // n odd: inner trap is invariant
    CertificationReport rep = certify(spec);
    REQUIRE(rep.certified());
    std::complex<double> z(0.5 * rep.traps.inner_radius, 0.0);
    OrbitClass oc = classify(spec, rep, z);
    CHECK(oc.outcome == Outcome::Basin0);
    CHECK(oc.entered == TrapSide::Inner);
    CHECK(oc.steps == 0);
}

TEST_CASE("even n sends inner-trap entrants to the basin of infinity") {
    const auto& f = fig1();  // p = 1, n = 4
    REQUIRE(f.report.certified());
    std::complex<double> z(0.5 * f.report.traps.inner_radius, 0.0);
    OrbitClass oc = classify(f.spec, f.report, z);
    CHECK(oc.entered == TrapSide::Inner);
    CHECK(oc.outcome == Outcome::BasinInfinity);
}

TEST_CASE("first symbol is the containing band") {
    const auto& f = fig1();
    // positive real axis between |a_1| and |a_2| is band 1
    std::complex<double> z(1e-3, 0.0);
    OrbitClass oc = classify(f.spec, f.report, z, 64);
    REQUIRE(!oc.itinerary.empty());
    CHECK(oc.itinerary.front() == 1);
}

TEST_CASE("itinerary shift property is exact") {
    const auto& f = fig1();
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.14159265358979);
    std::uniform_int_distribution<int> sym(0, 3);
    MapFunc fm = family_map(f.spec);
    RegionMap region = region_map(f.report);
    int tested = 0;
    for (int trial = 0; trial < 150 && tested < 100; ++trial) {
        std::vector<int> prefix;
        for (int i = 0; i < 7; ++i) prefix.push_back(sym(rng));
        double theta = ang(rng);
        RadiusInterval iv;
        try {
            iv = locate_component(fm, region, prefix, theta);
        } catch (const NotBracketed&) {
            continue;
        }
        double r = std::exp(0.5 * (std::log(iv.lo) + std::log(iv.hi)));
        std::complex<double> z = r * std::complex<double>(std::cos(theta), std::sin(theta));
        ItineraryResult base = itinerary(f.spec, f.report, z, 6);
        if (base.escaped) continue;
        ItineraryResult shifted = itinerary(f.spec, f.report, fm(z), 5);
        REQUIRE(!shifted.escaped);
        CHECK(std::vector<int>(base.symbols.begin() + 1, base.symbols.end()) == shifted.symbols);
        ++tested;
    }
    CHECK(tested >= 100);
}

TEST_CASE("depth-1 intervals are the bands, pairwise disjoint and ordered") {
    const auto& f = fig1();
    std::vector<RadiusInterval> ivs;
    for (int b = 0; b < 4; ++b) ivs.push_back(locate_component(f.spec, f.report, {b}, 0.0));
    // prefix "0" sits between the inner trap and the first ring
    CHECK(ivs[0].lo >= f.report.traps.inner_radius);
    CHECK(ivs[0].hi <= f.report.traps.rings[0].lo);
    for (int b = 0; b + 1 < 4; ++b) CHECK(ivs[b].hi < ivs[b + 1].lo);
}

TEST_CASE("deeper prefixes nest strictly inside their parents") {
    const auto& f = fig1();
    auto parent = locate_component(f.spec, f.report, {3}, 0.0);
    auto child = locate_component(f.spec, f.report, {3, 0}, 0.0);
    CHECK(child.lo >= parent.lo);
    CHECK(child.hi <= parent.hi);
    CHECK(child.hi - child.lo < parent.hi - parent.lo);
    auto grandchild = locate_component(f.spec, f.report, {3, 0, 2}, 0.0);
    CHECK(grandchild.lo >= child.lo);
    CHECK(grandchild.hi <= child.hi);
    // located points realize their prefixes
    double r = 0.5 * (grandchild.lo + grandchild.hi);
    ItineraryResult it = itinerary(f.spec, f.report, {r, 0.0}, 3);
    REQUIRE(!it.escaped);
    CHECK(it.symbols == std::vector<int>{3, 0, 2});
}

TEST_CASE("unrealizable prefixes raise NotBracketed") {
    const auto& f = fig1();
    MapFunc fm = family_map(f.spec);
    RegionMap region = region_map(f.report);
    CHECK_THROWS_AS(locate_component(fm, region, {0, 9}, 0.0), DomainError);  // symbol out of range
}

TEST_CASE("critical points of a certified spec always classify into a basin") {
    auto [spec, budget] = synth(1, {4, 5, 4}, 1.0);
    CertificationReport rep = certify(spec);
    REQUIRE(rep.certified());
    for (const auto& c : rep.clusters)
        for (const auto& w : c.refined) {
            OrbitClass oc = classify(spec, rep, w, 2000);
            CHECK(oc.outcome != Outcome::Undecided);
        }
}

TEST_CASE("undecided fraction shrinks as the iteration budget doubles") {
    const auto& f = fig1();
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> logr(std::log(f.report.traps.inner_radius),
                                                std::log(f.report.traps.outer_radius));
    std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.14159265358979);
    std::vector<std::complex<double>> pts;
    for (int i = 0; i < 4000; ++i)
        pts.push_back(std::polar(std::exp(logr(rng)), ang(rng)));
    int prev = static_cast<int>(pts.size()) + 1;
    for (int budget_iter : {4, 8, 16, 64}) {
        int undecided = 0;
        for (const auto& z : pts)
            if (classify(f.spec, f.report, z, budget_iter).outcome == Outcome::Undecided) ++undecided;
        CHECK(undecided <= prev);
        prev = undecided;
    }
    CHECK(prev < 200);  // nearly everything resolves with 64 iterations
}

TEST_CASE("two-symbol specs only emit symbols 0 and 1") {
    const auto spec = std::get<FamilySpec>(preset("fig1-mcmullen").value);
    CertificationReport rep = certify(spec);
    REQUIRE(rep.certified());
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> logr(std::log(rep.traps.inner_radius),
                                                std::log(rep.traps.outer_radius));
    std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.14159265358979);
    bool saw0 = false, saw1 = false;
    for (int i = 0; i < 2000; ++i) {
        std::complex<double> z = std::polar(std::exp(logr(rng)), ang(rng));
        for (int s : classify(spec, rep, z, 50).itinerary) {
            CHECK((s == 0 || s == 1));
            saw0 = saw0 || s == 0;
            saw1 = saw1 || s == 1;
        }
    }
    CHECK(saw0);
    CHECK(saw1);
}

TEST_CASE("pole hits during iteration propagate as PoleError") {
    // a degenerate region whose inner trap is empty forces evaluation at the
    // pole z = 0 instead of classifying it
    const auto& f = fig1();
    RegionMap region = region_map(f.report);
    region.inner_radius = 0.0;
    CHECK_THROWS_AS(std::ignore = classify(family_map(f.spec), region, {0.0, 0.0}, 10), PoleError);
}
