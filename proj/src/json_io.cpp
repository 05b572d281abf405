#include "cantor/json_io.hpp"

#include <cmath>

#include "cantor/errors.hpp"

namespace cantor {

namespace {
constexpr double kLn10 = 2.302585092994045684;

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "Certified";
        case Verdict::Failed: return "Failed";
        default: return "Inconclusive";
    }
}

Json check_to_json(const CheckResult& c) {
    return Json{{"name", c.name}, {"margin_log", c.margin_log}, {"pass", c.pass}};
}

Json complex_to_json(std::complex<double> z) { return Json{z.real(), z.imag()}; }

}  // namespace

Json spec_to_json(const FamilySpec& spec) {
    Json j;
    j["p"] = spec.p;
    j["degrees"] = spec.degrees;
    Json params = Json::array();
    for (const auto& a : spec.params)
        params.push_back(Json{{"log10_mag", a.log_mag / kLn10}, {"phase_rad", a.phase}});
    j["params"] = params;
    return j;
}

FamilySpec spec_from_json(const Json& j) {
    FamilySpec spec;
    if (!j.contains("p") || !j["p"].is_number_integer())
        throw DomainError("spec JSON: missing or non-integer field \"p\"");
    spec.p = j["p"].get<int>();
    if (!j.contains("degrees") || !j["degrees"].is_array())
        throw DomainError("spec JSON: missing array field \"degrees\"");
    for (const auto& d : j["degrees"]) {
        if (!d.is_number_integer()) throw DomainError("spec JSON: \"degrees\" entries must be integers");
        spec.degrees.push_back(d.get<int>());
    }
    if (!j.contains("params") || !j["params"].is_array())
        throw DomainError("spec JSON: missing array field \"params\"");
    for (const auto& a : j["params"]) {
        if (!a.contains("log10_mag") || !a["log10_mag"].is_number())
            throw DomainError("spec JSON: params entry missing numeric \"log10_mag\"");
        LogPolar lp;
        lp.log_mag = a["log10_mag"].get<double>() * kLn10;
        lp.phase = a.value("phase_rad", 0.0);
        spec.params.push_back(lp);
    }
    return spec;
}

Json budget_to_json(const ParamBudget& b) {
    Json j;
    j["p"] = b.p;
    j["xi"] = b.xi;
    j["K"] = b.K;
    j["log_s"] = b.log_s;
    j["log_u"] = b.log_u;
    j["log_v"] = b.log_v;
    j["s"] = b.s();
    j["u"] = b.u();
    j["v"] = b.v();
    j["log_a"] = b.log_a;
    j["scale_bound_terms_log"] = b.bound_terms;
    return j;
}

Json audit_to_json(const AuditReport& rep) {
    Json arr = Json::array();
    for (const auto& e : rep.entries)
        arr.push_back(Json{{"name", e.name},
                           {"lhs_log", e.lhs_log},
                           {"rhs_log", e.rhs_log},
                           {"margin_log", e.margin_log},
                           {"pass", e.pass}});
    return arr;
}

Json clusters_to_json(const std::vector<CriticalCluster>& clusters) {
    Json arr = Json::array();
    for (const auto& c : clusters) {
        Json j;
        j["ring_index"] = c.ring_index;
        j["r_i"] = c.r_i;
        j["bound"] = c.bound;
        Json pred = Json::array(), refined = Json::array();
        for (const auto& w : c.predicted) pred.push_back(complex_to_json(w));
        for (const auto& w : c.refined) refined.push_back(complex_to_json(w));
        j["predicted"] = pred;
        j["refined"] = refined;
        j["residuals"] = c.residuals;
        j["distances"] = c.distances;
        j["bound_ok"] = c.bound_ok;
        j["distinct_ok"] = c.distinct_ok;
        arr.push_back(j);
    }
    return arr;
}

Json clusters_to_json(const std::vector<ParabolicCluster>& clusters) {
    Json arr = Json::array();
    for (const auto& c : clusters) {
        Json j;
        j["name"] = c.name;
        j["bound"] = c.bound;
        Json pred = Json::array(), refined = Json::array();
        for (const auto& w : c.predicted) pred.push_back(complex_to_json(w));
        for (const auto& w : c.refined) refined.push_back(complex_to_json(w));
        j["predicted"] = pred;
        j["refined"] = refined;
        j["residuals"] = c.residuals;
        j["distances"] = c.distances;
        j["bound_ok"] = c.bound_ok;
        arr.push_back(j);
    }
    return arr;
}

Json signature_to_json(const Signature& s) {
    return Json{{"p", s.p}, {"n", s.n}, {"degrees", s.degrees}};
}

Json report_to_json(const CertificationReport& rep) {
    Json j;
    j["spec_hash"] = rep.spec_hash;
    j["trap_mode"] = rep.traps.mode == TrapMode::Budget ? "budget" : "empirical";
    j["inner_trap_radius"] = rep.traps.inner_radius;
    j["outer_trap_radius"] = rep.traps.outer_radius;
    Json rings = Json::array();
    for (const auto& r : rep.traps.rings)
        rings.push_back(Json{{"lo", r.lo}, {"hi", r.hi}, {"maps_inner", r.maps_inner}});
    j["rings"] = rings;
    Json tc = Json::array();
    for (const auto& c : rep.trap_checks) tc.push_back(check_to_json(c));
    j["trap_checks"] = tc;
    Json rc = Json::array();
    for (const auto& c : rep.ring_checks) rc.push_back(check_to_json(c));
    j["ring_checks"] = rc;
    Json cc = Json::array();
    for (const auto& c : rep.critical_checks) cc.push_back(check_to_json(c));
    j["critical_checks"] = cc;
    Json wind = Json::array();
    for (const auto& w : rep.winding) wind.push_back(Json{{"radius", w.radius}, {"degree", w.degree}});
    j["winding_profile"] = wind;
    j["signature"] = signature_to_json(rep.signature);
    j["verdict"] = verdict_name(rep.verdict);
    j["failures"] = rep.failures;
    j["caveats"] = rep.caveats;
    if (!rep.clusters.empty()) j["critical_clusters"] = clusters_to_json(rep.clusters);
    return j;
}

Json orbit_to_json(const OrbitClass& oc) {
    Json j;
    switch (oc.outcome) {
        case Outcome::Basin0: j["outcome"] = "Basin0"; break;
        case Outcome::BasinInfinity: j["outcome"] = "BasinInfinity"; break;
        default: j["outcome"] = "Undecided"; break;
    }
    switch (oc.entered) {
        case TrapSide::Inner: j["entered"] = "inner"; break;
        case TrapSide::Outer: j["entered"] = "outer"; break;
        default: j["entered"] = "none"; break;
    }
    j["steps"] = oc.steps;
    j["itinerary"] = oc.itinerary;
    return j;
}

Preset preset(const std::string& name) {
    if (name == "fig1") {
        FamilySpec spec;
        spec.p = 1;
        spec.degrees = {5, 5, 5, 5};
        spec.params = {LogPolar{std::log(0.00025), 0.0}, LogPolar{std::log(0.005), 0.0},
                       LogPolar{std::log(0.1), 0.0}};
        return {name, spec};
    }
    if (name == "fig1-mcmullen") {
        // z^3 + 0.001/z^3 written in family form: a_1^6 = -0.001.
        FamilySpec spec;
        spec.p = 1;
        spec.degrees = {3, 3};
        spec.params = {LogPolar{std::log(0.001) / 6.0, kPi / 6.0}};
        return {name, spec};
    }
    if (name == "fig4") {
        PLambdaSpec spec;
        spec.m = 3;
        spec.n = 2;
        spec.lambda = {1e-10, 0.0};
        return {name, spec};
    }
    if (name == "fig5") {
        return {name, make_pn(3, 1.0 / 225.0)};
    }
    throw DomainError("unknown preset \"" + name + "\" (have: fig1, fig1-mcmullen, fig4, fig5)");
}

std::vector<std::string> preset_names() { return {"fig1", "fig1-mcmullen", "fig4", "fig5"}; }

}  // namespace cantor
