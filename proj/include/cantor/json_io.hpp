#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "cantor/certify.hpp"
#include "cantor/critical.hpp"
#include "cantor/family.hpp"
#include "cantor/params.hpp"
#include "cantor/parabolic.hpp"

namespace cantor {

using Json = nlohmann::ordered_json;

// Canonical on-disk spec: {"p":..., "degrees":[...], "params":[{"log10_mag":..., "phase_rad":...}]}.
Json spec_to_json(const FamilySpec& spec);
FamilySpec spec_from_json(const Json& j);

Json budget_to_json(const ParamBudget& b);
Json audit_to_json(const AuditReport& rep);
Json clusters_to_json(const std::vector<CriticalCluster>& clusters);
Json clusters_to_json(const std::vector<ParabolicCluster>& clusters);
Json report_to_json(const CertificationReport& rep);
Json signature_to_json(const Signature& s);
Json orbit_to_json(const OrbitClass& oc);

// Named presets: fig1 (the explicit degree-(5,5,5,5) example), fig1-mcmullen
// (z^3 + 0.001/z^3), fig4 (P_lambda with m=3, n=2, lambda=1e-10), fig5 (P_3
// at the admissible scale 1/225).
struct Preset {
    std::string name;
    std::variant<FamilySpec, PLambdaSpec, PnSpec> value;
};
Preset preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace cantor
