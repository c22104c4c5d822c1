#pragma once

#include <string>

#include "f1kgw/bundle.hpp"
#include "f1kgw/forms.hpp"

// vendored single-header nlohmann/json
#include <json.hpp>

namespace f1kgw {

inline constexpr const char* kFormatTag = "f1kgw/1";

using Json = nlohmann::json;

Json to_json(const Int& x);
Int int_from_json(const Json& j);
Json to_json(const Vec& v);
Vec vec_from_json(const Json& j);

Json to_json(const FgAbGroup& g);
FgAbGroup group_from_json(const Json& j);

/// Named monoid constructors: "F1", "F1[t]", "F1[t]/t^n=0", "F1[t]/t^n=t^d",
/// "F1[Z/k]", "free(n)", "laurent(n)", "wedge(ts)".
PointedMonoid monoid_from_name(const std::string& name);
Json to_json(const PointedMonoid& m);
PointedMonoid monoid_from_json(const Json& j);

/// Built-in schemes: "point", "A1", "A2", "P1", "P2", "P3", "P1xP1",
/// "P1xGm", "triangle", and "Pn[<monoid>]" for an Exponent base.
MonoidScheme scheme_from_name(const std::string& name);
Json to_json(const MonoidScheme& x);
MonoidScheme scheme_from_json(const Json& j);

Json to_json(const CechBundle& b);
CechBundle bundle_from_json(const Json& j, const MonoidScheme& scheme);

Json to_json(const FinSuppMap& m);

Json form_to_json(const SymForm& f);
SymForm form_from_json(const Json& j);

}  // namespace f1kgw
