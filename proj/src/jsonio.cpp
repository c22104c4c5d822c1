#include "f1kgw/jsonio.hpp"

#include <regex>

#include "f1kgw/errors.hpp"

namespace f1kgw {

Json to_json(const Int& x) {
  static const Int lo = std::numeric_limits<int64_t>::min();
  static const Int hi = std::numeric_limits<int64_t>::max();
  if (x >= lo && x <= hi) return Json(x.convert_to<int64_t>());
  return Json(x.str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<int64_t>());
  require(j.is_string(), "BadInput", "expected an integer or integer string");
  return Int(j.get<std::string>());
}

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Vec vec_from_json(const Json& j) {
  require(j.is_array(), "BadInput", "expected a coordinate array");
  Vec out;
  for (const auto& x : j) out.push_back(int_from_json(x));
  return out;
}

Json to_json(const FgAbGroup& g) {
  Json out;
  out["free_rank"] = g.free_rank();
  out["torsion"] = to_json(g.torsion());
  return out;
}

FgAbGroup group_from_json(const Json& j) {
  return FgAbGroup(vec_from_json(j.at("torsion")), j.at("free_rank").get<size_t>());
}

// ---------------------------------------------------------------------------
// monoids

PointedMonoid monoid_from_name(const std::string& name) {
  std::smatch m;
  if (name == "F1") return PointedMonoid::f1();
  if (name == "F1[t]") return PointedMonoid::free_monoid(1);
  if (name == "wedge(ts)" || name == "F1[t,s]/ts=0") return PointedMonoid::ts_wedge();
  if (std::regex_match(name, m, std::regex(R"(F1\[t\]/t\^(\d+)=0)")))
    return PointedMonoid::truncated_poly(std::stoul(m[1]));
  if (std::regex_match(name, m, std::regex(R"(F1\[t\]/t\^(\d+)=t\^(\d+))")))
    return PointedMonoid::stabilized_poly(std::stoul(m[1]), std::stoul(m[2]));
  if (std::regex_match(name, m, std::regex(R"(F1\[Z/(\d+)\])")))
    return PointedMonoid::group_monoid(FgAbGroup::cyclic(std::stoul(m[1])));
  if (std::regex_match(name, m, std::regex(R"(free\((\d+)\))")))
    return PointedMonoid::free_monoid(std::stoul(m[1]));
  if (std::regex_match(name, m, std::regex(R"(laurent\((\d+)\))")))
    return PointedMonoid::laurent(std::stoul(m[1]));
  fail("UsageError", "unknown monoid name: " + name);
}

Json to_json(const PointedMonoid& m) {
  Json out;
  out["format"] = kFormatTag;
  switch (m.backend()) {
    case Backend::FiniteTable: {
      out["backend"] = "finite";
      Json table = Json::array();
      const size_t n = *m.size();
      for (size_t i = 0; i < n; ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < n; ++j) row.push_back(m.table_mul(i, j));
        table.push_back(row);
      }
      out["table"] = table;
      break;
    }
    case Backend::Exponent: {
      out["backend"] = "exponent";
      out["ambient"] = to_json(m.ambient());
      Json gens = Json::array();
      for (const auto& g : m.exp_generators()) gens.push_back(to_json(g));
      out["generators"] = gens;
      break;
    }
    case Backend::Wedge: {
      out["backend"] = "wedge";
      out["ambient"] = to_json(m.ambient());
      Json units = Json::array();
      std::vector<Json> comps(m.wedge_component_count(), Json::array());
      const auto& gens = m.wedge_all_generators();
      const auto& owner = m.wedge_component_of_gen();
      for (size_t i = 0; i < gens.size(); ++i) {
        if (owner[i] == MonoidElement::kUnitComponent)
          units.push_back(to_json(gens[i]));
        else
          comps[owner[i]].push_back(to_json(gens[i]));
      }
      out["units"] = units;
      out["components"] = comps;
      break;
    }
  }
  return out;
}

PointedMonoid monoid_from_json(const Json& j) {
  if (j.is_string()) return monoid_from_name(j.get<std::string>());
  const std::string backend = j.at("backend").get<std::string>();
  if (backend == "finite") {
    std::vector<std::vector<size_t>> table;
    for (const auto& row : j.at("table")) table.push_back(row.get<std::vector<size_t>>());
    return PointedMonoid::finite_table(std::move(table));
  }
  if (backend == "exponent") {
    FgAbGroup g = group_from_json(j.at("ambient"));
    std::vector<Vec> gens;
    for (const auto& x : j.at("generators")) gens.push_back(vec_from_json(x));
    return PointedMonoid::exponent(std::move(g), std::move(gens));
  }
  if (backend == "wedge") {
    FgAbGroup g = group_from_json(j.at("ambient"));
    std::vector<Vec> units;
    for (const auto& x : j.at("units")) units.push_back(vec_from_json(x));
    std::vector<std::vector<Vec>> comps;
    for (const auto& c : j.at("components")) {
      std::vector<Vec> gens;
      for (const auto& x : c) gens.push_back(vec_from_json(x));
      comps.push_back(std::move(gens));
    }
    return PointedMonoid::wedge(std::move(g), std::move(units), std::move(comps));
  }
  fail("BadInput", "unknown monoid backend: " + backend);
}

// ---------------------------------------------------------------------------
// schemes

MonoidScheme scheme_from_name(const std::string& name) {
  if (name == "point" || name == "F1") return MonoidScheme::spec(PointedMonoid::f1());
  if (name == "A1") return MonoidScheme::affine_space(1);
  if (name == "A2") return MonoidScheme::affine_space(2);
  if (name == "P1") return MonoidScheme::projective_space(1, PointedMonoid::f1());
  if (name == "P2") return MonoidScheme::projective_space(2, PointedMonoid::f1());
  if (name == "P3") return MonoidScheme::projective_space(3, PointedMonoid::f1());
  if (name == "P1xP1") return MonoidScheme::p1_x_p1();
  if (name == "P1xGm") return MonoidScheme::p1_x_gm();
  if (name == "triangle") return MonoidScheme::triangle();
  std::smatch m;
  if (std::regex_match(name, m, std::regex(R"(P(\d+)\[(.+)\])")))
    return MonoidScheme::projective_space(std::stoul(m[1]), monoid_from_name(m[2]));
  fail("UsageError", "unknown scheme name: " + name);
}

Json to_json(const MonoidScheme& x) {
  Json out;
  out["format"] = kFormatTag;
  require(x.has_ambient(), "UnsupportedModel",
          "only ambient-model schemes serialize; use built-in names otherwise");
  out["ambient"] = to_json(x.ambient());
  Json charts = Json::array();
  for (size_t i = 0; i < x.chart_count(); ++i) {
    Json chart;
    Json gens = Json::array();
    for (const auto& g : x.chart(i).exp_generators()) gens.push_back(to_json(g));
    chart["generators"] = gens;
    chart["name"] = x.chart_names()[i];
    charts.push_back(chart);
  }
  out["charts"] = charts;
  return out;
}

MonoidScheme scheme_from_json(const Json& j) {
  if (j.is_string()) return scheme_from_name(j.get<std::string>());
  FgAbGroup amb = group_from_json(j.at("ambient"));
  std::vector<std::vector<Vec>> chart_gens;
  std::vector<std::string> names;
  for (const auto& chart : j.at("charts")) {
    std::vector<Vec> gens;
    for (const auto& g : chart.at("generators")) gens.push_back(vec_from_json(g));
    chart_gens.push_back(std::move(gens));
    if (chart.contains("name")) names.push_back(chart.at("name").get<std::string>());
  }
  if (names.size() != chart_gens.size()) names.clear();
  return MonoidScheme::ambient_model(std::move(amb), std::move(chart_gens), std::move(names));
}

// ---------------------------------------------------------------------------
// bundles

Json to_json(const CechBundle& b) {
  Json out;
  out["format"] = kFormatTag;
  out["rank"] = b.rank();
  Json trs = Json::array();
  for (const auto& [key, u] : b.stored_transitions()) {
    Json t;
    t["pair"] = {key.first, key.second};
    t["perm"] = u.perm;
    Json units = Json::array();
    for (const auto& c : u.units) units.push_back(to_json(c));
    t["units"] = units;
    trs.push_back(t);
  }
  out["transitions"] = trs;
  return out;
}

CechBundle bundle_from_json(const Json& j, const MonoidScheme& scheme) {
  const size_t rank = j.at("rank").get<size_t>();
  std::map<std::pair<size_t, size_t>, UnitPerm> trs;
  for (const auto& t : j.at("transitions")) {
    auto pair = t.at("pair").get<std::vector<size_t>>();
    require(pair.size() == 2, "BadInput", "transition pair must have two chart indices");
    UnitPerm u;
    u.perm = t.at("perm").get<std::vector<size_t>>();
    for (const auto& c : t.at("units")) u.units.push_back(vec_from_json(c));
    trs.emplace(std::make_pair(pair[0], pair[1]), std::move(u));
  }
  return CechBundle::make(scheme, rank, std::move(trs));
}

Json to_json(const FinSuppMap& m) {
  Json out;
  out["format"] = kFormatTag;
  out["descriptor"] = m.descriptor().to_string();
  Json terms = Json::array();
  for (const auto& [key, coeff] : m.terms()) terms.push_back({to_json(key), to_json(coeff)});
  out["terms"] = terms;
  return out;
}

// ---------------------------------------------------------------------------
// forms

Json form_to_json(const SymForm& f) {
  Json out;
  out["format"] = kFormatTag;
  out["monoid"] = to_json(f.datum().monoid);
  if (f.datum().sigma.is_identity()) {
    out["sigma"] = "id";
  } else {
    out["sigma"] = "inverse";  // the ambient negation, the only nontrivial builtin
  }
  auto eps = f.datum().monoid.units().coords_of(f.datum().epsilon);
  out["epsilon"] = eps ? to_json(*eps) : Json();
  out["size"] = f.rank();
  Json entries = Json::array();
  for (size_t col = 0; col < f.rank(); ++col) {
    auto e = f.matrix().col_support(col);
    entries.push_back({e->first, col, to_json(e->second.coords)});
  }
  out["entries"] = entries;
  return out;
}

SymForm form_from_json(const Json& j) {
  PointedMonoid m = monoid_from_json(j.at("monoid"));
  MonoidInvolution sigma = MonoidInvolution::identity(m);
  if (j.contains("sigma") && j.at("sigma").is_string() &&
      j.at("sigma").get<std::string>() == "inverse") {
    require(m.backend() == Backend::Exponent, "BadInput",
            "the inverse involution needs an Exponent monoid");
    const size_t d = m.ambient().dim();
    IntMatrix neg = IntMatrix::identity(d);
    for (size_t i = 0; i < d; ++i) neg.at(i, i) = -1;
    sigma = MonoidInvolution::ambient_matrix(m, neg);
  }
  MonoidElement eps = m.one_elem();
  if (j.contains("epsilon") && !j.at("epsilon").is_null())
    eps = m.units().element_of(vec_from_json(j.at("epsilon")));
  DualityDatum d = DualityDatum::make(m, sigma, eps);
  const size_t n = j.at("size").get<size_t>();
  FreeModule mod = FreeModule::make(m, n);
  MonomialMatrix psi(mod, mod);
  for (const auto& e : j.at("entries")) {
    size_t row = e.at(0).get<size_t>(), col = e.at(1).get<size_t>();
    psi.set_entry(row, col, MonoidElement::exp(vec_from_json(e.at(2))));
  }
  return SymForm::make(d, psi);
}

}  // namespace f1kgw
