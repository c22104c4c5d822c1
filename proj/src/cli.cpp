#include "f1kgw/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include "f1kgw/errors.hpp"
#include "f1kgw/jsonio.hpp"
#include "f1kgw/projbundle.hpp"

namespace f1kgw {

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "BadInput", "cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

MonoidScheme load_scheme(const std::string& spec) {
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
    return scheme_from_json(read_json_file(spec));
  return scheme_from_name(spec);
}

PointedMonoid load_monoid(const std::string& spec) {
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
    return monoid_from_json(read_json_file(spec));
  return monoid_from_name(spec);
}

/// Built-in bundle names: "trivial:r", "O(m)", "O(a)+O(b)", "triangleF".
CechBundle load_bundle(const std::string& spec, const MonoidScheme& x) {
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
    return bundle_from_json(read_json_file(spec), x);
  std::smatch m;
  if (std::regex_match(spec, m, std::regex(R"(trivial:(\d+))")))
    return CechBundle::trivial(x, std::stoul(m[1]));
  if (std::regex_match(spec, m, std::regex(R"(O\((-?\d+)\))")))
    return projective_o_line(x, Int(std::stol(m[1])));
  if (std::regex_match(spec, m, std::regex(R"(O\((-?\d+)\)\+O\((-?\d+)\))")))
    return direct_sum(projective_o_line(x, Int(std::stol(m[1]))),
                      projective_o_line(x, Int(std::stol(m[2]))));
  if (spec == "triangleF") {
    std::map<std::pair<size_t, size_t>, UnitPerm> tr;
    auto g = [&](size_t i, size_t j) { return x.overlap(i, j).monoid.units().group(); };
    tr.emplace(std::make_pair(size_t(0), size_t(1)), UnitPerm::identity(2, g(0, 1)));
    tr.emplace(std::make_pair(size_t(0), size_t(2)), UnitPerm::identity(2, g(0, 2)));
    tr.emplace(std::make_pair(size_t(1), size_t(2)), UnitPerm::permutation({1, 0}, g(1, 2)));
    return CechBundle::make(x, 2, std::move(tr));
  }
  fail("UsageError", "unknown bundle name: " + spec);
}

PicGroup oriented_pic(const MonoidScheme& x) {
  PicGroup p = pic(x);
  if (p.group().free_rank() == 1 && p.group().torsion_count() == 0 && x.chart_count() >= 2 &&
      x.has_ambient()) {
    try {
      p.orient_to(projective_o_line(x, 1));
    } catch (const Error&) {
      // not a projective-space cover; keep the SNF orientation
    }
  }
  return p;
}

CechBundle twist_bundle(const PicGroup& p, long d) {
  if (p.group().is_trivial()) return p.line_bundle(p.group().zero());
  require(p.group().dim() == 1, "UsageError", "--twist d needs Pic of rank one");
  return p.line_bundle({Int(d)});
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

// ---------------------------------------------------------------------------
// verify-all: the paper-example suite

struct Verifier {
  std::ostream& out;
  uint64_t seed;
  bool all_ok = true;

  void check(const std::string& name, bool ok) {
    out << (ok ? "ok   " : "FAIL ") << name << "\n";
    all_ok = all_ok && ok;
  }
};

void verify_paper_examples(Verifier& v) {
  // Picard groups of projective spaces
  for (size_t n = 1; n <= 3; ++n) {
    MonoidScheme x = MonoidScheme::projective_space(n, PointedMonoid::f1());
    PicGroup p = oriented_pic(x);
    bool ok = p.group().to_string() == "Z" &&
              p.class_of(projective_o_line(x, 1)) == Vec{Int(1)};
    v.check("Pic(P^" + std::to_string(n) + ") = Z with [O(1)] = 1", ok);
  }
  // K0 ring law
  {
    MonoidScheme x = MonoidScheme::projective_space(2, PointedMonoid::f1());
    PicGroup p = oriented_pic(x);
    K0Ring k{p, IndexDescriptor::group_elements(p.group())};
    bool ok = true;
    for (long a = -2; a <= 2 && ok; ++a)
      for (long b = -2; b <= 2 && ok; ++b)
        ok = k.multiply(k.class_of_bundle(projective_o_line(x, a)),
                        k.class_of_bundle(projective_o_line(x, b)))
                 .equal(k.class_of_bundle(projective_o_line(x, a + b)));
    v.check("K0(P^2) = Z[Z] with [O(a)][O(b)] = [O(a+b)]", ok);
  }
  // the triangle
  {
    MonoidScheme t = MonoidScheme::triangle();
    v.check("triangle has 6 points", t.points().size() == 6);
    v.check("triangle is reducible and pc", !t.is_irreducible() && t.is_pc());
    v.check("Pic(triangle) = Z^3", pic(t).group().to_string() == "Z^3");
    SplitResult s = decompose(load_bundle("triangleF", t), pic(t));
    v.check("triangle bundle is obstructed with one 6-sheet component",
            !s.split && s.components.size() == 1 && s.components[0].size() == 6);
  }
  // gauge invariance of decompose
  {
    std::mt19937_64 rng(v.seed);
    MonoidScheme x = MonoidScheme::projective_space(1, PointedMonoid::f1());
    PicGroup p = oriented_pic(x);
    CechBundle b = direct_sum(projective_o_line(x, 1), projective_o_line(x, 3));
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      std::vector<UnitPerm> gauge;
      for (size_t i = 0; i < x.chart_count(); ++i) {
        std::vector<size_t> perm{0, 1};
        if (rng() % 2) std::swap(perm[0], perm[1]);
        gauge.push_back(UnitPerm::permutation(perm, x.chart(i).units().group()));
      }
      SplitResult s = decompose(gauge_transform(b, gauge), p);
      ok = s.split && s.classes == std::vector<Vec>{{Int(1)}, {Int(3)}};
    }
    v.check("decompose recovers {1,3} under 20 random gauges", ok);
  }
  // SPic of the twisted F1[Z/3]
  {
    PointedMonoid z3 = PointedMonoid::group_monoid(FgAbGroup::cyclic(3));
    const size_t d = z3.ambient().dim();
    IntMatrix neg = IntMatrix::identity(d);
    neg.at(0, 0) = -1;
    DualityDatum dd = DualityDatum::make(z3, MonoidInvolution::ambient_matrix(z3, neg),
                                         MonoidElement::exp({Int(1)}));
    SPicSet sp = spic(dd);
    v.check("SPic(F1[Z/3], sigma != id) is a singleton with |I| = 3",
            sp.orbits().size() == 1 && sp.orbits()[0].stabilizer_order == 3);
  }
  // metabolic => hyperbolic over F1 at rank 4
  {
    DualityDatum d = DualityDatum::standard(PointedMonoid::f1());
    SymForm h2 = SymForm::hyperbolic(d, 2);
    auto lag = is_metabolic(h2);
    bool ok = lag.has_value() && classify(h2).cls.hyperbolic_count == 2;
    SymForm diag = SymForm::diagonal(d, {d.monoid.one_elem(), d.monoid.one_elem()});
    ok = ok && !is_metabolic(diag).has_value();
    v.check("metabolic forms are hyperbolic (F1 spot checks)", ok);
  }
  // GW0 parity on P^n
  {
    bool ok = true;
    for (size_t n = 1; n <= 2 && ok; ++n) {
      MonoidScheme x = MonoidScheme::projective_space(n, PointedMonoid::f1());
      PicGroup p = oriented_pic(x);
      SchemeGW0 even = gw0_scheme(x, p, projective_o_line(x, 0));
      SchemeGW0 odd = gw0_scheme(x, p, projective_o_line(x, 1));
      ok = !even.split.fixed.empty && odd.split.fixed.empty;
    }
    v.check("GW0(P^n; O(d)) fixed part nonempty iff d even", ok);
  }
  // global sections of projective spaces
  {
    PointedMonoid g1 =
        MonoidScheme::projective_space(2, PointedMonoid::f1()).global_sections();
    PointedMonoid g2 =
        MonoidScheme::projective_space(2, PointedMonoid::free_monoid(1)).global_sections();
    v.check("Gamma(P^2) = F1 and Gamma(P^2 over F1[t]) = F1[t]",
            g1.exp_generators().empty() && g2.exp_generators().size() == 1);
  }
  // projective bundle formulas over P^1
  {
    MonoidScheme x = MonoidScheme::projective_space(1, PointedMonoid::f1());
    PicGroup px = oriented_pic(x);
    CechBundle e = direct_sum(projective_o_line(x, 0), projective_o_line(x, 1));
    ProjBundle pe = proj_bundle(x, e);
    PicGroup pt = pic(pe.total());
    PicPbf r = pic_pbf_check(pe, px, pt, projective_o_line(x, 1));
    v.check("Pic(P(O+O(1))) = Pic(P^1) x Z (iso, section, equivariance)",
            r.iso_ok && r.section_ok && r.equivariance_ok);
    K0Pbf kr = k0_pbf_check(pe, px, pt);
    v.check("K0 projective bundle formula on P(O+O(1))", kr.iso_ok && kr.ring_ok);
    GW0Pbf gr = gw0_pbf_check(pe, px, pt, projective_o_line(x, 0));
    v.check("GW0/W0 projective bundle formula on P(O+O(1))",
            gr.equivariance_ok && gr.fixed_match_ok && gr.w0_ok);
  }
  // double dual identity
  {
    PointedMonoid z3 = PointedMonoid::group_monoid(FgAbGroup::cyclic(3));
    bool ok = true;
    for (size_t rank = 0; rank <= 3 && ok; ++rank) {
      FreeModule m = FreeModule::make(z3, rank);
      MonomialMatrix theta = double_dual_map(m, z3.one_elem());
      MonomialMatrix theta_p = double_dual_map(normal_dual(m), z3.one_elem());
      ok = dual_of_morphism(theta, MonoidInvolution::identity(z3))
               .compose(theta_p)
               .equal(MonomialMatrix::identity(normal_dual(m)));
    }
    v.check("double dual identity P(Theta) Theta_P = id, ranks <= 3", ok);
  }
  // Smith normal form postconditions
  {
    std::mt19937_64 rng(v.seed + 1);
    std::uniform_int_distribution<long> dist(-1000, 1000);
    bool ok = true;
    for (int trial = 0; trial < 200 && ok; ++trial) {
      size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
      IntMatrix m(rows, cols);
      for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
      SnfResult r = smith_normal_form(m);
      ok = r.u.mul(m).mul(r.v) == r.s && abs(determinant(r.u)) == 1 &&
           abs(determinant(r.v)) == 1;
    }
    v.check("Smith normal form postconditions on 200 seeded matrices", ok);
  }
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pi_0 invariants of monoid schemes: Pic, K0, GW0, W0"};
  app.name("f1kgw");
  bool json_out = false;
  uint64_t seed = 0;
  app.add_flag("--json", json_out, "machine-readable JSON output");
  app.add_option("--seed", seed, "seed for randomized verification subcommands");

  // monoid
  auto* monoid_cmd = app.add_subcommand("monoid", "pointed monoid queries");
  std::string monoid_spec;
  auto* monoid_info = monoid_cmd->add_subcommand("info", "properties, units, primes");
  monoid_info->add_option("--builtin,--monoid", monoid_spec, "name or .json file")->required();

  // scheme
  auto* scheme_cmd = app.add_subcommand("scheme", "monoid scheme queries");
  std::string scheme_spec;
  bool want_dot = false;
  auto* scheme_info = scheme_cmd->add_subcommand("info", "charts, points, integrality");
  scheme_info->add_option("--builtin,--scheme", scheme_spec, "name or .json file")->required();
  auto* scheme_points = scheme_cmd->add_subcommand("points", "point poset");
  scheme_points->add_option("--builtin,--scheme", scheme_spec)->required();
  scheme_points->add_flag("--dot", want_dot, "Graphviz output");
  auto* scheme_pic = scheme_cmd->add_subcommand("pic", "Picard group");
  scheme_pic->add_option("--builtin,--scheme", scheme_spec)->required();

  // bundle
  auto* bundle_cmd = app.add_subcommand("bundle", "Cech bundle operations");
  std::string bundle_spec;
  auto add_bundle_opts = [&](CLI::App* sub) {
    sub->add_option("--scheme", scheme_spec, "scheme name or .json")->required();
    sub->add_option("--bundle", bundle_spec, "bundle name or .json")->required();
  };
  auto* bundle_validate = bundle_cmd->add_subcommand("validate", "cocycle checks");
  add_bundle_opts(bundle_validate);
  auto* bundle_split = bundle_cmd->add_subcommand("split", "line-bundle decomposition");
  add_bundle_opts(bundle_split);
  auto* bundle_class = bundle_cmd->add_subcommand("class", "K0 class");
  add_bundle_opts(bundle_class);

  // forms
  auto* forms_cmd = app.add_subcommand("forms", "symmetric forms");
  std::string form_file, sigma_spec = "id", epsilon_spec;
  auto* forms_classify = forms_cmd->add_subcommand("classify", "(h, {m_xi}) classification");
  forms_classify->add_option("--form", form_file, "form .json file")->required();
  auto* forms_spic = forms_cmd->add_subcommand("spic", "rank-one classification SPic");
  forms_spic->add_option("--monoid", monoid_spec)->required();
  forms_spic->add_option("--sigma", sigma_spec, "id | inverse");
  forms_spic->add_option("--epsilon", epsilon_spec, "unit coordinates, comma separated");

  // k0 / gw0 / w0
  long twist = 0, mul_a = 0, mul_b = 0;
  bool do_mul = false;
  auto* k0_cmd = app.add_subcommand("k0", "K0 = Z[Pic]");
  k0_cmd->add_option("--scheme", scheme_spec)->required();
  auto* mul_opt = k0_cmd->add_option("--mul", mul_a, "first line-bundle degree");
  k0_cmd->add_option("--with", mul_b, "second line-bundle degree")->needs(mul_opt);
  auto* gw0_cmd = app.add_subcommand("gw0", "GW0 of an integral scheme");
  gw0_cmd->add_option("--scheme", scheme_spec)->required();
  gw0_cmd->add_option("--twist", twist, "twist by O(twist)");
  auto* w0_cmd = app.add_subcommand("w0", "W0 of an integral scheme");
  w0_cmd->add_option("--scheme", scheme_spec)->required();
  w0_cmd->add_option("--twist", twist, "twist by O(twist)");

  // projbundle
  auto* pb_cmd = app.add_subcommand("projbundle", "projective bundles");
  std::string base_spec, out_path;
  auto* pb_build = pb_cmd->add_subcommand("build", "construct P(E)");
  pb_build->add_option("--base", base_spec)->required();
  pb_build->add_option("--bundle", bundle_spec)->required();
  pb_build->add_option("-o,--output", out_path, "output scheme .json");
  auto* pb_verify = pb_cmd->add_subcommand("verify", "projective bundle formulas");
  pb_verify->add_option("--base", base_spec)->required();
  pb_verify->add_option("--bundle", bundle_spec)->required();
  pb_verify->add_option("--twist", twist, "twist by O(twist) on the base");

  // verify-all
  auto* verify_cmd = app.add_subcommand("verify-all", "paper example suite");
  std::string suite = "paper-examples";
  verify_cmd->add_option("--suite", suite, "suite name");

  app.require_subcommand(0, 1);

  std::vector<const char*> argv;
  std::string prog = "f1kgw";
  argv.push_back(prog.c_str());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (app.get_subcommands().empty()) {
    out << app.help();
    return 0;
  }

  try {
    if (monoid_info->parsed()) {
      PointedMonoid m = load_monoid(monoid_spec);
      const PropertyReport& p = m.properties();
      if (json_out) {
        Json j;
        j["monoid"] = to_json(m);
        j["properties"] = {{"cancellative", p.cancellative}, {"pc", p.pc},
                           {"rpc", p.rpc},           {"reversible", p.reversible}};
        j["units"] = m.units().abelian() ? to_json(m.units().group()) : Json("non-abelian");
        j["idempotents"] = m.idempotents().size();
        j["primes"] = m.primes().size();
        out << j.dump(2) << "\n";
      } else {
        out << "monoid: " << m.to_string() << "\n";
        out << "properties: " << (p.cancellative ? "cancellative " : "")
            << (p.pc ? "pc " : "") << (p.reversible ? "reversible" : "") << "\n";
        out << "units: " << (m.units().abelian() ? m.units().group().to_string() : "non-abelian")
            << "\n";
        out << "idempotents: " << m.idempotents().size() << "\n";
        out << "primes:";
        for (const auto& pr : m.primes()) out << " " << m.prime_to_string(pr);
        out << "\n";
      }
      return 0;
    }
    if (scheme_info->parsed() || scheme_points->parsed() || scheme_pic->parsed()) {
      MonoidScheme x = load_scheme(scheme_spec);
      if (scheme_info->parsed()) {
        if (json_out) {
          Json j;
          j["charts"] = x.chart_count();
          j["points"] = x.points().size();
          j["irreducible"] = x.is_irreducible();
          j["pc"] = x.is_pc();
          j["integral"] = x.is_integral();
          out << j.dump(2) << "\n";
        } else {
          out << x.to_string() << "\n";
          out << "irreducible: " << (x.is_irreducible() ? "yes" : "no")
              << ", pc: " << (x.is_pc() ? "yes" : "no")
              << ", integral: " << (x.is_integral() ? "yes" : "no") << "\n";
        }
      } else if (scheme_points->parsed()) {
        if (want_dot) {
          out << x.poset_dot();
        } else {
          for (const auto& pt : x.points()) {
            auto [ci, pi] = pt.reps.front();
            out << "point " << pt.id << ": "
                << x.chart(ci).prime_to_string(x.chart(ci).primes()[pi]) << " @"
                << x.chart_names()[ci] << (pt.closed ? " (closed)" : "") << "\n";
          }
          for (const auto& [y, z] : x.specialization_pairs())
            out << "  " << y << " ~> " << z << "\n";
        }
      } else {
        PicGroup p = oriented_pic(x);
        if (json_out) {
          Json j;
          j["pic"] = to_json(p.group());
          out << j.dump(2) << "\n";
        } else {
          out << "Pic = " << p.group().to_string();
          if (x.has_ambient() && x.chart_count() >= 2 && p.group().to_string() == "Z") {
            try {
              out << ", generator O(1)";
              (void)p.class_of(projective_o_line(x, 1));
            } catch (const Error&) {
            }
          }
          out << "\n";
        }
      }
      return 0;
    }
    if (bundle_validate->parsed() || bundle_split->parsed() || bundle_class->parsed()) {
      MonoidScheme x = load_scheme(scheme_spec);
      CechBundle b = load_bundle(bundle_spec, x);
      if (bundle_validate->parsed()) {
        ValidationReport rep = validate(b);
        if (json_out) {
          Json j;
          j["valid"] = rep.valid;
          j["violations"] = rep.violations;
          out << j.dump(2) << "\n";
        } else if (rep.valid) {
          out << "valid rank-" << b.rank() << " bundle\n";
        } else {
          out << "INVALID:\n";
          for (const auto& viol : rep.violations) out << "  " << viol << "\n";
        }
        return 0;
      }
      PicGroup p = oriented_pic(x);
      SplitResult s = decompose(b, p);
      if (bundle_split->parsed()) {
        if (!s.split) {
          out << "OBSTRUCTED: " << s.components.size() << " component"
              << (s.components.size() == 1 ? "" : "s") << " of";
          for (const auto& comp : s.components) out << " " << comp.size();
          out << " sheets\n";
        } else {
          out << "splits as:";
          for (const auto& c : s.classes) out << " " << vec_str(c);
          out << "\n";
        }
        return 0;
      }
      require(s.split, "NotIntegral", "bundle does not decompose; no K0 class");
      K0Ring k{p, IndexDescriptor::group_elements(p.group())};
      FinSuppMap cls = k.class_of_bundle(b);
      if (json_out)
        out << to_json(cls).dump(2) << "\n";
      else
        out << "[E] = " << cls.to_string() << "\n";
      return 0;
    }
    if (forms_classify->parsed()) {
      SymForm f = form_from_json(read_json_file(form_file));
      ClassifyResult r = classify(f);
      if (json_out) {
        Json j;
        j["hyperbolic"] = to_json(r.cls.hyperbolic_count);
        Json mult = Json::array();
        for (const auto& [key, c] : r.cls.multiplicities) mult.push_back({to_json(key), to_json(c)});
        j["multiplicities"] = mult;
        out << j.dump(2) << "\n";
      } else {
        out << "class: h = " << r.cls.hyperbolic_count.str();
        for (const auto& [key, c] : r.cls.multiplicities)
          out << ", m[" << vec_str(key) << "] = " << c.str();
        out << "\n";
      }
      return 0;
    }
    if (forms_spic->parsed()) {
      PointedMonoid m = load_monoid(monoid_spec);
      MonoidInvolution sigma = MonoidInvolution::identity(m);
      if (sigma_spec == "inverse") {
        IntMatrix neg = IntMatrix::identity(m.ambient().dim());
        for (size_t i = 0; i < neg.rows(); ++i) neg.at(i, i) = -1;
        sigma = MonoidInvolution::ambient_matrix(m, neg);
      }
      MonoidElement eps = m.one_elem();
      if (!epsilon_spec.empty()) {
        Vec coords;
        std::stringstream ss(epsilon_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) coords.push_back(Int(tok));
        eps = m.units().element_of(coords);
      }
      SPicSet sp = spic(DualityDatum::make(m, sigma, eps));
      if (sp.finite()) {
        out << "SPic: " << sp.orbits().size() << " orbit(s)\n";
        for (const auto& o : sp.orbits())
          out << "  orbit size " << o.elements.size() << ", |I| = "
              << o.stabilizer_order.str() << ", rep " << m.element_to_string(o.rep) << "\n";
      } else {
        out << "SPic = " << sp.quotient().to_string() << " (quotient of the unit group)\n";
      }
      return 0;
    }
    if (k0_cmd->parsed()) {
      MonoidScheme x = load_scheme(scheme_spec);
      K0Ring k = k0(x);
      PicGroup p = oriented_pic(x);
      k = K0Ring{p, IndexDescriptor::group_elements(p.group())};
      out << "K0 = Z[" << p.group().to_string() << "]\n";
      if (mul_opt->count()) {
        require(p.group().dim() == 1, "UsageError", "--mul needs Pic of rank one");
        FinSuppMap a = k.class_of_bundle(p.line_bundle({Int(mul_a)}));
        FinSuppMap b = k.class_of_bundle(p.line_bundle({Int(mul_b)}));
        out << "[O(" << mul_a << ")][O(" << mul_b << ")] = " << k.multiply(a, b).to_string()
            << "\n";
      }
      (void)do_mul;
      return 0;
    }
    if (gw0_cmd->parsed() || w0_cmd->parsed()) {
      MonoidScheme x = load_scheme(scheme_spec);
      PicGroup p = oriented_pic(x);
      CechBundle l = twist_bundle(p, twist);
      if (gw0_cmd->parsed()) {
        SchemeGW0 gw = gw0_scheme(x, p, l);
        out << "GW0 = " << gw.group.to_string() << "\n";
        out << "fixed part: "
            << (gw.split.fixed.empty ? std::string("empty")
                                     : "particular " + vec_str(gw.split.fixed.particular))
            << "\n";
        auto spic_count = gw.spic_gamma.orbit_count();
        if (spic_count) out << "SPic(Gamma) classes: " << *spic_count << "\n";
      } else {
        W0Group w = w0_scheme(x, p, l);
        auto keys = w.index.enumerate();
        if (keys)
          out << "W0 = Z^" << keys->size() << "\n";
        else
          out << "W0 = " << w.to_string() << "\n";
      }
      return 0;
    }
    if (pb_build->parsed() || pb_verify->parsed()) {
      MonoidScheme x = load_scheme(base_spec);
      CechBundle e = load_bundle(bundle_spec, x);
      ProjBundle pe = proj_bundle(x, e);
      if (pb_build->parsed()) {
        Json j = to_json(pe.total());
        if (!out_path.empty()) {
          std::ofstream f(out_path);
          require(f.good(), "BadInput", "cannot write: " + out_path);
          f << j.dump(2) << "\n";
          out << "wrote " << out_path << " (" << pe.total().chart_count() << " charts)\n";
        } else {
          out << j.dump(2) << "\n";
        }
        return 0;
      }
      PicGroup px = oriented_pic(x);
      PicGroup pt = pic(pe.total());
      CechBundle l = twist_bundle(px, twist);
      PicPbf r1 = pic_pbf_check(pe, px, pt, l);
      K0Pbf r2 = k0_pbf_check(pe, px, pt);
      GW0Pbf r3 = gw0_pbf_check(pe, px, pt, l);
      bool gamma_ok = global_sections_isomorphic(pe);
      auto line = [&](const std::string& name, bool ok) {
        out << (ok ? "pass " : "FAIL ") << name << "\n";
        return ok;
      };
      bool all = true;
      all &= line("Pic(PE) = Pic(X) x Z (isomorphism)", r1.iso_ok);
      all &= line("sigma^* phi(M, m) = M (section)", r1.section_ok);
      all &= line("phi is Z/2-equivariant for the twist", r1.equivariance_ok);
      all &= line("K0(PE) = K0(X) (x) Z[Z] (ring generators)", r2.iso_ok && r2.ring_ok);
      all &= line("GW0(PE; pi* L) fixed part matches GW0(X; L)", r3.fixed_match_ok);
      all &= line("W0(X; L) = W0(PE; pi* L)", r3.w0_ok);
      all &= line("Gamma(PE) = Gamma(X)", gamma_ok);
      return all ? 0 : 3;
    }
    if (verify_cmd->parsed()) {
      require(suite == "paper-examples", "UsageError", "unknown suite: " + suite);
      Verifier v{out, seed};
      verify_paper_examples(v);
      out << (v.all_ok ? "all checks passed\n" : "SOME CHECKS FAILED\n");
      return v.all_ok ? 0 : 3;
    }
  } catch (const Error& e) {
    Json j;
    j["error"] = e.code();
    j["message"] = e.what();
    err << j.dump() << "\n";
    return e.code() == "UsageError" ? 2 : 1;
  }
  out << app.help();
  return 0;
}

}  // namespace f1kgw
