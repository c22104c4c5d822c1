#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "f1kgw/errors.hpp"
#include "f1kgw/monoid.hpp"

using namespace f1kgw;

namespace {

// Independent property checker working straight from the definitions, used
// to cross-validate PointedMonoid::properties on finite tables.
struct TableProps {
  bool cancellative, pc, reversible;
};

TableProps brute_props(const PointedMonoid& m) {
  const size_t n = *m.size();
  auto mul = [&](size_t a, size_t b) { return m.table_mul(a, b); };
  TableProps r{true, true, true};
  for (size_t a = 0; a < n; ++a) {
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y) {
        if (x == y) continue;
        if (a != 0 && (mul(x, a) == mul(y, a) || mul(a, x) == mul(a, y))) r.cancellative = false;
        if (mul(x, a) == mul(y, a) && mul(x, a) != 0) r.pc = false;
        if (mul(a, x) == mul(a, y) && mul(a, x) != 0) r.pc = false;
      }
  }
  for (size_t a = 1; a < n && r.reversible; ++a)
    for (size_t b = 1; b < n && r.reversible; ++b) {
      bool meet = false;
      for (size_t x = 0; x < n && !meet; ++x)
        for (size_t y = 0; y < n && !meet; ++y)
          if (mul(x, a) != 0 && mul(x, a) == mul(y, b)) meet = true;
      if (!meet) r.reversible = false;
    }
  return r;
}

Vec v2(long a, long b) { return {Int(a), Int(b)}; }

}  // namespace

TEST_CASE("multiplication in F1[t]/<t^3=0>") {
  PointedMonoid m = PointedMonoid::truncated_poly(3);
  MonoidElement t = MonoidElement::table(2);
  CHECK(m.mul(t, t) == MonoidElement::table(3));             // t * t = t^2
  CHECK(m.mul(m.mul(t, t), m.mul(t, t)).is_zero());          // t^2 * t^2 = 0
  CHECK(m.mul(t, m.zero_elem()).is_zero());
  CHECK(m.mul(t, m.one_elem()) == t);
}

TEST_CASE("multiplication in a free Exponent monoid on Z^2") {
  PointedMonoid m = PointedMonoid::free_monoid(2);
  MonoidElement a = MonoidElement::exp(v2(1, 0)), b = MonoidElement::exp(v2(0, 1));
  CHECK(m.mul(a, b) == MonoidElement::exp(v2(1, 1)));
}

TEST_CASE("unit groups") {
  CHECK(PointedMonoid::free_monoid(3).units().group().is_trivial());
  CHECK(PointedMonoid::laurent(1).units().group().to_string() == "Z");
  PointedMonoid z3 = PointedMonoid::group_monoid(FgAbGroup::cyclic(3));
  CHECK(z3.units().group().to_string() == "Z/3");
  CHECK(z3.units().order() == 3);
}

TEST_CASE("idempotents") {
  SUBCASE("F1[t]/<t^3=t^2> has 0, 1, t^2") {
    PointedMonoid m = PointedMonoid::stabilized_poly(3, 2);
    auto e = m.idempotents();
    REQUIRE(e.size() == 3);
    CHECK(e[0].is_zero());
    CHECK(e[1] == MonoidElement::table(1));
    CHECK(e[2] == MonoidElement::table(3));  // t^2
  }
  SUBCASE("F1 has exactly 0 and 1") {
    CHECK(PointedMonoid::f1().idempotents().size() == 2);
  }
  SUBCASE("Exponent monoids have exactly 0 and 1") {
    CHECK(PointedMonoid::free_monoid(2).idempotents().size() == 2);
  }
}

TEST_CASE("property reports match the paper's examples") {
  SUBCASE("F1[t]/<t^3=0>: pc and reversible, not cancellative") {
    auto p = PointedMonoid::truncated_poly(3).properties();
    CHECK(p.pc);
    CHECK(p.reversible);
    CHECK(!p.cancellative);
  }
  SUBCASE("F1[t,s]/<ts=0>: pc but not reversible") {
    auto p = PointedMonoid::ts_wedge().properties();
    CHECK(p.pc);
    CHECK(!p.reversible);
  }
  SUBCASE("F1[t]/<t^4=t^2>: not pc") {
    auto p = PointedMonoid::stabilized_poly(4, 2).properties();
    CHECK(!p.pc);
  }
  SUBCASE("Exponent monoids are cancellative, pc and reversible") {
    auto p = PointedMonoid::free_monoid(2).properties();
    CHECK(p.cancellative);
    CHECK(p.pc);
    CHECK(p.reversible);
  }
}

TEST_CASE("properties agree with an independently coded checker") {
  std::vector<PointedMonoid> tables = {
      PointedMonoid::truncated_poly(2), PointedMonoid::truncated_poly(3),
      PointedMonoid::truncated_poly(5), PointedMonoid::stabilized_poly(3, 1),
      PointedMonoid::stabilized_poly(3, 2), PointedMonoid::stabilized_poly(4, 2),
      PointedMonoid::stabilized_poly(5, 2), PointedMonoid::terminal()};
  for (const auto& m : tables) {
    TableProps oracle = brute_props(m);
    const auto& got = m.properties();
    CHECK(got.cancellative == oracle.cancellative);
    CHECK(got.pc == oracle.pc);
    CHECK(got.reversible == oracle.reversible);
    REQUIRE(got.right_noetherian.has_value());
    CHECK(*got.right_noetherian);
  }
}

TEST_CASE("localization") {
  SUBCASE("F1[t] at {t} gives the Laurent monoid") {
    PointedMonoid m = PointedMonoid::free_monoid(1);
    auto loc = m.localize({MonoidElement::exp({Int(1)})});
    CHECK(!loc.degenerate);
    CHECK(loc.result.units().group().to_string() == "Z");
    CHECK(loc.result.exp_member({Int(-4)}));
  }
  SUBCASE("F1[t]/<t^3=0> at {t} collapses to the terminal monoid") {
    PointedMonoid m = PointedMonoid::truncated_poly(3);
    auto loc = m.localize({MonoidElement::table(2)});
    CHECK(loc.degenerate);
    CHECK(*loc.result.size() == 1);
  }
  SUBCASE("free Exponent on (1,0),(0,1) at {(1,0)}") {
    PointedMonoid m = PointedMonoid::free_monoid(2);
    auto loc = m.localize({MonoidElement::exp(v2(1, 0))});
    CHECK(!loc.degenerate);
    const auto& gens = loc.result.exp_generators();
    REQUIRE(gens.size() == 3);
    CHECK(gens[0] == v2(1, 0));
    CHECK(gens[1] == v2(0, 1));
    CHECK(gens[2] == v2(-1, 0));
    CHECK(loc.map.apply(MonoidElement::exp(v2(1, 1))) == MonoidElement::exp(v2(1, 1)));
  }
  SUBCASE("localization at the same set is idempotent on Exponent monoids") {
    PointedMonoid m = PointedMonoid::free_monoid(2);
    std::vector<MonoidElement> s{MonoidElement::exp(v2(1, 0))};
    auto once = m.localize(s);
    auto twice = once.result.localize(s);
    CHECK(once.result.exp_generators() == twice.result.exp_generators());
  }
  SUBCASE("wedge localization at a component generator kills the other component") {
    PointedMonoid m = PointedMonoid::ts_wedge();
    MonoidElement t = m.generator(0);
    auto loc = m.localize({t});
    CHECK(!loc.degenerate);
    CHECK(loc.result.backend() == Backend::Exponent);
    CHECK(loc.result.units().group().to_string() == "Z");
    // s maps to zero
    CHECK(loc.map.apply(m.generator(1)).is_zero());
    CHECK(!loc.map.apply(t).is_zero());
  }
  SUBCASE("wedge localization at generators of both components collapses") {
    PointedMonoid m = PointedMonoid::ts_wedge();
    auto loc = m.localize({m.generator(0), m.generator(1)});
    CHECK(loc.degenerate);
  }
}

TEST_CASE("prime enumeration") {
  SUBCASE("F1[t] has <0> and <t>") {
    auto ps = PointedMonoid::free_monoid(1).primes();
    REQUIRE(ps.size() == 2);
    CHECK(ps[0].face_generators.size() == 1);  // generic: face = {t}
    CHECK(ps[1].face_generators.empty());      // maximal: face empty
  }
  SUBCASE("F1[T1,T2] has four primes, one per variable subset") {
    auto ps = PointedMonoid::free_monoid(2).primes();
    CHECK(ps.size() == 4);
  }
  SUBCASE("the triangle chart has exactly <t>, <s>, <t,s>") {
    PointedMonoid m = PointedMonoid::ts_wedge();
    auto ps = m.primes();
    REQUIRE(ps.size() == 3);
    // two component primes and the maximal ideal
    int comp_primes = 0, maximal = 0;
    for (const auto& p : ps) {
      if (p.component == MonoidElement::kUnitComponent)
        ++maximal;
      else
        ++comp_primes;
    }
    CHECK(comp_primes == 2);
    CHECK(maximal == 1);
    // containment: each component prime sits inside the maximal
    for (const auto& p : ps)
      CHECK(m.prime_subset(p, ps.back()));
  }
  SUBCASE("F1[t]/<t^2=0> has a single prime <t>") {
    auto ps = PointedMonoid::truncated_poly(2).primes();
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].table_elements == std::vector<size_t>{0, 2});
  }
  SUBCASE("laurent monoid has only the zero ideal") {
    CHECK(PointedMonoid::laurent(1).primes().size() == 1);
  }
}

TEST_CASE("prime complements are multiplicative") {
  // for each returned p and elements a, b outside p: ab outside p
  for (const auto& m :
       {PointedMonoid::truncated_poly(3), PointedMonoid::stabilized_poly(4, 2)}) {
    for (const auto& p : m.primes()) {
      const size_t n = *m.size();
      for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
          MonoidElement ea = MonoidElement::table(a), eb = MonoidElement::table(b);
          if (a == 0 || b == 0) continue;
          if (!m.prime_contains(p, ea) && !m.prime_contains(p, eb))
            CHECK(!m.prime_contains(p, m.mul(ea, eb)));
        }
    }
  }
}

namespace {

// Independent prime-pattern decision for Z^2 Exponent monoids, built on
// exact 2-dimensional convex geometry instead of linear programming: a
// generator subset T fails to bound a prime exactly when some nonnegative
// nonzero combination of the outside generators lands in the rational span
// of T. By Caratheodory in the plane (or in the quotient by the span), a
// witnessing combination involves at most three generators, so determinant
// sign tests decide the question exactly.
bool face_refuted_2d(const std::vector<Vec>& inside, const std::vector<Vec>& outside) {
  auto det2 = [](const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; };
  // span dimension of the inside generators
  int dim = 0;
  Vec dir;
  for (const auto& t : inside) {
    if (dim == 0) {
      dim = 1;
      dir = t;
    } else if (dim == 1 && det2(dir, t) != 0) {
      dim = 2;
    }
  }
  if (dim == 2) return !outside.empty();
  auto in_span = [&](const Vec& v) {
    if (dim == 0) return vec_is_zero(v);
    return det2(dir, v) == 0;
  };
  for (const auto& g : outside)
    if (in_span(g)) return true;
  if (dim == 1) {
    // a pair crossing the line gives a positive combination on it
    for (size_t i = 0; i < outside.size(); ++i)
      for (size_t j = i + 1; j < outside.size(); ++j) {
        Int a = det2(outside[i], dir), b = det2(outside[j], dir);
        if ((a > 0 && b < 0) || (a < 0 && b > 0)) return true;
      }
    return false;
  }
  // dim == 0: zero must be a positive combination of at most three outside gens
  for (size_t i = 0; i < outside.size(); ++i)
    for (size_t j = i + 1; j < outside.size(); ++j) {
      if (det2(outside[i], outside[j]) != 0) continue;
      // collinear: anti-parallel pairs cancel
      bool anti = (outside[i][0] != 0 &&
                   ((outside[i][0] > 0) != (outside[j][0] > 0))) ||
                  (outside[i][0] == 0 && ((outside[i][1] > 0) != (outside[j][1] > 0)));
      if (anti) return true;
    }
  for (size_t i = 0; i < outside.size(); ++i)
    for (size_t j = i + 1; j < outside.size(); ++j)
      for (size_t k = j + 1; k < outside.size(); ++k) {
        // Cramer kernel of the 2x3 system
        Int k1 = det2(outside[j], outside[k]);
        Int k2 = -det2(outside[i], outside[k]);
        Int k3 = det2(outside[i], outside[j]);
        if (k1 == 0 && k2 == 0 && k3 == 0) continue;
        if ((k1 >= 0 && k2 >= 0 && k3 >= 0) || (k1 <= 0 && k2 <= 0 && k3 <= 0)) return true;
      }
  return false;
}

}  // namespace

TEST_CASE("exponent face enumeration agrees with exact convex-geometry oracle on Z^2") {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<long> dist(-3, 3);
  int tested = 0;
  while (tested < 60) {
    size_t k = 1 + rng() % 4;
    std::vector<Vec> gens;
    for (size_t i = 0; i < k; ++i) {
      Vec g = v2(dist(rng), dist(rng));
      if (g == v2(0, 0)) continue;
      gens.push_back(g);
    }
    if (gens.empty()) continue;
    ++tested;
    PointedMonoid m = PointedMonoid::exponent(FgAbGroup::free_group(2), gens);
    const auto& actual_gens = m.exp_generators();
    const size_t kk = actual_gens.size();

    std::set<std::vector<size_t>> oracle;
    for (size_t mask = 0; mask < (size_t(1) << kk); ++mask) {
      std::vector<size_t> face_idx;
      std::vector<Vec> inside, outside;
      for (size_t i = 0; i < kk; ++i) {
        if (mask & (size_t(1) << i)) {
          face_idx.push_back(i);
          inside.push_back(actual_gens[i]);
        } else {
          outside.push_back(actual_gens[i]);
        }
      }
      if (!face_refuted_2d(inside, outside)) oracle.insert(face_idx);
    }

    std::set<std::vector<size_t>> lp;
    for (const auto& p : m.primes()) lp.insert(p.face_generators);
    CHECK(lp == oracle);
  }
}

TEST_CASE("fraction groups") {
  CHECK(PointedMonoid::free_monoid(1).fraction_group().group().to_string() == "Z");
  PointedMonoid sub = PointedMonoid::exponent(FgAbGroup::free_group(2), {v2(2, 0), v2(0, 3)});
  CHECK(sub.fraction_group().group().to_string() == "Z^2");
  PointedMonoid z3 = PointedMonoid::group_monoid(FgAbGroup::cyclic(3));
  CHECK(z3.fraction_group().group().to_string() == "Z/3");
  CHECK_THROWS_WITH_AS(PointedMonoid::truncated_poly(3).fraction_group(),
                       doctest::Contains("NotCancellative"), Error);
}

TEST_CASE("exponent membership") {
  PointedMonoid m = PointedMonoid::free_monoid(2);
  CHECK(m.exp_member(v2(3, 5)));
  CHECK(!m.exp_member(v2(-1, 0)));
  PointedMonoid sub = PointedMonoid::exponent(FgAbGroup::free_group(2), {v2(2, 0), v2(0, 3)});
  CHECK(sub.exp_member(v2(4, 3)));
  CHECK(!sub.exp_member(v2(1, 3)));
  CHECK(!sub.exp_member(v2(2, 2)));
  // with units: overlap chart of P^1; -e2 is not a member, e2 - 5 e1 is
  PointedMonoid chart = PointedMonoid::exponent(FgAbGroup::free_group(2),
                                                {v2(1, 0), v2(-1, 0), v2(0, 1)});
  CHECK(chart.exp_member(v2(-7, 2)));
  CHECK(!chart.exp_member(v2(0, -1)));
  // torsion ambient: F1[Z/3] contains every group element
  PointedMonoid z3 = PointedMonoid::group_monoid(FgAbGroup::cyclic(3));
  CHECK(z3.exp_member({Int(2)}));
}

TEST_CASE("monoid homs push units forward") {
  PointedMonoid m = PointedMonoid::free_monoid(1);
  auto loc = m.localize({MonoidElement::exp({Int(1)})});
  AbHom uh = loc.map.units_hom();
  CHECK(uh.domain.is_trivial());
  CHECK(uh.codomain.to_string() == "Z");
  // wedge -> laurent: trivial units to Z
  PointedMonoid w = PointedMonoid::ts_wedge();
  auto wloc = w.localize({w.generator(0)});
  AbHom wh = wloc.map.units_hom();
  CHECK(wh.domain.is_trivial());
  CHECK(wh.codomain.to_string() == "Z");
}
