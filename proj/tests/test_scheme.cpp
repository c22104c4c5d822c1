#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "f1kgw/scheme.hpp"

using namespace f1kgw;

TEST_CASE("spectra of small monoids") {
  SUBCASE("Spec F1 has one point") {
    CHECK(MonoidScheme::spec(PointedMonoid::f1()).points().size() == 1);
  }
  SUBCASE("Spec F1[t] has a generic and a closed point") {
    MonoidScheme x = MonoidScheme::spec(PointedMonoid::free_monoid(1));
    REQUIRE(x.points().size() == 2);
    auto g = x.generic_point();
    REQUIRE(g.has_value());
    for (const auto& pt : x.points())
      CHECK(x.specializes(*g, pt.id));
    size_t closed_count = 0;
    for (const auto& pt : x.points()) closed_count += pt.closed ? 1 : 0;
    CHECK(closed_count == 1);
  }
  SUBCASE("Spec F1[T1,T2] has four points") {
    CHECK(MonoidScheme::spec(PointedMonoid::free_monoid(2)).points().size() == 4);
  }
  SUBCASE("Spec F1[t]/<t^2=0> has a single point") {
    CHECK(MonoidScheme::spec(PointedMonoid::truncated_poly(2)).points().size() == 1);
  }
}

TEST_CASE("projective spaces") {
  SUBCASE("P^1 has 3 points: two closed under one generic") {
    MonoidScheme p1 = MonoidScheme::projective_space(1, PointedMonoid::f1());
    REQUIRE(p1.points().size() == 3);
    auto g = p1.generic_point();
    REQUIRE(g.has_value());
    size_t closed = 0;
    for (const auto& pt : p1.points()) {
      if (pt.closed) ++closed;
      CHECK(p1.specializes(*g, pt.id));
    }
    CHECK(closed == 2);
  }
  SUBCASE("P^2 has 7 points, P^3 has 15") {
    CHECK(MonoidScheme::projective_space(2, PointedMonoid::f1()).points().size() == 7);
    CHECK(MonoidScheme::projective_space(3, PointedMonoid::f1()).points().size() == 15);
  }
  SUBCASE("P^n is integral") {
    for (size_t n = 1; n <= 3; ++n)
      CHECK(MonoidScheme::projective_space(n, PointedMonoid::f1()).is_integral());
  }
  SUBCASE("every chart's closed point appears in the glued point set") {
    MonoidScheme p2 = MonoidScheme::projective_space(2, PointedMonoid::f1());
    // each chart has a unique maximal prime (face = unit gens only), and
    // its class is a closed point of the scheme
    size_t closed = 0;
    for (const auto& pt : p2.points()) closed += pt.closed ? 1 : 0;
    CHECK(closed == 3);
  }
}

TEST_CASE("the triangle") {
  MonoidScheme t = MonoidScheme::triangle();
  SUBCASE("six points in the figure-eight poset of the three lines") {
    REQUIRE(t.points().size() == 6);
    size_t closed = 0, generic_lines = 0;
    for (const auto& pt : t.points()) {
      if (pt.closed)
        ++closed;
      else
        ++generic_lines;
    }
    CHECK(closed == 3);
    CHECK(generic_lines == 3);
    // each line point generizes exactly two closed points
    for (const auto& pt : t.points()) {
      if (pt.closed) continue;
      size_t below = 0;
      for (const auto& q : t.points())
        if (q.id != pt.id && t.specializes(pt.id, q.id)) ++below;
      CHECK(below == 2);
    }
    // each closed point lies under exactly two line points
    for (const auto& pt : t.points()) {
      if (!pt.closed) continue;
      size_t above = 0;
      for (const auto& q : t.points())
        if (q.id != pt.id && t.specializes(q.id, pt.id)) ++above;
      CHECK(above == 2);
    }
  }
  SUBCASE("reducible but pc") {
    CHECK(!t.is_irreducible());
    CHECK(t.is_pc());
    CHECK(!t.is_integral());
  }
  SUBCASE("no triple overlap") { CHECK(!t.triple_nonempty(0, 1, 2)); }
  SUBCASE("global units are trivial") {
    CHECK(t.global_units().group.is_trivial());
  }
}

TEST_CASE("integrality") {
  SUBCASE("ambient models are integral") {
    CHECK(MonoidScheme::p1_x_p1().is_integral());
    CHECK(MonoidScheme::p1_x_gm().is_integral());
    CHECK(MonoidScheme::affine_space(2).is_integral());
  }
  SUBCASE("Spec F1[t,s]/<ts=0> is reducible") {
    MonoidScheme x = MonoidScheme::spec(PointedMonoid::ts_wedge());
    CHECK(x.points().size() == 3);
    CHECK(!x.is_irreducible());
    CHECK(x.is_pc());
    CHECK(!x.is_integral());
  }
  SUBCASE("Spec of a finite non-pc table is not integral") {
    MonoidScheme x = MonoidScheme::spec(PointedMonoid::stabilized_poly(4, 2));
    CHECK(x.is_integral() == (x.is_irreducible() && x.is_pc()));
    CHECK(!x.is_pc());
  }
}

TEST_CASE("global sections") {
  SUBCASE("Gamma(Spec A) = A") {
    PointedMonoid a = PointedMonoid::free_monoid(2);
    CHECK(MonoidScheme::spec(a).global_sections().same_as(a));
  }
  SUBCASE("Gamma(P^n) = F1") {
    for (size_t n = 1; n <= 3; ++n) {
      PointedMonoid g = MonoidScheme::projective_space(n, PointedMonoid::f1()).global_sections();
      CHECK(g.exp_generators().empty());
      CHECK(g.units().group().is_trivial());
    }
  }
  SUBCASE("Gamma(P^2 over F1[t]) = F1[t], generator-exact") {
    PointedMonoid base = PointedMonoid::free_monoid(1);
    MonoidScheme p2t = MonoidScheme::projective_space(2, base);
    PointedMonoid g = p2t.global_sections();
    REQUIRE(g.exp_generators().size() == 1);
    // the surviving generator is the padded base generator t
    Vec t_padded(p2t.ambient().dim(), Int(0));
    t_padded[0] = 1;
    CHECK(g.exp_generators()[0] == t_padded);
  }
  SUBCASE("Gamma(P^1 x Gm) = laurent in the second coordinate") {
    PointedMonoid g = MonoidScheme::p1_x_gm().global_sections();
    CHECK(g.units().group().to_string() == "Z");
    CHECK(!g.exp_member({Int(1), Int(0)}));
    CHECK(g.exp_member({Int(0), Int(-5)}));
  }
}

TEST_CASE("global units") {
  SUBCASE("P^n has trivial global units (proper integral torsion free)") {
    for (size_t n = 1; n <= 3; ++n)
      CHECK(MonoidScheme::projective_space(n, PointedMonoid::f1())
                .global_units()
                .group.is_trivial());
  }
  SUBCASE("Spec F1[T^pm] has global units Z") {
    CHECK(MonoidScheme::spec(PointedMonoid::laurent(1)).global_units().group.to_string() == "Z");
  }
  SUBCASE("P^1 x Gm has global units Z") {
    CHECK(MonoidScheme::p1_x_gm().global_units().group.to_string() == "Z");
  }
  SUBCASE("units of Gamma agree with global units for P^n over a base") {
    PointedMonoid base = PointedMonoid::group_monoid(FgAbGroup::cyclic(3));
    MonoidScheme x = MonoidScheme::projective_space(2, base);
    CHECK(x.global_units().group.to_string() == "Z/3");
    CHECK(x.global_sections().units().group().to_string() == "Z/3");
  }
}

TEST_CASE("stalks") {
  MonoidScheme p1 = MonoidScheme::projective_space(1, PointedMonoid::f1());
  auto g = p1.generic_point();
  REQUIRE(g.has_value());
  PointedMonoid stalk = p1.stalk(*g);
  // the generic stalk of P^1 is the Laurent monoid
  CHECK(stalk.units().group().to_string() == "Z");
  // closed-point stalks are polynomial monoids
  for (const auto& pt : p1.points())
    if (pt.closed) CHECK(p1.stalk(pt.id).units().group().is_trivial());
}

TEST_CASE("poset dot output mentions every point") {
  MonoidScheme t = MonoidScheme::triangle();
  std::string dot = t.poset_dot();
  for (const auto& pt : t.points())
    CHECK(dot.find("p" + std::to_string(pt.id)) != std::string::npos);
  CHECK(dot.find("digraph") != std::string::npos);
}
