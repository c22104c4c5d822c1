#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "f1kgw/bundle.hpp"
#include "f1kgw/errors.hpp"

using namespace f1kgw;

namespace {

MonoidScheme pn(size_t n) { return MonoidScheme::projective_space(n, PointedMonoid::f1()); }

PicGroup oriented_pic(const MonoidScheme& x) {
  PicGroup p = pic(x);
  p.orient_to(projective_o_line(x, 1));
  return p;
}

CechBundle triangle_obstruction(const MonoidScheme& t) {
  // phi_01 = phi_02 = id, phi_12 = swap
  std::map<std::pair<size_t, size_t>, UnitPerm> tr;
  auto g = [&](size_t i, size_t j) { return t.overlap(i, j).monoid.units().group(); };
  tr.emplace(std::make_pair(size_t(0), size_t(1)), UnitPerm::identity(2, g(0, 1)));
  tr.emplace(std::make_pair(size_t(0), size_t(2)), UnitPerm::identity(2, g(0, 2)));
  tr.emplace(std::make_pair(size_t(1), size_t(2)), UnitPerm::permutation({1, 0}, g(1, 2)));
  return CechBundle::make(t, 2, std::move(tr));
}

std::vector<UnitPerm> random_gauge(std::mt19937_64& rng, const MonoidScheme& x, size_t rank) {
  std::vector<UnitPerm> gauge;
  for (size_t i = 0; i < x.chart_count(); ++i) {
    const FgAbGroup& g = x.chart(i).units().group();
    std::vector<size_t> p(rank);
    std::iota(p.begin(), p.end(), size_t(0));
    std::shuffle(p.begin(), p.end(), rng);
    UnitPerm u = UnitPerm::permutation(p, g);
    std::uniform_int_distribution<long> dist(-3, 3);
    for (auto& c : u.units)
      for (auto& e : c) e = dist(rng);
    gauge.push_back(u);
  }
  return gauge;
}

}  // namespace

TEST_CASE("validation") {
  SUBCASE("trivial bundles validate") {
    CHECK(validate(CechBundle::trivial(pn(2), 3)).valid);
  }
  SUBCASE("O(1) on P^1 validates") {
    MonoidScheme x = pn(1);
    CHECK(validate(projective_o_line(x, 1)).valid);
  }
  SUBCASE("O(m) on P^2 validates for a range of m") {
    MonoidScheme x = pn(2);
    for (long m = -3; m <= 3; ++m) CHECK(validate(projective_o_line(x, m)).valid);
  }
  SUBCASE("perturbing one unit breaks the triple cocycle") {
    MonoidScheme x = pn(2);
    CechBundle b = direct_sum(projective_o_line(x, 1), projective_o_line(x, 0));
    auto tr = b.stored_transitions();
    tr.at({0, 1}).units[0] =
        x.overlap(0, 1).monoid.units().group().add(tr.at({0, 1}).units[0], {Int(1)});
    CechBundle bad = CechBundle::make(x, 2, std::move(tr));
    ValidationReport rep = validate(bad);
    CHECK(!rep.valid);
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations.front().find("{0,1,2}") != std::string::npos);
  }
}

TEST_CASE("Picard groups") {
  SUBCASE("Pic(P^n) = Z with generator O(1), independent of n") {
    for (size_t n = 1; n <= 3; ++n) {
      MonoidScheme x = pn(n);
      PicGroup p = oriented_pic(x);
      CHECK(p.group().to_string() == "Z");
      CHECK(p.class_of(projective_o_line(x, 1)) == Vec{Int(1)});
      CHECK(p.class_of(projective_o_line(x, -2)) == Vec{Int(-2)});
    }
  }
  SUBCASE("Pic of an affine spectrum is trivial") {
    CHECK(pic(MonoidScheme::spec(PointedMonoid::free_monoid(2))).group().is_trivial());
  }
  SUBCASE("Pic(triangle) = Z^3") {
    CHECK(pic(MonoidScheme::triangle()).group().to_string() == "Z^3");
  }
  SUBCASE("Pic(P^1 x P^1) = Z^2") {
    CHECK(pic(MonoidScheme::p1_x_p1()).group().to_string() == "Z^2");
  }
  SUBCASE("class_of is additive on tensor products") {
    MonoidScheme x = pn(1);
    PicGroup p = oriented_pic(x);
    CechBundle a = projective_o_line(x, 1), b = projective_o_line(x, -1);
    CHECK(p.class_of(tensor(a, b)) == Vec{Int(0)});
    CHECK(p.class_of(tensor(a, a)) == Vec{Int(2)});
  }
  SUBCASE("line_bundle is a section of class_of") {
    MonoidScheme x = pn(2);
    PicGroup p = oriented_pic(x);
    for (long m = -2; m <= 2; ++m) {
      CechBundle l = p.line_bundle({Int(m)});
      CHECK(validate(l).valid);
      CHECK(p.class_of(l) == Vec{Int(m)});
    }
  }
}

TEST_CASE("duals and twists") {
  MonoidScheme x = pn(2);
  PicGroup p = oriented_pic(x);
  SUBCASE("dual(O(m)) has class -m") {
    for (long m = -2; m <= 2; ++m)
      CHECK(p.class_of(dual(projective_o_line(x, m))) == Vec{Int(-m)});
  }
  SUBCASE("dual(dual(b)) equals b entrywise") {
    CechBundle b = direct_sum(projective_o_line(x, 1), projective_o_line(x, 2));
    CechBundle dd = dual(dual(b));
    for (const auto& [key, u] : b.stored_transitions())
      CHECK(u.equal(dd.stored_transitions().at(key),
                    x.overlap(key.first, key.second).monoid.units().group()));
  }
  SUBCASE("twisting adds the line class to each summand") {
    CechBundle b = direct_sum(projective_o_line(x, 0), projective_o_line(x, 2));
    CechBundle t = twist(b, projective_o_line(x, 1));
    SplitResult s = decompose(t, p);
    REQUIRE(s.split);
    CHECK(s.classes == std::vector<Vec>{{Int(1)}, {Int(3)}});
  }
}

TEST_CASE("decomposition into line bundles") {
  SUBCASE("trivial rank-2 bundle on P^2 splits as {0, 0}") {
    MonoidScheme x = pn(2);
    SplitResult s = decompose(CechBundle::trivial(x, 2), oriented_pic(x));
    REQUIRE(s.split);
    CHECK(s.classes == std::vector<Vec>{{Int(0)}, {Int(0)}});
  }
  SUBCASE("gauge transform of O(1) + O(3) on P^1 recovers classes {1, 3}") {
    MonoidScheme x = pn(1);
    PicGroup p = oriented_pic(x);
    CechBundle b = direct_sum(projective_o_line(x, 1), projective_o_line(x, 3));
    std::mt19937_64 rng(2024);
    CechBundle twisted = gauge_transform(b, random_gauge(rng, x, 2));
    CHECK(validate(twisted).valid);
    SplitResult s = decompose(twisted, p);
    REQUIRE(s.split);
    CHECK(s.classes == std::vector<Vec>{{Int(1)}, {Int(3)}});
  }
  SUBCASE("the triangle bundle is obstructed with a single 6-sheet component") {
    MonoidScheme t = MonoidScheme::triangle();
    CechBundle f = triangle_obstruction(t);
    CHECK(validate(f).valid);
    SplitResult s = decompose(f, pic(t));
    CHECK(!s.split);
    REQUIRE(s.components.size() == 1);
    CHECK(s.components[0].size() == 6);
  }
  SUBCASE("reassembled diagonal is gauge equivalent to the input via the witness") {
    MonoidScheme x = pn(2);
    PicGroup p = oriented_pic(x);
    CechBundle b = direct_sum(projective_o_line(x, -1), projective_o_line(x, 2));
    std::mt19937_64 rng(77);
    CechBundle twisted = gauge_transform(b, random_gauge(rng, x, 2));
    SplitResult s = decompose(twisted, p);
    REQUIRE(s.split);
    // the witness carries the input to the diagonal bundle exactly
    CechBundle again = gauge_transform(twisted, s.gauge);
    for (const auto& [key, u] : again.stored_transitions())
      CHECK(u.equal(s.diagonal.stored_transitions().at(key),
                    x.overlap(key.first, key.second).monoid.units().group()));
    // and the inverse gauge carries the diagonal back to the input
    std::vector<UnitPerm> inverse_gauge;
    for (size_t i = 0; i < x.chart_count(); ++i)
      inverse_gauge.push_back(s.gauge[i].inverse(x.chart(i).units().group()));
    CechBundle back = gauge_transform(s.diagonal, inverse_gauge);
    for (const auto& [key, u] : back.stored_transitions())
      CHECK(u.equal(twisted.stored_transitions().at(key),
                    x.overlap(key.first, key.second).monoid.units().group()));
  }
}

TEST_CASE("decompose is gauge invariant (seeded property)") {
  std::mt19937_64 rng(13579);
  std::vector<MonoidScheme> schemes = {pn(1), pn(2), MonoidScheme::p1_x_p1(),
                                       MonoidScheme::p1_x_gm()};
  for (const auto& x : schemes) {
    PicGroup p = pic(x);
    std::uniform_int_distribution<long> cls(-2, 2);
    for (int trial = 0; trial < 25; ++trial) {
      size_t rank = 1 + rng() % 4;
      CechBundle b = p.line_bundle({p.group().dim() ? Vec(p.group().dim(), Int(cls(rng)))
                                                    : Vec{}});
      for (size_t r = 1; r < rank; ++r) {
        Vec c(p.group().dim());
        for (auto& e : c) e = cls(rng);
        b = direct_sum(b, p.line_bundle(c));
      }
      SplitResult base = decompose(b, p);
      REQUIRE(base.split);
      CechBundle g = gauge_transform(b, random_gauge(rng, x, rank));
      CHECK(validate(g).valid);
      SplitResult after = decompose(g, p);
      REQUIRE(after.split);
      CHECK(base.classes == after.classes);
    }
  }
}

TEST_CASE("K0 as the group ring of Pic") {
  SUBCASE("K0(P^n) = Z[Z] with [O(a)][O(b)] = [O(a+b)]") {
    for (size_t n = 1; n <= 3; ++n) {
      MonoidScheme x = pn(n);
      K0Ring k = {oriented_pic(x), IndexDescriptor::group_elements(FgAbGroup::free_group(1))};
      for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b) {
          FinSuppMap ka = k.class_of_bundle(projective_o_line(x, a));
          FinSuppMap kb = k.class_of_bundle(projective_o_line(x, b));
          FinSuppMap kab = k.class_of_bundle(projective_o_line(x, a + b));
          CHECK(k.multiply(ka, kb).equal(kab));
        }
    }
  }
  SUBCASE("K0(Spec F1[t]) = Z") {
    K0Ring k = k0(MonoidScheme::affine_space(1));
    CHECK(k.picard.group().is_trivial());
    CHECK(k.unit().terms().size() == 1);
  }
  SUBCASE("[O + O(1)] = [O] + [O(1)] in K0(P^1)") {
    MonoidScheme x = pn(1);
    K0Ring k = {oriented_pic(x), IndexDescriptor::group_elements(FgAbGroup::free_group(1))};
    FinSuppMap lhs = k.class_of_bundle(direct_sum(projective_o_line(x, 0), projective_o_line(x, 1)));
    FinSuppMap rhs = k.class_of_bundle(projective_o_line(x, 0))
                         .add(k.class_of_bundle(projective_o_line(x, 1)));
    CHECK(lhs.equal(rhs));
  }
  SUBCASE("multiplication is commutative, associative and unital") {
    MonoidScheme x = pn(1);
    K0Ring k = k0(x);
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> key(-4, 4), coeff(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
      auto rand_elem = [&] {
        FinSuppMap e = k.zero();
        for (int t = 0; t < 5; ++t) e.add_term({Int(key(rng))}, Int(coeff(rng)));
        return e;
      };
      FinSuppMap a = rand_elem(), b = rand_elem(), c = rand_elem();
      CHECK(k.multiply(a, b).equal(k.multiply(b, a)));
      CHECK(k.multiply(k.multiply(a, b), c).equal(k.multiply(a, k.multiply(b, c))));
      CHECK(k.multiply(a, k.unit()).equal(a));
    }
  }
}
