#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "f1kgw/errors.hpp"
#include "f1kgw/finsupp.hpp"
#include "f1kgw/jsonio.hpp"

using namespace f1kgw;

TEST_CASE("group operations on finitely supported maps") {
  IndexDescriptor d = IndexDescriptor::group_elements(FgAbGroup::free_group(1));
  SUBCASE("x + (-x) = 0") {
    FinSuppMap x(d);
    x.add_term({Int(3)}, 2);
    x.add_term({Int(-1)}, 5);
    CHECK(x.add(x.negate()).is_zero());
  }
  SUBCASE("[O(1)] + [O(1)] = 2 [O(1)]") {
    FinSuppMap a = FinSuppMap::basis(d, {Int(1)});
    FinSuppMap two = a.add(a);
    CHECK(two.coeff({Int(1)}) == 2);
    CHECK(two.terms().size() == 1);
  }
  SUBCASE("keys canonicalize through the orbit involution") {
    AffineInvolution neg = AffineInvolution::shifted_negation(FgAbGroup::free_group(1), {Int(0)});
    IndexDescriptor orbits = IndexDescriptor::orbit_space(neg);
    FinSuppMap m(orbits);
    m.add_term({Int(-2)}, 1);
    CHECK(m.coeff({Int(2)}) == 1);
    CHECK(m.terms().begin()->first == Vec{Int(2)});
  }
  SUBCASE("descriptor mismatch is rejected") {
    IndexDescriptor d2 = IndexDescriptor::group_elements(FgAbGroup::free_group(2));
    FinSuppMap a(d), b(d2);
    CHECK_THROWS_WITH_AS(a.add(b), doctest::Contains("DescriptorMismatch"), Error);
  }
}

TEST_CASE("convolution is the group ring product") {
  IndexDescriptor d = IndexDescriptor::group_elements(FgAbGroup::free_group(1));
  SUBCASE("[a] . [b] = [a + b]") {
    FinSuppMap a = FinSuppMap::basis(d, {Int(2)});
    FinSuppMap b = FinSuppMap::basis(d, {Int(-5)});
    CHECK(a.convolve(b).equal(FinSuppMap::basis(d, {Int(-3)})));
  }
  SUBCASE("([0] + [1])^2 = [0] + 2[1] + [2]") {
    FinSuppMap s = FinSuppMap::basis(d, {Int(0)}).add(FinSuppMap::basis(d, {Int(1)}));
    FinSuppMap sq = s.convolve(s);
    CHECK(sq.coeff({Int(0)}) == 1);
    CHECK(sq.coeff({Int(1)}) == 2);
    CHECK(sq.coeff({Int(2)}) == 1);
  }
  SUBCASE("commutative, associative, unital over Z[Z] and Z[Z/2 x Z]") {
    std::mt19937_64 rng(31337);
    std::vector<IndexDescriptor> descs = {
        d, IndexDescriptor::group_elements(FgAbGroup({2}, 1))};
    for (const auto& desc : descs) {
      const FgAbGroup& g = desc.group();
      std::uniform_int_distribution<long> val(-4, 4);
      auto rand_map = [&] {
        FinSuppMap m(desc);
        for (int t = 0; t < 5; ++t) {
          Vec key(g.dim());
          for (auto& k : key) k = val(rng);
          m.add_term(key, Int(val(rng)));
        }
        return m;
      };
      FinSuppMap unit = FinSuppMap::basis(desc, g.zero());
      for (int trial = 0; trial < 15; ++trial) {
        FinSuppMap a = rand_map(), b = rand_map(), c = rand_map();
        CHECK(a.convolve(b).equal(b.convolve(a)));
        CHECK(a.convolve(b).convolve(c).equal(a.convolve(b.convolve(c))));
        CHECK(a.convolve(unit).equal(a));
      }
    }
  }
}

TEST_CASE("serialization is canonical and bit-exact") {
  IndexDescriptor d = IndexDescriptor::group_elements(FgAbGroup::free_group(2));
  FinSuppMap m(d);
  m.add_term({Int(3), Int(-1)}, 7);
  m.add_term({Int(-2), Int(5)}, 1);
  m.add_term({Int(3), Int(-2)}, -4);
  std::string once = to_json(m).dump();
  std::string twice = to_json(m).dump();
  CHECK(once == twice);
  // keys appear in lexicographic order of canonical coordinates
  const auto& terms = to_json(m)["terms"];
  REQUIRE(terms.size() == 3);
  CHECK(terms[0][0][0].get<int64_t>() == -2);
  CHECK(terms[1][0][0].get<int64_t>() == 3);
  CHECK(terms[1][0][1].get<int64_t>() == -2);
  CHECK(terms[2][0][1].get<int64_t>() == -1);
}

TEST_CASE("descriptors: membership, canonicalization, enumeration") {
  SUBCASE("finite lists") {
    IndexDescriptor d = IndexDescriptor::finite_list({{Int(1)}, {Int(3)}});
    CHECK(d.contains({Int(1)}));
    CHECK(!d.contains({Int(2)}));
    auto keys = d.enumerate();
    REQUIRE(keys.has_value());
    CHECK(keys->size() == 2);
  }
  SUBCASE("fixed cosets") {
    FgAbGroup g({2}, 1);
    AffineInvolution id{g, AbHom::identity(g), g.zero()};
    IndexDescriptor d = IndexDescriptor::fixed_coset(id);
    CHECK(d.contains({Int(1), Int(7)}));
    CHECK(!d.enumerate().has_value());  // infinite fixed set
  }
  SUBCASE("products concatenate keys") {
    IndexDescriptor a = IndexDescriptor::finite_list({{Int(0)}, {Int(1)}});
    IndexDescriptor b = IndexDescriptor::group_elements(FgAbGroup::cyclic(2));
    IndexDescriptor p = IndexDescriptor::product({a, b});
    CHECK(p.key_size() == 2);
    CHECK(p.contains({Int(1), Int(5)}));
    CHECK(p.canonicalize({Int(1), Int(5)}) == Vec{Int(1), Int(1)});
    auto keys = p.enumerate();
    REQUIRE(keys.has_value());
    CHECK(keys->size() == 4);
  }
  SUBCASE("canonicalization is idempotent") {
    AffineInvolution neg =
        AffineInvolution::shifted_negation(FgAbGroup::free_group(1), {Int(3)});
    IndexDescriptor d = IndexDescriptor::orbit_space(neg);
    for (long k = -5; k <= 5; ++k) {
      Vec once = d.canonicalize({Int(k)});
      CHECK(d.canonicalize(once) == once);
    }
  }
}
