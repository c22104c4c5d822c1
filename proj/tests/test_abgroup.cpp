#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "f1kgw/abgroup.hpp"

using namespace f1kgw;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, size_t rows, size_t cols, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
  return m;
}

void check_snf_postconditions(const IntMatrix& m) {
  SnfResult r = smith_normal_form(m);
  CHECK(r.u.mul(m).mul(r.v) == r.s);
  CHECK(abs(determinant(r.u)) == 1);
  CHECK(abs(determinant(r.v)) == 1);
  CHECK(r.u.mul(r.u_inv) == IntMatrix::identity(m.rows()));
  CHECK(r.v.mul(r.v_inv) == IntMatrix::identity(m.cols()));
  const size_t bound = std::min(m.rows(), m.cols());
  for (size_t i = 0; i < bound; ++i) {
    for (size_t j = 0; j < bound; ++j)
      if (i != j) CHECK(r.s.at(i, j) == 0);
    CHECK(r.s.at(i, i) >= 0);
    if (i + 1 < bound && r.s.at(i, i) != 0 && r.s.at(i + 1, i + 1) != 0)
      CHECK(r.s.at(i + 1, i + 1) % r.s.at(i, i) == 0);
  }
}

}  // namespace

TEST_CASE("smith normal form of diag(2,3) is diag(1,6)") {
  IntMatrix m = IntMatrix::from_rows({{2, 0}, {0, 3}});
  SnfResult r = smith_normal_form(m);
  CHECK(r.s.at(0, 0) == 1);
  CHECK(r.s.at(1, 1) == 6);
  CHECK(r.u.mul(m).mul(r.v) == r.s);
  CHECK(abs(determinant(r.u)) == 1);
  CHECK(abs(determinant(r.v)) == 1);
}

TEST_CASE("smith normal form identity cases") {
  IntMatrix z(3, 2);
  SnfResult rz = smith_normal_form(z);
  CHECK(rz.s.is_zero());
  CHECK(rz.u == IntMatrix::identity(3));
  CHECK(rz.v == IntMatrix::identity(2));

  IntMatrix one = IntMatrix::from_rows({{1}});
  SnfResult r1 = smith_normal_form(one);
  CHECK(r1.s == one);
  CHECK(r1.u == one);
  CHECK(r1.v == one);
}

TEST_CASE("snf postconditions on seeded random matrices") {
  std::mt19937_64 rng(20240901);
  for (int trial = 0; trial < 60; ++trial) {
    size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    check_snf_postconditions(random_matrix(rng, rows, cols, 50));
  }
  // a few with large entries
  for (int trial = 0; trial < 10; ++trial)
    check_snf_postconditions(random_matrix(rng, 5, 5, 1000000));
}

TEST_CASE("cokernel examples") {
  FgAbGroup z = FgAbGroup::free_group(1);
  SUBCASE("multiplication by 2 on Z") {
    AbHom f{z, z, IntMatrix::from_rows({{2}})};
    CokernelResult c = cokernel(f);
    CHECK(c.group.to_string() == "Z/2");
    // projection surjective, kernel of projection = image of f
    CHECK(c.projection.apply({Int(2)}) == c.group.zero());
    CHECK(c.projection.apply({Int(1)}) != c.group.zero());
  }
  SUBCASE("n -> (n, -n) into Z^2") {
    FgAbGroup z2 = FgAbGroup::free_group(2);
    AbHom f{z, z2, IntMatrix::from_rows({{1}, {-1}})};
    CokernelResult c = cokernel(f);
    CHECK(c.group.to_string() == "Z");
    CHECK(c.projection.apply({Int(1), Int(-1)}) == c.group.zero());
  }
  SUBCASE("zero into Z") {
    AbHom f{FgAbGroup::trivial(), z, IntMatrix(1, 0)};
    CokernelResult c = cokernel(f);
    CHECK(c.group.to_string() == "Z");
  }
}

TEST_CASE("kernel examples") {
  FgAbGroup z = FgAbGroup::free_group(1);
  SUBCASE("multiplication by 2 on Z has trivial kernel") {
    AbHom f{z, z, IntMatrix::from_rows({{2}})};
    KernelResult k = kernel(f);
    CHECK(k.group.is_trivial());
  }
  SUBCASE("projection Z^2 -> Z") {
    FgAbGroup z2 = FgAbGroup::free_group(2);
    AbHom f{z2, z, IntMatrix::from_rows({{1, 0}})};
    KernelResult k = kernel(f);
    CHECK(k.group.to_string() == "Z");
    Vec g = k.inclusion.apply(k.group.basis_vector(0));
    CHECK(g[0] == 0);
    CHECK(abs(g[1]) == 1);
  }
  SUBCASE("reduction Z/4 -> Z/2") {
    FgAbGroup z4 = FgAbGroup::cyclic(4), z2 = FgAbGroup::cyclic(2);
    AbHom f{z4, z2, IntMatrix::from_rows({{1}})};
    KernelResult k = kernel(f);
    CHECK(k.group.to_string() == "Z/2");
    // brute-force oracle over the 4 elements of Z/4
    std::vector<Vec> expect;
    for (int i = 0; i < 4; ++i)
      if ((i % 2) == 0) expect.push_back({Int(i)});
    std::vector<Vec> got;
    for (const auto& x : k.group.enumerate()) got.push_back(k.inclusion.apply(x));
    std::sort(got.begin(), got.end(), VecLess{});
    CHECK(got == expect);
  }
}

TEST_CASE("solve examples") {
  FgAbGroup z = FgAbGroup::free_group(1);
  AbHom times2{z, z, IntMatrix::from_rows({{2}})};
  auto a = solve(times2, {Int(4)});
  REQUIRE(a.has_value());
  CHECK((*a)[0] == 2);
  CHECK(!solve(times2, {Int(3)}).has_value());

  FgAbGroup z6 = FgAbGroup::cyclic(6);
  AbHom times3{z6, z6, IntMatrix::from_rows({{3}})};
  auto b = solve(times3, {Int(3)});
  REQUIRE(b.has_value());
  CHECK(times3.apply(*b) == Vec{Int(3)});
}

TEST_CASE("rank-nullity over torsion-free domains") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    size_t n = 1 + rng() % 4, m = 1 + rng() % 4;
    IntMatrix mat = random_matrix(rng, m, n, 8);
    AbHom f{FgAbGroup::free_group(n), FgAbGroup::free_group(m), mat};
    KernelResult k = kernel(f);
    SnfResult s = smith_normal_form(mat);
    CHECK(k.group.free_rank() + s.rank == n);
    CHECK(k.group.torsion_count() == 0);
    // f composed with inclusion is zero
    for (size_t j = 0; j < k.group.dim(); ++j) {
      Vec e = k.group.basis_vector(j);
      CHECK(f.codomain.is_zero(f.apply(k.inclusion.apply(e))));
    }
  }
}

TEST_CASE("involution on Pic(P^n): k -> -k + d") {
  FgAbGroup z = FgAbGroup::free_group(1);
  SUBCASE("d = 2 fixes exactly {1}, free orbit reps are k >= 2") {
    AffineInvolution inv = AffineInvolution::shifted_negation(z, {Int(2)});
    CHECK(inv.is_involution());
    InvolutionSplit s = involution_fixed_and_orbits(inv);
    REQUIRE(!s.fixed.empty);
    CHECK(s.fixed.particular == Vec{Int(1)});
    CHECK(s.fixed.translations.group().is_trivial());
    for (long k = -5; k <= 5; ++k) {
      Vec x{Int(k)};
      Vec r = s.orbits.rep(x);
      CHECK(r[0] == std::max(Int(k), Int(2 - k)));
      if (k != 1) CHECK(s.orbits.is_free(x));
    }
  }
  SUBCASE("d = 1 has empty fixed set") {
    AffineInvolution inv = AffineInvolution::shifted_negation(z, {Int(1)});
    InvolutionSplit s = involution_fixed_and_orbits(inv);
    CHECK(s.fixed.empty);
  }
  SUBCASE("identity involution on Z/2 x Z fixes everything") {
    FgAbGroup g({2}, 1);
    AffineInvolution inv{g, AbHom::identity(g), g.zero()};
    InvolutionSplit s = involution_fixed_and_orbits(inv);
    REQUIRE(!s.fixed.empty);
    CHECK(s.fixed.translations.group().same_shape(g));
    // every element is its own orbit representative
    Vec x{Int(1), Int(-7)};
    CHECK(s.orbits.rep(x) == g.reduce(x));
    CHECK(!s.orbits.is_free(x));
  }
}

TEST_CASE("orbit representative properties") {
  std::mt19937_64 rng(5150);
  FgAbGroup g({2}, 2);
  std::uniform_int_distribution<long> dist(-20, 20);
  // random affine involutions: linear part permutes the free coordinates
  // and possibly negates them
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix lin = IntMatrix::identity(3);
    bool swap_free = rng() % 2;
    if (swap_free) {
      lin.at(1, 1) = 0;
      lin.at(2, 2) = 0;
      lin.at(1, 2) = 1;
      lin.at(2, 1) = 1;
    }
    if (rng() % 2) {
      lin.negate_row(1);
      lin.negate_row(2);
    }
    Vec shift{Int(rng() % 2), Int(dist(rng)), Int(dist(rng))};
    // force shift compatible: x + lin(shift) + shift = x requires lin(shift) = -shift
    AbHom l{g, g, lin};
    if (!g.is_zero(vec_add(l.apply(shift), shift))) continue;
    AffineInvolution inv{g, l, shift};
    if (!inv.is_involution()) continue;
    InvolutionSplit s = involution_fixed_and_orbits(inv);
    for (int e = 0; e < 25; ++e) {
      Vec x{Int(rng() % 2), Int(dist(rng)), Int(dist(rng))};
      Vec r = s.orbits.rep(x);
      CHECK(s.orbits.rep(r) == r);
      CHECK(s.orbits.rep(inv.apply(x)) == r);
      if (!s.fixed.empty && s.fixed.contains(x, inv)) CHECK(g.equal(inv.apply(x), x));
    }
  }
}

TEST_CASE("subgroup membership and coordinates") {
  FgAbGroup z2 = FgAbGroup::free_group(2);
  Subgroup s(z2, {{Int(2), Int(0)}, {Int(0), Int(3)}});
  CHECK(s.group().to_string() == "Z^2");
  CHECK(s.contains({Int(4), Int(-3)}));
  CHECK(!s.contains({Int(1), Int(0)}));
  auto c = s.coords_of({Int(2), Int(3)});
  REQUIRE(c.has_value());
  CHECK(z2.equal(s.element_of(*c), {Int(2), Int(3)}));
}
