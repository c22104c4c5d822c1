#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "f1kgw/errors.hpp"
#include "f1kgw/gw_scheme.hpp"

using namespace f1kgw;

namespace {

MonoidScheme pn(size_t n) { return MonoidScheme::projective_space(n, PointedMonoid::f1()); }

PicGroup oriented_pic(const MonoidScheme& x) {
  PicGroup p = pic(x);
  p.orient_to(projective_o_line(x, 1));
  return p;
}

}  // namespace

TEST_CASE("the Picard involution of O(d) on P^n is k -> -k + d") {
  MonoidScheme x = pn(2);
  PicGroup p = oriented_pic(x);
  for (long d = -2; d <= 2; ++d) {
    PicInvolution inv = pic_involution(p, projective_o_line(x, d));
    CHECK(inv.integral);
    CHECK(inv.twist_class == Vec{Int(d)});
    for (long k = -4; k <= 4; ++k)
      CHECK(inv.involution.apply({Int(k)}) == Vec{Int(d - k)});
    // applying twice is the identity
    for (long k = -4; k <= 4; ++k)
      CHECK(inv.involution.apply(inv.involution.apply({Int(k)})) == Vec{Int(k)});
  }
}

TEST_CASE("the involution is exposed on non-integral schemes with a flag") {
  MonoidScheme t = MonoidScheme::triangle();
  PicGroup p = pic(t);
  PicInvolution inv = pic_involution(p, p.line_bundle(p.group().zero()));
  CHECK(!inv.integral);
  CHECK(inv.involution.is_involution());
  CHECK_THROWS_WITH_AS(gw0_scheme(t, p, p.line_bundle(p.group().zero())),
                       doctest::Contains("NotIntegral"), Error);
}

TEST_CASE("GW0(P^n; O(d)): fixed part nonempty iff d even") {
  for (size_t n = 1; n <= 3; ++n) {
    MonoidScheme x = pn(n);
    PicGroup p = oriented_pic(x);
    SUBCASE("d = 0") {
      SchemeGW0 gw = gw0_scheme(x, p, projective_o_line(x, 0));
      REQUIRE(!gw.split.fixed.empty);
      CHECK(gw.split.fixed.particular == Vec{Int(0)});
      // SPic(F1) is a singleton, so the sym part has exactly one index
      auto keys = gw.group.sym_index.enumerate();
      REQUIRE(keys.has_value());
      CHECK(keys->size() == 1);
      // the hyperbolic part is indexed by orbits {k, -k}: reps are k >= 0
      CHECK(gw.group.hyp_index.canonicalize({Int(-5)}) == Vec{Int(5)});
      CHECK(gw.group.hyp_index.canonicalize({Int(3)}) == Vec{Int(3)});
    }
    SUBCASE("d = 1") {
      SchemeGW0 gw = gw0_scheme(x, p, projective_o_line(x, 1));
      CHECK(gw.split.fixed.empty);
      auto keys = gw.group.sym_index.enumerate();
      REQUIRE(keys.has_value());
      CHECK(keys->empty());
      // orbit reps of k <-> 1 - k are k >= 1
      CHECK(gw.group.hyp_index.canonicalize({Int(-4)}) == Vec{Int(5)});
      CHECK(gw.group.hyp_index.canonicalize({Int(1)}) == Vec{Int(1)});
    }
    SUBCASE("d = 2: fixed part is {1}") {
      SchemeGW0 gw = gw0_scheme(x, p, projective_o_line(x, 2));
      REQUIRE(!gw.split.fixed.empty);
      CHECK(gw.split.fixed.particular == Vec{Int(1)});
      CHECK(gw.split.fixed.translations.group().is_trivial());
    }
  }
}

TEST_CASE("W0(P^n; O(d)) = Z^(1 - d mod 2)") {
  for (size_t n = 1; n <= 3; ++n) {
    MonoidScheme x = pn(n);
    PicGroup p = oriented_pic(x);
    for (long d = 0; d <= 1; ++d) {
      W0Group w = w0_scheme(x, p, projective_o_line(x, d));
      auto keys = w.index.enumerate();
      REQUIRE(keys.has_value());
      CHECK(keys->size() == (d % 2 == 0 ? 1 : 0));
    }
  }
}

TEST_CASE("W0(A^1) = Z") {
  MonoidScheme a1 = MonoidScheme::affine_space(1);
  PicGroup p = pic(a1);
  W0Group w = w0_scheme(a1, p, p.line_bundle(p.group().zero()));
  auto keys = w.index.enumerate();
  REQUIRE(keys.has_value());
  CHECK(keys->size() == 1);
  // and GW0(A^1) = Z^2: one sym index plus the hyperbolic part over the
  // single orbit of the trivial Picard group
  SchemeGW0 gw = gw0_scheme(a1, p, p.line_bundle(p.group().zero()));
  auto hyp = gw.group.hyp_index.enumerate();
  REQUIRE(hyp.has_value());
  CHECK(hyp->size() == 1);
}

TEST_CASE("H: K0 -> GW0 and W0 = coker(H) on generator images") {
  MonoidScheme x = pn(1);
  PicGroup p = oriented_pic(x);
  SchemeGW0 gw = gw0_scheme(x, p, projective_o_line(x, 0));
  IndexDescriptor k0_idx = IndexDescriptor::group_elements(p.group());
  // H[O(m)] lands at the orbit representative of m with no sym component
  for (long m = -3; m <= 3; ++m) {
    FinSuppMap k0_elem = FinSuppMap::basis(k0_idx, {Int(m)});
    GW0Element h = gw.hyperbolic_from_k0(k0_elem);
    CHECK(h.sym.is_zero());
    CHECK(h.hyp.coeff({Int(m)}) == 1);
    CHECK(h.hyp.coeff({Int(-m)}) == 1);  // same orbit key
  }
  // every hyperbolic basis element is hit: the cokernel is the sym part
  GW0Element basis = gw.hyperbolic_class({Int(2)});
  FinSuppMap k0_elem = FinSuppMap::basis(k0_idx, {Int(2)});
  CHECK(gw.hyperbolic_from_k0(k0_elem).equal(basis));
}

TEST_CASE("GW0 depends on the twist only through its parity class") {
  MonoidScheme x = pn(2);
  PicGroup p = oriented_pic(x);
  for (long d = 0; d <= 1; ++d)
    for (long k = -2; k <= 2; ++k) {
      ParityBijection bij = twisted_parity_bijection(p, projective_o_line(x, d),
                                                     projective_o_line(x, k));
      CHECK(bij.verified);
      CHECK(bij.shift == Vec{Int(k)});
      // the bijection carries the fixed set of P^L onto that of P^{L + 2M}
      SchemeGW0 a = gw0_scheme(x, p, projective_o_line(x, d));
      SchemeGW0 b = gw0_scheme(x, p, projective_o_line(x, d + 2 * k));
      CHECK(a.split.fixed.empty == b.split.fixed.empty);
      if (!a.split.fixed.empty) {
        Vec moved = p.group().add(a.split.fixed.particular, bij.shift);
        CHECK(b.split.fixed.contains(moved, b.pic_inv.involution));
      }
    }
}

TEST_CASE("sym_line and hyperbolic_class construct canonical elements") {
  MonoidScheme x = pn(1);
  PicGroup p = oriented_pic(x);
  SchemeGW0 gw = gw0_scheme(x, p, projective_o_line(x, 2));
  // fixed point is 1; the SPic key of Gamma = F1 is the single orbit key
  Vec spic_key = gw.spic_gamma.orbits()[0].key;
  GW0Element e = gw.sym_line(spic_key, {Int(1)});
  CHECK(!e.sym.is_zero());
  CHECK(e.hyp.is_zero());
  GW0Element h1 = gw.hyperbolic_class({Int(0)});
  GW0Element h2 = gw.hyperbolic_class({Int(2)});  // orbit of 0 under k -> 2-k
  CHECK(h1.equal(h2));
}
