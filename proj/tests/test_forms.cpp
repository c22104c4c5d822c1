#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "f1kgw/errors.hpp"
#include "f1kgw/forms.hpp"

using namespace f1kgw;

namespace {

DualityDatum f1_datum() { return DualityDatum::standard(PointedMonoid::f1()); }

DualityDatum z3_twisted() {
  PointedMonoid z3 = PointedMonoid::group_monoid(FgAbGroup::cyclic(3));
  return DualityDatum::make(z3, MonoidInvolution::ambient_matrix(z3, IntMatrix::from_rows({{-1}})),
                            MonoidElement::exp({Int(1)}));
}

DualityDatum z3_standard() {
  return DualityDatum::standard(PointedMonoid::group_monoid(FgAbGroup::cyclic(3)));
}

DualityDatum z4_standard() {
  return DualityDatum::standard(PointedMonoid::group_monoid(FgAbGroup::cyclic(4)));
}

std::vector<MonomialMatrix> all_unit_gen_perms(const FreeModule& m) {
  const auto& units = m.monoid.units().elements();
  std::vector<size_t> perm(m.rank);
  for (size_t i = 0; i < m.rank; ++i) perm[i] = i;
  std::vector<MonomialMatrix> out;
  do {
    std::vector<size_t> pick(m.rank, 0);
    while (true) {
      MonomialMatrix g(m, m);
      for (size_t i = 0; i < m.rank; ++i) g.set_entry(perm[i], i, units[pick[i]]);
      out.push_back(g);
      size_t j = 0;
      for (; j < m.rank; ++j) {
        if (++pick[j] < units.size()) break;
        pick[j] = 0;
      }
      if (j == m.rank || m.rank == 0) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// every valid symmetric form of the given rank over a finite-unit datum
std::vector<SymForm> all_forms(const DualityDatum& d, size_t rank) {
  const PointedMonoid& a = d.monoid;
  const auto& units = a.units().elements();
  std::vector<MonoidElement> sym_units;
  for (const auto& u : units)
    if (a.equal(u, a.mul(d.epsilon, d.sigma.apply(u)))) sym_units.push_back(u);

  // involutions of {0..rank-1}
  std::vector<std::vector<size_t>> involutions;
  std::vector<size_t> cur(rank);
  std::function<void(size_t)> build = [&](size_t i) {
    if (i == rank) {
      involutions.push_back(cur);
      return;
    }
    bool taken = false;
    for (size_t j = 0; j < i; ++j)
      if (cur[j] == i) {
        cur[i] = j;
        build(i + 1);
        taken = true;
      }
    if (taken) return;
    cur[i] = i;
    build(i + 1);
    for (size_t j = i + 1; j < rank; ++j) {
      cur[i] = j;
      build(i + 1);
    }
  };
  // simpler recursive enumeration: position i maps to cur[i]
  involutions.clear();
  std::function<void(size_t, std::vector<long>&)> rec = [&](size_t i, std::vector<long>& p) {
    if (i == rank) {
      std::vector<size_t> q(rank);
      for (size_t k = 0; k < rank; ++k) q[k] = static_cast<size_t>(p[k]);
      involutions.push_back(q);
      return;
    }
    if (p[i] >= 0) {
      rec(i + 1, p);
      return;
    }
    p[i] = static_cast<long>(i);
    rec(i + 1, p);
    p[i] = -1;
    for (size_t j = i + 1; j < rank; ++j) {
      if (p[j] >= 0) continue;
      p[i] = static_cast<long>(j);
      p[j] = static_cast<long>(i);
      rec(i + 1, p);
      p[i] = p[j] = -1;
    }
  };
  std::vector<long> p(rank, -1);
  rec(0, p);

  std::vector<SymForm> out;
  FreeModule m = FreeModule::make(a, rank);
  for (const auto& inv : involutions) {
    std::vector<std::pair<size_t, size_t>> pairs;
    std::vector<size_t> fixed;
    for (size_t i = 0; i < rank; ++i) {
      if (inv[i] == i)
        fixed.push_back(i);
      else if (i < inv[i])
        pairs.emplace_back(i, inv[i]);
    }
    // entry choices: any unit per pair, any symmetric unit per fixed point
    std::vector<size_t> pick(pairs.size() + fixed.size(), 0);
    while (true) {
      MonomialMatrix psi(m, m);
      for (size_t t = 0; t < pairs.size(); ++t) {
        MonoidElement e = units[pick[t]];
        psi.set_entry(pairs[t].first, pairs[t].second, e);
        // psi_ji = sigma(eps^{-1} psi_ij) from psi_ij = eps sigma(psi_ji)
        MonoidElement eji =
            d.sigma.apply(a.mul(a.pow(d.epsilon, Int(-1)), e));
        psi.set_entry(pairs[t].second, pairs[t].first, eji);
      }
      bool valid = true;
      for (size_t t = 0; t < fixed.size(); ++t) {
        if (sym_units.empty()) {
          valid = false;
          break;
        }
        psi.set_entry(fixed[t], fixed[t], sym_units[pick[pairs.size() + t]]);
      }
      if (valid) out.push_back(SymForm::make(d, psi));
      size_t j = 0;
      for (; j < pick.size(); ++j) {
        size_t limit = j < pairs.size() ? units.size() : sym_units.size();
        if (++pick[j] < limit) break;
        pick[j] = 0;
      }
      if (j == pick.size()) break;
    }
    if (pairs.empty() && fixed.empty()) break;  // rank 0: single empty form handled once
  }
  return out;
}

}  // namespace

TEST_CASE("SPic examples") {
  SUBCASE("F1[Z/3] with the nontrivial involution: a singleton with |I| = 3") {
    SPicSet sp = spic(z3_twisted());
    REQUIRE(sp.finite());
    REQUIRE(sp.orbits().size() == 1);
    const auto& orbit = sp.orbits()[0];
    CHECK(orbit.elements.size() == 1);
    // the unique symmetric unit is eps^2
    PointedMonoid z3 = PointedMonoid::group_monoid(FgAbGroup::cyclic(3));
    CHECK(z3.equal(orbit.rep, MonoidElement::exp({Int(2)})));
    CHECK(orbit.stabilizer_order == 3);
  }
  SUBCASE("trivial units give a singleton SPic with trivial stabilizer") {
    SPicSet sp = spic(f1_datum());
    REQUIRE(sp.orbits().size() == 1);
    CHECK(sp.orbits()[0].stabilizer_order == 1);
  }
  SUBCASE("F1[Z/4] standard: two orbits {1,t^2} and {t,t^3}") {
    SPicSet sp = spic(z4_standard());
    REQUIRE(sp.orbits().size() == 2);
    CHECK(sp.orbits()[0].elements.size() == 2);
    CHECK(sp.orbits()[1].elements.size() == 2);
    for (const auto& o : sp.orbits()) CHECK(o.stabilizer_order == 2);
    // orbit |O| * |I| = |A^x|
    for (const auto& o : sp.orbits())
      CHECK(Int(o.elements.size()) * o.stabilizer_order == 4);
  }
  SUBCASE("infinite units via the quotient route: laurent has SPic = Z/2") {
    SPicSet sp = spic(DualityDatum::standard(PointedMonoid::laurent(1)));
    CHECK(!sp.finite());
    CHECK(sp.quotient().to_string() == "Z/2");
    PointedMonoid l = PointedMonoid::laurent(1);
    CHECK(sp.orbit_key(MonoidElement::exp({Int(2)})) == Vec{Int(0)});
    CHECK(sp.orbit_key(MonoidElement::exp({Int(3)})) == Vec{Int(1)});
  }
}

TEST_CASE("classification of symmetric forms") {
  SUBCASE("the hyperbolic plane classifies as (1, {})") {
    ClassifyResult r = classify(SymForm::hyperbolic(f1_datum(), 1));
    CHECK(r.cls.hyperbolic_count == 1);
    CHECK(r.cls.multiplicities.empty());
  }
  SUBCASE("diag(xi) classifies as (0, {orbit(xi): 1})") {
    DualityDatum d = z3_twisted();
    MonoidElement eps2 = MonoidElement::exp({Int(2)});
    ClassifyResult r = classify(SymForm::diagonal(d, {eps2}));
    CHECK(r.cls.hyperbolic_count == 0);
    REQUIRE(r.cls.multiplicities.size() == 1);
    CHECK(r.cls.multiplicities.begin()->second == 1);
  }
  SUBCASE("over F1[Z/4]: diag(1, t^2) has both entries in orbit(1)") {
    DualityDatum d = z4_standard();
    SymForm psi = SymForm::diagonal(d, {d.monoid.one_elem(), MonoidElement::exp({Int(2)})});
    ClassifyResult r = classify(psi);
    CHECK(r.cls.hyperbolic_count == 0);
    REQUIRE(r.cls.multiplicities.size() == 1);
    CHECK(r.cls.multiplicities.begin()->second == 2);
    // normal form diagonal entries are the canonical representative 1
    CHECK(d.monoid.equal(r.normal_form.matrix().entry(0, 0), d.monoid.one_elem()));
    CHECK(d.monoid.equal(r.normal_form.matrix().entry(1, 1), d.monoid.one_elem()));
  }
}

TEST_CASE("isometry decisions with witnesses") {
  SUBCASE("a swap-conjugate of H(A) is isometric to H(A)") {
    DualityDatum d = f1_datum();
    SymForm h = SymForm::hyperbolic(d, 1);
    FreeModule m = FreeModule::make(d.monoid, 2);
    SymForm conj = h.congruence(MonomialMatrix::permutation(m, {1, 0}));
    IsometryResult r = is_isometric(conj, h);
    CHECK(r.isometric);
    REQUIRE(r.witness.has_value());
    CHECK(h.congruence(*r.witness).matrix().equal(conj.matrix()));
  }
  SUBCASE("diag(t) and diag(t^3) over F1[Z/4] are isometric via u = t") {
    DualityDatum d = z4_standard();
    SymForm a = SymForm::diagonal(d, {MonoidElement::exp({Int(1)})});
    SymForm b = SymForm::diagonal(d, {MonoidElement::exp({Int(3)})});
    IsometryResult r = is_isometric(a, b);
    CHECK(r.isometric);
    REQUIRE(r.witness.has_value());
    CHECK(b.congruence(*r.witness).matrix().equal(a.matrix()));
  }
  SUBCASE("diag(1) and diag(t) over F1[Z/4] lie in distinct orbits") {
    DualityDatum d = z4_standard();
    SymForm a = SymForm::diagonal(d, {d.monoid.one_elem()});
    SymForm b = SymForm::diagonal(d, {MonoidElement::exp({Int(1)})});
    CHECK(!is_isometric(a, b).isometric);
  }
}

TEST_CASE("classify is congruence invariant (300 random congruences)") {
  std::mt19937_64 rng(987123);
  std::vector<DualityDatum> data{f1_datum(), z3_standard(), z3_twisted(), z4_standard()};
  for (const auto& d : data) {
    SPicSet sp = spic(d);
    const auto& units = d.monoid.units().elements();
    for (int trial = 0; trial < 75; ++trial) {
      size_t rank = 1 + rng() % 5;
      auto forms = all_forms(d, std::min<size_t>(rank, 2));
      if (forms.empty()) continue;
      const SymForm& psi = forms[rng() % forms.size()];
      // random congruence
      FreeModule m = FreeModule::make(d.monoid, psi.rank());
      std::vector<size_t> perm(psi.rank());
      for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      MonomialMatrix g(m, m);
      for (size_t i = 0; i < perm.size(); ++i) g.set_entry(perm[i], i, units[rng() % units.size()]);
      SymForm conj = psi.congruence(g);
      CHECK(classify(conj, sp).cls == classify(psi, sp).cls);
    }
  }
}

TEST_CASE("isometry completeness: equal classes admit verified witnesses (rank <= 3)") {
  for (const auto& d : {z3_twisted(), z4_standard()}) {
    SPicSet sp = spic(d);
    for (size_t rank = 1; rank <= 3; ++rank) {
      auto forms = all_forms(d, rank);
      for (size_t i = 0; i < forms.size(); ++i)
        for (size_t j = i; j < forms.size(); ++j) {
          bool same = classify(forms[i], sp).cls == classify(forms[j], sp).cls;
          IsometryResult r = is_isometric(forms[i], forms[j]);
          CHECK(r.isometric == same);
          if (r.isometric) {
            REQUIRE(r.witness.has_value());
            CHECK(forms[j].congruence(*r.witness).matrix().equal(forms[i].matrix()));
          }
        }
    }
  }
}

TEST_CASE("isometry group orders") {
  SUBCASE("hyperbolic plane over F1 has two isometries") {
    FormClass c;
    c.hyperbolic_count = 1;
    CHECK(isometry_group_order(f1_datum(), spic(f1_datum()), c) == 2);
  }
  SUBCASE("diag(1,...,1) over F1 has n! isometries") {
    DualityDatum d = f1_datum();
    SPicSet sp = spic(d);
    for (int n = 1; n <= 5; ++n) {
      ClassifyResult r = classify(SymForm::diagonal(d, std::vector<MonoidElement>(
                                                           n, d.monoid.one_elem())),
                                  sp);
      Int expect = 1;
      for (int i = 2; i <= n; ++i) expect *= i;
      CHECK(isometry_group_order(d, sp, r.cls) == expect);
    }
  }
  SUBCASE("rank-2 diagonal over twisted F1[Z/3] has 18 isometries") {
    DualityDatum d = z3_twisted();
    SPicSet sp = spic(d);
    MonoidElement eps2 = MonoidElement::exp({Int(2)});
    ClassifyResult r = classify(SymForm::diagonal(d, {eps2, eps2}), sp);
    CHECK(isometry_group_order(d, sp, r.cls) == 18);
  }
  SUBCASE("formula matches brute-force congruence stabilizer counts (rank <= 3)") {
    for (const auto& d : {f1_datum(), z3_standard(), z3_twisted(), z4_standard()}) {
      SPicSet sp = spic(d);
      for (size_t rank = 1; rank <= 3; ++rank) {
        auto forms = all_forms(d, rank);
        // one representative per class is enough
        std::vector<FormClass> seen;
        for (const auto& psi : forms) {
          FormClass c = classify(psi, sp).cls;
          bool dup = false;
          for (const auto& s : seen)
            if (s == c) dup = true;
          if (dup) continue;
          seen.push_back(c);
          Int count = 0;
          for (const auto& g : all_unit_gen_perms(FreeModule::make(d.monoid, rank)))
            if (psi.congruence(g).matrix().equal(psi.matrix())) count += 1;
          CHECK(count == isometry_group_order(d, sp, c));
        }
      }
    }
  }
}

TEST_CASE("metabolic forms and isotropic reduction") {
  DualityDatum d = f1_datum();
  SUBCASE("H(A^n) has the evident Lagrangian") {
    auto lag = is_metabolic(SymForm::hyperbolic(d, 2));
    REQUIRE(lag.has_value());
    CHECK(*lag == std::vector<size_t>{0, 1});
  }
  SUBCASE("diagonal forms are never metabolic") {
    CHECK(!is_metabolic(SymForm::diagonal(d, {d.monoid.one_elem()})).has_value());
  }
  SUBCASE("reducing H(A) + H(A) at one isotropic index leaves H(A)") {
    SymForm h2 = SymForm::hyperbolic(d, 2);
    SymForm red = reduce_isotropic(h2, {1});
    CHECK(red.rank() == 2);
    ClassifyResult r = classify(red);
    CHECK(r.cls.hyperbolic_count == 1);
    CHECK(r.cls.multiplicities.empty());
  }
  SUBCASE("a full 2-cycle is not isotropic") {
    SymForm h = SymForm::hyperbolic(d, 1);
    CHECK_THROWS_WITH_AS(reduce_isotropic(h, {0, 1}), doctest::Contains("NotIsotropic"), Error);
  }
}

TEST_CASE("metabolic implies hyperbolic, exhaustively to rank 4") {
  // Over F1, F1[Z/3] (both involutions) and F1[Z/4]: whenever a Lagrangian
  // exists the class is (n/2, {}) - zero counterexamples
  for (const auto& d : {f1_datum(), z3_standard(), z3_twisted(), z4_standard()}) {
    SPicSet sp = spic(d);
    for (size_t rank = 1; rank <= 4; ++rank) {
      for (const auto& psi : all_forms(d, rank)) {
        auto lag = is_metabolic(psi);
        if (!lag.has_value()) continue;
        FormClass c = classify(psi, sp).cls;
        CHECK(c.hyperbolic_count * 2 == Int(rank));
        CHECK(c.multiplicities.empty());
        // the reduction at the Lagrangian is the zero form
        CHECK(reduce_isotropic(psi, *lag).rank() == 0);
      }
    }
  }
}

TEST_CASE("orbit size times stabilizer order equals the unit group order") {
  for (const auto& d : {z3_standard(), z3_twisted(), z4_standard()}) {
    SPicSet sp = spic(d);
    Int units = d.monoid.units().order();
    for (const auto& o : sp.orbits()) CHECK(Int(o.elements.size()) * o.stabilizer_order == units);
  }
}

TEST_CASE("GW0 and W0 at the monoid level") {
  SUBCASE("GW0(F1) = Z^2") {
    MonoidGW0 gw = gw0_monoid(f1_datum());
    auto keys = gw.group.sym_index.enumerate();
    REQUIRE(keys.has_value());
    CHECK(keys->size() == 1);  // one SPic class + the hyperbolic Z
    // class of the rank-2 hyperbolic form vs sum of two diagonal classes
    ClassifyResult h = classify(SymForm::hyperbolic(f1_datum(), 1));
    GW0Element eh = gw.class_of(h.cls);
    CHECK(eh.hyp.coeff(Vec{}) == 1);
    CHECK(eh.sym.is_zero());
  }
  SUBCASE("W0 of a monoid with trivial units is Z") {
    W0Group w = w0_monoid(DualityDatum::standard(PointedMonoid::free_monoid(3)));
    auto keys = w.index.enumerate();
    REQUIRE(keys.has_value());
    CHECK(keys->size() == 1);
  }
  SUBCASE("GW0(F1[Z/4]) = Z^3: hyperbolic Z plus two SPic classes") {
    MonoidGW0 gw = gw0_monoid(z4_standard());
    auto keys = gw.group.sym_index.enumerate();
    REQUIRE(keys.has_value());
    CHECK(keys->size() == 2);
  }
  SUBCASE("W0 = coker(H) on generator images") {
    // H: Z -> GW0 hits the hyperbolic coordinate; the cokernel on the free
    // abelian model is exactly the SPic-indexed part
    MonoidGW0 gw = gw0_monoid(z4_standard());
    GW0Element h = gw.hyperbolic_image(Int(5));
    CHECK(h.sym.is_zero());
    CHECK(h.hyp.coeff(Vec{}) == 5);
    // abgroup verification on the finite rank model: Z -> Z^3
    FgAbGroup z = FgAbGroup::free_group(1), z3g = FgAbGroup::free_group(3);
    AbHom hmap{z, z3g, IntMatrix::from_rows({{1}, {0}, {0}})};
    CokernelResult c = cokernel(hmap);
    CHECK(c.group.to_string() == "Z^2");
  }
}
