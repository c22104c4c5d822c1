#include "f1kgw/forms.hpp"

#include <algorithm>
#include <sstream>

#include "f1kgw/errors.hpp"

namespace f1kgw {

DualityDatum DualityDatum::standard(PointedMonoid m) {
  MonoidElement one = m.one_elem();
  return make(m, MonoidInvolution::identity(m), one);
}

DualityDatum DualityDatum::make(PointedMonoid m, MonoidInvolution sigma, MonoidElement epsilon) {
  const PropertyReport& p = m.properties();
  require(p.right_reversible && p.rpc, "NotReversible",
          "duality needs a right reversible rpc monoid");
  require(m.units().is_unit(epsilon), "BadInput", "epsilon must be a unit");
  MonoidElement prod = m.mul(epsilon, sigma.apply(epsilon));
  require(m.equal(prod, m.one_elem()), "BadInput", "epsilon * sigma(epsilon) must be 1");
  return DualityDatum{std::move(m), std::move(sigma), std::move(epsilon)};
}

SymForm SymForm::make(DualityDatum d, MonomialMatrix psi) {
  require(psi.rows() == psi.cols(), "InvalidForm", "form matrix must be square");
  const PointedMonoid& a = d.monoid;
  const size_t n = psi.rows();
  for (size_t j = 0; j < n; ++j) {
    auto e = psi.col_support(j);
    require(e.has_value(), "InvalidForm", "form matrix must be invertible");
    require(a.units().is_unit(e->second), "InvalidForm", "form entries must be units");
  }
  // psi_ij = eps sigma(psi_ji); forces the support to be an involution
  for (size_t j = 0; j < n; ++j) {
    auto e = psi.col_support(j);
    size_t i = e->first;
    MonoidElement opposite = psi.entry(j, i);
    require(!opposite.is_zero(), "InvalidForm", "support permutation is not an involution");
    require(a.equal(e->second, a.mul(d.epsilon, d.sigma.apply(opposite))),
            "InvalidForm", "psi_ij = epsilon sigma(psi_ji) violated");
  }
  return SymForm(std::move(d), std::move(psi));
}

SymForm SymForm::diagonal(const DualityDatum& d, const std::vector<MonoidElement>& xi) {
  FreeModule m = FreeModule::make(d.monoid, xi.size());
  MonomialMatrix psi(m, m);
  for (size_t i = 0; i < xi.size(); ++i) psi.set_entry(i, i, xi[i]);
  return make(d, psi);
}

SymForm SymForm::hyperbolic(const DualityDatum& d, size_t n) {
  FreeModule m = FreeModule::make(d.monoid, 2 * n);
  MonomialMatrix psi(m, m);
  for (size_t i = 0; i < n; ++i) {
    psi.set_entry(i, n + i, d.monoid.one_elem());
    psi.set_entry(n + i, i, d.epsilon);
  }
  return make(d, psi);
}

SymForm SymForm::direct_sum(const SymForm& other) const {
  return make(datum_, psi_.direct_sum(other.psi_));
}

SymForm SymForm::congruence(const MonomialMatrix& g) const {
  require(classify_morphism(g).iso, "InvalidForm", "congruence needs an isomorphism");
  MonomialMatrix pg = dual_of_morphism(g, datum_.sigma);
  return make(datum_, pg.compose(psi_).compose(g));
}

// ---------------------------------------------------------------------------
// SPic

SPicSet spic(const DualityDatum& d) {
  SPicSet out;
  out.datum_ = d;
  const PointedMonoid& a = d.monoid;
  const UnitsGroup& u = a.units();

  if (u.finite()) {
    out.finite_ = true;
    const auto& elems = u.elements();
    // the symmetric units: xi = eps sigma(xi)
    std::vector<size_t> sym_idx;
    for (size_t i = 0; i < elems.size(); ++i)
      if (a.equal(elems[i], a.mul(d.epsilon, d.sigma.apply(elems[i])))) sym_idx.push_back(i);
    std::vector<bool> seen(elems.size(), false);
    for (size_t i : sym_idx) {
      if (seen[i]) continue;
      SPicSet::Orbit orbit;
      Int stab = 0;
      size_t min_idx = i;
      for (size_t ui = 0; ui < elems.size(); ++ui) {
        MonoidElement twisted = a.mul(a.mul(elems[ui], elems[i]), d.sigma.apply(elems[ui]));
        if (a.equal(twisted, elems[i])) stab += 1;
        for (size_t j : sym_idx)
          if (a.equal(twisted, elems[j]) && !seen[j]) {
            seen[j] = true;
            orbit.elements.push_back(elems[j]);
            min_idx = std::min(min_idx, j);
          }
      }
      std::sort(orbit.elements.begin(), orbit.elements.end());
      orbit.rep = elems[min_idx];
      orbit.key = Vec{Int(min_idx)};
      orbit.stabilizer_order = stab;
      out.orbits_.push_back(std::move(orbit));
    }
    std::sort(out.orbits_.begin(), out.orbits_.end(),
              [](const SPicSet::Orbit& x, const SPicSet::Orbit& y) {
                return lex_compare(x.key, y.key) < 0;
              });
    out.empty_ = out.orbits_.empty();
    return out;
  }

  // infinite abelian units: solve in additive coordinates
  require(u.abelian(), "InfiniteUnits", "infinite non-abelian unit groups are out of scope");
  out.finite_ = false;
  out.units_ = u.group();
  out.s_ = d.sigma.units_involution();
  auto eps_coords = u.coords_of(d.epsilon);
  require(eps_coords.has_value(), "BadInput", "epsilon must be a unit");
  // xi = eps + s(xi): (1 - s) xi = eps
  AbHom one_minus_s = AbHom::identity(out.units_).add(out.s_.negate());
  auto xi0 = solve(one_minus_s, *eps_coords);
  if (!xi0) {
    out.empty_ = true;
    return out;
  }
  out.xi0_ = *xi0;
  KernelResult k = kernel(one_minus_s);
  out.ker_incl_ = k.inclusion;
  // orbits: translation by im(1 + s) inside ker(1 - s)
  AbHom one_plus_s = AbHom::identity(out.units_).add(out.s_);
  std::vector<Vec> rel_cols;
  for (size_t j = 0; j < out.units_.dim(); ++j) {
    Vec img = one_plus_s.apply(out.units_.basis_vector(j));
    auto c = solve(k.inclusion, img);
    require(c.has_value(), "Internal", "im(1+s) must lie in ker(1-s)");
    rel_cols.push_back(*c);
  }
  IntMatrix rel = rel_cols.empty() ? IntMatrix(k.group.dim(), 0) : IntMatrix::from_cols(rel_cols);
  Presentation p = quotient_presentation(k.group.dim(), rel);
  out.quotient_ = p.group;
  out.quot_proj_ = p.projection;
  out.quot_sect_ = p.section;
  KernelResult stab = kernel(one_plus_s);
  out.stab_order_ = stab.group.is_finite() ? stab.group.order() : Int(-1);
  return out;
}

bool SPicSet::is_empty() const { return empty_; }

const std::vector<SPicSet::Orbit>& SPicSet::orbits() const {
  require(finite_, "InfiniteUnits", "orbit list needs finite units");
  return orbits_;
}

Vec SPicSet::orbit_key(const MonoidElement& xi) const {
  const PointedMonoid& a = datum_.monoid;
  if (finite_) {
    for (const auto& o : orbits_)
      for (const auto& e : o.elements)
        if (a.equal(e, xi)) return o.key;
    fail("BadInput", "element is not a symmetric unit");
  }
  auto coords = a.units().coords_of(xi);
  require(coords.has_value(), "BadInput", "element is not a unit");
  Vec diff = units_.sub(*coords, xi0_);
  auto kc = solve(ker_incl_, diff);
  require(kc.has_value(), "BadInput", "element is not a symmetric unit");
  return quotient_.reduce(quot_proj_.apply(*kc));
}

MonoidElement SPicSet::rep_of_key(const Vec& key) const {
  if (finite_) {
    for (const auto& o : orbits_)
      if (o.key == key) return o.rep;
    fail("BadInput", "no orbit with this key");
  }
  Vec kc = quot_sect_.apply(quotient_.reduce(key));
  Vec coords = units_.add(xi0_, ker_incl_.apply(kc));
  return datum_.monoid.units().element_of(coords);
}

std::optional<MonoidElement> SPicSet::twist_witness(const MonoidElement& from,
                                                    const MonoidElement& to) const {
  const PointedMonoid& a = datum_.monoid;
  if (finite_) {
    for (const auto& u : a.units().elements()) {
      MonoidElement twisted = a.mul(a.mul(u, from), datum_.sigma.apply(u));
      if (a.equal(twisted, to)) return u;
    }
    return std::nullopt;
  }
  auto cf = a.units().coords_of(from), ct = a.units().coords_of(to);
  require(cf.has_value() && ct.has_value(), "BadInput", "twist witness needs units");
  AbHom one_plus_s = AbHom::identity(units_).add(s_);
  auto sol = solve(one_plus_s, units_.sub(*ct, *cf));
  if (!sol) return std::nullopt;
  return a.units().element_of(*sol);
}

Int SPicSet::stabilizer_order(const Vec& key) const {
  if (finite_) {
    for (const auto& o : orbits_)
      if (o.key == key) return o.stabilizer_order;
    fail("BadInput", "no orbit with this key");
  }
  require(stab_order_ >= 0, "InfiniteUnits", "stabilizer is infinite");
  return stab_order_;
}

IndexDescriptor SPicSet::descriptor() const {
  if (finite_) {
    std::vector<Vec> keys;
    for (const auto& o : orbits_) keys.push_back(o.key);
    return IndexDescriptor::finite_list(keys);
  }
  return IndexDescriptor::group_elements(quotient_);
}

std::optional<size_t> SPicSet::orbit_count() const {
  if (finite_) return orbits_.size();
  if (quotient_.is_finite()) {
    Int n = quotient_.order();
    return static_cast<size_t>(n.convert_to<long>());
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// classification

Int FormClass::total_rank() const {
  Int r = 2 * hyperbolic_count;
  for (const auto& [k, m] : multiplicities) r += m;
  return r;
}

ClassifyResult classify(const SymForm& psi, const SPicSet& sp) {
  const DualityDatum& d = psi.datum();
  const PointedMonoid& a = d.monoid;
  const size_t n = psi.rank();
  const MonomialMatrix& m = psi.matrix();

  // support permutation (an involution by construction)
  std::vector<size_t> perm(n);
  for (size_t j = 0; j < n; ++j) perm[j] = m.col_support(j)->first;

  std::vector<std::pair<size_t, size_t>> pairs;
  std::vector<size_t> fixed;
  for (size_t j = 0; j < n; ++j) {
    if (perm[j] == j) {
      fixed.push_back(j);
    } else if (j < perm[j]) {
      pairs.emplace_back(j, perm[j]);
    }
  }
  // order fixed points by orbit key so that equal classes produce literally
  // identical normal forms
  std::stable_sort(fixed.begin(), fixed.end(), [&](size_t x, size_t y) {
    return lex_compare(sp.orbit_key(m.entry(x, x)), sp.orbit_key(m.entry(y, y))) < 0;
  });

  FormClass cls;
  cls.hyperbolic_count = Int(pairs.size());

  // gauge g: NF-index -> original index with unit entries; the congruence
  // P(g) psi g normalizes pairs to [[0,1],[eps,0]] and fixed entries to the
  // canonical orbit representative
  FreeModule nf_mod = FreeModule::make(a, n);
  MonomialMatrix g(nf_mod, FreeModule::make(a, n));
  size_t pos = 0;
  for (const auto& [i, j] : pairs) {
    // entries: u at position (i, pos), psi_ij^{-1} at (j, pos + 1)
    g.set_entry(i, pos, a.one_elem());
    g.set_entry(j, pos + 1, a.pow(m.entry(i, j), Int(-1)));
    pos += 2;
  }
  for (size_t f : fixed) {
    MonoidElement xi = m.entry(f, f);
    Vec key = sp.orbit_key(xi);
    cls.multiplicities[key] += 1;
    MonoidElement rep = sp.rep_of_key(key);
    auto u = sp.twist_witness(xi, rep);
    require(u.has_value(), "Internal", "orbit representative must be reachable");
    // sigma(w) xi w = u xi sigma(u) with w = sigma(u)
    g.set_entry(f, pos, d.sigma.apply(*u));
    pos += 1;
  }

  SymForm nf = psi.congruence(g);
  // verify the normal form shape: hyperbolic blocks then canonical diagonal
  size_t check = 0;
  for (size_t t = 0; t < pairs.size(); ++t) {
    require(a.equal(nf.matrix().entry(check, check + 1), a.one_elem()), "Internal",
            "hyperbolic block not normalized");
    require(a.equal(nf.matrix().entry(check + 1, check), d.epsilon), "Internal",
            "hyperbolic block not normalized");
    check += 2;
  }
  (void)check;
  return ClassifyResult{std::move(cls), std::move(g), std::move(nf)};
}

ClassifyResult classify(const SymForm& psi) { return classify(psi, spic(psi.datum())); }

IsometryResult is_isometric(const SymForm& psi1, const SymForm& psi2) {
  if (psi1.rank() != psi2.rank()) return {false, std::nullopt};
  SPicSet sp = spic(psi1.datum());
  ClassifyResult c1 = classify(psi1, sp);
  ClassifyResult c2 = classify(psi2, sp);
  if (!(c1.cls == c2.cls)) return {false, std::nullopt};
  // P(g1) psi1 g1 = NF = P(g2) psi2 g2, so g = g2 g1^{-1} carries psi2 to psi1
  MonomialMatrix g = c2.witness.compose(c1.witness.inverse());
  SymForm back = psi2.congruence(g);
  require(back.matrix().equal(psi1.matrix()), "Internal", "isometry witness failed verification");
  return {true, g};
}

Int isometry_group_order(const DualityDatum& d, const SPicSet& sp, const FormClass& c) {
  const UnitsGroup& u = d.monoid.units();
  require(u.finite(), "InfiniteUnits", "isometry group order needs finite units");
  Int units = u.order();
  Int order = 1;
  Int h = c.hyperbolic_count;
  // (2 |A^x|)^h * h!
  for (Int i = 0; i < h; ++i) order *= 2 * units;
  for (Int i = 2; i <= h; ++i) order *= i;
  for (const auto& [key, mult] : c.multiplicities) {
    Int stab = sp.stabilizer_order(key);
    for (Int i = 0; i < mult; ++i) order *= stab;
    for (Int i = 2; i <= mult; ++i) order *= i;
  }
  return order;
}

std::optional<std::vector<size_t>> is_metabolic(const SymForm& psi) {
  const size_t n = psi.rank();
  std::vector<size_t> lagrangian;
  for (size_t j = 0; j < n; ++j) {
    size_t i = psi.matrix().col_support(j)->first;
    if (i == j) return std::nullopt;  // fixed points forbid a Lagrangian
    if (j < i) lagrangian.push_back(j);
  }
  return lagrangian;
}

SymForm reduce_isotropic(const SymForm& psi, const std::vector<size_t>& s) {
  const size_t n = psi.rank();
  std::vector<bool> removed(n, false);
  for (size_t j : s) {
    require(j < n, "BadInput", "index out of range");
    size_t i = psi.matrix().col_support(j)->first;
    require(i != j, "NotIsotropic", "a fixed index of the support involution is not isotropic");
    removed[j] = true;
  }
  for (size_t j : s) {
    size_t i = psi.matrix().col_support(j)->first;
    require(!removed[i], "NotIsotropic", "the index set must not contain a full 2-cycle");
    removed[i] = true;
  }
  std::vector<size_t> keep;
  for (size_t j = 0; j < n; ++j)
    if (!removed[j]) keep.push_back(j);
  FreeModule sub = FreeModule::make(psi.datum().monoid, keep.size());
  MonomialMatrix out(sub, sub);
  for (size_t bj = 0; bj < keep.size(); ++bj)
    for (size_t bi = 0; bi < keep.size(); ++bi) {
      MonoidElement e = psi.matrix().entry(keep[bi], keep[bj]);
      if (!e.is_zero()) out.set_entry(bi, bj, e);
    }
  return SymForm::make(psi.datum(), out);
}

// ---------------------------------------------------------------------------
// GW0 / W0 at monoid level

std::string GW0Group::to_string() const {
  return "sym[" + sym_index.to_string() + "] + hyp[" + hyp_index.to_string() + "]";
}

std::string W0Group::to_string() const { return "Z^(" + index.to_string() + ")"; }

GW0Element MonoidGW0::class_of(const FormClass& c) const {
  GW0Element e = group.zero();
  e.hyp.add_term(Vec{}, c.hyperbolic_count);
  for (const auto& [key, mult] : c.multiplicities) e.sym.add_term(key, mult);
  return e;
}

GW0Element MonoidGW0::hyperbolic_image(const Int& k0_class) const {
  GW0Element e = group.zero();
  e.hyp.add_term(Vec{}, k0_class);
  return e;
}

MonoidGW0 gw0_monoid(const DualityDatum& d) {
  MonoidGW0 out{spic(d), GW0Group{IndexDescriptor::finite_list({}),
                                  IndexDescriptor::finite_list({Vec{}})}};
  out.group.sym_index = out.spic.descriptor();
  return out;
}

W0Group w0_monoid(const DualityDatum& d) { return W0Group{spic(d).descriptor()}; }

}  // namespace f1kgw
