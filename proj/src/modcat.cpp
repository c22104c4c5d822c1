#include "f1kgw/modcat.hpp"

#include <sstream>

#include "f1kgw/errors.hpp"

namespace f1kgw {

FreeModule FreeModule::make(PointedMonoid m, size_t rank, std::string stem) {
  FreeModule f{std::move(m), rank, {}};
  for (size_t i = 0; i < rank; ++i) f.labels.push_back(stem + std::to_string(i + 1));
  return f;
}

FreeModule FreeModule::direct_sum(const FreeModule& other) const {
  require(monoid.same_as(other.monoid), "BadInput", "direct sum over different monoids");
  FreeModule f{monoid, rank + other.rank, labels};
  f.labels.insert(f.labels.end(), other.labels.begin(), other.labels.end());
  return f;
}

bool ProjectiveModule::is_free() const {
  for (const auto& e : idempotents)
    if (!monoid.equal(e, monoid.one_elem())) return false;
  return true;
}

MonoidInvolution MonoidInvolution::identity(PointedMonoid m) {
  MonoidInvolution s(std::move(m));
  s.kind_ = Kind::Identity;
  return s;
}

MonoidInvolution MonoidInvolution::table_perm(PointedMonoid m, std::vector<size_t> perm) {
  require(m.backend() == Backend::FiniteTable, "BadInput", "table_perm needs a finite table");
  const size_t n = *m.size();
  require(perm.size() == n, "BadInput", "permutation size mismatch");
  require(perm[0] == 0 && (n == 1 || perm[1] == 1), "BadInput",
          "involution must fix zero and one");
  for (size_t i = 0; i < n; ++i) require(perm[perm[i]] == i, "BadInput", "not an involution");
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      require(perm[m.table_mul(a, b)] == m.table_mul(perm[b], perm[a]), "BadInput",
              "not an anti-automorphism");
  MonoidInvolution s(std::move(m));
  s.kind_ = Kind::TablePerm;
  s.perm_ = std::move(perm);
  return s;
}

MonoidInvolution MonoidInvolution::ambient_matrix(PointedMonoid m, IntMatrix mat) {
  require(m.backend() == Backend::Exponent, "BadInput", "ambient_matrix needs an Exponent monoid");
  const FgAbGroup& g = m.ambient();
  AbHom h{g, g, mat};
  require(h.is_well_defined(), "BadInput", "matrix does not respect the ambient torsion");
  for (const auto& e : g.generators())
    require(g.equal(h.apply(h.apply(e)), e), "BadInput", "matrix is not an involution");
  // must restrict to an automorphism of the monoid; since sigma^2 = id,
  // sigma(M) inside M already forces equality
  for (const auto& gen : m.exp_generators())
    require(m.exp_member(g.reduce(mat.apply(gen))), "BadInput",
            "involution does not preserve the monoid");
  MonoidInvolution s(std::move(m));
  s.kind_ = Kind::Ambient;
  s.mat_ = std::move(mat);
  return s;
}

MonoidElement MonoidInvolution::apply(const MonoidElement& e0) const {
  MonoidElement e = monoid_.normalize(e0);
  if (e.is_zero()) return e;
  switch (kind_) {
    case Kind::Identity:
      return e;
    case Kind::TablePerm:
      return monoid_.normalize(MonoidElement::table(perm_.at(e.index)));
    case Kind::Ambient:
      return monoid_.normalize(MonoidElement::exp(monoid_.ambient().reduce(mat_.apply(e.coords))));
  }
  return e;
}

AbHom MonoidInvolution::units_involution() const {
  const UnitsGroup& u = monoid_.units();
  const FgAbGroup& g = u.group();
  IntMatrix m(g.dim(), g.dim());
  for (size_t j = 0; j < g.dim(); ++j) {
    MonoidElement img = apply(u.element_of(g.basis_vector(j)));
    auto c = u.coords_of(img);
    require(c.has_value(), "Internal", "involution left the unit group");
    for (size_t i = 0; i < g.dim(); ++i) m.at(i, j) = (*c)[i];
  }
  return AbHom{g, g, m};
}

MonomialMatrix::MonomialMatrix(FreeModule dom, FreeModule cod)
    : dom_(std::move(dom)), cod_(std::move(cod)) {
  by_col_.assign(dom_.rank, std::nullopt);
  row_to_col_.assign(cod_.rank, std::nullopt);
}

MonomialMatrix MonomialMatrix::identity(const FreeModule& m) {
  MonomialMatrix f(m, m);
  for (size_t i = 0; i < m.rank; ++i) f.set_entry(i, i, m.monoid.one_elem());
  return f;
}

MonomialMatrix MonomialMatrix::from_entries(
    FreeModule dom, FreeModule cod,
    const std::vector<std::tuple<size_t, size_t, MonoidElement>>& entries) {
  MonomialMatrix f(std::move(dom), std::move(cod));
  for (const auto& [row, col, a] : entries) f.set_entry(row, col, a);
  return f;
}

MonomialMatrix MonomialMatrix::diagonal(const FreeModule& m,
                                        const std::vector<MonoidElement>& d) {
  require(d.size() == m.rank, "BadInput", "diagonal length mismatch");
  MonomialMatrix f(m, m);
  for (size_t i = 0; i < m.rank; ++i) f.set_entry(i, i, d[i]);
  return f;
}

MonomialMatrix MonomialMatrix::permutation(const FreeModule& m, const std::vector<size_t>& perm) {
  require(perm.size() == m.rank, "BadInput", "permutation length mismatch");
  MonomialMatrix f(m, m);
  for (size_t i = 0; i < m.rank; ++i) f.set_entry(perm[i], i, m.monoid.one_elem());
  return f;
}

void MonomialMatrix::set_entry(size_t row, size_t col, const MonoidElement& a0) {
  require(row < rows() && col < cols(), "BadInput", "entry out of range");
  MonoidElement a = dom_.monoid.normalize(a0);
  if (a.is_zero()) return;
  require(!by_col_[col].has_value(), "UnsupportedMorphism",
          "column already has a nonzero entry; morphisms are monomial");
  require(!row_to_col_[row].has_value(), "UnsupportedMorphism",
          "row already has a nonzero entry; morphisms are monomial");
  by_col_[col] = std::make_pair(row, a);
  row_to_col_[row] = col;
}

MonoidElement MonomialMatrix::entry(size_t row, size_t col) const {
  if (col < cols() && by_col_[col] && by_col_[col]->first == row) return by_col_[col]->second;
  return MonoidElement::zero();
}

std::optional<std::pair<size_t, MonoidElement>> MonomialMatrix::row_support(size_t row) const {
  if (!row_to_col_[row]) return std::nullopt;
  size_t col = *row_to_col_[row];
  return std::make_pair(col, by_col_[col]->second);
}

std::optional<std::pair<size_t, MonoidElement>> MonomialMatrix::col_support(size_t col) const {
  return by_col_[col];
}

MonomialMatrix MonomialMatrix::compose(const MonomialMatrix& inner) const {
  require(inner.cod_.rank == dom_.rank && inner.cod_.monoid.same_as(dom_.monoid),
          "NotComposable", "codomain of the inner map must match the outer domain");
  MonomialMatrix out(inner.dom_, cod_);
  const PointedMonoid& a = dom_.monoid;
  for (size_t col = 0; col < inner.cols(); ++col) {
    auto first = inner.by_col_[col];
    if (!first) continue;
    auto second = by_col_[first->first];
    if (!second) continue;
    MonoidElement prod = a.mul(second->second, first->second);
    if (!prod.is_zero()) out.set_entry(second->first, col, prod);
  }
  return out;
}

MonomialMatrix MonomialMatrix::direct_sum(const MonomialMatrix& other) const {
  MonomialMatrix out(dom_.direct_sum(other.dom_), cod_.direct_sum(other.cod_));
  for (size_t col = 0; col < cols(); ++col)
    if (by_col_[col]) out.set_entry(by_col_[col]->first, col, by_col_[col]->second);
  for (size_t col = 0; col < other.cols(); ++col)
    if (other.by_col_[col])
      out.set_entry(rows() + other.by_col_[col]->first, cols() + col, other.by_col_[col]->second);
  return out;
}

MonomialMatrix MonomialMatrix::inverse() const {
  MorphismClass c = classify_morphism(*this);
  require(c.iso, "BadInput", "inverse of a non-isomorphism");
  MonomialMatrix out(cod_, dom_);
  const PointedMonoid& a = dom_.monoid;
  for (size_t col = 0; col < cols(); ++col) {
    auto e = by_col_[col];
    out.set_entry(col, e->first, a.pow(e->second, Int(-1)));
  }
  return out;
}

bool MonomialMatrix::equal(const MonomialMatrix& other) const {
  if (rows() != other.rows() || cols() != other.cols()) return false;
  for (size_t col = 0; col < cols(); ++col) {
    auto x = by_col_[col], y = other.by_col_[col];
    if (x.has_value() != y.has_value()) return false;
    if (x && (x->first != y->first || !dom_.monoid.equal(x->second, y->second))) return false;
  }
  return true;
}

std::string MonomialMatrix::to_string() const {
  std::ostringstream os;
  os << rows() << "x" << cols() << "{";
  bool first = true;
  for (size_t col = 0; col < cols(); ++col)
    if (by_col_[col]) {
      os << (first ? "" : ", ") << "(" << by_col_[col]->first << "," << col << ")="
         << dom_.monoid.element_to_string(by_col_[col]->second);
      first = false;
    }
  os << "}";
  return os.str();
}

namespace {

/// Is multiplication by a an injective self-map of A?
bool mult_injective(const PointedMonoid& m, const MonoidElement& a) {
  switch (m.backend()) {
    case Backend::Exponent:
      return !m.normalize(a).is_zero();
    case Backend::Wedge: {
      MonoidElement e = m.normalize(a);
      if (e.is_zero()) return false;
      if (e.index == MonoidElement::kUnitComponent) return true;
      // a nonunit kills the other components
      return m.properties().cancellative;
    }
    case Backend::FiniteTable: {
      MonoidElement e = m.normalize(a);
      if (e.is_zero()) return false;
      const size_t n = *m.size();
      for (size_t x = 0; x < n; ++x)
        for (size_t y = x + 1; y < n; ++y)
          if (m.table_mul(x, e.index) == m.table_mul(y, e.index)) return false;
      return true;
    }
  }
  return false;
}

/// Is multiplication by a a normal self-map of A (fibres over nonzero
/// elements are singletons)?
bool mult_normal(const PointedMonoid& m, const MonoidElement& a) {
  switch (m.backend()) {
    case Backend::Exponent:
    case Backend::Wedge:
      return true;  // pc backends
    case Backend::FiniteTable: {
      MonoidElement e = m.normalize(a);
      if (e.is_zero()) return true;
      const size_t n = *m.size();
      for (size_t x = 0; x < n; ++x)
        for (size_t y = x + 1; y < n; ++y) {
          size_t xa = m.table_mul(x, e.index), ya = m.table_mul(y, e.index);
          if (xa == ya && xa != 0) return false;
        }
      return true;
    }
  }
  return false;
}

}  // namespace

MorphismClass classify_morphism(const MonomialMatrix& f) {
  const PointedMonoid& a = f.domain().monoid;
  MorphismClass c;
  c.normal = true;
  bool cols_full = true, rows_full = true, entries_injective_normal = true, entries_units = true;
  for (size_t col = 0; col < f.cols(); ++col) {
    auto e = f.col_support(col);
    if (!e) {
      cols_full = false;
      continue;
    }
    if (!mult_normal(a, e->second)) c.normal = false;
    if (!mult_injective(a, e->second) || !mult_normal(a, e->second))
      entries_injective_normal = false;
    if (!a.units().is_unit(e->second)) entries_units = false;
  }
  for (size_t row = 0; row < f.rows(); ++row)
    if (!f.row_support(row)) rows_full = false;
  c.inflation = cols_full && entries_injective_normal;
  c.deflation = rows_full && entries_units;
  c.iso = f.rows() == f.cols() && cols_full && rows_full && entries_units;
  return c;
}

MonomialMatrix split_conflation(const Conflation& c) {
  const MonomialMatrix& i = c.inflation;
  const MonomialMatrix& pi = c.deflation;
  require(i.codomain().rank == pi.domain().rank &&
              i.codomain().monoid.same_as(pi.domain().monoid),
          "NotAConflation", "middle objects do not match");
  MorphismClass ci = classify_morphism(i), cpi = classify_morphism(pi);
  require(ci.inflation, "NotAConflation", "first map is not an inflation");
  require(cpi.deflation, "NotAConflation", "second map is not a deflation");
  const size_t nv = i.codomain().rank;
  // image rows of i must be exactly the rows pi kills
  std::vector<bool> hit(nv, false);
  for (size_t col = 0; col < i.cols(); ++col) hit[i.col_support(col)->first] = true;
  for (size_t v = 0; v < nv; ++v) {
    bool pi_uses = pi.col_support(v).has_value();
    require(hit[v] != pi_uses, "NotAConflation", "image of i must be the kernel of pi");
  }
  require(i.cols() + pi.rows() == nv, "NotAConflation", "rank mismatch");

  // the unique section of pi inverts its unit entries
  const PointedMonoid& a = i.domain().monoid;
  MonomialMatrix s(pi.codomain(), pi.domain());
  for (size_t w = 0; w < pi.rows(); ++w) {
    auto e = pi.row_support(w);
    s.set_entry(e->first, w, a.pow(e->second, Int(-1)));
  }

  FreeModule uw = i.domain().direct_sum(pi.codomain());
  MonomialMatrix phi(uw, i.codomain());
  for (size_t col = 0; col < i.cols(); ++col) {
    auto e = i.col_support(col);
    phi.set_entry(e->first, col, e->second);
  }
  for (size_t col = 0; col < s.cols(); ++col) {
    auto e = s.col_support(col);
    phi.set_entry(e->first, i.cols() + col, e->second);
  }
  return phi;
}

FreeModule normal_dual(const FreeModule& m) {
  const PropertyReport& p = m.monoid.properties();
  require(p.right_reversible && p.rpc, "NotReversible",
          "normal dual needs a right reversible rpc monoid");
  FreeModule dual{m.monoid, m.rank, {}};
  for (size_t i = 0; i < m.rank; ++i) {
    std::string base = i < m.labels.size() ? m.labels[i] : "s" + std::to_string(i + 1);
    dual.labels.push_back(base + "^");
  }
  return dual;
}

MonomialMatrix dual_of_morphism(const MonomialMatrix& f, const MonoidInvolution& sigma) {
  FreeModule dual_dom = normal_dual(f.codomain());
  FreeModule dual_cod = normal_dual(f.domain());
  MonomialMatrix out(dual_dom, dual_cod);
  for (size_t col = 0; col < f.cols(); ++col) {
    auto e = f.col_support(col);
    if (e) out.set_entry(col, e->first, sigma.apply(e->second));
  }
  return out;
}

MonomialMatrix double_dual_map(const FreeModule& m, const MonoidElement& epsilon) {
  FreeModule ddual = normal_dual(normal_dual(m));
  MonomialMatrix out(m, ddual);
  for (size_t i = 0; i < m.rank; ++i) out.set_entry(i, i, epsilon);
  return out;
}

}  // namespace f1kgw
