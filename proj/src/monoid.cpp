#include "f1kgw/monoid.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "f1kgw/errors.hpp"
#include "f1kgw/ratlp.hpp"

namespace f1kgw {

bool MonoidElement::operator<(const MonoidElement& other) const {
  if (tag != other.tag) return tag < other.tag;
  if (index != other.index) return index < other.index;
  return lex_compare(coords, other.coords) < 0;
}

namespace {

std::vector<Rat> free_part(const FgAbGroup& g, const Vec& coords) {
  std::vector<Rat> out;
  for (size_t i = g.torsion_count(); i < g.dim(); ++i) out.emplace_back(coords[i]);
  return out;
}

}  // namespace

struct PointedMonoid::Impl {
  Backend backend = Backend::Exponent;

  // FiniteTable
  std::vector<std::vector<size_t>> table;
  bool commutative = true;

  // Exponent / Wedge
  FgAbGroup ambient;
  std::vector<Vec> gens;              // flattened (Wedge: units first, then components)
  std::vector<size_t> gen_component;  // Wedge: component per generator
  size_t num_components = 0;

  std::vector<std::string> names;

  // caches
  mutable std::once_flag units_flag, primes_flag, props_flag, member_flag;
  mutable UnitsGroup units;
  mutable std::vector<PrimeIdeal> primes;
  mutable PropertyReport props;

  // Exponent membership context
  mutable std::vector<size_t> unit_idx, nonunit_idx;
  mutable FgAbGroup quot;
  mutable IntMatrix quot_proj;
  mutable std::vector<Vec> q_gens;  // quotient coords of non-unit generators
  mutable std::map<Vec, bool, VecLess> member_memo;
  mutable std::mutex memo_mutex;

  // Wedge component monoids (units + that component's generators)
  mutable std::once_flag comp_flag;
  mutable std::vector<PointedMonoid> comp_monoids;
  mutable std::vector<std::vector<size_t>> comp_gen_to_flat;  // per component
};

// ---------------------------------------------------------------------------
// constructors

PointedMonoid PointedMonoid::finite_table(std::vector<std::vector<size_t>> table,
                                          std::vector<std::string> names) {
  auto impl = std::make_shared<Impl>();
  impl->backend = Backend::FiniteTable;
  const size_t n = table.size();
  require(n >= 1, "BadInput", "empty multiplication table");
  for (const auto& row : table) require(row.size() == n, "BadInput", "ragged multiplication table");
  for (const auto& row : table)
    for (size_t x : row) require(x < n, "BadInput", "table entry out of range");
  const size_t one = n == 1 ? 0 : 1;
  for (size_t i = 0; i < n; ++i) {
    require(table[0][i] == 0 && table[i][0] == 0, "BadInput", "zero is not absorbing");
    require(table[one][i] == i && table[i][one] == i, "BadInput", "one is not neutral");
  }
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t c = 0; c < n; ++c)
        require(table[table[a][b]][c] == table[a][table[b][c]], "BadInput",
                "multiplication table is not associative");
  impl->commutative = true;
  for (size_t a = 0; a < n && impl->commutative; ++a)
    for (size_t b = a + 1; b < n; ++b)
      if (table[a][b] != table[b][a]) {
        impl->commutative = false;
        break;
      }
  impl->table = std::move(table);
  impl->names = std::move(names);
  return PointedMonoid(std::move(impl));
}

PointedMonoid PointedMonoid::exponent(FgAbGroup ambient, std::vector<Vec> generators,
                                      std::vector<std::string> names) {
  auto impl = std::make_shared<Impl>();
  impl->backend = Backend::Exponent;
  std::vector<Vec> gens;
  std::vector<std::string> kept_names;
  for (size_t i = 0; i < generators.size(); ++i) {
    Vec g = ambient.reduce(generators[i]);
    require(!vec_is_zero(g), "BadInput", "Exponent generator is zero in the ambient group");
    if (std::find(gens.begin(), gens.end(), g) != gens.end()) continue;  // saturated presentation
    gens.push_back(std::move(g));
    if (i < names.size()) kept_names.push_back(names[i]);
  }
  impl->ambient = std::move(ambient);
  impl->gens = std::move(gens);
  impl->names = std::move(kept_names);
  impl->commutative = true;
  return PointedMonoid(std::move(impl));
}

PointedMonoid PointedMonoid::wedge(FgAbGroup ambient, std::vector<Vec> unit_gens,
                                   std::vector<std::vector<Vec>> component_gens,
                                   std::vector<std::string> names) {
  require(component_gens.size() >= 2, "BadInput", "wedge needs at least two components");
  auto impl = std::make_shared<Impl>();
  impl->backend = Backend::Wedge;
  impl->ambient = ambient;
  impl->num_components = component_gens.size();
  for (auto& g : unit_gens) {
    Vec v = ambient.reduce(g);
    require(!vec_is_zero(v), "BadInput", "wedge unit generator is zero");
    impl->gens.push_back(v);
    impl->gen_component.push_back(MonoidElement::kUnitComponent);
  }
  for (size_t c = 0; c < component_gens.size(); ++c)
    for (auto& g : component_gens[c]) {
      Vec v = ambient.reduce(g);
      require(!vec_is_zero(v), "BadInput", "wedge component generator is zero");
      impl->gens.push_back(v);
      impl->gen_component.push_back(c);
    }
  impl->names = std::move(names);
  impl->commutative = true;
  PointedMonoid m(std::move(impl));
  // shared-units invariant: no component generator may become invertible
  const UnitsGroup& u = m.units();
  (void)u;
  return m;
}

PointedMonoid PointedMonoid::f1() {
  return exponent(FgAbGroup::trivial(), {});
}

PointedMonoid PointedMonoid::terminal() {
  return finite_table({{0}}, {"0"});
}

PointedMonoid PointedMonoid::free_monoid(size_t n) {
  FgAbGroup g = FgAbGroup::free_group(n);
  std::vector<Vec> gens;
  std::vector<std::string> names;
  for (size_t i = 0; i < n; ++i) {
    gens.push_back(g.basis_vector(i));
    names.push_back(n == 1 ? "t" : "T" + std::to_string(i + 1));
  }
  return exponent(g, gens, names);
}

PointedMonoid PointedMonoid::laurent(size_t n) {
  FgAbGroup g = FgAbGroup::free_group(n);
  std::vector<Vec> gens;
  std::vector<std::string> names;
  for (size_t i = 0; i < n; ++i) {
    gens.push_back(g.basis_vector(i));
    names.push_back((n == 1 ? std::string("t") : "T" + std::to_string(i + 1)));
    gens.push_back(vec_neg(g.basis_vector(i)));
    names.push_back((n == 1 ? std::string("t^-1") : "T" + std::to_string(i + 1) + "^-1"));
  }
  return exponent(g, gens, names);
}

PointedMonoid PointedMonoid::group_monoid(const FgAbGroup& g) {
  std::vector<Vec> gens;
  std::vector<std::string> names;
  for (size_t i = 0; i < g.dim(); ++i) {
    gens.push_back(g.basis_vector(i));
    names.push_back("g" + std::to_string(i + 1));
    if (i >= g.torsion_count()) {
      gens.push_back(vec_neg(g.basis_vector(i)));
      names.push_back("g" + std::to_string(i + 1) + "^-1");
    }
  }
  return exponent(g, gens, names);
}

PointedMonoid PointedMonoid::truncated_poly(size_t n) {
  require(n >= 2, "BadInput", "truncation exponent must be at least 2");
  // elements 0, 1, t, ..., t^(n-1) with t^n = 0
  const size_t size = n + 1;
  std::vector<std::vector<size_t>> table(size, std::vector<size_t>(size, 0));
  auto idx = [&](size_t power) { return power + 1; };  // t^p at index p+1, 0 at index 0
  std::vector<std::string> names{"0", "1"};
  for (size_t p = 1; p < n; ++p) names.push_back(p == 1 ? "t" : "t^" + std::to_string(p));
  for (size_t p = 0; p < n; ++p)
    for (size_t q = 0; q < n; ++q) table[idx(p)][idx(q)] = p + q < n ? idx(p + q) : 0;
  return finite_table(std::move(table), std::move(names));
}

PointedMonoid PointedMonoid::stabilized_poly(size_t n, size_t d) {
  require(n > d && d >= 1, "BadInput", "need n > d >= 1");
  // elements 0, 1, t, ..., t^(n-1) with t^n = t^d
  const size_t size = n + 1;
  std::vector<std::vector<size_t>> table(size, std::vector<size_t>(size, 0));
  auto norm = [&](size_t power) {
    while (power >= n) power = power - n + d;
    return power;
  };
  auto idx = [&](size_t power) { return power + 1; };
  std::vector<std::string> names{"0", "1"};
  for (size_t p = 1; p < n; ++p) names.push_back(p == 1 ? "t" : "t^" + std::to_string(p));
  for (size_t p = 0; p < n; ++p)
    for (size_t q = 0; q < n; ++q) table[idx(p)][idx(q)] = idx(norm(p + q));
  return finite_table(std::move(table), std::move(names));
}

PointedMonoid PointedMonoid::ts_wedge() {
  FgAbGroup g = FgAbGroup::free_group(2);
  return wedge(g, {}, {{g.basis_vector(0)}, {g.basis_vector(1)}}, {"t", "s"});
}

// ---------------------------------------------------------------------------
// structure access

Backend PointedMonoid::backend() const { return impl_->backend; }
bool PointedMonoid::commutative() const { return impl_->commutative; }

std::optional<size_t> PointedMonoid::size() const {
  if (impl_->backend == Backend::FiniteTable) return impl_->table.size();
  return std::nullopt;
}

const FgAbGroup& PointedMonoid::ambient() const {
  require(impl_->backend != Backend::FiniteTable, "BadInput", "finite table has no ambient group");
  return impl_->ambient;
}

const std::vector<Vec>& PointedMonoid::exp_generators() const {
  require(impl_->backend == Backend::Exponent, "BadInput", "not an Exponent monoid");
  return impl_->gens;
}

size_t PointedMonoid::wedge_component_count() const { return impl_->num_components; }
const std::vector<Vec>& PointedMonoid::wedge_all_generators() const { return impl_->gens; }
const std::vector<size_t>& PointedMonoid::wedge_component_of_gen() const {
  return impl_->gen_component;
}
const std::vector<std::string>& PointedMonoid::generator_names() const { return impl_->names; }

MonoidElement PointedMonoid::one_elem() const {
  switch (impl_->backend) {
    case Backend::FiniteTable:
      return MonoidElement::table(impl_->table.size() == 1 ? 0 : 1);
    case Backend::Exponent:
      return MonoidElement::exp(impl_->ambient.zero());
    case Backend::Wedge:
      return MonoidElement::wedge(MonoidElement::kUnitComponent, impl_->ambient.zero());
  }
  return MonoidElement::zero();
}

size_t PointedMonoid::generator_count() const {
  return impl_->backend == Backend::FiniteTable ? impl_->table.size() : impl_->gens.size();
}

MonoidElement PointedMonoid::generator(size_t i) const {
  switch (impl_->backend) {
    case Backend::FiniteTable:
      return normalize(MonoidElement::table(i));
    case Backend::Exponent:
      return MonoidElement::exp(impl_->gens.at(i));
    case Backend::Wedge:
      return normalize(MonoidElement::wedge(impl_->gen_component.at(i), impl_->gens.at(i)));
  }
  return MonoidElement::zero();
}

MonoidElement PointedMonoid::normalize(const MonoidElement& a) const {
  switch (impl_->backend) {
    case Backend::FiniteTable:
      if (a.tag == MonoidElement::Tag::Table && a.index == 0) return MonoidElement::zero();
      return a;
    case Backend::Exponent: {
      if (a.tag == MonoidElement::Tag::Zero) return a;
      return MonoidElement::exp(impl_->ambient.reduce(a.coords));
    }
    case Backend::Wedge: {
      if (a.tag == MonoidElement::Tag::Zero) return a;
      Vec c = impl_->ambient.reduce(a.coords);
      if (a.index != MonoidElement::kUnitComponent && units().sub_.contains(c))
        return MonoidElement::wedge(MonoidElement::kUnitComponent, std::move(c));
      return MonoidElement::wedge(a.index, std::move(c));
    }
  }
  return a;
}

bool PointedMonoid::equal(const MonoidElement& a, const MonoidElement& b) const {
  return normalize(a) == normalize(b);
}

MonoidElement PointedMonoid::mul(const MonoidElement& a0, const MonoidElement& b0) const {
  MonoidElement a = normalize(a0), b = normalize(b0);
  if (a.is_zero() || b.is_zero()) return MonoidElement::zero();
  switch (impl_->backend) {
    case Backend::FiniteTable: {
      size_t r = impl_->table[a.index][b.index];
      return r == 0 ? MonoidElement::zero() : MonoidElement::table(r);
    }
    case Backend::Exponent:
      return MonoidElement::exp(impl_->ambient.add(a.coords, b.coords));
    case Backend::Wedge: {
      const size_t ua = a.index, ub = b.index;
      if (ua != MonoidElement::kUnitComponent && ub != MonoidElement::kUnitComponent && ua != ub)
        return MonoidElement::zero();  // non-units from distinct components
      size_t comp = ua == MonoidElement::kUnitComponent ? ub : ua;
      return normalize(MonoidElement::wedge(comp, impl_->ambient.add(a.coords, b.coords)));
    }
  }
  return MonoidElement::zero();
}

MonoidElement PointedMonoid::pow(const MonoidElement& a, const Int& n) const {
  require(n >= 0 || units().is_unit(a), "BadInput", "negative power of a non-unit");
  MonoidElement base = normalize(a);
  if (base.is_zero()) return n == 0 ? one_elem() : MonoidElement::zero();
  if (impl_->backend != Backend::FiniteTable) {
    // exponent arithmetic is linear
    MonoidElement r = base;
    r.coords = impl_->ambient.scale(n, base.coords);
    if (n == 0) return one_elem();
    return normalize(r);
  }
  Int k = n;
  if (k < 0) {
    // invert within the finite unit group
    const auto& us = units();
    auto idx = us.index_of(base);
    require(idx.has_value(), "BadInput", "negative power of a non-unit");
    MonoidElement inv;
    for (const auto& v : us.elements())
      if (equal(mul(base, v), one_elem())) inv = v;
    base = inv;
    k = -k;
  }
  MonoidElement acc = one_elem();
  MonoidElement sq = base;
  while (k > 0) {
    if ((k & 1) != 0) acc = mul(acc, sq);
    sq = mul(sq, sq);
    k >>= 1;
  }
  return acc;
}

size_t PointedMonoid::table_mul(size_t i, size_t j) const {
  require(impl_->backend == Backend::FiniteTable, "BadInput", "not a finite table");
  return impl_->table[i][j];
}

// ---------------------------------------------------------------------------
// units

namespace {

/// Indices of generators that become invertible: g_i is a unit iff some
/// rational x >= 0 with x_i >= 1 kills the free parts (torsion is killed by
/// scaling, so the rational relaxation is exact).
std::vector<bool> unit_generator_mask(const FgAbGroup& ambient, const std::vector<Vec>& gens) {
  const size_t k = gens.size();
  const size_t nfree = ambient.free_rank();
  std::vector<bool> mask(k, false);
  for (size_t i = 0; i < k; ++i) {
    RatLP lp(k);
    for (size_t f = 0; f < nfree; ++f) {
      std::vector<Rat> coef(k);
      for (size_t j = 0; j < k; ++j) coef[j] = Rat(gens[j][ambient.torsion_count() + f]);
      lp.add_eq(coef, Rat(0));
    }
    for (size_t j = 0; j < k; ++j) {
      std::vector<Rat> coef(k, Rat(0));
      coef[j] = 1;
      lp.add_ge(coef, Rat(0));
    }
    std::vector<Rat> coef(k, Rat(0));
    coef[i] = 1;
    lp.add_ge(coef, Rat(1));
    mask[i] = lp.feasible();
  }
  return mask;
}

}  // namespace

const UnitsGroup& PointedMonoid::units() const {
  std::call_once(impl_->units_flag, [&] {
    UnitsGroup u;
    switch (impl_->backend) {
      case Backend::FiniteTable: {
        const size_t n = impl_->table.size();
        const size_t one = n == 1 ? 0 : 1;
        std::vector<size_t> unit_indices;
        for (size_t a = (n == 1 ? 1 : 1); a < n; ++a) {
          for (size_t b = 1; b < n; ++b)
            if (impl_->table[a][b] == one && impl_->table[b][a] == one) {
              unit_indices.push_back(a);
              break;
            }
        }
        u.abelian_ = true;
        for (size_t a : unit_indices)
          for (size_t b : unit_indices)
            if (impl_->table[a][b] != impl_->table[b][a]) u.abelian_ = false;
        for (size_t a : unit_indices) u.elements_.push_back(MonoidElement::table(a));
        if (u.abelian_) {
          // present the finite abelian group by all elements and all
          // pairwise product relations, then read off the SNF structure
          const size_t m = unit_indices.size();
          std::map<size_t, size_t> pos;
          for (size_t i = 0; i < m; ++i) pos[unit_indices[i]] = i;
          std::vector<Vec> rels;
          for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
              Vec r(m, Int(0));
              r[i] += 1;
              r[j] += 1;
              r[pos.at(impl_->table[unit_indices[i]][unit_indices[j]])] -= 1;
              rels.push_back(std::move(r));
            }
          Presentation p = quotient_presentation(
              m, rels.empty() ? IntMatrix(m, 0) : IntMatrix::from_cols(rels));
          u.group_ = p.group;
          for (size_t i = 0; i < m; ++i) {
            Vec c = p.group.reduce(p.projection.col(i));
            u.element_coords_.push_back(c);
            u.coord_index_.emplace(c, i);
          }
          // a section may hit coordinates not attained by single elements;
          // fill the table by composing generators
          if (u.coord_index_.size() != p.group.enumerate().size()) {
            // complete the coordinate table by products
            bool grew = true;
            while (grew) {
              grew = false;
              std::vector<std::pair<Vec, size_t>> known(u.coord_index_.begin(),
                                                        u.coord_index_.end());
              for (const auto& [ca, ia] : known)
                for (const auto& [cb, ib] : known) {
                  Vec c = p.group.add(ca, cb);
                  if (u.coord_index_.count(c)) continue;
                  size_t prod = impl_->table[unit_indices[ia]][unit_indices[ib]];
                  u.coord_index_.emplace(c, pos.at(prod));
                  grew = true;
                }
            }
          }
        }
        break;
      }
      case Backend::Exponent:
      case Backend::Wedge: {
        std::vector<Vec> unit_gens;
        if (impl_->backend == Backend::Exponent) {
          std::vector<bool> mask = unit_generator_mask(impl_->ambient, impl_->gens);
          impl_->unit_idx.clear();
          impl_->nonunit_idx.clear();
          for (size_t i = 0; i < impl_->gens.size(); ++i) {
            if (mask[i]) {
              impl_->unit_idx.push_back(i);
              unit_gens.push_back(impl_->gens[i]);
            } else {
              impl_->nonunit_idx.push_back(i);
            }
          }
        } else {
          // declared units; verify no component generator is invertible in
          // its component monoid
          for (size_t i = 0; i < impl_->gens.size(); ++i)
            if (impl_->gen_component[i] == MonoidElement::kUnitComponent)
              unit_gens.push_back(impl_->gens[i]);
          for (size_t c = 0; c < impl_->num_components; ++c) {
            std::vector<Vec> cg = unit_gens;
            std::vector<size_t> flat;
            for (size_t i = 0; i < impl_->gens.size(); ++i)
              if (impl_->gen_component[i] == c) {
                cg.push_back(impl_->gens[i]);
                flat.push_back(i);
              }
            std::vector<bool> mask = unit_generator_mask(impl_->ambient, cg);
            for (size_t i = unit_gens.size(); i < cg.size(); ++i)
              require(!mask[i], "BadInput",
                      "wedge component generator is invertible; components must share the unit "
                      "group exactly");
          }
        }
        u.abelian_ = true;
        u.use_sub_ = true;
        u.sub_ = Subgroup(impl_->ambient, unit_gens);
        u.group_ = u.sub_.group();
        break;
      }
    }
    impl_->units = std::move(u);
  });
  return impl_->units;
}

const FgAbGroup& UnitsGroup::group() const {
  require(abelian_, "BadInput", "unit group is not abelian");
  return group_;
}

bool UnitsGroup::finite() const {
  if (abelian_) return group_.is_finite();
  return true;  // non-abelian units only arise from finite tables
}

Int UnitsGroup::order() const {
  if (abelian_) return group_.order();
  return Int(elements_.size());
}

const std::vector<MonoidElement>& UnitsGroup::elements() const {
  require(!elements_.empty() || (abelian_ && group_.is_finite()), "InfiniteUnits",
          "unit group is infinite");
  if (elements_.empty() && abelian_ && group_.is_finite()) {
    // Exponent-backed units: enumerate through the subgroup
    auto* self = const_cast<UnitsGroup*>(this);
    for (const auto& c : group_.enumerate())
      self->elements_.push_back(MonoidElement::exp(sub_.element_of(c)));
  }
  return elements_;
}

MonoidElement UnitsGroup::element_of(const Vec& coords) const {
  require(abelian_, "BadInput", "unit group is not abelian");
  if (use_sub_) return MonoidElement::exp(sub_.element_of(coords));
  // finite table units
  Vec c = group_.reduce(coords);
  auto it = coord_index_.find(c);
  require(it != coord_index_.end(), "Internal", "unit coordinate without element");
  return elements_[it->second];
}

std::optional<Vec> UnitsGroup::coords_of(const MonoidElement& u) const {
  if (!abelian_) return std::nullopt;
  if (use_sub_) {
    if (u.tag != MonoidElement::Tag::Exp && u.tag != MonoidElement::Tag::Wedge)
      return std::nullopt;
    return sub_.coords_of(u.coords);
  }
  if (u.tag != MonoidElement::Tag::Table) return std::nullopt;
  for (size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].index == u.index) return element_coords_[i];
  return std::nullopt;
}

std::optional<size_t> UnitsGroup::index_of(const MonoidElement& u) const {
  for (size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == u) return i;
  if (use_sub_ && (u.tag == MonoidElement::Tag::Exp || u.tag == MonoidElement::Tag::Wedge)) {
    if (sub_.contains(u.coords)) return size_t(0);  // membership only; no stable index
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// membership (Exponent)

namespace {

struct BoundedSearch {
  const std::vector<Vec>& q_gens;  // quotient coords per variable
  const FgAbGroup& quot;
  Vec target;
  std::vector<Int> caps;
  size_t nvars;
  // suffix bounds on the free part to prune early
  std::vector<Vec> suffix_min, suffix_max;

  bool run() {
    precompute();
    Vec acc = quot.zero();
    return dfs(0, acc);
  }

  void precompute() {
    const size_t dim = quot.dim();
    suffix_min.assign(nvars + 1, Vec(dim, Int(0)));
    suffix_max.assign(nvars + 1, Vec(dim, Int(0)));
    for (size_t i = nvars; i-- > 0;) {
      for (size_t d = quot.torsion_count(); d < dim; ++d) {
        Int lo = q_gens[i][d] * (q_gens[i][d] > 0 ? Int(0) : caps[i]);
        Int hi = q_gens[i][d] * (q_gens[i][d] > 0 ? caps[i] : Int(0));
        suffix_min[i][d] = suffix_min[i + 1][d] + lo;
        suffix_max[i][d] = suffix_max[i + 1][d] + hi;
      }
    }
  }

  bool dfs(size_t var, Vec& acc) {
    // prune on free coordinates
    for (size_t d = quot.torsion_count(); d < quot.dim(); ++d) {
      Int need = target[d] - acc[d];
      if (need < suffix_min[var][d] || need > suffix_max[var][d]) return false;
    }
    if (var == nvars) return quot.equal(acc, target);
    for (Int c = 0; c <= caps[var]; ++c) {
      Vec next = acc;
      for (size_t d = 0; d < quot.dim(); ++d) next[d] += c * q_gens[var][d];
      next = quot.reduce(next);
      if (dfs(var + 1, next)) return true;
    }
    return false;
  }
};

}  // namespace

bool PointedMonoid::exp_member(const Vec& coords) const {
  require(impl_->backend == Backend::Exponent, "BadInput", "exp_member needs an Exponent monoid");
  const FgAbGroup& amb = impl_->ambient;
  Vec v = amb.reduce(coords);
  if (vec_is_zero(v)) return true;

  units();  // fills unit_idx / nonunit_idx
  std::call_once(impl_->member_flag, [&] {
    CokernelResult q = cokernel(impl_->units.sub_.embedding());
    impl_->quot = q.group;
    impl_->quot_proj = q.projection.matrix;
    for (size_t i : impl_->nonunit_idx)
      impl_->q_gens.push_back(impl_->quot.reduce(impl_->quot_proj.apply(impl_->gens[i])));
  });

  {
    std::lock_guard<std::mutex> lock(impl_->memo_mutex);
    auto it = impl_->member_memo.find(v);
    if (it != impl_->member_memo.end()) return it->second;
  }

  bool result = false;
  // integer solvability over all generators (necessary condition)
  IntMatrix genmat = impl_->gens.empty() ? IntMatrix(amb.dim(), 0) : IntMatrix::from_cols(impl_->gens);
  AbHom g{FgAbGroup::free_group(impl_->gens.size()), amb, genmat};
  if (solve(g, v).has_value()) {
    if (impl_->nonunit_idx.empty()) {
      result = impl_->units.sub_.contains(v);
    } else {
      const size_t k = impl_->nonunit_idx.size();
      Vec tq = impl_->quot.reduce(impl_->quot_proj.apply(v));
      // bound each coefficient by exact LP over the free part of the quotient
      const size_t tor = impl_->quot.torsion_count();
      const size_t nfree = impl_->quot.free_rank();
      RatLP lp(k);
      for (size_t f = 0; f < nfree; ++f) {
        std::vector<Rat> coef(k);
        for (size_t j = 0; j < k; ++j) coef[j] = Rat(impl_->q_gens[j][tor + f]);
        lp.add_eq(coef, Rat(tq[tor + f]));
      }
      for (size_t j = 0; j < k; ++j) {
        std::vector<Rat> coef(k, Rat(0));
        coef[j] = 1;
        lp.add_ge(coef, Rat(0));
      }
      if (lp.feasible()) {
        std::vector<Int> caps(k);
        bool ok = true;
        for (size_t j = 0; j < k && ok; ++j) {
          std::vector<Rat> obj(k, Rat(0));
          obj[j] = 1;
          auto mx = lp.maximize(obj);
          require(mx.has_value(), "Internal",
                  "membership polytope unbounded; quotient by units is not sharp");
          caps[j] = boost::multiprecision::numerator(*mx) /
                    boost::multiprecision::denominator(*mx);
          if (caps[j] < 0) ok = false;
        }
        if (ok) {
          BoundedSearch search{impl_->q_gens, impl_->quot, tq, caps, k, {}, {}};
          result = search.run();
        }
      }
    }
  }

  std::lock_guard<std::mutex> lock(impl_->memo_mutex);
  impl_->member_memo.emplace(std::move(v), result);
  return result;
}

bool PointedMonoid::contains(const MonoidElement& e0) const {
  MonoidElement e = normalize(e0);
  if (e.is_zero()) return true;
  switch (impl_->backend) {
    case Backend::FiniteTable:
      return e.tag == MonoidElement::Tag::Table && e.index < impl_->table.size();
    case Backend::Exponent:
      return e.tag == MonoidElement::Tag::Exp && exp_member(e.coords);
    case Backend::Wedge: {
      if (e.tag != MonoidElement::Tag::Wedge) return false;
      if (e.index == MonoidElement::kUnitComponent) return units().sub_.contains(e.coords);
      if (e.index >= impl_->num_components) return false;
      return component_monoid(e.index).exp_member(e.coords);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// wedge component monoids

PointedMonoid PointedMonoid::component_monoid(size_t c) const {
  require(impl_->backend == Backend::Wedge, "BadInput", "component_monoid needs a wedge");
  std::call_once(impl_->comp_flag, [&] {
    for (size_t comp = 0; comp < impl_->num_components; ++comp) {
      std::vector<Vec> gens;
      std::vector<size_t> flat;
      for (size_t i = 0; i < impl_->gens.size(); ++i)
        if (impl_->gen_component[i] == MonoidElement::kUnitComponent) {
          gens.push_back(impl_->gens[i]);
          flat.push_back(i);
        }
      for (size_t i = 0; i < impl_->gens.size(); ++i)
        if (impl_->gen_component[i] == comp) {
          gens.push_back(impl_->gens[i]);
          flat.push_back(i);
        }
      impl_->comp_monoids.push_back(PointedMonoid::exponent(impl_->ambient, gens));
      impl_->comp_gen_to_flat.push_back(flat);
    }
  });
  return impl_->comp_monoids.at(c);
}

// ---------------------------------------------------------------------------
// idempotents and properties

std::vector<MonoidElement> PointedMonoid::idempotents() const {
  std::vector<MonoidElement> out{MonoidElement::zero()};
  switch (impl_->backend) {
    case Backend::FiniteTable: {
      for (size_t a = 1; a < impl_->table.size(); ++a)
        if (impl_->table[a][a] == a) out.push_back(MonoidElement::table(a));
      break;
    }
    case Backend::Exponent:
    case Backend::Wedge:
      // cancellative components: 2v = v forces v = 0
      out.push_back(one_elem());
      break;
  }
  return out;
}

const PropertyReport& PointedMonoid::properties() const {
  std::call_once(impl_->props_flag, [&] {
    PropertyReport r;
    switch (impl_->backend) {
      case Backend::FiniteTable: {
        const size_t n = impl_->table.size();
        const auto& t = impl_->table;
        auto right_mult_injective = [&](size_t a) {
          for (size_t x = 0; x < n; ++x)
            for (size_t y = x + 1; y < n; ++y)
              if (t[x][a] == t[y][a]) return false;
          return true;
        };
        auto left_mult_injective = [&](size_t a) {
          for (size_t x = 0; x < n; ++x)
            for (size_t y = x + 1; y < n; ++y)
              if (t[a][x] == t[a][y]) return false;
          return true;
        };
        auto right_mult_normal = [&](size_t a) {
          // x*a = y*a nonzero forces x = y
          for (size_t x = 0; x < n; ++x)
            for (size_t y = x + 1; y < n; ++y)
              if (t[x][a] == t[y][a] && t[x][a] != 0) return false;
          return true;
        };
        auto left_mult_normal = [&](size_t a) {
          for (size_t x = 0; x < n; ++x)
            for (size_t y = x + 1; y < n; ++y)
              if (t[a][x] == t[a][y] && t[a][x] != 0) return false;
          return true;
        };
        r.cancellative = true;
        r.rpc = true;
        r.lpc = true;
        for (size_t a = 0; a < n; ++a) {
          if (a != 0 && (!right_mult_injective(a) || !left_mult_injective(a)))
            r.cancellative = false;
          if (!right_mult_normal(a)) r.rpc = false;
          if (!left_mult_normal(a)) r.lpc = false;
        }
        if (n == 1) r.cancellative = true;
        r.pc = r.rpc && r.lpc;
        r.right_reversible = true;
        bool left_rev = true;
        for (size_t a = 1; a < n; ++a)
          for (size_t b = 1; b < n; ++b) {
            bool right_meet = false, left_meet = false;
            for (size_t x = 0; x < n && !(right_meet && left_meet); ++x)
              for (size_t y = 0; y < n; ++y) {
                if (t[x][a] != 0 && t[x][a] == t[y][b]) right_meet = true;
                if (t[a][x] != 0 && t[a][x] == t[b][y]) left_meet = true;
              }
            if (!right_meet) r.right_reversible = false;
            if (!left_meet) left_rev = false;
          }
        r.reversible = r.right_reversible && left_rev;
        r.right_noetherian = true;  // finite
        break;
      }
      case Backend::Exponent: {
        r.cancellative = true;
        r.pc = r.rpc = r.lpc = true;
        r.right_reversible = r.reversible = true;  // commutative cancellative
        break;
      }
      case Backend::Wedge: {
        size_t nontrivial = 0;
        for (size_t c = 0; c < impl_->num_components; ++c) {
          bool has_gen = false;
          for (size_t i = 0; i < impl_->gens.size(); ++i)
            if (impl_->gen_component[i] == c) has_gen = true;
          if (has_gen) ++nontrivial;
        }
        r.pc = r.rpc = r.lpc = true;
        r.cancellative = nontrivial <= 1;
        r.right_reversible = r.reversible = nontrivial <= 1;
        break;
      }
    }
    impl_->props = r;
  });
  return impl_->props;
}

// ---------------------------------------------------------------------------
// localization

namespace {

// union-find over pair indices for the finite-table localization congruence
struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = i;
  }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

LocalizationResult PointedMonoid::localize(const std::vector<MonoidElement>& s_in) const {
  std::vector<MonoidElement> s;
  bool has_zero = false;
  for (const auto& e : s_in) {
    MonoidElement n = normalize(e);
    if (n.is_zero())
      has_zero = true;
    else
      s.push_back(n);
  }
  auto collapse = [&]() {
    PointedMonoid t = terminal();
    return LocalizationResult{t, MonoidHom::collapse(*this, t), true};
  };
  if (has_zero) return collapse();

  switch (impl_->backend) {
    case Backend::Exponent: {
      std::vector<Vec> gens = impl_->gens;
      for (const auto& e : s) gens.push_back(impl_->ambient.reduce(vec_neg(e.coords)));
      PointedMonoid result = exponent(impl_->ambient, gens, impl_->names);
      return LocalizationResult{
          result, MonoidHom::exp_linear(*this, result, IntMatrix::identity(impl_->ambient.dim())),
          false};
    }
    case Backend::Wedge: {
      const UnitsGroup& u = units();
      std::set<size_t> comps;
      std::vector<MonoidElement> nonunits;
      for (const auto& e : s)
        if (!u.sub_.contains(e.coords)) {
          comps.insert(e.index);
          nonunits.push_back(e);
        }
      if (comps.size() >= 2) return collapse();  // zero becomes invertible
      if (comps.empty()) {
        // inverting units changes nothing
        std::vector<std::optional<IntMatrix>> cm(impl_->num_components,
                                                 IntMatrix::identity(impl_->ambient.dim()));
        return LocalizationResult{
            *this, MonoidHom::wedge_map(*this, *this, IntMatrix::identity(impl_->ambient.dim()), cm),
            false};
      }
      const size_t c = *comps.begin();
      std::vector<Vec> gens;
      for (size_t i = 0; i < impl_->gens.size(); ++i)
        if (impl_->gen_component[i] == MonoidElement::kUnitComponent ||
            impl_->gen_component[i] == c)
          gens.push_back(impl_->gens[i]);
      for (const auto& e : nonunits) gens.push_back(impl_->ambient.reduce(vec_neg(e.coords)));
      PointedMonoid result = exponent(impl_->ambient, gens);
      std::vector<std::optional<IntMatrix>> cm(impl_->num_components, std::nullopt);
      cm[c] = IntMatrix::identity(impl_->ambient.dim());
      return LocalizationResult{
          result,
          MonoidHom::wedge_map(*this, result, IntMatrix::identity(impl_->ambient.dim()), cm),
          false};
    }
    case Backend::FiniteTable: {
      const size_t n = impl_->table.size();
      // multiplicative closure of s, always containing 1
      std::set<size_t> closure{size_t(n == 1 ? 0 : 1)};
      bool grew = true;
      for (const auto& e : s) closure.insert(e.index);
      while (grew) {
        grew = false;
        std::vector<size_t> cur(closure.begin(), closure.end());
        for (size_t a : cur)
          for (size_t b : cur)
            if (closure.insert(impl_->table[a][b]).second) grew = true;
      }
      std::vector<size_t> ss(closure.begin(), closure.end());
      // pairs (s, a) ~ (s', a') iff t*s*a' = t*s'*a for some t in S
      const size_t np = ss.size() * n;
      auto pid = [&](size_t si, size_t a) { return si * n + a; };
      UnionFind uf(np);
      for (size_t si = 0; si < ss.size(); ++si)
        for (size_t a = 0; a < n; ++a)
          for (size_t sj = 0; sj < ss.size(); ++sj)
            for (size_t b = 0; b < n; ++b) {
              if (pid(si, a) >= pid(sj, b)) continue;
              for (size_t t : ss) {
                size_t lhs = impl_->table[impl_->table[t][ss[si]]][b];
                size_t rhs = impl_->table[impl_->table[t][ss[sj]]][a];
                if (lhs == rhs) {
                  uf.unite(pid(si, a), pid(sj, b));
                  break;
                }
              }
            }
      // collect classes
      std::map<size_t, size_t> class_index;
      std::vector<std::pair<size_t, size_t>> reps;  // (s index, element)
      for (size_t si = 0; si < ss.size(); ++si)
        for (size_t a = 0; a < n; ++a) {
          size_t root = uf.find(pid(si, a));
          if (!class_index.count(root)) {
            class_index[root] = reps.size();
            reps.emplace_back(si, a);
          }
        }
      size_t one_idx = n == 1 ? 0 : 1;
      size_t zero_class = class_index.at(uf.find(pid(0, 0)));
      size_t one_class = class_index.at(uf.find(pid(0, one_idx)));
      // (0,0) uses s index 0; zero is (any s, 0) and they are all related
      if (zero_class == one_class) return collapse();
      // build the quotient table; reorder so zero -> 0, one -> 1
      const size_t m = reps.size();
      std::vector<size_t> order(m);
      for (size_t i = 0; i < m; ++i) order[i] = i;
      std::swap(order[0], order[zero_class]);
      // find where one_class ended up
      size_t one_pos = 0;
      for (size_t i = 0; i < m; ++i)
        if (order[i] == one_class) one_pos = i;
      std::swap(order[1], order[one_pos]);
      std::vector<size_t> to_new(m);
      for (size_t i = 0; i < m; ++i) to_new[order[i]] = i;
      std::vector<std::vector<size_t>> table(m, std::vector<size_t>(m, 0));
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
          auto [si, a] = reps[order[i]];
          auto [sj, b] = reps[order[j]];
          size_t sprod = impl_->table[ss[si]][ss[sj]];
          size_t siprod = std::find(ss.begin(), ss.end(), sprod) - ss.begin();
          size_t prod = impl_->table[a][b];
          table[i][j] = to_new[class_index.at(uf.find(pid(siprod, prod)))];
        }
      PointedMonoid result = finite_table(table);
      std::vector<size_t> images(n);
      for (size_t a = 0; a < n; ++a) images[a] = to_new[class_index.at(uf.find(pid(0, a)))];
      return LocalizationResult{result, MonoidHom::table_map(*this, result, images), false};
    }
  }
  fail("Internal", "unreachable");
}

// ---------------------------------------------------------------------------
// primes

namespace {

/// Faces of the cone spanned by generators, as exact zero sets: T is a face
/// iff a rational functional vanishes exactly on T and is >= 1 elsewhere.
std::vector<std::pair<std::vector<size_t>, std::vector<Rat>>> enumerate_faces(
    const FgAbGroup& ambient, const std::vector<Vec>& gens) {
  const size_t k = gens.size();
  const size_t nfree = ambient.free_rank();
  const size_t tor = ambient.torsion_count();
  std::vector<std::pair<std::vector<size_t>, std::vector<Rat>>> out;
  for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
    RatLP lp(nfree);
    for (size_t i = 0; i < k; ++i) {
      std::vector<Rat> coef(nfree);
      for (size_t f = 0; f < nfree; ++f) coef[f] = Rat(gens[i][tor + f]);
      if (mask & (size_t(1) << i))
        lp.add_eq(coef, Rat(0));
      else
        lp.add_ge(coef, Rat(1));
    }
    auto pt = lp.find_point();
    if (!pt) continue;
    std::vector<size_t> face;
    for (size_t i = 0; i < k; ++i)
      if (mask & (size_t(1) << i)) face.push_back(i);
    out.emplace_back(std::move(face), std::move(*pt));
  }
  // deterministic order: big faces (generic point) first, then lexicographic
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first < b.first;
  });
  return out;
}

}  // namespace

const std::vector<PrimeIdeal>& PointedMonoid::primes() const {
  std::call_once(impl_->primes_flag, [&] {
    std::vector<PrimeIdeal> out;
    switch (impl_->backend) {
      case Backend::FiniteTable: {
        const size_t n = impl_->table.size();
        if (n == 1) break;  // Spec({0}) is empty
        // enumerate subsets of {2..n-1}; the ideal always contains 0, never 1
        std::vector<size_t> rest;
        for (size_t a = 2; a < n; ++a) rest.push_back(a);
        for (size_t mask = 0; mask < (size_t(1) << rest.size()); ++mask) {
          std::vector<bool> in(n, false);
          in[0] = true;
          for (size_t i = 0; i < rest.size(); ++i)
            if (mask & (size_t(1) << i)) in[rest[i]] = true;
          bool ok = true;
          for (size_t a = 0; a < n && ok; ++a)
            for (size_t x = 0; x < n && ok; ++x) {
              if (in[a] && (!in[impl_->table[a][x]] || !in[impl_->table[x][a]])) ok = false;
              if (!in[a] && !in[x] && in[impl_->table[a][x]]) ok = false;
            }
          if (!ok) continue;
          PrimeIdeal p;
          p.backend = Backend::FiniteTable;
          for (size_t a = 0; a < n; ++a)
            if (in[a]) p.table_elements.push_back(a);
          out.push_back(std::move(p));
        }
        std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
          if (a.table_elements.size() != b.table_elements.size())
            return a.table_elements.size() < b.table_elements.size();
          return a.table_elements < b.table_elements;
        });
        break;
      }
      case Backend::Exponent: {
        for (auto& [face, phi] : enumerate_faces(impl_->ambient, impl_->gens)) {
          PrimeIdeal p;
          p.backend = Backend::Exponent;
          p.face_generators = face;
          p.functional = phi;
          out.push_back(std::move(p));
        }
        break;
      }
      case Backend::Wedge: {
        std::vector<size_t> unit_flat;
        for (size_t i = 0; i < impl_->gens.size(); ++i)
          if (impl_->gen_component[i] == MonoidElement::kUnitComponent) unit_flat.push_back(i);
        for (size_t c = 0; c < impl_->num_components; ++c) {
          PointedMonoid cm = component_monoid(c);
          const auto& flat = impl_->comp_gen_to_flat[c];
          for (const auto& cp : cm.primes()) {
            // skip the component's maximal ideal (face = units only); it is
            // the wedge maximal ideal, added once below
            bool has_comp_gen = false;
            for (size_t gi : cp.face_generators)
              if (impl_->gen_component[flat[gi]] != MonoidElement::kUnitComponent)
                has_comp_gen = true;
            if (!has_comp_gen) continue;
            PrimeIdeal p;
            p.backend = Backend::Wedge;
            p.component = c;
            for (size_t gi : cp.face_generators) p.face_generators.push_back(flat[gi]);
            std::sort(p.face_generators.begin(), p.face_generators.end());
            p.functional = cp.functional;
            out.push_back(std::move(p));
          }
        }
        PrimeIdeal maximal;
        maximal.backend = Backend::Wedge;
        maximal.component = MonoidElement::kUnitComponent;
        maximal.face_generators = unit_flat;
        maximal.functional.assign(impl_->ambient.free_rank(), Rat(0));
        out.push_back(std::move(maximal));
        std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
          if (a.face_generators.size() != b.face_generators.size())
            return a.face_generators.size() > b.face_generators.size();
          if (a.component != b.component) return a.component < b.component;
          return a.face_generators < b.face_generators;
        });
        break;
      }
    }
    impl_->primes = std::move(out);
  });
  return impl_->primes;
}

bool PointedMonoid::prime_contains(const PrimeIdeal& p, const MonoidElement& e0) const {
  MonoidElement e = normalize(e0);
  if (e.is_zero()) return true;
  switch (impl_->backend) {
    case Backend::FiniteTable:
      return std::binary_search(p.table_elements.begin(), p.table_elements.end(), e.index);
    case Backend::Exponent: {
      Rat val(0);
      const size_t tor = impl_->ambient.torsion_count();
      for (size_t f = 0; f < p.functional.size(); ++f) val += p.functional[f] * Rat(e.coords[tor + f]);
      return val > 0;
    }
    case Backend::Wedge: {
      if (e.index == MonoidElement::kUnitComponent) return false;  // units avoid every prime
      if (p.component == MonoidElement::kUnitComponent) return true;  // maximal ideal
      if (e.index != p.component) return true;
      Rat val(0);
      const size_t tor = impl_->ambient.torsion_count();
      for (size_t f = 0; f < p.functional.size(); ++f) val += p.functional[f] * Rat(e.coords[tor + f]);
      return val > 0;
    }
  }
  return false;
}

bool PointedMonoid::prime_subset(const PrimeIdeal& p, const PrimeIdeal& q) const {
  auto superset = [](const std::vector<size_t>& a, const std::vector<size_t>& b) {
    // is a a superset of b
    return std::includes(a.begin(), a.end(), b.begin(), b.end());
  };
  switch (impl_->backend) {
    case Backend::FiniteTable:
      return superset(q.table_elements, p.table_elements);
    case Backend::Exponent:
      return superset(p.face_generators, q.face_generators);
    case Backend::Wedge: {
      if (q.component == MonoidElement::kUnitComponent) return true;  // everything inside maximal
      if (p.component == MonoidElement::kUnitComponent) return false;
      if (p.component != q.component) return false;
      return superset(p.face_generators, q.face_generators);
    }
  }
  return false;
}

std::vector<MonoidElement> PointedMonoid::prime_complement_generators(const PrimeIdeal& p) const {
  std::vector<MonoidElement> out;
  switch (impl_->backend) {
    case Backend::FiniteTable: {
      for (size_t a = 0; a < impl_->table.size(); ++a)
        if (!std::binary_search(p.table_elements.begin(), p.table_elements.end(), a))
          out.push_back(MonoidElement::table(a));
      break;
    }
    case Backend::Exponent: {
      for (size_t gi : p.face_generators) out.push_back(MonoidElement::exp(impl_->gens[gi]));
      break;
    }
    case Backend::Wedge: {
      for (size_t gi : p.face_generators) out.push_back(generator(gi));
      break;
    }
  }
  return out;
}

Subgroup PointedMonoid::fraction_group() const {
  switch (impl_->backend) {
    case Backend::Exponent:
      return Subgroup(impl_->ambient, impl_->gens);
    case Backend::FiniteTable: {
      require(properties().cancellative, "NotCancellative",
              "fraction group needs a cancellative monoid");
      const UnitsGroup& u = units();
      require(u.abelian(), "NotCancellative", "fraction group needs commutativity");
      // finite cancellative: every nonzero element is already a unit
      return Subgroup(u.group(), u.group().generators());
    }
    case Backend::Wedge: {
      require(properties().cancellative, "NotCancellative",
              "wedge with several nontrivial components is not cancellative");
      // degenerate wedge: a single nontrivial component
      return Subgroup(impl_->ambient, impl_->gens);
    }
  }
  fail("Internal", "unreachable");
}

// ---------------------------------------------------------------------------
// printing

std::string PointedMonoid::element_to_string(const MonoidElement& e0) const {
  MonoidElement e = normalize(e0);
  if (e.is_zero()) return "0";
  switch (impl_->backend) {
    case Backend::FiniteTable: {
      if (e.index < impl_->names.size()) return impl_->names[e.index];
      if (e.index == 1) return "1";
      return "e" + std::to_string(e.index);
    }
    case Backend::Exponent:
    case Backend::Wedge: {
      if (vec_is_zero(e.coords)) return "1";
      std::ostringstream os;
      os << "(";
      for (size_t i = 0; i < e.coords.size(); ++i) os << (i ? "," : "") << e.coords[i].str();
      os << ")";
      return os.str();
    }
  }
  return "?";
}

std::string PointedMonoid::prime_to_string(const PrimeIdeal& p) const {
  std::ostringstream os;
  os << "<";
  bool first = true;
  switch (impl_->backend) {
    case Backend::FiniteTable: {
      for (size_t a : p.table_elements) {
        if (a == 0) continue;
        os << (first ? "" : ",") << element_to_string(MonoidElement::table(a));
        first = false;
      }
      if (first) os << "0";
      break;
    }
    case Backend::Exponent:
    case Backend::Wedge: {
      // list the generators outside the face
      for (size_t i = 0; i < impl_->gens.size(); ++i) {
        bool in_face = std::binary_search(p.face_generators.begin(), p.face_generators.end(), i) ||
                       (impl_->backend == Backend::Wedge &&
                        p.component != MonoidElement::kUnitComponent &&
                        impl_->gen_component[i] != MonoidElement::kUnitComponent &&
                        impl_->gen_component[i] != p.component && false);
        if (impl_->backend == Backend::Wedge && p.component != MonoidElement::kUnitComponent &&
            impl_->gen_component[i] != MonoidElement::kUnitComponent &&
            impl_->gen_component[i] != p.component)
          in_face = false;  // other components lie inside the prime
        if (in_face) continue;
        std::string nm = i < impl_->names.size() ? impl_->names[i]
                                                 : "g" + std::to_string(i + 1);
        os << (first ? "" : ",") << nm;
        first = false;
      }
      if (first) os << "0";
      break;
    }
  }
  os << ">";
  return os.str();
}

bool PointedMonoid::same_as(const PointedMonoid& other) const {
  if (impl_ == other.impl_) return true;
  if (impl_->backend != other.impl_->backend) return false;
  switch (impl_->backend) {
    case Backend::FiniteTable:
      return impl_->table == other.impl_->table;
    case Backend::Exponent:
      return impl_->ambient.same_shape(other.impl_->ambient) && impl_->gens == other.impl_->gens;
    case Backend::Wedge:
      return impl_->ambient.same_shape(other.impl_->ambient) && impl_->gens == other.impl_->gens &&
             impl_->gen_component == other.impl_->gen_component;
  }
  return false;
}

std::string PointedMonoid::to_string() const {
  std::ostringstream os;
  switch (impl_->backend) {
    case Backend::FiniteTable:
      os << "finite(" << impl_->table.size() << ")";
      break;
    case Backend::Exponent:
      os << "exponent(" << impl_->ambient.to_string() << "; " << impl_->gens.size() << " gens)";
      break;
    case Backend::Wedge:
      os << "wedge(" << impl_->num_components << " components)";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// homomorphisms

MonoidHom MonoidHom::table_map(PointedMonoid dom, PointedMonoid cod, std::vector<size_t> images) {
  require(dom.backend() == Backend::FiniteTable && cod.backend() == Backend::FiniteTable,
          "BadInput", "table_map needs finite tables on both sides");
  MonoidHom h(std::move(dom), std::move(cod));
  h.kind_ = Kind::Table;
  h.table_images_ = std::move(images);
  return h;
}

MonoidHom MonoidHom::exp_linear(PointedMonoid dom, PointedMonoid cod, IntMatrix ambient_map) {
  require(dom.backend() == Backend::Exponent, "BadInput", "exp_linear needs an Exponent domain");
  MonoidHom h(std::move(dom), std::move(cod));
  h.kind_ = Kind::ExpLinear;
  h.linear_ = std::move(ambient_map);
  return h;
}

MonoidHom MonoidHom::wedge_map(PointedMonoid dom, PointedMonoid cod, IntMatrix unit_map,
                               std::vector<std::optional<IntMatrix>> component_maps) {
  require(dom.backend() == Backend::Wedge, "BadInput", "wedge_map needs a Wedge domain");
  MonoidHom h(std::move(dom), std::move(cod));
  h.kind_ = Kind::Wedge;
  h.linear_ = std::move(unit_map);
  h.component_maps_ = std::move(component_maps);
  return h;
}

MonoidHom MonoidHom::collapse(PointedMonoid dom, PointedMonoid cod) {
  MonoidHom h(std::move(dom), std::move(cod));
  h.kind_ = Kind::Collapse;
  return h;
}

MonoidElement MonoidHom::apply(const MonoidElement& e0) const {
  MonoidElement e = dom_.normalize(e0);
  if (e.is_zero()) return MonoidElement::zero();
  switch (kind_) {
    case Kind::Collapse:
      return cod_.normalize(MonoidElement::table(0));
    case Kind::Table:
      return cod_.normalize(MonoidElement::table(table_images_.at(e.index)));
    case Kind::ExpLinear: {
      Vec img = linear_.apply(e.coords);
      return cod_.normalize(MonoidElement::exp(cod_.ambient().reduce(img)));
    }
    case Kind::Wedge: {
      if (e.index == MonoidElement::kUnitComponent) {
        Vec img = linear_.apply(e.coords);
        if (cod_.backend() == Backend::Wedge)
          return cod_.normalize(MonoidElement::wedge(MonoidElement::kUnitComponent,
                                                     cod_.ambient().reduce(img)));
        return cod_.normalize(MonoidElement::exp(cod_.ambient().reduce(img)));
      }
      const auto& cm = component_maps_.at(e.index);
      if (!cm.has_value()) return MonoidElement::zero();
      Vec img = cm->apply(e.coords);
      if (cod_.backend() == Backend::Wedge)
        return cod_.normalize(MonoidElement::wedge(e.index, cod_.ambient().reduce(img)));
      return cod_.normalize(MonoidElement::exp(cod_.ambient().reduce(img)));
    }
  }
  fail("Internal", "unreachable");
}

AbHom MonoidHom::units_hom() const {
  const UnitsGroup& ud = dom_.units();
  const UnitsGroup& uc = cod_.units();
  require(ud.abelian() && uc.abelian(), "BadInput", "units_hom needs abelian unit groups");
  IntMatrix m(uc.group().dim(), ud.group().dim());
  for (size_t j = 0; j < ud.group().dim(); ++j) {
    MonoidElement u = ud.element_of(ud.group().basis_vector(j));
    MonoidElement img = apply(u);
    auto c = uc.coords_of(cod_.normalize(img));
    require(c.has_value(), "BadInput", "homomorphism does not preserve units");
    for (size_t i = 0; i < uc.group().dim(); ++i) m.at(i, j) = (*c)[i];
  }
  return AbHom{ud.group(), uc.group(), m};
}

}  // namespace f1kgw
