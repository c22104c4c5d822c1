#include "f1kgw/bundle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "f1kgw/errors.hpp"

namespace f1kgw {

UnitPerm UnitPerm::identity(size_t n, const FgAbGroup& g) {
  UnitPerm u;
  u.perm.resize(n);
  std::iota(u.perm.begin(), u.perm.end(), size_t(0));
  u.units.assign(n, g.zero());
  return u;
}

UnitPerm UnitPerm::permutation(const std::vector<size_t>& p, const FgAbGroup& g) {
  UnitPerm u;
  u.perm = p;
  u.units.assign(p.size(), g.zero());
  return u;
}

UnitPerm UnitPerm::compose(const UnitPerm& inner, const FgAbGroup& g) const {
  require(size() == inner.size(), "SizeMismatch", "composing matrices of different ranks");
  UnitPerm out;
  out.perm.resize(size());
  out.units.resize(size());
  for (size_t i = 0; i < size(); ++i) {
    size_t mid = inner.perm[i];
    out.perm[i] = perm[mid];
    out.units[i] = g.add(units[mid], inner.units[i]);
  }
  return out;
}

UnitPerm UnitPerm::inverse(const FgAbGroup& g) const {
  UnitPerm out;
  out.perm.resize(size());
  out.units.resize(size());
  for (size_t i = 0; i < size(); ++i) {
    out.perm[perm[i]] = i;
    out.units[perm[i]] = g.neg(units[i]);
  }
  return out;
}

UnitPerm UnitPerm::dual(const FgAbGroup& g) const {
  UnitPerm out = *this;
  for (auto& u : out.units) u = g.neg(u);
  return out;
}

UnitPerm UnitPerm::map_entries(const AbHom& h) const {
  UnitPerm out = *this;
  for (auto& u : out.units) u = h.apply(u);
  return out;
}

UnitPerm UnitPerm::tensor(const UnitPerm& other, const FgAbGroup& g) const {
  UnitPerm out;
  const size_t n = size(), m = other.size();
  out.perm.resize(n * m);
  out.units.resize(n * m);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < m; ++b) {
      out.perm[a * m + b] = perm[a] * m + other.perm[b];
      out.units[a * m + b] = g.add(units[a], other.units[b]);
    }
  return out;
}

UnitPerm UnitPerm::direct_sum(const UnitPerm& other) const {
  UnitPerm out = *this;
  for (size_t b = 0; b < other.size(); ++b) {
    out.perm.push_back(size() + other.perm[b]);
    out.units.push_back(other.units[b]);
  }
  return out;
}

bool UnitPerm::equal(const UnitPerm& other, const FgAbGroup& g) const {
  if (perm != other.perm) return false;
  for (size_t i = 0; i < units.size(); ++i)
    if (!g.equal(units[i], other.units[i])) return false;
  return true;
}

bool UnitPerm::is_identity(const FgAbGroup& g) const {
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != i || !g.is_zero(units[i])) return false;
  return true;
}

std::string UnitPerm::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < perm.size(); ++i) {
    os << (i ? "; " : "") << i << "->" << perm[i] << ":(";
    for (size_t c = 0; c < units[i].size(); ++c) os << (c ? "," : "") << units[i][c].str();
    os << ")";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// bundles

CechBundle CechBundle::trivial(MonoidScheme x, size_t rank) {
  std::map<std::pair<size_t, size_t>, UnitPerm> tr;
  for (size_t i = 0; i < x.chart_count(); ++i)
    for (size_t j = i + 1; j < x.chart_count(); ++j)
      if (x.overlap_nonempty(i, j))
        tr.emplace(std::make_pair(i, j),
                   UnitPerm::identity(rank, x.overlap(i, j).monoid.units().group()));
  return make(std::move(x), rank, std::move(tr));
}

CechBundle CechBundle::make(MonoidScheme x, size_t rank,
                            std::map<std::pair<size_t, size_t>, UnitPerm> transitions) {
  CechBundle b;
  for (size_t i = 0; i < x.chart_count(); ++i)
    for (size_t j = i + 1; j < x.chart_count(); ++j) {
      bool have = transitions.count({i, j}) > 0;
      require(have == x.overlap_nonempty(i, j), "BadInput",
              "transitions must be given exactly on the nonempty overlaps");
      if (have) {
        const UnitPerm& u = transitions.at({i, j});
        require(u.size() == rank, "SizeMismatch", "transition rank mismatch");
        const FgAbGroup& g = x.overlap(i, j).monoid.units().group();
        for (const auto& c : u.units)
          require(c.size() == g.dim(), "BadInput", "transition entry has wrong coordinates");
      }
    }
  b.scheme_ = std::move(x);
  b.rank_ = rank;
  b.transitions_ = std::move(transitions);
  return b;
}

UnitPerm CechBundle::transition(size_t i, size_t j) const {
  require(i != j, "BadInput", "transition needs distinct charts");
  if (i < j) return transitions_.at({i, j});
  const FgAbGroup& g = scheme_.overlap(j, i).monoid.units().group();
  return transitions_.at({j, i}).inverse(g);
}

ValidationReport validate(const CechBundle& b) {
  ValidationReport rep;
  const MonoidScheme& x = b.scheme();
  for (size_t i = 0; i < x.chart_count(); ++i)
    for (size_t j = i + 1; j < x.chart_count(); ++j) {
      if (!x.overlap_nonempty(i, j)) continue;
      for (size_t k = j + 1; k < x.chart_count(); ++k) {
        if (!x.triple_nonempty(i, j, k)) continue;
        if (!x.overlap_nonempty(i, k) || !x.overlap_nonempty(j, k)) {
          rep.valid = false;
          rep.violations.push_back("triple without pairwise overlaps at {" + std::to_string(i) +
                                   "," + std::to_string(j) + "," + std::to_string(k) + "}");
          continue;
        }
        const TripleOverlap& t = x.triple(i, j, k);
        const FgAbGroup& g = t.monoid.units().group();
        UnitPerm pij = b.transition(i, j).map_entries(t.from_ij.units_hom());
        UnitPerm pik = b.transition(i, k).map_entries(t.from_ik.units_hom());
        UnitPerm pjk = b.transition(j, k).map_entries(t.from_jk.units_hom());
        if (!pik.equal(pjk.compose(pij, g), g)) {
          rep.valid = false;
          rep.violations.push_back("cocycle violation at {" + std::to_string(i) + "," +
                                   std::to_string(j) + "," + std::to_string(k) + "}");
        }
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Pic

PicGroup pic(const MonoidScheme& x) {
  const CechUnitsComplex& c = x.cech_units();
  PicGroup p;
  p.scheme_ = x;
  KernelResult k = kernel(c.d1);
  p.kernel_group_ = k.group;
  p.kernel_incl_ = k.inclusion;
  // factor d0 through the kernel and take the cokernel
  IntMatrix e(k.group.dim(), c.c0.group.dim());
  for (size_t j = 0; j < c.c0.group.dim(); ++j) {
    Vec img = c.d0.apply(c.c0.group.basis_vector(j));
    auto lift = solve(k.inclusion, img);
    require(lift.has_value(), "Internal", "d0 image must lie in ker(d1)");
    for (size_t i = 0; i < k.group.dim(); ++i) e.at(i, j) = (*lift)[i];
  }
  CokernelResult q = cokernel(AbHom{c.c0.group, k.group, e});
  p.group_ = q.group;
  p.proj_ = q.projection;
  return p;
}

Vec PicGroup::class_of_cocycle(const Vec& c1_coords) const {
  const CechUnitsComplex& c = scheme_.cech_units();
  require(c.c2.group.is_zero(c.d1.apply(c1_coords)), "InvalidCocycle",
          "not a 1-cocycle: d1 does not vanish");
  auto lift = solve(kernel_incl_, c.c1.group.reduce(c1_coords));
  require(lift.has_value(), "Internal", "cocycle did not lift to ker(d1)");
  return proj_.apply(*lift);
}

Vec PicGroup::cocycle_of(const Vec& pic_class) const {
  auto k = solve(proj_, group_.reduce(pic_class));
  require(k.has_value(), "Internal", "Pic projection must be surjective");
  return kernel_incl_.apply(*k);
}

Vec PicGroup::class_of(const CechBundle& line) const {
  require(line.rank() == 1, "BadInput", "class_of needs a line bundle");
  require(line.scheme().same_object(scheme_), "SchemeMismatch",
          "bundle lives on a different scheme");
  const CechUnitsComplex& c = scheme_.cech_units();
  Vec z = c.c1.group.zero();
  for (size_t e = 0; e < c.edges.size(); ++e) {
    const UnitPerm& u = line.transition(c.edges[e].first, c.edges[e].second);
    z = c.c1.group.add(z, c.c1.include[e].apply(u.units[0]));
  }
  return class_of_cocycle(z);
}

CechBundle PicGroup::line_bundle(const Vec& pic_class) const {
  const CechUnitsComplex& c = scheme_.cech_units();
  Vec z = cocycle_of(pic_class);
  std::map<std::pair<size_t, size_t>, UnitPerm> tr;
  for (size_t e = 0; e < c.edges.size(); ++e) {
    UnitPerm u;
    u.perm = {0};
    u.units = {c.c1.project[e].apply(z)};
    tr.emplace(c.edges[e], std::move(u));
  }
  return CechBundle::make(scheme_, 1, std::move(tr));
}

void PicGroup::orient_to(const CechBundle& line) {
  require(group_.free_rank() == 1 && group_.torsion_count() == 0, "BadInput",
          "orientation needs Pic isomorphic to Z");
  Vec c = class_of(line);
  require(c[0] == 1 || c[0] == -1, "BadInput", "bundle class does not generate Pic");
  if (c[0] == -1) {
    IntMatrix flip = IntMatrix::from_rows({{-1}});
    proj_ = AbHom{proj_.domain, group_, flip.mul(proj_.matrix)};
  }
}

// ---------------------------------------------------------------------------
// bundle operations

namespace {

void require_same_scheme(const CechBundle& a, const CechBundle& b) {
  require(a.scheme().same_object(b.scheme()), "SchemeMismatch",
          "bundles live on different schemes");
}

template <typename F>
CechBundle map_transitions(const CechBundle& a, size_t rank, F&& f) {
  std::map<std::pair<size_t, size_t>, UnitPerm> tr;
  for (const auto& [key, u] : a.stored_transitions()) {
    const FgAbGroup& g = a.scheme().overlap(key.first, key.second).monoid.units().group();
    tr.emplace(key, f(key, u, g));
  }
  return CechBundle::make(a.scheme(), rank, std::move(tr));
}

}  // namespace

CechBundle tensor(const CechBundle& a, const CechBundle& b) {
  require_same_scheme(a, b);
  return map_transitions(a, a.rank() * b.rank(),
                         [&](const std::pair<size_t, size_t>& key, const UnitPerm& u,
                             const FgAbGroup& g) {
                           return u.tensor(b.stored_transitions().at(key), g);
                         });
}

CechBundle direct_sum(const CechBundle& a, const CechBundle& b) {
  require_same_scheme(a, b);
  return map_transitions(a, a.rank() + b.rank(),
                         [&](const std::pair<size_t, size_t>& key, const UnitPerm& u,
                             const FgAbGroup&) {
                           return u.direct_sum(b.stored_transitions().at(key));
                         });
}

CechBundle dual(const CechBundle& b) {
  return map_transitions(b, b.rank(),
                         [&](const std::pair<size_t, size_t>&, const UnitPerm& u,
                             const FgAbGroup& g) { return u.dual(g); });
}

CechBundle twist(const CechBundle& b, const CechBundle& line) {
  require_same_scheme(b, line);
  require(line.rank() == 1, "BadInput", "twist needs a line bundle");
  return map_transitions(b, b.rank(),
                         [&](const std::pair<size_t, size_t>& key, const UnitPerm& u,
                             const FgAbGroup& g) {
                           UnitPerm out = u;
                           const Vec& l = line.stored_transitions().at(key).units[0];
                           for (auto& c : out.units) c = g.add(c, l);
                           return out;
                         });
}

CechBundle gauge_transform(const CechBundle& b, const std::vector<UnitPerm>& gauge) {
  const MonoidScheme& x = b.scheme();
  require(gauge.size() == x.chart_count(), "SizeMismatch", "one gauge matrix per chart");
  for (const auto& g : gauge)
    require(g.size() == b.rank(), "SizeMismatch", "gauge rank mismatch");
  return map_transitions(b, b.rank(),
                         [&](const std::pair<size_t, size_t>& key, const UnitPerm& u,
                             const FgAbGroup& g) {
                           auto [i, j] = key;
                           const ChartOverlap& ov = x.overlap(i, j);
                           UnitPerm gi = gauge[i].map_entries(ov.from_first.units_hom());
                           UnitPerm gj = gauge[j].map_entries(ov.from_second.units_hom());
                           return gj.compose(u, g).compose(gi.inverse(g), g);
                         });
}

// ---------------------------------------------------------------------------
// decomposition

SplitResult decompose(const CechBundle& b, const PicGroup& pg) {
  ValidationReport rep = validate(b);
  require(rep.valid, "InvalidCocycle", rep.violations.empty() ? "invalid bundle"
                                                              : rep.violations.front());
  const MonoidScheme& x = b.scheme();
  const size_t n = b.rank(), m = x.chart_count();

  // sheet graph on (chart, index)
  std::vector<size_t> parent(n * m);
  std::iota(parent.begin(), parent.end(), size_t(0));
  std::function<size_t(size_t)> find = [&](size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [key, u] : b.stored_transitions()) {
    auto [i, j] = key;
    for (size_t k = 0; k < n; ++k) parent[find(i * n + k)] = find(j * n + u.perm[k]);
  }

  std::map<size_t, std::vector<std::pair<size_t, size_t>>> comps;
  for (size_t i = 0; i < m; ++i)
    for (size_t k = 0; k < n; ++k) comps[find(i * n + k)].emplace_back(i, k);

  SplitResult out;
  for (auto& [root, sheets] : comps) out.components.push_back(sheets);
  std::sort(out.components.begin(), out.components.end());

  // splittable iff every component meets every chart in exactly one sheet
  for (const auto& comp : out.components) {
    std::vector<size_t> per_chart(m, 0);
    for (const auto& [i, k] : comp) per_chart[i]++;
    for (size_t i = 0; i < m; ++i)
      if (per_chart[i] != 1) {
        out.split = false;
        return out;
      }
  }
  out.split = true;

  // order components by their sheet at chart 0; gauge g_i sends the sheet of
  // component t in chart i to position t
  std::sort(out.components.begin(), out.components.end(),
            [&](const auto& a, const auto& c) {
              size_t sa = 0, sc = 0;
              for (const auto& [i, k] : a)
                if (i == 0) sa = k;
              for (const auto& [i, k] : c)
                if (i == 0) sc = k;
              return sa < sc;
            });
  out.gauge.resize(m);
  for (size_t i = 0; i < m; ++i) {
    std::vector<size_t> p(n);
    for (size_t t = 0; t < out.components.size(); ++t)
      for (const auto& [ci, k] : out.components[t])
        if (ci == i) p[k] = t;
    out.gauge[i] = UnitPerm::permutation(p, x.chart(i).units().group());
  }
  out.diagonal = gauge_transform(b, out.gauge);

  // read off the line cocycles and their classes
  const CechUnitsComplex& c = x.cech_units();
  for (size_t t = 0; t < n; ++t) {
    Vec z = c.c1.group.zero();
    for (size_t e = 0; e < c.edges.size(); ++e) {
      const UnitPerm& u = out.diagonal.stored_transitions().at(c.edges[e]);
      require(u.perm[t] == t, "Internal", "diagonal gauge failed");
      z = c.c1.group.add(z, c.c1.include[e].apply(u.units[t]));
    }
    out.classes.push_back(pg.class_of_cocycle(z));
  }
  std::sort(out.classes.begin(), out.classes.end(), VecLess{});
  return out;
}

// ---------------------------------------------------------------------------
// K0

FinSuppMap K0Ring::class_of_bundle(const CechBundle& b) const {
  SplitResult s = decompose(b, picard);
  require(s.split, "NotIntegral", "bundle does not decompose into line bundles");
  FinSuppMap out(index);
  for (const auto& c : s.classes) out.add_term(c, 1);
  return out;
}

FinSuppMap K0Ring::multiply(const FinSuppMap& a, const FinSuppMap& b) const {
  return a.convolve(b);
}

K0Ring k0(const MonoidScheme& x) {
  require(x.is_integral(), "NotIntegral", "K0 = Z[Pic] needs an integral scheme");
  PicGroup p = pic(x);
  IndexDescriptor d = IndexDescriptor::group_elements(p.group());
  return K0Ring{std::move(p), std::move(d)};
}

// ---------------------------------------------------------------------------
// O(m) on projective space

CechBundle projective_o_line(const MonoidScheme& x, const Int& m) {
  require(x.has_ambient(), "BadInput", "projective_o_line needs the ambient model");
  const size_t charts = x.chart_count();
  require(charts >= 2, "BadInput", "not a projective space cover");
  const size_t n = charts - 1;  // fibre dimension
  const FgAbGroup& amb = x.ambient();
  require(amb.free_rank() >= n, "BadInput", "ambient group too small for P^n");
  const size_t base_dim = amb.dim() - n;
  auto fib = [&](size_t j) {
    Vec v = amb.zero();
    if (j > 0) v[base_dim + j - 1] = 1;
    return v;
  };
  std::map<std::pair<size_t, size_t>, UnitPerm> tr;
  for (size_t i = 0; i <= n; ++i)
    for (size_t j = i + 1; j <= n; ++j) {
      // transition of O(m) from chart i to chart j: (T_j / T_i)^m
      Vec elt = amb.reduce(vec_scale(m, vec_sub(fib(j), fib(i))));
      auto coords = x.overlap(i, j).monoid.units().coords_of(MonoidElement::exp(elt));
      require(coords.has_value(), "Internal", "coordinate ratio is not a unit of the overlap");
      UnitPerm u;
      u.perm = {0};
      u.units = {*coords};
      tr.emplace(std::make_pair(i, j), std::move(u));
    }
  return CechBundle::make(x, 1, std::move(tr));
}

}  // namespace f1kgw
