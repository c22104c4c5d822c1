#include "f1kgw/scheme.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "f1kgw/errors.hpp"

namespace f1kgw {

namespace {

struct PairKey {
  size_t i, j;
  bool operator<(const PairKey& o) const { return std::tie(i, j) < std::tie(o.i, o.j); }
};

}  // namespace

struct MonoidScheme::Impl {
  std::vector<PointedMonoid> charts;
  std::vector<std::string> chart_names;
  std::map<std::pair<size_t, size_t>, ChartOverlap> overlaps;       // keys i < j
  std::map<std::array<size_t, 3>, TripleOverlap> triples;           // keys i < j < k
  bool ambient_model = false;
  FgAbGroup ambient;

  mutable std::once_flag points_flag, cech_flag, gamma_flag;
  mutable std::vector<SchemePoint> points;
  mutable std::vector<std::vector<size_t>> point_of_local;  // [chart][prime idx] -> point id
  mutable std::vector<std::vector<bool>> closure;           // closure[y][x]: x in cl{y}
  mutable CechUnitsComplex cech;
  mutable std::optional<PointedMonoid> gamma;
};

// ---------------------------------------------------------------------------
// constructors

MonoidScheme MonoidScheme::glued(std::vector<PointedMonoid> charts,
                                 std::map<std::pair<size_t, size_t>, ChartOverlap> overlaps,
                                 std::map<std::array<size_t, 3>, TripleOverlap> triples) {
  auto impl = std::make_shared<Impl>();
  impl->charts = std::move(charts);
  impl->overlaps = std::move(overlaps);
  impl->triples = std::move(triples);
  for (size_t i = 0; i < impl->charts.size(); ++i)
    impl->chart_names.push_back("U" + std::to_string(i));
  // restriction squares must commute on generators
  for (const auto& [key, t] : impl->triples) {
    auto [i, j, k] = key;
    auto pij = impl->overlaps.find({i, j});
    auto pik = impl->overlaps.find({i, k});
    auto pjk = impl->overlaps.find({j, k});
    require(pij != impl->overlaps.end() && pik != impl->overlaps.end() &&
                pjk != impl->overlaps.end(),
            "BadInput", "triple overlap without its pairwise overlaps");
    const PointedMonoid& ai = impl->charts[i];
    for (size_t g = 0; g < ai.generator_count(); ++g) {
      MonoidElement e = ai.generator(g);
      MonoidElement via_ij = t.from_ij.apply(pij->second.from_first.apply(e));
      MonoidElement via_ik = t.from_ik.apply(pik->second.from_first.apply(e));
      require(t.monoid.equal(via_ij, via_ik), "BadInput",
              "restriction square does not commute on chart " + std::to_string(i));
    }
    const PointedMonoid& aj = impl->charts[j];
    for (size_t g = 0; g < aj.generator_count(); ++g) {
      MonoidElement e = aj.generator(g);
      MonoidElement via_ij = t.from_ij.apply(pij->second.from_second.apply(e));
      MonoidElement via_jk = t.from_jk.apply(pjk->second.from_first.apply(e));
      require(t.monoid.equal(via_ij, via_jk), "BadInput",
              "restriction square does not commute on chart " + std::to_string(j));
    }
  }
  return MonoidScheme(std::move(impl));
}

MonoidScheme MonoidScheme::ambient_model(FgAbGroup ambient,
                                         std::vector<std::vector<Vec>> chart_gens,
                                         std::vector<std::string> chart_names) {
  auto impl = std::make_shared<Impl>();
  impl->ambient_model = true;
  impl->ambient = ambient;
  const size_t n = chart_gens.size();
  for (size_t i = 0; i < n; ++i) impl->charts.push_back(PointedMonoid::exponent(ambient, chart_gens[i]));
  if (chart_names.size() == n)
    impl->chart_names = std::move(chart_names);
  else
    for (size_t i = 0; i < n; ++i) impl->chart_names.push_back("U" + std::to_string(i));

  auto make_inclusion = [&](const PointedMonoid& dom, const PointedMonoid& cod) {
    return MonoidHom::exp_linear(dom, cod, IntMatrix::identity(ambient.dim()));
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      std::vector<Vec> gens = chart_gens[i];
      gens.insert(gens.end(), chart_gens[j].begin(), chart_gens[j].end());
      PointedMonoid o = PointedMonoid::exponent(ambient, gens);
      impl->overlaps.emplace(std::make_pair(i, j),
                             ChartOverlap{o, make_inclusion(impl->charts[i], o),
                                          make_inclusion(impl->charts[j], o)});
    }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        std::vector<Vec> gens = chart_gens[i];
        gens.insert(gens.end(), chart_gens[j].begin(), chart_gens[j].end());
        gens.insert(gens.end(), chart_gens[k].begin(), chart_gens[k].end());
        PointedMonoid o = PointedMonoid::exponent(ambient, gens);
        impl->triples.emplace(
            std::array<size_t, 3>{i, j, k},
            TripleOverlap{o, make_inclusion(impl->overlaps.at({i, j}).monoid, o),
                          make_inclusion(impl->overlaps.at({i, k}).monoid, o),
                          make_inclusion(impl->overlaps.at({j, k}).monoid, o)});
      }
  return MonoidScheme(std::move(impl));
}

MonoidScheme MonoidScheme::spec(const PointedMonoid& a) {
  require(a.commutative(), "NonCommutative", "Spec needs a commutative monoid");
  if (a.backend() == Backend::Exponent) {
    return ambient_model(a.ambient(), {a.exp_generators()});
  }
  auto impl = std::make_shared<Impl>();
  impl->charts = {a};
  impl->chart_names = {"U0"};
  return MonoidScheme(std::move(impl));
}

MonoidScheme MonoidScheme::affine_space(size_t n) {
  return spec(PointedMonoid::free_monoid(n));
}

MonoidScheme MonoidScheme::projective_space(size_t n, const PointedMonoid& base) {
  require(n >= 1, "BadInput", "projective space needs n >= 1");
  require(base.backend() == Backend::Exponent, "UnsupportedBase",
          "projective space needs an Exponent base");
  const FgAbGroup& gb = base.ambient();
  FgAbGroup ext(gb.torsion(), gb.free_rank() + n);
  const size_t base_dim = gb.dim();
  auto pad = [&](const Vec& v) {
    Vec out(ext.dim(), Int(0));
    for (size_t t = 0; t < base_dim; ++t) out[t] = v[t];
    return out;
  };
  auto fib = [&](size_t j) {  // exponent vector of T_j/T_0
    Vec out(ext.dim(), Int(0));
    if (j > 0) out[base_dim + j - 1] = 1;
    return out;
  };
  std::vector<std::vector<Vec>> chart_gens(n + 1);
  std::vector<std::string> names;
  for (size_t i = 0; i <= n; ++i) {
    for (const auto& g : base.exp_generators()) chart_gens[i].push_back(pad(g));
    for (size_t j = 0; j <= n; ++j)
      if (j != i) chart_gens[i].push_back(ext.reduce(vec_sub(fib(j), fib(i))));
    names.push_back("U" + std::to_string(i));
  }
  return ambient_model(ext, chart_gens, names);
}

MonoidScheme MonoidScheme::triangle() {
  // charts U_i = Spec F1[u, v]/<uv = 0> with u = T_j/T_i, v = T_k/T_i;
  // pairwise overlaps are the generic points of the coordinate lines,
  // triple overlap empty
  FgAbGroup z2 = FgAbGroup::free_group(2);
  auto make_chart = [&](const std::string& a, const std::string& b) {
    return PointedMonoid::wedge(z2, {}, {{z2.basis_vector(0)}, {z2.basis_vector(1)}}, {a, b});
  };
  // chart i components ordered by the other indices ascending
  std::vector<PointedMonoid> charts = {make_chart("T1/T0", "T2/T0"),
                                       make_chart("T0/T1", "T2/T1"),
                                       make_chart("T0/T2", "T1/T2")};
  PointedMonoid laurent = PointedMonoid::laurent(1);

  auto comp_keep = [&](const PointedMonoid& chart, size_t comp, long image) {
    // wedge -> laurent: component comp maps to image * w, the other dies
    std::vector<std::optional<IntMatrix>> cm(2, std::nullopt);
    IntMatrix m(1, 2);
    m.at(0, comp) = image;
    cm[comp] = m;
    return MonoidHom::wedge_map(chart, laurent, IntMatrix(1, 2), cm);
  };

  std::map<std::pair<size_t, size_t>, ChartOverlap> overlaps;
  // U0 n U1: line T2 = 0; keep T1/T0 in chart 0 (component 0) and T0/T1 in
  // chart 1 (component 0), inverse to each other
  overlaps.emplace(std::make_pair(size_t(0), size_t(1)),
                   ChartOverlap{laurent, comp_keep(charts[0], 0, 1), comp_keep(charts[1], 0, -1)});
  // U0 n U2: line T1 = 0; keep T2/T0 (component 1 of chart 0), T0/T2
  // (component 0 of chart 2)
  overlaps.emplace(std::make_pair(size_t(0), size_t(2)),
                   ChartOverlap{laurent, comp_keep(charts[0], 1, 1), comp_keep(charts[2], 0, -1)});
  // U1 n U2: line T0 = 0; keep T2/T1 (component 1 of chart 1), T1/T2
  // (component 1 of chart 2)
  overlaps.emplace(std::make_pair(size_t(1), size_t(2)),
                   ChartOverlap{laurent, comp_keep(charts[1], 1, 1), comp_keep(charts[2], 1, -1)});

  return glued(std::move(charts), std::move(overlaps), {});
}

MonoidScheme MonoidScheme::p1_x_p1() {
  FgAbGroup z2 = FgAbGroup::free_group(2);
  Vec e1 = z2.basis_vector(0), e2 = z2.basis_vector(1);
  return ambient_model(z2, {{e1, e2},
                            {vec_neg(e1), e2},
                            {e1, vec_neg(e2)},
                            {vec_neg(e1), vec_neg(e2)}},
                       {"U++", "U-+", "U+-", "U--"});
}

MonoidScheme MonoidScheme::p1_x_gm() {
  FgAbGroup z2 = FgAbGroup::free_group(2);
  Vec e1 = z2.basis_vector(0), e2 = z2.basis_vector(1);
  return ambient_model(z2, {{e1, e2, vec_neg(e2)}, {vec_neg(e1), e2, vec_neg(e2)}},
                       {"U+", "U-"});
}

// ---------------------------------------------------------------------------
// structure access

size_t MonoidScheme::chart_count() const { return impl_->charts.size(); }
const PointedMonoid& MonoidScheme::chart(size_t i) const { return impl_->charts.at(i); }
bool MonoidScheme::has_ambient() const { return impl_->ambient_model; }
const FgAbGroup& MonoidScheme::ambient() const {
  require(impl_->ambient_model, "UnsupportedModel", "scheme has no ambient group");
  return impl_->ambient;
}
const std::vector<std::string>& MonoidScheme::chart_names() const { return impl_->chart_names; }

bool MonoidScheme::overlap_nonempty(size_t i, size_t j) const {
  if (i > j) std::swap(i, j);
  return impl_->overlaps.count({i, j}) > 0;
}

const ChartOverlap& MonoidScheme::overlap(size_t i, size_t j) const {
  require(i < j, "BadInput", "overlap indices must be ordered");
  auto it = impl_->overlaps.find({i, j});
  require(it != impl_->overlaps.end(), "BadInput", "empty overlap");
  return it->second;
}

bool MonoidScheme::triple_nonempty(size_t i, size_t j, size_t k) const {
  std::array<size_t, 3> key{i, j, k};
  std::sort(key.begin(), key.end());
  return impl_->triples.count(key) > 0;
}

const TripleOverlap& MonoidScheme::triple(size_t i, size_t j, size_t k) const {
  std::array<size_t, 3> key{i, j, k};
  std::sort(key.begin(), key.end());
  auto it = impl_->triples.find(key);
  require(it != impl_->triples.end(), "BadInput", "empty triple overlap");
  return it->second;
}

// ---------------------------------------------------------------------------
// points

namespace {

struct PointUnionFind {
  std::vector<size_t> parent;
  explicit PointUnionFind(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = i;
  }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

/// The unique chart prime whose generator trace matches the preimage of a
/// prime under a chart-to-overlap hom.
size_t match_preimage(const PointedMonoid& chart, const MonoidHom& hom,
                      const PointedMonoid& overlap, const PrimeIdeal& r) {
  const auto& primes = chart.primes();
  for (size_t pi = 0; pi < primes.size(); ++pi) {
    bool match = true;
    for (size_t g = 0; g < chart.generator_count() && match; ++g) {
      MonoidElement e = chart.generator(g);
      if (e.is_zero()) continue;
      bool in_p = chart.prime_contains(primes[pi], e);
      MonoidElement img = hom.apply(e);
      bool in_r = img.is_zero() ? true : overlap.prime_contains(r, img);
      if (in_p != in_r) match = false;
    }
    if (match) return pi;
  }
  fail("Internal", "preimage of a prime did not match any chart prime");
}

}  // namespace

const std::vector<SchemePoint>& MonoidScheme::points() const {
  std::call_once(impl_->points_flag, [&] {
    // local points, indexed consecutively chart by chart
    std::vector<size_t> offset(impl_->charts.size() + 1, 0);
    for (size_t i = 0; i < impl_->charts.size(); ++i)
      offset[i + 1] = offset[i] + impl_->charts[i].primes().size();
    PointUnionFind uf(offset.back());

    for (const auto& [key, ov] : impl_->overlaps) {
      auto [i, j] = key;
      const auto& rprimes = ov.monoid.primes();
      for (const auto& r : rprimes) {
        size_t pi = match_preimage(impl_->charts[i], ov.from_first, ov.monoid, r);
        size_t pj = match_preimage(impl_->charts[j], ov.from_second, ov.monoid, r);
        uf.unite(offset[i] + pi, offset[j] + pj);
      }
    }

    std::map<size_t, size_t> root_to_id;
    impl_->point_of_local.assign(impl_->charts.size(), {});
    std::vector<SchemePoint> pts;
    for (size_t i = 0; i < impl_->charts.size(); ++i) {
      impl_->point_of_local[i].resize(impl_->charts[i].primes().size());
      for (size_t p = 0; p < impl_->charts[i].primes().size(); ++p) {
        size_t root = uf.find(offset[i] + p);
        auto it = root_to_id.find(root);
        size_t id;
        if (it == root_to_id.end()) {
          id = pts.size();
          root_to_id.emplace(root, id);
          pts.push_back(SchemePoint{id, {}, false});
        } else {
          id = it->second;
        }
        pts[id].reps.emplace_back(i, p);
        impl_->point_of_local[i][p] = id;
      }
    }

    // specialization closure: x in cl{y} iff some chart holds both with
    // prime(y) contained in prime(x); then close transitively
    const size_t n = pts.size();
    impl_->closure.assign(n, std::vector<bool>(n, false));
    for (size_t y = 0; y < n; ++y) impl_->closure[y][y] = true;
    for (size_t i = 0; i < impl_->charts.size(); ++i) {
      const auto& primes = impl_->charts[i].primes();
      for (size_t a = 0; a < primes.size(); ++a)
        for (size_t b = 0; b < primes.size(); ++b)
          if (impl_->charts[i].prime_subset(primes[a], primes[b]))
            impl_->closure[impl_->point_of_local[i][a]][impl_->point_of_local[i][b]] = true;
    }
    for (size_t k = 0; k < n; ++k)
      for (size_t y = 0; y < n; ++y)
        for (size_t x = 0; x < n; ++x)
          if (impl_->closure[y][k] && impl_->closure[k][x]) impl_->closure[y][x] = true;

    for (size_t x = 0; x < n; ++x) {
      bool closed = true;
      for (size_t z = 0; z < n; ++z)
        if (z != x && impl_->closure[x][z]) closed = false;
      pts[x].closed = closed;
    }
    impl_->points = std::move(pts);
  });
  return impl_->points;
}

bool MonoidScheme::specializes(size_t y, size_t x) const {
  points();
  return impl_->closure.at(y).at(x);
}

std::vector<std::pair<size_t, size_t>> MonoidScheme::specialization_pairs() const {
  points();
  std::vector<std::pair<size_t, size_t>> out;
  const size_t n = impl_->points.size();
  for (size_t y = 0; y < n; ++y)
    for (size_t x = 0; x < n; ++x)
      if (x != y && impl_->closure[y][x]) out.emplace_back(y, x);
  return out;
}

std::optional<size_t> MonoidScheme::generic_point() const {
  const auto& pts = points();
  for (size_t y = 0; y < pts.size(); ++y) {
    bool covers_all = true;
    for (size_t x = 0; x < pts.size(); ++x)
      if (!impl_->closure[y][x]) covers_all = false;
    if (covers_all) return y;
  }
  return std::nullopt;
}

PointedMonoid MonoidScheme::stalk(size_t point_id) const {
  const auto& pts = points();
  require(point_id < pts.size(), "BadInput", "no such point");
  auto [chart_idx, prime_idx] = pts[point_id].reps.front();
  const PointedMonoid& a = impl_->charts[chart_idx];
  const PrimeIdeal& p = a.primes()[prime_idx];
  LocalizationResult loc = a.localize(a.prime_complement_generators(p));
  require(!loc.degenerate, "Internal", "stalk localization degenerated");
  return loc.result;
}

bool MonoidScheme::is_irreducible() const { return generic_point().has_value(); }

bool MonoidScheme::is_pc() const {
  const auto& pts = points();
  for (const auto& pt : pts)
    if (!stalk(pt.id).properties().pc) return false;
  return true;
}

bool MonoidScheme::is_integral() const { return is_irreducible() && is_pc(); }

// ---------------------------------------------------------------------------
// Cech complex of units

std::optional<size_t> CechUnitsComplex::edge_index(size_t i, size_t j) const {
  if (i > j) std::swap(i, j);
  for (size_t e = 0; e < edges.size(); ++e)
    if (edges[e] == std::make_pair(i, j)) return e;
  return std::nullopt;
}

const CechUnitsComplex& MonoidScheme::cech_units() const {
  std::call_once(impl_->cech_flag, [&] {
    CechUnitsComplex c;
    std::vector<FgAbGroup> chart_units;
    for (const auto& a : impl_->charts) chart_units.push_back(a.units().group());
    c.c0 = product_group(chart_units);

    std::vector<FgAbGroup> edge_units;
    for (const auto& [key, ov] : impl_->overlaps) {
      c.edges.push_back(key);
      edge_units.push_back(ov.monoid.units().group());
    }
    c.c1 = product_group(edge_units);

    std::vector<FgAbGroup> triple_units;
    for (const auto& [key, t] : impl_->triples) {
      c.triples.push_back(key);
      triple_units.push_back(t.monoid.units().group());
    }
    c.c2 = product_group(triple_units);

    c.d0 = AbHom::zero(c.c0.group, c.c1.group);
    for (size_t e = 0; e < c.edges.size(); ++e) {
      auto [i, j] = c.edges[e];
      const ChartOverlap& ov = impl_->overlaps.at({i, j});
      AbHom term = c.c1.include[e]
                       .compose(ov.from_second.units_hom())
                       .compose(c.c0.project[j])
                       .add(c.c1.include[e]
                                .compose(ov.from_first.units_hom())
                                .compose(c.c0.project[i])
                                .negate());
      c.d0 = c.d0.add(term);
    }

    c.d1 = AbHom::zero(c.c1.group, c.c2.group);
    for (size_t t = 0; t < c.triples.size(); ++t) {
      auto [i, j, k] = c.triples[t];
      const TripleOverlap& tr = impl_->triples.at({i, j, k});
      size_t eij = *c.edge_index(i, j), eik = *c.edge_index(i, k), ejk = *c.edge_index(j, k);
      AbHom term = c.c2.include[t]
                       .compose(tr.from_jk.units_hom())
                       .compose(c.c1.project[ejk])
                       .add(c.c2.include[t]
                                .compose(tr.from_ik.units_hom())
                                .compose(c.c1.project[eik])
                                .negate())
                       .add(c.c2.include[t]
                                .compose(tr.from_ij.units_hom())
                                .compose(c.c1.project[eij]));
      c.d1 = c.d1.add(term);
    }
    impl_->cech = std::move(c);
  });
  return impl_->cech;
}

MonoidScheme::GlobalUnits MonoidScheme::global_units() const {
  const CechUnitsComplex& c = cech_units();
  KernelResult k = kernel(c.d0);
  return GlobalUnits{k.group, k.inclusion};
}

// ---------------------------------------------------------------------------
// global sections

PointedMonoid MonoidScheme::global_sections() const {
  std::call_once(impl_->gamma_flag, [&] {
    if (impl_->charts.size() == 1) {
      impl_->gamma = impl_->charts[0];
      return;
    }
    if (impl_->ambient_model) {
      // candidate generators: chart generators lying in every chart, plus
      // the intersection of the unit subgroups
      std::vector<Vec> candidates;
      for (const auto& a : impl_->charts)
        for (const auto& g : a.exp_generators())
          if (std::find(candidates.begin(), candidates.end(), g) == candidates.end())
            candidates.push_back(g);
      std::vector<Vec> kept;
      for (const auto& g : candidates) {
        bool everywhere = true;
        for (const auto& a : impl_->charts)
          if (!a.exp_member(g)) everywhere = false;
        if (everywhere) kept.push_back(g);
      }
      // unit subgroup intersection via the kernel of the difference maps
      {
        GlobalUnits gu = global_units();
        const CechUnitsComplex& c = cech_units();
        for (size_t j = 0; j < gu.group.dim(); ++j) {
          Vec in_c0 = gu.into_c0.apply(gu.group.basis_vector(j));
          // read the ambient coordinates off the first chart's component
          Vec chart0 = c.c0.project[0].apply(in_c0);
          Vec amb = impl_->charts[0].units().element_of(chart0).coords;
          kept.push_back(impl_->ambient.reduce(amb));
        }
      }
      PointedMonoid gamma0 = kept.empty()
                                 ? PointedMonoid::exponent(impl_->ambient, {})
                                 : PointedMonoid::exponent(impl_->ambient, kept);
      // certification: on a margin band of bounded-degree sums of all chart
      // generators, membership in every chart must coincide with membership
      // in the computed intersection
      std::set<Vec, VecLess> region{impl_->ambient.zero()};
      const int depth = 4;
      for (int d = 0; d < depth; ++d) {
        std::set<Vec, VecLess> next = region;
        for (const auto& e : region)
          for (const auto& g : candidates) next.insert(impl_->ambient.reduce(vec_add(e, g)));
        region = std::move(next);
      }
      for (const auto& v : region) {
        bool everywhere = true;
        for (const auto& a : impl_->charts)
          if (!a.exp_member(v)) everywhere = false;
        if (everywhere)
          require(gamma0.exp_member(v), "UnsupportedModel",
                  "global sections certification failed: element outside the generated "
                  "intersection");
      }
      impl_->gamma = gamma0;
      return;
    }
    // finite tables: equalizer by brute force
    for (const auto& a : impl_->charts)
      require(a.backend() == Backend::FiniteTable, "UnsupportedModel",
              "global sections need the ambient model or finite tables");
    std::vector<size_t> sizes;
    for (const auto& a : impl_->charts) sizes.push_back(*a.size());
    std::vector<std::vector<size_t>> tuples;
    std::vector<size_t> cur(impl_->charts.size(), 0);
    while (true) {
      bool agree = true;
      for (const auto& [key, ov] : impl_->overlaps) {
        auto [i, j] = key;
        MonoidElement a = impl_->charts[i].normalize(MonoidElement::table(cur[i]));
        MonoidElement b = impl_->charts[j].normalize(MonoidElement::table(cur[j]));
        if (!ov.monoid.equal(ov.from_first.apply(a), ov.from_second.apply(b))) agree = false;
      }
      if (agree) tuples.push_back(cur);
      size_t d = 0;
      for (; d < cur.size(); ++d) {
        if (++cur[d] < sizes[d]) break;
        cur[d] = 0;
      }
      if (d == cur.size()) break;
    }
    // the agreeing tuples form a submonoid of the product
    auto tuple_index = [&](const std::vector<size_t>& t) {
      auto it = std::find(tuples.begin(), tuples.end(), t);
      require(it != tuples.end(), "Internal", "equalizer not closed under products");
      return static_cast<size_t>(it - tuples.begin());
    };
    // reorder so zero and one take indices 0 and 1
    std::vector<size_t> zero(impl_->charts.size(), 0), one(impl_->charts.size());
    for (size_t i = 0; i < impl_->charts.size(); ++i) one[i] = sizes[i] == 1 ? 0 : 1;
    std::swap(tuples[0], tuples[tuple_index(zero)]);
    if (tuples.size() > 1) std::swap(tuples[1], tuples[tuple_index(one)]);
    std::vector<std::vector<size_t>> table(tuples.size(), std::vector<size_t>(tuples.size()));
    for (size_t x = 0; x < tuples.size(); ++x)
      for (size_t y = 0; y < tuples.size(); ++y) {
        std::vector<size_t> prod(impl_->charts.size());
        for (size_t i = 0; i < impl_->charts.size(); ++i)
          prod[i] = impl_->charts[i].table_mul(tuples[x][i], tuples[y][i]);
        table[x][y] = tuple_index(prod);
      }
    impl_->gamma = PointedMonoid::finite_table(table);
  });
  return *impl_->gamma;
}

// ---------------------------------------------------------------------------
// printing

std::string MonoidScheme::to_string() const {
  std::ostringstream os;
  os << chart_count() << " charts, " << points().size() << " points";
  if (impl_->ambient_model) os << ", ambient " << impl_->ambient.to_string();
  return os.str();
}

std::string MonoidScheme::poset_dot() const {
  const auto& pts = points();
  std::ostringstream os;
  os << "digraph specialization {\n  rankdir=BT;\n";
  for (const auto& pt : pts) {
    auto [ci, pi] = pt.reps.front();
    os << "  p" << pt.id << " [label=\"" << impl_->charts[ci].prime_to_string(
              impl_->charts[ci].primes()[pi])
       << " @" << impl_->chart_names[ci] << (pt.closed ? " (closed)" : "") << "\"];\n";
  }
  // covering relations only
  for (const auto& [y, x] : specialization_pairs()) {
    bool covering = true;
    for (const auto& pt : pts) {
      size_t z = pt.id;
      if (z != x && z != y && specializes(y, z) && specializes(z, x)) covering = false;
    }
    if (covering) os << "  p" << x << " -> p" << y << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace f1kgw
