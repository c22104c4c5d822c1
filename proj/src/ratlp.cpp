#include "f1kgw/ratlp.hpp"

#include <algorithm>
#include <map>

#include "f1kgw/errors.hpp"

namespace f1kgw {

namespace {

struct Ineq {
  std::vector<Rat> coef;  // coef . x >= rhs
  Rat rhs;
};

// Eliminates equalities by substitution, then runs Fourier-Motzkin on the
// inequalities. Returns per-variable bound lists for back substitution, or
// nullopt when the system is infeasible.
struct Eliminated {
  // substitutions from equality rows: var -> (coef over remaining vars, rhs)
  struct Subst {
    size_t var;
    std::vector<Rat> coef;
    Rat rhs;
  };
  std::vector<Subst> substs;           // applied in order; invert in reverse
  std::vector<size_t> fm_order;        // variables eliminated by FM
  std::vector<std::vector<Ineq>> lower;  // bounds states per FM step
  std::vector<std::vector<Ineq>> upper;
  size_t nvars = 0;
};

std::optional<Eliminated> eliminate(size_t nvars, std::vector<Ineq> ineqs,
                                    std::vector<Ineq> eqs) {
  Eliminated out;
  out.nvars = nvars;
  std::vector<bool> gone(nvars, false);

  // equality substitution
  while (!eqs.empty()) {
    Ineq e = eqs.back();
    eqs.pop_back();
    size_t var = nvars;
    for (size_t j = 0; j < nvars; ++j)
      if (!gone[j] && e.coef[j] != 0) {
        var = j;
        break;
      }
    if (var == nvars) {
      if (e.rhs != 0) return std::nullopt;  // 0 == nonzero
      continue;
    }
    // x_var = (rhs - sum_{j != var} coef_j x_j) / coef_var
    Rat c = e.coef[var];
    Eliminated::Subst s;
    s.var = var;
    s.coef.assign(nvars, Rat(0));
    for (size_t j = 0; j < nvars; ++j)
      if (j != var) s.coef[j] = -e.coef[j] / c;
    s.rhs = e.rhs / c;
    gone[var] = true;
    auto substitute = [&](Ineq& r) {
      Rat k = r.coef[var];
      if (k == 0) return;
      r.coef[var] = 0;
      for (size_t j = 0; j < nvars; ++j) r.coef[j] += k * s.coef[j];
      r.rhs -= k * s.rhs;
    };
    for (auto& r : eqs) substitute(r);
    for (auto& r : ineqs) substitute(r);
    out.substs.push_back(std::move(s));
  }

  // Fourier-Motzkin on remaining variables
  for (size_t var = 0; var < nvars; ++var) {
    if (gone[var]) continue;
    std::vector<Ineq> low, up, rest;
    for (auto& r : ineqs) {
      if (r.coef[var] > 0)
        low.push_back(r);  // x >= (rhs - rest)/c
      else if (r.coef[var] < 0)
        up.push_back(r);
      else
        rest.push_back(r);
    }
    out.fm_order.push_back(var);
    out.lower.push_back(low);
    out.upper.push_back(up);
    for (const auto& l : low)
      for (const auto& u : up) {
        // combine: scale to cancel var
        Rat cl = l.coef[var], cu = -u.coef[var];
        Ineq n;
        n.coef.assign(nvars, Rat(0));
        for (size_t j = 0; j < nvars; ++j) n.coef[j] = l.coef[j] * cu + u.coef[j] * cl;
        n.rhs = l.rhs * cu + u.rhs * cl;
        n.coef[var] = 0;
        rest.push_back(std::move(n));
      }
    // drop trivial and duplicate rows to keep the blowup in check
    std::vector<Ineq> pruned;
    for (auto& r : rest) {
      bool allzero = std::all_of(r.coef.begin(), r.coef.end(), [](const Rat& x) { return x == 0; });
      if (allzero) {
        if (r.rhs > 0) return std::nullopt;  // 0 >= positive
        continue;
      }
      bool dup = false;
      for (const auto& p : pruned)
        if (p.coef == r.coef && p.rhs == r.rhs) {
          dup = true;
          break;
        }
      if (!dup) pruned.push_back(std::move(r));
    }
    ineqs = std::move(pruned);
    gone[var] = true;
  }

  for (const auto& r : ineqs)
    if (r.rhs > 0) return std::nullopt;
  return out;
}

}  // namespace

void RatLP::add_ge(const std::vector<Rat>& coef, const Rat& rhs) {
  require(coef.size() == nvars_, "BadInput", "constraint arity mismatch");
  rows_.push_back(Row{coef, rhs, false});
}

void RatLP::add_le(const std::vector<Rat>& coef, const Rat& rhs) {
  std::vector<Rat> neg(coef.size());
  for (size_t i = 0; i < coef.size(); ++i) neg[i] = -coef[i];
  add_ge(neg, -rhs);
}

void RatLP::add_eq(const std::vector<Rat>& coef, const Rat& rhs) {
  require(coef.size() == nvars_, "BadInput", "constraint arity mismatch");
  rows_.push_back(Row{coef, rhs, true});
}

bool RatLP::feasible() const { return find_point().has_value(); }

std::optional<std::vector<Rat>> RatLP::find_point() const {
  std::vector<Ineq> ineqs, eqs;
  for (const auto& r : rows_)
    (r.eq ? eqs : ineqs).push_back(Ineq{r.coef, r.rhs});
  auto elim = eliminate(nvars_, ineqs, eqs);
  if (!elim) return std::nullopt;

  std::vector<Rat> x(nvars_, Rat(0));
  // back-substitute FM variables in reverse elimination order
  for (size_t step = elim->fm_order.size(); step-- > 0;) {
    size_t var = elim->fm_order[step];
    auto eval = [&](const Ineq& r) {
      // bound on x_var from r given later variables already fixed
      Rat acc = r.rhs;
      for (size_t j = 0; j < nvars_; ++j)
        if (j != var) acc -= r.coef[j] * x[j];
      return acc / r.coef[var];
    };
    std::optional<Rat> lo, hi;
    for (const auto& r : elim->lower[step]) {
      Rat b = eval(r);
      if (!lo || b > *lo) lo = b;
    }
    for (const auto& r : elim->upper[step]) {
      Rat b = eval(r);
      if (!hi || b < *hi) hi = b;
    }
    if (lo && hi && *lo > *hi) return std::nullopt;  // cannot happen after FM
    x[var] = lo ? *lo : (hi ? *hi : Rat(0));
  }
  // invert equality substitutions
  for (size_t i = elim->substs.size(); i-- > 0;) {
    const auto& s = elim->substs[i];
    Rat acc = s.rhs;
    for (size_t j = 0; j < nvars_; ++j) acc += s.coef[j] * x[j];
    x[s.var] = acc;
  }
  return x;
}

std::optional<Rat> RatLP::maximize(const std::vector<Rat>& objective) const {
  require(objective.size() == nvars_, "BadInput", "objective arity mismatch");
  // introduce t with t <= objective . x and eliminate all original variables
  RatLP ext(nvars_ + 1);
  for (const auto& r : rows_) {
    std::vector<Rat> c = r.coef;
    c.push_back(Rat(0));
    if (r.eq)
      ext.add_eq(c, r.rhs);
    else
      ext.add_ge(c, r.rhs);
  }
  {
    std::vector<Rat> c = objective;
    c.push_back(Rat(-1));
    ext.add_ge(c, Rat(0));  // objective . x - t >= 0
  }
  // eliminate x_0..x_{n-1}, keep t: run the elimination manually
  std::vector<Ineq> ineqs, eqs;
  for (const auto& r : ext.rows_)
    (r.eq ? eqs : ineqs).push_back(Ineq{r.coef, r.rhs});
  // equality substitution must not pick t; reorder so t is never chosen:
  // eliminate() picks the first free variable, and t is the last index, so
  // t is only chosen if an equality involves t alone, which cannot happen.
  auto elim = eliminate(nvars_ + 1, ineqs, eqs);
  require(elim.has_value(), "BadInput", "maximize on infeasible system");
  // after eliminating every variable except t, the upper bounds recorded at
  // t's FM step are constants; their minimum is the supremum
  for (size_t step = 0; step < elim->fm_order.size(); ++step) {
    if (elim->fm_order[step] != nvars_) continue;
    std::optional<Rat> best;
    for (const auto& r : elim->upper[step]) {
      // all other variables were eliminated before t only if t is last in
      // fm order; coefficient check keeps this honest
      Rat acc = r.rhs;
      bool constant = true;
      for (size_t j = 0; j < nvars_; ++j)
        if (r.coef[j] != 0) constant = false;
      require(constant, "Internal", "non-constant bound on objective variable");
      Rat b = acc / r.coef[nvars_];
      if (!best || b < *best) best = b;
    }
    if (!best) return std::nullopt;  // unbounded above
    return best;
  }
  // t never entered FM: it was substituted away by an equality, meaning the
  // objective is constant on the feasible set
  auto pt = find_point();
  require(pt.has_value(), "BadInput", "maximize on infeasible system");
  Rat val(0);
  for (size_t j = 0; j < nvars_; ++j) val += objective[j] * (*pt)[j];
  return val;
}

}  // namespace f1kgw
