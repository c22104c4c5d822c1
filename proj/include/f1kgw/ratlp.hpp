#pragma once

#include <optional>
#include <vector>

#include "f1kgw/ints.hpp"

namespace f1kgw {

/// Exact rational linear feasibility via Fourier-Motzkin elimination.
/// Intended for the small systems arising from generator configurations
/// (faces of cones, unit detection, membership bounds); constraint counts
/// stay tiny so the quadratic blowup of elimination is irrelevant.
class RatLP {
 public:
  explicit RatLP(size_t num_vars) : nvars_(num_vars) {}

  void add_ge(const std::vector<Rat>& coef, const Rat& rhs);  // coef . x >= rhs
  void add_le(const std::vector<Rat>& coef, const Rat& rhs);
  void add_eq(const std::vector<Rat>& coef, const Rat& rhs);

  bool feasible() const;
  /// A feasible point, if any.
  std::optional<std::vector<Rat>> find_point() const;
  /// Supremum of coef . x over the feasible set; nullopt when unbounded.
  /// Requires a feasible system.
  std::optional<Rat> maximize(const std::vector<Rat>& objective) const;

  size_t num_vars() const { return nvars_; }

 private:
  struct Row {
    std::vector<Rat> coef;
    Rat rhs;
    bool eq;  // coef . x == rhs when true, otherwise >=
  };
  size_t nvars_;
  std::vector<Row> rows_;
};

}  // namespace f1kgw
