#include "f1kgw/int_matrix.hpp"

#include <optional>
#include <sstream>

#include "f1kgw/errors.hpp"

namespace f1kgw {

using boost::multiprecision::abs;

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return IntMatrix(0, 0);
  IntMatrix m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == m.cols_, "BadInput", "ragged row list");
    for (size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_cols(const std::vector<Vec>& cols) {
  if (cols.empty()) return IntMatrix(0, 0);
  IntMatrix m(cols[0].size(), cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    require(cols[j].size() == m.rows_, "BadInput", "ragged column list");
    for (size_t i = 0; i < m.rows_; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const Vec& d) {
  IntMatrix m(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

Vec IntMatrix::row(size_t i) const {
  Vec r(cols_);
  for (size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

Vec IntMatrix::col(size_t j) const {
  Vec c(rows_);
  for (size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::mul(const IntMatrix& other) const {
  require(cols_ == other.rows_, "BadInput", "matrix dimension mismatch in mul");
  IntMatrix r(rows_, other.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (size_t j = 0; j < other.cols_; ++j) {
        const Int& b = other.at(k, j);
        if (b != 0) r.at(i, j) += a * b;
      }
    }
  return r;
}

Vec IntMatrix::apply(const Vec& v) const {
  require(v.size() == cols_, "BadInput", "vector dimension mismatch in apply");
  Vec r(rows_, Int(0));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * v[j];
  return r;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& right) const {
  if (rows_ == 0 && cols_ == 0) return right;
  if (right.rows_ == 0 && right.cols_ == 0) return *this;
  require(rows_ == right.rows_, "BadInput", "hconcat row mismatch");
  IntMatrix m(rows_, cols_ + right.cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (size_t j = 0; j < right.cols_; ++j) m.at(i, cols_ + j) = right.at(i, j);
  }
  return m;
}

IntMatrix IntMatrix::vconcat(const IntMatrix& below) const {
  if (rows_ == 0 && cols_ == 0) return below;
  if (below.rows_ == 0 && below.cols_ == 0) return *this;
  require(cols_ == below.cols_, "BadInput", "vconcat column mismatch");
  IntMatrix m(rows_ + below.rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
  for (size_t i = 0; i < below.rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m.at(rows_ + i, j) = below.at(i, j);
  return m;
}

IntMatrix IntMatrix::submatrix_cols(const std::vector<size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (size_t j = 0; j < idx.size(); ++j)
    for (size_t i = 0; i < rows_; ++i) m.at(i, j) = at(i, idx[j]);
  return m;
}

IntMatrix IntMatrix::submatrix_rows(const std::vector<size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < cols_; ++j) m.at(i, j) = at(idx[i], j);
  return m;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

void IntMatrix::swap_rows(size_t a, size_t b) {
  if (a == b) return;
  for (size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(size_t a, size_t b) {
  if (a == b) return;
  for (size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::add_row_multiple(size_t dst, size_t src, const Int& c) {
  if (c == 0) return;
  for (size_t j = 0; j < cols_; ++j) at(dst, j) += c * at(src, j);
}

void IntMatrix::add_col_multiple(size_t dst, size_t src, const Int& c) {
  if (c == 0) return;
  for (size_t i = 0; i < rows_; ++i) at(i, dst) += c * at(i, src);
}

void IntMatrix::negate_row(size_t i) {
  for (size_t j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
}

void IntMatrix::negate_col(size_t j) {
  for (size_t i = 0; i < rows_; ++i) at(i, j) = -at(i, j);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).str();
  }
  os << "]";
  return os.str();
}

namespace {

// assumes b != 0; returns g > 0 with x*a + y*b = g
void xgcd(const Int& a, const Int& b, Int& g, Int& x, Int& y) {
  Int old_r = a, r = b;
  Int old_x = 1, xx = 0;
  Int old_y = 0, yy = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_x - q * xx;
    old_x = xx;
    xx = tmp;
    tmp = old_y - q * yy;
    old_y = yy;
    yy = tmp;
  }
  g = old_r;
  x = old_x;
  y = old_y;
  if (g < 0) {
    g = -g;
    x = -x;
    y = -y;
  }
}

// Row/column operation tracker. Row ops on S are mirrored on U (and the
// inverse op on Uinv columns); column ops on S are mirrored on V columns
// (inverse on Vinv rows). Keeps U*m*V = S and U*Uinv = I exact at every step.
struct SnfWork {
  IntMatrix s, u, ui, v, vi;

  explicit SnfWork(const IntMatrix& m)
      : s(m),
        u(IntMatrix::identity(m.rows())),
        ui(IntMatrix::identity(m.rows())),
        v(IntMatrix::identity(m.cols())),
        vi(IntMatrix::identity(m.cols())) {}

  void row_swap(size_t a, size_t b) {
    s.swap_rows(a, b);
    u.swap_rows(a, b);
    ui.swap_cols(a, b);
  }
  void col_swap(size_t a, size_t b) {
    s.swap_cols(a, b);
    v.swap_cols(a, b);
    vi.swap_rows(a, b);
  }
  void row_add(size_t dst, size_t src, const Int& c) {
    s.add_row_multiple(dst, src, c);
    u.add_row_multiple(dst, src, c);
    ui.add_col_multiple(src, dst, -c);
  }
  void col_add(size_t dst, size_t src, const Int& c) {
    s.add_col_multiple(dst, src, c);
    v.add_col_multiple(dst, src, c);
    vi.add_row_multiple(src, dst, -c);
  }
  void row_negate(size_t i) {
    s.negate_row(i);
    u.negate_row(i);
    ui.negate_col(i);
  }
  void col_negate(size_t j) {
    s.negate_col(j);
    v.negate_col(j);
    vi.negate_row(j);
  }

  // [row a; row b] <- [[x, y], [z, w]] * [row a; row b], with xw - yz = 1
  void row_transform(size_t a, size_t b, const Int& x, const Int& y, const Int& z, const Int& w) {
    auto combine_rows = [&](IntMatrix& m) {
      for (size_t j = 0; j < m.cols(); ++j) {
        Int ra = m.at(a, j), rb = m.at(b, j);
        m.at(a, j) = x * ra + y * rb;
        m.at(b, j) = z * ra + w * rb;
      }
    };
    combine_rows(s);
    combine_rows(u);
    // inverse transform [[w, -y], [-z, x]] acts on columns of ui
    for (size_t i = 0; i < ui.rows(); ++i) {
      Int ca = ui.at(i, a), cb = ui.at(i, b);
      ui.at(i, a) = w * ca - z * cb;
      ui.at(i, b) = -y * ca + x * cb;
    }
  }

  // [col a, col b] <- [col a, col b] * [[x, z], [y, w]], with xw - yz = 1
  void col_transform(size_t a, size_t b, const Int& x, const Int& y, const Int& z, const Int& w) {
    auto combine_cols = [&](IntMatrix& m) {
      for (size_t i = 0; i < m.rows(); ++i) {
        Int ca = m.at(i, a), cb = m.at(i, b);
        m.at(i, a) = x * ca + y * cb;
        m.at(i, b) = z * ca + w * cb;
      }
    };
    combine_cols(s);
    combine_cols(v);
    for (size_t j = 0; j < vi.cols(); ++j) {
      Int ra = vi.at(a, j), rb = vi.at(b, j);
      vi.at(a, j) = w * ra - z * rb;
      vi.at(b, j) = -y * ra + x * rb;
    }
  }

  // sets s(t,t) = gcd, s(i,t) = 0 via a single unimodular row pair op
  void clear_row_entry(size_t t, size_t i) {
    const Int a = s.at(t, t), b = s.at(i, t);
    if (b == 0) return;
    if (a != 0 && b % a == 0) {
      row_add(i, t, -b / a);
      return;
    }
    Int g, x, y;
    xgcd(a, b, g, x, y);
    row_transform(t, i, x, y, -b / g, a / g);
  }

  void clear_col_entry(size_t t, size_t j) {
    const Int a = s.at(t, t), b = s.at(t, j);
    if (b == 0) return;
    if (a != 0 && b % a == 0) {
      col_add(j, t, -b / a);
      return;
    }
    Int g, x, y;
    xgcd(a, b, g, x, y);
    col_transform(t, j, x, y, -b / g, a / g);
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  SnfWork w(m);
  const size_t rows = m.rows(), cols = m.cols();
  const size_t bound = std::min(rows, cols);

  size_t t = 0;
  while (t < bound) {
    // pivot: minimal absolute value among nonzero entries of the tail block
    size_t pi = t, pj = t;
    bool found = false;
    Int best = 0;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        const Int& x = w.s.at(i, j);
        if (x == 0) continue;
        Int a = abs(x);
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    // alternate gcd-clearing of column t and row t; the pivot strictly
    // divides its predecessor whenever a pass disturbs anything, so this
    // terminates quickly and keeps entries Bezout-sized
    bool clean = false;
    while (!clean) {
      for (size_t i = t + 1; i < rows; ++i) w.clear_row_entry(t, i);
      clean = true;
      for (size_t j = t + 1; j < cols; ++j) {
        if (w.s.at(t, j) == 0) continue;
        if (w.s.at(t, j) % w.s.at(t, t) != 0) clean = false;  // gcd op will touch column t
        w.clear_col_entry(t, j);
      }
    }
    ++t;
  }

  // normalize signs
  for (size_t i = 0; i < t; ++i)
    if (w.s.at(i, i) < 0) w.row_negate(i);

  // enforce the divisibility chain: a pair (a, b) with a not dividing b is
  // replaced by (gcd, lcm) through one column add, one gcd row transform
  // and one exact column add
  bool chain_ok = false;
  while (!chain_ok) {
    chain_ok = true;
    for (size_t i = 0; i + 1 < t; ++i) {
      const Int a = w.s.at(i, i);
      const Int b = w.s.at(i + 1, i + 1);
      if (a == 0 || b % a == 0) continue;
      chain_ok = false;
      w.col_add(i, i + 1, 1);  // block [[a, 0], [b, b]]
      Int g, x, y;
      xgcd(a, b, g, x, y);
      w.row_transform(i, i + 1, x, y, -b / g, a / g);  // block [[g, y*b], [0, a*b/g]]
      w.col_add(i + 1, i, -(y * (b / g)));             // block [[g, 0], [0, lcm]]
      if (w.s.at(i, i) < 0) w.row_negate(i);
      if (w.s.at(i + 1, i + 1) < 0) w.row_negate(i + 1);
    }
  }

  SnfResult r;
  r.u = std::move(w.u);
  r.s = std::move(w.s);
  r.v = std::move(w.v);
  r.u_inv = std::move(w.ui);
  r.v_inv = std::move(w.vi);
  r.rank = 0;
  for (size_t i = 0; i < bound; ++i)
    if (r.s.at(i, i) != 0) ++r.rank;
  return r;
}

Int determinant(const IntMatrix& m) {
  require(m.rows() == m.cols(), "BadInput", "determinant of non-square matrix");
  const size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      size_t pivot = k;
      while (pivot < n && a.at(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      a.swap_rows(k, pivot);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

std::optional<Vec> solve_linear(const IntMatrix& a, const Vec& b) {
  require(b.size() == a.rows(), "BadInput", "solve_linear dimension mismatch");
  SnfResult snf = smith_normal_form(a);
  Vec c = snf.u.apply(b);
  Vec z(a.cols(), Int(0));
  const size_t bound = std::min(a.rows(), a.cols());
  for (size_t i = 0; i < c.size(); ++i) {
    const Int d = i < bound ? snf.s.at(i, i) : Int(0);
    if (d == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (c[i] % d != 0) return std::nullopt;
      if (i < z.size()) z[i] = c[i] / d;
    }
  }
  return snf.v.apply(z);
}

IntMatrix integer_kernel(const IntMatrix& a) {
  SnfResult snf = smith_normal_form(a);
  std::vector<size_t> free_idx;
  const size_t bound = std::min(a.rows(), a.cols());
  for (size_t j = 0; j < a.cols(); ++j)
    if (j >= bound || snf.s.at(j, j) == 0) free_idx.push_back(j);
  return snf.v.submatrix_cols(free_idx);
}

IntMatrix lattice_column_basis(const IntMatrix& b) {
  SnfResult snf = smith_normal_form(b);
  std::vector<Vec> basis;
  for (size_t i = 0; i < snf.rank; ++i) {
    Vec c = snf.u_inv.col(i);
    basis.push_back(vec_scale(snf.s.at(i, i), c));
  }
  if (basis.empty()) return IntMatrix(b.rows(), 0);
  return IntMatrix::from_cols(basis);
}

}  // namespace f1kgw
