#include "flasque/integer_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "flasque/errors.hpp"

namespace flasque {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw InputError("IntMatrix: entry count " + std::to_string(entries_.size()) +
                     " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("IntMatrix: ragged initializer");
    for (long x : r) entries_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InputError("IntMatrix::from_columns: length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void IntMatrix::set_column(std::size_t c, const IntVector& values) {
  if (values.size() != rows_) throw InputError("IntMatrix::set_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::column_range(std::size_t first, std::size_t count) const {
  IntMatrix m(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) m(r, c) = (*this)(r, first + c);
  return m;
}

IntMatrix IntMatrix::row_range(std::size_t first, std::size_t count) const {
  IntMatrix m(count, cols_);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(first + r, c);
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) out << ',';
    out << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out << ',';
      out << (*this)(r, c).get_str();
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("IntMatrix product: dimension mismatch");
  IntMatrix p(a.rows_, b.cols_);
  Integer t;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (sgn(b(k, j)) == 0) continue;
        mpz_addmul(p(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
      }
    }
  }
  return p;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != v.size()) throw InputError("IntMatrix-vector product: dimension mismatch");
  IntVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (sgn(v[k]) != 0 && sgn(a(i, k)) != 0)
        mpz_addmul(out[i].get_mpz_t(), a(i, k).get_mpz_t(), v[k].get_mpz_t());
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("IntMatrix sum: dimension mismatch");
  IntMatrix s = a;
  for (std::size_t i = 0; i < s.entries_.size(); ++i) s.entries_[i] += b.entries_[i];
  return s;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("IntMatrix difference: dimension mismatch");
  IntMatrix s = a;
  for (std::size_t i = 0; i < s.entries_.size(); ++i) s.entries_[i] -= b.entries_[i];
  return s;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

IntMatrix hstack(const IntMatrix& left, const IntMatrix& right) {
  if (left.rows() != right.rows()) throw InputError("hstack: row count mismatch");
  IntMatrix m(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < left.cols(); ++c) m(r, c) = left(r, c);
    for (std::size_t c = 0; c < right.cols(); ++c) m(r, left.cols() + c) = right(r, c);
  }
  return m;
}

IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw InputError("vstack: column count mismatch");
  IntMatrix m(top.rows() + bottom.rows(), top.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < top.rows(); ++r) m(r, c) = top(r, c);
    for (std::size_t r = 0; r < bottom.rows(); ++r) m(top.rows() + r, c) = bottom(r, c);
  }
  return m;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
  return m;
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw InputError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && sgn(a(swap_row, k)) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), previous.get_mpz_t());
      }
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].get_str();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// AbelianGroupStructure

AbelianGroupStructure AbelianGroupStructure::from_cyclic_orders(const std::vector<Integer>& orders) {
  std::vector<Integer> diag;
  for (const Integer& d : orders) diag.push_back(abs(d));
  SmithReduction reduction(IntMatrix::diagonal(diag));
  AbelianGroupStructure g;
  for (const Integer& d : reduction.diagonal())
    if (d > 1) g.invariant_factors.push_back(d);
  g.free_rank = diag.size() - reduction.rank();
  return g;
}

Integer AbelianGroupStructure::torsion_order() const {
  Integer n = 1;
  for (const Integer& d : invariant_factors) n *= d;
  return n;
}

std::string AbelianGroupStructure::to_string() const {
  if (is_trivial()) return "0";
  std::string s;
  for (const Integer& d : invariant_factors) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.get_str();
  }
  if (free_rank > 0) {
    if (!s.empty()) s += " + ";
    s += free_rank == 1 ? std::string("Z") : "Z^" + std::to_string(free_rank);
  }
  return s;
}

AbelianGroupStructure direct_sum(const AbelianGroupStructure& a, const AbelianGroupStructure& b) {
  std::vector<Integer> orders = a.invariant_factors;
  orders.insert(orders.end(), b.invariant_factors.begin(), b.invariant_factors.end());
  orders.resize(orders.size() + a.free_rank + b.free_rank, Integer(0));
  return AbelianGroupStructure::from_cyclic_orders(orders);
}

// ---------------------------------------------------------------------------
// RowOperationLog

void RowOperationLog::swap(std::size_t i, std::size_t j) {
  if (i != j) ops_.push_back({Kind::Swap, i, j, Integer()});
}

void RowOperationLog::add(std::size_t target, std::size_t source, const Integer& factor) {
  if (sgn(factor) != 0) ops_.push_back({Kind::Add, target, source, factor});
}

void RowOperationLog::negate(std::size_t i) { ops_.push_back({Kind::Negate, i, i, Integer()}); }

void RowOperationLog::apply(IntVector& v) const {
  if (v.size() != dimension_) throw InputError("RowOperationLog::apply: dimension mismatch");
  for (const Op& op : ops_) {
    switch (op.kind) {
      case Kind::Swap:
        std::swap(v[op.target], v[op.source]);
        break;
      case Kind::Add:
        if (sgn(v[op.source]) != 0)
          mpz_addmul(v[op.target].get_mpz_t(), op.factor.get_mpz_t(), v[op.source].get_mpz_t());
        break;
      case Kind::Negate:
        v[op.target] = -v[op.target];
        break;
    }
  }
}

IntMatrix RowOperationLog::materialize() const {
  IntMatrix u = IntMatrix::identity(dimension_);
  const std::size_t n = dimension_;
  for (const Op& op : ops_) {
    switch (op.kind) {
      case Kind::Swap:
        for (std::size_t c = 0; c < n; ++c) std::swap(u(op.target, c), u(op.source, c));
        break;
      case Kind::Add:
        for (std::size_t c = 0; c < n; ++c)
          if (sgn(u(op.source, c)) != 0)
            mpz_addmul(u(op.target, c).get_mpz_t(), op.factor.get_mpz_t(), u(op.source, c).get_mpz_t());
        break;
      case Kind::Negate:
        for (std::size_t c = 0; c < n; ++c) u(op.target, c) = -u(op.target, c);
        break;
    }
  }
  return u;
}

IntMatrix RowOperationLog::materialize_inverse() const {
  // U = E_k ... E_1, so U^-1 = E_1^-1 ... E_k^-1: right-multiply as column ops.
  IntMatrix x = IntMatrix::identity(dimension_);
  const std::size_t n = dimension_;
  for (const Op& op : ops_) {
    switch (op.kind) {
      case Kind::Swap:
        for (std::size_t r = 0; r < n; ++r) std::swap(x(r, op.target), x(r, op.source));
        break;
      case Kind::Add:
        for (std::size_t r = 0; r < n; ++r)
          if (sgn(x(r, op.target)) != 0)
            mpz_submul(x(r, op.source).get_mpz_t(), op.factor.get_mpz_t(), x(r, op.target).get_mpz_t());
        break;
      case Kind::Negate:
        for (std::size_t r = 0; r < n; ++r) x(r, op.target) = -x(r, op.target);
        break;
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Smith reduction

namespace {

class SmithWorkspace {
 public:
  SmithWorkspace(const IntMatrix& m, RowOperationLog& log, IntMatrix& v)
      : rows_(m.rows()), cols_(m.cols()), a_(m), log_(log), v_(v) {}

  std::vector<Integer> run() {
    std::vector<Integer> diagonal;
    const std::size_t limit = std::min(rows_, cols_);
    for (std::size_t t = 0; t < limit; ++t) {
      auto pivot = smallest_in_block(t);
      if (!pivot) break;
      move_to_pivot(t, pivot->first, pivot->second);
      reduce_pivot(t);
      if (sgn(a_(t, t)) < 0) negate_row(t);
      diagonal.push_back(a_(t, t));
    }
    return diagonal;
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> smallest_in_block(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows_; ++i) {
      for (std::size_t j = t; j < cols_; ++j) {
        const Integer& x = a_(i, j);
        if (sgn(x) == 0) continue;
        if (!best || mpz_cmpabs(x.get_mpz_t(), a_(best->first, best->second).get_mpz_t()) < 0) {
          best = {i, j};
          if (mpz_cmpabs_ui(x.get_mpz_t(), 1) == 0) return best;
        }
      }
    }
    return best;
  }

  void move_to_pivot(std::size_t t, std::size_t i, std::size_t j) {
    if (i != t) swap_rows(t, i);
    if (j != t) swap_cols(t, j);
  }

  void reduce_pivot(std::size_t t) {
    Integer q;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows_; ++i) {
        if (sgn(a_(i, t)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (sgn(a_(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (sgn(a_(t, j)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (sgn(a_(t, j)) != 0) clean = false;
      }
      if (!clean) {
        // Remainders are strictly smaller than the pivot; bring the smallest in.
        std::size_t best_i = t, best_j = t;
        for (std::size_t i = t + 1; i < rows_; ++i)
          if (sgn(a_(i, t)) != 0 && mpz_cmpabs(a_(i, t).get_mpz_t(), a_(best_i, best_j).get_mpz_t()) < 0) {
            best_i = i;
            best_j = t;
          }
        for (std::size_t j = t + 1; j < cols_; ++j)
          if (sgn(a_(t, j)) != 0 && mpz_cmpabs(a_(t, j).get_mpz_t(), a_(best_i, best_j).get_mpz_t()) < 0) {
            best_i = t;
            best_j = j;
          }
        move_to_pivot(t, best_i, best_j);
        continue;
      }
      if (mpz_cmpabs_ui(a_(t, t).get_mpz_t(), 1) == 0) return;
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows_ && divisible; ++i) {
        for (std::size_t j = t + 1; j < cols_; ++j) {
          if (sgn(a_(i, j)) != 0 && !mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
            add_row(t, i, Integer(1));
            divisible = false;
            break;
          }
        }
      }
      if (divisible) return;
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap(a_(i, c), a_(j, c));
    log_.swap(i, j);
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap(a_(r, i), a_(r, j));
    for (std::size_t r = 0; r < cols_; ++r) std::swap(v_(r, i), v_(r, j));
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) a_(i, c) = -a_(i, c);
    log_.negate(i);
  }

  void add_row(std::size_t target, std::size_t source, const Integer& factor) {
    if (sgn(factor) == 0) return;
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn(a_(source, c)) != 0)
        mpz_addmul(a_(target, c).get_mpz_t(), factor.get_mpz_t(), a_(source, c).get_mpz_t());
    log_.add(target, source, factor);
  }

  void add_col(std::size_t target, std::size_t source, const Integer& factor) {
    if (sgn(factor) == 0) return;
    for (std::size_t r = 0; r < rows_; ++r)
      if (sgn(a_(r, source)) != 0)
        mpz_addmul(a_(r, target).get_mpz_t(), factor.get_mpz_t(), a_(r, source).get_mpz_t());
    for (std::size_t r = 0; r < cols_; ++r)
      if (sgn(v_(r, source)) != 0)
        mpz_addmul(v_(r, target).get_mpz_t(), factor.get_mpz_t(), v_(r, source).get_mpz_t());
  }

  std::size_t rows_;
  std::size_t cols_;
  IntMatrix a_;
  RowOperationLog& log_;
  IntMatrix& v_;
};

}  // namespace

SmithReduction::SmithReduction(const IntMatrix& m)
    : rows_(m.rows()), cols_(m.cols()), u_(m.rows()), v_(IntMatrix::identity(m.cols())) {
  SmithWorkspace workspace(m, u_, v_);
  diagonal_ = workspace.run();
}

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

SmithDecomposition snf(const IntMatrix& m) {
  SmithReduction reduction(m);
  SmithDecomposition result;
  result.S = IntMatrix(m.rows(), m.cols());
  for (std::size_t i = 0; i < reduction.rank(); ++i) result.S(i, i) = reduction.diagonal()[i];
  result.U = reduction.row_transform().materialize();
  result.V = reduction.column_transform();
  result.rank = reduction.rank();
  return result;
}

std::size_t rank(const IntMatrix& m) { return SmithReduction(m).rank(); }

IntMatrix kernel_basis(const IntMatrix& m) {
  SmithReduction reduction(m);
  return reduction.column_transform().column_range(reduction.rank(), m.cols() - reduction.rank());
}

IntMatrix image_basis(const IntMatrix& m) {
  SmithReduction reduction(m);
  // M V = U^-1 S, so the first rank columns of M V are a basis of the image.
  return m * reduction.column_transform().column_range(0, reduction.rank());
}

AbelianGroupStructure cokernel_structure(const IntMatrix& m) {
  SmithReduction reduction(m);
  AbelianGroupStructure g;
  for (const Integer& d : reduction.diagonal())
    if (d > 1) g.invariant_factors.push_back(d);
  g.free_rank = m.rows() - reduction.rank();
  return g;
}

namespace {

std::optional<IntVector> solve_with(const SmithReduction& reduction, const IntVector& b) {
  if (b.size() != reduction.rows()) throw InputError("solve_integer: right-hand side has wrong length");
  IntVector y = reduction.apply_row_transform(b);
  const std::size_t r = reduction.rank();
  for (std::size_t i = r; i < y.size(); ++i)
    if (sgn(y[i]) != 0) return std::nullopt;
  IntVector z(reduction.cols());
  for (std::size_t i = 0; i < r; ++i) {
    const Integer& d = reduction.diagonal()[i];
    if (!mpz_divisible_p(y[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    mpz_divexact(z[i].get_mpz_t(), y[i].get_mpz_t(), d.get_mpz_t());
  }
  return reduction.column_transform() * z;
}

}  // namespace

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw InputError("solve_integer: dimension mismatch");
  SmithReduction reduction(m);
  return solve_with(reduction, b);
}

std::optional<IntMatrix> solve_integer(const IntMatrix& m, const IntMatrix& b) {
  if (b.rows() != m.rows()) throw InputError("solve_integer: dimension mismatch");
  SmithReduction reduction(m);
  IntMatrix x(m.cols(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    auto col = solve_with(reduction, b.column(c));
    if (!col) return std::nullopt;
    x.set_column(c, *col);
  }
  return x;
}

IntMatrix saturate(const IntMatrix& basis) {
  SmithReduction reduction(basis);
  if (reduction.rank() != basis.cols()) throw InputError("saturate: columns are linearly dependent");
  const auto& diag = reduction.diagonal();
  if (std::all_of(diag.begin(), diag.end(), [](const Integer& d) { return d == 1; })) return basis;
  // B V = U^-1 S; dividing column i by d_i gives the first columns of U^-1,
  // which span the saturation.
  IntMatrix bv = basis * reduction.column_transform();
  for (std::size_t c = 0; c < bv.cols(); ++c) {
    const Integer& d = reduction.diagonal()[c];
    for (std::size_t r = 0; r < bv.rows(); ++r) mpz_divexact(bv(r, c).get_mpz_t(), bv(r, c).get_mpz_t(), d.get_mpz_t());
  }
  return bv;
}

bool is_saturated(const IntMatrix& basis) {
  SmithReduction reduction(basis);
  if (reduction.rank() != basis.cols()) return false;
  return std::all_of(reduction.diagonal().begin(), reduction.diagonal().end(),
                     [](const Integer& d) { return d == 1; });
}

IntMatrix left_inverse(const IntMatrix& basis) {
  SmithReduction reduction(basis);
  const std::size_t k = basis.cols();
  if (reduction.rank() != k ||
      !std::all_of(reduction.diagonal().begin(), reduction.diagonal().end(), [](const Integer& d) { return d == 1; }))
    throw PreconditionError("left_inverse: basis is not saturated of full column rank");
  // U B V = [I; 0]  =>  (V U_top) B = I.
  IntMatrix u = reduction.row_transform().materialize();
  return reduction.column_transform() * u.row_range(0, k);
}

IntMatrix right_inverse(const IntMatrix& m) { return left_inverse(m.transpose()).transpose(); }

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (!m.is_square()) throw InputError("unimodular_inverse: matrix is not square");
  return left_inverse(m);
}

}  // namespace flasque
