#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace flasque {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Integer>& entries);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  const std::vector<Integer>& entries() const noexcept { return entries_; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  void set_column(std::size_t c, const IntVector& values);
  IntMatrix transpose() const;
  /// Columns [first, first + count).
  IntMatrix column_range(std::size_t first, std::size_t count) const;
  /// Rows [first, first + count).
  IntMatrix row_range(std::size_t first, std::size_t count) const;

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const noexcept { return rows_ == cols_; }

  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

IntMatrix hstack(const IntMatrix& left, const IntMatrix& right);
IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom);
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);
/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& m);

bool is_zero(const IntVector& v);
std::string to_string(const IntVector& v);

/// Isomorphism class of a finitely generated abelian group in invariant-factor form:
/// Z/d_1 + ... + Z/d_k + Z^r with 2 <= d_1 | d_2 | ... | d_k.
struct AbelianGroupStructure {
  std::vector<Integer> invariant_factors;
  std::size_t free_rank = 0;

  /// Normalizes any list of cyclic orders (0 meaning Z, 1 meaning trivial).
  static AbelianGroupStructure from_cyclic_orders(const std::vector<Integer>& orders);
  static AbelianGroupStructure trivial() { return {}; }

  bool is_trivial() const noexcept { return invariant_factors.empty() && free_rank == 0; }
  bool is_finite() const noexcept { return free_rank == 0; }
  /// Order of the torsion part.
  Integer torsion_order() const;
  std::string to_string() const;

  friend bool operator==(const AbelianGroupStructure&, const AbelianGroupStructure&) = default;
};

AbelianGroupStructure direct_sum(const AbelianGroupStructure& a, const AbelianGroupStructure& b);

/// Unimodular row transformation recorded as a replayable log of elementary
/// operations. Applying it to a vector costs one pass over the log, which is
/// far cheaper than materializing U for tall cochain matrices.
class RowOperationLog {
 public:
  explicit RowOperationLog(std::size_t dimension = 0) : dimension_(dimension) {}

  void swap(std::size_t i, std::size_t j);
  /// row_target += factor * row_source
  void add(std::size_t target, std::size_t source, const Integer& factor);
  void negate(std::size_t i);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return ops_.size(); }

  /// v <- U v
  void apply(IntVector& v) const;
  IntMatrix materialize() const;
  IntMatrix materialize_inverse() const;

 private:
  enum class Kind : unsigned char { Swap, Add, Negate };
  struct Op {
    Kind kind;
    std::size_t target;
    std::size_t source;
    Integer factor;
  };
  std::size_t dimension_;
  std::vector<Op> ops_;
};

/// Smith reduction U * M * V = S. U is kept as an operation log and V as a
/// dense matrix. Pivoting always picks the smallest-magnitude nonzero entry,
/// ties broken by lowest (row, column); the result is deterministic.
class SmithReduction {
 public:
  explicit SmithReduction(const IntMatrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return diagonal_.size(); }
  /// Nonzero diagonal entries, positive, each dividing the next.
  const std::vector<Integer>& diagonal() const noexcept { return diagonal_; }
  const IntMatrix& column_transform() const noexcept { return v_; }
  const RowOperationLog& row_transform() const noexcept { return u_; }

  IntVector apply_row_transform(IntVector v) const {
    u_.apply(v);
    return v;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> diagonal_;
  RowOperationLog u_;
  IntMatrix v_;
};

struct SmithDecomposition {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;
};

SmithDecomposition snf(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

/// Saturated basis (as columns) of the integer null space of m.
IntMatrix kernel_basis(const IntMatrix& m);
/// Basis (as columns) of the column span of m.
IntMatrix image_basis(const IntMatrix& m);
/// Z^rows / image(m).
AbelianGroupStructure cokernel_structure(const IntMatrix& m);

/// Some x with m x = b, or nothing when no integer solution exists.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b);
/// Column-by-column solve of m X = b.
std::optional<IntMatrix> solve_integer(const IntMatrix& m, const IntMatrix& b);

/// Basis of the smallest pure sublattice containing the span of the
/// (independent) columns of basis.
/// Returns the input unchanged when it is already saturated.
IntMatrix saturate(const IntMatrix& basis);
bool is_saturated(const IntMatrix& basis);
/// L with L * basis = I, for a saturated basis of full column rank.
IntMatrix left_inverse(const IntMatrix& basis);
/// R with m * R = I, for m with saturated rows (surjective onto Z^rows).
IntMatrix right_inverse(const IntMatrix& m);
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace flasque
