#pragma once

// Exact linear algebra over prime fields F_p.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mpb {

/// Arithmetic context for F_p. The modulus is checked for primality on
/// construction and must be below 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = 2);

  std::uint32_t modulus() const { return p_; }

  std::uint32_t reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  /// Multiplicative inverse; throws ContractError on zero.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// A single residue carrying its modulus. Mixing moduli is a ContractError.
class FieldElement {
 public:
  FieldElement(PrimeField field, std::int64_t value) : field_(field), value_(field.reduce(value)) {}

  std::uint32_t value() const { return value_; }
  const PrimeField& field() const { return field_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return FieldElement(field_, field_.neg(value_), Raw{}); }
  FieldElement inverse() const { return FieldElement(field_, field_.inv(value_), Raw{}); }

  bool operator==(const FieldElement&) const = default;

 private:
  struct Raw {};
  FieldElement(PrimeField field, std::uint32_t value, Raw) : field_(field), value_(value) {}
  void check_same(const FieldElement& o) const;

  PrimeField field_;
  std::uint32_t value_;
};

using Vector = std::vector<std::uint32_t>;

/// Dense row-major matrix over F_p.
class Matrix {
 public:
  Matrix() = default;
  Matrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(PrimeField field, std::size_t n);
  /// Entries are reduced mod p, so negative literals are allowed.
  static Matrix from_rows(PrimeField field, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static Matrix from_columns(PrimeField field, std::size_t rows, const std::vector<Vector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = field_.reduce(v); }

  std::span<const std::uint32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;

  Matrix operator*(const Matrix& rhs) const;
  Vector apply(std::span<const std::uint32_t> x) const;
  Matrix scaled(std::int64_t factor) const;
  Matrix transposed() const;

  /// Copies `block` into this matrix with its top-left corner at (row, col).
  void place(std::size_t row, std::size_t col, const Matrix& block);

  bool is_zero() const;
  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  std::string to_string() const;

 private:
  PrimeField field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> data_;
};

Matrix hconcat(const Matrix& a, const Matrix& b);

/// Reduced row echelon form of A together with the invertible transform T
/// satisfying T * A = R, so that many right-hand sides can be solved against
/// one factorization. Pivots are the first nonzero entries scanning columns
/// left to right.
class RowEchelon {
 public:
  explicit RowEchelon(const Matrix& a);

  std::size_t rank() const { return pivots_.size(); }
  /// Pivot column of each nonzero row of R, increasing.
  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }
  const Matrix& reduced() const { return reduced_; }

  /// x with A x = b, or nullopt when b is outside the column space.
  std::optional<Vector> solve(std::span<const std::uint32_t> b) const;

 private:
  Matrix reduced_;
  Matrix transform_;
  std::vector<std::size_t> pivots_;
};

std::size_t rank(const Matrix& a);

struct SolveResult {
  enum class Status { Solved, Inconsistent, DimensionMismatch };
  Status status = Status::Inconsistent;
  Vector x;

  bool solved() const { return status == Status::Solved; }
};

SolveResult solve(const Matrix& a, std::span<const std::uint32_t> b);

/// Columns form a basis of ker A (one column per free variable of the RREF).
Matrix nullspace_basis(const Matrix& a);

}  // namespace mpb
