#include "mpbetti/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "mpbetti/errors.hpp"

namespace mpb {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw ContractError("field modulus " + std::to_string(p) + " is not a prime below 2^31");
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw ContractError("inverse of zero in F_" + std::to_string(p_));
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a % p_, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!(field_ == o.field_)) throw ContractError("field elements with different moduli");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_.add(value_, o.value_), Raw{}};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_.sub(value_, o.value_), Raw{}};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_.mul(value_, o.value_), Raw{}};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {field_, field_.div(value_, o.value_), Raw{}};
}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(PrimeField field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  Matrix m(field, rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw ContractError("ragged matrix literal");
    std::size_t c = 0;
    for (std::int64_t v : row) m.set(r, c++, v);
    ++r;
  }
  return m;
}

Matrix Matrix::from_columns(PrimeField field, std::size_t rows, const std::vector<Vector>& columns) {
  Matrix m(field, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw ContractError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = columns[c][r] % field.modulus();
  }
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (!(field_ == rhs.field_)) throw ContractError("matrix product across fields");
  if (cols_ != rhs.rows_) throw ContractError("matrix product dimension mismatch");
  Matrix out(field_, rows_, rhs.cols_);
  const std::uint64_t p = field_.modulus();
  std::vector<std::uint64_t> acc(rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t a = (*this)(i, k);
      if (!a) continue;
      const std::uint32_t* b = rhs.data_.data() + k * rhs.cols_;
      for (std::size_t j = 0; j < rhs.cols_; ++j) acc[j] = (acc[j] + a * b[j]) % p;
    }
    for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) = static_cast<std::uint32_t>(acc[j]);
  }
  return out;
}

Vector Matrix::apply(std::span<const std::uint32_t> x) const {
  if (x.size() != cols_) throw ContractError("matrix-vector dimension mismatch");
  Vector y(rows_, 0);
  const std::uint64_t p = field_.modulus();
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < cols_; ++k) acc = (acc + static_cast<std::uint64_t>((*this)(i, k)) * x[k]) % p;
    y[i] = static_cast<std::uint32_t>(acc);
  }
  return y;
}

Matrix Matrix::scaled(std::int64_t factor) const {
  Matrix out = *this;
  std::uint32_t f = field_.reduce(factor);
  for (auto& v : out.data_) v = field_.mul(v, f);
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = (*this)(r, c);
  return out;
}

void Matrix::place(std::size_t row, std::size_t col, const Matrix& block) {
  if (row + block.rows_ > rows_ || col + block.cols_ > cols_) throw ContractError("block placement out of range");
  for (std::size_t r = 0; r < block.rows_; ++r)
    for (std::size_t c = 0; c < block.cols_; ++c) at(row + r, col + c) = block(r, c);
}

bool Matrix::is_zero() const {
  for (auto v : data_)
    if (v) return false;
  return true;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
  }
  os << "] (" << rows_ << "x" << cols_ << " over F_" << field_.modulus() << ")";
  return os.str();
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ContractError("hconcat row mismatch");
  Matrix out(a.field(), a.rows(), a.cols() + b.cols());
  out.place(0, 0, a);
  out.place(0, a.cols(), b);
  return out;
}

namespace {

// In-place RREF of `m`; the same row operations are mirrored onto `mirror`
// when it is non-null. Returns the pivot columns.
std::vector<std::size_t> reduce_rows(Matrix& m, Matrix* mirror) {
  const PrimeField& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < m.rows(); ++c) {
    std::size_t piv = next;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != next) {
      std::swap_ranges(m.row(piv).begin(), m.row(piv).end(), m.row(next).begin());
      if (mirror) std::swap_ranges(mirror->row(piv).begin(), mirror->row(piv).end(), mirror->row(next).begin());
    }
    std::uint32_t scale = f.inv(m(next, c));
    if (scale != 1) {
      for (auto& v : m.row(next)) v = f.mul(v, scale);
      if (mirror)
        for (auto& v : mirror->row(next)) v = f.mul(v, scale);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == next || m(r, c) == 0) continue;
      std::uint32_t factor = f.neg(m(r, c));
      auto src = m.row(next);
      auto dst = m.row(r);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (src[k]) dst[k] = f.add(dst[k], f.mul(factor, src[k]));
      if (mirror) {
        auto msrc = mirror->row(next);
        auto mdst = mirror->row(r);
        for (std::size_t k = 0; k < mirror->cols(); ++k)
          if (msrc[k]) mdst[k] = f.add(mdst[k], f.mul(factor, msrc[k]));
      }
    }
    pivots.push_back(c);
    ++next;
  }
  return pivots;
}

}  // namespace

RowEchelon::RowEchelon(const Matrix& a)
    : reduced_(a), transform_(Matrix::identity(a.field(), a.rows())) {
  pivots_ = reduce_rows(reduced_, &transform_);
}

std::optional<Vector> RowEchelon::solve(std::span<const std::uint32_t> b) const {
  if (b.size() != reduced_.rows()) throw ContractError("right-hand side length mismatch");
  Vector y = transform_.apply(b);
  for (std::size_t r = rank(); r < y.size(); ++r)
    if (y[r] != 0) return std::nullopt;
  Vector x(reduced_.cols(), 0);
  for (std::size_t r = 0; r < rank(); ++r) x[pivots_[r]] = y[r];
  return x;
}

std::size_t rank(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Matrix work = a;
  return reduce_rows(work, nullptr).size();
}

SolveResult solve(const Matrix& a, std::span<const std::uint32_t> b) {
  SolveResult result;
  if (b.size() != a.rows()) {
    result.status = SolveResult::Status::DimensionMismatch;
    return result;
  }
  auto x = RowEchelon(a).solve(b);
  if (x) {
    result.status = SolveResult::Status::Solved;
    result.x = std::move(*x);
  }
  return result;
}

Matrix nullspace_basis(const Matrix& a) {
  Matrix r = a;
  auto pivots = reduce_rows(r, nullptr);
  const PrimeField& f = a.field();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t row = 0; row < pivots.size(); ++row) v[pivots[row]] = f.neg(r(row, free));
    basis.push_back(std::move(v));
  }
  return Matrix::from_columns(f, a.cols(), basis);
}

}  // namespace mpb
