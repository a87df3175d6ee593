#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lca {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Arithmetic in the prime field GF(p).
class Field {
 public:
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  explicit Field(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  Scalar reduce(std::int64_t v) const {
    const auto m = static_cast<std::int64_t>(p_);
    auto r = v % m;
    return static_cast<Scalar>(r < 0 ? r + m : r);
  }
  Scalar add(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} + b) % p_); }
  Scalar sub(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} + p_ - b) % p_); }
  Scalar mul(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} * b) % p_); }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar inv(Scalar a) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// Dense row-major matrix over GF(p); the field is supplied by the caller.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const Scalar* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }
  Scalar* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
  Vec row(std::size_t r) const { return Vec(row_ptr(r), row_ptr(r) + cols_); }
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
Vec multiply(const Field& f, const Matrix& a, const Vec& x);
Matrix add(const Field& f, const Matrix& a, const Matrix& b);
Matrix scale(const Field& f, Scalar s, const Matrix& a);
Matrix transpose(const Matrix& a);
Matrix reduce(const Field& f, Matrix a);

Vec add(const Field& f, const Vec& a, const Vec& b);
Vec sub(const Field& f, const Vec& a, const Vec& b);
Vec scale(const Field& f, Scalar s, const Vec& a);
bool is_zero(const Vec& v);

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row-echelon form: pivots are 1 and their columns are otherwise 0.
RrefResult rref(const Field& f, Matrix m);
std::size_t rank(const Field& f, const Matrix& m);

/// A linear subspace of GF(p)^n stored by its reduced echelon basis, so equal
/// subspaces have identical representations.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : basis_(0, ambient) {}
  static Subspace span(const Field& f, const std::vector<Vec>& vectors, std::size_t ambient);
  static Subspace span(const Field& f, const Matrix& rows);
  static Subspace full(std::size_t ambient);

  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Field& f, const Vec& v) const;
  bool contains(const Field& f, const Subspace& other) const;
  /// Subtracts basis multiples so that v is zero at every pivot column.
  Vec reduce(const Field& f, Vec v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Either empty or point + directions, with the point reduced against the
/// direction basis (zero at every pivot column). This point is also the
/// lexicographically smallest member, reading 0 as the least scalar.
class AffineSubspace {
 public:
  static AffineSubspace empty(std::size_t ambient);
  static AffineSubspace make(const Field& f, Vec point, Subspace directions);
  static AffineSubspace single(Vec point);

  std::size_t ambient() const { return directions_.ambient(); }
  bool is_empty() const { return empty_; }
  /// Dimension, or -1 for the empty set.
  long dim() const { return empty_ ? -1 : static_cast<long>(directions_.dim()); }
  const Vec& point() const { return point_; }
  const Subspace& directions() const { return directions_; }

  bool contains(const Field& f, const Vec& v) const;
  bool contains(const Field& f, const AffineSubspace& other) const;

  friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) {
    return a.empty_ == b.empty_ && a.point_ == b.point_ && a.directions_ == b.directions_;
  }

 private:
  bool empty_ = true;
  Vec point_;
  Subspace directions_;
};

/// Right null space {x : Mx = 0}.
Subspace kernel_basis(const Field& f, const Matrix& m);
/// Column space of M.
Subspace image(const Field& f, const Matrix& m);
Subspace image_of_subspace(const Field& f, const Matrix& m, const Subspace& s);
/// {x : Mx = b}.
AffineSubspace solve_affine(const Field& f, const Matrix& m, const Vec& b);
AffineSubspace image_of_affine(const Field& f, const Matrix& m, const AffineSubspace& a);
/// {x in A : Mx = b}.
AffineSubspace restrict_affine(const Field& f, const AffineSubspace& a, const Matrix& m, const Vec& b);

}  // namespace lca
