#include "lca/gf.hpp"

#include <algorithm>
#include <string>

namespace lca {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("field modulus " + std::to_string(p) + " is not a prime below 2^31");
}

Scalar Field::inv(Scalar a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in GF(p)");
  // Fermat: a^(p-2).
  std::uint64_t result = 1, base = a % p_, e = p_ - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Scalar>(result);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("from_rows: row length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.row_ptr(r));
  }
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  const std::uint64_t p = f.modulus();
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint64_t s = a(i, k);
      if (s == 0) continue;
      const Scalar* brow = b.row_ptr(k);
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] = (acc[j] + s * brow[j]) % p;
    }
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = static_cast<Scalar>(acc[j]);
  }
  return out;
}

Vec multiply(const Field& f, const Matrix& a, const Vec& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector product: size mismatch");
  Vec out(a.rows(), 0);
  const std::uint64_t p = f.modulus();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::uint64_t acc = 0;
    const Scalar* row = a.row_ptr(i);
    for (std::size_t k = 0; k < a.cols(); ++k) acc = (acc + std::uint64_t{row[k]} * x[k]) % p;
    out[i] = static_cast<Scalar>(acc);
  }
  return out;
}

Matrix add(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum: shape mismatch");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.add(a(i, j), b(i, j));
  return out;
}

Matrix scale(const Field& f, Scalar s, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.mul(s, a(i, j));
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix reduce(const Field& f, Matrix a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) %= f.modulus();
  return a;
}

Vec add(const Field& f, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum: size mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}

Vec sub(const Field& f, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference: size mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
  return out;
}

Vec scale(const Field& f, Scalar s, const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(s, a[i]);
  return out;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

namespace {

// row_dst -= factor * row_src over columns [from, cols).
void eliminate(const Field& f, Scalar* dst, const Scalar* src, Scalar factor, std::size_t from,
               std::size_t cols) {
  const std::uint32_t p = f.modulus();
  if (p == 2) {
    for (std::size_t k = from; k < cols; ++k) dst[k] ^= src[k];
    return;
  }
  const std::uint64_t neg = p - factor;
  for (std::size_t k = from; k < cols; ++k)
    if (src[k] != 0) dst[k] = static_cast<Scalar>((dst[k] + neg * src[k]) % p);
}

}  // namespace

RrefResult rref(const Field& f, Matrix m) {
  RrefResult out;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) std::swap_ranges(m.row_ptr(piv), m.row_ptr(piv) + cols, m.row_ptr(r));
    if (m(r, c) != 1) {
      const Scalar inv = f.inv(m(r, c));
      Scalar* row = m.row_ptr(r);
      for (std::size_t k = c; k < cols; ++k) row[k] = f.mul(row[k], inv);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      eliminate(f, m.row_ptr(i), m.row_ptr(r), m(i, c), c, cols);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Field& f, const Matrix& m) { return rref(f, m).rank; }

Subspace Subspace::span(const Field& f, const Matrix& rows) {
  auto rr = rref(f, lca::reduce(f, rows));
  Subspace s(rows.cols());
  s.basis_ = Matrix(rr.rank, rows.cols());
  for (std::size_t i = 0; i < rr.rank; ++i)
    std::copy(rr.reduced.row_ptr(i), rr.reduced.row_ptr(i) + rows.cols(), s.basis_.row_ptr(i));
  s.pivots_ = std::move(rr.pivots);
  return s;
}

Subspace Subspace::span(const Field& f, const std::vector<Vec>& vectors, std::size_t ambient) {
  return span(f, Matrix::from_rows(vectors, ambient));
}

Subspace Subspace::full(std::size_t ambient) {
  Subspace s(ambient);
  s.basis_ = Matrix::identity(ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
  return s;
}

Vec Subspace::reduce(const Field& f, Vec v) const {
  if (v.size() != ambient()) throw DimensionMismatch("subspace reduce: size mismatch");
  for (std::size_t i = 0; i < dim(); ++i) {
    const Scalar c = v[pivots_[i]];
    if (c != 0) eliminate(f, v.data(), basis_.row_ptr(i), c, 0, ambient());
  }
  return v;
}

bool Subspace::contains(const Field& f, const Vec& v) const { return is_zero(reduce(f, v)); }

bool Subspace::contains(const Field& f, const Subspace& other) const {
  if (other.ambient() != ambient()) throw DimensionMismatch("subspace containment: ambient mismatch");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(f, other.basis_.row(i))) return false;
  return true;
}

AffineSubspace AffineSubspace::empty(std::size_t ambient) {
  AffineSubspace a;
  a.directions_ = Subspace(ambient);
  return a;
}

AffineSubspace AffineSubspace::make(const Field& f, Vec point, Subspace directions) {
  if (point.size() != directions.ambient()) throw DimensionMismatch("affine subspace: size mismatch");
  AffineSubspace a;
  a.empty_ = false;
  a.point_ = directions.reduce(f, std::move(point));
  a.directions_ = std::move(directions);
  return a;
}

AffineSubspace AffineSubspace::single(Vec point) {
  AffineSubspace a;
  a.empty_ = false;
  a.directions_ = Subspace(point.size());
  a.point_ = std::move(point);
  return a;
}

bool AffineSubspace::contains(const Field& f, const Vec& v) const {
  if (empty_) return false;
  return directions_.contains(f, sub(f, v, point_));
}

bool AffineSubspace::contains(const Field& f, const AffineSubspace& other) const {
  if (other.empty_) return true;
  if (empty_) return false;
  return contains(f, other.point_) && directions_.contains(f, other.directions_);
}

namespace {

// Null-space vectors read off a reduced matrix whose first `cols` columns are
// in reduced echelon form with the given pivots.
std::vector<Vec> null_vectors(const Field& f, const Matrix& r, const std::vector<std::size_t>& pivots,
                              std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots)
    if (c < cols) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    Vec v(cols, 0);
    v[fc] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (pivots[i] < cols) v[pivots[i]] = f.neg(r(i, fc));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Subspace kernel_basis(const Field& f, const Matrix& m) {
  auto rr = rref(f, reduce(f, m));
  return Subspace::span(f, null_vectors(f, rr.reduced, rr.pivots, m.cols()), m.cols());
}

Subspace image(const Field& f, const Matrix& m) { return Subspace::span(f, transpose(m)); }

Subspace image_of_subspace(const Field& f, const Matrix& m, const Subspace& s) {
  if (m.cols() != s.ambient()) throw DimensionMismatch("image_of_subspace: dimension mismatch");
  // Rows of (M * B^T)^T = B * M^T are the images of the basis vectors.
  return Subspace::span(f, multiply(f, s.basis(), transpose(m)));
}

AffineSubspace solve_affine(const Field& f, const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve_affine: right-hand side size mismatch");
  const std::size_t cols = m.cols();
  Matrix aug(m.rows(), cols + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = m(i, j) % f.modulus();
    aug(i, cols) = b[i] % f.modulus();
  }
  auto rr = rref(f, std::move(aug));
  if (!rr.pivots.empty() && rr.pivots.back() == cols) return AffineSubspace::empty(cols);
  Vec point(cols, 0);
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) point[rr.pivots[i]] = rr.reduced(i, cols);
  auto dirs = Subspace::span(f, null_vectors(f, rr.reduced, rr.pivots, cols), cols);
  return AffineSubspace::make(f, std::move(point), std::move(dirs));
}

AffineSubspace image_of_affine(const Field& f, const Matrix& m, const AffineSubspace& a) {
  if (m.cols() != a.ambient()) throw DimensionMismatch("image_of_affine: dimension mismatch");
  if (a.is_empty()) return AffineSubspace::empty(m.rows());
  return AffineSubspace::make(f, multiply(f, m, a.point()), image_of_subspace(f, m, a.directions()));
}

AffineSubspace restrict_affine(const Field& f, const AffineSubspace& a, const Matrix& m, const Vec& b) {
  if (m.cols() != a.ambient() || m.rows() != b.size())
    throw DimensionMismatch("restrict_affine: dimension mismatch");
  if (a.is_empty()) return a;
  // Parametrize x = point + D^T c and solve (M D^T) c = b - M point.
  const Matrix dt = transpose(a.directions().basis());
  const auto in_params = solve_affine(f, multiply(f, m, dt), sub(f, b, multiply(f, m, a.point())));
  if (in_params.is_empty()) return AffineSubspace::empty(a.ambient());
  const auto lifted = image_of_affine(f, dt, in_params);
  return AffineSubspace::make(f, add(f, lifted.point(), a.point()), lifted.directions());
}

}  // namespace lca
