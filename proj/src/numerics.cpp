#include "aubin/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aubin/errors.hpp"

namespace aubin {
namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(std::string(what) + " has a non-finite entry");
    }
  }
}

void require_same_dim(const Vector& a, const Vector& b, const char* op) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << op << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionError(os.str());
  }
}

}  // namespace

Vector::Vector(std::size_t dim, double fill) : data_(dim, fill) {
  require_finite(data_, "vector");
}

Vector::Vector(std::initializer_list<double> values) : data_(values) {
  require_finite(data_, "vector");
}

Vector::Vector(std::vector<double> values) : data_(std::move(values)) {
  require_finite(data_, "vector");
}

Vector Vector::unit(std::size_t dim, std::size_t index) {
  Vector e(dim);
  e[index] = 1.0;
  return e;
}

Vector& Vector::operator+=(const Vector& other) {
  require_same_dim(*this, other, "vector +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dim(*this, other, "vector -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= -1.0; }
Vector operator*(double s, Vector a) { return a *= s; }

double dot(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm_inf(const Vector& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double distance(const Vector& a, const Vector& b) { return norm2(a - b); }

Vector concat(const Vector& a, const Vector& b) {
  std::vector<double> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return Vector(std::move(out));
}

Vector slice(const Vector& v, std::size_t offset, std::size_t count) {
  if (offset + count > v.dim()) throw DimensionError("slice out of range");
  return Vector(std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(offset),
                                    v.begin() + static_cast<std::ptrdiff_t>(offset + count)));
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  require_finite(data_, "matrix");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) {
    std::ostringstream os;
    os << "matrix " << rows << "x" << cols << " given " << data_.size() << " entries";
    throw DimensionError(os.str());
  }
  require_finite(data_, "matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_, "matrix");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("ragged matrix rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Vector Matrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return Vector(std::vector<double>(r.begin(), r.end()));
}

Vector Matrix::col_vector(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

double Matrix::max_abs() const {
  double s = 0.0;
  for (double v : data_) s = std::max(s, std::abs(v));
  return s;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionError("matrix +: " + shape_string(*this) + " vs " + shape_string(other));
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a += (-1.0) * b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

std::string shape_string(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

Vector matvec(const Matrix& m, const Vector& v) {
  if (m.cols() != v.dim()) {
    std::ostringstream os;
    os << "matvec: matrix " << shape_string(m) << " times vector of dim " << v.dim();
    throw DimensionError(os.str());
  }
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Vector matvec_transposed(const Matrix& m, const Vector& v) {
  if (m.rows() != v.dim()) {
    std::ostringstream os;
    os << "matvec_transposed: matrix " << shape_string(m) << " (transposed) times vector of dim "
       << v.dim();
    throw DimensionError(os.str());
  }
  Vector out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j) * v[i];
    out[j] = s;
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

std::size_t numerical_rank(const Matrix& m, double tol) {
  if (!(tol > 0.0)) throw Error("numerical_rank: tol must be positive");
  const double scale = m.max_abs();
  if (scale == 0.0) return 0;
  const double threshold = tol * scale;

  Matrix work = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < work.cols() && rank < work.rows(); ++col) {
    std::size_t pivot = rank;
    for (std::size_t i = rank + 1; i < work.rows(); ++i) {
      if (std::abs(work(i, col)) > std::abs(work(pivot, col))) pivot = i;
    }
    if (std::abs(work(pivot, col)) <= threshold) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < work.cols(); ++j) std::swap(work(pivot, j), work(rank, j));
    }
    for (std::size_t i = rank + 1; i < work.rows(); ++i) {
      const double f = work(i, col) / work(rank, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < work.cols(); ++j) work(i, j) -= f * work(rank, j);
    }
    ++rank;
  }
  return rank;
}

bool kernel_is_trivial(const Matrix& m, double tol) {
  return numerical_rank(m, tol) == m.cols();
}

double operator_norm(const Matrix& m, int iterations) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  // Start from the heaviest row: M Mᵢᵀ has i-th entry ‖Mᵢ‖² > 0, so the
  // iteration cannot begin in ker M.
  std::size_t heaviest = 0;
  double heaviest_norm = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double n = norm2(m.row_vector(i));
    if (n > heaviest_norm) {
      heaviest_norm = n;
      heaviest = i;
    }
  }
  if (heaviest_norm == 0.0) return 0.0;

  Vector v = (1.0 / heaviest_norm) * m.row_vector(heaviest);
  double estimate = heaviest_norm;
  for (int k = 0; k < iterations; ++k) {
    Vector w = matvec_transposed(m, matvec(m, v));
    const double n = norm2(w);
    if (n == 0.0) break;
    estimate = std::max(estimate, std::sqrt(n));
    v = (1.0 / n) * w;
  }
  return estimate;
}

}  // namespace aubin
