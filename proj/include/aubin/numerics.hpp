#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace aubin {

/// Dense real vector with finite entries.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0);
  Vector(std::initializer_list<double> values);
  explicit Vector(std::vector<double> values);

  static Vector unit(std::size_t dim, std::size_t index);

  std::size_t dim() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<const double> values() const { return data_; }
  std::span<double> values() { return data_; }
  const std::vector<double>& std() const { return data_; }

  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s);

  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> data_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(double s, Vector a);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double norm_inf(const Vector& v);
double distance(const Vector& a, const Vector& b);

/// Concatenation (x, y).
Vector concat(const Vector& a, const Vector& b);
/// Entries [offset, offset + count).
Vector slice(const Vector& v, std::size_t offset, std::size_t count);

/// Dense row-major matrix with finite entries.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  /// Builds from a list of rows; all rows must have equal length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  Vector row_vector(std::size_t i) const;
  Vector col_vector(std::size_t j) const;

  std::span<const double> values() const { return data_; }

  double max_abs() const;
  double frobenius_norm() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator*=(double s);

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);

std::string shape_string(const Matrix& m);

Vector matvec(const Matrix& m, const Vector& v);
/// Computes Mᵀv without forming the transpose.
Vector matvec_transposed(const Matrix& m, const Vector& v);
Matrix transpose(const Matrix& m);

/// True iff M has full column rank, i.e. ker M = {0}. Pivots are counted by
/// Gaussian elimination with partial pivoting; a pivot counts when its
/// magnitude exceeds tol * max|M_ij|.
bool kernel_is_trivial(const Matrix& m, double tol);

/// Numerical rank with the same pivot rule as kernel_is_trivial.
std::size_t numerical_rank(const Matrix& m, double tol);

/// Spectral norm estimate from `iterations` steps of power iteration on MᵀM.
double operator_norm(const Matrix& m, int iterations = 50);

}  // namespace aubin
