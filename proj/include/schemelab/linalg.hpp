#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace schemelab {

// Dense row-major double matrix, sized for desk-scale schemes.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0.0) {}
  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }
  double* row(int r) { return data_.data() + std::size_t(r) * cols_; }
  const double* row(int r) const { return data_.data() + std::size_t(r) * cols_; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  Matrix transposed() const;
  double max_abs() const;
  double frobenius() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);

// a^T * b without forming the transpose.
Matrix transpose_times(const Matrix& a, const Matrix& b);

// Trace inner product <A,B> = sum of entrywise products.
double dot(const Matrix& a, const Matrix& b);

// Dense integer matrix for exact Bose-Mesner arithmetic.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {}
  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long long& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  long long operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }
  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  IntMatrix& operator+=(const IntMatrix& o);
  Matrix to_double() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<long long> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column i pairs with values[i]; orthonormal
};

// Cyclic Jacobi to machine precision: sweeps until the off-diagonal
// Frobenius norm drops below 1e-12 * ||A||_F.
SymmetricEigen jacobi_eigensystem(Matrix a);

// Partition ascending values into groups separated by gaps larger than
// rel_gap * max(1, |values|_max). Returns [begin, end) index pairs.
std::vector<std::pair<int, int>> group_eigenvalues(const std::vector<double>& values, double rel_gap);

// Orthonormal basis of the kernel of a (columns). Thresholded Gaussian
// elimination with partial pivoting; pivots below rel_tol * max(1, max|a|)
// count as zero (inputs are Gram/commutation matrices of O(1) structures).
Matrix kernel_basis(Matrix a, double rel_tol);

// Gauss-Jordan inverse for small well-conditioned matrices. Throws on singular.
Matrix invert(Matrix a);

// Singular values of a, descending, via the Gram matrix of the thinner side.
std::vector<double> singular_values(const Matrix& a);
int numeric_rank(const Matrix& a, double rel_tol);

// Projects v against the orthonormal columns already in basis and appends the
// normalized residual when its norm exceeds tol * max(1, ||v||). Returns
// whether a column was added.
bool gram_schmidt_append(std::vector<std::vector<double>>& basis, std::vector<double> v, double tol);

// SplitMix64: deterministic coefficient stream for generic elements.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // uniform on (0,1)
  double next_unit();

 private:
  std::uint64_t state_;
};

// Runs fn(i) for i in [0, count) on worker threads; SCHEME_LAB_THREADS caps
// the pool (default: hardware concurrency). Falls back to serial for small counts.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace schemelab
