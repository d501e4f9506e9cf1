#include "schemelab/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace schemelab {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

Matrix& Matrix::operator+=(const Matrix& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int i = 0; i < n; ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (int l = 0; l < k; ++l) {
      const double ail = ai[l];
      if (ail == 0.0) continue;
      const double* bl = b.row(l);
      for (int j = 0; j < m; ++j) ci[j] += ail * bl[j];
    }
  }
  return c;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

Matrix transpose_times(const Matrix& a, const Matrix& b) {
  Matrix c(a.cols(), b.cols());
  const int n = a.rows(), p = a.cols(), m = b.cols();
  for (int l = 0; l < n; ++l) {
    const double* al = a.row(l);
    const double* bl = b.row(l);
    for (int i = 0; i < p; ++i) {
      const double ali = al[i];
      if (ali == 0.0) continue;
      double* ci = c.row(i);
      for (int j = 0; j < m; ++j) ci[j] += ali * bl[j];
    }
  }
  return c;
}

double dot(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  const auto& x = a.data();
  const auto& y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix IntMatrix::to_double() const {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data()[i] = double(data_[i]);
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), b.cols());
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) {
      const long long ail = a(i, l);
      if (ail == 0) continue;
      for (int j = 0; j < m; ++j) c(i, j) += ail * b(l, j);
    }
  return c;
}

namespace {

double offdiag_norm(const Matrix& a) {
  double s = 0.0;
  for (int p = 0; p < a.rows(); ++p)
    for (int q = p + 1; q < a.cols(); ++q) s += 2.0 * a(p, q) * a(p, q);
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigensystem(Matrix a) {
  const int n = a.rows();
  Matrix v = Matrix::identity(n);
  const double threshold = 1e-12 * std::max(a.frobenius(), 1e-300);

  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm(a) < threshold) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p), arq = a(r, q);
            a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
            a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
          }
          const double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (int r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<std::pair<int, int>> group_eigenvalues(const std::vector<double>& values, double rel_gap) {
  std::vector<std::pair<int, int>> groups;
  if (values.empty()) return groups;
  double scale = 1.0;
  for (double x : values) scale = std::max(scale, std::abs(x));
  const double gap = rel_gap * scale;
  int begin = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] - values[i - 1] > gap) {
      groups.emplace_back(begin, int(i));
      begin = int(i);
    }
  }
  groups.emplace_back(begin, int(values.size()));
  return groups;
}

Matrix kernel_basis(Matrix a, double rel_tol) {
  const int m = a.rows(), n = a.cols();
  // scale floor 1: callers pass Gram/commutation matrices of O(1)-normalized
  // structures, so an all-roundoff matrix must read as zero, not as signal
  const double tol = rel_tol * std::max(a.max_abs(), 1.0);

  std::vector<int> pivot_row_of_col(n, -1);
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int best = rank;
    for (int r = rank + 1; r < m; ++r)
      if (std::abs(a(r, col)) > std::abs(a(best, col))) best = r;
    if (std::abs(a(best, col)) <= tol) continue;
    if (best != rank)
      for (int c = 0; c < n; ++c) std::swap(a(rank, c), a(best, c));
    const double inv = 1.0 / a(rank, col);
    for (int c = col; c < n; ++c) a(rank, c) *= inv;
    for (int r = 0; r < m; ++r) {
      if (r == rank) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a(r, c) -= f * a(rank, c);
    }
    pivot_row_of_col[col] = rank;
    ++rank;
  }

  std::vector<std::vector<double>> basis;
  for (int f = 0; f < n; ++f) {
    if (pivot_row_of_col[f] >= 0) continue;
    std::vector<double> x(n, 0.0);
    x[f] = 1.0;
    for (int c = 0; c < n; ++c)
      if (pivot_row_of_col[c] >= 0) x[c] = -a(pivot_row_of_col[c], f);
    gram_schmidt_append(basis, std::move(x), 1e-12);
  }

  Matrix out(n, int(basis.size()));
  for (int c = 0; c < out.cols(); ++c)
    for (int r = 0; r < n; ++r) out(r, c) = basis[c][r];
  return out;
}

Matrix invert(Matrix a) {
  const int n = a.rows();
  Matrix inv = Matrix::identity(n);
  const double tol = 1e-12 * std::max(a.max_abs(), 1e-300);
  for (int col = 0; col < n; ++col) {
    int best = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(best, col))) best = r;
    if (std::abs(a(best, col)) <= tol) throw std::runtime_error("invert: singular matrix");
    if (best != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a(col, c), a(best, c));
        std::swap(inv(col, c), inv(best, c));
      }
    const double p = 1.0 / a(col, col);
    for (int c = 0; c < n; ++c) {
      a(col, c) *= p;
      inv(col, c) *= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

std::vector<double> singular_values(const Matrix& a) {
  const bool tall = a.rows() >= a.cols();
  Matrix gram = tall ? transpose_times(a, a) : [&] {
    Matrix at = a.transposed();
    return transpose_times(at, at);
  }();
  SymmetricEigen eig = jacobi_eigensystem(std::move(gram));
  std::vector<double> sv;
  sv.reserve(eig.values.size());
  for (auto it = eig.values.rbegin(); it != eig.values.rend(); ++it)
    sv.push_back(std::sqrt(std::max(*it, 0.0)));
  return sv;
}

int numeric_rank(const Matrix& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  std::vector<double> sv = singular_values(a);
  const double cutoff = rel_tol * std::max(sv.empty() ? 0.0 : sv[0], 1.0);
  int rank = 0;
  for (double s : sv)
    if (s > cutoff) ++rank;
  return rank;
}

bool gram_schmidt_append(std::vector<std::vector<double>>& basis, std::vector<double> v, double tol) {
  double norm0 = 0.0;
  for (double x : v) norm0 += x * x;
  norm0 = std::sqrt(norm0);

  // two projection passes for numerical hygiene
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      double proj = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) proj += b[i] * v[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * b[i];
    }
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm <= tol * std::max(1.0, norm0)) return false;
  for (double& x : v) x /= norm;
  basis.push_back(std::move(v));
  return true;
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
  return (double(next() >> 11) + 0.5) * 0x1.0p-53;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  int workers = int(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SCHEME_LAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) workers = std::min(workers, cap);
  }
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace schemelab
