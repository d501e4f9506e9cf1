#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

#include "schemelab/errors.hpp"

namespace schemelab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(long long n, long long k);

// "p/q" with q > 0, reduced; integers render as "p/1".
std::string rational_string(const Rational& r);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}
  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  RationalMatrix inverse() const;  // Gauss-Jordan; throws InvalidParameters when singular

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

// Parameter-only description of a scheme: the first eigenmatrix P in exact
// rationals, with row 0 the valencies. No vertex-scale data is materialized.
struct SchemeParameters {
  int D = 0;
  BigInt n;
  RationalMatrix P;  // P(i,j) = eigenvalue of A_j on E_i
  std::string label;
};

// Q = n * P^{-1}; row 0 holds the multiplicities.
RationalMatrix second_eigenmatrix(const SchemeParameters& sp);

// Johnson scheme J(v,k) via Eberlein polynomial values; rows come out in the
// natural ordering (strictly decreasing eigenvalue of A_1).
SchemeParameters johnson_parameters(int v, int k);

struct RationalKrein {
  int classes = 0;
  std::vector<Rational> values;
  const Rational& q(int k, int i, int j) const {
    return values[(std::size_t(k) * classes + i) * classes + j];
  }
  Rational& q(int k, int i, int j) {
    return values[(std::size_t(k) * classes + i) * classes + j];
  }
};

// q^k_ij = (1/n) sum_l P(k,l) Q(l,i) Q(l,j), exact.
RationalKrein krein_parameters_exact(const SchemeParameters& sp);

struct RationalQStructure {
  std::vector<int> ordering;  // identity: the natural ordering
  std::vector<Rational> dual_a, dual_b, dual_c;
  std::vector<Rational> multiplicities;
};

// Exact tridiagonality test of the Krein tensor in the natural ordering;
// nullopt when the natural ordering is not Q-polynomial.
std::optional<RationalQStructure> natural_q_structure(const SchemeParameters& sp);

}  // namespace schemelab
