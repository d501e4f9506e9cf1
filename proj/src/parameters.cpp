#include "schemelab/parameters.hpp"

namespace schemelab {

BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: product of i consecutive integers is divisible by i!
  }
  return r;
}

std::string rational_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int l = 0; l < a.cols(); ++l) {
      if (a(i, l) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, l) * b(l, j);
    }
  return c;
}

RationalMatrix RationalMatrix::inverse() const {
  const int n = rows_;
  RationalMatrix a = *this;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) fail(Err::InvalidParameters, "eigenmatrix is singular");
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a(col, c), a(piv, c));
        std::swap(inv(col, c), inv(piv, c));
      }
    const Rational p = a(col, col);
    for (int c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (int c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

RationalMatrix second_eigenmatrix(const SchemeParameters& sp) {
  RationalMatrix q = sp.P.inverse();
  const Rational n(sp.n);
  for (int i = 0; i <= sp.D; ++i)
    for (int j = 0; j <= sp.D; ++j) q(i, j) *= n;
  return q;
}

SchemeParameters johnson_parameters(int v, int k) {
  if (k < 1 || 2 * k > v) fail(Err::InvalidParameters, "johnson needs 1 <= k <= v/2");
  SchemeParameters sp;
  sp.D = k;
  sp.n = binomial(v, k);
  sp.label = "johnson_parameters(" + std::to_string(v) + "," + std::to_string(k) + ")";
  sp.P = RationalMatrix(k + 1, k + 1);
  // Eberlein value E_j(i) = sum_r (-1)^r C(i,r) C(k-i,j-r) C(v-k-i,j-r)
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j) {
      BigInt val = 0;
      for (int r = 0; r <= j; ++r) {
        const BigInt term = binomial(i, r) * binomial(k - i, j - r) * binomial(v - k - i, j - r);
        val += (r % 2 == 0) ? term : -term;
      }
      sp.P(i, j) = Rational(val);
    }
  return sp;
}

RationalKrein krein_parameters_exact(const SchemeParameters& sp) {
  const int C = sp.D + 1;
  const RationalMatrix Q = second_eigenmatrix(sp);
  RationalKrein kr;
  kr.classes = C;
  kr.values.assign(std::size_t(C) * C * C, Rational(0));
  const Rational n(sp.n);
  for (int i = 0; i < C; ++i)
    for (int j = i; j < C; ++j) {
      for (int k = 0; k < C; ++k) {
        Rational s = 0;
        for (int l = 0; l < C; ++l) s += sp.P(k, l) * Q(l, i) * Q(l, j);
        s /= n;
        kr.q(k, i, j) = s;
        kr.q(k, j, i) = s;
      }
    }
  return kr;
}

std::optional<RationalQStructure> natural_q_structure(const SchemeParameters& sp) {
  const int D = sp.D;
  const RationalKrein kr = krein_parameters_exact(sp);
  for (int k = 0; k <= D; ++k)
    for (int j = 0; j <= D; ++j)
      if (std::abs(k - j) > 1 && kr.q(k, 1, j) != 0) return std::nullopt;

  RationalQStructure qs;
  qs.ordering.resize(D + 1);
  for (int i = 0; i <= D; ++i) qs.ordering[i] = i;
  qs.dual_a.assign(D + 1, Rational(0));
  qs.dual_b.assign(D + 1, Rational(0));
  qs.dual_c.assign(D + 1, Rational(0));
  for (int i = 0; i <= D; ++i) {
    qs.dual_a[i] = kr.q(i, 1, i);
    if (i < D) qs.dual_b[i] = kr.q(i, 1, i + 1);
    if (i > 0) qs.dual_c[i] = kr.q(i, 1, i - 1);
  }
  for (int i = 0; i < D; ++i)
    if (qs.dual_b[i] <= 0) return std::nullopt;
  for (int i = 1; i <= D; ++i)
    if (qs.dual_c[i] <= 0) return std::nullopt;

  const RationalMatrix Q = second_eigenmatrix(sp);
  qs.multiplicities.resize(D + 1);
  for (int i = 0; i <= D; ++i) qs.multiplicities[i] = Q(0, i);
  return qs;
}

}  // namespace schemelab
