#include <doctest.h>

#include "schemelab/parameters.hpp"

using namespace schemelab;

namespace {

// standard Johnson formulas, used as independent oracles
Rational johnson_valency(int v, int k, int i) {
  return Rational(binomial(k, i) * binomial(v - k, i));
}

Rational johnson_multiplicity(int v, int i) {
  return Rational(binomial(v, i) - binomial(v, i - 1));
}

}  // namespace

TEST_CASE("binomial agrees with Pascal's rule") {
  for (int n = 1; n <= 24; ++n)
    for (int k = 1; k < n; ++k)
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
  CHECK(binomial(16, 4) == 1820);
  CHECK(binomial(36, 6) == 1947792);
}

TEST_CASE("johnson_parameters(4,2) eigenmatrix") {
  SchemeParameters sp = johnson_parameters(4, 2);
  CHECK(sp.n == 6);
  CHECK(sp.D == 2);
  // row 0 = valencies
  CHECK(sp.P(0, 0) == 1);
  CHECK(sp.P(0, 1) == 4);
  CHECK(sp.P(0, 2) == 1);
  // octahedron spectrum on A_1: 4, 0, -2
  CHECK(sp.P(1, 1) == 0);
  CHECK(sp.P(2, 1) == -2);
  CHECK(sp.P(1, 2) == -1);
  CHECK(sp.P(2, 2) == 1);

  RationalMatrix q = second_eigenmatrix(sp);
  CHECK(q(0, 0) == 1);
  CHECK(q(0, 1) == 3);
  CHECK(q(0, 2) == 2);  // multiplicities 1, 3, 2

  // PQ = nI exactly
  RationalMatrix pq = sp.P * q;
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) CHECK(pq(i, j) == (i == j ? Rational(6) : Rational(0)));
}

TEST_CASE("johnson_parameters matches the closed-form valencies and multiplicities") {
  for (auto [v, k] : {std::pair{6, 2}, std::pair{7, 3}, std::pair{8, 4}, std::pair{16, 4}}) {
    SchemeParameters sp = johnson_parameters(v, k);
    CHECK(sp.n == binomial(v, k));
    RationalMatrix q = second_eigenmatrix(sp);
    for (int i = 0; i <= k; ++i) {
      CHECK(sp.P(0, i) == johnson_valency(v, k, i));
      CHECK(q(0, i) == johnson_multiplicity(v, i));
      // orthogonality: Q(l,i) = m_i P(i,l) / k_l
      for (int l = 0; l <= k; ++l)
        CHECK(q(l, i) == johnson_multiplicity(v, i) * sp.P(i, l) / johnson_valency(v, k, l));
    }
    // strictly decreasing eigenvalues of A_1 down the rows (natural ordering)
    for (int i = 1; i <= k; ++i) CHECK(sp.P(i, 1) < sp.P(i - 1, 1));
  }
  CHECK(johnson_parameters(16, 4).n == 1820);
  CHECK_THROWS_AS(johnson_parameters(4, 3), SchemeError);
}

TEST_CASE("exact Krein parameters against the orthogonality-relation oracle") {
  for (auto [v, k] : {std::pair{4, 2}, std::pair{6, 3}, std::pair{9, 3}}) {
    SchemeParameters sp = johnson_parameters(v, k);
    RationalKrein kr = krein_parameters_exact(sp);
    const Rational n(sp.n);

    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) {
        // q^0_ij = delta_ij m_i
        CHECK(kr.q(0, i, j) == (i == j ? johnson_multiplicity(v, i) : Rational(0)));
        for (int kk = 0; kk <= k; ++kk) {
          // independent route: q^k_ij = (m_i m_j / n) sum_l P_il P_jl P_kl / k_l^2
          Rational s = 0;
          for (int l = 0; l <= k; ++l) {
            const Rational kl = johnson_valency(v, k, l);
            s += sp.P(i, l) * sp.P(j, l) * sp.P(kk, l) / (kl * kl);
          }
          s *= johnson_multiplicity(v, i) * johnson_multiplicity(v, j) / n;
          CHECK(kr.q(kk, i, j) == s);
          // Krein condition (exact)
          CHECK(kr.q(kk, i, j) >= 0);
        }
      }

    // row sums: sum_j q^k_ij = m_i
    for (int kk = 0; kk <= k; ++kk)
      for (int i = 0; i <= k; ++i) {
        Rational row = 0;
        for (int j = 0; j <= k; ++j) row += kr.q(kk, i, j);
        CHECK(row == johnson_multiplicity(v, i));
      }
  }
}

TEST_CASE("natural ordering of Johnson schemes is Q-polynomial (exact)") {
  for (auto [v, k] : {std::pair{4, 2}, std::pair{8, 4}, std::pair{16, 4}}) {
    SchemeParameters sp = johnson_parameters(v, k);
    auto qs = natural_q_structure(sp);
    REQUIRE(qs.has_value());
    const Rational m1 = qs->multiplicities[1];
    for (int i = 0; i <= k; ++i) {
      CHECK(qs->dual_a[i] + qs->dual_b[i] + qs->dual_c[i] == m1);
      if (i < k) CHECK(qs->dual_b[i] > 0);
      if (i > 0) CHECK(qs->dual_c[i] > 0);
    }
    CHECK(qs->dual_b[0] == m1);  // b*_0 = q^0_{1,1} = m_1
  }
}

TEST_CASE("rational_string renders reduced p/q") {
  CHECK(rational_string(Rational(3, 6)) == "1/2");
  CHECK(rational_string(Rational(-8, 4)) == "-2/1");
  CHECK(rational_string(Rational(0)) == "0/1");
}
