#include <doctest.h>

#include <cmath>

#include "schemelab/parameters.hpp"
#include "schemelab/spectra.hpp"

using namespace schemelab;

namespace {

void check_spectral_certificates(const Scheme& s, const EigenData& e) {
  const int C = e.D + 1;
  // E_i E_j = delta_ij E_i, sum E_i = I
  Matrix total(e.n, e.n);
  for (int i = 0; i < C; ++i) {
    total += e.idempotents[i];
    for (int j = 0; j < C; ++j) {
      Matrix prod = e.idempotents[i] * e.idempotents[j];
      if (i == j) prod -= e.idempotents[i];
      CHECK(prod.max_abs() < 1e-8);
    }
  }
  total -= Matrix::identity(e.n);
  CHECK(total.max_abs() < 1e-8);

  // E_0 = J/n
  for (double x : e.idempotents[0].data()) CHECK(std::abs(x - 1.0 / e.n) < 1e-8);

  // PQ = nI; row 0 of P = valencies; row 0 of Q = multiplicities
  Matrix pq = e.P * e.Q;
  for (int i = 0; i < C; ++i) pq(i, i) -= double(e.n);
  CHECK(pq.max_abs() < 1e-6 * e.n);
  for (int j = 0; j < C; ++j) {
    CHECK(e.P(0, j) == doctest::Approx(double(s.valencies()[j])).epsilon(1e-9));
    CHECK(e.Q(0, j) == doctest::Approx(double(e.multiplicities[j])).epsilon(1e-9));
  }

  long long total_mult = 0;
  for (long long m : e.multiplicities) total_mult += m;
  CHECK(total_mult == e.n);
  CHECK(e.multiplicities[0] == 1);
}

}  // namespace

TEST_CASE("eigensystem of K_4") {
  Scheme s = complete_graph(4);
  EigenData e = eigensystem(s);
  CHECK(e.multiplicities == std::vector<long long>{1, 3});
  CHECK(e.P(0, 1) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(e.P(1, 1) == doctest::Approx(-1.0).epsilon(1e-10));
  check_spectral_certificates(s, e);
}

TEST_CASE("eigensystem of the pentagon") {
  Scheme s = cycle(5);
  EigenData e = eigensystem(s);
  CHECK(e.multiplicities == std::vector<long long>{1, 2, 2});
  // natural order: eigenvalues of A_1 descending: 2, 2cos(2pi/5), 2cos(4pi/5)
  CHECK(e.P(1, 1) == doctest::Approx(2.0 * std::cos(2.0 * M_PI / 5.0)).epsilon(1e-9));
  CHECK(e.P(2, 1) == doctest::Approx(2.0 * std::cos(4.0 * M_PI / 5.0)).epsilon(1e-9));
  check_spectral_certificates(s, e);
}

TEST_CASE("eigensystem of the 3-cube") {
  Scheme s = hamming(3, 2);
  EigenData e = eigensystem(s);
  CHECK(e.multiplicities == std::vector<long long>{1, 3, 3, 1});
  for (int i = 0; i <= 3; ++i)
    CHECK(e.P(i, 1) == doctest::Approx(3.0 - 2.0 * i).epsilon(1e-9));
  check_spectral_certificates(s, e);
}

TEST_CASE("eigensystem certificates across small schemes") {
  for (const Scheme& s : {johnson(4, 2), johnson(5, 2), cycle(6), hamming(2, 3)}) {
    EigenData e = eigensystem(s);
    check_spectral_certificates(s, e);
    // trace(E_i) within 1e-6 of the integer multiplicity
    for (int i = 0; i <= e.D; ++i) {
      double tr = 0;
      for (int r = 0; r < e.n; ++r) tr += e.idempotents[i](r, r);
      CHECK(std::abs(tr - double(e.multiplicities[i])) < 1e-6);
    }
  }
}

TEST_CASE("eigenspace separation failure is reported") {
  Scheme s = hamming(3, 2);
  SpectralOptions opts;
  opts.combination = {1.0, 0.0, 0.0, 0.0};  // multiple of the identity separates nothing
  try {
    eigensystem(s, opts);
    FAIL("expected EigenspaceSeparationFailure");
  } catch (const SchemeError& err) {
    CHECK(err.code() == Err::EigenspaceSeparationFailure);
  }
  opts.combination = {1.0, 2.0};
  CHECK_THROWS_AS(eigensystem(s, opts), SchemeError);  // wrong coefficient count
}

TEST_CASE("Krein parameters: q^0_ij = delta_ij m_i and expansion residual") {
  for (const Scheme& s : {complete_graph(4), johnson(4, 2), hamming(3, 2)}) {
    EigenData e = eigensystem(s);
    KreinTensor kr = krein_parameters(e);
    for (int i = 0; i <= e.D; ++i)
      for (int j = 0; j <= e.D; ++j)
        CHECK(kr.q(0, i, j) ==
              doctest::Approx(i == j ? double(e.multiplicities[i]) : 0.0).epsilon(1e-8));

    // independent residual check of E_1 o E_1 = (1/n) sum_k q^k_11 E_k
    Matrix rec(e.n, e.n);
    for (int k = 0; k <= e.D; ++k) {
      Matrix term = e.idempotents[k];
      term *= kr.q(k, 1, 1) / double(e.n);
      rec += term;
    }
    for (std::size_t t = 0; t < rec.data().size(); ++t) {
      const double h = e.idempotents[1].data()[t] * e.idempotents[1].data()[t];
      CHECK(std::abs(h - rec.data()[t]) < 1e-8);
    }

    // Krein condition
    for (double v : kr.values) CHECK(v >= -1e-6);

    // row sums: sum_j q^k_ij = m_i
    for (int k = 0; k <= e.D; ++k)
      for (int i = 0; i <= e.D; ++i) {
        double row = 0;
        for (int j = 0; j <= e.D; ++j) row += kr.q(k, i, j);
        CHECK(row == doctest::Approx(double(e.multiplicities[i])).epsilon(1e-8));
      }
  }
}

TEST_CASE("a broken idempotent set raises NegativeKreinParameter") {
  Scheme s = hamming(3, 2);
  EigenData e = eigensystem(s);
  // flipping the sign of E_1 makes some q^k_ij land at -1
  e.idempotents[1] *= -1.0;
  try {
    krein_parameters(e);
    FAIL("expected NegativeKreinParameter");
  } catch (const SchemeError& err) {
    CHECK(err.code() == Err::NegativeKreinParameter);
  }
}

TEST_CASE("Q-polynomial orderings") {
  Scheme k5 = complete_graph(5);
  EigenData e5 = eigensystem(k5);
  auto q5 = q_polynomial_orderings(e5);
  REQUIRE(q5.size() == 1);  // D = 1: trivially Q-polynomial, single ordering
  CHECK(q5[0].ordering == std::vector<int>{0, 1});

  Scheme c5 = cycle(5);
  auto qc5 = q_polynomial_orderings(eigensystem(c5));
  CHECK(qc5.size() >= 1);

  Scheme cube = hamming(3, 2);
  EigenData ec = eigensystem(cube);
  auto qcube = q_polynomial_orderings(ec);
  REQUIRE(qcube.size() == 1);
  CHECK(qcube[0].ordering == std::vector<int>{0, 1, 2, 3});  // natural ordering

  // self-check: every returned structure passes the tridiagonal pattern test
  for (const auto& qs : qcube) {
    const int D = int(qs.ordering.size()) - 1;
    const double ztol = 1e-7 * std::max(1.0, double(qs.multiplicities[1]));
    for (int k = 0; k <= D; ++k)
      for (int j = 0; j <= D; ++j)
        if (std::abs(k - j) > 1) CHECK(std::abs(qs.krein.q(k, 1, j)) <= ztol);
    for (int i = 0; i < D; ++i) CHECK(qs.dual_b[i] > ztol);
    for (int i = 1; i <= D; ++i) CHECK(qs.dual_c[i] > ztol);
  }
}

TEST_CASE("P-polynomial orderings and intersection arrays") {
  Scheme c6 = cycle(6);
  auto p6 = p_polynomial_orderings(c6);
  REQUIRE(!p6.empty());
  const PStructure* natural = nullptr;
  for (const auto& p : p6)
    if (p.ordering == std::vector<int>{0, 1, 2, 3}) natural = &p;
  REQUIRE(natural);
  // hexagon intersection array {2,1,1;1,1,2}
  CHECK(natural->b[0] == 2);
  CHECK(natural->b[1] == 1);
  CHECK(natural->b[2] == 1);
  CHECK(natural->c[1] == 1);
  CHECK(natural->c[2] == 1);
  CHECK(natural->c[3] == 2);

  auto pk4 = p_polynomial_orderings(complete_graph(4));
  REQUIRE(pk4.size() == 1);
  CHECK(pk4[0].b[0] == 3);

  auto pj = p_polynomial_orderings(johnson(4, 2));
  bool found_natural = false;
  for (const auto& p : pj)
    if (p.ordering == std::vector<int>{0, 1, 2}) {
      found_natural = true;
      CHECK(p.b[0] == 4);
    }
  CHECK(found_natural);
}

TEST_CASE("dual intersection numbers of the 3-cube sum to m_1") {
  Scheme cube = hamming(3, 2);
  EigenData e = eigensystem(cube);
  auto qs = q_polynomial_orderings(e);
  REQUIRE(!qs.empty());
  auto d = dual_intersection_numbers(qs[0]);
  for (int i = 0; i <= 3; ++i)
    CHECK(d.a[i] + d.b[i] + d.c[i] == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(d.b[0] == doctest::Approx(3.0).epsilon(1e-8));  // b*_0 = m_1
}

TEST_CASE("parameter-only Johnson eigenmatrix matches the dense eigensystem") {
  for (auto [v, k] : {std::pair{4, 2}, std::pair{5, 2}, std::pair{6, 3}}) {
    SchemeParameters sp = johnson_parameters(v, k);
    EigenData e = eigensystem(johnson(v, k));
    RationalMatrix q = second_eigenmatrix(sp);
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) {
        CHECK(std::abs(double(Rational(sp.P(i, j))) - e.P(i, j)) < 1e-8);
        CHECK(std::abs(double(Rational(q(i, j))) - e.Q(i, j)) < 1e-7);
      }
  }
}
