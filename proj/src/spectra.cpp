#include "schemelab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "schemelab/errors.hpp"

namespace schemelab {

namespace {

std::vector<double> default_combination(int D) {
  // fixed deterministic coefficients: frac((j+1) * pi^j)
  std::vector<double> r(D + 1);
  double pw = 1.0;
  for (int j = 0; j <= D; ++j) {
    const double v = (j + 1) * pw;
    r[j] = v - std::floor(v);
    pw *= std::numbers::pi;
  }
  return r;
}

// lexicographic compare of eigenvalue rows with a small tolerance per entry
bool row_less_desc(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (std::abs(a[j] - b[j]) <= tol) continue;
    return a[j] > b[j];
  }
  return false;
}

}  // namespace

EigenData eigensystem(const Scheme& s, const SpectralOptions& opts) {
  const int n = s.n(), D = s.D();
  std::vector<Matrix> adj(D + 1);
  for (int j = 0; j <= D; ++j) adj[j] = s.associate_matrix_dense(j);

  std::vector<double> r = opts.combination.empty() ? default_combination(D) : opts.combination;
  if (int(r.size()) != D + 1)
    fail(Err::InvalidParameters, "combination override needs D+1 coefficients");

  Matrix m(n, n);
  for (int j = 0; j <= D; ++j) {
    if (r[j] == 0.0) continue;
    for (std::size_t i = 0; i < m.data().size(); ++i) m.data()[i] += r[j] * adj[j].data()[i];
  }

  SymmetricEigen eig = jacobi_eigensystem(std::move(m));
  const auto groups = group_eigenvalues(eig.values, opts.gap_tol);
  if (int(groups.size()) != D + 1) {
    double min_gap = 0.0;
    for (std::size_t i = 1; i < eig.values.size(); ++i) {
      const double g = eig.values[i] - eig.values[i - 1];
      if (g > 0 && (min_gap == 0.0 || g < min_gap)) min_gap = g;
    }
    fail(Err::EigenspaceSeparationFailure,
         "expected " + std::to_string(D + 1) + " common eigenspaces, found " +
             std::to_string(groups.size()) + " (smallest nonzero eigenvalue gap " +
             std::to_string(min_gap) + ")");
  }

  const int C = D + 1;
  std::vector<Matrix> proj(C);
  std::vector<long long> mult(C);
  std::vector<std::vector<double>> prow(C, std::vector<double>(C));
  for (int g = 0; g < C; ++g) {
    const auto [b, e] = groups[g];
    mult[g] = e - b;
    Matrix cols(n, e - b);
    for (int c = b; c < e; ++c)
      for (int row = 0; row < n; ++row) cols(row, c - b) = eig.vectors(row, c);
    Matrix p = cols * cols.transposed();
    // eigenvalue of each A_j on this eigenspace, then the scalar-action certificate
    for (int j = 0; j <= D; ++j) {
      const double theta = dot(adj[j], p) / double(mult[g]);
      prow[g][j] = theta;
      Matrix res = adj[j] * p;
      Matrix scaled = p;
      scaled *= theta;
      res -= scaled;
      const double tol = opts.residual_tol * std::max(1.0, double(s.valencies()[j]));
      if (res.max_abs() > tol)
        fail(Err::EigenspaceSeparationFailure,
             "A_" + std::to_string(j) + " is not scalar on a grouped eigenspace (defect " +
                 std::to_string(res.max_abs()) + "); two common eigenspaces are merged at gap tolerance");
    }
    proj[g] = std::move(p);
  }

  // locate E_0 = all-ones/n
  int g0 = -1;
  double best = -1.0;
  for (int g = 0; g < C; ++g) {
    double total = 0.0;
    for (double x : proj[g].data()) total += x;
    if (total > best) {
      best = total;
      g0 = g;
    }
  }
  if (mult[g0] != 1)
    fail(Err::EigenspaceSeparationFailure, "all-ones eigenspace has multiplicity > 1");
  for (double x : proj[g0].data())
    if (std::abs(x - 1.0 / n) > opts.residual_tol)
      fail(Err::EigenspaceSeparationFailure, "principal idempotent is not J/n");

  std::vector<int> order;
  for (int g = 0; g < C; ++g)
    if (g != g0) order.push_back(g);
  const double tie_tol = 1e-9 * std::max(1.0, double(s.valencies().size() ? s.valencies()[1] : 1));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(prow[a][1] - prow[b][1]) > tie_tol) return prow[a][1] > prow[b][1];
    return row_less_desc(prow[a], prow[b], tie_tol);
  });
  order.insert(order.begin(), g0);

  EigenData out;
  out.n = n;
  out.D = D;
  out.valencies = s.valencies();
  out.P = Matrix(C, C);
  out.idempotents.resize(C);
  out.multiplicities.resize(C);
  for (int i = 0; i < C; ++i) {
    const int g = order[i];
    out.idempotents[i] = std::move(proj[g]);
    out.multiplicities[i] = mult[g];
    for (int j = 0; j < C; ++j) out.P(i, j) = prow[g][j];
    // trace(E_i) must sit on the integer m_i
    double tr = 0.0;
    for (int row = 0; row < n; ++row) tr += out.idempotents[i](row, row);
    if (std::abs(tr - double(mult[g])) > 1e-6)
      fail(Err::EigenspaceSeparationFailure,
           "trace of E_" + std::to_string(i) + " is " + std::to_string(tr) +
               ", not within 1e-6 of an integer multiplicity");
  }

  out.Q = invert(out.P);
  out.Q *= double(n);
  Matrix pq = out.P * out.Q;
  for (int i = 0; i < C; ++i) pq(i, i) -= double(n);
  if (pq.max_abs() > 1e-6 * n)
    fail(Err::EigenspaceSeparationFailure, "PQ deviates from nI beyond tolerance");

  return out;
}

KreinTensor krein_parameters(const EigenData& e, const SpectralOptions& opts) {
  const int C = e.D + 1;
  const double n = double(e.n);
  KreinTensor kr;
  kr.classes = C;
  kr.values.assign(std::size_t(C) * C * C, 0.0);

  std::vector<double> had(std::size_t(e.n) * e.n);
  for (int i = 0; i < C; ++i) {
    for (int j = i; j < C; ++j) {
      const auto& ei = e.idempotents[i].data();
      const auto& ej = e.idempotents[j].data();
      for (std::size_t t = 0; t < had.size(); ++t) had[t] = ei[t] * ej[t];
      for (int k = 0; k < C; ++k) {
        const auto& ek = e.idempotents[k].data();
        double s = 0.0;
        for (std::size_t t = 0; t < had.size(); ++t) s += had[t] * ek[t];
        const double q = s * n / double(e.multiplicities[k]);
        if (q < -100.0 * opts.residual_tol)
          fail(Err::NegativeKreinParameter,
               "q^" + std::to_string(k) + "_{" + std::to_string(i) + "," + std::to_string(j) +
                   "} = " + std::to_string(q));
        kr.q(k, i, j) = q;
        kr.q(k, j, i) = q;
      }
      // entrywise-product expansion residual
      double resid = 0.0;
      for (std::size_t t = 0; t < had.size(); ++t) {
        double rec = 0.0;
        for (int k = 0; k < C; ++k) rec += kr.q(k, i, j) * e.idempotents[k].data()[t];
        resid = std::max(resid, std::abs(had[t] - rec / n));
      }
      if (resid > opts.residual_tol)
        fail(Err::ResidualTooLarge, "entrywise-product expansion residual " + std::to_string(resid));
    }
  }
  return kr;
}

namespace {

// shared permutation search: ordering[0] = 0, test callback decides acceptance
template <typename Accept>
void for_each_ordering(int D, const Accept& accept) {
  std::vector<int> tail(D);
  for (int i = 0; i < D; ++i) tail[i] = i + 1;
  do {
    std::vector<int> sigma(D + 1);
    sigma[0] = 0;
    for (int i = 0; i < D; ++i) sigma[i + 1] = tail[i];
    accept(sigma);
  } while (std::next_permutation(tail.begin(), tail.end()));
}

}  // namespace

std::vector<QStructure> q_polynomial_orderings(const EigenData& e, const KreinTensor& kr,
                                               const SpectralOptions& opts) {
  const int D = e.D;
  std::vector<QStructure> found;
  for_each_ordering(D, [&](const std::vector<int>& sigma) {
    const double ztol = opts.krein_zero_tol * std::max(1.0, double(e.multiplicities[sigma[1]]));
    for (int k = 0; k <= D; ++k)
      for (int j = 0; j <= D; ++j)
        if (std::abs(k - j) > 1 && std::abs(kr.q(sigma[k], sigma[1], sigma[j])) > ztol) return;
    for (int i = 0; i < D; ++i)
      if (kr.q(sigma[i], sigma[1], sigma[i + 1]) <= ztol) return;
    for (int i = 1; i <= D; ++i)
      if (kr.q(sigma[i], sigma[1], sigma[i - 1]) <= ztol) return;

    QStructure qs;
    qs.ordering = sigma;
    qs.krein.classes = D + 1;
    qs.krein.values.assign(std::size_t(D + 1) * (D + 1) * (D + 1), 0.0);
    for (int k = 0; k <= D; ++k)
      for (int i = 0; i <= D; ++i)
        for (int j = 0; j <= D; ++j) qs.krein.q(k, i, j) = kr.q(sigma[k], sigma[i], sigma[j]);
    qs.dual_a.assign(D + 1, 0.0);
    qs.dual_b.assign(D + 1, 0.0);
    qs.dual_c.assign(D + 1, 0.0);
    for (int i = 0; i <= D; ++i) {
      qs.dual_a[i] = qs.krein.q(i, 1, i);
      if (i < D) qs.dual_b[i] = qs.krein.q(i, 1, i + 1);
      if (i > 0) qs.dual_c[i] = qs.krein.q(i, 1, i - 1);
    }
    qs.multiplicities.resize(D + 1);
    for (int i = 0; i <= D; ++i) qs.multiplicities[i] = e.multiplicities[sigma[i]];
    found.push_back(std::move(qs));
  });
  return found;
}

std::vector<QStructure> q_polynomial_orderings(const EigenData& e, const SpectralOptions& opts) {
  return q_polynomial_orderings(e, krein_parameters(e, opts), opts);
}

std::vector<PStructure> p_polynomial_orderings(const Scheme& s) {
  const int D = s.D();
  const auto& p = s.intersection_numbers();
  std::vector<PStructure> found;
  for_each_ordering(D, [&](const std::vector<int>& pi) {
    for (int k = 0; k <= D; ++k)
      for (int j = 0; j <= D; ++j)
        if (std::abs(k - j) > 1 && p.p(pi[k], pi[1], pi[j]) != 0) return;
    for (int i = 0; i < D; ++i)
      if (p.p(pi[i], pi[1], pi[i + 1]) <= 0) return;
    for (int i = 1; i <= D; ++i)
      if (p.p(pi[i], pi[1], pi[i - 1]) <= 0) return;

    PStructure ps;
    ps.ordering = pi;
    ps.a.assign(D + 1, 0);
    ps.b.assign(D + 1, 0);
    ps.c.assign(D + 1, 0);
    ps.valencies.resize(D + 1);
    for (int i = 0; i <= D; ++i) {
      ps.a[i] = p.p(pi[i], pi[1], pi[i]);
      if (i < D) ps.b[i] = p.p(pi[i], pi[1], pi[i + 1]);
      if (i > 0) ps.c[i] = p.p(pi[i], pi[1], pi[i - 1]);
      ps.valencies[i] = s.valencies()[pi[i]];
    }
    found.push_back(std::move(ps));
  });
  return found;
}

DualIntersectionNumbers dual_intersection_numbers(const QStructure& q, const SpectralOptions& opts) {
  DualIntersectionNumbers d;
  d.a = q.dual_a;
  d.b = q.dual_b;
  d.c = q.dual_c;
  const double m1 = double(q.multiplicities[1]);
  const double tol = 10.0 * opts.krein_zero_tol * std::max(1.0, m1);
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    const double sum = d.a[i] + d.b[i] + d.c[i];
    if (std::abs(sum - m1) > tol)
      fail(Err::ResidualTooLarge,
           "a*_i + b*_i + c*_i = " + std::to_string(sum) + " deviates from m_1 = " + std::to_string(m1));
  }
  return d;
}

}  // namespace schemelab
