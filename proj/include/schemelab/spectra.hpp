#pragma once

#include <string>
#include <vector>

#include "schemelab/linalg.hpp"
#include "schemelab/scheme.hpp"

namespace schemelab {

struct SpectralOptions {
  double gap_tol = 1e-8;         // relative eigenvalue-grouping gap
  double residual_tol = 1e-8;    // certificate residuals (idempotency, scalar action)
  double krein_zero_tol = 1e-7;  // zero test, scaled by max(1, m_1)
  // Override for the generic-combination coefficients r_j (tests only);
  // empty picks the fixed deterministic defaults.
  std::vector<double> combination;
};

// Bose-Mesner eigenstructure. Idempotents come out in the natural order:
// E_0 is the all-ones projection, the rest sorted by decreasing eigenvalue
// of A_1 (ties broken on the remaining eigenvalue row).
struct EigenData {
  int n = 0, D = 0;
  std::vector<Matrix> idempotents;           // E_0..E_D
  Matrix P, Q;                               // A_j E_i = P(i,j) E_i;  Q = n P^{-1}
  std::vector<long long> valencies;          // k_j, exact
  std::vector<long long> multiplicities;     // m_i = rank E_i, exact
};

EigenData eigensystem(const Scheme& s, const SpectralOptions& opts = {});

struct KreinTensor {
  int classes = 0;
  std::vector<double> values;
  double q(int k, int i, int j) const {
    return values[(std::size_t(k) * classes + i) * classes + j];
  }
  double& q(int k, int i, int j) {
    return values[(std::size_t(k) * classes + i) * classes + j];
  }
};

// Structure constants of the entrywise product: E_i o E_j = (1/n) sum_k q^k_ij E_k.
KreinTensor krein_parameters(const EigenData& e, const SpectralOptions& opts = {});

// A Q-polynomial ordering sigma (sigma[0] = 0) with its reindexed Krein tensor
// and dual intersection numbers b*_i = q^i_{1,i+1}, c*_i = q^i_{1,i-1}, a*_i = q^i_{1,i}.
struct QStructure {
  std::vector<int> ordering;
  KreinTensor krein;
  std::vector<double> dual_a, dual_b, dual_c;  // dual_b[D] = dual_c[0] = 0
  std::vector<long long> multiplicities;       // m_{sigma(i)}
};

std::vector<QStructure> q_polynomial_orderings(const EigenData& e, const KreinTensor& kr,
                                               const SpectralOptions& opts = {});
std::vector<QStructure> q_polynomial_orderings(const EigenData& e, const SpectralOptions& opts = {});

// A P-polynomial ordering pi of the relations (pi[0] = 0) with intersection
// numbers b_i = p^i_{1,i+1}, c_i = p^i_{1,i-1}, a_i = p^i_{1,i}, all exact.
struct PStructure {
  std::vector<int> ordering;
  std::vector<long long> a, b, c;     // b[D] = c[0] = 0
  std::vector<long long> valencies;   // k_{pi(i)}
};

std::vector<PStructure> p_polynomial_orderings(const Scheme& s);

struct DualIntersectionNumbers {
  std::vector<double> a, b, c;
};

// Extracts (a*, b*, c*) and validates a*_i + b*_i + c*_i = m_1 to tolerance.
DualIntersectionNumbers dual_intersection_numbers(const QStructure& q,
                                                  const SpectralOptions& opts = {});

}  // namespace schemelab
