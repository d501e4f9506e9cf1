#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "schemelab/linalg.hpp"
#include "schemelab/scheme.hpp"
#include "schemelab/spectra.hpp"

namespace schemelab {

// Dual idempotents E*_0(x)..E*_D(x): diagonal 0/1 selectors of the
// subconstituents of the base point.
struct DualIdempotents {
  int base_point = 0;
  int n = 0, D = 0;
  std::vector<std::vector<std::uint8_t>> member;  // member[i][y] = 1 iff cls(x,y) = i

  IntMatrix matrix(int i) const;
};

DualIdempotents dual_idempotents(const Scheme& s, int x);

struct TOptions {
  double closure_tol = 1e-8;   // new-direction acceptance in the algebra closure
  double residual_tol = 1e-8;  // invariance certificate
  double rank_tol = 1e-7;      // singular values above rank_tol * max(sigma_max, 1) count
  double profile_tol = 1e-7;   // zero test for E_i W / E*_i W hits
  double gap_tol = 1e-8;       // eigenvalue grouping in spectral splits
  double kernel_tol = 1e-9;    // pivot threshold for centralizer/center kernels
  std::uint64_t seed = 0;      // mixed into the fixed internal coefficient stream
  int max_split_retries = 4;
  int max_word_length = 0;     // 0 picks the default 2*(D+1)
};

// Trace-orthonormal basis of T(x) = <A_0..A_D, E*_0..E*_D>.
struct AlgebraClosure {
  std::vector<Matrix> basis;
  int max_word_length = 1;  // longest generator word that contributed a new direction
  int dim() const { return int(basis.size()); }
};

AlgebraClosure algebra_closure(const Scheme& s, const DualIdempotents& duals,
                               const TOptions& opts = {});

struct TModuleSummary {
  Matrix basis;  // n x dim, orthonormal columns
  int dim = 0;
  int endpoint = 0;       // r = min{i : E*_i W != 0}
  int diameter = 0;       // d = |{i : E*_i W != 0}| - 1
  int dual_endpoint = 0;  // t = min{i : E_i W != 0}, natural idempotent labels
  int dual_diameter = 0;  // d* = |{i : E_i W != 0}| - 1
  bool thin = false;
  bool dual_thin = false;
  std::vector<std::uint8_t> e_profile, e_star_profile;
  std::vector<int> e_ranks, e_star_ranks;  // dim(E_i W), dim(E*_i W)
};

struct Decomposition {
  int base_point = 0;
  std::vector<TModuleSummary> modules;
  double residual = 0.0;  // max invariance defect over modules and generators
};

// Splits the standard module into certified irreducible T(x)-modules:
// isotypic components from a generic self-adjoint central element, then
// eigenspaces of generic self-adjoint centralizer elements, with invariance
// and centralizer-dimension certificates on every module.
Decomposition decompose(const Scheme& s, const EigenData& e, int x, const TOptions& opts = {});

TModuleSummary module_profile(const Matrix& basis, const EigenData& e,
                              const DualIdempotents& duals, const TOptions& opts = {});

enum class BasePointPolicy {
  kAll,                    // quantify over every vertex
  kSampleRepresentative,   // single base point; caller asserts vertex transitivity
};

struct DualThinWitness {
  int base_point = 0;
  int module_index = 0;
  int eigen_index = 0;  // i with dim(E_i W) >= 2
  int rank = 0;
};

struct DualThinReport {
  bool dual_thin = false;
  std::optional<DualThinWitness> witness;
  std::vector<int> base_points;
  std::vector<Decomposition> decompositions;  // parallel to base_points
};

DualThinReport is_dual_thin(const Scheme& s, const EigenData& e,
                            BasePointPolicy policy = BasePointPolicy::kAll,
                            const TOptions& opts = {});

}  // namespace schemelab
