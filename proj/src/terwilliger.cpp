#include "schemelab/terwilliger.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "schemelab/errors.hpp"

namespace schemelab {

IntMatrix DualIdempotents::matrix(int i) const {
  IntMatrix m(n, n);
  for (int y = 0; y < n; ++y)
    if (member[i][y]) m(y, y) = 1;
  return m;
}

DualIdempotents dual_idempotents(const Scheme& s, int x) {
  if (x < 0 || x >= s.n())
    fail(Err::VertexOutOfRange, "base point " + std::to_string(x) + " outside 0.." +
                                    std::to_string(s.n() - 1));
  DualIdempotents d;
  d.base_point = x;
  d.n = s.n();
  d.D = s.D();
  d.member.assign(d.D + 1, std::vector<std::uint8_t>(d.n, 0));
  for (int y = 0; y < d.n; ++y) d.member[s.cls(x, y)][y] = 1;
  return d;
}

namespace {

struct TCtx {
  const Scheme& s;
  const EigenData* eigen;  // null when only the closure is needed
  TOptions opts;
  std::vector<Matrix> adj;  // A_0..A_D
};

TCtx make_ctx(const Scheme& s, const EigenData* eigen, const TOptions& opts) {
  TCtx ctx{s, eigen, opts, {}};
  ctx.adj.resize(s.D() + 1);
  for (int j = 0; j <= s.D(); ++j) ctx.adj[j] = s.associate_matrix_dense(j);
  return ctx;
}

// E*_i * B: rows outside the subconstituent vanish
Matrix estar_left(const std::vector<std::uint8_t>& mask, const Matrix& b) {
  Matrix out(b.rows(), b.cols());
  for (int r = 0; r < b.rows(); ++r) {
    if (!mask[r]) continue;
    const double* src = b.row(r);
    double* dst = out.row(r);
    for (int c = 0; c < b.cols(); ++c) dst[c] = src[c];
  }
  return out;
}

// [B, E*_i] without forming the diagonal matrix
Matrix estar_commutator(const Matrix& b, const std::vector<std::uint8_t>& mask) {
  Matrix out(b.rows(), b.cols());
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) {
      const int d = int(mask[c]) - int(mask[r]);
      if (d) out(r, c) = b(r, c) * d;
    }
  return out;
}

Matrix estar_dense(const std::vector<std::uint8_t>& mask) {
  const int n = int(mask.size());
  Matrix m(n, n);
  for (int y = 0; y < n; ++y)
    if (mask[y]) m(y, y) = 1.0;
  return m;
}

AlgebraClosure closure_impl(const TCtx& ctx, const DualIdempotents& duals) {
  const int n = ctx.s.n(), D = ctx.s.D();
  const int limit = ctx.opts.max_word_length > 0 ? ctx.opts.max_word_length : 2 * (D + 1);

  AlgebraClosure out;
  std::vector<std::vector<double>> flat;
  std::vector<int> wordlen;

  auto try_add = [&](const Matrix& cand, int wl) {
    if (!gram_schmidt_append(flat, cand.data(), ctx.opts.closure_tol)) return;
    if (wl > limit)
      fail(Err::ClosureNotReached, "algebra span still growing at word length " +
                                       std::to_string(wl) + " (limit " + std::to_string(limit) +
                                       ", dim " + std::to_string(flat.size()) + ")");
    Matrix m(n, n);
    m.data() = flat.back();
    out.basis.push_back(std::move(m));
    wordlen.push_back(wl);
    out.max_word_length = std::max(out.max_word_length, wl);
  };

  for (int j = 0; j <= D; ++j) try_add(ctx.adj[j], 1);
  for (int i = 0; i <= D; ++i) try_add(estar_dense(duals.member[i]), 1);

  // worklist: left-multiply every accepted element by each generator once
  for (std::size_t head = 0; head < out.basis.size(); ++head) {
    const Matrix b = out.basis[head];  // copy: the vector may reallocate
    const int wl = wordlen[head];
    for (int j = 1; j <= D; ++j) try_add(ctx.adj[j] * b, wl + 1);
    for (int i = 0; i <= D; ++i) try_add(estar_left(duals.member[i], b), wl + 1);
  }
  return out;
}

// Coordinates (in the closure basis) of the center of T: the kernel of the
// Gram matrix of commutators with the generators.
Matrix center_coordinates(const TCtx& ctx, const DualIdempotents& duals,
                          const AlgebraClosure& clo) {
  const int dim = clo.dim();
  const int D = ctx.s.D();
  Matrix gram(dim, dim);
  std::vector<Matrix> comm(dim);
  std::vector<double> norm(dim);

  auto accumulate = [&] {
    for (int a = 0; a < dim; ++a) {
      if (norm[a] < 1e-14) continue;
      for (int b = a; b < dim; ++b) {
        if (norm[b] < 1e-14) continue;
        const double v = dot(comm[a], comm[b]);
        gram(a, b) += v;
        if (a != b) gram(b, a) += v;
      }
    }
  };

  for (int j = 1; j <= D; ++j) {
    // per-generator scaling keeps the Gram entries O(1); the kernel is unchanged
    const double scale = 1.0 / std::max(1.0, double(ctx.s.valencies()[j]));
    for (int a = 0; a < dim; ++a) {
      comm[a] = clo.basis[a] * ctx.adj[j];
      comm[a] -= ctx.adj[j] * clo.basis[a];
      comm[a] *= scale;
      norm[a] = comm[a].max_abs();
    }
    accumulate();
  }
  for (int i = 0; i <= D; ++i) {
    for (int a = 0; a < dim; ++a) {
      comm[a] = estar_commutator(clo.basis[a], duals.member[i]);
      norm[a] = comm[a].max_abs();
    }
    accumulate();
  }
  return kernel_basis(std::move(gram), ctx.opts.kernel_tol);
}

// q x q centralizer of the restricted generator action on span(U), as the
// kernel of N = sum_G (G^2 (x) I + I (x) G^2 - 2 G (x) G).
Matrix restricted_centralizer(const TCtx& ctx, const DualIdempotents& duals, const Matrix& u) {
  const int q = u.cols();
  const int D = ctx.s.D();
  std::vector<Matrix> restricted;
  for (int j = 1; j <= D; ++j) restricted.push_back(transpose_times(u, ctx.adj[j] * u));
  for (int i = 0; i <= D; ++i) {
    Matrix masked = estar_left(duals.member[i], u);
    restricted.push_back(transpose_times(masked, masked));
  }
  // normalizing each generator leaves the common centralizer unchanged and
  // keeps the kernel threshold meaningful
  for (Matrix& g : restricted) {
    const double m = g.max_abs();
    if (m > 1.0) g *= 1.0 / m;
  }

  Matrix n2(q * q, q * q);
  for (const Matrix& g : restricted) {
    const Matrix g2 = g * g;
    for (int r = 0; r < q; ++r)
      for (int rp = 0; rp < q; ++rp) {
        const double g2rr = g2(r, rp);
        const double grr = g(r, rp);
        for (int ss = 0; ss < q; ++ss) {
          double* row = n2.row(r * q + ss);
          if (r == rp) {
            // I (x) G^2 lands on the block diagonal
            for (int sp = 0; sp < q; ++sp) row[rp * q + sp] += g2(ss, sp);
          }
          row[rp * q + ss] += g2rr;
          for (int sp = 0; sp < q; ++sp) row[rp * q + sp] -= 2.0 * grr * g(ss, sp);
        }
      }
  }
  return kernel_basis(std::move(n2), ctx.opts.kernel_tol);
}

void split_block(const TCtx& ctx, const DualIdempotents& duals, const Matrix& u,
                 SplitMix64& rng, std::vector<Matrix>& modules, int depth) {
  const int q = u.cols();
  if (q == 0) return;
  if (depth > 64) fail(Err::IrreducibilitySplitFailed, "splitting recursion ran away");

  Matrix cent = restricted_centralizer(ctx, duals, u);
  const int p = cent.cols();
  if (p == 0)
    fail(Err::ResidualTooLarge, "restricted centralizer lost the identity (kernel empty)");
  if (p == 1) {
    modules.push_back(u);
    return;
  }

  for (int attempt = 0; attempt < ctx.opts.max_split_retries; ++attempt) {
    Matrix c(q, q);
    for (int l = 0; l < p; ++l) {
      const double w = rng.next_unit();
      for (int r = 0; r < q; ++r)
        for (int s = 0; s < q; ++s) c(r, s) += w * cent(r * q + s, l);
    }
    // self-adjoint part; skew directions cannot split an orthonormal basis
    Matrix ct = c.transposed();
    c += ct;
    c *= 0.5;

    SymmetricEigen eig = jacobi_eigensystem(std::move(c));
    const auto groups = group_eigenvalues(eig.values, ctx.opts.gap_tol);
    if (groups.size() <= 1) continue;
    for (const auto& [b, e] : groups) {
      Matrix cols(q, e - b);
      for (int col = b; col < e; ++col)
        for (int r = 0; r < q; ++r) cols(r, col - b) = eig.vectors(r, col);
      split_block(ctx, duals, u * cols, rng, modules, depth + 1);
    }
    return;
  }
  fail(Err::IrreducibilitySplitFailed,
       "centralizer has dimension " + std::to_string(p) +
           " but no generic self-adjoint element split the block");
}

void sign_normalize_columns(Matrix& b) {
  // first nonzero coordinate of each basis vector made positive
  for (int c = 0; c < b.cols(); ++c)
    for (int r = 0; r < b.rows(); ++r) {
      const double v = b(r, c);
      if (std::abs(v) > 1e-12) {
        if (v < 0)
          for (int rr = 0; rr < b.rows(); ++rr) b(rr, c) = -b(rr, c);
        break;
      }
    }
}

// one splitting attempt: generic central element -> isotypic parts -> modules
std::vector<Matrix> attempt_split(const TCtx& ctx, const DualIdempotents& duals,
                                  const AlgebraClosure& clo, const Matrix& center,
                                  SplitMix64& rng) {
  const int n = ctx.s.n();
  Matrix z(n, n);
  for (int k = 0; k < center.cols(); ++k) {
    const double w = rng.next_unit();
    for (int a = 0; a < center.rows(); ++a) {
      const double coef = w * center(a, k);
      if (std::abs(coef) < 1e-15) continue;
      const auto& src = clo.basis[a].data();
      auto& dst = z.data();
      for (std::size_t t = 0; t < dst.size(); ++t) dst[t] += coef * src[t];
    }
  }
  Matrix zt = z.transposed();
  z += zt;
  z *= 0.5;

  SymmetricEigen eig = jacobi_eigensystem(std::move(z));
  const auto groups = group_eigenvalues(eig.values, ctx.opts.gap_tol);

  std::vector<Matrix> raw_modules;
  for (const auto& [b, e] : groups) {
    Matrix u(n, e - b);
    for (int col = b; col < e; ++col)
      for (int r = 0; r < n; ++r) u(r, col - b) = eig.vectors(r, col);
    split_block(ctx, duals, u, rng, raw_modules, 0);
  }
  return raw_modules;
}

double invariance_defect(const TCtx& ctx, const DualIdempotents& duals,
                         const std::vector<Matrix>& modules) {
  const int D = ctx.s.D();
  double residual = 0.0;
  for (const Matrix& b : modules) {
    for (int j = 1; j <= D; ++j) {
      Matrix gb = ctx.adj[j] * b;
      Matrix defect = gb - b * transpose_times(b, gb);
      residual = std::max(residual, defect.max_abs());
    }
    for (int i = 0; i <= D; ++i) {
      Matrix gb = estar_left(duals.member[i], b);
      Matrix defect = gb - b * transpose_times(b, gb);
      residual = std::max(residual, defect.max_abs());
    }
  }
  return residual;
}

Decomposition decompose_impl(const TCtx& ctx, int x) {
  const int n = ctx.s.n();
  const DualIdempotents duals = dual_idempotents(ctx.s, x);
  const AlgebraClosure clo = closure_impl(ctx, duals);

  Matrix center = center_coordinates(ctx, duals, clo);
  if (center.cols() == 0)
    fail(Err::ResidualTooLarge, "center of T lost the identity (kernel empty)");

  SplitMix64 rng(0x5EEDULL ^ (0x9E3779B97F4A7C15ULL * (ctx.opts.seed + 1)));

  // a generic element can land eigenvalues of distinct modules too close to
  // separate cleanly; certify the attempt and redraw coefficients if it fails
  std::vector<Matrix> raw_modules;
  double residual = 0.0;
  bool certified = false;
  for (int attempt = 0; attempt < std::max(1, ctx.opts.max_split_retries) && !certified;
       ++attempt) {
    raw_modules = attempt_split(ctx, duals, clo, center, rng);
    int total = 0;
    for (const Matrix& m : raw_modules) total += m.cols();
    if (total != n)
      fail(Err::ResidualTooLarge, "module dimensions sum to " + std::to_string(total) +
                                      ", expected n = " + std::to_string(n));
    residual = invariance_defect(ctx, duals, raw_modules);
    certified = residual <= ctx.opts.residual_tol;
  }
  if (!certified)
    fail(Err::ResidualTooLarge, "invariance defect " + std::to_string(residual) +
                                    " exceeds tolerance after retries");

  Decomposition dec;
  dec.base_point = x;
  dec.residual = residual;

  for (Matrix& b : raw_modules) {
    sign_normalize_columns(b);
    dec.modules.push_back(module_profile(b, *ctx.eigen, duals, ctx.opts));
  }

  std::sort(dec.modules.begin(), dec.modules.end(),
            [](const TModuleSummary& a, const TModuleSummary& b) {
              if (a.dual_endpoint != b.dual_endpoint) return a.dual_endpoint < b.dual_endpoint;
              if (a.dim != b.dim) return a.dim < b.dim;
              for (int r = 0; r < a.basis.rows(); ++r) {
                const double x = a.basis(r, 0), y = b.basis(r, 0);
                if (x != y) return x < y;
              }
              return false;
            });
  return dec;
}

}  // namespace

AlgebraClosure algebra_closure(const Scheme& s, const DualIdempotents& duals,
                               const TOptions& opts) {
  TCtx ctx = make_ctx(s, nullptr, opts);
  return closure_impl(ctx, duals);
}

TModuleSummary module_profile(const Matrix& basis, const EigenData& e,
                              const DualIdempotents& duals, const TOptions& opts) {
  const int D = e.D;
  TModuleSummary m;
  m.basis = basis;
  m.dim = basis.cols();
  m.e_profile.assign(D + 1, 0);
  m.e_star_profile.assign(D + 1, 0);
  m.e_ranks.assign(D + 1, 0);
  m.e_star_ranks.assign(D + 1, 0);

  for (int i = 0; i <= D; ++i) {
    Matrix eb = e.idempotents[i] * basis;
    m.e_profile[i] = eb.max_abs() > opts.profile_tol ? 1 : 0;
    m.e_ranks[i] = numeric_rank(eb, opts.rank_tol);
    Matrix sb = estar_left(duals.member[i], basis);
    m.e_star_profile[i] = sb.max_abs() > opts.profile_tol ? 1 : 0;
    m.e_star_ranks[i] = numeric_rank(sb, opts.rank_tol);
  }

  int e_hits = 0, s_hits = 0;
  for (int i = 0; i <= D; ++i) {
    e_hits += m.e_profile[i];
    s_hits += m.e_star_profile[i];
  }
  if (e_hits == 0 || s_hits == 0)
    fail(Err::EmptyProfile, "no idempotent hits the module (broken basis)");

  m.dual_endpoint = int(std::find(m.e_profile.begin(), m.e_profile.end(), 1) - m.e_profile.begin());
  m.endpoint = int(std::find(m.e_star_profile.begin(), m.e_star_profile.end(), 1) -
                   m.e_star_profile.begin());
  m.dual_diameter = e_hits - 1;
  m.diameter = s_hits - 1;

  int max_e = 0, max_s = 0;
  for (int i = 0; i <= D; ++i) {
    max_e = std::max(max_e, m.e_ranks[i]);
    max_s = std::max(max_s, m.e_star_ranks[i]);
  }
  m.dual_thin = max_e <= 1;
  m.thin = max_s <= 1;
  return m;
}

Decomposition decompose(const Scheme& s, const EigenData& e, int x, const TOptions& opts) {
  TCtx ctx = make_ctx(s, &e, opts);
  return decompose_impl(ctx, x);
}

DualThinReport is_dual_thin(const Scheme& s, const EigenData& e, BasePointPolicy policy,
                            const TOptions& opts) {
  TCtx ctx = make_ctx(s, &e, opts);

  DualThinReport rep;
  if (policy == BasePointPolicy::kSampleRepresentative) {
    rep.base_points = {0};
  } else {
    rep.base_points.resize(s.n());
    for (int x = 0; x < s.n(); ++x) rep.base_points[x] = x;
  }

  rep.decompositions.resize(rep.base_points.size());
  std::exception_ptr first_error;
  std::mutex error_mutex;
  parallel_for(int(rep.base_points.size()), [&](int idx) {
    try {
      rep.decompositions[idx] = decompose_impl(ctx, rep.base_points[idx]);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  });
  if (first_error) std::rethrow_exception(first_error);

  rep.dual_thin = true;
  for (std::size_t idx = 0; idx < rep.decompositions.size() && rep.dual_thin; ++idx) {
    const Decomposition& dec = rep.decompositions[idx];
    for (std::size_t j = 0; j < dec.modules.size() && rep.dual_thin; ++j) {
      const TModuleSummary& m = dec.modules[j];
      for (int i = 0; i <= s.D(); ++i) {
        if (m.e_ranks[i] >= 2) {
          rep.dual_thin = false;
          rep.witness = DualThinWitness{rep.base_points[idx], int(j), i, m.e_ranks[i]};
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace schemelab
