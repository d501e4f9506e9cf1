#include "schemelab/scheme.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

namespace schemelab {

namespace {

std::string pair_str(int x, int y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

}  // namespace

Scheme Scheme::build(int n, std::vector<int> flat, std::string label) {
  Scheme s;
  s.n_ = n;
  s.class_of_ = std::move(flat);
  s.label_ = std::move(label);

  // R_0 must be the identity relation.
  for (int x = 0; x < n; ++x) {
    if (s.cls(x, x) != 0)
      fail(Err::NotReflexive, "class_of[" + std::to_string(x) + "][" + std::to_string(x) + "] = " +
                                  std::to_string(s.cls(x, x)) + ", expected 0");
    for (int y = 0; y < n; ++y)
      if (x != y && s.cls(x, y) == 0)
        fail(Err::NotReflexive, "class 0 attained off the diagonal at " + pair_str(x, y));
  }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (s.cls(x, y) != s.cls(y, x))
        fail(Err::NotSymmetric, "class_of" + pair_str(x, y) + " = " + std::to_string(s.cls(x, y)) +
                                    " but class_of" + pair_str(y, x) + " = " + std::to_string(s.cls(y, x)));

  int D = 0;
  for (int v : s.class_of_) D = std::max(D, v);
  s.D_ = D;
  if (D == 0) fail(Err::InvalidParameters, "scheme needs at least one class besides the identity");

  std::vector<long long> class_size(D + 1, 0);
  for (int v : s.class_of_) ++class_size[v];
  for (int i = 0; i <= D; ++i)
    if (class_size[i] == 0) fail(Err::EmptyClass, "no pair lies in R_" + std::to_string(i));

  // Any scheme satisfies D+1 <= n; reject early so the p-tensor stays small.
  if (D + 1 > n)
    fail(Err::InconsistentIntersectionNumbers,
         "D+1 = " + std::to_string(D + 1) + " exceeds n = " + std::to_string(n));

  const int C = D + 1;
  s.pnums_.classes = C;
  s.pnums_.values.assign(std::size_t(C) * C * C, 0);
  std::vector<char> seen(C, 0);
  std::vector<long long> local(std::size_t(C) * C);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const int k = s.cls(x, y);
      std::fill(local.begin(), local.end(), 0);
      for (int z = 0; z < n; ++z) ++local[std::size_t(s.cls(x, z)) * C + s.cls(z, y)];
      if (!seen[k]) {
        for (int i = 0; i < C; ++i)
          for (int j = 0; j < C; ++j) s.pnums_.p(k, i, j) = local[std::size_t(i) * C + j];
        seen[k] = 1;
      } else {
        for (int i = 0; i < C; ++i)
          for (int j = 0; j < C; ++j)
            if (s.pnums_.p(k, i, j) != local[std::size_t(i) * C + j])
              fail(Err::InconsistentIntersectionNumbers,
                   "p^" + std::to_string(k) + "_{" + std::to_string(i) + "," + std::to_string(j) +
                       "} = " + std::to_string(s.pnums_.p(k, i, j)) + " from an earlier pair but " +
                       std::to_string(local[std::size_t(i) * C + j]) + " at pair " + pair_str(x, y));
      }
    }
  }

  s.valencies_.resize(C);
  for (int i = 0; i < C; ++i) s.valencies_[i] = s.pnums_.p(0, i, i);
  return s;
}

Scheme Scheme::from_class_matrix(const std::vector<std::vector<int>>& labels, std::string label) {
  const int n = int(labels.size());
  if (n == 0) fail(Err::InvalidParameters, "empty class table");
  std::vector<int> flat;
  flat.reserve(std::size_t(n) * n);
  for (const auto& row : labels) {
    if (int(row.size()) != n)
      fail(Err::InvalidParameters, "class table is not square: row of length " +
                                       std::to_string(row.size()) + " in an n = " + std::to_string(n) +
                                       " table");
    for (int v : row) {
      if (v < 0) fail(Err::InvalidParameters, "negative class label " + std::to_string(v));
      flat.push_back(v);
    }
  }
  return build(n, std::move(flat), std::move(label));
}

IntMatrix Scheme::associate_matrix(int i) const {
  IntMatrix a(n_, n_);
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (cls(x, y) == i) a(x, y) = 1;
  return a;
}

Matrix Scheme::associate_matrix_dense(int i) const {
  Matrix a(n_, n_);
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (cls(x, y) == i) a(x, y) = 1.0;
  return a;
}

std::vector<std::vector<int>> Scheme::class_table() const {
  std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y) t[x][y] = cls(x, y);
  return t;
}

Scheme complete_graph(int n) {
  if (n < 2) fail(Err::InvalidParameters, "complete graph needs n >= 2");
  std::vector<int> flat(std::size_t(n) * n, 1);
  for (int x = 0; x < n; ++x) flat[std::size_t(x) * n + x] = 0;
  return Scheme::build(n, std::move(flat), "complete(" + std::to_string(n) + ")");
}

Scheme cycle(int m) {
  if (m < 3) fail(Err::InvalidParameters, "cycle needs m >= 3");
  std::vector<int> flat(std::size_t(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const int diff = std::abs(x - y);
      flat[std::size_t(x) * m + y] = std::min(diff, m - diff);
    }
  return Scheme::build(m, std::move(flat), "cycle(" + std::to_string(m) + ")");
}

Scheme hamming(int d, int q, long long vertex_cap) {
  if (d < 1 || q < 2) fail(Err::InvalidParameters, "hamming needs d >= 1 and q >= 2");
  long long n = 1;
  for (int i = 0; i < d; ++i) {
    n *= q;
    if (n > vertex_cap)
      fail(Err::SizeCapExceeded, "q^d exceeds the vertex cap " + std::to_string(vertex_cap));
  }
  // vertex v <-> base-q digit string; class = Hamming distance
  std::vector<int> flat(std::size_t(n) * n);
  for (long long x = 0; x < n; ++x)
    for (long long y = 0; y < n; ++y) {
      int dist = 0;
      long long a = x, b = y;
      for (int i = 0; i < d; ++i) {
        if (a % q != b % q) ++dist;
        a /= q;
        b /= q;
      }
      flat[std::size_t(x) * n + y] = dist;
    }
  return Scheme::build(int(n), std::move(flat),
                       "hamming(" + std::to_string(d) + "," + std::to_string(q) + ")");
}

Scheme johnson(int v, int k, long long vertex_cap) {
  if (k < 1 || 2 * k > v) fail(Err::InvalidParameters, "johnson needs 1 <= k <= v/2");
  long long count = 1;
  for (int i = 1; i <= k; ++i) {
    count = count * (v - k + i) / i;  // exact at every step
    if (count > vertex_cap)
      fail(Err::SizeCapExceeded, "C(v,k) exceeds the vertex cap " + std::to_string(vertex_cap));
  }
  // enumerate k-subsets in lexicographic order
  std::vector<std::vector<int>> subsets;
  subsets.reserve(std::size_t(count));
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    subsets.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == v - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }

  const int n = int(subsets.size());
  std::vector<int> flat(std::size_t(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int common = 0;
      std::size_t a = 0, b = 0;
      while (a < subsets[x].size() && b < subsets[y].size()) {
        if (subsets[x][a] == subsets[y][b]) ++common, ++a, ++b;
        else if (subsets[x][a] < subsets[y][b]) ++a;
        else ++b;
      }
      flat[std::size_t(x) * n + y] = k - common;
    }
  return Scheme::build(n, std::move(flat),
                       "johnson(" + std::to_string(v) + "," + std::to_string(k) + ")");
}

Scheme read_scheme(std::istream& in, std::string label) {
  std::vector<long long> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        tokens.push_back(v);
      } catch (const std::exception&) {
        fail(Err::IoError, "not an integer: '" + tok + "'");
      }
    }
  }
  if (tokens.size() < 2) fail(Err::IoError, "missing 'n D' header");
  const long long n = tokens[0], D = tokens[1];
  if (n <= 0 || D < 0 || n > kDefaultVertexCap * 4)
    fail(Err::IoError, "implausible header n = " + std::to_string(n) + ", D = " + std::to_string(D));
  if (static_cast<long long>(tokens.size()) != 2 + n * n)
    fail(Err::IoError, "expected " + std::to_string(n * n) + " class entries, found " +
                           std::to_string(tokens.size() - 2));
  std::vector<int> flat(std::size_t(n) * n);
  for (long long i = 0; i < n * n; ++i) {
    const long long v = tokens[2 + i];
    if (v < 0 || v > D) fail(Err::IoError, "class label " + std::to_string(v) + " outside 0.." + std::to_string(D));
    flat[std::size_t(i)] = int(v);
  }
  Scheme s = Scheme::build(int(n), std::move(flat), std::move(label));
  if (s.D() != D)
    fail(Err::IoError, "header says D = " + std::to_string(D) + " but the table attains " +
                           std::to_string(s.D()));
  return s;
}

Scheme read_scheme_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::IoError, "cannot open '" + path + "'");
  return read_scheme(in, path);
}

void write_scheme(const Scheme& s, std::ostream& out) {
  out << s.n() << ' ' << s.D() << '\n';
  for (int x = 0; x < s.n(); ++x) {
    for (int y = 0; y < s.n(); ++y) {
      if (y) out << ' ';
      out << s.cls(x, y);
    }
    out << '\n';
  }
}

void write_scheme_file(const Scheme& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::IoError, "cannot open '" + path + "' for writing");
  write_scheme(s, out);
}

}  // namespace schemelab
