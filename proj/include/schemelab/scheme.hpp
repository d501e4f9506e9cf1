#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "schemelab/errors.hpp"
#include "schemelab/linalg.hpp"

namespace schemelab {

inline constexpr long long kDefaultVertexCap = 4096;

// Intersection numbers p^k_ij of a D-class scheme, stored flat.
struct IntersectionNumbers {
  int classes = 0;  // D + 1
  std::vector<long long> values;

  long long p(int k, int i, int j) const {
    return values[(std::size_t(k) * classes + i) * classes + j];
  }
  long long& p(int k, int i, int j) {
    return values[(std::size_t(k) * classes + i) * classes + j];
  }
};

// A symmetric association scheme on n vertices with classes R_0..R_D,
// held as the dense class table. Validated and immutable after construction;
// intersection numbers are computed (and checked for well-definedness) up front.
class Scheme {
 public:
  // Validates all scheme axioms; labels[x][y] = i means xy in R_i.
  static Scheme from_class_matrix(const std::vector<std::vector<int>>& labels,
                                  std::string label = "scheme");

  int n() const { return n_; }
  int D() const { return D_; }
  int cls(int x, int y) const { return class_of_[std::size_t(x) * n_ + y]; }
  const std::string& label() const { return label_; }

  const IntersectionNumbers& intersection_numbers() const { return pnums_; }
  const std::vector<long long>& valencies() const { return valencies_; }  // k_i = p^0_ii

  IntMatrix associate_matrix(int i) const;      // A_i, exact 0/1
  Matrix associate_matrix_dense(int i) const;   // A_i as doubles

  std::vector<std::vector<int>> class_table() const;

 private:
  Scheme() = default;
  static Scheme build(int n, std::vector<int> flat, std::string label);

  int n_ = 0;
  int D_ = 0;
  std::vector<int> class_of_;  // n*n
  IntersectionNumbers pnums_;
  std::vector<long long> valencies_;
  std::string label_;

  friend Scheme read_scheme(std::istream& in, std::string label);
  friend Scheme complete_graph(int n);
  friend Scheme cycle(int m);
  friend Scheme hamming(int d, int q, long long vertex_cap);
  friend Scheme johnson(int v, int k, long long vertex_cap);
};

// Family constructors. Classes are the natural distances; labels record the family.
Scheme complete_graph(int n);
Scheme cycle(int m);
Scheme hamming(int d, int q, long long vertex_cap = kDefaultVertexCap);
Scheme johnson(int v, int k, long long vertex_cap = kDefaultVertexCap);

// Text format: line 1 "n D", then n rows of n space-separated class labels.
// Lines starting with '#' are comments. The writer emits LF endings and no
// trailing spaces, so write(read(s)) is byte-identical.
Scheme read_scheme(std::istream& in, std::string label = "scheme");
Scheme read_scheme_file(const std::string& path);
void write_scheme(const Scheme& s, std::ostream& out);
void write_scheme_file(const Scheme& s, const std::string& path);

}  // namespace schemelab
