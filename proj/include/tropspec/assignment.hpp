#pragma once

// Combinatorial solvers behind the tropical spectra: optimal assignment
// (tropical permanent), maximal cycle mean, and decomposition of integer
// circulations into partial permutations.

#include <cstdint>
#include <optional>
#include <vector>

#include "tropspec/matrix.hpp"

namespace tropspec {

/// Injective map from `support` to `image`; map[i] is the image of support[i].
/// Supports are increasing.
struct PartialPermutation {
  std::vector<int> support;
  std::vector<int> map;

  /// support and image coincide (the 0/1 matrix has a permutation matrix as
  /// principal submatrix and zeros elsewhere).
  bool is_cycle_structured() const;
  bool is_valid(int n) const;
  SquareMatrix<std::int64_t> to_matrix(int n) const;
  friend bool operator==(const PartialPermutation&, const PartialPermutation&) = default;
};

struct AssignmentResult {
  /// max_sigma sum_i w(i, sigma(i)); -inf when no permutation avoids -inf edges.
  double value = kNegInf;
  /// Witness permutation (perm[i] = sigma(i)); absent iff value is -inf.
  std::optional<std::vector<int>> perm;
};

/// Max-weight perfect assignment by shortest augmenting paths with dual
/// potentials. Among optimal permutations (reduced costs within a relative
/// 1e-11 of zero) the lexicographically smallest is returned.
AssignmentResult optimal_assignment(const WeightMatrix& w);

/// Optimal value only; skips the lexicographic witness search.
double assignment_value(const WeightMatrix& w);

/// Value and the diagonal positions used by an optimal permutation. Used by
/// the evaluation route of the tropical eigenvalues.
struct AssignmentWithPerm {
  double value = kNegInf;
  std::vector<int> perm;  // empty when infeasible
};
AssignmentWithPerm assignment_solve(const WeightMatrix& w);

/// Strongly connected components of the digraph {(i,j) : m(i,j) > 0} (or
/// w(i,j) > -inf). Components are listed in Tarjan completion order, vertices
/// sorted inside each component.
std::vector<std::vector<int>> strongly_connected_components(const SquareMatrix<double>& m,
                                                            double absent_value);

/// Maximal cycle mean in the log domain: max over elementary cycles of the
/// mean edge weight; -inf when the graph is acyclic. Karp's algorithm per SCC.
double max_cycle_mean_log(const WeightMatrix& w);

/// Maximal cycle mean of a max-times matrix (geometric mean of cycle weights);
/// 0 when the digraph of nonzero entries is acyclic.
double max_cycle_mean(const NonnegMatrix& m);

/// Nonnegative integer matrix whose i-th row sum equals its i-th column sum.
class CirculationMatrix {
 public:
  /// Throws InvalidInput naming the first index whose row and column sums
  /// differ, or the first negative entry.
  explicit CirculationMatrix(SquareMatrix<std::int64_t> b);

  std::size_t size() const { return b_.size(); }
  const SquareMatrix<std::int64_t>& matrix() const { return b_; }
  std::int64_t row_sum(std::size_t i) const;
  /// Maximum row sum.
  std::int64_t weight() const;

 private:
  SquareMatrix<std::int64_t> b_;
};

/// Writes B as a sum of at most weight(B) nonzero cycle-structured partial
/// permutation matrices: pad with Diag(l - s_i), peel l perfect matchings
/// (rows scanned in increasing order, smallest column first), then remove
/// the padding from the diagonals.
std::vector<PartialPermutation> decompose_circulation(const CirculationMatrix& b);

}  // namespace tropspec
