#include "tropspec/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace tropspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Result of the Hungarian sweep: column of each row plus the dual potentials
// of the minimization problem with cost -w.
struct HungarianState {
  bool feasible = false;
  std::vector<int> perm;
  std::vector<double> u, v;  // 1-based
};

HungarianState hungarian(const WeightMatrix& w) {
  const int n = static_cast<int>(w.size());
  HungarianState st;
  st.u.assign(n + 1, 0.0);
  st.v.assign(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  auto cost = [&](int i, int j) {
    const double x = w(i - 1, j - 1);
    return x == kNegInf ? kInf : -x;
  };
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - st.u[i0] - st.v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 < 0 || delta == kInf) return st;  // no augmenting path: infeasible
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          st.u[p[j]] += delta;
          st.v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  st.perm.assign(n, -1);
  for (int j = 1; j <= n; ++j) st.perm[p[j] - 1] = j - 1;
  st.feasible = true;
  return st;
}

double perm_value(const WeightMatrix& w, const std::vector<int>& perm) {
  double s = 0.0;
  for (std::size_t i = 0; i < perm.size(); ++i) s += w(i, perm[i]);
  return s;
}

// Kuhn augmenting path restricted to `allowed` columns.
bool try_kuhn(int row, const std::vector<std::vector<int>>& adj, std::vector<int>& match_col,
              std::vector<char>& seen, const std::vector<char>& col_blocked) {
  for (int j : adj[row]) {
    if (seen[j] || col_blocked[j]) continue;
    seen[j] = 1;
    if (match_col[j] < 0 || try_kuhn(match_col[j], adj, match_col, seen, col_blocked)) {
      match_col[j] = row;
      return true;
    }
  }
  return false;
}

// Lexicographically smallest perfect matching of the tight-edge graph.
std::vector<int> lex_smallest_matching(const std::vector<std::vector<int>>& adj, int n) {
  std::vector<int> perm(n, -1);
  std::vector<char> col_used(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j : adj[i]) {
      if (col_used[j]) continue;
      col_used[j] = 1;
      // Can rows i+1..n-1 still be matched within the free columns?
      std::vector<int> match_col(n, -1);
      bool ok = true;
      for (int r = i + 1; r < n && ok; ++r) {
        std::vector<char> seen(n, 0);
        ok = try_kuhn(r, adj, match_col, seen, col_used);
      }
      if (ok) {
        perm[i] = j;
        break;
      }
      col_used[j] = 0;
    }
  }
  return perm;
}

}  // namespace

bool PartialPermutation::is_cycle_structured() const {
  std::vector<int> image = map;
  std::sort(image.begin(), image.end());
  return image == support;
}

bool PartialPermutation::is_valid(int n) const {
  if (support.size() != map.size()) return false;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0 || support[i] >= n || map[i] < 0 || map[i] >= n) return false;
    if (i > 0 && support[i] <= support[i - 1]) return false;
  }
  std::vector<int> image = map;
  std::sort(image.begin(), image.end());
  return std::adjacent_find(image.begin(), image.end()) == image.end();
}

SquareMatrix<std::int64_t> PartialPermutation::to_matrix(int n) const {
  SquareMatrix<std::int64_t> m(n, 0);
  for (std::size_t i = 0; i < support.size(); ++i) m(support[i], map[i]) = 1;
  return m;
}

AssignmentWithPerm assignment_solve(const WeightMatrix& w) {
  if (w.size() == 0) return {0.0, {}};
  HungarianState st = hungarian(w);
  if (!st.feasible) return {};
  const double value = perm_value(w, st.perm);
  return {value, std::move(st.perm)};
}

double assignment_value(const WeightMatrix& w) { return assignment_solve(w).value; }

AssignmentResult optimal_assignment(const WeightMatrix& w) {
  const int n = static_cast<int>(w.size());
  if (n == 0) return {0.0, std::vector<int>{}};
  HungarianState st = hungarian(w);
  if (!st.feasible) return {};

  double scale = 1.0;
  for (double x : w.dense().data())
    if (x != kNegInf) scale = std::max(scale, 1.0 + std::abs(x));
  const double tol = 1e-11 * scale;
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = w(i, j);
      if (x == kNegInf) continue;
      if (-x - st.u[i + 1] - st.v[j + 1] <= tol) adj[i].push_back(j);
    }
  std::vector<int> perm = lex_smallest_matching(adj, n);
  if (std::find(perm.begin(), perm.end(), -1) != perm.end()) perm = st.perm;
  const double value = perm_value(w, perm);
  return {value, std::move(perm)};
}

std::vector<std::vector<int>> strongly_connected_components(const SquareMatrix<double>& m,
                                                            double absent_value) {
  const int n = static_cast<int>(m.size());
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<int>> comps;
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int u = 0; u < n; ++u) {
      if (m(v, u) == absent_value) continue;
      if (index[u] < 0) {
        visit(u);
        low[v] = std::min(low[v], low[u]);
      } else if (on_stack[u]) {
        low[v] = std::min(low[v], index[u]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int u;
      do {
        u = stack.back();
        stack.pop_back();
        on_stack[u] = 0;
        comp.push_back(u);
      } while (u != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return comps;
}

double max_cycle_mean_log(const WeightMatrix& w) {
  double best = kNegInf;
  for (const auto& comp : strongly_connected_components(w.dense(), kNegInf)) {
    const int m = static_cast<int>(comp.size());
    if (m == 1) {
      best = std::max(best, w(comp[0], comp[0]));
      continue;
    }
    // Karp: D[k][v] = heaviest walk of exactly k edges from comp[0] to v.
    std::vector<std::vector<double>> d(m + 1, std::vector<double>(m, kNegInf));
    d[0][0] = 0.0;
    for (int k = 1; k <= m; ++k)
      for (int a = 0; a < m; ++a) {
        if (d[k - 1][a] == kNegInf) continue;
        for (int b = 0; b < m; ++b) {
          const double x = w(comp[a], comp[b]);
          if (x != kNegInf) d[k][b] = std::max(d[k][b], d[k - 1][a] + x);
        }
      }
    for (int v = 0; v < m; ++v) {
      if (d[m][v] == kNegInf) continue;
      double worst = std::numeric_limits<double>::infinity();
      for (int k = 0; k < m; ++k)
        if (d[k][v] != kNegInf) worst = std::min(worst, (d[m][v] - d[k][v]) / (m - k));
      best = std::max(best, worst);
    }
  }
  return best;
}

double max_cycle_mean(const NonnegMatrix& m) {
  const double l = max_cycle_mean_log(WeightMatrix::log_of(m));
  return l == kNegInf ? 0.0 : std::exp(l);
}

CirculationMatrix::CirculationMatrix(SquareMatrix<std::int64_t> b) : b_(std::move(b)) {
  const std::size_t n = b_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b_(i, j) < 0)
        throw InvalidInput("circulation entries must be nonnegative (entry " + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + ")");
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t row = 0, col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row += b_(i, j);
      col += b_(j, i);
    }
    if (row != col)
      throw InvalidInput("not a circulation: row " + std::to_string(i + 1) + " sums to " + std::to_string(row) +
                         " but column " + std::to_string(i + 1) + " sums to " + std::to_string(col));
  }
}

std::int64_t CirculationMatrix::row_sum(std::size_t i) const {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < b_.size(); ++j) s += b_(i, j);
  return s;
}

std::int64_t CirculationMatrix::weight() const {
  std::int64_t l = 0;
  for (std::size_t i = 0; i < b_.size(); ++i) l = std::max(l, row_sum(i));
  return l;
}

std::vector<PartialPermutation> decompose_circulation(const CirculationMatrix& circ) {
  const int n = static_cast<int>(circ.size());
  const std::int64_t l = circ.weight();
  SquareMatrix<std::int64_t> m = circ.matrix();
  std::vector<std::int64_t> pad(n);
  for (int i = 0; i < n; ++i) {
    pad[i] = l - circ.row_sum(i);
    m(i, i) += pad[i];
  }

  // m is l-regular; each peeled perfect matching lowers the degree by one.
  std::vector<std::vector<int>> matchings;
  for (std::int64_t step = 0; step < l; ++step) {
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (m(i, j) > 0) adj[i].push_back(j);
    std::vector<int> match_col(n, -1);
    const std::vector<char> none(n, 0);
    for (int i = 0; i < n; ++i) {
      std::vector<char> seen(n, 0);
      if (!try_kuhn(i, adj, match_col, seen, none))
        throw NumericError("internal: regular bipartite multigraph without perfect matching");
    }
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[match_col[j]] = j;
    for (int i = 0; i < n; ++i) --m(i, perm[i]);
    matchings.push_back(std::move(perm));
  }

  std::vector<PartialPermutation> parts;
  for (const auto& perm : matchings) {
    PartialPermutation part;
    for (int i = 0; i < n; ++i) {
      if (perm[i] == i && pad[i] > 0) {
        --pad[i];  // this fixed point belongs to the padding diagonal
        continue;
      }
      part.support.push_back(i);
      part.map.push_back(perm[i]);
    }
    if (!part.support.empty()) parts.push_back(std::move(part));
  }
  return parts;
}

}  // namespace tropspec
