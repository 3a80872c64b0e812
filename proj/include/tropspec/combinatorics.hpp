#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tropspec {

/// C(n, k); 0 when k > n. Throws InvalidInput on overflow of uint64.
std::uint64_t binomial(int n, int k);

/// n! as a double (exact for n <= 18).
double factorial(int n);

/// All k-subsets of {0..n-1} in lexicographic order. Row/column indexing of
/// every compound and exterior power in the library follows this order.
std::vector<std::vector<int>> k_subsets(int n, int k);

/// Position of `subset` (sorted, 0-based) in the lexicographic order of k-subsets of [n].
std::uint64_t subset_rank(int n, std::span<const int> subset);

/// Inverse of subset_rank.
std::vector<int> subset_unrank(int n, int k, std::uint64_t rank);

/// Compound matrices larger than this many rows are refused (compounds) or
/// reported (tropical exterior powers). 3000 unless TROPSPEC_SIZE_CAP is set.
std::size_t default_size_cap();

/// Replace the process-wide warning sink (default: stderr). Returns the previous one.
using WarningSink = void (*)(const char* message);
WarningSink set_warning_sink(WarningSink sink);
void warn(const char* message);

}  // namespace tropspec
