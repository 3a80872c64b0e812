#include "tropspec/combinatorics.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include "tropspec/errors.hpp"

namespace tropspec {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    // r * num / i is exact at every step; guard the multiplication.
    if (r > std::numeric_limits<std::uint64_t>::max() / num) throw InvalidInput("binomial overflow");
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  out.reserve(binomial(n, k));
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

std::uint64_t subset_rank(int n, std::span<const int> subset) {
  const int k = static_cast<int>(subset.size());
  std::uint64_t rank = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < subset[i]; ++v) rank += binomial(n - v - 1, k - i - 1);
    prev = subset[i];
  }
  return rank;
}

std::vector<int> subset_unrank(int n, int k, std::uint64_t rank) {
  if (rank >= binomial(n, k)) throw InvalidInput("subset rank out of range");
  std::vector<int> s;
  s.reserve(k);
  int v = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      const std::uint64_t c = binomial(n - v - 1, k - i - 1);
      if (rank < c) break;
      rank -= c;
      ++v;
    }
    s.push_back(v++);
  }
  return s;
}

std::size_t default_size_cap() {
  if (const char* env = std::getenv("TROPSPEC_SIZE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 3000;
}

namespace {
void stderr_sink(const char* message) { std::fprintf(stderr, "warning: %s\n", message); }
std::atomic<WarningSink> g_sink{&stderr_sink};
}  // namespace

WarningSink set_warning_sink(WarningSink sink) { return g_sink.exchange(sink ? sink : &stderr_sink); }

void warn(const char* message) { g_sink.load()(message); }

}  // namespace tropspec
