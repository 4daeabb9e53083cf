#pragma once
// Curvature enumeration: a fast OpenMP enumerator, a simple serial reference,
// an unpruned stabilizing oracle, and coprime-path construction.
#include <cstdint>
#include <vector>

#include "pk/kernel.hpp"

namespace pk {

// Presence of positive curvatures: bit i set iff curvature i+1 is attained.
struct Presence {
  long long N = 0;
  std::vector<std::uint64_t> words;
  unsigned long long circles_visited = 0;  // includes non-positive curvatures

  explicit Presence(long long n = 0) : N(n), words((n + 63) / 64, 0) {}
  void set(long long v) {
    if (v >= 1 && v <= N) words[(v - 1) >> 6] |= 1ull << ((v - 1) & 63);
  }
  bool test(long long v) const {
    return v >= 1 && v <= N && (words[(v - 1) >> 6] >> ((v - 1) & 63)) & 1;
  }
  long long count() const;
  bool same_bits(const Presence& o) const { return N == o.N && words == o.words; }
};

struct EnumOptions {
  int threads = 0;     // 0: use the OpenMP default
  int ring = 2;        // near-face ring radius for grid child acceptance
  std::size_t max_states = 200000000;  // resource cap on visited states
};

// Fast enumerator: tuple families via monotone-growth DFS (recurse only when
// the new top curvature strictly exceeds the replaced one and some new
// curvature is <= N); grid families via BFS over translation-normalized
// coefficient states with per-state disk scans.
Presence enumerate_curvatures(const Config& c, long long N,
                              const EnumOptions& opt = {});

// Independent serial reference: exact (GMP) breadth-first search with a
// visited set keyed on canonical_key.  Intended for moderate N.
Presence enumerate_reference(const Config& c, long long N,
                             const EnumOptions& opt = {});

// Unpruned oracle: all generator words of length <= depth, keeping states
// whose smallest |curvature| is <= margin * N (tuples) or scanning/flipping a
// window of the given radius (grids).  Exact arithmetic throughout.
Presence oracle_enumerate(const Config& c, long long N, int depth, long margin,
                          long radius);

// Runs the oracle with (depth, margin, radius) and (depth+1, 2*margin,
// 2*radius) until the presence bits agree; throws if max_depth is reached.
Presence oracle_stabilized(const Config& c, long long N, int max_depth = 40);

// A path of pairwise tangent circles with coprime consecutive curvatures.
struct Chain {
  std::vector<Int> curvatures;
};

// Builds a tangency path between two circles of the configuration and repairs
// non-coprime steps with the insertion lemmas (recursively via completed
// sub-configurations).  Postconditions are machine-checked before returning.
Chain coprime_path(const Config& c, const CircleId& from, const CircleId& to);

}  // namespace pk
