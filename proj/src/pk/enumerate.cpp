#include "pk/enumerate.hpp"

#include <algorithm>
#ifdef _OPENMP
#include <omp.h>
#endif
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

namespace pk {

long long Presence::count() const {
  long long c = 0;
  for (auto w : words) c += std::popcount(w);
  return c;
}

namespace {

[[noreturn]] void enum_error(const std::string& why) {
  throw exact_error("enumeration: " + why);
}

int thread_count(const EnumOptions& opt) {
  if (opt.threads > 0) return opt.threads;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

long long to_ll(const Int& v) {
  if (!v.fits_slong_p()) enum_error("value exceeds 64-bit range");
  return v.get_si();
}

long long chk(__int128 v) {
  if (v > (__int128)1 << 62 || v < -((__int128)1 << 62))
    enum_error("intermediate overflow");
  return (long long)v;
}

// ---- tuple families: monotone DFS ------------------------------------------

// Applies w-decreasing faces until none remain (root reduction).
Config reduce_root(Config c) {
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& f : faces(c)) {
      Config d = apply_generator(c, f);
      if (d.w < c.w) {
        c = std::move(d);
        changed = true;
        break;
      }
    }
  }
  return c;
}

struct OctState {
  std::array<long long, 6> t;
  long long w;
  int last;  // face index applied to reach this state, -1 at the root
};

struct CubeState {
  std::array<long long, 8> t;
  long long w;
  int last;
};

const int kCubeFaceTable[6][4] = {{0, 1, 2, 3}, {6, 7, 4, 5}, {0, 1, 5, 4},
                                  {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
const int kCubeAnti[8] = {6, 7, 4, 5, 2, 3, 0, 1};

template <class State, class Expand>
void dfs_worklist(std::vector<State>& stack, Presence& pres, const Expand& expand,
                  std::size_t max_states) {
  std::size_t processed = 0;
  while (!stack.empty()) {
    if (++processed > max_states) enum_error("state cap exceeded");
    State s = stack.back();
    stack.pop_back();
    expand(s, stack, pres);
  }
}

void oct_record(const OctState& s, Presence& pres) {
  for (long long v : s.t) {
    ++pres.circles_visited;
    pres.set(v);
  }
}

// Expands one octahedral state: for each face mask other than the inverse of
// the last move, keep the child when w strictly grows and some new curvature
// is within the bound.
void oct_expand(const OctState& s, long long N, std::vector<OctState>& out) {
  for (int m = 0; m < 8; ++m) {
    if (m == s.last) continue;
    int s0 = (m & 1) ? 5 : 0, s1 = (m & 2) ? 4 : 1, s2 = (m & 4) ? 3 : 2;
    long long w2 = chk((__int128)2 * (s.t[s0] + s.t[s1] + s.t[s2]) - s.w);
    if (w2 <= s.w) continue;
    OctState c = s;
    c.w = w2;
    c.last = m;
    long long mn = w2;
    for (int k : {s0, s1, s2}) {
      long long nv = chk((__int128)2 * w2 - s.t[k]);
      c.t[5 - k] = nv;
      mn = std::min(mn, nv);
    }
    if (mn <= N) out.push_back(c);
  }
}

void cube_record(const CubeState& s, Presence& pres) {
  for (long long v : s.t) {
    ++pres.circles_visited;
    pres.set(v);
  }
}

void cube_expand(const CubeState& s, long long N, std::vector<CubeState>& out) {
  for (int f = 0; f < 6; ++f) {
    if (f == s.last) continue;
    const int* fc = kCubeFaceTable[f];
    long long w2 = chk((__int128)4 * (s.t[fc[0]] + s.t[fc[2]]) - s.w);
    if (w2 <= s.w) continue;
    CubeState c = s;
    c.w = w2;
    c.last = f;
    long long mn = w2;
    for (int k = 0; k < 4; ++k) {
      long long nv = chk((__int128)w2 - s.t[fc[k]]);
      c.t[kCubeAnti[fc[k]]] = nv;
      mn = std::min(mn, nv);
    }
    if (mn <= N) out.push_back(c);
  }
}

// ---- grid families: normalized-state BFS -----------------------------------

struct GridState {
  long long L, A, B, G;
};

struct GridKey {
  std::array<long long, 4> v;
  bool operator==(const GridKey& o) const { return v == o.v; }
};

struct GridKeyHash {
  std::size_t operator()(const GridKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (long long x : k.v) {
      h ^= (std::uint64_t)x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return (std::size_t)h;
  }
};

long long sq_value(const GridState& g, long long i, long long j) {
  __int128 v = (__int128)g.L * (i * i + j * j) + (__int128)g.A * i +
               (__int128)g.B * j;
  return chk(v / 2 + g.G);
}

long long tri_value(const GridState& g, long long i, long long j) {
  __int128 v = (__int128)g.L * (i * i + i * j + j * j) + (__int128)g.A * i +
               (__int128)g.B * j + g.G;
  return chk(v);
}

long long grid_value(Kind k, const GridState& g, long long i, long long j) {
  return k == Kind::Square ? sq_value(g, i, j) : tri_value(g, i, j);
}

// Continuous minimizer of the grid quadratic (valid for L > 0).
void grid_center(Kind k, const GridState& g, double& ci, double& cj) {
  if (k == Kind::Square) {
    ci = -(double)g.A / (2.0 * g.L);
    cj = -(double)g.B / (2.0 * g.L);
  } else {
    ci = (-2.0 * g.A + g.B) / (3.0 * g.L);
    cj = (g.A - 2.0 * g.B) / (3.0 * g.L);
  }
}

// Exact minimum over integer cells near the continuous minimizer.
long long grid_min(Kind k, const GridState& g) {
  if (g.L == 0) return g.G;
  double ci, cj;
  grid_center(k, g, ci, cj);
  long long bi = (long long)std::floor(ci), bj = (long long)std::floor(cj);
  long long best = grid_value(k, g, bi, bj);
  for (long long i = bi - 3; i <= bi + 4; ++i)
    for (long long j = bj - 3; j <= bj + 4; ++j)
      best = std::min(best, grid_value(k, g, i, j));
  return best;
}

// Translates the grid so the continuous minimizer lies in [0,1)^2; dedup key.
GridState grid_normalize(Kind k, const GridState& g) {
  if (g.L == 0) return GridState{0, g.A, g.B, g.G};
  double ci, cj;
  grid_center(k, g, ci, cj);
  long long si = (long long)std::floor(ci), sj = (long long)std::floor(cj);
  GridState out;
  out.L = g.L;
  out.G = grid_value(k, g, si, sj);
  if (k == Kind::Square) {
    out.A = chk((__int128)g.A + 2 * (__int128)g.L * si);
    out.B = chk((__int128)g.B + 2 * (__int128)g.L * sj);
  } else {
    out.A = chk((__int128)g.A + (__int128)g.L * (2 * si + sj));
    out.B = chk((__int128)g.B + (__int128)g.L * (si + 2 * sj));
  }
  return out;
}

// Scan ranges (inclusive) of cells possibly holding values <= N.
bool grid_ranges(Kind k, const GridState& g, long long N, long long& ilo,
                 long long& ihi) {
  if (g.L == 0) return false;
  double ci, cj;
  grid_center(k, g, ci, cj);
  double vmin = (double)grid_min(k, g);
  double span = (double)N - vmin;
  if (span < 0) return false;
  double r = k == Kind::Square ? std::sqrt(2.0 * span / g.L) + 2
                               : std::sqrt(4.0 * span / (3.0 * g.L)) + 2;
  ilo = (long long)std::floor(ci - r);
  ihi = (long long)std::ceil(ci + r);
  return true;
}

// Per-column j-range with value <= N (conservative, exact check by caller).
bool grid_jrange(Kind k, const GridState& g, long long N, long long i,
                 long long& jlo, long long& jhi) {
  // Solve the quadratic in j: L*q + ... <= N (square: L/2 j^2 + ...).
  double a, b, c;
  if (k == Kind::Square) {
    a = g.L / 2.0;
    b = g.B / 2.0;
    c = (g.L / 2.0) * (double)i * i + (g.A / 2.0) * i + g.G - (double)N;
  } else {
    a = g.L;
    b = (double)g.L * i + g.B;
    c = (double)g.L * i * i + (double)g.A * i + g.G - (double)N;
  }
  double disc = b * b - 4 * a * c;
  if (disc < 0) return false;
  double s = std::sqrt(disc);
  jlo = (long long)std::floor((-b - s) / (2 * a)) - 1;
  jhi = (long long)std::ceil((-b + s) / (2 * a)) + 1;
  return true;
}

// int64 flip of a square grid at face (i0, j0); mirrors apply_generator.
GridState sq_flip(const GridState& g, long long i0, long long j0) {
  long long p = sq_value(g, i0, j0), q = sq_value(g, i0 + 1, j0);
  long long r = sq_value(g, i0, j0 + 1), s = sq_value(g, i0 + 1, j0 + 1);
  long long m = sq_value(g, i0 + 2, j0 + 1);
  long long m2 = chk((__int128)2 * p + 2 * q + 6 * s - m);
  long long L2 = chk((__int128)m2 - 2 * q - (__int128)r + 2 * p);
  long long Al = chk((__int128)2 * (q - p) - L2);
  long long Bl = chk((__int128)2 * (r - p) - L2);
  GridState out;
  out.L = L2;
  out.A = chk((__int128)Al - 2 * (__int128)L2 * i0);
  out.B = chk((__int128)Bl - 2 * (__int128)L2 * j0);
  __int128 num = (__int128)L2 * ((__int128)i0 * i0 + (__int128)j0 * j0) -
                 (__int128)Al * i0 - (__int128)Bl * j0;
  out.G = chk(num / 2 + p);
  if (out.L < 0) enum_error("square flip: negative leading coefficient");
  return out;
}

GridState tri_flip(const GridState& g, long long i0, long long j0, bool up) {
  long long b = tri_value(g, i0 + 1, j0), c = tri_value(g, i0, j0 + 1);
  long long a, d;
  if (up) {
    a = tri_value(g, i0, j0);
    d = chk((__int128)6 * b + 6 * c + 2 * a - tri_value(g, i0 + 1, j0 + 1));
  } else {
    d = tri_value(g, i0 + 1, j0 + 1);
    a = chk((__int128)6 * b + 6 * c + 2 * d - tri_value(g, i0, j0));
  }
  long long lam = chk((__int128)d + a - (__int128)b - c);
  long long Al = chk((__int128)b - a - lam), Bl = chk((__int128)c - a - lam);
  GridState out;
  out.L = lam;
  out.A = chk((__int128)Al - (__int128)lam * (2 * i0 + j0));
  out.B = chk((__int128)Bl - (__int128)lam * (i0 + 2 * j0));
  out.G = chk((__int128)lam * ((__int128)i0 * i0 + (__int128)i0 * j0 +
                               (__int128)j0 * j0) -
              (__int128)Al * i0 - (__int128)Bl * j0 + a);
  if (out.L < 0) enum_error("tri flip: negative leading coefficient");
  return out;
}

GridState grid_seed(const Config& c) {
  return GridState{to_ll(c.L), to_ll(c.A), to_ll(c.B), to_ll(c.G)};
}

// Whether a cell offset from the flipped face is retained (unchanged) by the
// flip; the prune must witness a NEW small curvature, or rotation around one
// fixed small circle never terminates.
bool flip_retains(Kind kind, long long di, long long dj, bool up) {
  if (kind == Kind::Square) return (di == 0 || di == 1) && (dj == 0 || dj == 1);
  if (up)
    return (di == 0 && dj == 0) || (di == 1 && dj == 0) || (di == 0 && dj == 1);
  return (di == 1 && dj == 0) || (di == 0 && dj == 1) || (di == 1 && dj == 1);
}

// Near-face prune: accept the child of a flip at (i0, j0) iff some newly
// produced curvature within the ring radius of the face is <= N.
bool flip_accept(Kind kind, const GridState& child, long long i0, long long j0,
                 bool up, long long N, int ring) {
  for (long long di = -ring; di <= ring + 1; ++di)
    for (long long dj = -ring; dj <= ring + 1; ++dj) {
      if (flip_retains(kind, di, dj, up)) continue;
      if (grid_value(kind, child, i0 + di, j0 + dj) <= N) return true;
    }
  return false;
}

// Records all cell values of the state <= N and tries candidate faces.
template <class TryFace>
void grid_visit(Kind kind, const GridState& g, long long N, int ring,
                Presence& pres, const TryFace& try_face) {
  if (g.L == 0) {
    // constant grid: one value; flips at a single representative face
    ++pres.circles_visited;
    pres.set(g.G);
    try_face(0, 0);
    return;
  }
  long long ilo, ihi;
  if (!grid_ranges(kind, g, N, ilo, ihi)) return;
  for (long long i = ilo; i <= ihi; ++i) {
    long long jlo, jhi;
    if (!grid_jrange(kind, g, N, i, jlo, jhi)) continue;
    for (long long j = jlo; j <= jhi; ++j) {
      long long v = grid_value(kind, g, i, j);
      ++pres.circles_visited;
      pres.set(v);
    }
  }
  // candidate flips: faces whose cells touch the bounded region (expanded by
  // the ring radius); a face at (i,j) touches cells in rows i and i+1, so the
  // j-range is the union over the two nearest in-bound rows
  long long pad = ring;
  for (long long i = ilo - pad; i <= ihi + pad; ++i) {
    long long j1lo, j1hi, j2lo, j2hi;
    bool ok1 = grid_jrange(kind, g, N, std::clamp(i, ilo, ihi), j1lo, j1hi);
    bool ok2 = grid_jrange(kind, g, N, std::clamp(i + 1, ilo, ihi), j2lo, j2hi);
    if (!ok1 && !ok2) continue;
    long long jlo = ok1 ? (ok2 ? std::min(j1lo, j2lo) : j1lo) : j2lo;
    long long jhi = ok1 ? (ok2 ? std::max(j1hi, j2hi) : j1hi) : j2hi;
    for (long long j = jlo - pad; j <= jhi + pad; ++j) try_face(i, j);
  }
}

Presence grid_bfs(const Config& c, long long N, const EnumOptions& opt) {
  Presence pres(N);
  GridState seed = grid_seed(c);
  std::unordered_set<GridKey, GridKeyHash> visited;
  std::deque<GridState> queue;
  auto push_state = [&](const GridState& g) {
    GridState n = grid_normalize(c.kind, g);
    GridKey key{{n.L, n.A, n.B, n.G}};
    if (visited.size() >= opt.max_states) enum_error("state cap exceeded");
    if (visited.insert(key).second) queue.push_back(n);
  };
  push_state(seed);
  while (!queue.empty()) {
    GridState g = queue.front();
    queue.pop_front();
    auto try_face = [&](long long i, long long j) {
      if (c.kind == Kind::Square) {
        GridState child = sq_flip(g, i, j);
        if (flip_accept(c.kind, child, i, j, true, N, opt.ring))
          push_state(child);
      } else {
        GridState u = tri_flip(g, i, j, true);
        if (flip_accept(c.kind, u, i, j, true, N, opt.ring)) push_state(u);
        GridState d = tri_flip(g, i, j, false);
        if (flip_accept(c.kind, d, i, j, false, N, opt.ring)) push_state(d);
      }
    };
    grid_visit(c.kind, g, N, opt.ring, pres, try_face);
  }
  return pres;
}

}  // namespace

// ---- fast enumerator --------------------------------------------------------

Presence enumerate_curvatures(const Config& c, long long N,
                              const EnumOptions& opt) {
  if (N < 1) enum_error("N must be >= 1");
  if (c.kind == Kind::Square || c.kind == Kind::Tri) return grid_bfs(c, N, opt);
  Config root = reduce_root(c);
  Presence pres(N);
  if (c.kind == Kind::Oct) {
    OctState s;
    for (int i = 0; i < 6; ++i) s.t[i] = to_ll(root.t[i]);
    s.w = to_ll(root.w);
    s.last = -1;
    // breadth-first warmup to build a parallel frontier
    std::vector<OctState> frontier{s};
    oct_record(s, pres);
    for (int level = 0; level < 6 && frontier.size() < 64; ++level) {
      std::vector<OctState> next;
      for (auto& st : frontier) oct_expand(st, N, next);
      if (next.empty()) break;
      for (auto& st : next) oct_record(st, pres);
      frontier = std::move(next);
    }
    std::vector<Presence> locals;
#pragma omp parallel num_threads(thread_count(opt))
    {
      Presence local(N);
#pragma omp for schedule(dynamic, 1)
      for (long long idx = 0; idx < (long long)frontier.size(); ++idx) {
        std::vector<OctState> stack;
        oct_expand(frontier[idx], N, stack);
        dfs_worklist(stack, local,
                     [&](const OctState& st, std::vector<OctState>& out,
                         Presence& p) {
                       oct_record(st, p);
                       oct_expand(st, N, out);
                     },
                     opt.max_states);
      }
#pragma omp critical
      locals.push_back(std::move(local));
    }
    for (auto& l : locals) {
      for (std::size_t i = 0; i < pres.words.size(); ++i)
        pres.words[i] |= l.words[i];
      pres.circles_visited += l.circles_visited;
    }
    return pres;
  }
  // cube
  CubeState s;
  for (int i = 0; i < 8; ++i) s.t[i] = to_ll(root.t[i]);
  s.w = to_ll(root.w);
  s.last = -1;
  std::vector<CubeState> frontier{s};
  cube_record(s, pres);
  for (int level = 0; level < 6 && frontier.size() < 64; ++level) {
    std::vector<CubeState> next;
    for (auto& st : frontier) cube_expand(st, N, next);
    if (next.empty()) break;
    for (auto& st : next) cube_record(st, pres);
    frontier = std::move(next);
  }
  std::vector<Presence> locals;
#pragma omp parallel num_threads(thread_count(opt))
  {
    Presence local(N);
#pragma omp for schedule(dynamic, 1)
    for (long long idx = 0; idx < (long long)frontier.size(); ++idx) {
      std::vector<CubeState> stack;
      cube_expand(frontier[idx], N, stack);
      dfs_worklist(stack, local,
                   [&](const CubeState& st, std::vector<CubeState>& out,
                       Presence& p) {
                     cube_record(st, p);
                     cube_expand(st, N, out);
                   },
                   opt.max_states);
    }
#pragma omp critical
    locals.push_back(std::move(local));
  }
  for (auto& l : locals) {
    for (std::size_t i = 0; i < pres.words.size(); ++i) pres.words[i] |= l.words[i];
    pres.circles_visited += l.circles_visited;
  }
  return pres;
}

// ---- serial reference -------------------------------------------------------

Presence enumerate_reference(const Config& c, long long N,
                             const EnumOptions& opt) {
  if (N < 1) enum_error("N must be >= 1");
  Presence pres(N);
  Int bigN((long)N);
  if (c.kind == Kind::Oct || c.kind == Kind::Cube) {
    std::set<std::array<Int, 4>> visited;
    std::deque<Config> queue;
    auto record = [&](const Config& cfg) {
      for (auto& v : cfg.t) {
        ++pres.circles_visited;
        if (v >= 1 && v <= bigN) pres.set(v.get_si());
      }
    };
    Config root = reduce_root(c);
    visited.insert(canonical_key(root));
    queue.push_back(root);
    record(root);
    while (!queue.empty()) {
      Config cur = queue.front();
      queue.pop_front();
      for (auto& f : faces(cur)) {
        Config child = apply_generator(cur, f);
        if (child.w <= cur.w) continue;
        Int mn = child.t[0];
        for (auto& v : child.t) mn = std::min(mn, v);
        if (mn > bigN) continue;
        if (visited.size() >= opt.max_states) enum_error("state cap exceeded");
        if (visited.insert(canonical_key(child)).second) {
          record(child);
          queue.push_back(child);
        }
      }
    }
    return pres;
  }
  // grids: exact BFS over canonical keys with window scans sized from L
  std::set<std::array<Int, 4>> visited;
  std::deque<Config> queue;
  auto record = [&](const Config& cfg) {
    GridState g = grid_seed(cfg);
    if (g.L == 0) {
      ++pres.circles_visited;
      pres.set(g.G);
      return;
    }
    long long ilo, ihi;
    if (!grid_ranges(cfg.kind, g, N, ilo, ihi)) return;
    for (long long i = ilo; i <= ihi; ++i) {
      long long jlo, jhi;
      if (!grid_jrange(cfg.kind, g, N, i, jlo, jhi)) continue;
      for (long long j = jlo; j <= jhi; ++j) {
        ++pres.circles_visited;
        pres.set(grid_value(cfg.kind, g, i, j));
      }
    }
  };
  int ring = opt.ring + 2;  // widened assertion-mode ring for the reference
  auto push = [&](const Config& cfg) {
    if (visited.size() >= opt.max_states) enum_error("state cap exceeded");
    if (visited.insert(canonical_key(cfg)).second) {
      record(cfg);
      queue.push_back(cfg);
    }
  };
  push(c);
  while (!queue.empty()) {
    Config cur = queue.front();
    queue.pop_front();
    GridState g = grid_seed(cur);
    auto flip_at = [&](long long i, long long j) {
      if (cur.kind == Kind::Square) {
        Config child = apply_generator(cur, FaceId{0, i, j});
        if (flip_accept(cur.kind, grid_seed(child), i, j, true, N, ring))
          push(child);
      } else {
        Config u = apply_generator(cur, FaceId{0, i, j, true});
        if (flip_accept(cur.kind, grid_seed(u), i, j, true, N, ring)) push(u);
        Config d = apply_generator(cur, FaceId{0, i, j, false});
        if (flip_accept(cur.kind, grid_seed(d), i, j, false, N, ring)) push(d);
      }
    };
    if (g.L == 0) {
      flip_at(0, 0);  // constant grid: all faces are translation-equivalent
      continue;
    }
    long long ilo, ihi;
    if (!grid_ranges(cur.kind, g, N, ilo, ihi)) continue;
    long long pad = ring;
    for (long long i = ilo - pad; i <= ihi + pad; ++i) {
      long long j1lo, j1hi, j2lo, j2hi;
      bool ok1 = grid_jrange(cur.kind, g, N, std::clamp(i, ilo, ihi), j1lo, j1hi);
      bool ok2 =
          grid_jrange(cur.kind, g, N, std::clamp(i + 1, ilo, ihi), j2lo, j2hi);
      if (!ok1 && !ok2) continue;
      long long jlo = ok1 ? (ok2 ? std::min(j1lo, j2lo) : j1lo) : j2lo;
      long long jhi = ok1 ? (ok2 ? std::max(j1hi, j2hi) : j1hi) : j2hi;
      for (long long j = jlo - pad; j <= jhi + pad; ++j) flip_at(i, j);
    }
  }
  return pres;
}

// ---- oracle -----------------------------------------------------------------

Presence oracle_enumerate(const Config& c, long long N, int depth, long margin,
                          long radius) {
  Presence pres(N);
  long long cap = margin * N;
  if (c.kind == Kind::Oct || c.kind == Kind::Cube) {
    // unpruned word closure over checked 64-bit tuples; a child survives only
    // when its smallest absolute value is within the margin of the bound
    struct TS {
      std::array<long long, 8> t;  // trailing entries unused for oct
      long long w;
      int n;
    };
    struct TSH {
      std::size_t operator()(const std::array<long long, 9>& k) const {
        std::uint64_t h = 0;
        for (long long x : k) {
          h ^= (std::uint64_t)x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
          h *= 0xff51afd7ed558ccdull;
        }
        return (std::size_t)h;
      }
    };
    TS root{};
    root.n = c.kind == Kind::Oct ? 6 : 8;
    for (int i = 0; i < root.n; ++i) root.t[i] = to_ll(c.t[i]);
    root.w = to_ll(c.w);
    auto key = [](const TS& s) {
      std::array<long long, 9> k{};
      for (int i = 0; i < s.n; ++i) k[i] = s.t[i];
      k[8] = s.w;
      return k;
    };
    auto min_abs = [](const TS& s) {
      long long m = std::abs(s.t[0]);
      for (int i = 1; i < s.n; ++i) m = std::min(m, std::abs(s.t[i]));
      return m;
    };
    auto record = [&](const TS& s) {
      for (int i = 0; i < s.n; ++i) pres.set(s.t[i]);
    };
    std::unordered_set<std::array<long long, 9>, TSH> seen;
    std::deque<std::pair<TS, int>> queue;
    seen.insert(key(root));
    queue.push_back({root, 0});
    record(root);
    while (!queue.empty()) {
      auto [cur, d] = queue.front();
      queue.pop_front();
      if (d >= depth) continue;
      auto consider = [&](const TS& child) {
        if (min_abs(child) > cap) return;
        if (seen.insert(key(child)).second) {
          record(child);
          queue.push_back({child, d + 1});
        }
      };
      if (c.kind == Kind::Oct) {
        for (int m = 0; m < 8; ++m) {
          int s0 = (m & 1) ? 5 : 0, s1 = (m & 2) ? 4 : 1, s2 = (m & 4) ? 3 : 2;
          TS child = cur;
          child.w =
              chk((__int128)2 * (cur.t[s0] + cur.t[s1] + cur.t[s2]) - cur.w);
          for (int k2 : {s0, s1, s2})
            child.t[5 - k2] = chk((__int128)2 * child.w - cur.t[k2]);
          consider(child);
        }
      } else {
        for (int f = 0; f < 6; ++f) {
          const int* fc = kCubeFaceTable[f];
          TS child = cur;
          child.w = chk((__int128)4 * (cur.t[fc[0]] + cur.t[fc[2]]) - cur.w);
          for (int k2 = 0; k2 < 4; ++k2)
            child.t[kCubeAnti[fc[k2]]] = chk((__int128)child.w - cur.t[fc[k2]]);
          consider(child);
        }
      }
    }
    return pres;
  }
  // grids: raw coefficient states, window flips around the minimizer cell,
  // ellipse scans for recording
  struct GSH {
    std::size_t operator()(const std::array<long long, 4>& k) const {
      std::uint64_t h = 0;
      for (long long x : k) {
        h ^= (std::uint64_t)x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
      }
      return (std::size_t)h;
    }
  };
  auto record = [&](const GridState& g) {
    if (g.L == 0) {
      pres.set(g.G);
      return;
    }
    long long ilo, ihi;
    if (!grid_ranges(c.kind, g, N, ilo, ihi)) return;
    for (long long i = ilo; i <= ihi; ++i) {
      long long jlo, jhi;
      if (!grid_jrange(c.kind, g, N, i, jlo, jhi)) continue;
      for (long long j = jlo; j <= jhi; ++j) pres.set(grid_value(c.kind, g, i, j));
    }
  };
  std::unordered_set<std::array<long long, 4>, GSH> seen;
  std::deque<std::pair<GridState, int>> queue;
  GridState root = grid_seed(c);
  seen.insert({root.L, root.A, root.B, root.G});
  queue.push_back({root, 0});
  record(root);
  while (!queue.empty()) {
    auto [cur, d] = queue.front();
    queue.pop_front();
    if (d >= depth) continue;
    // flip window centered at the cell nearest the continuous minimizer
    long long oi = 0, oj = 0;
    if (cur.L != 0) {
      double ci, cj;
      grid_center(c.kind, cur, ci, cj);
      oi = (long long)std::floor(ci);
      oj = (long long)std::floor(cj);
    }
    auto consider = [&](const GridState& child) {
      if (grid_min(c.kind, child) > cap) return;
      if (seen.insert({child.L, child.A, child.B, child.G}).second) {
        record(child);
        queue.push_back({child, d + 1});
      }
    };
    for (long long i = oi - radius; i <= oi + radius; ++i)
      for (long long j = oj - radius; j <= oj + radius; ++j) {
        if (c.kind == Kind::Square) {
          consider(sq_flip(cur, i, j));
        } else {
          consider(tri_flip(cur, i, j, true));
          consider(tri_flip(cur, i, j, false));
        }
      }
  }
  return pres;
}

Presence oracle_stabilized(const Config& c, long long N, int max_depth) {
  // Fixed margin: states whose smallest curvature already exceeds N only
  // grow further from the bound; depth is the stabilization axis, with a
  // slowly widening grid window.
  const long margin = 1;
  int depth = 4;
  long radius = 4;
  Presence prev = oracle_enumerate(c, N, depth, margin, radius);
  while (depth < max_depth) {
    Presence next = oracle_enumerate(c, N, depth + 1, margin, radius + 2);
    if (next.same_bits(prev)) return next;
    prev = std::move(next);
    depth += 1;
    radius += 2;
  }
  enum_error("oracle did not stabilize");
}

// ---- coprime paths ----------------------------------------------------------

namespace {

// Fully coprime repaired segment [curv(u), ..., curv(v)], endpoints included.
std::vector<Int> repair_pair(const Config& c, const CircleId& u,
                             const CircleId& v, int depth) {
  Int a = curvature(c, u), b = curvature(c, v);
  if (a == 0 || b == 0) enum_error("coprime_path: zero curvature endpoint");
  if (gcd(a, b) == 1) return {a, b};
  if (depth <= 0) enum_error("coprime_path: repair depth exhausted");
  auto chain_ok = [](const std::vector<Int>& ch) {
    for (std::size_t i = 0; i < ch.size(); ++i) {
      if (ch[i] == 0) return false;
      if (i && gcd(ch[i - 1], ch[i]) != 1) return false;
    }
    return true;
  };
  // direct search for an insertion giving a fully coprime segment
  for (long k = 0; k <= 2048; ++k) {
    for (long sgn : {1, -1}) {
      if (k == 0 && sgn < 0) continue;
      auto vals = simultaneous_tangent(c, u, v, Int(sgn * k));
      std::vector<Int> chain{a};
      for (auto& x : vals) chain.push_back(x);
      chain.push_back(b);
      if (chain_ok(chain)) return chain;
    }
  }
  // lemma insertion, then recursive repair inside completed sub-configurations
  Insertion ins = coprime_insert(c, u, v);
  if (ins.inserted.size() == 1) {
    const Int& k = ins.inserted[0];
    Config sub;
    CircleId iu, ik, iv;
    if (c.kind == Kind::Oct) {
      sub = validate_config(Kind::Oct, {a, b, k});
      iu = CircleId::slot(0);
      iv = CircleId::slot(1);
      ik = CircleId::slot(2);
    } else {  // tri
      sub = validate_config(Kind::Tri, {a, b, k});
      iu = CircleId::cell(0, 0);
      iv = CircleId::cell(1, 0);
      ik = CircleId::cell(0, 1);
    }
    auto left = repair_pair(sub, iu, ik, depth - 1);
    auto right = repair_pair(sub, ik, iv, depth - 1);
    left.insert(left.end(), right.begin() + 1, right.end());
    return left;
  }
  const Int& k = ins.inserted[0];
  const Int& l = ins.inserted[1];
  Config sub;
  std::vector<CircleId> ids;
  if (c.kind == Kind::Cube) {
    auto two = cube_configs_from_face({a, k, l, b});
    if (two.empty()) enum_error("coprime_path: cube face completion failed");
    sub = two[0];
    ids = {CircleId::slot(0), CircleId::slot(1), CircleId::slot(2),
           CircleId::slot(3)};
  } else {  // square: cells (0,0)=a,(1,0)=b,(0,1)=k,(1,1)=l
    sub = validate_config(Kind::Square, {a, b, k, l});
    ids = {CircleId::cell(0, 0), CircleId::cell(0, 1), CircleId::cell(1, 1),
           CircleId::cell(1, 0)};
  }
  std::vector<Int> chain{curvature(sub, ids[0])};
  for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
    auto seg = repair_pair(sub, ids[i], ids[i + 1], depth - 1);
    chain.insert(chain.end(), seg.begin() + 1, seg.end());
  }
  return chain;
}

// Tangency path of circle ids inside one configuration.
std::vector<CircleId> id_path(const Config& c, const CircleId& from,
                              const CircleId& to) {
  if (from == to) return {from};
  if (c.kind == Kind::Oct || c.kind == Kind::Cube) {
    // BFS in the tuple graph
    auto slots = circle_slots(c);
    std::vector<int> prev(slots.size(), -1);
    std::deque<int> q{from.idx};
    prev[from.idx] = from.idx;
    while (!q.empty()) {
      int cur = q.front();
      q.pop_front();
      if (cur == to.idx) break;
      for (int nb = 0; nb < (int)slots.size(); ++nb)
        if (prev[nb] < 0 &&
            tangent_circles(c, CircleId::slot(cur), CircleId::slot(nb))) {
          prev[nb] = cur;
          q.push_back(nb);
        }
    }
    if (prev[to.idx] < 0) enum_error("coprime_path: no tangency path");
    std::vector<CircleId> out;
    for (int cur = to.idx; cur != from.idx; cur = prev[cur])
      out.push_back(CircleId::slot(cur));
    out.push_back(from);
    std::reverse(out.begin(), out.end());
    return out;
  }
  // lattice walk: axis steps (both are adjacencies in square and tri grids)
  std::vector<CircleId> out{from};
  long i = from.i, j = from.j;
  while (i != to.i) {
    i += to.i > i ? 1 : -1;
    out.push_back(CircleId::cell(i, j));
  }
  while (j != to.j) {
    j += to.j > j ? 1 : -1;
    out.push_back(CircleId::cell(i, j));
  }
  return out;
}

}  // namespace

Chain coprime_path(const Config& c, const CircleId& from, const CircleId& to) {
  auto ids = id_path(c, from, to);
  Chain chain;
  chain.curvatures.push_back(curvature(c, ids[0]));
  if (chain.curvatures[0] == 0) enum_error("coprime_path: zero curvature endpoint");
  for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
    auto seg = repair_pair(c, ids[i], ids[i + 1], 4);
    chain.curvatures.insert(chain.curvatures.end(), seg.begin() + 1, seg.end());
  }
  // machine-check the chain postconditions
  for (std::size_t i = 0; i < chain.curvatures.size(); ++i) {
    if (chain.curvatures[i] == 0) enum_error("coprime_path: zero in chain");
    if (i && gcd(chain.curvatures[i - 1], chain.curvatures[i]) != 1)
      enum_error("coprime_path: non-coprime step survived repair");
  }
  return chain;
}

}  // namespace pk
