// Enumeration tests: oracle equivalence at moderate bound, agreement of the
// fast and reference enumerators, determinism across thread counts, modular
// conformance of present curvatures, and coprime-path postconditions.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pk/enumerate.hpp"
#include "rows.hpp"

using namespace pk;
using pk_testdata::row_config;
using pk_testdata::rows;

namespace {

std::vector<long long> bits_of(const Presence& p) {
  std::vector<long long> out;
  for (long long v = 1; v <= p.N; ++v)
    if (p.test(v)) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("fast enumerator matches the stabilized oracle at N = 2000") {
  for (const auto& r : rows()) {
    Config c = row_config(r);
    CAPTURE(r.type);
    Presence fast = enumerate_curvatures(c, 2000);
    Presence oracle = oracle_stabilized(c, 2000);
    CHECK(fast.same_bits(oracle));
  }
}

TEST_CASE("fast enumerator matches the serial reference at N = 20000") {
  for (const auto& r : rows()) {
    Config c = row_config(r);
    CAPTURE(r.type);
    Presence fast = enumerate_curvatures(c, 20000);
    Presence ref = enumerate_reference(c, 20000);
    CHECK(fast.same_bits(ref));
  }
}

TEST_CASE("enumeration is deterministic across thread counts") {
  for (const auto& r : rows()) {
    Config c = row_config(r);
    EnumOptions one, eight;
    one.threads = 1;
    eight.threads = 8;
    Presence a = enumerate_curvatures(c, 20000, one);
    Presence b = enumerate_curvatures(c, 20000, eight);
    CHECK(a.same_bits(b));
  }
}

TEST_CASE("present curvatures respect the modular type") {
  for (const auto& r : rows()) {
    Config c = row_config(r);
    ModularType mt = modular_type(c);
    Presence p = enumerate_curvatures(c, 50000);
    CHECK(p.count() > 0);
    for (long long v : bits_of(p))
      CHECK(mt.residues.count(v % mt.modulus) == 1);
  }
}

TEST_CASE("seed curvatures are present") {
  for (const auto& r : rows()) {
    Config c = row_config(r);
    Presence p = enumerate_curvatures(c, 2000);
    for (const Int& v : c.seed)
      if (v >= 1 && v <= 2000) CHECK(p.test(v.get_si()));
  }
}

TEST_CASE("coprime path endpoints, tangency repairs, and degenerate cases") {
  std::mt19937_64 rng(20240817);
  for (const auto& r : rows()) {
    Config c = row_config(r);
    std::vector<CircleId> ids;
    if (c.kind == Kind::Oct || c.kind == Kind::Cube) {
      ids = circle_slots(c);
    } else {
      for (long i = -2; i <= 2; ++i)
        for (long j = -2; j <= 2; ++j) ids.push_back(CircleId::cell(i, j));
    }
    // singleton path
    {
      CircleId u = ids[rng() % ids.size()];
      if (curvature(c, u) != 0) {
        Chain ch = coprime_path(c, u, u);
        CHECK(ch.curvatures.size() == 1);
        CHECK(ch.curvatures[0] == curvature(c, u));
      }
    }
    // random endpoint pairs
    for (int trial = 0; trial < 6; ++trial) {
      CircleId u = ids[rng() % ids.size()];
      CircleId v = ids[rng() % ids.size()];
      if (curvature(c, u) == 0 || curvature(c, v) == 0) continue;
      Chain ch = coprime_path(c, u, v);
      REQUIRE(ch.curvatures.size() >= 1);
      CHECK(ch.curvatures.front() == curvature(c, u));
      CHECK(ch.curvatures.back() == curvature(c, v));
      for (std::size_t i = 0; i < ch.curvatures.size(); ++i) {
        CHECK(ch.curvatures[i] != 0);
        if (i) CHECK(gcd(ch.curvatures[i - 1], ch.curvatures[i]) == 1);
      }
    }
  }
}

TEST_CASE("coprime path on an already-coprime tangent pair has length 2") {
  Config c = row_config(rows()[0]);  // oct (-7,16,16,18,18,41)
  // slots 1 and 2 carry 16 and 16 -- not coprime; slots 0 and 1 are -7, 16
  Chain ch = coprime_path(c, CircleId::slot(0), CircleId::slot(1));
  CHECK(ch.curvatures == std::vector<Int>{Int(-7), Int(16)});
}

TEST_CASE("coprime path repairs an even-even octahedral pair") {
  Config c = row_config(rows()[0]);
  REQUIRE(curvature(c, CircleId::slot(1)) == 16);
  REQUIRE(curvature(c, CircleId::slot(2)) == 18);
  REQUIRE(tangent_circles(c, CircleId::slot(1), CircleId::slot(2)));
  Chain ch = coprime_path(c, CircleId::slot(1), CircleId::slot(2));
  CHECK(ch.curvatures.size() >= 3);
  CHECK(ch.curvatures.front() == 16);
  CHECK(ch.curvatures.back() == 18);
}

TEST_CASE("presence counts are monotone in the bound") {
  Config c = row_config(rows()[4]);  // oct (-1,2,2,4,4,7)
  Presence small = enumerate_curvatures(c, 1000);
  Presence large = enumerate_curvatures(c, 4000);
  for (long long v : bits_of(small)) CHECK(large.test(v));
  CHECK(large.count() >= small.count());
}
