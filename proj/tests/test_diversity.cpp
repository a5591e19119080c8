#include "doctest.h"

#include "oracle.hpp"
#include "pqml/corpus.hpp"
#include "pqml/diversity.hpp"
#include "pqml/gallery.hpp"

using namespace pqml;

namespace {

KripkeFrame disjoint_cliques() {
  std::vector<Edge> e;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) e.push_back({a, b});
  for (std::size_t a = 2; a < 5; ++a)
    for (std::size_t b = 2; b < 5; ++b) e.push_back({a, b});
  return KripkeFrame(5, e);
}

// Coidentity class {0,1,2} with no other worlds.
KripkeFrame coidentity3() { return KripkeFrame(3, {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}); }

}  // namespace

TEST_CASE("duplicate pairs") {
  KripkeFrame c = gallery::clique(4);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) CHECK(are_duplicates(c, a, b));
  CHECK_FALSE(are_duplicates(gallery::chain(2), 0, 1));
  KripkeFrame cy = gallery::cyclic(3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) CHECK(are_duplicates(cy, a, b) == (a == b));
}

TEST_CASE("duplicate structure examples") {
  auto k5 = duplicate_structure(gallery::k5_frame(1, 2));
  REQUIRE(k5.size() == 3);
  CHECK(k5.classes[0] == WorldSet(0b0001));
  CHECK(k5.classes[1] == WorldSet(0b0010));
  CHECK(k5.classes[2] == WorldSet(0b1100));

  auto id = duplicate_structure(gallery::identity(3));
  REQUIRE(id.size() == 1);
  CHECK(id.kinds[0] == LocalKind::Identity);

  auto cl = duplicate_structure(gallery::clique(4));
  REQUIRE(cl.size() == 1);
  CHECK(cl.kinds[0] == LocalKind::Full);

  auto co = duplicate_structure(coidentity3());
  REQUIRE(co.size() == 1);
  CHECK(co.kinds[0] == LocalKind::Coidentity);
  CHECK(to_string(LocalKind::Coidentity) == "coidentity");
}

TEST_CASE("diversity examples") {
  CHECK(diversity(gallery::cyclic(3)) == 3);
  CHECK(diversity(gallery::cyclic(4)) == 4);
  CHECK(diversity(gallery::clique(4)) == 1);
  CHECK(diversity(gallery::k5_frame(1, 2)) == 3);
  // The transposition of the two worlds of a 2-cycle is an automorphism.
  CHECK(diversity(gallery::cyclic(2)) == 1);
  for (std::size_t n = 3; n <= 8; ++n) CHECK(diversity(gallery::cyclic(n)) == n);
}

TEST_CASE("generated diversity examples") {
  CHECK(diversity(disjoint_cliques()) == 2);
  CHECK(diversity_generated(disjoint_cliques()) == 1);
  CHECK(diversity_generated(gallery::d45_point(3)) == 2);
  CHECK(diversity_generated(KripkeFrame(1, {})) == 1);
}

TEST_CASE("duplicates match the oracle and form an equivalence") {
  for (std::size_t n = 1; n <= 3; ++n) {
    corpus::for_each_frame(n, [&](const KripkeFrame& f) {
      oracle::Frame o = oracle::from(f);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) CHECK(are_duplicates(f, a, b) == oracle::duplicates(o, int(a), int(b)));
      CHECK(diversity(f) == std::size_t(oracle::diversity(o)));
    });
  }
  corpus::Rng rng(51);
  for (int rep = 0; rep < 300; ++rep) {
    std::size_t n = 1 + rng() % 7;
    // Sparse and dense frames both produce non-trivial classes.
    KripkeFrame f = corpus::random_frame(rng, n, rep % 2 ? 0.1 : 0.8);
    oracle::Frame o = oracle::from(f);
    auto ds = duplicate_structure(f);
    CHECK(ds.size() == std::size_t(oracle::diversity(o)));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        CHECK((ds.class_of[a] == ds.class_of[b]) == oracle::duplicates(o, int(a), int(b)));
  }
}

TEST_CASE("classes have one local kind and all-or-nothing quotient edges") {
  corpus::Rng rng(52);
  for (int rep = 0; rep < 300; ++rep) {
    std::size_t n = 1 + rng() % 7;
    KripkeFrame f = corpus::random_frame(rng, n, rep % 2 ? 0.15 : 0.85);
    auto ds = duplicate_structure(f);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      CHECK(ds.representative(i) == ds.classes[i].first());
      for (std::size_t j = 0; j < ds.size(); ++j) {
        if (i == j) continue;
        std::size_t edges = 0;
        ds.classes[i].for_each([&](std::size_t a) { edges += (f.successors(a) & ds.classes[j]).count(); });
        std::size_t all = ds.classes[i].count() * ds.classes[j].count();
        CHECK((edges == 0 || edges == all));
        CHECK(ds.quotient_related(i, j) == (edges == all));
      }
    }
  }
}

TEST_CASE("quotient m_diamond matches the direct operator") {
  for (std::size_t n = 1; n <= 3; ++n) {
    corpus::for_each_frame(n, [&](const KripkeFrame& f) {
      auto ds = duplicate_structure(f);
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
        CHECK(m_diamond_quotient(ds, f, WorldSet(x)) == f.m_diamond(WorldSet(x)));
    });
  }
  corpus::Rng rng(53);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = 4 + rng() % 3;
    KripkeFrame f = corpus::random_frame(rng, n, rep % 3 == 0 ? 0.1 : rep % 3 == 1 ? 0.5 : 0.9);
    auto ds = duplicate_structure(f);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
      CHECK(m_diamond_quotient(ds, f, WorldSet(x)) == f.m_diamond(WorldSet(x)));
  }
}

TEST_CASE("quotient m_diamond per local kind") {
  KripkeFrame c = gallery::clique(3);
  auto dc = duplicate_structure(c);
  CHECK(m_diamond_quotient(dc, c, WorldSet(0b010)) == WorldSet(0b111));

  KripkeFrame co = coidentity3();
  auto dco = duplicate_structure(co);
  CHECK(m_diamond_quotient(dco, co, WorldSet(0b001)) == WorldSet(0b110));
  CHECK(m_diamond_quotient(dco, co, WorldSet(0b011)) == WorldSet(0b111));

  KripkeFrame id = gallery::identity(3);
  auto did = duplicate_structure(id);
  CHECK(m_diamond_quotient(did, id, WorldSet(0b101)) == WorldSet(0b101));
}

TEST_CASE("quotient DOT output") {
  KripkeFrame f = gallery::k5_frame(1, 2);
  std::string dot = quotient_to_dot(duplicate_structure(f), f);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("full") != std::string::npos);
}
