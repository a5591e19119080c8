#include "doctest.h"

#include "pqml/corpus.hpp"
#include "pqml/diversity.hpp"
#include "pqml/errors.hpp"
#include "pqml/gallery.hpp"
#include "pqml/parser.hpp"

using namespace pqml;

TEST_CASE("cyclic and clique constructors") {
  KripkeFrame c = gallery::cyclic(4);
  CHECK(c.size() == 4);
  CHECK(c.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(diversity(c) == 4);
  CHECK(gallery::clique(3).edges().size() == 9);
  CHECK(gallery::identity(3).edges() == std::vector<Edge>{{0, 0}, {1, 1}, {2, 2}});
  CHECK(gallery::chain(3).edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("rooted constructors") {
  KripkeFrame d = gallery::d45_point(3);
  CHECK(d.size() == 4);
  CHECK(d.name(0) == "r");
  CHECK(d.successors(0) == WorldSet(0b1110));
  CHECK(diversity_generated(d) == 2);

  KripkeFrame k = gallery::k5_frame(1, 2);
  CHECK(k.size() == 4);
  CHECK(k.successors(0) == WorldSet(0b0010));
  for (std::size_t w = 1; w < 4; ++w) CHECK(k.successors(w) == WorldSet(0b1110));

  KripkeFrame v = gallery::div4_frame(1, 2, 1);
  // r, a0, a1, b0, c0
  REQUIRE(v.size() == 5);
  auto a0 = *v.find("a0"), b0 = *v.find("b0"), c0 = *v.find("c0");
  CHECK(v.related(0, a0));
  CHECK(v.related(a0, b0));
  CHECK(v.related(b0, c0));
  CHECK(v.related(c0, b0));
  CHECK_FALSE(v.related(a0, c0));
  CHECK_FALSE(v.related(0, b0));
}

TEST_CASE("windows") {
  KripkeFrame r = gallery::recession_window(-3, 3);
  REQUIRE(r.size() == 7);
  for (std::size_t a = 0; a < 7; ++a)
    for (std::size_t b = 0; b < 7; ++b) {
      int n = std::stoi(r.name(a)), m = std::stoi(r.name(b));
      CHECK(r.related(a, b) == (m >= n - 1));
    }
  CHECK(r.name(0) == "-3");

  KripkeFrame e = gallery::euclid_window(4);
  CHECK(e.size() == 6);
  auto w = *e.find("w");
  CHECK(e.successors(w) == WorldSet(0b10101));
}

TEST_CASE("gallery ids") {
  for (const auto& id : gallery_ids()) {
    CAPTURE(id);
    GalleryEntry e = gallery_entry(id);
    CHECK(e.id == id);
    CHECK_FALSE(e.note.empty());
    CHECK(e.frame.admissible().is_powerset());
  }
  CHECK(gallery_entry("cyclic:5").frame.size() == 5);
  CHECK(gallery_entry("recession:-2:2").frame.size() == 5);
  CHECK(gallery_entry("euclid:3").note.find("window") != std::string::npos);
  CHECK_THROWS_AS(gallery_entry("moebius:3"), PreconditionError);
  CHECK_THROWS_AS(gallery_entry("cyclic:0"), PreconditionError);
  CHECK_THROWS_AS(gallery_entry("cyclic:x"), PreconditionError);
  CHECK_THROWS_AS(gallery_entry("clique:65"), PreconditionError);
}

TEST_CASE("shift isomorphism examples") {
  auto r = shift_isomorphism_check(-8, 8, 1, 0, 2, parse("<>p0"), {{Var{0}, {1}}});
  CHECK(r.passed);
  CHECK(r.isomorphic);
  CHECK(r.truth_at_n == r.truth_at_m);
  CHECK(r.truth_at_n);

  auto same = shift_isomorphism_check(-8, 8, 1, 3, 3, parse("<>p0 & ~p0"), {{Var{0}, {2, 4}}});
  CHECK(same.passed);

  // Depth zero compares the shifted valuations propositionally.
  auto prop = shift_isomorphism_check(-8, 8, 0, 0, 5, parse("p0 | ~p1"), {{Var{0}, {0}}, {Var{1}, {}}});
  CHECK(prop.passed);
  CHECK(prop.truth_at_n);

  auto tight = shift_isomorphism_check(-3, 3, 2, 0, 2, parse("<>p0"), {});
  CHECK_FALSE(tight.passed);
  CHECK(tight.window_too_small);

  CHECK_THROWS_AS(shift_isomorphism_check(-8, 8, 0, 0, 2, parse("<>p0"), {}), PreconditionError);
}

TEST_CASE("shift isomorphism over a random corpus") {
  corpus::Rng rng(81);
  int checked = 0;
  for (int d = 0; d <= 2; ++d) {
    corpus::FormulaShape shape{2, d, 1, 8};
    for (int rep = 0; rep < 30; ++rep) {
      Formula phi = corpus::random_formula(rng, shape);
      std::vector<std::pair<Var, int>> offsets;
      for (Var p : phi.free_vars())
        for (int off = -d; off <= 2; ++off)
          if (rng() % 2) offsets.push_back({p, off});
      for (int n = -5; n <= 5; n += 5) {
        int m = n + int(rng() % 5) - 2;
        // Valuations are absolute positions; place the pattern around n.
        std::map<Var, std::vector<int>> val;
        for (auto [p, off] : offsets) val[p].push_back(n + off);
        auto r = shift_isomorphism_check(-10, 10, d, n, m, phi, val);
        CAPTURE(print(phi));
        CHECK(r.passed);
        ++checked;
      }
    }
  }
  CHECK(checked == 270);
}
