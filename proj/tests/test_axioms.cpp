#include "doctest.h"

#include "oracle.hpp"
#include "pqml/axioms.hpp"
#include "pqml/corpus.hpp"
#include "pqml/diversity.hpp"
#include "pqml/errors.hpp"
#include "pqml/gallery.hpp"
#include "pqml/parser.hpp"
#include "pqml/semantics.hpp"

using namespace pqml;

namespace {

Var P(std::uint32_t i) { return Var{i}; }

bool reflexive(const KripkeFrame& f) {
  for (std::size_t w = 0; w < f.size(); ++w)
    if (!f.related(w, w)) return false;
  return true;
}

bool euclidean(const KripkeFrame& f) {
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = 0; b < f.size(); ++b)
      for (std::size_t c = 0; c < f.size(); ++c)
        if (f.related(a, b) && f.related(a, c) && !f.related(b, c)) return false;
  return true;
}

bool transitive(const KripkeFrame& f) {
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = 0; b < f.size(); ++b)
      for (std::size_t c = 0; c < f.size(); ++c)
        if (f.related(a, b) && f.related(b, c) && !f.related(a, c)) return false;
  return true;
}

bool serial(const KripkeFrame& f) {
  for (std::size_t a = 0; a < f.size(); ++a)
    if (f.successors(a).empty()) return false;
  return true;
}

std::size_t max_out_degree(const KripkeFrame& f) {
  std::size_t m = 0;
  for (std::size_t a = 0; a < f.size(); ++a) m = std::max(m, f.successors(a).count());
  return m;
}

}  // namespace

TEST_CASE("generator examples") {
  CHECK(axioms::q_n(0, parse("p0")) == parse("p0 & A p1. (p0 -> p1) | (p0 -> ~p1)"));
  CHECK(axioms::bc(P(0), parse("<>p0")) == parse("(<>E p0. <>p0) -> E p0. <><>p0"));
  CHECK(axioms::trs_m(0) == parse("p0 -> (p0 | <>p0)"));
  CHECK(axioms::k() == parse("[](p0 -> p1) -> ([]p0 -> []p1)"));
  CHECK(axioms::five() == parse("<>p0 -> []<>p0"));
  CHECK(axioms::t() == parse("[]p0 -> p0"));
  CHECK(axioms::m_ax() == parse("[]<>p0 -> <>[]p0"));
  CHECK(axioms::q_vb() == parse("(<>p0 & [](p0 -> []p0)) -> p0"));
  CHECK(axioms::diamond_collapse(1) == parse("<><>p0 -> (p0 | <>p0)"));
  CHECK(axioms::phi1() == parse("[](<>p0 -> []<>p0)"));
  CHECK(axioms::phi2() == parse("<><>p0 -> []<>p0"));
  // The quantified variable of q_n avoids the free variables of phi.
  CHECK(axioms::q_n(1, parse("p1")).free_vars() == std::vector<Var>{P(1)});
  for (int n = 0; n <= 2; ++n) {
    CHECK(axioms::at_n(n).free_vars().empty());
    CHECK(axioms::r_n(n).free_vars().empty());
    CHECK(axioms::world_proposition(n).free_vars().empty());
  }
  CHECK(axioms::successor_formula().free_vars().empty());
}

TEST_CASE("axiom lookup by name") {
  for (const auto& name : axiom_names()) {
    CAPTURE(name);
    SchemaInstance s = axiom_by_name(name);
    CHECK(s.name == name);
    CHECK(parse(print(s.formula)) == s.formula);
  }
  CHECK(axiom_by_name("at", 2).formula == axioms::at_n(2));
  CHECK(axiom_by_name("bc", std::nullopt, parse("<>p0")).formula == axioms::bc(P(0), parse("<>p0")));
  CHECK_FALSE(axiom_by_name("at", 1).notes.empty());
  CHECK_THROWS_AS(axiom_by_name("nope"), PreconditionError);
  CHECK_THROWS_AS(axiom_by_name("at", -1), PreconditionError);
}

TEST_CASE("Sahlqvist classifier") {
  for (std::string s : {"[]p0 -> p0", "<>p0 -> []<>p0", "[](<>p0 -> []<>p0)", "<><>p0 -> []<>p0",
                        "p0", "~<>[]p0 | []p1", "<><>p0 -> <>p0"}) {
    CAPTURE(s);
    CHECK(sahlqvist_check(parse(s)).is_sahlqvist);
  }
  auto mck = sahlqvist_check(parse("[]<>p0 -> <>[]p0"));
  CHECK_FALSE(mck.is_sahlqvist);
  CHECK_FALSE(mck.trace.empty());
  // The antecedent [](p0 -> p1) is not built from boxed atoms and negative parts.
  CHECK_FALSE(sahlqvist_check(axioms::k()).is_sahlqvist);
  CHECK_THROWS_AS(sahlqvist_check(parse("E p0. p0")), PreconditionError);
}

TEST_CASE("polarity") {
  auto pos = positive_negative_occurrence(parse("p0"), P(0));
  CHECK(pos.positive);
  CHECK_FALSE(pos.negative);
  auto neg = positive_negative_occurrence(parse("~p0"), P(0));
  CHECK_FALSE(neg.positive);
  CHECK(neg.negative);
  auto both = positive_negative_occurrence(parse("p0 -> p0"), P(0));
  CHECK(both.positive);
  CHECK(both.negative);
  auto none = positive_negative_occurrence(parse("p1"), P(0));
  CHECK_FALSE(none.positive);
  CHECK_FALSE(none.negative);
  CHECK(is_positive(parse("[]p0 & <>p1")));
  CHECK(is_negative(parse("~<>p0")));
  CHECK_FALSE(is_positive(parse("[]p0 -> p0")));
}

TEST_CASE("frame correspondences, exhaustive up to three worlds") {
  for (std::size_t n = 1; n <= 3; ++n) {
    corpus::for_each_frame(n, [&](const KripkeFrame& f) {
      CHECK(valid_on_kripke(axioms::t(), f).valid == reflexive(f));
      CHECK(valid_on_kripke(axioms::five(), f).valid == euclidean(f));
      CHECK(valid_on_kripke(parse("<><>p0 -> <>p0"), f).valid == transitive(f));
      CHECK(valid_on_kripke(axioms::d45(), f).valid == (serial(f) && transitive(f) && euclidean(f)));
      for (int k = 1; k <= 2; ++k) CHECK(valid_on_kripke(axioms::alt_bounded(k), f).valid == (max_out_degree(f) <= std::size_t(k)));
      CHECK(valid_on_kripke(axioms::trs_m(1), f).valid);
    });
  }
}

TEST_CASE("library validity agrees with the oracle") {
  corpus::Rng rng(71);
  for (int rep = 0; rep < 60; ++rep) {
    KripkeFrame f = corpus::random_frame(rng, 1 + rng() % 3);
    oracle::Frame o = oracle::from(f);
    for (const Formula& a : {axioms::five(), axioms::m_ax(), axioms::e_ax(), axioms::q_vb(), axioms::phi1()})
      CHECK(valid_on_kripke(a, f).valid == oracle::valid(a, o));
  }
}

TEST_CASE("quantified axioms hold on small Kripke frames") {
  for (std::size_t n = 1; n <= 2; ++n) {
    corpus::for_each_frame(n, [&](const KripkeFrame& f) {
      for (int k = 0; k <= 2; ++k) {
        CHECK(valid_on_kripke(axioms::at_n(k), f).valid);
        CHECK(valid_on_kripke(axioms::r_n(k), f).valid);
        CHECK(valid_on_kripke(axioms::world_proposition(k), f).valid);
      }
      CHECK(valid_on_kripke(axioms::successor_formula(), f).valid);
    });
  }
  corpus::Rng rng(72);
  for (int rep = 0; rep < 10; ++rep) {
    KripkeFrame f = corpus::random_frame(rng, 3);
    CHECK(valid_on_kripke(axioms::at_n(1), f).valid);
    CHECK(valid_on_kripke(axioms::r_n(1), f).valid);
  }
}

TEST_CASE("world propositions on coarse families") {
  // With only {} and W admissible, W itself is maximally specific.
  KripkeFrame ab({"a", "b"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  GeneralFrame coarse(ab, AdmissibleFamily::of(2, {WorldSet(), WorldSet::full(2)}));
  CHECK(valid_on_general(axioms::world_proposition(1), coarse).valid);
  CHECK(valid_on_general(axioms::world_proposition(1), GeneralFrame::full(ab)).valid);
}

TEST_CASE("gallery frames and their axioms") {
  KripkeFrame k5 = gallery::k5_frame(1, 2);
  CHECK(valid_on_kripke(axioms::five(), k5).valid);
  CHECK(euclidean(k5));

  for (std::size_t k = 1; k <= 4; ++k) {
    KripkeFrame d = gallery::d45_point(k);
    CHECK(serial(d));
    CHECK(transitive(d));
    CHECK(euclidean(d));
    CHECK(valid_on_kripke(axioms::d45(), d).valid);
  }

  for (std::size_t b = 1; b <= 2; ++b)
    for (std::size_t a = 1; a <= 2; ++a)
      for (std::size_t c = 0; c <= 1; ++c) {
        KripkeFrame d = gallery::div4_frame(b, a, c);
        CAPTURE(b);
        CAPTURE(a);
        CAPTURE(c);
        CHECK(valid_on_kripke(axioms::phi1(), d).valid);
        CHECK(valid_on_kripke(axioms::phi2(), d).valid);
        CHECK(diversity_generated(d) <= 4);
      }

  for (std::size_t n : {2, 3, 4}) {
    KripkeFrame e = gallery::euclid_window(n);
    CHECK(valid_on_kripke(axioms::successor_formula(), e).valid);
  }
}

TEST_CASE("bounded diversity validates the diamond collapse") {
  corpus::Rng rng(73);
  int hits = 0;
  for (int rep = 0; rep < 300; ++rep) {
    KripkeFrame f = rep % 3 == 0 ? gallery::d45_point(1 + rng() % 4) : corpus::random_frame(rng, 1 + rng() % 6, 0.3);
    std::size_t d = diversity_generated(f);
    for (int n = int(d); n <= int(d) + 1; ++n) {
      CHECK(valid_on_kripke(axioms::diamond_collapse(n), f).valid);
      ++hits;
    }
  }
  CHECK(hits == 600);
  // The collapse at depth 1 fails on a three-step chain, whose generated diversity is 3.
  CHECK_FALSE(valid_on_kripke(axioms::diamond_collapse(1), gallery::chain(3)).valid);
}

TEST_CASE("bounded branching and depth bound the generated diversity") {
  // At most k successors and collapse at depth m: at most 1 + k + ... + k^m classes.
  corpus::Rng rng(74);
  int checked = 0;
  for (int rep = 0; rep < 400; ++rep) {
    KripkeFrame f = corpus::random_frame(rng, 1 + rng() % 4, 0.25);
    for (int k = 1; k <= 2; ++k)
      for (int m = 0; m <= 2; ++m) {
        if (!valid_on_kripke(axioms::alt_bounded(k), f).valid) continue;
        if (!valid_on_kripke(axioms::diamond_collapse(m), f).valid) continue;
        std::size_t bound = 0, power = 1;
        for (int i = 0; i <= m; ++i, power *= std::size_t(k)) bound += power;
        CHECK(diversity_generated(f) <= bound);
        ++checked;
      }
  }
  CHECK(checked > 50);
}
