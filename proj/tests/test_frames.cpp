#include "doctest.h"

#include "oracle.hpp"
#include "pqml/corpus.hpp"
#include "pqml/errors.hpp"
#include "pqml/frame.hpp"
#include "pqml/frame_io.hpp"
#include "pqml/gallery.hpp"
#include "pqml/kernels.hpp"

using namespace pqml;

namespace {

KripkeFrame chain01() { return KripkeFrame(2, {{0, 1}}); }
KripkeFrame clique_ab() { return KripkeFrame({"a", "b"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}); }
WorldSet S(std::initializer_list<std::size_t> ws) {
  WorldSet x;
  for (auto w : ws) x = x.with(w);
  return x;
}

// {r} u W with r seeing W and W x W, W = {1, 2, 3}.
KripkeFrame rooted_clique() {
  std::vector<Edge> e;
  for (std::size_t a = 1; a <= 3; ++a) {
    e.push_back({0, a});
    for (std::size_t b = 1; b <= 3; ++b) e.push_back({a, b});
  }
  return KripkeFrame({"r", "w1", "w2", "w3"}, e);
}

}  // namespace

TEST_CASE("m_diamond examples") {
  CHECK(chain01().m_diamond(S({1})) == S({0}));
  CHECK(chain01().m_diamond(WorldSet()) == WorldSet());
  CHECK(clique_ab().m_diamond(WorldSet()) == WorldSet());
  CHECK(clique_ab().m_diamond(S({0})) == S({0, 1}));
}

TEST_CASE("successor sets") {
  CHECK(chain01().successors(0) == S({1}));
  CHECK(chain01().successors(1) == WorldSet());
  CHECK(chain01().successors_of_set(WorldSet()) == WorldSet());
  CHECK(clique_ab().successors_of_set(S({0})) == S({0, 1}));
}

TEST_CASE("m_diamond agrees with the oracle and distributes over union") {
  corpus::Rng rng(21);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      KripkeFrame f = corpus::random_frame(rng, n, 0.4);
      oracle::Frame o = oracle::from(f);
      const std::uint64_t end = std::uint64_t{1} << n;
      for (std::uint64_t x = 0; x < end; ++x) {
        WorldSet X(x);
        CHECK(oracle::to_set(f.m_diamond(X), int(n)) == oracle::mdia(o, oracle::to_set(X, int(n))));
        WorldSet Y(rng() & (end - 1));
        CHECK(f.m_diamond(X | Y) == (f.m_diamond(X) | f.m_diamond(Y)));
      }
    }
  }
}

TEST_CASE("scalar and AVX2 kernels agree") {
  corpus::Rng rng(22);
  for (std::size_t n : {1, 3, 4, 5, 8, 17, 33, 63, 64}) {
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<std::uint64_t> rows(n);
      const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
      for (auto& r : rows) r = rng() & rng() & mask;
      std::uint64_t x = rng() & mask;
      std::uint64_t pre = kernels::scalar::preimage(rows, x);
      std::uint64_t img = kernels::scalar::image(rows, x);
      // Direct definitions.
      std::uint64_t pre_ref = 0, img_ref = 0;
      for (std::size_t w = 0; w < n; ++w) {
        if (rows[w] & x) pre_ref |= std::uint64_t{1} << w;
        if ((x >> w) & 1u) img_ref |= rows[w];
      }
      CHECK(pre == pre_ref);
      CHECK(img == img_ref);
      if (kernels::avx2::available()) {
        CHECK(kernels::avx2::preimage(rows, x) == pre);
        CHECK(kernels::avx2::image(rows, x) == img);
      }
      CHECK(kernels::preimage(rows, x) == pre);
      CHECK(kernels::image(rows, x) == img);
    }
  }
}

TEST_CASE("backend selection falls back to scalar when forced") {
  auto before = kernels::active_backend();
  kernels::select_backend(kernels::Backend::Scalar);
  CHECK(kernels::active_backend() == kernels::Backend::Scalar);
  CHECK(gallery::cyclic(5).m_diamond(S({0})) == S({4}));
  kernels::select_backend(before);
  CHECK(kernels::backend_name(kernels::Backend::Scalar) == "scalar");
}

TEST_CASE("check_closure examples") {
  auto full = check_closure(clique_ab(), AdmissibleFamily::powerset(2));
  CHECK(full.closed());

  auto trivial = check_closure(clique_ab(), AdmissibleFamily::of(2, {WorldSet(), S({0, 1})}));
  CHECK(trivial.boolean_closed);
  CHECK(trivial.mdia_closed);

  auto single = check_closure(clique_ab(), AdmissibleFamily::of(2, {S({0})}));
  CHECK_FALSE(single.boolean_closed);
  REQUIRE(single.boolean_witness.has_value());
  CHECK(*single.boolean_witness == S({1}));
}

TEST_CASE("close_family examples") {
  auto c = close_family(clique_ab(), AdmissibleFamily::of(2, {S({0, 1})}));
  CHECK(c.sets() == std::vector<WorldSet>{WorldSet(), S({0, 1})});

  auto p = close_family(clique_ab(), AdmissibleFamily::powerset(2));
  CHECK(p.size() == 4);

  auto ch = close_family(chain01(), AdmissibleFamily::of(2, {S({1})}));
  CHECK(ch.contains(S({0})));
  CHECK(ch.size() == 4);
}

TEST_CASE("close_family is extensive, idempotent and closed") {
  corpus::Rng rng(23);
  for (int rep = 0; rep < 150; ++rep) {
    std::size_t n = 1 + rng() % 6;
    KripkeFrame f = corpus::random_frame(rng, n);
    std::vector<WorldSet> gens;
    for (int i = 0; i < 2; ++i) gens.push_back(WorldSet(rng() & WorldSet::full(n).bits()));
    auto fam = AdmissibleFamily::of(n, gens);
    auto c = close_family(f, fam);
    for (WorldSet g : gens) CHECK(c.contains(g));
    CHECK(check_closure(f, c).closed());
    CHECK(close_family(f, c) == c);
  }
}

TEST_CASE("is_quantifiable_finite examples") {
  CHECK(is_quantifiable_finite(GeneralFrame::full(clique_ab())));
  CHECK(is_quantifiable_finite(GeneralFrame(clique_ab(), AdmissibleFamily::of(2, {WorldSet(), S({0, 1})}))));
  CHECK(is_quantifiable_finite(
      GeneralFrame(chain01(), AdmissibleFamily::of(2, {S({1}), S({0, 1}), WorldSet(), S({0})}))));
  CHECK_FALSE(is_quantifiable_finite(GeneralFrame(chain01(), AdmissibleFamily::of(2, {S({1}), WorldSet(), S({0})}))));
}

TEST_CASE("family construction guards") {
  CHECK_THROWS_AS(AdmissibleFamily::of(2, {}), FrameError);
  CHECK_THROWS_AS(AdmissibleFamily::of(2, {S({2})}), FrameError);
  CHECK_THROWS_AS(GeneralFrame::certified(clique_ab(), AdmissibleFamily::of(2, {S({0})})), FrameError);
  CHECK(GeneralFrame::certified(clique_ab(), AdmissibleFamily::of(2, {WorldSet(), S({0, 1})})).closure_certified());
  CHECK_FALSE(GeneralFrame(clique_ab(), AdmissibleFamily::of(2, {S({0})})).closure_certified());
  CHECK_THROWS_AS(Model(GeneralFrame(clique_ab(), AdmissibleFamily::of(2, {S({0})})), Valuation{{Var{0}, S({1})}}),
                  FrameError);
}

TEST_CASE("generated subframes") {
  GeneralFrame g = GeneralFrame::full(rooted_clique());
  CHECK(generated_subframe(g, 0).frame.size() == 4);
  auto sub = generated_subframe(g, 2);
  CHECK(sub.origin == std::vector<std::size_t>{1, 2, 3});
  CHECK(sub.frame.base().edges() == gallery::clique(3).edges());
  CHECK(sub.frame.base().name(0) == "w1");

  GeneralFrame loop = GeneralFrame::full(KripkeFrame(1, {{0, 0}}));
  CHECK(generated_subframe(loop, 0).frame.base() == loop.base());
}

TEST_CASE("generated subframes contain the point and are R-closed") {
  corpus::Rng rng(24);
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t n = 1 + rng() % 7;
    GeneralFrame g = GeneralFrame::full(corpus::random_frame(rng, n, 0.25));
    std::size_t w = rng() % n;
    auto sub = generated_subframe(g, w);
    WorldSet worlds = embed(sub.frame.base().universe(), sub.origin);
    CHECK(worlds.contains(w));
    CHECK(g.base().successors_of_set(worlds).subset_of(worlds));
  }
}

TEST_CASE("truncated submodels") {
  GeneralFrame c3 = GeneralFrame::full(KripkeFrame(3, {{0, 1}, {1, 2}}));
  Model m(c3, Valuation{{Var{0}, S({1, 2})}});
  auto t0 = truncated_submodel(m, 0, 0);
  CHECK(t0.model.frame().size() == 1);
  CHECK_FALSE(t0.model.frame().base().related(0, 0));
  auto t1 = truncated_submodel(m, 0, 1);
  CHECK(t1.origin == std::vector<std::size_t>{0, 1});
  CHECK(t1.model.valuation().at(Var{0}) == S({1}));

  Model loop(GeneralFrame::full(KripkeFrame(2, {{1, 1}})), {});
  CHECK(truncated_submodel(loop, 1, 0).model.frame().base().related(0, 0));

  Model cl(GeneralFrame::full(gallery::clique(4)), {});
  for (std::size_t w = 0; w < 4; ++w) CHECK(truncated_submodel(cl, w, 1).model.frame().size() == 4);
}

TEST_CASE("deep truncation equals the generated subframe") {
  corpus::Rng rng(25);
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t n = 1 + rng() % 7;
    GeneralFrame g = GeneralFrame::full(corpus::random_frame(rng, n, 0.25));
    Model m(g, {});
    std::size_t w = rng() % n;
    auto t = truncated_submodel(m, w, n);
    auto s = generated_subframe(g, w);
    CHECK(t.origin == s.origin);
    CHECK(t.model.frame().base() == s.frame.base());
  }
}

TEST_CASE("reachability") {
  KripkeFrame c = gallery::chain(4);
  CHECK(reachable_within(c, 0, 0) == S({0}));
  CHECK(reachable_within(c, 0, 2) == S({0, 1, 2}));
  CHECK(reachable(c, 1) == S({1, 2, 3}));
  CHECK(project(S({1, 3}), {1, 2, 3}) == S({0, 2}));
  CHECK(embed(S({0, 2}), {1, 2, 3}) == S({1, 3}));
}

TEST_CASE("JSON round trip is byte-identical for every gallery entry") {
  for (const auto& id : gallery_ids()) {
    CAPTURE(id);
    GalleryEntry e = gallery_entry(id);
    std::string once = frame_to_json_text(e.frame);
    GeneralFrame back = frame_from_json_text(once);
    CHECK(back == e.frame);
    CHECK(frame_to_json_text(back) == once);
  }
  GeneralFrame coarse(clique_ab(), AdmissibleFamily::of(2, {WorldSet(), S({0, 1})}));
  std::string text = frame_to_json_text(coarse);
  CHECK(frame_from_json_text(text).admissible() == coarse.admissible());
  CHECK(frame_to_json_text(frame_from_json_text(text)) == text);
}

TEST_CASE("JSON input forms") {
  auto g = frame_from_json_text(R"({"worlds":["a","b"],"relation":[["a","b"]],"admissible":"full"})");
  CHECK(g.admissible().is_powerset());
  CHECK(g.base().related(0, 1));
  auto h = frame_from_json_text(R"({"worlds":["a","b"],"relation":[],"admissible":[[],["a","b"]]})");
  CHECK(h.admissible().size() == 2);
  CHECK_THROWS_AS(frame_from_json_text(R"({"worlds":["a"],"relation":[["a","z"]]})"), FrameError);
  CHECK_THROWS_AS(frame_from_json_text(R"({"worlds":["a","a"],"relation":[]})"), FrameError);
}

TEST_CASE("set formatting") {
  KripkeFrame f = clique_ab();
  CHECK(format_set(f, S({0, 1})) == "{a,b}");
  CHECK(format_set(f, WorldSet()) == "{}");
  CHECK(parse_set(f, "{b}") == S({1}));
  CHECK(parse_set(f, "a,b") == S({0, 1}));
  CHECK_THROWS_AS(parse_set(f, "c"), FrameError);
  CHECK(frame_to_dot(chain01()).find("->") != std::string::npos);
}
