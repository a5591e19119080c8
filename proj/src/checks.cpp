#include "pqml/checks.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <sstream>

#include "pqml/axioms.hpp"
#include "pqml/breakdown.hpp"
#include "pqml/corpus.hpp"
#include "pqml/diversity.hpp"
#include "pqml/frame_io.hpp"
#include "pqml/gallery.hpp"
#include "pqml/parser.hpp"
#include "pqml/semantics.hpp"

namespace pqml::checks {

namespace {

using corpus::Rng;

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

Result run(int id, const std::string& name, const std::function<std::string()>& body) {
  Result r{id, name, false, "", 0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.detail = body();
    r.passed = true;
  } catch (const Failure& f) {
    r.detail = f.what;
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::size_t scaled(const Options& o, std::size_t full) { return o.quick ? std::max<std::size_t>(full / 10, 1) : full; }

std::vector<KripkeFrame> all_small_frames(std::size_t max_n) {
  std::vector<KripkeFrame> out;
  for (std::size_t n = 1; n <= max_n; ++n) corpus::for_each_frame(n, [&](const KripkeFrame& f) { out.push_back(f); });
  return out;
}

std::string describe(const KripkeFrame& f) {
  std::ostringstream os;
  os << f.size() << " worlds, edges";
  for (auto [a, b] : f.edges()) os << " " << a << "->" << b;
  return os.str();
}

std::string describe(const KripkeFrame& f, const Valuation& v) {
  std::ostringstream os;
  for (const auto& [p, x] : v.entries()) os << " " << p.name() << "=" << format_set(f, x);
  return os.str();
}

// Frames with large duplicate classes, where equivalent valuations differ.
KripkeFrame pool_frame(Rng& rng) {
  static const std::vector<std::string> ids{"clique:5", "identity:5", "k5:2:3", "d45:4",      "cyclic:4",
                                            "div4:2:2:1", "clique:6", "k5:1:4", "identity:6", "d45:5"};
  if (rng() % 2 == 0) return gallery_entry(ids[rng() % ids.size()]).frame.base();
  const std::size_t n = 3 + rng() % 4;
  const double density = std::vector<double>{0.0, 0.2, 0.5, 0.8, 1.0}[rng() % 5];
  return corpus::random_frame(rng, n, density);
}

WorldSet random_subset(Rng& rng, std::size_t n) { return WorldSet(rng() & WorldSet::full(n).bits()); }

std::vector<Var> first_vars(std::size_t k) {
  std::vector<Var> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(Var{static_cast<std::uint32_t>(i)});
  return out;
}

// Applies a random permutation that fixes every duplicate class setwise.
Valuation class_permuted(Rng& rng, const Valuation& u, const DuplicateStructure& ds) {
  std::vector<std::size_t> pi(ds.class_of.size());
  for (WorldSet c : ds.classes) {
    auto members = c.members();
    auto image = members;
    std::shuffle(image.begin(), image.end(), rng);
    for (std::size_t i = 0; i < members.size(); ++i) pi[members[i]] = image[i];
  }
  Valuation v;
  for (const auto& [p, x] : u.entries()) {
    WorldSet y;
    x.for_each([&](std::size_t w) { y = y.with(pi[w]); });
    v.set(p, y);
  }
  return v;
}

// u, v equivalent at level `target` over `vars`, built by witness extension
// from the empty valuations.
std::pair<Valuation, Valuation> extension_chain(Rng& rng, const std::vector<Var>& vars, unsigned target,
                                                const DuplicateStructure& ds) {
  Valuation u, v;
  unsigned n = target + static_cast<unsigned>(vars.size());
  const std::size_t worlds = ds.class_of.size();
  for (Var p : vars) {
    const WorldSet x = random_subset(rng, worlds);
    const WorldSet y = extend_witness(u, v, n, p, x, ds);
    u.set(p, x);
    v.set(p, y);
    --n;
  }
  return {u, v};
}

}  // namespace

Result diversity_spot_values(const Options&) {
  return run(1, "diversity spot values", [] {
    std::vector<std::string> wrong;
    auto expect = [&](std::size_t got, std::size_t want, const std::string& what) {
      if (got != want) wrong.push_back(what + " = " + std::to_string(got) + ", expected " + std::to_string(want));
    };
    for (std::size_t n = 2; n <= 8; ++n) expect(diversity(gallery::cyclic(n)), n, "diversity(cyclic(" + std::to_string(n) + "))");
    for (std::size_t k = 1; k <= 6; ++k) expect(diversity(gallery::clique(k)), 1, "diversity(clique(" + std::to_string(k) + "))");
    const auto ds = duplicate_structure(gallery::k5_frame(1, 2));
    const std::vector<WorldSet> classes{WorldSet::singleton(0), WorldSet::singleton(1), WorldSet(0b1100)};
    if (ds.classes != classes) wrong.push_back("k5_frame(1,2) classes are not {r}, U, W minus U");
    for (std::size_t k = 1; k <= 6; ++k) {
      const KripkeFrame d = gallery::d45_point(k);
      expect(diversity(d), 2, "diversity(d45_point(" + std::to_string(k) + "))");
      expect(diversity_generated(d), 2, "diversity_generated(d45_point(" + std::to_string(k) + "))");
    }
    if (!wrong.empty()) {
      std::string msg;
      for (const auto& w : wrong) msg += (msg.empty() ? "" : "; ") + w;
      throw Failure{msg};
    }
    return std::string("cyclic 2..8, clique 1..6, k5(1,2), d45 1..6 exact");
  });
}

Result quotient_mdia_oracle(const Options& o) {
  return run(2, "quotient m_dia oracle", [&] {
    std::size_t pairs = 0;
    auto check_frame = [&](const KripkeFrame& f) {
      const auto ds = duplicate_structure(f);
      const std::uint64_t end = std::uint64_t{1} << f.size();
      for (std::uint64_t m = 0; m < end; ++m) {
        ++pairs;
        if (m_diamond_quotient(ds, f, WorldSet(m)) != f.m_diamond(WorldSet(m)))
          throw Failure{"mismatch on " + describe(f) + " X=" + format_set(f, WorldSet(m))};
      }
    };
    for (const auto& f : all_small_frames(3)) check_frame(f);
    Rng rng(o.seed ^ 2);
    const std::size_t samples = scaled(o, 500);
    for (std::size_t i = 0; i < samples; ++i) {
      const std::size_t n = 1 + rng() % 6;
      const double density = std::vector<double>{0.1, 0.3, 0.5, 0.8, 1.0}[rng() % 5];
      check_frame(i % 3 == 0 ? pool_frame(rng) : corpus::random_frame(rng, n, density));
    }
    return "all frames |W|<=3 plus " + std::to_string(samples) + " random; " + std::to_string(pairs) + " (frame, X) pairs";
  });
}

Result breakdown_oracle(const Options& o) {
  return run(3, "breakdown oracle", [&] {
    const corpus::FormulaShape shape{2, 2, 1, o.quick ? std::size_t{4} : std::size_t{5}};
    const auto formulas = corpus::enumerate_formulas(shape);
    std::size_t compared = 0;
    for (const auto& f : all_small_frames(3)) {
      Breakdown bd(f);
      const GeneralFrame g = GeneralFrame::full(f);
      Evaluator ev(g);
      for (const Formula& phi : formulas)
        for_each_valuation(phi.free_vars(), g.admissible(), [&](const Valuation& v) {
          ++compared;
          if (bd.fast_extension(phi, v) != ev.extension(phi, v))
            throw Failure{"mismatch for " + print(phi) + " on " + describe(f) + describe(f, v)};
          return true;
        });
    }
    Rng rng(o.seed ^ 3);
    const std::size_t samples = scaled(o, 300);
    const corpus::FormulaShape rshape{2, 2, 2, 12};
    for (std::size_t i = 0; i < samples; ++i) {
      const std::size_t n = 1 + rng() % 5;
      const KripkeFrame f = i % 4 == 0 ? corpus::random_frame(rng, n, 1.0 - 0.5 * (rng() % 2))
                                       : corpus::random_frame(rng, n, 0.15 + 0.15 * (rng() % 4));
      const Formula phi = corpus::random_formula(rng, rshape);
      const Valuation v = corpus::random_valuation(rng, first_vars(2), n);
      Breakdown bd(f);
      ++compared;
      if (bd.fast_extension(phi, v) != extension_full(phi, f, v))
        throw Failure{"mismatch for " + print(phi) + " on " + describe(f) + describe(f, v)};
    }
    return std::to_string(formulas.size()) + " enumerated formulas (size <= " + std::to_string(shape.max_size) +
           ") on all frames |W|<=3 with all valuations, plus " + std::to_string(samples) + " random; " +
           std::to_string(compared) + " comparisons";
  });
}

Result f_stability(const Options& o) {
  return run(4, "breakdown stability", [&] {
    Rng rng(o.seed ^ 4);
    const std::size_t samples = scaled(o, 200);
    const corpus::FormulaShape shape{2, 2, 2, 10};
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      const KripkeFrame f = pool_frame(rng);
      Formula phi = corpus::random_formula(rng, shape);
      for (int t = 0; t < 8 && phi.free_vars().empty(); ++t) phi = corpus::random_formula(rng, shape);
      const auto ds = duplicate_structure(f);
      const unsigned level = static_cast<unsigned>(phi.quantifier_depth()) + 1;
      auto [u, v] = extension_chain(rng, phi.free_vars(), level, ds);
      require(approx_equiv(u, v, level, phi.free_vars(), ds), "chain did not produce equivalent valuations");
      if (u != v) ++distinct;
      Breakdown bd(f, ds);
      if (bd.all_classes(phi, u) != bd.all_classes(phi, v))
        throw Failure{"breakdown differs for " + print(phi) + " on " + describe(f) + " u:" + describe(f, u) +
                      " v:" + describe(f, v)};
    }
    return std::to_string(samples) + " pairs, " + std::to_string(distinct) + " with u != v";
  });
}

Result extend_witness_postcondition(const Options& o) {
  return run(5, "witness extension postcondition", [&] {
    Rng rng(o.seed ^ 5);
    const std::size_t samples = scaled(o, 1000);
    std::size_t moved = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      const KripkeFrame f = pool_frame(rng);
      const auto ds = duplicate_structure(f);
      const std::size_t k = rng() % 3;
      const unsigned n = 1 + static_cast<unsigned>(rng() % 3);
      const auto vars = first_vars(k);
      Valuation u, v;
      if (i % 2 == 0) {
        u = corpus::random_valuation(rng, vars, f.size());
        v = class_permuted(rng, u, ds);
      } else {
        std::tie(u, v) = extension_chain(rng, vars, n, ds);
      }
      const Var p{static_cast<std::uint32_t>(k)};
      const WorldSet x = random_subset(rng, f.size());
      const WorldSet y = extend_witness(u, v, n, p, x, ds);
      if (x != y) ++moved;
      auto vars_p = vars;
      vars_p.push_back(p);
      if (!approx_equiv(u.with(p, x), v.with(p, y), n - 1, vars_p, ds))
        throw Failure{"postcondition fails on " + describe(f)};
    }
    return std::to_string(samples) + " instances, " + std::to_string(moved) + " with Y != X";
  });
}

Result truncation_lemma(const Options& o) {
  return run(6, "truncation lemma", [&] {
    Rng rng(o.seed ^ 6);
    const std::size_t samples = scaled(o, 500);
    const corpus::FormulaShape shape{2, 3, 2, 10};
    std::size_t shrunk = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      const std::size_t n = 2 + rng() % 5;
      const GeneralFrame g = corpus::random_pd_frame(rng, n, 1 + rng() % 6, 0.15 + 0.1 * (rng() % 4));
      const Valuation v = corpus::random_valuation(rng, first_vars(2), g.admissible());
      const Model m(g, v);
      const Formula phi = corpus::random_formula(rng, shape);
      const std::size_t w = rng() % n;
      const std::size_t depth = static_cast<std::size_t>(phi.modal_depth()) + rng() % 2;
      const SubModel t = truncated_submodel(m, w, depth);
      if (t.origin.size() < n) ++shrunk;
      const std::size_t w2 = static_cast<std::size_t>(std::find(t.origin.begin(), t.origin.end(), w) - t.origin.begin());
      if (holds_at(phi, m, w) != holds_at(phi, t.model, w2))
        throw Failure{"truth changes for " + print(phi) + " at " + std::to_string(w) + " on " + describe(g.base())};
    }
    return std::to_string(samples) + " pd-models, " + std::to_string(shrunk) + " truncations removed worlds";
  });
}

Result axiom_validities(const Options& o) {
  return run(7, "axiom validities", [&] {
    std::vector<std::pair<std::string, Formula>> fs;
    for (int n = 0; n <= 2; ++n) {
      fs.push_back({"at_n(" + std::to_string(n) + ")", axioms::at_n(n)});
      fs.push_back({"r_n(" + std::to_string(n) + ")", axioms::r_n(n)});
      fs.push_back({"E p(p & Q^" + std::to_string(n) + "(p))", axioms::world_proposition(n)});
    }
    fs.push_back({"successor formula", axioms::successor_formula()});
    auto frames = all_small_frames(3);
    Rng rng(o.seed ^ 7);
    const std::size_t extra = scaled(o, 60);
    for (std::size_t i = 0; i < extra; ++i) frames.push_back(corpus::random_frame(rng, 4, 0.1 + 0.2 * (rng() % 5)));
    if (o.quick) {
      std::vector<KripkeFrame> sample;
      for (std::size_t i = 0; i < frames.size(); i += 7) sample.push_back(frames[i]);
      frames = std::move(sample);
    }
    for (const auto& f : frames)
      for (const auto& [name, phi] : fs) {
        const auto rep = valid_on_kripke(phi, f);
        if (!rep.valid) throw Failure{name + " fails on " + describe(f)};
      }
    return std::to_string(fs.size()) + " formulas on " + std::to_string(frames.size()) + " frames";
  });
}

Result bc_on_quantifiable(const Options& o) {
  return run(8, "Barcan on quantifiable frames", [&] {
    Rng rng(o.seed ^ 8);
    std::vector<Formula> phis;
    const corpus::FormulaShape shape{2, 2, 1, 8};
    phis.push_back(Formula::atom(Var{0}));
    phis.push_back(Formula::dia(Formula::atom(Var{0})));
    while (phis.size() < 20) phis.push_back(corpus::random_formula(rng, shape));
    const std::size_t samples = scaled(o, 100);
    std::size_t nontrivial = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      // Generators built from duplicate classes keep the closure proper.
      const KripkeFrame f = i % 2 == 0 ? pool_frame(rng) : corpus::random_frame(rng, 2 + rng() % 4);
      const auto ds = duplicate_structure(f);
      std::vector<WorldSet> gens;
      for (std::size_t k = 0; k < 1 + rng() % 2; ++k) {
        WorldSet x;
        for (WorldSet c : ds.classes)
          if (rng() % 2) x |= c;
        gens.push_back(i % 4 == 3 ? random_subset(rng, f.size()) : x);
      }
      const GeneralFrame g = GeneralFrame::certified(f, close_family(f, AdmissibleFamily::of(f.size(), gens)));
      require(is_quantifiable_finite(g), "generated frame is not quantifiable");
      if (!g.admissible().is_powerset()) ++nontrivial;
      for (const Formula& phi : phis) {
        const Formula bc = axioms::bc(Var{0}, phi);
        if (!valid_on_general(bc, g).valid)
          throw Failure{"Bc fails for " + print(phi) + " on " + describe(g.base())};
      }
    }
    return std::to_string(samples) + " certified frames (" + std::to_string(nontrivial) +
           " with a proper family) x 20 formulas";
  });
}

Result diversity_collapse(const Options& o) {
  return run(9, "diversity collapse", [&] {
    auto frames = all_small_frames(3);
    Rng rng(o.seed ^ 9);
    const std::size_t extra = scaled(o, 200);
    for (std::size_t i = 0; i < extra; ++i) frames.push_back(corpus::random_frame(rng, 4 + rng() % 3, 0.1 + 0.2 * (rng() % 5)));
    for (const auto& id : gallery_ids()) frames.push_back(gallery_entry(id).frame.base());
    std::size_t checked = 0;
    for (const auto& f : frames) {
      const std::size_t dg = diversity_generated(f);
      for (std::size_t n = dg; n <= 4; ++n) {
        ++checked;
        if (!valid_on_kripke(axioms::diamond_collapse(static_cast<int>(n)), f).valid)
          throw Failure{"collapse(" + std::to_string(n) + ") fails on " + describe(f)};
      }
    }
    return std::to_string(frames.size()) + " frames, " + std::to_string(checked) + " (frame, n) pairs";
  });
}

Result sahlqvist_classifier(const Options&) {
  return run(10, "Sahlqvist classifier", [] {
    const std::vector<std::pair<std::string, Formula>> yes{
        {"[]p -> p", axioms::t()},
        {"<>p -> []<>p", axioms::five()},
        {"[](<>p -> []<>p)", axioms::phi1()},
        {"<><>p -> []<>p", axioms::phi2()}};
    for (const auto& [name, f] : yes) require(sahlqvist_check(f).is_sahlqvist, name + " rejected");
    require(!sahlqvist_check(axioms::m_ax()).is_sahlqvist, "[]<>p -> <>[]p accepted");
    return std::string("4 accepted, McKinsey rejected");
  });
}

Result invariance_failure_demo(const Options& o) {
  return run(11, "invariant subdomain demo", [&] {
    const KripkeFrame ab({"a", "b"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const GeneralFrame coarse(ab, AdmissibleFamily::of(2, {WorldSet{}, ab.universe()}));
    const Formula witness = parse("E p0. (p0 & <>~p0)");
    const std::vector<Formula> demo{parse("p0"), parse("<>p0"), witness, parse("[]p0 -> p0")};
    const auto rep = invariant_subdomain_check(coarse, demo);
    require(!rep.passed_corpus, "coarse family passed");
    require(rep.formula && *rep.formula == witness, "failure reported on the wrong formula");
    require(rep.family_extension.empty() && rep.powerset_extension == ab.universe(),
            "reported extensions are not empty vs W");

    Rng rng(o.seed ^ 11);
    std::vector<Formula> corpus_fs = demo;
    const corpus::FormulaShape shape{2, 2, 2, 9};
    while (corpus_fs.size() < 30) corpus_fs.push_back(corpus::random_formula(rng, shape));
    std::vector<KripkeFrame> frames;
    for (const char* id : {"cyclic:3", "clique:3", "chain:3", "k5:1:2", "d45:2", "identity:3"})
      frames.push_back(gallery_entry(id).frame.base());
    for (int i = 0; i < 6; ++i) frames.push_back(corpus::random_frame(rng, 2 + rng() % 3));
    for (const auto& f : frames) {
      const auto full = invariant_subdomain_check(GeneralFrame::full(f), corpus_fs);
      require(full.passed_corpus, "full powerset failed on " + describe(f));
    }
    return "coarse family fails on " + print(witness) + " ({} vs {a,b}); " + std::to_string(frames.size()) +
           " full frames pass a 30-formula corpus";
  });
}

Result shift_isomorphism(const Options& o) {
  return run(12, "shift isomorphism", [&] {
    const int lo = -10, hi = 10, height = 2;
    Rng rng(o.seed ^ 12);
    const std::size_t per_depth = o.quick ? 5 : 50;
    std::size_t checks = 0;
    for (int d = 0; d <= 2; ++d) {
      const corpus::FormulaShape shape{2, d, 2, 8};
      for (std::size_t k = 0; k < per_depth; ++k) {
        const Formula phi = corpus::random_formula(rng, shape);
        std::map<Var, std::vector<int>> offsets;
        for (Var p : first_vars(2))
          for (int off = -d; off <= height; ++off)
            if (rng() % 2) offsets[p].push_back(off);
        for (int n = lo + d; n + height <= hi; ++n) {
          std::map<Var, std::vector<int>> around;
          for (Var p : first_vars(2)) {
            around[p];
            for (int off : offsets[p]) around[p].push_back(n + off);
          }
          for (int m = lo + d; m + height <= hi; ++m) {
            ++checks;
            const auto rep = shift_isomorphism_check(lo, hi, d, n, m, phi, around, height);
            if (!rep.passed)
              throw Failure{rep.message + " for " + print(phi) + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
                            " d=" + std::to_string(d)};
          }
        }
      }
    }
    return std::to_string(checks) + " (n, m, d, formula) checks on recession_window(-10,10), " +
           std::to_string(per_depth) + " formulas per depth";
  });
}

std::vector<Result> run_all(const Options& o) {
  return {diversity_spot_values(o), quotient_mdia_oracle(o),         breakdown_oracle(o),
          f_stability(o),           extend_witness_postcondition(o), truncation_lemma(o),
          axiom_validities(o),      bc_on_quantifiable(o),           diversity_collapse(o),
          sahlqvist_classifier(o),  invariance_failure_demo(o),      shift_isomorphism(o)};
}

}  // namespace pqml::checks
