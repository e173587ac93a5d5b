// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any
// fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "common.hpp"
#include "cubes/proof_extract.hpp"
#include "cubes/search.hpp"

using namespace cubes;
namespace ref    = testing::ref;
namespace oracle = testing::oracle;

namespace {

  struct Failed {
    std::string what;
  };

  void expect(bool ok, std::string const& what) {
    if (!ok) {
      throw Failed{what};
    }
  }

  Word W(std::string const& s) {
    return Word::parse(s);
  }

  std::string plain(ProofWord const& p) {
    std::string out;
    for (char c : format_proofword(p)) {
      if (std::isalpha(static_cast<unsigned char>(c))) {
        out.push_back(c);
      }
    }
    return oracle::reduce(out);
  }

  using Clock = std::chrono::steady_clock;

  double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }

  void crit1() {
    auto t0 = Clock::now();
    auto p  = testing::fixture_proof("bracketed.pw");
    auto s  = stats(p);
    expect(s.relator_count == 8, "8 relators");
    expect(s.subgen_count == 16, "16 brackets");
    std::string target = oracle::conj(ref::C, "WZw");
    expect(target == ref::C_WZw, "oracle C^WZw");
    expect(value(p).str() == target && plain(p) == target, "value C^WZw");
    expect(residue(p).str() == ref::beta, "residue beta");
    expect(seconds_since(t0) < 1.0, "time");
  }

  void crit2() {
    auto t0 = Clock::now();
    expect(stats(testing::fixture_proof("gamma_beta.pw")) == ProofStats{14, 120, 48, 24, 0}, "gamma/beta stats");
    expect(stats(testing::fixture_proof("delta_epsilon.pw")) == ProofStats{14, 120, 42, 21, 0}, "delta/epsilon stats");
    auto f = testing::fixture_proof("fifteen.pw");
    expect(stats(f) == ProofStats{15, 96, 30, 15, 0}, "fifteen stats");
    expect(value(f).str() == ref::C && plain(f) == oracle::comm(oracle::comm("x", "y"), oracle::comm("z", "w")),
           "fifteen value");
    expect(seconds_since(t0) < 1.0, "time");
  }

  void crit3() {
    auto gb = split(testing::fixture_proof("gamma_beta.pw"), 9);
    expect(value(gb.first).str() == ref::gamma, "gamma");
    expect(value(gb.second).str() == ref::beta, "beta");
    expect(oracle::reduce(ref::gamma + ref::beta) == ref::C_WZw, "gamma beta = C^WZw");
    auto pad = parse_letters("zYyZ", Alphabet());
    expect(oracle::reduce("zYyZ").empty(), "pad trivial");
    auto de = split(testing::fixture_proof("delta_epsilon.pw"), 9, {pad.begin(), pad.end()});
    expect(value(de.first).str() == ref::delta, "delta");
    expect(value(de.second).str() == ref::epsilon, "epsilon");
    expect(oracle::reduce(ref::delta + ref::epsilon) == ref::C_WZw, "delta epsilon = C^WZw");
  }

  void crit4() {
    CubeProduct cp = to_cubes(testing::fixture_proof("delta_epsilon.pw"));
    expect(cp.size() == 14, "14 cubes");
    expect(cp[0].base.str() == "Xyw" && cp[0].conjugator.str() == "yWZw", "first cube");
    expect(cp[1].base.str() == "wy" && cp[1].conjugator.str() == "Zw", "second cube");
    std::string acc;
    for (auto const& f : cp) {
      std::string b = f.base.str();
      acc += oracle::conj(b + b + b, f.conjugator.str());
    }
    expect(oracle::reduce(acc) == ref::C_WZw, "product by oracle");
    expect(cube_product_value(cp).str() == ref::C_WZw, "product");
  }

  void crit5() {
    std::set<std::string> supports;
    for (auto const& f : to_cubes(testing::fixture_proof("fifteen.pw"))) {
      std::string s;
      for (char g : std::string("xyzw")) {
        if (f.base.str().find(g) != std::string::npos
            || f.base.str().find(static_cast<char>(std::toupper(g))) != std::string::npos) {
          s.push_back(g);
        }
      }
      supports.insert(s);
    }
    expect(supports.size() == 15 && supports.count("") == 0, "15 distinct non-empty subsets");
  }

  void crit6() {
    struct Case {
      char const* file;
      std::size_t r;
      double      limit;
    };
    for (Case c : {Case{"b23.pres", 2, 0.1}, Case{"b33.pres", 3, 5.0}, Case{"b43_xyz.pres", 4, 60.0}}) {
      auto pf = testing::fixture_presentation(c.file);
      // 3^s, s = r(r^2 + 5)/6, computed here
      std::size_t s   = c.r * (c.r * c.r + 5) / 6;
      std::size_t exp = 1;
      for (std::size_t i = 0; i < s; ++i) {
        exp *= 3;
      }
      auto         t0  = Clock::now();
      bool         sub = pf.subgroup.has_value();
      Enumeration  e   = enumerate(pf.presentation, sub ? *pf.subgroup : SubgroupSpec());
      double       dt  = seconds_since(t0);
      // over <x,y,z>: |B(4,3)| / |B(3,3)|
      std::size_t want = sub ? exp / 2187 : exp;
      expect(e.result.closed && e.result.index == want, std::string(c.file) + " index");
      expect(dt < c.limit, std::string(c.file) + " time");
      if (!sub) {
        expect(certify_exponent3(e), std::string(c.file) + " certificate");
      }
    }
  }

  void crit7() {
    auto            pf = testing::fixture_presentation("b23.pres");
    Enumeration     e  = enumerate(pf.presentation, SubgroupSpec());
    ProofExtractor  ex(e);
    std::mt19937_64 rng(2024);
    std::string const letters = "xXyY";
    for (int i = 0; i < 200; ++i) {
      std::string t;
      std::size_t n = 1 + rng() % 3;
      for (std::size_t j = 0; j < n; ++j) {
        std::string u, v;
        for (std::size_t k = rng() % 5; k > 0; --k) {
          u.push_back(letters[rng() % 4]);
        }
        for (std::size_t k = rng() % 4; k > 0; --k) {
          v.push_back(letters[rng() % 4]);
        }
        t += oracle::inverse(v) + u + u + u + v;
      }
      t           = oracle::reduce(t);
      ProofWord p = ex.extract(W(t));
      expect(plain(p) == t && value(p).str() == t, "random trivial word " + t);
    }

    auto           b43 = testing::fixture_presentation("b43_xyz.pres");
    Enumeration    f   = rederive(enumerate(b43.presentation, *b43.subgroup, {Strategy::felsch}));
    ProofWord      p   = ProofExtractor(f).extract(W(ref::C_WZw));
    expect(plain(p) == ref::C_WZw, "C^WZw value");
    expect(validate(p, b43.presentation, *b43.subgroup).ok(), "C^WZw validates");
    std::string r = residue(p).str();
    expect(r.find_first_of("wW") == std::string::npos, "residue in x, y, z");
  }

  void crit8() {
    // the pipeline by hand on the B(4,3) fixture
    auto        b43  = testing::fixture_presentation("b43_xyz.pres");
    auto        b33  = testing::fixture_presentation("b33.pres");
    Enumeration f    = rederive(enumerate(b43.presentation, *b43.subgroup, {Strategy::felsch}));
    Word        goal = W(ref::C_WZw);
    ProofWord   p    = shuffle_subgens(ProofExtractor(f).extract(goal));
    Word        h    = bracket_concat(p);
    CubeProduct hc   = rewrite_as_cubes(h, b33.presentation, {Strategy::felsch});
    expect(cube_product_value(hc) == h, "subgroup rewrite");
    Enumeration b33e  = rederive(enumerate(b33.presentation, SubgroupSpec(), {Strategy::felsch}));
    ProofWord   whole = splice(p, ProofExtractor(b33e).extract(h));
    CubeProduct cp    = to_cubes(whole);
    expect(cp.size() >= 2, "at least two cubes");
    std::string acc;
    for (auto const& c : cp) {
      std::string b = c.base.str();
      acc += oracle::conj(b + b + b, c.conjugator.str());
    }
    expect(oracle::reduce(acc) == ref::C_WZw, "cube product verifies");
    std::printf("  fixture pipeline: %zu cubes\n", cp.size());

    // and through the harness on a pinned trial
    TrialConfig cfg;
    cfg.seed             = 1;
    cfg.min_length       = 2;
    cfg.max_length       = 4;
    TrialResult         t    = run_trial(cfg, 2);
    TargetResult const* best = t.best();
    expect(best != nullptr, "harness trial produced a product");
    expect(cube_product_value(best->cube_product) == conjugate(commutator_of_commutators(), best->conjugator),
           "harness product verifies");
    std::printf("  harness seed 1 trial 2: %zu cubes for C^%s\n", best->cubes, best->conjugator.str().c_str());
  }

  void crit9() {
    for (std::size_t n = 1; n <= 5; ++n) {
      auto expected = oracle::base_word_classes("xyzw", n);
      auto got      = base_words(Alphabet(4), n, n);
      expect(got.size() == expected.size(), "count at length " + std::to_string(n));
      std::set<std::string> got_set;
      for (Word const& w : got) {
        got_set.insert(w.str());
      }
      expect(got_set == expected, "classes at length " + std::to_string(n));
      if (n == 1) {
        expect(got.size() == 4, "length 1 gives 4");
      }
    }
  }

  void crit10() {
    TrialConfig cfg;
    cfg.seed       = 1;
    cfg.min_length = 2;
    cfg.max_length = 4;
    TrialResult a  = run_trial(cfg, 2);
    TrialResult b  = run_trial(cfg, 2);
    expect(a.to_json() == b.to_json(), "json");
    for (std::size_t i = 0; i < a.targets.size(); ++i) {
      expect(format_proofword(a.targets[i].proof) == format_proofword(b.targets[i].proof), "proofs");
    }
  }

}  // namespace

int main() {
  std::pair<char const*, std::function<void()>> const crits[] = {
      {"1 fixture verification", crit1},
      {"2 statistics", crit2},
      {"3 split identities", crit3},
      {"4 cube distribution", crit4},
      {"5 subset structure", crit5},
      {"6 enumeration indices", crit6},
      {"7 extraction soundness", crit7},
      {"8 end-to-end pipeline", crit8},
      {"9 base-word oracle", crit9},
      {"10 determinism", crit10},
  };
  int failures = 0;
  for (auto const& [name, fn] : crits) {
    auto        t0 = Clock::now();
    std::string why;
    try {
      fn();
    } catch (Failed const& f) {
      why = f.what;
    } catch (std::exception const& e) {
      why = std::string("exception: ") + e.what();
    }
    double dt = seconds_since(t0);
    if (why.empty()) {
      std::printf("PASS criterion %s (%.2f s)\n", name, dt);
    } else {
      std::printf("FAIL criterion %s (%.2f s): %s\n", name, dt, why.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
