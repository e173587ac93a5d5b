#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "common.hpp"
#include "cubes/proof_extract.hpp"
#include "cubes/search.hpp"

using namespace cubes;
namespace fs = std::filesystem;

namespace {
  Word W(std::string const& s) {
    return Word::parse(s);
  }

  // Seed 1, trial 2 closes quickly and yields short products.
  TrialConfig pinned() {
    TrialConfig cfg;
    cfg.seed       = 1;
    cfg.min_length = 2;
    cfg.max_length = 4;
    return cfg;
  }

  fs::path scratch(std::string const& name) {
    fs::path p = fs::temp_directory_path() / ("cubes_test_" + name);
    fs::remove_all(p);
    return p;
  }

  std::vector<std::string> lines_of(fs::path const& file) {
    std::ifstream            in(file);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
      out.push_back(line);
    }
    return out;
  }
}  // namespace

TEST_SUITE("search") {
  TEST_CASE("digest and seeds") {
    // FNV-1a reference values
    CHECK(digest("") == "cbf29ce484222325");
    CHECK(digest("a") == "af63dc4c8601ec8c");
    CHECK(trial_seed(1, 0) == trial_seed(1, 0));
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
    CHECK(trial_seed(1, 0) != trial_seed(2, 0));
  }

  TEST_CASE("default targets") {
    auto us = TrialConfig::default_conjugators();
    CHECK(us.size() == 16);
    // W w and Z z cancel, so only 12 are distinct as reduced words
    std::set<Word> distinct(us.begin(), us.end());
    CHECK(distinct.size() == 12);
    CHECK(distinct.count(Word()) == 1);
    CHECK(distinct.count(W("WZwz")) == 1);
  }

  TEST_CASE("config invariants") {
    TrialConfig cfg;
    CHECK_NOTHROW(cfg.check());
    cfg.min_length = 5;
    cfg.max_length = 4;
    CHECK_THROWS_AS(cfg.check(), InvalidArgument);
    cfg = TrialConfig();
    cfg.subgroup_rank = 4;
    CHECK_THROWS_AS(cfg.check(), InvalidArgument);
    cfg = TrialConfig();
    cfg.relator_count = 0;
    CHECK_THROWS_AS(cfg.check(), InvalidArgument);
    cfg = TrialConfig();
    cfg.max_cosets = 0;
    CHECK_THROWS_AS(cfg.check(), InvalidArgument);
  }

  TEST_CASE("campaign config parsing") {
    auto o = parse_campaign_config("# comment\nseed = 9\ntrials=3\nworkers=2\nmax_length=4\nstrategy=hlt\n"
                                   "conjugators=1,WZw\nrederive=false\n");
    CHECK(o.trial.seed == 9);
    CHECK(o.trials == 3);
    CHECK(o.workers == 2);
    CHECK(o.trial.max_length == 4);
    CHECK(o.trial.strategy == Strategy::hlt);
    CHECK_FALSE(o.trial.rederive);
    REQUIRE(o.trial.conjugators.size() == 2);
    CHECK(o.trial.conjugators[0].empty());
    CHECK(o.trial.conjugators[1].str() == "WZw");

    CHECK_THROWS_AS(parse_campaign_config("seed 9\n"), ParseError);
    CHECK_THROWS_AS(parse_campaign_config("colour=blue\n"), ParseError);
    CHECK_THROWS_AS(parse_campaign_config("trials=many\n"), ParseError);
    CHECK_THROWS_AS(parse_campaign_config("strategy=fast\n"), Error);
  }

  TEST_CASE("subgroup presentations") {
    for (std::size_t r : {1u, 2u, 3u}) {
      Enumeration e = enumerate(subgroup_presentation(r), SubgroupSpec());
      CHECK(e.result.index == expected_order(r));
      CHECK(certify_exponent3(e));
    }
  }

  TEST_CASE("pinned trial") {
    TrialResult t = run_trial(pinned(), 2);
    CHECK(t.status == TrialResult::Status::accepted);
    CHECK(t.closed);
    CHECK(t.index == 2187);
    CHECK(t.efficiency <= 3.0);
    REQUIRE(t.targets.size() == 16);
    TargetResult const* best = t.best();
    REQUIRE(best != nullptr);
    CHECK(best->cubes >= 2);
    for (auto const& tr : t.targets) {
      if (!tr.ok()) {
        continue;
      }
      Word target = conjugate(commutator_of_commutators(), tr.conjugator);
      CHECK(value(tr.proof) == target);
      CHECK(cube_product_value(tr.cube_product) == target);
      CHECK(tr.cube_product.size() == tr.cubes);
      CHECK(is_relator_only(tr.proof));
    }
  }

  TEST_CASE("trials are deterministic") {
    TrialResult a = run_trial(pinned(), 2);
    TrialResult b = run_trial(pinned(), 2);
    CHECK(a.to_json() == b.to_json());
    REQUIRE(a.targets.size() == b.targets.size());
    for (std::size_t i = 0; i < a.targets.size(); ++i) {
      CHECK(format_proofword(a.targets[i].proof) == format_proofword(b.targets[i].proof));
    }
    CHECK(a.presentation_digest == b.presentation_digest);
    CHECK(a.presentation_digest != run_trial(pinned(), 3).presentation_digest);
  }

  TEST_CASE("rejected trials") {
    TrialConfig cfg = pinned();
    cfg.max_cosets  = 50;
    TrialResult t   = run_trial(cfg, 2);
    CHECK(t.status == TrialResult::Status::not_closed);
    CHECK(t.targets.empty());
    CHECK(t.best() == nullptr);

    CampaignOptions o;
    o.trial       = cfg;
    o.trials      = 2;
    o.first_trial = 2;
    o.out_dir     = scratch("rejected");
    BestLedger led = run_campaign(o);
    CHECK_FALSE(led.best);
    CHECK(led.trials == 2);
    CHECK(led.accepted == 0);
    CHECK(lines_of(o.out_dir / "ledger.jsonl").size() == 2);
    fs::remove_all(o.out_dir);
  }

  TEST_CASE("campaign output") {
    CampaignOptions o;
    o.trial       = pinned();
    o.trials      = 2;
    o.first_trial = 2;
    o.out_dir     = scratch("campaign");
    BestLedger led = run_campaign(o);
    REQUIRE(led.best);
    CHECK(led.accepted == 2);
    CHECK(led.io_errors.empty());
    CHECK(led.best->cubes >= 2);
    CHECK(fs::exists(o.out_dir / "best.json"));
    auto lines = lines_of(o.out_dir / "ledger.jsonl");
    CHECK(lines.size() == 2);
    CHECK(lines[0] == run_trial(o.trial, 2).to_json());

    std::size_t checked = 0;
    for (auto const& [u, entry] : led.per_target) {
      CAPTURE(u);
      CHECK(reverify_proof(o.out_dir / "proofs" / entry.proof_file, entry.conjugator));
      ++checked;
    }
    CHECK(checked == 12);
    CHECK(reverify_proof(o.out_dir / "proofs" / led.best->proof_file, led.best->conjugator));
    CHECK_FALSE(reverify_proof(o.out_dir / "proofs" / led.best->proof_file, W("x")));
    CHECK_FALSE(reverify_proof(o.out_dir / "missing.pw", Word()));

    // a second run appends to the ledger
    run_campaign(o);
    CHECK(lines_of(o.out_dir / "ledger.jsonl").size() == 4);

    // same results with two workers
    CampaignOptions p = o;
    p.workers         = 2;
    p.out_dir         = scratch("campaign2");
    BestLedger led2   = run_campaign(p);
    CHECK(led2.to_json() == led.to_json());
    CHECK(lines_of(p.out_dir / "ledger.jsonl") == lines);
    fs::remove_all(o.out_dir);
    fs::remove_all(p.out_dir);
  }
}
