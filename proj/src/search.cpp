#include "cubes/search.hpp"

#include <algorithm>
#include <charconv>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cubes/proof_extract.hpp"

namespace cubes {

  using json = nlohmann::json;

  ////////////////////////////////////////////////////////////////////////
  // TrialConfig
  ////////////////////////////////////////////////////////////////////////

  std::vector<Word> TrialConfig::default_conjugators() {
    Word const W{Gen(3, true)}, Z{Gen(2, true)}, w{Gen(3, false)}, z{Gen(2, false)};
    std::vector<Word> out;
    for (int mask = 0; mask < 16; ++mask) {
      out.push_back(concat({mask & 8 ? W : Word(), mask & 4 ? Z : Word(),
                            mask & 2 ? w : Word(), mask & 1 ? z : Word()}));
    }
    return out;
  }

  void TrialConfig::check() const {
    if (efficiency_threshold < 1.0) {
      throw InvalidArgument("efficiency threshold must be at least 1.0");
    }
    if (subgroup_rank > 3) {
      throw InvalidArgument("subgroup rank must be at most 3");
    }
    if (pool_file.empty() && (min_length < 1 || min_length > max_length)) {
      throw InvalidArgument("pool lengths must satisfy 1 <= min <= max");
    }
    if (relator_count == 0) {
      throw InvalidArgument("relator count must be positive");
    }
    if (max_cosets == 0) {
      throw InvalidArgument("max_cosets must be positive");
    }
    for (Word const& u : conjugators) {
      if (u.rank_used() > 4) {
        throw InvalidArgument("conjugators must be words in x, y, z, w");
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Helpers
  ////////////////////////////////////////////////////////////////////////

  std::string digest(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
      h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
    // splitmix64 of a per-trial offset
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
    z               = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z               = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  Presentation subgroup_presentation(std::size_t r) {
    Alphabet a(r);
    switch (r) {
      case 1:
        return Presentation(a, {Word::parse("x", a)});
      case 2:
        return Presentation(a, {Word::parse("x", a), Word::parse("y", a), Word::parse("xy", a),
                                Word::parse("xY", a)});
      case 3:
        return Presentation(a, base_words(a, 1, 3));
      default:
        throw InvalidArgument("subgroup rank must be 1, 2 or 3");
    }
  }

  std::string_view to_string(TrialResult::Status s) {
    switch (s) {
      case TrialResult::Status::accepted:
        return "accepted";
      case TrialResult::Status::not_closed:
        return "not_closed";
      case TrialResult::Status::wrong_index:
        return "wrong_index";
      case TrialResult::Status::inefficient:
        return "inefficient";
    }
    return "?";
  }

  namespace {
    std::vector<Word> read_pool(std::filesystem::path const& path, Alphabet const& alphabet) {
      std::ifstream in(path);
      if (!in) {
        throw Error("cannot open pool file " + path.string());
      }
      std::vector<Word> pool;
      std::string       line;
      std::size_t       lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
          line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
          continue;
        }
        Word w;
        try {
          w = Word::parse(line, alphabet);
        } catch (ParseError const& e) {
          throw ParseError(e.message(), lineno, e.column());
        }
        if (w.empty() || !is_cyclically_reduced(w)) {
          throw ParseError("pool word is not cyclically reduced", lineno);
        }
        pool.push_back(canonical_rep(w));
      }
      std::sort(pool.begin(), pool.end());
      pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
      return pool;
    }

    bool better(std::size_t cubes, std::size_t length, std::size_t best_cubes, std::size_t best_length) {
      return cubes < best_cubes || (cubes == best_cubes && length < best_length);
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Harness
  ////////////////////////////////////////////////////////////////////////

  Harness::Harness(TrialConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.check();
    Alphabet const a(4);
    if (!cfg_.pool_file.empty()) {
      pool_ = read_pool(cfg_.pool_file, a);
    } else {
      std::size_t lo = cfg_.exclude_length_one ? std::max<std::size_t>(cfg_.min_length, 2) : cfg_.min_length;
      if (lo > cfg_.max_length) {
        throw InvalidArgument("pool length range is empty");
      }
      pool_ = base_words(a, lo, cfg_.max_length);
    }
    if (cfg_.relator_count > pool_.size()) {
      throw InvalidArgument("relator count " + std::to_string(cfg_.relator_count) + " exceeds pool size "
                            + std::to_string(pool_.size()));
    }
    if (cfg_.subgroup_rank > 0) {
      EnumOptions opts;
      opts.strategy = Strategy::felsch;
      Enumeration sub = enumerate(subgroup_presentation(cfg_.subgroup_rank), SubgroupSpec(), opts);
      if (!sub.result.closed || sub.result.index != expected_order(cfg_.subgroup_rank)) {
        throw Error("enumeration of the subgroup presentation failed");
      }
      rewrite_ = std::make_shared<Enumeration>(cfg_.rederive ? rederive(sub) : std::move(sub));
    }
  }

  TargetResult Harness::prove_target(Enumeration const& e, Word const& u) const {
    TargetResult out;
    out.conjugator    = u;
    Word const target = conjugate(commutator_of_commutators(), u);
    try {
      ExtractOptions xopts;
      xopts.max_items = cfg_.max_proof_items;
      ProofWord p     = ProofExtractor(e, xopts).extract(target);
      p               = shuffle_subgens(p);
      if (!is_relator_only(p)) {
        ProofWord const tail = p;
        Word const      h    = bracket_concat(p);
        ProofWord       q;
        if (!h.empty()) {
          if (rewrite_ == nullptr) {
            throw Error("subgroup residue without a subgroup presentation");
          }
          q = ProofExtractor(*rewrite_, xopts).extract(h);
        }
        p = splice(tail, q);
      }
      CubeProduct cp = to_cubes(p);
      if (cube_product_value(cp) != target || value(p) != target) {
        throw Error("cube product does not verify");
      }
      if (cp.size() < 2) {
        throw Error("fewer than two cubes for a conjugate of C");
      }
      ProofStats const s = stats(p);
      out.cubes          = cp.size();
      out.total_length   = s.total_relator_length;
      out.conj_pairs     = s.conj_pair_count;
      out.proof          = std::move(p);
      out.cube_product   = std::move(cp);
      out.proof_file     = digest(format_proofword(out.proof)) + ".pw";
    } catch (std::exception const& ex) {
      out.error = ex.what();
      out.proof.clear();
      out.cube_product.clear();
    }
    return out;
  }

  TrialResult Harness::run_trial(std::size_t trial) const {
    TrialResult r;
    r.seed       = cfg_.seed;
    r.trial      = trial;
    r.trial_seed = trial_seed(cfg_.seed, trial);

    Alphabet const a(4);
    r.presentation        = random_presentation(a, pool_, cfg_.relator_count, r.trial_seed);
    SubgroupSpec const sub = SubgroupSpec::first(cfg_.subgroup_rank);
    r.presentation_digest = digest(write_presentation(r.presentation, sub));

    EnumOptions opts;
    opts.strategy    = cfg_.strategy;
    opts.max_cosets  = cfg_.max_cosets;
    Enumeration e    = enumerate(r.presentation, sub, opts);
    r.closed         = e.result.closed;
    r.index          = e.result.index;
    r.total_defined  = e.result.total_defined;
    r.efficiency     = e.result.efficiency();
    if (!r.closed) {
      r.status = TrialResult::Status::not_closed;
      return r;
    }
    if (r.index != expected_index(4, cfg_.subgroup_rank)) {
      r.status = TrialResult::Status::wrong_index;
      return r;
    }
    if (r.efficiency > cfg_.efficiency_threshold) {
      r.status = TrialResult::Status::inefficient;
      return r;
    }
    r.status = TrialResult::Status::accepted;
    if (cfg_.rederive) {
      e = rederive(e);
    }
    for (Word const& u : cfg_.conjugators) {
      r.targets.push_back(prove_target(e, u));
    }
    return r;
  }

  TrialResult run_trial(TrialConfig const& cfg, std::size_t trial) {
    return Harness(cfg).run_trial(trial);
  }

  TargetResult const* TrialResult::best() const {
    TargetResult const* b = nullptr;
    for (TargetResult const& t : targets) {
      if (t.ok() && (b == nullptr || better(t.cubes, t.total_length, b->cubes, b->total_length))) {
        b = &t;
      }
    }
    return b;
  }

  std::string TrialResult::to_json() const {
    json j;
    j["seed"]          = seed;
    j["trial"]         = trial;
    j["trial_seed"]    = trial_seed;
    j["presentation"]  = presentation_digest;
    j["relators"]      = presentation.size();
    j["closed"]        = closed;
    j["index"]         = index;
    j["total_defined"] = total_defined;
    j["efficiency"]    = efficiency;
    j["status"]        = std::string(to_string(status));
    json targets_json  = json::array();
    for (TargetResult const& t : targets) {
      json tj;
      tj["conjugator"] = t.conjugator.str(Alphabet(4));
      if (t.ok()) {
        tj["cubes"]  = t.cubes;
        tj["length"] = t.total_length;
        tj["pairs"]  = t.conj_pairs;
        tj["proof"]  = t.proof_file;
      } else {
        tj["error"] = t.error;
      }
      targets_json.push_back(std::move(tj));
    }
    j["targets"] = std::move(targets_json);
    return j.dump();
  }

  ////////////////////////////////////////////////////////////////////////
  // Campaigns
  ////////////////////////////////////////////////////////////////////////

  bool BestLedger::offer(BestEntry const& e) {
    std::string key = e.conjugator.str(Alphabet(4));
    auto        it  = per_target.find(key);
    bool        improved = false;
    if (it == per_target.end() || better(e.cubes, e.total_length, it->second.cubes, it->second.total_length)) {
      per_target[key] = e;
      improved        = true;
    }
    if (!best || better(e.cubes, e.total_length, best->cubes, best->total_length)) {
      best = e;
    }
    return improved;
  }

  std::string BestLedger::to_json() const {
    auto entry = [](BestEntry const& e) {
      json j;
      j["trial"]      = e.trial;
      j["conjugator"] = e.conjugator.str(Alphabet(4));
      j["cubes"]      = e.cubes;
      j["length"]     = e.total_length;
      j["proof"]      = e.proof_file;
      return j;
    };
    json j;
    j["trials"]   = trials;
    j["accepted"] = accepted;
    j["best"]     = best ? entry(*best) : json(nullptr);
    json pt       = json::object();
    for (auto const& [k, e] : per_target) {
      pt[k.empty() ? "1" : k] = entry(e);
    }
    j["per_target"] = std::move(pt);
    return j.dump(2);
  }

  CampaignOptions parse_campaign_config(std::string_view text) {
    CampaignOptions    opts;
    TrialConfig&       c = opts.trial;
    std::istringstream in{std::string(text)};
    std::string        line;
    std::size_t        lineno = 0;
    Alphabet const     a(4);

    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };

    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) {
        line.erase(hash);
      }
      line = trim(line);
      if (line.empty()) {
        continue;
      }
      auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ParseError("expected key=value", lineno);
      }
      std::string key = trim(line.substr(0, eq));
      std::string val = trim(line.substr(eq + 1));

      auto number = [&]() -> std::uint64_t {
        std::uint64_t v   = 0;
        auto [ptr, ec]    = std::from_chars(val.data(), val.data() + val.size(), v);
        if (ec != std::errc() || ptr != val.data() + val.size()) {
          throw ParseError("expected a non-negative integer for " + key, lineno);
        }
        return v;
      };
      auto boolean = [&]() {
        if (val == "true" || val == "1" || val == "yes") {
          return true;
        }
        if (val == "false" || val == "0" || val == "no") {
          return false;
        }
        throw ParseError("expected true or false for " + key, lineno);
      };

      try {
        if (key == "seed") {
          c.seed = number();
        } else if (key == "trials") {
          opts.trials = number();
        } else if (key == "first_trial") {
          opts.first_trial = number();
        } else if (key == "workers") {
          opts.workers = number();
        } else if (key == "out") {
          opts.out_dir = val;
        } else if (key == "min_length") {
          c.min_length = number();
        } else if (key == "max_length") {
          c.max_length = number();
        } else if (key == "exclude_length_one") {
          c.exclude_length_one = boolean();
        } else if (key == "pool_file") {
          c.pool_file = val;
        } else if (key == "relators") {
          c.relator_count = number();
        } else if (key == "subgroup_rank") {
          c.subgroup_rank = number();
        } else if (key == "strategy") {
          c.strategy = parse_strategy(val);
        } else if (key == "efficiency") {
          c.efficiency_threshold = std::stod(val);
        } else if (key == "max_cosets") {
          c.max_cosets = number();
        } else if (key == "rederive") {
          c.rederive = boolean();
        } else if (key == "max_proof_items") {
          c.max_proof_items = number();
        } else if (key == "conjugators") {
          c.conjugators.clear();
          std::istringstream parts(val);
          std::string        part;
          while (std::getline(parts, part, ',')) {
            part = trim(part);
            c.conjugators.push_back(part == "1" ? Word() : Word::parse(part, a));
          }
        } else {
          throw ParseError("unknown key " + key, lineno);
        }
      } catch (ParseError const& e) {
        throw ParseError(e.message(), lineno, e.column());
      } catch (std::exception const& e) {
        throw ParseError(std::string(e.what()), lineno);
      }
    }
    if (opts.trials == 0) {
      throw ParseError("trials must be at least 1");
    }
    return opts;
  }

  CampaignOptions read_campaign_config(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error("cannot open config file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_campaign_config(ss.str());
  }

  bool reverify_proof(std::filesystem::path const& file, Word const& conjugator) {
    std::ifstream in(file);
    if (!in) {
      return false;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      ProofWord p = parse_proofword(ss.str());
      return value(p) == conjugate(commutator_of_commutators(), conjugator)
             && cube_product_value(to_cubes(p)) == value(p);
    } catch (std::exception const&) {
      return false;
    }
  }

  namespace {
    void write_file(std::filesystem::path const& path, std::string const& text) {
      std::ofstream out(path, std::ios::trunc);
      if (!out || !(out << text) || !out.flush()) {
        throw Error("cannot write " + path.string());
      }
    }

    // Single writer: called in trial order from the campaign thread.
    void persist(CampaignOptions const& opts, TrialResult const& r, BestLedger& ledger) {
      ++ledger.trials;
      if (r.status == TrialResult::Status::accepted) {
        ++ledger.accepted;
      }
      bool const to_disk = !opts.out_dir.empty();
      auto       io      = [&](auto&& f) {
        try {
          f();
        } catch (std::exception const& e) {
          ledger.io_errors.push_back("trial " + std::to_string(r.trial) + ": " + e.what());
        }
      };
      if (to_disk) {
        io([&] {
          std::ofstream out(opts.out_dir / "ledger.jsonl", std::ios::app);
          if (!out || !(out << r.to_json() << '\n') || !out.flush()) {
            throw Error("cannot append to ledger.jsonl");
          }
        });
      }
      bool improved = false;
      for (TargetResult const& t : r.targets) {
        if (!t.ok()) {
          continue;
        }
        if (to_disk) {
          io([&] {
            std::filesystem::path file = opts.out_dir / "proofs" / t.proof_file;
            if (!std::filesystem::exists(file)) {
              write_file(file, format_proofword(t.proof, Alphabet(4), 72) + "\n");
            }
          });
        }
        improved |= ledger.offer({r.trial, t.conjugator, t.cubes, t.total_length, t.proof_file});
      }
      if (to_disk && improved) {
        io([&] { write_file(opts.out_dir / "best.json", ledger.to_json() + "\n"); });
      }
    }
  }  // namespace

  BestLedger run_campaign(CampaignOptions const& opts) {
    if (opts.trials == 0) {
      throw InvalidArgument("a campaign needs at least one trial");
    }
    BestLedger ledger;
    if (!opts.out_dir.empty()) {
      try {
        std::filesystem::create_directories(opts.out_dir / "proofs");
      } catch (std::exception const& e) {
        ledger.io_errors.push_back(e.what());
      }
    }
    Harness const harness(opts.trial);

    std::size_t const nworkers = std::max<std::size_t>(1, std::min(opts.workers, opts.trials));
    std::vector<std::optional<TrialResult>> results(opts.trials);
    std::vector<std::exception_ptr>         failures(opts.trials);
    std::mutex                              mtx;
    std::condition_variable                 cv;
    std::size_t                             next = 0;

    auto work = [&] {
      while (true) {
        std::size_t i;
        {
          std::lock_guard lock(mtx);
          if (next == opts.trials) {
            return;
          }
          i = next++;
        }
        std::optional<TrialResult> r;
        std::exception_ptr         err;
        try {
          r = harness.run_trial(opts.first_trial + i);
        } catch (...) {
          err = std::current_exception();
        }
        {
          std::lock_guard lock(mtx);
          results[i]  = std::move(r);
          failures[i] = err;
        }
        cv.notify_all();
      }
    };

    std::vector<std::thread> pool;
    if (nworkers == 1) {
      work();
    } else {
      for (std::size_t k = 0; k < nworkers; ++k) {
        pool.emplace_back(work);
      }
    }

    for (std::size_t i = 0; i < opts.trials; ++i) {
      std::optional<TrialResult> r;
      std::exception_ptr         err;
      {
        std::unique_lock lock(mtx);
        cv.wait(lock, [&] { return results[i].has_value() || failures[i] != nullptr; });
        r   = std::move(results[i]);
        err = failures[i];
        results[i].reset();
      }
      if (err) {
        try {
          std::rethrow_exception(err);
        } catch (std::exception const& e) {
          ledger.io_errors.push_back("trial " + std::to_string(opts.first_trial + i) + ": " + e.what());
        }
        ++ledger.trials;
        continue;
      }
      persist(opts, *r, ledger);
      if (opts.progress) {
        opts.progress(*r);
      }
    }
    for (std::thread& t : pool) {
      t.join();
    }
    return ledger;
  }

}  // namespace cubes
