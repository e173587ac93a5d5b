// Command line front end: verify, stats, cubes, basewords, enumerate,
// extract, rewrite and search.
//
// Exit status: 0 success, 1 failed verification or operation, 2 usage or
// parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cubes/enumerator.hpp"
#include "cubes/proof_extract.hpp"
#include "cubes/search.hpp"

using namespace cubes;

namespace {

  constexpr int exit_ok    = 0;
  constexpr int exit_fail  = 1;
  constexpr int exit_usage = 2;

  // Bad input files and words are usage errors, not failed verifications.
  struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  bool quiet() {
    char const* q = std::getenv("QUIET");
    return q != nullptr && *q != '\0' && std::string(q) != "0";
  }

  void progress(std::string const& line) {
    if (!quiet()) {
      std::cerr << line << '\n';
    }
  }

  std::string slurp(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw UsageError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void emit(std::string const& out_path, std::string const& text) {
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(out_path);
    if (!out || !(out << text) || !out.flush()) {
      throw Error("cannot write " + out_path);
    }
  }

  // "C", "C^u", "1" or a plain word.
  Word parse_target(std::string const& text, Alphabet const& a) {
    if (text == "1") {
      return Word();
    }
    if (text == "C") {
      return commutator_of_commutators();
    }
    if (text.rfind("C^", 0) == 0) {
      return conjugate(commutator_of_commutators(), Word::parse(text.substr(2), a));
    }
    return Word::parse(text, a);
  }

  std::string show(Word const& w, Alphabet const& a) {
    return w.empty() ? "1" : w.str(a);
  }

  ProofWord load_proof(std::string const& path, Alphabet const& a) {
    return parse_proofword(slurp(path), a);
  }

  PresentationFile load_pres(std::string const& path) {
    return read_presentation(slurp(path));
  }

  void print_stats(ProofWord const& p, Alphabet const& a) {
    ProofStats s = stats(p);
    std::cout << s.relator_count << " relators, length " << s.total_relator_length << ", "
              << s.conj_pair_count << " pairs\n";
    std::cout << "brackets " << s.subgen_count << '\n';
    if (s.odd_conjugators()) {
      std::cout << "warning: odd number of conjugator letters\n";
    }
    std::cout << "value " << show(value(p), a) << '\n';
    std::cout << "residue " << show(residue(p), a) << '\n';
  }

  std::string cube_lines(CubeProduct const& cp, Alphabet const& a) {
    std::string out;
    for (CubeFactor const& f : cp) {
      out += f.base.str(a) + " ^3 " + f.conjugator.str(a) + "\n";
    }
    return out;
  }

  SubgroupSpec choose_subgroup(PresentationFile const& pf, std::string const& letters) {
    if (!letters.empty()) {
      return letters == "1" ? SubgroupSpec() : SubgroupSpec::parse(letters, pf.presentation.alphabet());
    }
    return pf.subgroup.value_or(SubgroupSpec());
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cube products of the commutator of commutators"};
  app.require_subcommand(1, 1);

  Alphabet const a4(4);

  // verify
  std::string proof_path, target_text, pres_path, sub_letters;
  auto*       verify = app.add_subcommand("verify", "check a proof-word's value, and its relators against a presentation");
  verify->add_option("--proof", proof_path, "proof-word file")->required();
  verify->add_option("--target", target_text, "expected value: a word, C or C^<word>")->required();
  verify->add_option("--presentation", pres_path, "presentation file");
  verify->add_option("--subgroup", sub_letters, "subgroup generators, overriding the file");

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "print proof-word statistics");
  stats_cmd->add_option("--proof", proof_path, "proof-word file")->required();

  // cubes
  auto* cubes_cmd = app.add_subcommand("cubes", "distribute conjugation into a product of cubes");
  cubes_cmd->add_option("--proof", proof_path, "relator-only proof-word file")->required();

  // basewords
  std::size_t bw_min = 1, bw_max = 4, rank = 4;
  auto*       bw     = app.add_subcommand("basewords", "list canonical base-words");
  bw->add_option("--min", bw_min, "minimum length")->check(CLI::PositiveNumber);
  bw->add_option("--max", bw_max, "maximum length")->check(CLI::PositiveNumber);
  bw->add_option("--rank", rank, "number of generators")->check(CLI::Range(1, 26));

  // enumerate
  std::string strategy_text = "hlt";
  std::size_t max_cosets    = 1'000'000;
  bool        dump = false, certify = false, paranoid = false;
  auto*       en = app.add_subcommand("enumerate", "Todd-Coxeter coset enumeration");
  en->add_option("--presentation", pres_path, "presentation file")->required();
  en->add_option("--subgroup", sub_letters, "subgroup generators, overriding the file ('1' for trivial)");
  en->add_option("--strategy", strategy_text, "hlt, felsch or hybrid");
  en->add_option("--max-cosets", max_cosets, "limit on cosets defined")->check(CLI::PositiveNumber);
  en->add_flag("--dump", dump, "print the coset table");
  en->add_flag("--certify", certify, "check rep^3 = 1 for every coset (trivial subgroup)");
  en->add_flag("--paranoid", paranoid, "check table consistency after every event");

  // extract
  std::string out_path;
  bool        do_rederive = false, no_absorb = false;
  std::size_t max_items = 50'000'000, wrap = 72;
  auto*       ex        = app.add_subcommand("extract", "extract a proof-word for a word trivial modulo the subgroup");
  ex->add_option("--presentation", pres_path, "presentation file")->required();
  ex->add_option("--target", target_text, "a word, C or C^<word>")->required();
  ex->add_option("--subgroup", sub_letters, "subgroup generators, overriding the file ('1' for trivial)");
  ex->add_option("--strategy", strategy_text, "hlt, felsch or hybrid");
  ex->add_option("--max-cosets", max_cosets, "limit on cosets defined")->check(CLI::PositiveNumber);
  ex->add_option("--max-items", max_items, "proof size limit")->check(CLI::PositiveNumber);
  ex->add_flag("--rederive", do_rederive, "shorten entry proofs before extracting");
  ex->add_flag("--no-absorb", no_absorb, "skip absorbing conjugation into relators");
  ex->add_option("--wrap", wrap, "line width of the output, 0 for one line");
  ex->add_option("--out", out_path, "write the proof-word here");

  // rewrite
  std::string word_text;
  auto*       rw = app.add_subcommand("rewrite", "rewrite a trivial word as a product of cubes");
  rw->add_option("--presentation", pres_path, "presentation file")->required();
  rw->add_option("--word", word_text, "a word trivial in the presented group")->required();
  rw->add_option("--strategy", strategy_text, "hlt, felsch or hybrid");
  rw->add_option("--max-cosets", max_cosets, "limit on cosets defined")->check(CLI::PositiveNumber);
  rw->add_flag("--rederive", do_rederive, "shorten entry proofs before extracting");
  rw->add_option("--out", out_path, "also write the relator-only proof-word here");

  // search
  std::string config_path;
  CampaignOptions copt;
  std::string     search_strategy;
  auto*           se = app.add_subcommand("search", "randomized search over presentations");
  se->add_option("--config", config_path, "campaign config file (key=value)");
  se->add_option("--seed", copt.trial.seed, "campaign seed");
  se->add_option("--trials", copt.trials, "number of trials")->check(CLI::PositiveNumber);
  se->add_option("--first-trial", copt.first_trial, "index of the first trial");
  se->add_option("--workers", copt.workers, "worker threads")->check(CLI::PositiveNumber);
  se->add_option("--min-length", copt.trial.min_length, "shortest pool word");
  se->add_option("--max-length", copt.trial.max_length, "longest pool word");
  se->add_flag("--exclude-length-one", copt.trial.exclude_length_one, "drop length one words from the pool");
  se->add_option("--pool", copt.trial.pool_file, "pool file, one word per line");
  se->add_option("--relators", copt.trial.relator_count, "relators per presentation");
  se->add_option("--subgroup-rank", copt.trial.subgroup_rank, "enumerate over <x_1..x_r>")->check(CLI::Range(0, 3));
  se->add_option("--strategy", search_strategy, "hlt, felsch or hybrid");
  se->add_option("--efficiency", copt.trial.efficiency_threshold, "largest accepted total/index");
  se->add_option("--max-cosets", copt.trial.max_cosets, "limit on cosets defined");
  se->add_option("--out", copt.out_dir, "directory for ledger.jsonl, proofs/ and best.json");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (verify->parsed()) {
      ProofWord p      = load_proof(proof_path, a4);
      Word      target = parse_target(target_text, a4);
      print_stats(p, a4);
      bool ok = value(p) == target;
      if (!ok) {
        std::cout << "FAIL: value differs from target " << show(target, a4) << '\n';
      }
      if (!pres_path.empty()) {
        PresentationFile pf  = load_pres(pres_path);
        ValidationReport rep = validate(p, pf.presentation, choose_subgroup(pf, sub_letters));
        for (auto const& v : rep.violations) {
          std::cout << "violation: " << v << '\n';
        }
        for (auto const& w : rep.warnings) {
          std::cout << "warning: " << w << '\n';
        }
        ok = ok && rep.ok();
      }
      std::cout << (ok ? "OK" : "FAILED") << '\n';
      return ok ? exit_ok : exit_fail;
    }

    if (stats_cmd->parsed()) {
      print_stats(load_proof(proof_path, a4), a4);
      return exit_ok;
    }

    if (cubes_cmd->parsed()) {
      ProofWord   p  = load_proof(proof_path, a4);
      CubeProduct cp = to_cubes(p);
      if (cube_product_value(cp) != value(p)) {
        std::cerr << "cube product does not multiply out to the proof's value\n";
        return exit_fail;
      }
      std::cout << cube_lines(cp, a4);
      return exit_ok;
    }

    if (bw->parsed()) {
      if (bw_min > bw_max) {
        throw UsageError("--min exceeds --max");
      }
      Alphabet a(rank);
      for (Word const& w : base_words(a, bw_min, bw_max)) {
        std::cout << w.str(a) << '\n';
      }
      return exit_ok;
    }

    if (en->parsed()) {
      PresentationFile pf = load_pres(pres_path);
      EnumOptions      opts;
      opts.strategy    = parse_strategy(strategy_text);
      opts.max_cosets  = max_cosets;
      opts.paranoid    = paranoid;
      SubgroupSpec sub = choose_subgroup(pf, sub_letters);
      Enumeration  e   = enumerate(pf.presentation, sub, opts);
      std::cout << "index " << e.result.index << '\n';
      std::cout << "total " << e.result.total_defined << '\n';
      std::cout << "closed " << (e.result.closed ? "yes" : "no") << '\n';
      if (dump) {
        e.table.dump(std::cout);
      }
      if (!e.result.closed) {
        return exit_fail;
      }
      if (certify) {
        bool ok = sub.empty() && certify_exponent3(e);
        std::cout << "exponent 3 " << (ok ? "certified" : "not certified") << '\n';
        if (!ok) {
          return exit_fail;
        }
      }
      return exit_ok;
    }

    if (ex->parsed()) {
      PresentationFile pf = load_pres(pres_path);
      Alphabet const&  a  = pf.presentation.alphabet();
      EnumOptions      opts;
      opts.strategy   = parse_strategy(strategy_text);
      opts.max_cosets = max_cosets;
      Word        target = parse_target(target_text, a);
      Enumeration e      = enumerate(pf.presentation, choose_subgroup(pf, sub_letters), opts);
      progress("enumeration: index " + std::to_string(e.result.index) + ", total "
               + std::to_string(e.result.total_defined));
      if (!e.result.closed) {
        std::cerr << "enumeration did not close\n";
        return exit_fail;
      }
      if (do_rederive) {
        e = rederive(e);
      }
      ExtractOptions xo;
      xo.max_items = max_items;
      xo.absorb    = !no_absorb;
      ProofWord p  = ProofExtractor(e, xo).extract(target);
      progress("proof: " + std::to_string(stats(p).relator_count) + " relators");
      emit(out_path, format_proofword(p, a, wrap) + "\n");
      return exit_ok;
    }

    if (rw->parsed()) {
      PresentationFile pf = load_pres(pres_path);
      Alphabet const&  a  = pf.presentation.alphabet();
      EnumOptions      opts;
      opts.strategy   = parse_strategy(strategy_text);
      opts.max_cosets = max_cosets;
      Word        w   = parse_target(word_text, a);
      Enumeration e   = enumerate(pf.presentation, SubgroupSpec(), opts);
      if (!e.result.closed) {
        std::cerr << "enumeration did not close\n";
        return exit_fail;
      }
      if (e.table.trace(1, w) != 1) {
        std::cerr << show(w, a) << " is not trivial in the presented group\n";
        return exit_fail;
      }
      if (do_rederive) {
        e = rederive(e);
      }
      ProofWord   p  = ProofExtractor(e).extract(w);
      CubeProduct cp = to_cubes(p);
      if (cube_product_value(cp) != w) {
        std::cerr << "cube product does not verify\n";
        return exit_fail;
      }
      if (!out_path.empty()) {
        emit(out_path, format_proofword(p, a, 72) + "\n");
      }
      std::cout << cube_lines(cp, a);
      return exit_ok;
    }

    if (se->parsed()) {
      if (!config_path.empty()) {
        // Flags given explicitly on the command line win over the file.
        CampaignOptions file = read_campaign_config(config_path);
        auto given = [&](char const* name) { return se->count(name) > 0; };
        if (given("--seed")) file.trial.seed = copt.trial.seed;
        if (given("--trials")) file.trials = copt.trials;
        if (given("--first-trial")) file.first_trial = copt.first_trial;
        if (given("--workers")) file.workers = copt.workers;
        if (given("--min-length")) file.trial.min_length = copt.trial.min_length;
        if (given("--max-length")) file.trial.max_length = copt.trial.max_length;
        if (given("--exclude-length-one")) file.trial.exclude_length_one = true;
        if (given("--pool")) file.trial.pool_file = copt.trial.pool_file;
        if (given("--relators")) file.trial.relator_count = copt.trial.relator_count;
        if (given("--subgroup-rank")) file.trial.subgroup_rank = copt.trial.subgroup_rank;
        if (given("--efficiency")) file.trial.efficiency_threshold = copt.trial.efficiency_threshold;
        if (given("--max-cosets")) file.trial.max_cosets = copt.trial.max_cosets;
        if (given("--out")) file.out_dir = copt.out_dir;
        copt = std::move(file);
      }
      if (!search_strategy.empty()) {
        copt.trial.strategy = parse_strategy(search_strategy);
      }
      copt.progress = [](TrialResult const& r) {
        std::string line = "trial " + std::to_string(r.trial) + ": " + std::string(to_string(r.status))
                           + ", index " + std::to_string(r.index);
        if (auto const* b = r.best()) {
          line += ", best " + std::to_string(b->cubes) + " cubes for C^" + show(b->conjugator, Alphabet(4));
        }
        progress(line);
      };
      BestLedger best = run_campaign(copt);
      std::cout << "trials " << best.trials << ", accepted " << best.accepted << '\n';
      if (best.best) {
        std::cout << "best " << best.best->cubes << " cubes, length " << best.best->total_length << ", C^"
                  << show(best.best->conjugator, a4) << ", trial " << best.best->trial << ", proof "
                  << best.best->proof_file << '\n';
      } else {
        std::cout << "no verified cube product\n";
      }
      for (auto const& e : best.io_errors) {
        std::cerr << "error: " << e << '\n';
      }
      return best.io_errors.empty() ? exit_ok : exit_fail;
    }
  } catch (UsageError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return exit_usage;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_fail;
  }
  return exit_usage;
}
