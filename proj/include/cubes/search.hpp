// Randomized search for short cube products of conjugates of C.
//
// A trial draws a random presentation of B(4,3) from a pool of base-words,
// enumerates cosets of <x_1..x_r>, and for every target C^u extracts a
// proof, moves the subgroup generators to the tail, rewrites the tail in
// B(r,3), and distributes the conjugation into a cube product.

#ifndef CUBES_SEARCH_HPP_
#define CUBES_SEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubes/enumerator.hpp"
#include "cubes/proofword.hpp"

namespace cubes {

  struct TrialConfig {
    std::uint64_t seed           = 0;
    std::size_t   min_length     = 1;
    std::size_t   max_length     = 8;
    bool          exclude_length_one = false;
    // Optional file of pool words, one per line; overrides the length range.
    std::filesystem::path pool_file;
    std::size_t           relator_count = 250;
    std::size_t           subgroup_rank = 3;
    Strategy              strategy      = Strategy::felsch;
    double                efficiency_threshold = 3.0;
    std::size_t           max_cosets           = 1'000'000;
    std::size_t           max_proof_items      = 5'000'000;
    // Shorten proofs with rederive() before extraction.
    bool rederive = true;
    // Targets are C^u for each u.
    std::vector<Word> conjugators = default_conjugators();

    // Throws InvalidArgument when an invariant fails.
    void check() const;

    // The 16 products {e,W}{e,Z}{e,w}{e,z}.
    static std::vector<Word> default_conjugators();
  };

  struct TargetResult {
    Word        conjugator;
    std::string error;  // empty on success
    std::size_t cubes         = 0;
    std::size_t total_length  = 0;
    std::size_t conj_pairs    = 0;
    std::string proof_file;  // <digest>.pw
    ProofWord   proof;       // relator-only, value C^conjugator
    CubeProduct cube_product;

    bool ok() const { return error.empty(); }
  };

  struct TrialResult {
    enum class Status : std::uint8_t { accepted, not_closed, wrong_index, inefficient };

    std::uint64_t seed        = 0;
    std::size_t   trial       = 0;
    std::uint64_t trial_seed  = 0;
    std::string   presentation_digest;
    Presentation  presentation;
    bool          closed        = false;
    std::size_t   index         = 0;
    std::size_t   total_defined = 0;
    double        efficiency    = 0.0;
    Status        status        = Status::not_closed;
    std::vector<TargetResult> targets;

    // Best verified target, by cube count then total length.
    TargetResult const* best() const;
    // One line of JSON; proofs are referenced by file name only.
    std::string to_json() const;
  };

  std::string_view to_string(TrialResult::Status s);

  // 64-bit FNV-1a as 16 hex digits.
  std::string digest(std::string_view text);
  std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

  // The presentation of B(r,3) used to rewrite subgroup words, r in 1..3.
  Presentation subgroup_presentation(std::size_t r);

  // Holds everything a trial needs that does not depend on the trial index:
  // the pool and the enumeration of B(r,3). Safe to share between threads.
  class Harness {
   public:
    explicit Harness(TrialConfig cfg);

    TrialConfig const&       config() const { return cfg_; }
    std::vector<Word> const& pool() const { return pool_; }

    TrialResult run_trial(std::size_t trial) const;
    // The cube-product pipeline for one target on a closed enumeration.
    TargetResult prove_target(Enumeration const& e, Word const& conjugator) const;

   private:
    TrialConfig                  cfg_;
    std::vector<Word>            pool_;
    std::shared_ptr<Enumeration> rewrite_;
  };

  TrialResult run_trial(TrialConfig const& cfg, std::size_t trial);

  struct BestEntry {
    std::size_t trial = 0;
    Word        conjugator;
    std::size_t cubes        = 0;
    std::size_t total_length = 0;
    std::string proof_file;
  };

  struct BestLedger {
    std::optional<BestEntry>          best;
    std::map<std::string, BestEntry>  per_target;  // keyed by conjugator text
    std::size_t                       trials   = 0;
    std::size_t                       accepted = 0;
    std::vector<std::string>          io_errors;

    // True if e beats the current best for its target.
    bool offer(BestEntry const& e);
    std::string to_json() const;
  };

  struct CampaignOptions {
    TrialConfig           trial;
    std::size_t           trials      = 1;
    std::size_t           first_trial = 0;
    std::size_t           workers     = 1;
    std::filesystem::path out_dir;  // empty: nothing is written
    std::function<void(TrialResult const&)> progress;
  };

  // key=value lines; '#' starts a comment.
  CampaignOptions read_campaign_config(std::filesystem::path const& path);
  CampaignOptions parse_campaign_config(std::string_view text);

  // Results are handled in trial order whatever the number of workers.
  // Under out_dir: ledger.jsonl (appended), proofs/<digest>.pw, best.json.
  BestLedger run_campaign(CampaignOptions const& opts);

  // Re-reads a persisted proof and checks value = C^conjugator.
  bool reverify_proof(std::filesystem::path const& file, Word const& conjugator);

}  // namespace cubes

#endif  // CUBES_SEARCH_HPP_
