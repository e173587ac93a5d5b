// Proof-words from a closed enumeration's ledger.
//
// The proof of a ledger node is the concatenation of its terms' proofs; a
// relator term at coset d expands to rep(d) (R) rep(d)^-1 with rep(d) as
// conjugator letters, and a subgroup term to a single bracket. Proofs of
// an edge path telescope, so the edges along the trace of a word w from
// coset 1 back to 1 give a proof-word with value w.

#ifndef CUBES_PROOF_EXTRACT_HPP_
#define CUBES_PROOF_EXTRACT_HPP_

#include <cstddef>
#include <memory>
#include <vector>

#include "cubes/enumerator.hpp"
#include "cubes/proofword.hpp"

namespace cubes {

  struct ExtractOptions {
    // Expanding a node beyond this many items fails with ProofTooLarge.
    std::size_t max_items = 50'000'000;
    bool        use_cache = true;
    bool        absorb    = true;
  };

  struct EdgeProof {
    ProofWord proof;
    Word      value_check;  // rep(a) g rep(b)^-1
  };

  class ProofExtractor {
   public:
    explicit ProofExtractor(Enumeration const& e, ExtractOptions opts = {});

    // Throws InvalidArgument if the entry (a, g) is empty or a is dead.
    EdgeProof edge_proof(coset_id a, Gen g);

    // Proof-word with value target; the table must be closed and target must
    // trace from coset 1 back to 1, otherwise InvalidArgument.
    ProofWord extract(Word const& target);

    // Proof of an arbitrary ledger term.
    ProofWord expand(Term t);
    // The value a term's proof must reduce to.
    Word term_value(Term t) const;

   private:
    std::shared_ptr<ProofWord const> expand_node(std::uint32_t id);
    void append(ProofWord& acc, ProofWord const& part, bool inverted) const;
    void append_leaf(ProofWord& acc, Term t) const;
    Word const& rep(coset_id c) const;

    Enumeration const&                            enumeration_;
    ExtractOptions                                opts_;
    std::vector<std::shared_ptr<ProofWord const>> memo_;
    mutable std::vector<std::unique_ptr<Word>>    reps_;
  };

  // Proof-word for w in the group presented by pres, via enumeration over
  // the trivial subgroup. InvalidArgument if the enumeration does not close
  // or w is not trivial there.
  ProofWord prove_trivial(Word const&           w,
                          Presentation const&   pres,
                          EnumOptions const&    enum_opts    = {},
                          ExtractOptions const& extract_opts = {});

  // to_cubes(prove_trivial(w, pres)).
  CubeProduct rewrite_as_cubes(Word const&           w,
                               Presentation const&   pres,
                               EnumOptions const&    enum_opts    = {},
                               ExtractOptions const& extract_opts = {});

}  // namespace cubes

#endif  // CUBES_PROOF_EXTRACT_HPP_
