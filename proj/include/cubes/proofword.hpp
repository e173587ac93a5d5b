// Proof-words: a word written as interleaved conjugator letters,
// parenthesised relator instances and bracketed subgroup generators, e.g.
//
//   Wzy(YwYwYw)Wy(WXyWXyWXy)YwYZw[Y][Z](zyWzyWzyW)...
//
// Grammar (whitespace ignored between tokens, nesting forbidden):
//
//   proofword := item*
//   item      := LETTER | '(' LETTER+ ')' | '[' LETTER ']'

#ifndef CUBES_PROOFWORD_HPP_
#define CUBES_PROOFWORD_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubes/word.hpp"

namespace cubes {

  class Presentation;
  class SubgroupSpec;

  struct ProofItem {
    enum class Kind : std::uint8_t { conjugator, relator, subgroup_gen };

    Kind kind = Kind::conjugator;
    Gen  gen;      // conjugator and subgroup_gen
    Word relator;  // relator only; nonempty and freely reduced

    static ProofItem conj(Gen g) { return {Kind::conjugator, g, {}}; }
    static ProofItem subgen(Gen g) { return {Kind::subgroup_gen, g, {}}; }
    static ProofItem rel(Word w);

    bool is_conjugator() const { return kind == Kind::conjugator; }
    bool is_relator() const { return kind == Kind::relator; }
    bool is_subgroup_gen() const { return kind == Kind::subgroup_gen; }

    ProofItem inverse() const;

    bool operator==(ProofItem const&) const = default;
  };

  using ProofWord = std::vector<ProofItem>;

  struct ProofStats {
    std::size_t relator_count        = 0;
    std::size_t total_relator_length = 0;
    std::size_t conj_letter_count    = 0;
    std::size_t conj_pair_count      = 0;  // conj_letter_count / 2
    std::size_t subgen_count         = 0;

    bool odd_conjugators() const { return conj_letter_count % 2 != 0; }
    bool operator==(ProofStats const&) const = default;
  };

  struct CubeFactor {
    Word base;
    Word conjugator;
    bool operator==(CubeFactor const&) const = default;
  };

  // Product of (base^3)^conjugator over the factors, in order.
  using CubeProduct = std::vector<CubeFactor>;

  struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
    bool ok() const { return violations.empty(); }
  };

  ////////////////////////////////////////////////////////////////////////
  // Text format
  ////////////////////////////////////////////////////////////////////////

  ProofWord parse_proofword(std::string_view text, Alphabet const& alphabet = Alphabet());
  // Items are written back to back; a positive wrap breaks lines between
  // items once a line reaches that many characters.
  std::string format_proofword(ProofWord const& p,
                               Alphabet const&  alphabet = Alphabet(),
                               std::size_t      wrap     = 0);

  ////////////////////////////////////////////////////////////////////////
  // Evaluation
  ////////////////////////////////////////////////////////////////////////

  // Every letter of every item, delimiters dropped, without reduction.
  std::vector<Gen> flatten(ProofWord const& p);
  Word             value(ProofWord const& p);
  // Value with relator instances deleted.
  Word residue(ProofWord const& p);
  // Free reduction of the subgroup generator letters alone.
  Word bracket_concat(ProofWord const& p);
  // Free reduction of the conjugator letters alone.
  Word conjugator_total(ProofWord const& p);

  ProofStats stats(ProofWord const& p);
  // Letter count including relator letters, excluding delimiters.
  std::size_t letter_count(ProofWord const& p);

  ValidationReport validate(ProofWord const&    p,
                            Presentation const& pres,
                            SubgroupSpec const& sub);

  std::optional<Word> is_cube(Word const& w);

  // Inverse proof: items reversed, every item inverted.
  ProofWord inverse(ProofWord const& p);
  // Appends q to p, cancelling adjacent inverse conjugator letters.
  void append_reduced(ProofWord& p, ProofWord const& q);
  void push_reduced(ProofWord& p, ProofItem item);

  bool is_relator_only(ProofWord const& p);

  ////////////////////////////////////////////////////////////////////////
  // Transformations
  ////////////////////////////////////////////////////////////////////////

  // Collects all subgroup generators into one block at the tail. For each
  // earlier block g, g^-1 g is inserted before the tail, the original
  // brackets become conjugator letters, and the inserted copy of g becomes
  // bracketed.
  ProofWord shuffle_subgens(ProofWord const& p);
  // One step of shuffle_subgens: moves the last bracket block before the
  // tail block. Empty when the brackets already form a single tail block.
  std::optional<ProofWord> shuffle_step(ProofWord const& p);

  // Replaces the trailing subgroup generator block of p with q.
  ProofWord splice(ProofWord const& p, ProofWord const& q);

  struct SplitProof {
    ProofWord first;
    ProofWord second;
  };

  // Splits the relator-only p immediately before relator k (1-based). The
  // freely trivial pad is inserted at the split point; the shortest prefix
  // of pad that balances the conjugators of the first part stays with it.
  SplitProof split(ProofWord const& p, std::size_t k, std::span<Gen const> pad = {});

  CubeProduct to_cubes(ProofWord const& p);
  Word        cube_product_value(CubeProduct const& cp);
  CubeProduct conjugate(CubeProduct const& cp, Word const& v);

  // Greedy peephole: a (R) A with R ending in a, or starting with A, becomes
  // a rotation of R. Also cancels adjacent inverse conjugator letters.
  ProofWord absorb_conjugation(ProofWord const& p);

}  // namespace cubes

#endif  // CUBES_PROOFWORD_HPP_
