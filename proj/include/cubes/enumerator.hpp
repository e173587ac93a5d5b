// Todd-Coxeter coset enumeration with a justification ledger.
//
// Cosets are numbered from 1 (the subgroup coset); 0 marks an empty entry.
// Every coset keeps the word that defined it, rep(c), frozen at creation:
// rep(1) is empty and a coset defined as (a, g) has rep = rep(a) g.
//
// Every filled entry (a, g) = b, together with its mirror (b, g^-1) = a, is
// justified by one ledger node. A node is a product of terms, and the
// product's value as a free-group word is fixed by the node:
//
//   edge node (a, g, b):   rep(a) g rep(b)^-1
//   coincidence (p, q):    rep(p) rep(q)^-1
//
// A term is another node, a relator instance conjugated as
// rep(d) R rep(d)^-1, or a subgroup generator, each possibly inverted. Terms
// only reference nodes with smaller ids, so the ledger is acyclic.

#ifndef CUBES_ENUMERATOR_HPP_
#define CUBES_ENUMERATOR_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubes/presentation.hpp"
#include "cubes/word.hpp"

namespace cubes {

  using coset_id                     = std::uint32_t;
  inline constexpr coset_id no_coset = 0;

  enum class Strategy : std::uint8_t { hlt, felsch, hybrid };

  std::string_view to_string(Strategy s);
  // Throws InvalidArgument for anything but "hlt", "felsch" or "hybrid".
  Strategy parse_strategy(std::string_view s);

  class CosetTable {
   public:
    explicit CosetTable(std::size_t rank = 0);

    std::size_t rank() const { return ncols_ / 2; }
    std::size_t ncols() const { return ncols_; }
    // Number of cosets ever defined; ids run from 1 to this.
    std::size_t defined() const { return parent_.size() - 1; }
    // Number of live cosets.
    std::size_t index() const { return live_; }

    bool     is_alive(coset_id c) const { return c != 0 && c < alive_.size() && alive_[c]; }
    coset_id entry(coset_id c, Gen g) const { return entries_[c * ncols_ + g.code()]; }
    coset_id entry(coset_id c, std::size_t col) const { return entries_[c * ncols_ + col]; }

    std::vector<coset_id> live_cosets() const;

    // The defining word of c; valid for dead cosets too.
    Word     rep(coset_id c) const;
    coset_id parent(coset_id c) const { return parent_[c]; }
    Gen      parent_gen(coset_id c) const { return parent_gen_[c]; }

    // no_coset if some entry along the way is empty.
    coset_id trace(coset_id start, std::span<Gen const> letters) const;
    coset_id trace(coset_id start, Word const& w) const { return trace(start, w.letters()); }

    // Every live row has every entry filled.
    bool is_complete() const;
    // Every filled live entry points at a live coset and has its mirror.
    bool is_consistent() const;

    // One line per live coset: "c: e_x e_X e_y e_Y ...", 0 for empty.
    void dump(std::ostream& os) const;

   private:
    friend class Enumerator;
    friend class Rederiver;

    coset_id& at(coset_id c, std::size_t col) { return entries_[c * ncols_ + col]; }
    coset_id  new_coset(coset_id parent, Gen g);

    std::size_t           ncols_;
    std::size_t           live_ = 0;
    std::vector<coset_id> entries_;
    std::vector<uint8_t>  alive_;
    std::vector<coset_id> parent_;
    std::vector<Gen>      parent_gen_;
  };

  ////////////////////////////////////////////////////////////////////////
  // Ledger
  ////////////////////////////////////////////////////////////////////////

  // A cyclic conjugate of a relator or of its inverse, as scanned.
  struct RelatorForm {
    std::uint32_t    relator;   // index into the presentation
    std::uint32_t    rotation;  // first letter of the (possibly inverted) cube
    bool             inverted;
    std::vector<Gen> letters;
  };

  struct Term {
    enum class Kind : std::uint8_t { node, relator, subgroup_gen };

    Kind          kind     = Kind::node;
    bool          inverted = false;
    std::uint32_t id       = 0;  // node id, relator form id, or subgroup generator index
    coset_id      coset    = 0;  // conjugating coset of a relator term

    Term inverse() const {
      Term t     = *this;
      t.inverted = !t.inverted;
      return t;
    }
  };

  enum class Justification : std::uint8_t {
    definition,
    relator_deduction,
    subgroup_closure,
    coincidence_transfer,
    coincidence
  };

  std::string_view to_string(Justification j);

  struct LedgerNode {
    Justification kind;
    Gen           gen;   // edge nodes only
    coset_id      from;  // edge: source coset; coincidence: surviving side
    coset_id      to;
    std::uint32_t term_begin;
    std::uint32_t term_end;

    bool is_edge() const { return kind != Justification::coincidence; }
  };

  class Ledger {
   public:
    std::size_t       size() const { return nodes_.size(); }
    LedgerNode const& node(std::uint32_t id) const { return nodes_[id]; }
    std::span<Term const> terms(std::uint32_t id) const {
      auto const& n = nodes_[id];
      return {terms_.data() + n.term_begin, n.term_end - n.term_begin};
    }
    RelatorForm const& form(std::uint32_t id) const { return forms_[id]; }
    std::size_t        form_count() const { return forms_.size(); }

    // Node justifying entry (c, col) of the final table.
    std::uint32_t node_at(coset_id c, std::size_t col) const { return entry_node_[c * ncols_ + col]; }
    // Term for edge (c, g) -> entry(c, g), oriented in that direction.
    Term edge_term(coset_id c, Gen g) const;

    // Every term references an earlier node, and every live filled entry
    // has a node describing it in one of the two directions.
    bool is_well_formed(CosetTable const& table) const;

   private:
    friend class Enumerator;
    friend class Rederiver;

    std::size_t                ncols_ = 0;
    std::vector<LedgerNode>    nodes_;
    std::vector<Term>          terms_;
    std::vector<RelatorForm>   forms_;
    std::vector<std::uint32_t> entry_node_;
  };

  ////////////////////////////////////////////////////////////////////////
  // Enumeration
  ////////////////////////////////////////////////////////////////////////

  struct EnumOptions {
    Strategy    strategy   = Strategy::hlt;
    std::size_t max_cosets = 1'000'000;
    // Check table symmetry after every event; slow, for tests.
    bool paranoid = false;
  };

  struct EnumResult {
    std::size_t index         = 0;
    std::size_t total_defined = 0;
    bool        closed        = false;

    double efficiency() const {
      return index == 0 ? 0.0 : static_cast<double>(total_defined) / static_cast<double>(index);
    }
  };

  struct Enumeration {
    Presentation presentation;
    SubgroupSpec subgroup;
    CosetTable   table;
    Ledger       ledger;
    EnumResult   result;
  };

  // Enumerates the cosets of sub in the group presented by pres. Returns the
  // partial state with closed == false if max_cosets would be exceeded.
  Enumeration enumerate(Presentation const& pres, SubgroupSpec const& sub, EnumOptions const& opts = {});

  // Every relator closes at every live coset and every subgroup generator
  // fixes coset 1.
  bool relators_close(Enumeration const& e);

  // For a closed enumeration over the trivial subgroup: rep(c)^3 traces from
  // 1 back to 1 for every live coset c, so the group has exponent 3.
  bool certify_exponent3(Enumeration const& e);

  // Shortens the proofs behind a closed enumeration's entries. Each entry
  // keeps its recorded justification or is re-deduced from a relator
  // cycle, whichever expands to fewer relator and bracket items; the new
  // deductions are appended to the ledger. Throws InvalidArgument if the
  // enumeration is not closed.
  Enumeration rederive(Enumeration const& e);

}  // namespace cubes

#endif  // CUBES_ENUMERATOR_HPP_
