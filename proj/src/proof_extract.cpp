#include "cubes/proof_extract.hpp"

namespace cubes {

  ProofExtractor::ProofExtractor(Enumeration const& e, ExtractOptions opts)
      : enumeration_(e), opts_(opts), memo_(e.ledger.size()), reps_(e.table.defined() + 1) {}

  Word const& ProofExtractor::rep(coset_id c) const {
    if (!reps_[c]) {
      reps_[c] = std::make_unique<Word>(enumeration_.table.rep(c));
    }
    return *reps_[c];
  }

  Word ProofExtractor::term_value(Term t) const {
    Word v;
    switch (t.kind) {
      case Term::Kind::node: {
        LedgerNode const& n = enumeration_.ledger.node(t.id);
        if (n.is_edge()) {
          v = concat({rep(n.from), Word{n.gen}, invert(rep(n.to))});
        } else {
          v = rep(n.from) * invert(rep(n.to));
        }
        break;
      }
      case Term::Kind::relator: {
        Word r = Word(enumeration_.ledger.form(t.id).letters);
        v      = concat({rep(t.coset), r, invert(rep(t.coset))});
        break;
      }
      case Term::Kind::subgroup_gen:
        v = Word{enumeration_.subgroup.generators()[t.id]};
        break;
    }
    return t.inverted ? invert(v) : v;
  }

  void ProofExtractor::append(ProofWord& acc, ProofWord const& part, bool inverted) const {
    if (inverted) {
      for (auto it = part.rbegin(); it != part.rend(); ++it) {
        push_reduced(acc, it->inverse());
      }
    } else {
      for (ProofItem const& item : part) {
        push_reduced(acc, item);
      }
    }
    if (acc.size() > opts_.max_items) {
      throw ProofTooLarge("proof exceeds " + std::to_string(opts_.max_items) + " items");
    }
  }

  void ProofExtractor::append_leaf(ProofWord& acc, Term t) const {
    if (t.kind == Term::Kind::subgroup_gen) {
      Gen h = enumeration_.subgroup.generators()[t.id];
      acc.push_back(ProofItem::subgen(t.inverted ? h.inverse() : h));
      return;
    }
    Word const& conj = rep(t.coset);
    Word        r    = Word::from_reduced(enumeration_.ledger.form(t.id).letters);
    for (Gen g : conj) {
      push_reduced(acc, ProofItem::conj(g));
    }
    acc.push_back(ProofItem::rel(t.inverted ? invert(r) : std::move(r)));
    for (auto it = conj.vec().rbegin(); it != conj.vec().rend(); ++it) {
      acc.push_back(ProofItem::conj(it->inverse()));
    }
  }

  std::shared_ptr<ProofWord const> ProofExtractor::expand_node(std::uint32_t id) {
    if (opts_.use_cache && memo_[id]) {
      return memo_[id];
    }
    struct Frame {
      std::uint32_t id;
      std::size_t   next;
      bool          inverted;  // how the parent uses this node
      ProofWord     acc;
    };
    Ledger const&      ledger = enumeration_.ledger;
    std::vector<Frame> stack;
    stack.push_back({id, 0, false, {}});
    std::shared_ptr<ProofWord const> result;

    while (!stack.empty()) {
      Frame& top   = stack.back();
      auto   terms = ledger.terms(top.id);
      if (top.next == terms.size()) {
        auto done = std::make_shared<ProofWord const>(std::move(top.acc));
        if (opts_.use_cache) {
          memo_[top.id] = done;
        }
        bool inverted = top.inverted;
        stack.pop_back();
        if (stack.empty()) {
          result = done;
        } else {
          append(stack.back().acc, *done, inverted);
        }
        continue;
      }
      Term t = terms[top.next++];
      if (t.kind != Term::Kind::node) {
        append_leaf(top.acc, t);
      } else if (opts_.use_cache && memo_[t.id]) {
        append(top.acc, *memo_[t.id], t.inverted);
      } else {
        if (stack.size() > ledger.size()) {
          throw Error("ledger corruption: cycle detected at node " + std::to_string(t.id));
        }
        stack.push_back({t.id, 0, t.inverted, {}});
      }
    }
    return result;
  }

  ProofWord ProofExtractor::expand(Term t) {
    ProofWord out;
    if (t.kind == Term::Kind::node) {
      append(out, *expand_node(t.id), t.inverted);
    } else {
      append_leaf(out, t);
    }
    return out;
  }

  EdgeProof ProofExtractor::edge_proof(coset_id a, Gen g) {
    CosetTable const& table = enumeration_.table;
    if (!table.is_alive(a) || !enumeration_.presentation.alphabet().contains(g)) {
      throw InvalidArgument("edge_proof: no live coset " + std::to_string(a));
    }
    coset_id b = table.entry(a, g);
    if (b == no_coset) {
      throw InvalidArgument("edge_proof: entry is empty");
    }
    EdgeProof out;
    out.proof       = expand(enumeration_.ledger.edge_term(a, g));
    out.value_check = concat({rep(a), Word{g}, invert(rep(b))});
    return out;
  }

  ProofWord ProofExtractor::extract(Word const& target) {
    CosetTable const& table = enumeration_.table;
    Alphabet const&   alpha = enumeration_.presentation.alphabet();
    if (!enumeration_.result.closed) {
      throw InvalidArgument("extract: enumeration is not closed");
    }
    if (target.rank_used() > alpha.rank()) {
      throw InvalidArgument("extract: target uses letters outside the alphabet");
    }
    if (table.trace(1, target) != 1) {
      throw InvalidArgument("extract: target " + target.str(alpha) + " does not trace from 1 to 1");
    }
    ProofWord acc;
    coset_id  c = 1;
    for (Gen g : target) {
      append(acc, expand(enumeration_.ledger.edge_term(c, g)), false);
      c = table.entry(c, g);
    }
    if (opts_.absorb) {
      acc = absorb_conjugation(acc);
    }
    if (value(acc) != target) {
      throw Error("extract: proof value does not match target");
    }
    return acc;
  }

  ProofWord prove_trivial(Word const&           w,
                          Presentation const&   pres,
                          EnumOptions const&    enum_opts,
                          ExtractOptions const& extract_opts) {
    Enumeration e = enumerate(pres, SubgroupSpec(), enum_opts);
    if (!e.result.closed) {
      throw InvalidArgument("enumeration over the trivial subgroup did not close");
    }
    if (e.table.trace(1, w) != 1) {
      throw InvalidArgument(w.str(pres.alphabet()) + " is not trivial in the presented group");
    }
    return ProofExtractor(e, extract_opts).extract(w);
  }

  CubeProduct rewrite_as_cubes(Word const&           w,
                               Presentation const&   pres,
                               EnumOptions const&    enum_opts,
                               ExtractOptions const& extract_opts) {
    CubeProduct cp = to_cubes(prove_trivial(w, pres, enum_opts, extract_opts));
    if (cube_product_value(cp) != w) {
      throw Error("rewrite_as_cubes: cube product does not multiply out to the word");
    }
    return cp;
  }

}  // namespace cubes
