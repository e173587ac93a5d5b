#include "cubes/enumerator.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <queue>
#include <tuple>
#include <optional>
#include <ostream>
#include <set>

namespace cubes {

  std::string_view to_string(Strategy s) {
    switch (s) {
      case Strategy::hlt:
        return "hlt";
      case Strategy::felsch:
        return "felsch";
      case Strategy::hybrid:
        return "hybrid";
    }
    return "?";
  }

  Strategy parse_strategy(std::string_view s) {
    if (s == "hlt") {
      return Strategy::hlt;
    }
    if (s == "felsch") {
      return Strategy::felsch;
    }
    if (s == "hybrid") {
      return Strategy::hybrid;
    }
    throw InvalidArgument("unknown strategy '" + std::string(s) + "'");
  }

  std::string_view to_string(Justification j) {
    switch (j) {
      case Justification::definition:
        return "definition";
      case Justification::relator_deduction:
        return "relator_deduction";
      case Justification::subgroup_closure:
        return "subgroup_closure";
      case Justification::coincidence_transfer:
        return "coincidence_transfer";
      case Justification::coincidence:
        return "coincidence";
    }
    return "?";
  }

  ////////////////////////////////////////////////////////////////////////
  // CosetTable
  ////////////////////////////////////////////////////////////////////////

  CosetTable::CosetTable(std::size_t rank)
      : ncols_(2 * rank), entries_(ncols_, no_coset), alive_(1, 0), parent_(1, no_coset), parent_gen_(1) {}

  coset_id CosetTable::new_coset(coset_id parent, Gen g) {
    auto c = static_cast<coset_id>(parent_.size());
    entries_.resize(entries_.size() + ncols_, no_coset);
    alive_.push_back(1);
    parent_.push_back(parent);
    parent_gen_.push_back(g);
    ++live_;
    return c;
  }

  std::vector<coset_id> CosetTable::live_cosets() const {
    std::vector<coset_id> out;
    out.reserve(live_);
    for (coset_id c = 1; c < alive_.size(); ++c) {
      if (alive_[c]) {
        out.push_back(c);
      }
    }
    return out;
  }

  Word CosetTable::rep(coset_id c) const {
    std::vector<Gen> letters;
    for (; c > 1; c = parent_[c]) {
      letters.push_back(parent_gen_[c]);
    }
    std::reverse(letters.begin(), letters.end());
    return Word::from_reduced(std::move(letters));
  }

  coset_id CosetTable::trace(coset_id start, std::span<Gen const> letters) const {
    coset_id c = start;
    for (Gen g : letters) {
      if (c == no_coset) {
        break;
      }
      c = entry(c, g);
    }
    return c;
  }

  bool CosetTable::is_complete() const {
    for (coset_id c = 1; c < alive_.size(); ++c) {
      if (!alive_[c]) {
        continue;
      }
      for (std::size_t col = 0; col < ncols_; ++col) {
        if (entry(c, col) == no_coset) {
          return false;
        }
      }
    }
    return true;
  }

  bool CosetTable::is_consistent() const {
    for (coset_id c = 1; c < alive_.size(); ++c) {
      if (!alive_[c]) {
        continue;
      }
      for (std::size_t col = 0; col < ncols_; ++col) {
        coset_id d = entry(c, col);
        if (d != no_coset && (!is_alive(d) || entry(d, col ^ 1) != c)) {
          return false;
        }
      }
    }
    return true;
  }

  void CosetTable::dump(std::ostream& os) const {
    for (coset_id c = 1; c < alive_.size(); ++c) {
      if (!alive_[c]) {
        continue;
      }
      os << c << ':';
      for (std::size_t col = 0; col < ncols_; ++col) {
        os << ' ' << entry(c, col);
      }
      os << '\n';
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Ledger
  ////////////////////////////////////////////////////////////////////////

  Term Ledger::edge_term(coset_id c, Gen g) const {
    std::uint32_t     id = node_at(c, g.code());
    LedgerNode const& n  = nodes_[id];
    return Term{Term::Kind::node, !(n.from == c && n.gen == g), id, 0};
  }

  bool Ledger::is_well_formed(CosetTable const& table) const {
    for (std::uint32_t id = 0; id < nodes_.size(); ++id) {
      for (Term const& t : terms(id)) {
        if (t.kind == Term::Kind::node && t.id >= id) {
          return false;
        }
      }
    }
    for (coset_id c : table.live_cosets()) {
      for (std::size_t col = 0; col < table.ncols(); ++col) {
        coset_id d = table.entry(c, col);
        if (d == no_coset) {
          continue;
        }
        LedgerNode const& n = nodes_[node_at(c, col)];
        Gen               g = Gen::from_code(static_cast<std::uint8_t>(col));
        bool fwd = n.from == c && n.gen == g && n.to == d;
        bool bwd = n.from == d && n.gen == g.inverse() && n.to == c;
        if (!n.is_edge() || !(fwd || bwd)) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Enumerator
  ////////////////////////////////////////////////////////////////////////

  class Enumerator {
   public:
    Enumerator(Presentation const& pres, SubgroupSpec const& sub, EnumOptions const& opts)
        : pres_(pres), sub_(sub), opts_(opts), ncols_(2 * pres.rank()), table_(pres.rank()) {
      ledger_.ncols_ = ncols_;
      ledger_.entry_node_.assign(2 * ncols_, 0);
      build_forms();
      forward_.push_back(no_coset);
      forward_term_.emplace_back();
      table_.new_coset(no_coset, Gen());
      forward_.push_back(no_coset);
      forward_term_.emplace_back();
    }

    Enumeration run() {
      for (std::size_t i = 0; i < sub_.size(); ++i) {
        Gen  h = sub_.generators()[i];
        Term t{Term::Kind::subgroup_gen, false, static_cast<std::uint32_t>(i), 1};
        scan(1, std::span<Gen const>(&h, 1), t, true);
      }
      switch (opts_.strategy) {
        case Strategy::hlt:
        case Strategy::hybrid:
          run_hlt();
          break;
        case Strategy::felsch:
          run_felsch();
          break;
      }
      Enumeration e{pres_, sub_, std::move(table_), std::move(ledger_), {}};
      e.result.index         = e.table.index();
      e.result.total_defined = e.table.defined();
      e.result.closed        = !overflow_ && e.table.is_complete();
      return e;
    }

   private:
    struct Pending {
      coset_id a;
      coset_id b;
      Term     proof;  // value rep(a) rep(b)^-1
    };

    ////////////////////////////////////////////////////////////////////
    // Setup
    ////////////////////////////////////////////////////////////////////

    void build_forms() {
      std::set<std::vector<Gen>> seen;
      starting_with_.resize(ncols_);
      for (std::uint32_t r = 0; r < pres_.size(); ++r) {
        Word const rel = pres_.relator(r);
        // Rotation 0 of the relator itself is the HLT form.
        hlt_forms_.push_back(add_form(r, 0, false, rel.vec(), seen));
        for (bool inv : {false, true}) {
          Word const w = inv ? invert(rel) : rel;
          for (std::uint32_t k = 0; k < w.size(); ++k) {
            std::vector<Gen> letters(w.begin() + k, w.end());
            letters.insert(letters.end(), w.begin(), w.begin() + k);
            add_form(r, k, inv, letters, seen);
          }
        }
      }
    }

    std::uint32_t add_form(std::uint32_t                r,
                           std::uint32_t                k,
                           bool                         inv,
                           std::vector<Gen> const&      letters,
                           std::set<std::vector<Gen>>&  seen) {
      auto& forms = ledger_.forms_;
      if (!seen.insert(letters).second) {
        for (std::uint32_t i = 0; i < forms.size(); ++i) {
          if (forms[i].letters == letters) {
            return i;
          }
        }
      }
      auto id = static_cast<std::uint32_t>(forms.size());
      forms.push_back({r, k, inv, letters});
      starting_with_[letters.front().code()].push_back(id);
      return id;
    }

    ////////////////////////////////////////////////////////////////////
    // Ledger helpers
    ////////////////////////////////////////////////////////////////////

    std::uint32_t add_node(Justification kind, coset_id from, Gen g, coset_id to, std::span<Term const> terms) {
      auto id    = static_cast<std::uint32_t>(ledger_.nodes_.size());
      auto begin = static_cast<std::uint32_t>(ledger_.terms_.size());
      ledger_.terms_.insert(ledger_.terms_.end(), terms.begin(), terms.end());
      ledger_.nodes_.push_back({kind, g, from, to, begin, static_cast<std::uint32_t>(ledger_.terms_.size())});
      return id;
    }

    Term node_term(std::uint32_t id, bool inverted = false) const {
      return Term{Term::Kind::node, inverted, id, 0};
    }

    void set_pair(coset_id a, Gen g, coset_id b, std::uint32_t node) {
      std::size_t col = g.code();
      table_.at(a, col)     = b;
      table_.at(b, col ^ 1) = a;
      ledger_.entry_node_[a * ncols_ + col]       = node;
      ledger_.entry_node_[b * ncols_ + (col ^ 1)] = node;
      if (opts_.strategy != Strategy::hlt) {
        deductions_.emplace_back(a, static_cast<std::uint8_t>(col));
      }
      if (opts_.paranoid) {
        assert(table_.is_consistent());
      }
    }

    void clear_pair(coset_id a, std::size_t col) {
      coset_id b = table_.at(a, col);
      table_.at(a, col) = no_coset;
      if (b != no_coset) {
        table_.at(b, col ^ 1) = no_coset;
        if (b != a) {
          min_hole_ = std::min(min_hole_, b);
        }
      }
    }

    coset_id define(coset_id a, Gen g) {
      if (table_.defined() >= opts_.max_cosets) {
        overflow_ = true;
        return no_coset;
      }
      if (ledger_.entry_node_.size() < (table_.defined() + 2) * ncols_) {
        ledger_.entry_node_.resize((table_.defined() + 2) * ncols_, 0);
      }
      coset_id b = table_.new_coset(a, g);
      forward_.push_back(no_coset);
      forward_term_.emplace_back();
      std::uint32_t node = add_node(Justification::definition, a, g, b, {});
      set_pair(a, g, b, node);
      return b;
    }

    ////////////////////////////////////////////////////////////////////
    // Scanning
    ////////////////////////////////////////////////////////////////////

    // Scans letters from c and back to c. closing is the term with value
    // rep(c) letters rep(c)^-1. With fill, gaps longer than one are closed
    // by defining new cosets.
    void scan(coset_id c, std::span<Gen const> letters, Term closing, bool fill) {
      std::size_t const n = letters.size();
      fpos_.resize(n + 1);
      bpos_.resize(n + 1);
      std::size_t i = 0, j = n;
      fpos_[0] = c;
      bpos_[n] = c;
      for (;;) {
        while (i < j) {
          coset_id next = table_.entry(fpos_[i], letters[i]);
          if (next == no_coset) {
            break;
          }
          fpos_[++i] = next;
        }
        while (j > i) {
          coset_id prev = table_.entry(bpos_[j], letters[j - 1].inverse());
          if (prev == no_coset) {
            break;
          }
          bpos_[--j] = prev;
        }
        if (j == i) {
          if (fpos_[i] != bpos_[i]) {
            auto terms = scan_terms(letters, i, i, closing);
            auto node  = add_node(Justification::coincidence, fpos_[i], Gen(), bpos_[i], terms);
            coincidence(fpos_[i], bpos_[i], node_term(node));
          }
          return;
        }
        if (j == i + 1) {
          auto terms = scan_terms(letters, i, j, closing);
          auto kind  = closing.kind == Term::Kind::subgroup_gen ? Justification::subgroup_closure
                                                                : Justification::relator_deduction;
          auto node  = add_node(kind, fpos_[i], letters[i], bpos_[j], terms);
          set_pair(fpos_[i], letters[i], bpos_[j], node);
          return;
        }
        if (!fill) {
          return;
        }
        coset_id next = define(fpos_[i], letters[i]);
        if (next == no_coset) {
          return;
        }
        fpos_[++i] = next;
      }
    }

    // Terms for the gap between forward position i and backward position j:
    // (E_0 ... E_{i-1})^-1 closing (E_j ... E_{n-1})^-1.
    std::vector<Term> scan_terms(std::span<Gen const> letters, std::size_t i, std::size_t j, Term closing) {
      std::vector<Term> terms;
      terms.reserve(letters.size() + 1 - (j - i));
      for (std::size_t m = i; m-- > 0;) {
        terms.push_back(ledger_.edge_term(fpos_[m], letters[m]).inverse());
      }
      terms.push_back(closing);
      for (std::size_t m = letters.size(); m-- > j;) {
        terms.push_back(ledger_.edge_term(bpos_[m], letters[m]).inverse());
      }
      return terms;
    }

    ////////////////////////////////////////////////////////////////////
    // Coincidences
    ////////////////////////////////////////////////////////////////////

    // Root of c and a term with value rep(root) rep(c)^-1 (none if c is live).
    std::pair<coset_id, std::optional<Term>> find(coset_id c) {
      if (table_.is_alive(c)) {
        return {c, std::nullopt};
      }
      std::vector<Term> chain;
      coset_id          r = c;
      while (!table_.is_alive(r)) {
        chain.push_back(forward_term_[r]);
        r = forward_[r];
      }
      if (chain.size() == 1) {
        return {r, chain.front()};
      }
      // rep(r) rep(c)^-1 is the chain product from the root end.
      std::reverse(chain.begin(), chain.end());
      auto node        = add_node(Justification::coincidence, r, Gen(), c, chain);
      forward_[c]      = r;
      forward_term_[c] = node_term(node);
      return {r, forward_term_[c]};
    }

    void coincidence(coset_id a, coset_id b, Term proof) {
      queue_.push_back({a, b, proof});
      if (merging_) {
        return;
      }
      merging_ = true;
      while (!queue_.empty()) {
        Pending pending = queue_.front();
        queue_.pop_front();
        merge(pending);
      }
      merging_ = false;
    }

    void merge(Pending const& pending) {
      auto [ra, ta] = find(pending.a);
      auto [rb, tb] = find(pending.b);
      if (ra == rb) {
        return;
      }
      // rep(ra) rep(rb)^-1 = ta . proof . tb^-1
      Term k = pending.proof;
      if (ta || tb) {
        std::vector<Term> terms;
        if (ta) {
          terms.push_back(*ta);
        }
        terms.push_back(pending.proof);
        if (tb) {
          terms.push_back(tb->inverse());
        }
        k = node_term(add_node(Justification::coincidence, ra, Gen(), rb, terms));
      }
      coset_id p = std::min(ra, rb), q = std::max(ra, rb);
      if (p == rb) {
        k = k.inverse();
      }
      // k now has value rep(p) rep(q)^-1.
      table_.alive_[q] = 0;
      --table_.live_;
      forward_[q]      = p;
      forward_term_[q] = k;

      for (std::size_t col = 0; col < ncols_; ++col) {
        coset_id t = table_.at(q, col);
        if (t == no_coset) {
          continue;
        }
        Gen  g  = Gen::from_code(static_cast<std::uint8_t>(col));
        Term ev = ledger_.edge_term(q, g);  // rep(q) g rep(t)^-1
        clear_pair(q, col);
        coset_id tp = t == q ? p : t;
        // x = k . ev [. k^-1], value rep(p) g rep(tp)^-1
        std::vector<Term> x{k, ev};
        if (t == q) {
          x.push_back(k.inverse());
        }
        coset_id u = table_.at(p, col);
        coset_id v = table_.at(tp, col ^ 1);
        if (u == no_coset && v == no_coset) {
          auto node = add_node(Justification::coincidence_transfer, p, g, tp, x);
          set_pair(p, g, tp, node);
        } else if (u != no_coset) {
          if (u == tp) {
            continue;
          }
          // rep(u) rep(tp)^-1 = E(p,g)^-1 . x
          std::vector<Term> terms{ledger_.edge_term(p, g).inverse()};
          terms.insert(terms.end(), x.begin(), x.end());
          auto node = add_node(Justification::coincidence, u, Gen(), tp, terms);
          queue_.push_back({u, tp, node_term(node)});
        } else {
          // rep(v) rep(p)^-1 = E(tp,g^-1)^-1 . x^-1
          std::vector<Term> terms{ledger_.edge_term(tp, g.inverse()).inverse()};
          for (auto it = x.rbegin(); it != x.rend(); ++it) {
            terms.push_back(it->inverse());
          }
          auto node = add_node(Justification::coincidence, v, Gen(), p, terms);
          queue_.push_back({v, p, node_term(node)});
        }
      }
      if (opts_.paranoid) {
        assert(table_.is_consistent());
      }
    }

    ////////////////////////////////////////////////////////////////////
    // Strategies
    ////////////////////////////////////////////////////////////////////

    void run_hlt() {
      for (coset_id c = 1; c <= table_.defined() && !overflow_; ++c) {
        for (std::uint32_t f : hlt_forms_) {
          if (!table_.is_alive(c) || overflow_) {
            break;
          }
          scan(c, ledger_.forms_[f].letters, relator_term(c, f), true);
          process_deductions();
        }
        for (std::size_t col = 0; col < ncols_ && table_.is_alive(c) && !overflow_; ++col) {
          if (table_.at(c, col) == no_coset) {
            define(c, Gen::from_code(static_cast<std::uint8_t>(col)));
            process_deductions();
          }
        }
      }
      // Coincidences can leave holes in rows already passed.
      complete_rows();
    }

    void run_felsch() {
      process_deductions();
      complete_rows();
    }

    // Defines the first empty entry in row-major order until none remain.
    void complete_rows() {
      coset_id    c   = 1;
      std::size_t col = 0;
      while (!overflow_) {
        while (c <= table_.defined() && (!table_.is_alive(c) || table_.at(c, col) != no_coset)) {
          if (!table_.is_alive(c) || ++col == ncols_) {
            ++c;
            col = 0;
          }
        }
        if (c > table_.defined()) {
          return;
        }
        define(c, Gen::from_code(static_cast<std::uint8_t>(col)));
        process_deductions();
        // Coincidences may have emptied earlier entries.
        if (min_hole_ < c) {
          c   = min_hole_;
          col = 0;
        }
        min_hole_ = no_hole;
      }
    }

    Term relator_term(coset_id c, std::uint32_t form) const {
      return Term{Term::Kind::relator, false, form, c};
    }

    void process_deductions() {
      if (opts_.strategy == Strategy::hlt) {
        return;
      }
      while (!deductions_.empty() && !overflow_) {
        auto [a, col] = deductions_.back();
        deductions_.pop_back();
        if (!table_.is_alive(a) || table_.at(a, col) == no_coset) {
          continue;
        }
        coset_id b = table_.at(a, col);
        for (std::uint32_t f : starting_with_[col]) {
          if (!table_.is_alive(a)) {
            break;
          }
          scan(a, ledger_.forms_[f].letters, relator_term(a, f), false);
        }
        for (std::uint32_t f : starting_with_[col ^ 1]) {
          if (!table_.is_alive(b)) {
            break;
          }
          scan(b, ledger_.forms_[f].letters, relator_term(b, f), false);
        }
      }
    }

    Presentation const& pres_;
    SubgroupSpec const& sub_;
    EnumOptions         opts_;
    std::size_t         ncols_;
    CosetTable          table_;
    Ledger              ledger_;

    std::vector<std::uint32_t>              hlt_forms_;
    std::vector<std::vector<std::uint32_t>> starting_with_;

    std::vector<coset_id>                          forward_;
    std::vector<Term>                              forward_term_;
    std::deque<Pending>                            queue_;
    std::vector<std::pair<coset_id, std::uint8_t>> deductions_;
    std::vector<coset_id>                          fpos_, bpos_;

    static constexpr coset_id no_hole = UINT32_MAX;

    coset_id min_hole_ = no_hole;
    bool     overflow_ = false;
    bool     merging_  = false;
  };

  Enumeration enumerate(Presentation const& pres, SubgroupSpec const& sub, EnumOptions const& opts) {
    if (opts.max_cosets < 1) {
      throw InvalidArgument("max_cosets must be at least 1");
    }
    for (Gen g : sub.generators()) {
      if (!pres.alphabet().contains(g)) {
        throw InvalidArgument("subgroup generator outside the presentation's alphabet");
      }
    }
    return Enumerator(pres, sub, opts).run();
  }

  bool relators_close(Enumeration const& e) {
    CosetTable const& t = e.table;
    for (coset_id c : t.live_cosets()) {
      for (std::size_t r = 0; r < e.presentation.size(); ++r) {
        if (t.trace(c, e.presentation.relator(r)) != c) {
          return false;
        }
      }
    }
    for (Gen h : e.subgroup.generators()) {
      if (t.entry(1, h) != 1) {
        return false;
      }
    }
    return true;
  }

  bool certify_exponent3(Enumeration const& e) {
    if (!e.result.closed) {
      return false;
    }
    CosetTable const& t = e.table;
    for (coset_id c : t.live_cosets()) {
      if (t.trace(1, power(t.rep(c), 3)) != 1) {
        return false;
      }
    }
    return true;
  }

}  // namespace cubes

namespace cubes {

  ////////////////////////////////////////////////////////////////////////
  // Rederivation
  ////////////////////////////////////////////////////////////////////////

  // Lightest derivation in the manner of Dijkstra. Every live entry starts
  // with its recorded proof as a candidate; a relator cycle offers another
  // candidate once all but one of its occurrences are settled. Costs count
  // relator and bracket items in the expanded proof.
  class Rederiver {
   public:
    explicit Rederiver(Enumeration const& e)
        : e_(e),
          rank_(e.presentation.rank()),
          ncols_(2 * rank_),
          span_(e.table.defined() + 1),
          table_(e.table),
          ledger_(e.ledger) {}

    Enumeration run() {
      std::uint32_t const first_form = static_cast<std::uint32_t>(ledger_.forms_.size());
      for (std::uint32_t r = 0; r < e_.presentation.size(); ++r) {
        Word const rel = e_.presentation.relator(r);
        ledger_.forms_.push_back({r, 0, false, rel.vec()});
        std::vector<std::vector<std::uint32_t>> at(ncols_);
        for (std::uint32_t j = 0; j < rel.size(); ++j) {
          at[rel[j].code()].push_back(j);
        }
        positions_.push_back(std::move(at));
      }
      form_base_ = first_form;

      // Expanded size of every recorded node.
      std::vector<double> node_cost(ledger_.nodes_.size(), 0.0);
      for (std::uint32_t id = 0; id < node_cost.size(); ++id) {
        double c = 0.0;
        for (Term const& t : ledger_.terms(id)) {
          c += t.kind == Term::Kind::node ? node_cost[t.id] : 1.0;
        }
        node_cost[id] = c;
      }

      cost_.assign(span_ * rank_, inf);
      settled_.assign(span_ * rank_, 0);
      unknown_.assign(e_.presentation.size() * span_, 0);
      std::vector<coset_id> const live = table_.live_cosets();
      for (coset_id a : live) {
        for (std::size_t i = 0; i < rank_; ++i) {
          Gen g(i, false);
          heap_.push({node_cost[ledger_.node_at(a, g.code())], edge_of(a, g), recorded_tag, 0});
        }
        for (std::uint32_t r = 0; r < e_.presentation.size(); ++r) {
          unknown_[cycle_id(r, a)] = static_cast<std::uint32_t>(ledger_.forms_[form_base_ + r].letters.size());
        }
      }

      while (!heap_.empty()) {
        Candidate best = heap_.top();
        heap_.pop();
        if (settled_[best.edge]) {
          continue;
        }
        if (best.cycle != recorded_tag) {
          deduce(best.cycle / span_, best.cycle % span_);
        }
        cost_[best.edge]    = best.cost;
        settled_[best.edge] = 1;
        notify(best.edge);
      }
      return Enumeration{e_.presentation, e_.subgroup, std::move(table_), std::move(ledger_), e_.result};
    }

   private:
    static constexpr double        inf          = std::numeric_limits<double>::infinity();
    static constexpr std::uint32_t recorded_tag = UINT32_MAX;

    struct Candidate {
      double        cost;
      std::uint32_t edge;
      std::uint32_t cycle;  // relator cycle id, or recorded_tag
      std::uint32_t aux;

      bool operator>(Candidate const& that) const {
        return std::tie(cost, edge, cycle, aux) > std::tie(that.cost, that.edge, that.cycle, that.aux);
      }
    };

    // Entries (a, g) and (a g, g^-1) are one edge, keyed by the positive letter.
    std::uint32_t edge_of(coset_id c, Gen g) const {
      coset_id a = g.is_inverse() ? table_.entry(c, g) : c;
      return static_cast<std::uint32_t>(a * rank_ + g.index());
    }

    std::uint32_t cycle_id(std::uint32_t r, coset_id d) const {
      return static_cast<std::uint32_t>(r * span_ + d);
    }

    void notify(std::uint32_t edge) {
      auto     a = static_cast<coset_id>(edge / rank_);
      Gen      g(edge % rank_, false);
      coset_id b = table_.entry(a, g);
      for (std::uint32_t r = 0; r < positions_.size(); ++r) {
        auto const& letters = ledger_.forms_[form_base_ + r].letters;
        for (Gen h : {g, g.inverse()}) {
          for (std::uint32_t j : positions_[r][h.code()]) {
            coset_id c = h == g ? a : b;
            for (std::uint32_t k = j; k-- > 0;) {
              c = table_.entry(c, letters[k].inverse());
            }
            if (--unknown_[cycle_id(r, c)] == 1) {
              offer(r, c);
            }
          }
        }
      }
    }

    void offer(std::uint32_t r, coset_id d) {
      double        cost    = 1.0;
      std::uint32_t missing = 0;
      coset_id      c       = d;
      for (Gen g : ledger_.forms_[form_base_ + r].letters) {
        std::uint32_t edge = edge_of(c, g);
        if (settled_[edge]) {
          cost += cost_[edge];
        } else {
          missing = edge;
        }
        c = table_.entry(c, g);
      }
      if (cost < inf) {
        heap_.push({cost, missing, cycle_id(r, d), 0});
      }
    }

    void deduce(std::uint32_t r, coset_id d) {
      std::uint32_t const   form    = form_base_ + r;
      auto const&           letters = ledger_.forms_[form].letters;
      std::vector<coset_id> at{d};
      std::size_t           j = 0;
      for (std::size_t k = 0; k < letters.size(); ++k) {
        if (!settled_[edge_of(at.back(), letters[k])]) {
          j = k;
        }
        at.push_back(table_.entry(at.back(), letters[k]));
      }
      std::vector<Term> terms;
      for (std::size_t k = j; k-- > 0;) {
        terms.push_back(ledger_.edge_term(at[k], letters[k]).inverse());
      }
      terms.push_back(Term{Term::Kind::relator, false, form, d});
      for (std::size_t k = letters.size(); k-- > j + 1;) {
        terms.push_back(ledger_.edge_term(at[k], letters[k]).inverse());
      }
      auto id    = static_cast<std::uint32_t>(ledger_.nodes_.size());
      auto begin = static_cast<std::uint32_t>(ledger_.terms_.size());
      ledger_.terms_.insert(ledger_.terms_.end(), terms.begin(), terms.end());
      ledger_.nodes_.push_back({Justification::relator_deduction, letters[j], at[j], at[j + 1], begin,
                                static_cast<std::uint32_t>(ledger_.terms_.size())});
      std::size_t col                                  = letters[j].code();
      ledger_.entry_node_[at[j] * ncols_ + col]        = id;
      ledger_.entry_node_[at[j + 1] * ncols_ + (col ^ 1)] = id;
    }

    Enumeration const& e_;
    std::size_t        rank_;
    std::size_t        ncols_;
    std::size_t        span_;
    std::uint32_t      form_base_ = 0;
    CosetTable         table_;
    Ledger             ledger_;

    std::vector<std::vector<std::vector<std::uint32_t>>> positions_;
    std::vector<double>                                  cost_;
    std::vector<std::uint8_t>                            settled_;
    std::vector<std::uint32_t>                           unknown_;
    std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> heap_;
  };

  Enumeration rederive(Enumeration const& e) {
    if (!e.result.closed) {
      throw InvalidArgument("rederive: enumeration is not closed");
    }
    return Rederiver(e).run();
  }

}  // namespace cubes
