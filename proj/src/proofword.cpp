#include "cubes/proofword.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "cubes/presentation.hpp"

namespace cubes {

  ProofItem ProofItem::rel(Word w) {
    if (w.empty()) {
      throw InvalidArgument("relator instance must be nonempty");
    }
    return {Kind::relator, Gen(), std::move(w)};
  }

  ProofItem ProofItem::inverse() const {
    switch (kind) {
      case Kind::relator:
        return {kind, gen, invert(relator)};
      default:
        return {kind, gen.inverse(), {}};
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Text format
  ////////////////////////////////////////////////////////////////////////

  ProofWord parse_proofword(std::string_view text, Alphabet const& alphabet) {
    ProofWord        out;
    std::vector<Gen> group;
    char             open = 0;  // '(' or '[' while inside a delimiter
    std::size_t      line = 1, col = 0, open_line = 0, open_col = 0;

    for (char c : text) {
      ++col;
      if (c == '\n') {
        ++line;
        col = 0;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        continue;
      }
      if (c == '(' || c == '[') {
        if (open != 0) {
          throw ParseError(std::string("nested '") + c + "'", line, col);
        }
        open      = c;
        open_line = line;
        open_col  = col;
        group.clear();
      } else if (c == ')' || c == ']') {
        char want = c == ')' ? '(' : '[';
        if (open == 0) {
          throw ParseError(std::string("unbalanced '") + c + "'", line, col);
        }
        if (open != want) {
          throw ParseError(std::string("mismatched delimiter: '") + open + "' closed by '" + c + "'",
                           line,
                           col);
        }
        if (c == ')') {
          if (group.empty()) {
            throw ParseError("empty relator", line, col);
          }
          Word w(group);
          if (w.size() != group.size()) {
            throw ParseError("relator is not freely reduced", open_line, open_col);
          }
          out.push_back(ProofItem::rel(std::move(w)));
        } else {
          if (group.size() != 1) {
            throw ParseError("subgroup generator must be a single letter", open_line, open_col);
          }
          out.push_back(ProofItem::subgen(group.front()));
        }
        open = 0;
      } else if (alphabet.is_letter(c)) {
        Gen g = alphabet.gen(c);
        if (open != 0) {
          group.push_back(g);
        } else {
          out.push_back(ProofItem::conj(g));
        }
      } else {
        throw ParseError(std::string("illegal character '") + c + "'", line, col);
      }
    }
    if (open != 0) {
      throw ParseError(std::string("unbalanced '") + open + "'", open_line, open_col);
    }
    return out;
  }

  std::string format_proofword(ProofWord const& p, Alphabet const& alphabet, std::size_t wrap) {
    std::string out;
    std::size_t line_start = 0;
    for (ProofItem const& item : p) {
      if (wrap != 0 && out.size() - line_start >= wrap) {
        out.push_back('\n');
        line_start = out.size();
      }
      switch (item.kind) {
        case ProofItem::Kind::conjugator:
          out.push_back(alphabet.letter(item.gen));
          break;
        case ProofItem::Kind::relator:
          out.push_back('(');
          out += item.relator.str(alphabet);
          out.push_back(')');
          break;
        case ProofItem::Kind::subgroup_gen:
          out.push_back('[');
          out.push_back(alphabet.letter(item.gen));
          out.push_back(']');
          break;
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Evaluation
  ////////////////////////////////////////////////////////////////////////

  namespace {
    template <typename Pred>
    Word reduce_items(ProofWord const& p, Pred keep) {
      std::vector<Gen> out;
      for (ProofItem const& item : p) {
        if (!keep(item)) {
          continue;
        }
        if (item.is_relator()) {
          for (Gen g : item.relator) {
            push_reduced(out, g);
          }
        } else {
          push_reduced(out, item.gen);
        }
      }
      return Word::from_reduced(std::move(out));
    }

    std::size_t tail_block_start(ProofWord const& p) {
      std::size_t t = p.size();
      while (t > 0 && p[t - 1].is_subgroup_gen()) {
        --t;
      }
      return t;
    }
  }  // namespace

  std::vector<Gen> flatten(ProofWord const& p) {
    std::vector<Gen> out;
    for (ProofItem const& item : p) {
      if (item.is_relator()) {
        out.insert(out.end(), item.relator.begin(), item.relator.end());
      } else {
        out.push_back(item.gen);
      }
    }
    return out;
  }

  Word value(ProofWord const& p) {
    return reduce_items(p, [](ProofItem const&) { return true; });
  }

  Word residue(ProofWord const& p) {
    return reduce_items(p, [](ProofItem const& i) { return !i.is_relator(); });
  }

  Word bracket_concat(ProofWord const& p) {
    return reduce_items(p, [](ProofItem const& i) { return i.is_subgroup_gen(); });
  }

  Word conjugator_total(ProofWord const& p) {
    return reduce_items(p, [](ProofItem const& i) { return i.is_conjugator(); });
  }

  ProofStats stats(ProofWord const& p) {
    ProofStats s;
    for (ProofItem const& item : p) {
      switch (item.kind) {
        case ProofItem::Kind::conjugator:
          ++s.conj_letter_count;
          break;
        case ProofItem::Kind::relator:
          ++s.relator_count;
          s.total_relator_length += item.relator.size();
          break;
        case ProofItem::Kind::subgroup_gen:
          ++s.subgen_count;
          break;
      }
    }
    s.conj_pair_count = s.conj_letter_count / 2;
    return s;
  }

  std::size_t letter_count(ProofWord const& p) {
    std::size_t n = 0;
    for (ProofItem const& item : p) {
      n += item.is_relator() ? item.relator.size() : 1;
    }
    return n;
  }

  ValidationReport validate(ProofWord const& p, Presentation const& pres, SubgroupSpec const& sub) {
    ValidationReport          report;
    std::unordered_set<Word>  relator_classes;
    Alphabet const&           alphabet = pres.alphabet();
    for (std::size_t i = 0; i < pres.size(); ++i) {
      relator_classes.insert(canonical_rep(pres.relator(i)));
    }
    auto letter_ok = [&](Gen g) { return alphabet.contains(g); };

    std::size_t relator_no = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      ProofItem const& item = p[i];
      std::string      where = "item " + std::to_string(i + 1);
      switch (item.kind) {
        case ProofItem::Kind::conjugator:
          if (!letter_ok(item.gen)) {
            report.violations.push_back(where + ": conjugator letter outside the alphabet");
          }
          break;
        case ProofItem::Kind::relator: {
          ++relator_no;
          Word const& r = item.relator;
          if (r.rank_used() > alphabet.rank()) {
            report.violations.push_back(where + ": relator " + std::to_string(relator_no)
                                        + " uses letters outside the alphabet");
          } else if (!is_cyclically_reduced(r)
                     || !relator_classes.contains(canonical_rep(r))) {
            report.violations.push_back(where + ": relator " + std::to_string(relator_no) + " ("
                                        + r.str(alphabet)
                                        + ") is not a rotation of a relator or its inverse");
          }
          break;
        }
        case ProofItem::Kind::subgroup_gen:
          if (!letter_ok(item.gen) || !sub.contains_letter(item.gen)) {
            report.violations.push_back(where + ": bracket letter is not a subgroup generator");
          }
          break;
      }
    }
    ProofStats s = stats(p);
    if (s.odd_conjugators()) {
      report.warnings.push_back("odd number of conjugator letters ("
                                + std::to_string(s.conj_letter_count) + ")");
    }
    if (!conjugator_total(p).empty()) {
      report.warnings.push_back("conjugator letters do not cancel");
    }
    return report;
  }

  std::optional<Word> is_cube(Word const& w) {
    if (w.empty() || w.size() % 3 != 0) {
      return std::nullopt;
    }
    std::size_t n = w.size() / 3;
    for (std::size_t i = n; i < w.size(); ++i) {
      if (w[i] != w[i - n]) {
        return std::nullopt;
      }
    }
    return Word::from_reduced(std::vector<Gen>(w.begin(), w.begin() + n));
  }

  ProofWord inverse(ProofWord const& p) {
    ProofWord out;
    out.reserve(p.size());
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      out.push_back(it->inverse());
    }
    return out;
  }

  void push_reduced(ProofWord& p, ProofItem item) {
    if (item.is_conjugator() && !p.empty() && p.back().is_conjugator()
        && p.back().gen == item.gen.inverse()) {
      p.pop_back();
    } else {
      p.push_back(std::move(item));
    }
  }

  void append_reduced(ProofWord& p, ProofWord const& q) {
    for (ProofItem const& item : q) {
      push_reduced(p, item);
    }
  }

  bool is_relator_only(ProofWord const& p) {
    return std::none_of(p.begin(), p.end(), [](ProofItem const& i) { return i.is_subgroup_gen(); });
  }

  ////////////////////////////////////////////////////////////////////////
  // Transformations
  ////////////////////////////////////////////////////////////////////////

  std::optional<ProofWord> shuffle_step(ProofWord const& p) {
    std::size_t t = tail_block_start(p);
    std::size_t e = t;
    while (e > 0 && !p[e - 1].is_subgroup_gen()) {
      --e;
    }
    if (e == 0) {
      return std::nullopt;
    }
    std::size_t s = e;
    while (s > 0 && p[s - 1].is_subgroup_gen()) {
      --s;
    }
    ProofWord out(p.begin(), p.begin() + s);
    for (std::size_t i = s; i < e; ++i) {
      out.push_back(ProofItem::conj(p[i].gen));
    }
    out.insert(out.end(), p.begin() + e, p.begin() + t);
    for (std::size_t i = e; i-- > s;) {
      out.push_back(ProofItem::conj(p[i].gen.inverse()));
    }
    out.insert(out.end(), p.begin() + s, p.begin() + e);
    out.insert(out.end(), p.begin() + t, p.end());
    return out;
  }

  ProofWord shuffle_subgens(ProofWord const& p) {
    if (!conjugator_total(p).empty()) {
      throw InvalidArgument("shuffle_subgens: conjugator letters do not cancel");
    }
    ProofWord cur = p;
    while (auto next = shuffle_step(cur)) {
      cur = std::move(*next);
    }
    return cur;
  }

  ProofWord splice(ProofWord const& p, ProofWord const& q) {
    if (!is_relator_only(q)) {
      throw InvalidArgument("splice: replacement proof contains subgroup generators");
    }
    std::size_t t = tail_block_start(p);
    ProofWord   block(p.begin() + t, p.end());
    Word        h = bracket_concat(block);
    if (value(q) != h) {
      throw InvalidArgument("splice: replacement value " + value(q).str() + " differs from block value "
                            + h.str());
    }
    ProofWord out(p.begin(), p.begin() + t);
    out.insert(out.end(), q.begin(), q.end());
    return out;
  }

  SplitProof split(ProofWord const& p, std::size_t k, std::span<Gen const> pad) {
    if (!is_relator_only(p)) {
      throw InvalidArgument("split: proof contains subgroup generators");
    }
    if (!Word(pad).empty()) {
      throw InvalidArgument("split: pad must be freely trivial");
    }
    std::size_t const nrel = stats(p).relator_count;
    if (k < 1 || k > nrel) {
      throw InvalidArgument("split: relator index " + std::to_string(k) + " out of range 1.."
                            + std::to_string(nrel));
    }
    std::size_t cut = 0;
    for (std::size_t seen = 0; cut < p.size(); ++cut) {
      if (p[cut].is_relator() && ++seen == k) {
        break;
      }
    }
    SplitProof out;
    if (k == 1) {
      for (Gen g : pad) {
        out.second.push_back(ProofItem::conj(g));
      }
      out.second.insert(out.second.end(), p.begin(), p.end());
      return out;
    }
    ProofWord head(p.begin(), p.begin() + cut);
    // Shortest pad prefix that balances the head's conjugators.
    std::size_t m = 0;
    for (std::size_t i = 0; i <= pad.size(); ++i) {
      ProofWord trial = head;
      for (std::size_t j = 0; j < i; ++j) {
        trial.push_back(ProofItem::conj(pad[j]));
      }
      if (conjugator_total(trial).empty()) {
        m = i;
        break;
      }
    }
    out.first = std::move(head);
    for (std::size_t j = 0; j < m; ++j) {
      out.first.push_back(ProofItem::conj(pad[j]));
    }
    for (std::size_t j = m; j < pad.size(); ++j) {
      out.second.push_back(ProofItem::conj(pad[j]));
    }
    out.second.insert(out.second.end(), p.begin() + cut, p.end());
    return out;
  }

  CubeProduct to_cubes(ProofWord const& p) {
    if (!is_relator_only(p)) {
      throw InvalidArgument("to_cubes: proof contains subgroup generators");
    }
    if (!conjugator_total(p).empty()) {
      throw InvalidArgument("to_cubes: conjugator letters do not cancel");
    }
    CubeProduct      out;
    std::vector<Gen> prefix;
    for (ProofItem const& item : p) {
      if (item.is_conjugator()) {
        push_reduced(prefix, item.gen);
        continue;
      }
      auto base = is_cube(item.relator);
      if (!base) {
        throw InvalidArgument("to_cubes: relator instance " + item.relator.str() + " is not a cube");
      }
      out.push_back({std::move(*base), invert(Word::from_reduced(prefix))});
    }
    return out;
  }

  Word cube_product_value(CubeProduct const& cp) {
    std::vector<Gen> out;
    for (CubeFactor const& f : cp) {
      Word c = conjugate(power(f.base, 3), f.conjugator);
      for (Gen g : c) {
        push_reduced(out, g);
      }
    }
    return Word::from_reduced(std::move(out));
  }

  CubeProduct conjugate(CubeProduct const& cp, Word const& v) {
    CubeProduct out;
    out.reserve(cp.size());
    for (CubeFactor const& f : cp) {
      out.push_back({f.base, f.conjugator * v});
    }
    return out;
  }

  ProofWord absorb_conjugation(ProofWord const& p) {
    ProofWord out;
    out.reserve(p.size());
    for (ProofItem const& item : p) {
      push_reduced(out, item);
      // Collapse  a (R) A  while the pattern keeps appearing at the tail.
      while (out.size() >= 3) {
        ProofItem const& after  = out[out.size() - 1];
        ProofItem const& rel    = out[out.size() - 2];
        ProofItem const& before = out[out.size() - 3];
        if (!after.is_conjugator() || !rel.is_relator() || !before.is_conjugator()
            || after.gen != before.gen.inverse()) {
          break;
        }
        Word const& r = rel.relator;
        Word        rotated;
        if (r.back() == before.gen) {
          rotated = rotate(r, r.size() - 1);
        } else if (r.front() == after.gen) {
          rotated = rotate(r, 1);
        } else {
          break;
        }
        out.resize(out.size() - 3);
        push_reduced(out, ProofItem::rel(std::move(rotated)));
      }
    }
    return out;
  }

}  // namespace cubes
