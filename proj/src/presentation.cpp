#include "cubes/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

#include "cubes/rng.hpp"

namespace cubes {

  Presentation::Presentation(Alphabet alphabet, std::vector<Word> relator_bases)
      : alphabet_(std::move(alphabet)), bases_(std::move(relator_bases)) {
    for (Word const& b : bases_) {
      if (b.empty()) {
        throw InvalidArgument("relator base must be nonempty");
      }
      if (!is_cyclically_reduced(b)) {
        throw InvalidArgument("relator base " + b.str(alphabet_) + " is not cyclically reduced");
      }
      if (b.rank_used() > alphabet_.rank()) {
        throw InvalidArgument("relator base uses a generator outside the alphabet");
      }
    }
  }

  Word Presentation::relator(std::size_t i) const {
    return power(bases_.at(i), 3);
  }

  SubgroupSpec::SubgroupSpec(std::vector<Gen> generators) : gens_(std::move(generators)) {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (gens_[i].index() == gens_[j].index()) {
          throw InvalidArgument("subgroup generators must be distinct");
        }
      }
    }
  }

  SubgroupSpec SubgroupSpec::first(std::size_t r) {
    std::vector<Gen> gens;
    for (std::size_t i = 0; i < r; ++i) {
      gens.emplace_back(i, false);
    }
    return SubgroupSpec(std::move(gens));
  }

  SubgroupSpec SubgroupSpec::parse(std::string_view letters, Alphabet const& alphabet) {
    return SubgroupSpec(parse_letters(letters, alphabet));
  }

  bool SubgroupSpec::contains_letter(Gen g) const {
    return std::any_of(gens_.begin(), gens_.end(), [g](Gen h) { return h == g || h == g.inverse(); });
  }

  std::string SubgroupSpec::str(Alphabet const& alphabet) const {
    return format_letters(gens_, alphabet);
  }

  BurnsideParams BurnsideParams::of(std::size_t r) {
    if (r == 0 || r > 5) {
      throw InvalidArgument("B(r,3) order is supported for 1 <= r <= 5");
    }
    std::size_t   s     = r * (r * r + 5) / 6;
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < s; ++i) {
      order *= 3;
    }
    return {r, s, order};
  }

  std::uint64_t expected_order(std::size_t r) {
    return BurnsideParams::of(r).order;
  }

  std::uint64_t expected_index(std::size_t group_rank, std::size_t subgroup_rank) {
    if (subgroup_rank > group_rank) {
      throw InvalidArgument("subgroup rank exceeds group rank");
    }
    std::uint64_t sub = subgroup_rank == 0 ? 1 : expected_order(subgroup_rank);
    return expected_order(group_rank) / sub;
  }

  Presentation random_presentation(Alphabet const&          alphabet,
                                   std::vector<Word> const& pool,
                                   std::size_t              count,
                                   std::uint64_t            seed) {
    if (count > pool.size()) {
      throw InvalidArgument("requested " + std::to_string(count) + " relators from a pool of "
                            + std::to_string(pool.size()));
    }
    std::mt19937_64          rng(seed);
    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = i;
    }
    std::vector<Word> bases;
    bases.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t j = i + uniform_below(rng, order.size() - i);
      std::swap(order[i], order[j]);
      Word w = pool[order[i]];
      if (uniform_below(rng, 2) == 1) {
        w = invert(w);
      }
      w = rotate(w, uniform_below(rng, w.size()));
      bases.push_back(std::move(w));
    }
    return Presentation(alphabet, std::move(bases));
  }

  ////////////////////////////////////////////////////////////////////////
  // Text format
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::string_view trim(std::string_view s) {
      auto const ws = " \t\r";
      auto       b  = s.find_first_not_of(ws);
      if (b == std::string_view::npos) {
        return {};
      }
      auto e = s.find_last_not_of(ws);
      return s.substr(b, e - b + 1);
    }
  }  // namespace

  PresentationFile read_presentation(std::istream& in) {
    std::optional<Alphabet>     alphabet;
    std::vector<Word>           bases;
    std::optional<SubgroupSpec> sub;
    std::string                 raw;
    std::size_t                 lineno = 0;

    while (std::getline(in, raw)) {
      ++lineno;
      std::string_view line = trim(raw);
      if (line.empty() || line.front() == '#') {
        continue;
      }
      auto             sp      = line.find_first_of(" \t");
      std::string_view keyword = line.substr(0, sp);
      std::string_view arg     = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));
      try {
        if (keyword == "gens") {
          if (alphabet) {
            throw ParseError("duplicate gens line");
          }
          std::size_t r   = 0;
          auto        str = std::string(arg);
          std::size_t pos = 0;
          try {
            r = std::stoul(str, &pos);
          } catch (std::exception const&) {
            throw ParseError("expected a generator count after 'gens'");
          }
          if (pos != str.size()) {
            throw ParseError("expected a generator count after 'gens'");
          }
          alphabet = Alphabet(r);
        } else if (keyword == "base" || keyword == "sub") {
          if (!alphabet) {
            throw ParseError("'" + std::string(keyword) + "' before 'gens'");
          }
          if (keyword == "base") {
            if (arg.empty()) {
              throw ParseError("empty relator base");
            }
            auto letters = parse_letters(arg, *alphabet);
            Word w(letters);
            if (w.size() != letters.size() || !is_cyclically_reduced(w)) {
              throw ParseError("relator base must be freely and cyclically reduced");
            }
            bases.push_back(std::move(w));
          } else {
            if (sub) {
              throw ParseError("duplicate sub line");
            }
            sub = SubgroupSpec::parse(arg, *alphabet);
          }
        } else {
          throw ParseError("unknown keyword '" + std::string(keyword) + "'");
        }
      } catch (ParseError const& e) {
        // Column is relative to the argument; keep only the line.
        throw ParseError(e.message(), lineno);
      } catch (InvalidArgument const& e) {
        throw ParseError(e.what(), lineno);
      }
    }
    if (!alphabet) {
      throw ParseError("missing 'gens' line");
    }
    return {Presentation(*alphabet, std::move(bases)), std::move(sub)};
  }

  PresentationFile read_presentation(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_presentation(in);
  }

  PresentationFile load_presentation(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error("cannot open presentation file " + path.string());
    }
    return read_presentation(in);
  }

  std::string write_presentation(Presentation const& pres, std::optional<SubgroupSpec> const& sub) {
    std::string out = "gens " + std::to_string(pres.rank()) + "\n";
    for (Word const& b : pres.relator_bases()) {
      out += "base " + b.str(pres.alphabet()) + "\n";
    }
    if (sub) {
      out += "sub " + sub->str(pres.alphabet()) + "\n";
    }
    return out;
  }

  void save_presentation(std::filesystem::path const&       path,
                         Presentation const&                pres,
                         std::optional<SubgroupSpec> const& sub) {
    std::ofstream out(path);
    if (!out) {
      throw Error("cannot write presentation file " + path.string());
    }
    out << write_presentation(pres, sub);
  }

}  // namespace cubes
