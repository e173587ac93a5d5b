#include "cubes/word.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace cubes {

  ////////////////////////////////////////////////////////////////////////
  // Alphabet
  ////////////////////////////////////////////////////////////////////////

  Alphabet::Alphabet(std::size_t rank) {
    if (rank == 0 || rank > max_rank) {
      throw InvalidArgument("alphabet rank must be in [1, 26], found " + std::to_string(rank));
    }
    names_ = std::string(default_names.substr(0, rank));
  }

  Alphabet::Alphabet(std::string names) : names_(std::move(names)) {
    if (names_.empty() || names_.size() > max_rank) {
      throw InvalidArgument("alphabet must have between 1 and 26 letters");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      char c = names_[i];
      if (c < 'a' || c > 'z') {
        throw InvalidArgument(std::string("alphabet letters must be lowercase, found '") + c + "'");
      }
      if (names_.find(c) != i) {
        throw InvalidArgument(std::string("duplicate alphabet letter '") + c + "'");
      }
    }
  }

  char Alphabet::letter(Gen g) const {
    if (!contains(g)) {
      throw InvalidArgument("generator index " + std::to_string(g.index())
                            + " outside alphabet of rank " + std::to_string(rank()));
    }
    char c = names_[g.index()];
    return g.is_inverse() ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
  }

  bool Alphabet::is_letter(char c) const {
    auto lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return std::isalpha(static_cast<unsigned char>(c)) && names_.find(lower) != std::string::npos;
  }

  Gen Alphabet::gen(char c) const {
    if (!is_letter(c)) {
      throw ParseError(std::string("illegal character '") + c + "' for alphabet \"" + names_ + "\"");
    }
    auto lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return Gen(names_.find(lower), std::isupper(static_cast<unsigned char>(c)) != 0);
  }

  ////////////////////////////////////////////////////////////////////////
  // Word
  ////////////////////////////////////////////////////////////////////////

  void push_reduced(std::vector<Gen>& reduced, Gen g) {
    if (!reduced.empty() && reduced.back() == g.inverse()) {
      reduced.pop_back();
    } else {
      reduced.push_back(g);
    }
  }

  Word::Word(std::span<Gen const> letters) {
    letters_.reserve(letters.size());
    for (Gen g : letters) {
      push_reduced(letters_, g);
    }
  }

  Word Word::from_reduced(std::vector<Gen> letters) {
    Word w;
    w.letters_ = std::move(letters);
    return w;
  }

  Word Word::parse(std::string_view text, Alphabet const& alphabet) {
    auto letters = parse_letters(text, alphabet);
    return Word(letters);
  }

  std::string Word::str(Alphabet const& alphabet) const {
    return format_letters(letters_, alphabet);
  }

  std::size_t Word::rank_used() const {
    std::size_t r = 0;
    for (Gen g : letters_) {
      r = std::max(r, g.index() + 1);
    }
    return r;
  }

  std::strong_ordering Word::operator<=>(Word const& that) const {
    if (auto c = size() <=> that.size(); c != 0) {
      return c;
    }
    return std::lexicographical_compare_three_way(
        letters_.begin(), letters_.end(), that.letters_.begin(), that.letters_.end());
  }

  std::ostream& operator<<(std::ostream& os, Word const& w) {
    return os << w.str(Alphabet(std::max<std::size_t>(4, w.rank_used())));
  }

  std::vector<Gen> parse_letters(std::string_view text, Alphabet const& alphabet) {
    std::vector<Gen> out;
    out.reserve(text.size());
    std::size_t line = 1, col = 0;
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
      if (!alphabet.is_letter(c)) {
        throw ParseError(std::string("illegal character '") + c + "'", line, col);
      }
      out.push_back(alphabet.gen(c));
    }
    return out;
  }

  std::string format_letters(std::span<Gen const> letters, Alphabet const& alphabet) {
    std::string s;
    s.reserve(letters.size());
    for (Gen g : letters) {
      s.push_back(alphabet.letter(g));
    }
    return s;
  }

  ////////////////////////////////////////////////////////////////////////
  // Arithmetic
  ////////////////////////////////////////////////////////////////////////

  Word free_reduce(std::span<Gen const> letters) {
    return Word(letters);
  }

  Word concat(Word const& a, Word const& b) {
    std::vector<Gen> out(a.vec());
    for (Gen g : b) {
      push_reduced(out, g);
    }
    return Word::from_reduced(std::move(out));
  }

  Word concat(std::initializer_list<Word> words) {
    std::vector<Gen> out;
    for (Word const& w : words) {
      for (Gen g : w) {
        push_reduced(out, g);
      }
    }
    return Word::from_reduced(std::move(out));
  }

  Word operator*(Word const& a, Word const& b) {
    return concat(a, b);
  }

  Word invert(Word const& w) {
    std::vector<Gen> out;
    out.reserve(w.size());
    for (auto it = w.vec().rbegin(); it != w.vec().rend(); ++it) {
      out.push_back(it->inverse());
    }
    return Word::from_reduced(std::move(out));
  }

  Word conjugate(Word const& u, Word const& v) {
    return concat({invert(v), u, v});
  }

  Word power(Word const& u, long n) {
    Word const base = n < 0 ? invert(u) : u;
    std::vector<Gen> out;
    for (long i = 0; i < (n < 0 ? -n : n); ++i) {
      for (Gen g : base) {
        push_reduced(out, g);
      }
    }
    return Word::from_reduced(std::move(out));
  }

  Word commutator(Word const& a, Word const& b) {
    return concat({invert(a), invert(b), a, b});
  }

  bool is_cyclically_reduced(Word const& w) {
    return w.size() < 2 || w.front() != w.back().inverse();
  }

  CyclicReduction cyclic_reduce(Word const& w) {
    std::size_t i = 0, j = w.size();
    while (j - i >= 2 && w[i] == w[j - 1].inverse()) {
      ++i;
      --j;
    }
    std::vector<Gen> core(w.begin() + i, w.begin() + j);
    // w = p core p^-1 = conjugate(core, p^-1)
    std::vector<Gen> conj(w.begin() + j, w.end());
    return {Word::from_reduced(std::move(core)), Word::from_reduced(std::move(conj))};
  }

  Word rotate(Word const& w, std::size_t k) {
    if (w.empty()) {
      return w;
    }
    k %= w.size();
    std::vector<Gen> out(w.vec());
    std::rotate(out.begin(), out.begin() + k, out.end());
    // A rotation of a cyclically reduced word is reduced; otherwise reduce.
    return is_cyclically_reduced(w) ? Word::from_reduced(std::move(out)) : Word(out);
  }

  namespace {
    // Is rotation k of v lexicographically less than the current minimum?
    bool rotation_less(std::vector<Gen> const& v, std::size_t k, std::vector<Gen> const& best) {
      std::size_t n = v.size();
      for (std::size_t i = 0; i < n; ++i) {
        Gen a = v[(k + i) % n];
        if (a != best[i]) {
          return a < best[i];
        }
      }
      return false;
    }
  }  // namespace

  Word canonical_rep(Word const& w) {
    if (!is_cyclically_reduced(w)) {
      throw InvalidArgument("canonical_rep requires a cyclically reduced word, found "
                            + w.str(Alphabet(std::max<std::size_t>(4, w.rank_used()))));
    }
    if (w.empty()) {
      return w;
    }
    std::vector<Gen> best(w.vec());
    Word const       inv = invert(w);
    for (auto const* v : {&w.vec(), &inv.vec()}) {
      for (std::size_t k = 0; k < v->size(); ++k) {
        if (rotation_less(*v, k, best)) {
          best.assign(v->begin() + k, v->end());
          best.insert(best.end(), v->begin(), v->begin() + k);
        }
      }
    }
    return Word::from_reduced(std::move(best));
  }

  std::vector<Word> base_words(Alphabet const& alphabet, std::size_t min_len, std::size_t max_len) {
    if (min_len < 1 || min_len > max_len) {
      throw InvalidArgument("base_words requires 1 <= min_len <= max_len");
    }
    std::vector<Word> out;
    std::size_t const ncodes = 2 * alphabet.rank();
    std::vector<Gen>  cur;

    // Depth-first over freely reduced words in increasing letter order, so
    // the output for each length is already sorted.
    std::function<void(std::size_t)> extend = [&](std::size_t len) {
      if (cur.size() == len) {
        Word w = Word::from_reduced(cur);
        if (is_cyclically_reduced(w) && canonical_rep(w) == w) {
          out.push_back(std::move(w));
        }
        return;
      }
      for (std::uint8_t c = 0; c < ncodes; ++c) {
        Gen g = Gen::from_code(c);
        if (!cur.empty() && cur.back() == g.inverse()) {
          continue;
        }
        // A canonical word starts with its smallest letter.
        if (!cur.empty() && g < cur.front()) {
          continue;
        }
        cur.push_back(g);
        extend(len);
        cur.pop_back();
      }
    };
    for (std::size_t len = min_len; len <= max_len; ++len) {
      extend(len);
    }
    return out;
  }

  std::uint32_t support(Word const& w) {
    std::uint32_t s = 0;
    for (Gen g : w) {
      s |= std::uint32_t{1} << g.index();
    }
    return s;
  }

  Word commutator_of_commutators() {
    Word x{Gen(0, false)}, y{Gen(1, false)}, z{Gen(2, false)}, w{Gen(3, false)};
    return commutator(commutator(x, y), commutator(z, w));
  }

}  // namespace cubes

std::size_t std::hash<cubes::Word>::operator()(cubes::Word const& w) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (cubes::Gen g : w) {
    h = (h ^ g.code()) * 1099511628211ULL;
  }
  return h ^ w.size();
}
