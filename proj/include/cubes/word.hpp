// Free-group words over a small case-encoded alphabet.
//
// A letter is stored as a single byte code 2*index + (inverse ? 1 : 0), so
// the natural byte order is x < X < y < Y < z < Z < w < W, which is also the
// order used to pick canonical representatives of cyclic words.

#ifndef CUBES_WORD_HPP_
#define CUBES_WORD_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubes/error.hpp"

namespace cubes {

  class Gen {
   public:
    constexpr Gen() = default;
    constexpr Gen(std::size_t index, bool inverse)
        : code_(static_cast<std::uint8_t>(2 * index + (inverse ? 1 : 0))) {}

    static constexpr Gen from_code(std::uint8_t code) {
      Gen g;
      g.code_ = code;
      return g;
    }

    constexpr std::size_t  index() const { return code_ >> 1; }
    constexpr bool         is_inverse() const { return code_ & 1; }
    constexpr int          sign() const { return is_inverse() ? -1 : 1; }
    constexpr std::uint8_t code() const { return code_; }
    constexpr Gen          inverse() const { return from_code(code_ ^ 1); }

    friend constexpr bool operator==(Gen, Gen) = default;
    friend constexpr auto operator<=>(Gen, Gen) = default;

   private:
    std::uint8_t code_ = 0;
  };

  // Generator names: lowercase letter per generator, uppercase for the inverse.
  class Alphabet {
   public:
    static constexpr std::size_t max_rank = 26;

    explicit Alphabet(std::size_t rank = 4);
    explicit Alphabet(std::string names);

    std::size_t        rank() const { return names_.size(); }
    std::string const& names() const { return names_; }

    bool contains(Gen g) const { return g.index() < rank(); }
    char letter(Gen g) const;
    // Throws ParseError for characters outside the alphabet.
    Gen  gen(char c) const;
    bool is_letter(char c) const;

    bool operator==(Alphabet const&) const = default;

   private:
    std::string names_;
  };

  // Default letter names: x, y, z, w for the first four generators.
  inline constexpr std::string_view default_names = "xyzwabcdefghijklmnopqrstuv";

  class Word {
   public:
    using value_type     = Gen;
    using const_iterator = std::vector<Gen>::const_iterator;

    Word() = default;
    // Freely reduces the given letters.
    explicit Word(std::span<Gen const> letters);
    Word(std::initializer_list<Gen> letters)
        : Word(std::span<Gen const>(letters.begin(), letters.size())) {}

    // Parses case-encoded text, ignoring whitespace, and freely reduces it.
    static Word parse(std::string_view text, Alphabet const& alphabet = Alphabet());
    // Wraps letters that are already freely reduced; no check is made.
    static Word from_reduced(std::vector<Gen> letters);

    std::size_t size() const { return letters_.size(); }
    bool        empty() const { return letters_.empty(); }
    Gen         operator[](std::size_t i) const { return letters_[i]; }
    Gen         front() const { return letters_.front(); }
    Gen         back() const { return letters_.back(); }

    const_iterator begin() const { return letters_.begin(); }
    const_iterator end() const { return letters_.end(); }

    std::span<Gen const>    letters() const { return letters_; }
    std::vector<Gen> const& vec() const { return letters_; }

    std::string str(Alphabet const& alphabet = Alphabet()) const;

    // Largest generator index used plus one, 0 for the identity.
    std::size_t rank_used() const;

    bool operator==(Word const&) const = default;
    // Length first, then letter order.
    std::strong_ordering operator<=>(Word const& that) const;

   private:
    std::vector<Gen> letters_;
  };

  std::ostream& operator<<(std::ostream& os, Word const& w);

  // Parses raw letters without reducing them.
  std::vector<Gen> parse_letters(std::string_view text,
                                 Alphabet const&  alphabet = Alphabet());
  std::string      format_letters(std::span<Gen const> letters,
                                  Alphabet const&      alphabet = Alphabet());

  ////////////////////////////////////////////////////////////////////////
  // Free-group arithmetic
  ////////////////////////////////////////////////////////////////////////

  Word free_reduce(std::span<Gen const> letters);
  // Appends g to a reduced letter sequence, cancelling against the tail.
  void push_reduced(std::vector<Gen>& reduced, Gen g);

  Word concat(Word const& a, Word const& b);
  Word concat(std::initializer_list<Word> words);
  Word operator*(Word const& a, Word const& b);

  Word invert(Word const& w);
  // v^-1 u v
  Word conjugate(Word const& u, Word const& v);
  Word power(Word const& u, long n);
  // a^-1 b^-1 a b
  Word commutator(Word const& a, Word const& b);

  struct CyclicReduction {
    Word core;
    Word conjugator;  // w == conjugate(core, conjugator)
  };

  CyclicReduction cyclic_reduce(Word const& w);
  bool            is_cyclically_reduced(Word const& w);

  // Rotates left: the result starts with letter k of w.
  Word rotate(Word const& w, std::size_t k);

  // Minimum, under the letter order, over all rotations of w and of its
  // inverse. Throws InvalidArgument if w is not cyclically reduced.
  Word canonical_rep(Word const& w);

  // One canonical representative of each class of freely and cyclically
  // reduced words under rotation and inversion, for each length in
  // [min_len, max_len]; sorted by length then letter order.
  std::vector<Word> base_words(Alphabet const& alphabet,
                               std::size_t     min_len,
                               std::size_t     max_len);

  // Generators occurring in w (bit i set for generator i), ignoring sign.
  std::uint32_t support(Word const& w);

  // [[x,y],[z,w]] in the standard rank-4 alphabet.
  Word commutator_of_commutators();

}  // namespace cubes

template <>
struct std::hash<cubes::Word> {
  std::size_t operator()(cubes::Word const& w) const noexcept;
};

#endif  // CUBES_WORD_HPP_
