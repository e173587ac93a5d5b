// Presentations whose relators are cubes of base-words, subgroup
// specifications, and the orders of the Burnside groups B(r,3).

#ifndef CUBES_PRESENTATION_HPP_
#define CUBES_PRESENTATION_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cubes/word.hpp"

namespace cubes {

  class Presentation {
   public:
    Presentation() = default;
    // Throws InvalidArgument if a base is empty, not cyclically reduced, or
    // uses a generator outside the alphabet.
    Presentation(Alphabet alphabet, std::vector<Word> relator_bases);

    Alphabet const&          alphabet() const { return alphabet_; }
    std::size_t              rank() const { return alphabet_.rank(); }
    std::vector<Word> const& relator_bases() const { return bases_; }
    std::size_t              size() const { return bases_.size(); }
    // base^3
    Word relator(std::size_t i) const;

    bool operator==(Presentation const&) const = default;

   private:
    Alphabet          alphabet_;
    std::vector<Word> bases_;
  };

  class SubgroupSpec {
   public:
    SubgroupSpec() = default;
    // Throws InvalidArgument on repeated generators.
    explicit SubgroupSpec(std::vector<Gen> generators);
    // The subgroup generated by the first r generators.
    static SubgroupSpec first(std::size_t r);
    static SubgroupSpec parse(std::string_view letters, Alphabet const& alphabet = Alphabet());

    std::vector<Gen> const& generators() const { return gens_; }
    std::size_t             size() const { return gens_.size(); }
    bool                    empty() const { return gens_.empty(); }
    bool                    contains_letter(Gen g) const;

    std::string str(Alphabet const& alphabet = Alphabet()) const;

    bool operator==(SubgroupSpec const&) const = default;

   private:
    std::vector<Gen> gens_;
  };

  struct BurnsideParams {
    std::size_t   r;
    std::size_t   s;  // r(r^2 + 5)/6
    std::uint64_t order;

    // Throws InvalidArgument for r == 0 or an order beyond 64 bits (r > 5).
    static BurnsideParams of(std::size_t r);
  };

  // |B(r,3)| = 3^s
  std::uint64_t expected_order(std::size_t r);
  // |B(group_rank,3) : B(subgroup_rank,3)|; subgroup_rank 0 is the trivial subgroup.
  std::uint64_t expected_index(std::size_t group_rank, std::size_t subgroup_rank);

  // Picks count distinct pool members, inverting each with probability 1/2
  // and rotating it by a uniform offset. Deterministic in seed.
  Presentation random_presentation(Alphabet const&          alphabet,
                                   std::vector<Word> const& pool,
                                   std::size_t              count,
                                   std::uint64_t            seed);

  ////////////////////////////////////////////////////////////////////////
  // Text format
  //
  //   gens 4
  //   base Yw
  //   base xyZ
  //   sub xyz
  //
  // Blank lines and lines starting with '#' are skipped on input.
  ////////////////////////////////////////////////////////////////////////

  struct PresentationFile {
    Presentation                presentation;
    std::optional<SubgroupSpec> subgroup;

    bool operator==(PresentationFile const&) const = default;
  };

  PresentationFile read_presentation(std::istream& in);
  PresentationFile read_presentation(std::string_view text);
  PresentationFile load_presentation(std::filesystem::path const& path);

  std::string write_presentation(Presentation const&                pres,
                                 std::optional<SubgroupSpec> const& sub = std::nullopt);
  void        save_presentation(std::filesystem::path const&       path,
                                Presentation const&                pres,
                                std::optional<SubgroupSpec> const& sub = std::nullopt);

}  // namespace cubes

#endif  // CUBES_PRESENTATION_HPP_
