// Shared helpers for the tests: fixture loading, reference values, and an
// oracle for free-group words that works on plain strings and shares no
// code with the library.

#ifndef CUBES_TESTS_COMMON_HPP_
#define CUBES_TESTS_COMMON_HPP_

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cubes/presentation.hpp"
#include "cubes/proofword.hpp"

namespace testing {

  inline std::string fixture_path(std::string const& name) {
    return std::string(CUBES_FIXTURE_DIR) + "/" + name;
  }

  inline std::string read_fixture(std::string const& name) {
    std::ifstream in(fixture_path(name));
    if (!in) {
      throw std::runtime_error("missing fixture " + name);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  inline cubes::ProofWord fixture_proof(std::string const& name) {
    return cubes::parse_proofword(read_fixture(name));
  }

  inline cubes::PresentationFile fixture_presentation(std::string const& name) {
    return cubes::read_presentation(read_fixture(name));
  }

  // Reference values for the fixture proof-words.
  namespace ref {
    inline std::string const C       = "YXyxWZwzXYxyZWzw";
    inline std::string const C_WZw   = "WzwYXyxWZwzXYxyZ";
    inline std::string const beta    = "YZXzyxZxzXzXYxyZ";
    inline std::string const gamma   = "WzwYXyxWZwxZXzXYZxzy";
    inline std::string const delta   = "WzwYXyxWZwXZYzxyZyzY";
    inline std::string const epsilon = "yZYzYXZyzxzXYxyZ";
  }  // namespace ref

  ////////////////////////////////////////////////////////////////////////
  // String oracle. Letters are lowercase generators and uppercase inverses.
  ////////////////////////////////////////////////////////////////////////

  namespace oracle {

    inline char inv(char c) {
      return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                         : static_cast<char>(std::tolower(c));
    }

    inline std::string reduce(std::string const& s) {
      std::string out;
      for (char c : s) {
        if (c == ' ' || c == '\n') {
          continue;
        }
        if (!out.empty() && out.back() == inv(c)) {
          out.pop_back();
        } else {
          out.push_back(c);
        }
      }
      return out;
    }

    inline std::string inverse(std::string const& s) {
      std::string out(s.rbegin(), s.rend());
      for (char& c : out) {
        c = inv(c);
      }
      return out;
    }

    // u^v = v^-1 u v
    inline std::string conj(std::string const& u, std::string const& v) {
      return reduce(inverse(v) + u + v);
    }

    inline std::string comm(std::string const& a, std::string const& b) {
      return reduce(inverse(a) + inverse(b) + a + b);
    }

    inline bool is_reduced(std::string const& s) {
      for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i + 1] == inv(s[i])) {
          return false;
        }
      }
      return true;
    }

    inline bool is_cyclically_reduced(std::string const& s) {
      return is_reduced(s) && (s.size() < 2 || s.back() != inv(s.front()));
    }

    // Rank used by the library's letter order x < X < y < Y < ...
    inline int rank_of(char c, std::string const& gens) {
      auto i = static_cast<int>(gens.find(static_cast<char>(std::tolower(c))));
      return 2 * i + (std::isupper(static_cast<unsigned char>(c)) ? 1 : 0);
    }

    // Every rotation of s and of its inverse.
    inline std::vector<std::string> orbit(std::string const& s) {
      std::vector<std::string> out;
      for (std::string const& t : {s, inverse(s)}) {
        for (std::size_t k = 0; k < t.size(); ++k) {
          out.push_back(t.substr(k) + t.substr(0, k));
        }
      }
      return out;
    }

    inline std::string orbit_min(std::string const& s, std::string const& gens) {
      auto less = [&](std::string const& a, std::string const& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [&](char x, char y) {
          return rank_of(x, gens) < rank_of(y, gens);
        });
      };
      auto o = orbit(s);
      return *std::min_element(o.begin(), o.end(), less);
    }

    // Exhaustive strings of length n, filtered to cyclically reduced ones,
    // deduplicated by orbit.
    inline std::set<std::string> base_word_classes(std::string const& gens, std::size_t n) {
      std::string letters;
      for (char g : gens) {
        letters.push_back(g);
        letters.push_back(static_cast<char>(std::toupper(g)));
      }
      std::set<std::string> classes;
      std::string           cur(n, ' ');
      std::size_t const     base = letters.size();
      std::size_t           total = 1;
      for (std::size_t i = 0; i < n; ++i) {
        total *= base;
      }
      for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
          cur[i] = letters[c % base];
          c /= base;
        }
        if (is_cyclically_reduced(cur)) {
          classes.insert(orbit_min(cur, gens));
        }
      }
      return classes;
    }

  }  // namespace oracle

}  // namespace testing

#endif  // CUBES_TESTS_COMMON_HPP_
