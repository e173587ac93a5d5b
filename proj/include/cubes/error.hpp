#ifndef CUBES_ERROR_HPP_
#define CUBES_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cubes {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed text input. line and column are 1-based, 0 when unknown.
  class ParseError : public Error {
   public:
    ParseError(std::string const& what, std::size_t line = 0, std::size_t column = 0)
        : Error(decorate(what, line, column)), message_(what), line_(line), column_(column) {}

    // The message without location.
    std::string const& message() const { return message_; }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

   private:
    static std::string decorate(std::string const& what, std::size_t line, std::size_t column) {
      if (line == 0) {
        return what;
      }
      std::string s = "line " + std::to_string(line);
      if (column != 0) {
        s += ", column " + std::to_string(column);
      }
      return s + ": " + what;
    }

    std::string message_;
    std::size_t line_;
    std::size_t column_;
  };

  // A documented precondition of an operation does not hold.
  class InvalidArgument : public Error {
   public:
    using Error::Error;
  };

  class ProofTooLarge : public Error {
   public:
    using Error::Error;
  };

}  // namespace cubes

#endif  // CUBES_ERROR_HPP_
