#pragma once

#include <iosfwd>
#include <string>

#include "gmtk/problem.hpp"

namespace gmtk {

/// Malformed instance file. Carries the 1-based line number of the offending
/// line when one can be attributed.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  explicit ParseError(const std::string& message) : Error(message), line_(0) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the line-oriented sparse instance format (`c p a e i0 i1 n0 n1`
/// lines). Comment and geometry lines are kept on the Problem but do not
/// enter the cost structure.
Problem parse_dd(std::istream& in);
Problem parse_dd(const std::string& text);
Problem load_dd(const std::string& path);

/// Canonical emission: one `p` line, `a` lines sorted by id, `e` lines sorted
/// by (min id, max id), costs in shortest round-trip decimal form. Parsing the
/// output reconstructs an identical Problem.
std::string write_dd(const Problem& problem);
void save_dd(const Problem& problem, const std::string& path);

}  // namespace gmtk
