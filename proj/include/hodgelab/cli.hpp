#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hodgelab/carrier.hpp"
#include "hodgelab/invariants.hpp"
#include "hodgelab/io.hpp"

namespace hodgelab {

/// Carrier DSL syntax error; line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// carrier := "std" | "dual" | "sum(" carrier ("," carrier)* ")" | "pow(" carrier "," INT ")"
///          | "wedge(" INT "," carrier ")" | "tensor(" INT "," carrier ")"
///          | "prod(" carrier ("," carrier)* ")"
/// Throws SyntaxError on malformed input and DomainError when the degree exceeds max_degree.
CarrierExpr parse_carrier(const std::string& text, std::size_t max_degree = 64);

/// A group as a Lie algebra on Q^n plus component representatives, with the data it came from.
struct GroupSetup {
  std::string kind;
  LieAlgebra lie;
  std::vector<QMatrix> extra;
  Json data;                         // echoed input data
  std::vector<MultiTensor> forms;    // degree-2 invariant tensors of the defining data
  std::vector<MultiTensor> exceptional;
};

/// gl:INT | sl:INT | sp:INT | so:PATH | o:PATH | su:PATH | u:PATH | res-so:PATH.
GroupSetup parse_group(const std::string& text);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunReport {
  std::string version = "1";
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<Check> checks;
  double elapsed_ms = 0;

  void check(std::string name, bool pass, std::string detail = {});
  bool all_pass() const;
  /// Timing is a separate trailing field and can be left out for byte comparisons.
  Json to_json(bool with_timing = true) const;
};

/// Runs one command. Returns 0 when every check passes, 1 on a failed check, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hodgelab
