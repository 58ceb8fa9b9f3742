#pragma once

// Line-oriented text format for Lie algebras and forms:
//
//   # comment
//   dim 6
//   basis e1 e2 e3 f1 f2 f3
//   param mu = 1/2
//   d e3 = 1 e1^e2 - 1/2 e1^e3
//   form omega = e1^f1 + e2^f2 + e3^f3
//   form rho = ...
//
// Coefficients are integers or p/q and default to 1; monomials may be given
// in any index order and are sign-normalized.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "halfflat/liealg.hpp"

namespace halfflat {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A form of the wrong degree for its role (omega must be a 2-form, rho a 3-form).
class DegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> default_basis(int dim);

/// Parses "c1 b_i^b_j + c2 ..." over the given basis names; "0" is the zero
/// form. The degree is taken from the first monomial unless given.
KForm parse_form(std::string_view text, const std::vector<std::string>& basis, int degree = -1);

/// Canonical rendering with sorted monomials and explicit coefficients.
std::string format_form(const KForm& form, const std::vector<std::string>& basis);

struct StructureFile {
  std::vector<std::string> basis;
  LieAlgebra algebra;
  std::optional<KForm> omega;
  std::optional<KForm> rho;
};

/// Throws ParseError (syntax, with line and column), InvalidLieAlgebra
/// (Jacobi) or DegreeError.
StructureFile parse_structure(std::string_view text);
StructureFile read_structure_file(const std::string& path);

std::string emit_structure(const StructureFile& file);

}  // namespace halfflat
