#include "halfflat/structure_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace halfflat {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::vector<std::string> default_basis(int dim) {
  if (dim == 3) return {"e1", "e2", "e3"};
  return {"e1", "e2", "e3", "f1", "f2", "f3"};
}

namespace {

// Cursor over one line; columns are 1-based and refer to the original line.
class Cursor {
 public:
  Cursor(std::string_view text, int line, int offset = 0) : text_(text), line_(line), offset_(offset) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                                   text_[pos_] == '\''))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  bool at_digit() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c));
  }
  Scalar number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      const std::size_t den = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (den == pos_) fail("expected a denominator");
    }
    try {
      return parse_scalar(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      pos_ = start;
      fail(e.what());
    }
  }
  std::string_view rest() {
    skip_space();
    return text_.substr(pos_);
  }
  int column() const { return offset_ + static_cast<int>(pos_) + 1; }
  int line() const { return line_; }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column()); }

 private:
  std::string_view text_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
};

int basis_index(const std::vector<std::string>& basis, Cursor& cur) {
  const int column = cur.column();
  const std::string name = cur.word();
  auto it = std::find(basis.begin(), basis.end(), name);
  if (it == basis.end()) throw ParseError("unknown basis element '" + name + "'", cur.line(), column);
  return static_cast<int>(it - basis.begin());
}

KForm parse_terms(Cursor& cur, const std::vector<std::string>& basis, int degree) {
  std::optional<KForm> out;
  if (degree >= 0) out.emplace(degree);
  bool first = true;
  while (!cur.done()) {
    Scalar sign = 1;
    if (cur.accept('+')) {
    } else if (cur.accept('-')) {
      sign = -1;
    } else if (!first) {
      cur.fail("expected '+' or '-'");
    }
    first = false;
    Scalar coeff = 1;
    bool has_number = false;
    if (cur.at_digit()) {
      coeff = cur.number();
      has_number = true;
      cur.accept('*');
    }
    if (cur.done() || cur.peek() == '+' || cur.peek() == '-') {
      if (has_number && is_zero(coeff)) continue;
      cur.fail("expected a monomial");
    }
    const int column = cur.column();
    std::vector<int> idx;
    idx.push_back(basis_index(basis, cur));
    while (cur.accept('^')) idx.push_back(basis_index(basis, cur));
    int inversions = 0;
    unsigned mask = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (mask & (1u << idx[i])) cur.fail("repeated index in monomial");
      mask |= 1u << idx[i];
      for (std::size_t j = i + 1; j < idx.size(); ++j)
        if (idx[i] > idx[j]) ++inversions;
    }
    if (!out) out.emplace(static_cast<int>(idx.size()));
    if (degree >= 0 && static_cast<int>(idx.size()) != degree)
      throw DegreeError("line " + std::to_string(cur.line()) + ", column " + std::to_string(column) + ": expected a " +
                        std::to_string(degree) + "-form monomial");
    if (static_cast<int>(idx.size()) != out->degree())
      throw ParseError("monomial degree differs from the rest of the form", 0, column);
    out->add_term(static_cast<Mask>(mask), (inversions % 2 ? Scalar(-1) : Scalar(1)) * sign * coeff);
  }
  if (!out) out.emplace(degree >= 0 ? degree : 0);
  return *out;
}

// Rebuilds a ParseError raised with line 0 so it carries the real line.
template <class Fn>
auto with_line(int line, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    if (e.line() != 0) throw;
    std::string msg = e.what();
    msg = msg.substr(msg.find(": ") + 2);
    throw ParseError(msg, line, e.column());
  }
}

}  // namespace

KForm parse_form(std::string_view text, const std::vector<std::string>& basis, int degree) {
  Cursor cur(text, 1);
  return with_line(1, [&] { return parse_terms(cur, basis, degree); });
}

std::string format_form(const KForm& form, const std::vector<std::string>& basis) {
  if (form.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : form.terms()) {
    if (out.empty()) {
      if (sign_of(c) < 0) out += "-";
    } else {
      out += sign_of(c) < 0 ? " - " : " + ";
    }
    out += to_string(Scalar(abs(c))) + " ";
    bool first = true;
    for (int i = 0; i < kDim; ++i)
      if (m & (1u << i)) {
        if (!first) out += "^";
        out += basis.at(i);
        first = false;
      }
  }
  return out;
}

StructureFile parse_structure(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::optional<int> dim;
  std::vector<std::string> basis;
  std::vector<std::optional<KForm>> de;
  Params params;
  std::optional<KForm> omega, rho;
  int omega_line = 0, rho_line = 0;

  auto ensure_basis = [&](Cursor& cur) {
    if (!dim) cur.fail("'dim' must come first");
    if (basis.empty()) basis = default_basis(*dim);
    if (de.empty()) de.resize(*dim);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Cursor cur(line, line_no);
    if (cur.done()) continue;
    const std::string keyword = cur.word();
    if (keyword == "dim") {
      if (dim) cur.fail("duplicate 'dim'");
      const Scalar n = cur.number();
      if (n != 3 && n != 6) cur.fail("dimension must be 3 or 6");
      dim = static_cast<int>(n.get_num().get_si());
    } else if (keyword == "basis") {
      if (!dim) cur.fail("'dim' must come first");
      if (!basis.empty()) cur.fail("duplicate or late 'basis'");
      while (!cur.done()) {
        std::string name = cur.word();
        if (std::find(basis.begin(), basis.end(), name) != basis.end()) cur.fail("duplicate basis name '" + name + "'");
        basis.push_back(std::move(name));
      }
      if (static_cast<int>(basis.size()) != *dim) cur.fail("basis size does not match 'dim'");
    } else if (keyword == "param") {
      const std::string name = cur.word();
      cur.expect('=');
      Scalar sign = cur.accept('-') ? -1 : 1;
      params[name] = sign * cur.number();
      if (!cur.done()) cur.fail("unexpected trailing input");
    } else if (keyword == "d") {
      ensure_basis(cur);
      const int k = basis_index(basis, cur);
      cur.expect('=');
      if (de[k]) cur.fail("duplicate differential for '" + basis[k] + "'");
      de[k] = with_line(line_no, [&] { return parse_terms(cur, basis, 2); });
    } else if (keyword == "form") {
      ensure_basis(cur);
      const std::string name = cur.word();
      cur.expect('=');
      KForm f = with_line(line_no, [&] { return parse_terms(cur, basis, -1); });
      if (name == "omega") {
        if (omega) cur.fail("duplicate form 'omega'");
        omega = std::move(f);
        omega_line = line_no;
      } else if (name == "rho") {
        if (rho) cur.fail("duplicate form 'rho'");
        rho = std::move(f);
        rho_line = line_no;
      } else {
        cur.fail("unknown form '" + name + "' (expected omega or rho)");
      }
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", line_no, 1);
    }
  }
  if (!dim) throw ParseError("missing 'dim'", line_no + 1, 1);
  if (basis.empty()) basis = default_basis(*dim);
  if (de.empty()) de.resize(*dim);
  if (omega && omega->degree() != 2)
    throw DegreeError("line " + std::to_string(omega_line) + ": omega must be a 2-form, got degree " +
                      std::to_string(omega->degree()));
  if (rho && rho->degree() != 3)
    throw DegreeError("line " + std::to_string(rho_line) + ": rho must be a 3-form, got degree " +
                      std::to_string(rho->degree()));
  std::vector<KForm> diffs;
  for (auto& f : de) diffs.push_back(f ? *f : KForm(2));
  StructureFile out{basis, LieAlgebra::from_differentials(*dim, std::move(diffs), "", params), omega, rho};
  return out;
}

StructureFile read_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str());
}

std::string emit_structure(const StructureFile& file) {
  std::ostringstream out;
  out << "dim " << file.algebra.dim() << "\n";
  out << "basis";
  for (const auto& b : file.basis) out << " " << b;
  out << "\n";
  for (const auto& [name, value] : file.algebra.params()) out << "param " << name << " = " << to_string(value) << "\n";
  for (int k = 0; k < file.algebra.dim(); ++k)
    if (!file.algebra.d_basis(k).is_zero())
      out << "d " << file.basis[k] << " = " << format_form(file.algebra.d_basis(k), file.basis) << "\n";
  if (file.omega) out << "form omega = " << format_form(*file.omega, file.basis) << "\n";
  if (file.rho) out << "form rho = " << format_form(*file.rho, file.basis) << "\n";
  return out.str();
}

}  // namespace halfflat
