#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "halfflat/exterior.hpp"
#include "halfflat/linalg.hpp"

namespace halfflat {

/// Raised for structure constants that violate the Jacobi identity or are
/// otherwise not a Lie algebra.
class InvalidLieAlgebra : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Params = std::map<std::string, Scalar>;

/// A Lie algebra of dimension 3 or 6 given by its Chevalley-Eilenberg
/// differential on one-forms, d e^k = sum_{i<j} c_ij^k e^{ij}. The bracket is
/// recovered from d alpha(X, Y) = -alpha([X, Y]).
class LieAlgebra {
 public:
  /// Validated construction; throws InvalidLieAlgebra unless d^2 = 0.
  static LieAlgebra from_differentials(int dim, std::vector<KForm> de, std::string name = {}, Params params = {});
  /// Construction without the Jacobi check, for negative testing.
  static LieAlgebra unchecked(int dim, std::vector<KForm> de, std::string name = {}, Params params = {});

  int dim() const { return dim_; }
  bool is_valid() const { return valid_; }
  const std::string& name() const { return name_; }
  const Params& params() const { return params_; }

  /// c_ij^k, antisymmetric in (i, j); indices are zero-based.
  Scalar structure_constant(int i, int j, int k) const;
  /// d e^k.
  const KForm& d_basis(int k) const { return de_.at(k); }
  const std::vector<KForm>& differentials() const { return de_; }

  /// Exterior derivative on Lambda^* g^*, extended as an antiderivation.
  template <class F>
  BasicForm<F> d(const BasicForm<F>& a) const;

  /// [X, Y] on vectors.
  Vector bracket(const Vector& x, const Vector& y) const;

  /// The same algebra in the coframe eps^i = sum_j A_ij e^j (A invertible).
  LieAlgebra change_basis(const Matrix<Scalar>& a) const;

 private:
  LieAlgebra(int dim, std::vector<KForm> de, std::string name, Params params);

  int dim_;
  bool valid_ = false;
  std::vector<KForm> de_;
  std::string name_;
  Params params_;
  // d of every monomial with indices below dim, indexed by mask.
  std::vector<std::vector<std::pair<Mask, Scalar>>> d_monomial_;
};

template <class F>
BasicForm<F> LieAlgebra::d(const BasicForm<F>& a) const {
  if (a.degree() == kDim) return BasicForm<F>(kDim);
  BasicForm<F> out(a.degree() + 1);
  for (const auto& [m, c] : a.terms()) {
    if (m >= (1u << dim_)) throw std::invalid_argument("form uses indices outside the Lie algebra");
    for (const auto& [m2, c2] : d_monomial_[m]) out.add_term(m2, c * F(c2));
  }
  return out;
}

bool check_jacobi(const LieAlgebra& lie);
/// Trace condition sum_k c_{k,m}^k = 0 for every m.
bool is_unimodular(const LieAlgebra& lie);
/// Unimodularity through the closedness of all (n-1)-forms.
bool all_codegree_one_forms_closed(const LieAlgebra& lie);
bool is_abelian(const LieAlgebra& lie);
bool is_solvable(const LieAlgebra& lie);
/// tr(ad_X) as a linear functional, listed on the basis vectors.
std::vector<Scalar> trace_form(const LieAlgebra& lie);

/// Basis order e_1, e_2, e_3, f_1, f_2, f_3; no mixed brackets.
LieAlgebra direct_sum(const LieAlgebra& g1, const LieAlgebra& g2);

/// Matrix of d : Lambda^k -> Lambda^{k+1} in the monomial bases of
/// monomials(k, dim) (columns) and monomials(k+1, dim) (rows).
Matrix<Scalar> d_matrix(const LieAlgebra& lie, int k);

/// A linear subspace of Lambda^k g^* given by an independent basis.
struct Subspace {
  int degree = 0;
  std::vector<KForm> basis;
  std::size_t dimension() const { return basis.size(); }
};

/// Kernel of d on Lambda^k (exact Gaussian elimination).
Subspace closed_forms(const LieAlgebra& lie, int k);

/// Coordinates of forms in the monomial basis of monomials(k, dim).
std::vector<Scalar> coordinates(const KForm& form, int dim);
KForm form_from_coordinates(const std::vector<Scalar>& coords, int degree, int dim);

// ---------------------------------------------------------------------------
// Catalog of the standard three-dimensional brackets.

struct CatalogEntry {
  std::string tag;       // input name, e.g. "e11"
  std::string display;   // e.g. "e(1,1)"
  std::string bianchi;   // e.g. "VI_0"
  bool unimodular;
  bool parametric;
};

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(std::string_view tag);

/// Standard bracket of a named class. Parametric families take mu:
/// r3mu for -1 < mu <= 1, mu != 0 ("r31" is r3mu at mu = 1) and r3pmu for
/// mu > 0. Throws std::invalid_argument for unknown names or illegal mu.
LieAlgebra catalog(std::string_view tag, std::optional<Scalar> mu = std::nullopt);

/// Legal values of the default mu sample set {+-1/4, +-1/2, +-3/4, 1, 2}.
std::vector<Scalar> sample_mus(std::string_view tag);

}  // namespace halfflat
