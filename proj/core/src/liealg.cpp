#include "halfflat/liealg.hpp"

#include <algorithm>
#include <bit>

namespace halfflat {

namespace {

Mask bit(int i) { return static_cast<Mask>(1u << i); }
Mask pair_mask(int i, int j) { return static_cast<Mask>((1u << i) | (1u << j)); }

// d e^k from a raw table of two-form terms, written e^{ij} with signs normalized.
KForm two_form(std::initializer_list<std::tuple<int, int, Scalar>> terms) {
  KForm out(2);
  for (const auto& [i, j, c] : terms) {
    int s = wedge_sign(bit(i), bit(j));
    out.add_term(pair_mask(i, j), s > 0 ? c : Scalar(-c));
  }
  return out;
}

}  // namespace

LieAlgebra::LieAlgebra(int dim, std::vector<KForm> de, std::string name, Params params)
    : dim_(dim), de_(std::move(de)), name_(std::move(name)), params_(std::move(params)) {
  if (dim_ != 3 && dim_ != 6) throw InvalidLieAlgebra("Lie algebra dimension must be 3 or 6");
  if (static_cast<int>(de_.size()) != dim_) throw InvalidLieAlgebra("expected one differential per basis one-form");
  const unsigned limit = 1u << dim_;
  for (const auto& f : de_) {
    if (f.degree() != 2) throw InvalidLieAlgebra("differential of a one-form must be a two-form");
    for (const auto& [m, c] : f.terms())
      if (m >= limit) throw InvalidLieAlgebra("differential uses indices outside the algebra");
  }
  // d(e^i ^ e^R) = d e^i ^ e^R - e^i ^ d e^R with i the lowest index.
  std::vector<KForm> images(limit);
  images[0] = KForm(1);
  for (unsigned m = 1; m < limit; ++m) {
    const int deg = std::popcount(m);
    if (deg == kDim) {
      images[m] = KForm(kDim);
      continue;
    }
    const int low = std::countr_zero(m);
    const Mask rest = static_cast<Mask>(m & (m - 1));
    KForm rest_form = KForm::monomial(rest);
    KForm img = wedge(de_[low], rest_form);
    if (rest != 0) img -= wedge(KForm::monomial(bit(low)), images[rest]);
    images[m] = std::move(img);
  }
  d_monomial_.resize(limit);
  for (unsigned m = 1; m < limit; ++m)
    for (const auto& [m2, c] : images[m].terms()) d_monomial_[m].emplace_back(m2, c);
}

LieAlgebra LieAlgebra::unchecked(int dim, std::vector<KForm> de, std::string name, Params params) {
  LieAlgebra lie(dim, std::move(de), std::move(name), std::move(params));
  lie.valid_ = false;
  return lie;
}

LieAlgebra LieAlgebra::from_differentials(int dim, std::vector<KForm> de, std::string name, Params params) {
  LieAlgebra lie(dim, std::move(de), std::move(name), std::move(params));
  if (!check_jacobi(lie)) throw InvalidLieAlgebra("structure constants violate the Jacobi identity (d^2 != 0)");
  lie.valid_ = true;
  return lie;
}

Scalar LieAlgebra::structure_constant(int i, int j, int k) const {
  if (i == j) return 0;
  Scalar c = de_.at(k).coefficient(pair_mask(i, j));
  return i < j ? c : Scalar(-c);
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  Vector out;
  out.fill(0);
  for (int k = 0; k < dim_; ++k) out[k] = -evaluate2(de_[k], x, y);
  return out;
}

LieAlgebra LieAlgebra::change_basis(const Matrix<Scalar>& a) const {
  if (a.rows() != static_cast<std::size_t>(dim_) || a.cols() != a.rows())
    throw std::invalid_argument("basis change matrix has the wrong shape");
  const Matrix<Scalar> inv = inverse(a);
  // e^j = sum_l inv_jl eps^l, padded to the ambient six-dimensional space.
  Matrix<Scalar> back = Matrix<Scalar>::identity(kDim);
  for (int j = 0; j < dim_; ++j)
    for (int l = 0; l < dim_; ++l) back(j, l) = inv(j, l);
  std::vector<KForm> de(dim_, KForm(2));
  for (int i = 0; i < dim_; ++i) {
    KForm acc(2);
    for (int j = 0; j < dim_; ++j)
      if (!is_zero(a(i, j))) acc += a(i, j) * de_[j];
    de[i] = substitute(acc, back);
  }
  if (valid_) return from_differentials(dim_, std::move(de), name_, params_);
  return unchecked(dim_, std::move(de), name_, params_);
}

bool check_jacobi(const LieAlgebra& lie) {
  for (int k = 0; k < lie.dim(); ++k)
    if (!lie.d(lie.d_basis(k)).is_zero()) return false;
  return true;
}

std::vector<Scalar> trace_form(const LieAlgebra& lie) {
  std::vector<Scalar> t(lie.dim(), Scalar(0));
  for (int m = 0; m < lie.dim(); ++m)
    for (int k = 0; k < lie.dim(); ++k) t[m] += lie.structure_constant(k, m, k);
  return t;
}

bool is_unimodular(const LieAlgebra& lie) {
  const auto t = trace_form(lie);
  return std::all_of(t.begin(), t.end(), [](const Scalar& x) { return is_zero(x); });
}

bool all_codegree_one_forms_closed(const LieAlgebra& lie) {
  for (Mask m : monomials(lie.dim() - 1, lie.dim()))
    if (!lie.d(KForm::monomial(m)).is_zero()) return false;
  return true;
}

bool is_abelian(const LieAlgebra& lie) {
  for (const auto& f : lie.differentials())
    if (!f.is_zero()) return false;
  return true;
}

bool is_solvable(const LieAlgebra& lie) {
  const int n = lie.dim();
  std::vector<Vector> span;
  for (int i = 0; i < n; ++i) span.push_back(basis_vector<Scalar>(i));
  while (!span.empty()) {
    std::vector<Vector> brackets;
    for (std::size_t i = 0; i < span.size(); ++i)
      for (std::size_t j = i + 1; j < span.size(); ++j) brackets.push_back(lie.bracket(span[i], span[j]));
    Matrix<Scalar> m(brackets.size(), n);
    for (std::size_t r = 0; r < brackets.size(); ++r)
      for (int c = 0; c < n; ++c) m(r, c) = brackets[r][c];
    const auto pivots = row_reduce(m);
    if (pivots.size() == span.size()) return false;
    std::vector<Vector> next;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      Vector v;
      v.fill(0);
      for (int c = 0; c < n; ++c) v[c] = m(r, c);
      next.push_back(v);
    }
    span = std::move(next);
  }
  return true;
}

LieAlgebra direct_sum(const LieAlgebra& g1, const LieAlgebra& g2) {
  if (g1.dim() != 3 || g2.dim() != 3) throw std::invalid_argument("direct sum expects two three-dimensional algebras");
  std::vector<KForm> de;
  for (int k = 0; k < 3; ++k) de.push_back(g1.d_basis(k));
  for (int k = 0; k < 3; ++k) {
    KForm shifted(2);
    for (const auto& [m, c] : g2.d_basis(k).terms()) shifted.add_term(static_cast<Mask>(m << 3), c);
    de.push_back(shifted);
  }
  std::string name;
  if (!g1.name().empty() || !g2.name().empty()) name = g1.name() + "+" + g2.name();
  Params params;
  for (const auto& [k, v] : g1.params()) params[k + "1"] = v;
  for (const auto& [k, v] : g2.params()) params[k + "2"] = v;
  if (g1.is_valid() && g2.is_valid()) return LieAlgebra::from_differentials(6, std::move(de), name, params);
  return LieAlgebra::unchecked(6, std::move(de), name, params);
}

Matrix<Scalar> d_matrix(const LieAlgebra& lie, int k) {
  const int n = lie.dim();
  const auto cols = monomials(k, n);
  const auto rows = k + 1 <= n ? monomials(k + 1, n) : std::vector<Mask>{};
  Matrix<Scalar> m(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const KForm img = lie.d(KForm::monomial(cols[c]));
    for (const auto& [mask, coeff] : img.terms()) {
      auto it = std::lower_bound(rows.begin(), rows.end(), mask);
      m(static_cast<std::size_t>(it - rows.begin()), c) = coeff;
    }
  }
  return m;
}

std::vector<Scalar> coordinates(const KForm& form, int dim) {
  const auto basis = monomials(form.degree(), dim);
  std::vector<Scalar> out(basis.size(), Scalar(0));
  for (const auto& [m, c] : form.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m) throw std::invalid_argument("form uses indices outside the given dimension");
    out[static_cast<std::size_t>(it - basis.begin())] = c;
  }
  return out;
}

KForm form_from_coordinates(const std::vector<Scalar>& coords, int degree, int dim) {
  const auto basis = monomials(degree, dim);
  if (coords.size() != basis.size()) throw std::invalid_argument("coordinate vector has the wrong length");
  KForm out(degree);
  for (std::size_t i = 0; i < basis.size(); ++i) out.add_term(basis[i], coords[i]);
  return out;
}

Subspace closed_forms(const LieAlgebra& lie, int k) {
  Subspace out;
  out.degree = k;
  const int n = lie.dim();
  if (k == n) {
    out.basis.push_back(KForm::monomial(static_cast<Mask>((1u << n) - 1)));
    return out;
  }
  for (const auto& v : kernel(d_matrix(lie, k))) out.basis.push_back(form_from_coordinates(v, k, n));
  return out;
}

// ---------------------------------------------------------------------------

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"su2", "su(2)", "IX", true, false},     {"sl2", "sl(2,R)", "VIII", true, false},
      {"e2", "e(2)", "VII_0", true, false},    {"e11", "e(1,1)", "VI_0", true, false},
      {"h3", "h3", "II", true, false},         {"R3", "R^3", "I", true, false},
      {"r2R", "r2+R", "III", false, false},    {"r3", "r3", "IV", false, false},
      {"r31", "r3,1", "V", false, false},      {"r3mu", "r3,mu", "VI", false, true},
      {"r3pmu", "r'3,mu", "VII", false, true},
  };
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view tag) {
  for (const auto& e : catalog_entries())
    if (e.tag == tag) return e;
  throw std::invalid_argument("unknown Lie algebra name: " + std::string(tag));
}

LieAlgebra catalog(std::string_view tag, std::optional<Scalar> mu) {
  const CatalogEntry& entry = catalog_entry(tag);
  if (entry.parametric && !mu) throw std::invalid_argument(entry.tag + " requires a parameter mu");
  if (!entry.parametric && mu) throw std::invalid_argument(entry.tag + " takes no parameter");
  // Zero-based indices: e^1 -> 0, e^2 -> 1, e^3 -> 2.
  const Scalar one(1);
  std::vector<KForm> de(3, KForm(2));
  std::string name = entry.tag;
  Params params;
  if (tag == "su2") {
    de = {two_form({{1, 2, one}}), two_form({{2, 0, one}}), two_form({{0, 1, one}})};
  } else if (tag == "sl2") {
    de = {two_form({{1, 2, one}}), two_form({{2, 0, one}}), two_form({{1, 0, one}})};
  } else if (tag == "e2") {
    de[1] = two_form({{2, 0, one}});
    de[2] = two_form({{0, 1, one}});
  } else if (tag == "e11") {
    de[1] = two_form({{2, 0, one}});
    de[2] = two_form({{1, 0, one}});
  } else if (tag == "h3") {
    de[2] = two_form({{0, 1, one}});
  } else if (tag == "r2R") {
    de[1] = two_form({{1, 0, one}});
  } else if (tag == "r3") {
    de[1] = two_form({{1, 0, one}, {2, 0, one}});
    de[2] = two_form({{2, 0, one}});
  } else if (tag == "r31") {
    de[1] = two_form({{1, 0, one}});
    de[2] = two_form({{2, 0, one}});
  } else if (tag == "r3mu") {
    const Scalar& m = *mu;
    if (!(m > -1 && m <= 1) || is_zero(m)) throw std::invalid_argument("r3mu needs -1 < mu <= 1 and mu != 0");
    de[1] = two_form({{1, 0, one}});
    de[2] = two_form({{2, 0, m}});
    if (m == 1) {
      name = "r31";
    } else {
      params["mu"] = m;
    }
  } else if (tag == "r3pmu") {
    const Scalar& m = *mu;
    if (!(m > 0)) throw std::invalid_argument("r3pmu needs mu > 0");
    de[1] = two_form({{1, 0, m}, {0, 2, one}});
    de[2] = two_form({{1, 0, one}, {2, 0, m}});
    params["mu"] = m;
  }
  return LieAlgebra::from_differentials(3, std::move(de), name, params);
}

std::vector<Scalar> sample_mus(std::string_view tag) {
  static const std::vector<Scalar> samples = {rational(-3, 4), rational(-1, 2), rational(-1, 4), rational(1, 4),
                                              rational(1, 2),  rational(3, 4),  rational(1),     rational(2)};
  std::vector<Scalar> out;
  for (const auto& m : samples) {
    if (tag == "r3mu" && m > -1 && m <= 1) out.push_back(m);
    if (tag == "r3pmu" && m > 0) out.push_back(m);
  }
  return out;
}

}  // namespace halfflat
