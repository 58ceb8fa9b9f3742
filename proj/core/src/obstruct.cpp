#include "halfflat/obstruct.hpp"

#include <random>
#include <sstream>

#include "halfflat/classify3d.hpp"
#include "halfflat/halfflat.hpp"
#include "halfflat/stable.hpp"

namespace halfflat {

namespace {

constexpr Mask kWBits = 0b111100;

bool inside(Mask m, Mask bits) { return (m & ~bits) == 0; }

Matrix<Scalar> coframe_of(const std::vector<KForm>& rows) {
  Matrix<Scalar> a(rows.size(), 6);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [m, c] : rows[r].terms()) a(r, std::countr_zero(static_cast<unsigned>(m))) = c;
  return a;
}

// Projective sample of a candidate space: its basis, then pairwise sums and differences.
std::vector<KForm> projective_grid(const Subspace& space) {
  std::vector<KForm> out = space.basis;
  for (std::size_t i = 0; i < space.basis.size(); ++i)
    for (std::size_t j = i + 1; j < space.basis.size(); ++j) {
      out.push_back(space.basis[i] + space.basis[j]);
      out.push_back(space.basis[i] - space.basis[j]);
    }
  return out;
}

KForm shifted(const KForm& f, int by) {
  KForm out(f.degree());
  for (const auto& [m, c] : f.terms()) out.add_term(static_cast<Mask>(m << by), c);
  return out;
}

// Brings h3 + r2R or r2R + R3 (in either block order) to the order used by
// the refined tests; nullopt when the algebra is not that standard sum.
std::optional<LieAlgebra> standard_order(const LieAlgebra& lie, std::string_view first, std::string_view second) {
  const LieAlgebra want = direct_sum(catalog(first), catalog(second));
  if (lie.differentials() == want.differentials()) return lie;
  if (lie.differentials() == direct_sum(catalog(second), catalog(first)).differentials()) {
    Matrix<Scalar> swap(6, 6);
    for (int i = 0; i < 3; ++i) {
      swap(i, i + 3) = 1;
      swap(i + 3, i) = 1;
    }
    return lie.change_basis(swap);
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(ObstructionVerdict v) {
  return v == ObstructionVerdict::NoHalfFlatSU3 ? "NoHalfFlatSU3" : "Inconclusive";
}

Subspace splitting_forms(const LieAlgebra& factor) {
  if (factor.dim() != 3) throw std::invalid_argument("splitting_forms expects a three-dimensional algebra");
  Subspace out{1, {}};
  if (!is_solvable(factor)) return out;
  const Subspace z1 = closed_forms(factor, 1);
  std::vector<KForm> image;
  for (int k = 0; k < 3; ++k)
    if (!factor.d_basis(k).is_zero()) image.push_back(factor.d_basis(k));
  if (image.empty()) return z1;
  Matrix<Scalar> system(image.size(), z1.dimension());
  for (std::size_t j = 0; j < image.size(); ++j)
    for (std::size_t i = 0; i < z1.dimension(); ++i) {
      const KForm top = wedge(z1.basis[i], image[j]);
      system(j, i) = top.is_zero() ? Scalar(0) : top.terms().begin()->second;
    }
  for (const auto& t : kernel(system)) {
    KForm alpha(1);
    for (std::size_t i = 0; i < t.size(); ++i) alpha = alpha + KForm(t[i] * z1.basis[i]);
    out.basis.push_back(alpha);
  }
  return out;
}

std::vector<SplittingCandidate> coherent_splittings(const LieAlgebra& lie) {
  const auto parts = split_direct_sum(lie);
  if (!parts) throw std::invalid_argument("coherent_splittings expects a direct sum g1 + g2 in block form");
  const auto c1 = projective_grid(splitting_forms(parts->first));
  const auto c2 = projective_grid(splitting_forms(parts->second));
  std::vector<SplittingCandidate> out;
  for (const auto& a : c1)
    for (const auto& b : c2) out.emplace_back(a, shifted(b, 3));
  return out;
}

std::vector<KForm> complement(const std::vector<KForm>& v) {
  std::vector<KForm> rows = v;
  std::vector<KForm> w;
  for (int k = 0; k < 6 && rows.size() < 6; ++k) {
    KForm e(1);
    e.add_term(static_cast<Mask>(1u << k), 1);
    rows.push_back(e);
    if (rank(coframe_of(rows)) == rows.size()) {
      w.push_back(e);
    } else {
      rows.pop_back();
    }
  }
  if (rows.size() != 6) throw std::invalid_argument("V is not two-dimensional");
  return w;
}

bool is_coherent(const LieAlgebra& lie, const std::vector<KForm>& v, const std::vector<KForm>& w) {
  std::vector<KForm> rows = v;
  rows.insert(rows.end(), w.begin(), w.end());
  const LieAlgebra adapted = lie.change_basis(coframe_of(rows));
  for (int k = 0; k < 6; ++k)
    for (const auto& [m, c] : adapted.d_basis(k).terms()) {
      if (k < 2 && !inside(m, 0b11)) return false;
      if (k >= 2 && inside(m, kWBits)) return false;
    }
  return true;
}

std::pair<bool, bool> obstruction_conditions(const LieAlgebra& lie, const Matrix<Scalar>& coframe) {
  const LieAlgebra adapted = lie.change_basis(coframe);
  bool h03 = true, h04 = true;
  for (const auto& s : closed_forms(adapted, 3).basis)
    for (const auto& [m, c] : s.terms())
      if (inside(m, kWBits)) h03 = false;
  for (const auto& s : closed_forms(adapted, 4).basis)
    for (const auto& [m, c] : s.terms())
      if (m == kWBits) h04 = false;
  return {h03, h04};
}

ObstructionReport check_obstruction(const LieAlgebra& lie, const KForm& alpha1, const KForm& alpha2) {
  if (lie.dim() != 6) throw std::invalid_argument("check_obstruction expects a six-dimensional algebra");
  ObstructionReport r;
  r.v = {alpha1, alpha2};
  r.w = complement(r.v);
  r.coherent = is_coherent(lie, r.v, r.w);
  if (!r.coherent) throw std::invalid_argument("splitting is not coherent");
  std::vector<KForm> rows = r.v;
  rows.insert(rows.end(), r.w.begin(), r.w.end());
  const Matrix<Scalar> coframe = coframe_of(rows);
  const LieAlgebra adapted = lie.change_basis(coframe);
  const auto w3 = monomials(3);
  std::vector<KForm> images;
  for (Mask m : w3) {
    if (!inside(m, kWBits)) continue;
    KForm mono(3);
    mono.add_term(m, 1);
    images.push_back(adapted.d(mono));
  }
  Matrix<Scalar> img(images.size(), 15);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto coords = coordinates(images[i], 6);
    for (std::size_t j = 0; j < coords.size(); ++j) img(i, j) = coords[j];
  }
  r.rank3 = rank(img);
  KForm top(4);
  top.add_term(kWBits, 1);
  r.rank4 = adapted.d(top).is_zero() ? 0 : 1;
  std::tie(r.h03, r.h04) = obstruction_conditions(lie, coframe);
  r.verdict = r.h03 && r.h04 ? ObstructionVerdict::NoHalfFlatSU3 : ObstructionVerdict::Inconclusive;
  std::ostringstream os;
  os << "dim d(L3 W) = " << r.rank3 << ", dim d(L4 W) = " << r.rank4;
  r.detail = os.str();
  return r;
}

bool refined_h3_r2R_raw(const LieAlgebra& lie) {
  if (lie.dim() != 6) return false;
  const KForm f1 = [] {
    KForm f(1);
    f.add_term(Mask{1u << 3}, 1);
    return f;
  }();
  for (const auto& sigma : closed_forms(lie, 4).basis) {
    const KForm product = wedge(f1, sigma);
    for (const auto& [m, c] : product.terms())
      if (m != Mask{0b111011} && m != Mask{0b101111}) return false;
  }
  const auto z3 = closed_forms(lie, 3).basis;
  for (int v : {2, 4})
    for (std::size_t i = 0; i < z3.size(); ++i)
      for (std::size_t j = i; j < z3.size(); ++j) {
        const KForm polar = wedge(wedge(f1, contract_basis(v, z3[i])), z3[j]) +
                            wedge(wedge(f1, contract_basis(v, z3[j])), z3[i]);
        if (!polar.is_zero()) return false;
      }
  return true;
}

bool refined_h3_r2R(const LieAlgebra& lie) {
  if (lie.differentials() != direct_sum(catalog("h3"), catalog("r2R")).differentials())
    throw std::invalid_argument("refined_h3_r2R expects h3 + r2 + R in the standard basis");
  return refined_h3_r2R_raw(lie);
}

bool refined_r2R_R3_raw(const LieAlgebra& lie, std::uint64_t seed, int samples) {
  if (lie.dim() != 6) return false;
  if (closed_forms(lie, 1).dimension() != 5) return false;
  auto e2_image_is_multiple = [](const Matrix<Scalar>& k) {
    for (int r = 0; r < 6; ++r)
      if (r != 1 && !is_zero(k(r, 1))) return false;
    return true;
  };
  const auto z3 = closed_forms(lie, 3).basis;
  std::vector<Matrix<Scalar>> ks;
  for (const auto& rho : z3) ks.push_back(k_matrix(rho));
  for (std::size_t i = 0; i < z3.size(); ++i) {
    if (!e2_image_is_multiple(ks[i])) return false;
    for (std::size_t j = i + 1; j < z3.size(); ++j)
      if (!e2_image_is_multiple(k_matrix(z3[i] + z3[j]) - ks[i] - ks[j])) return false;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-10, 10);
  for (int s = 0; s < samples; ++s) {
    KForm rho(3);
    for (const auto& b : z3) rho = rho + KForm(Scalar(coeff(rng)) * b);
    if (!e2_image_is_multiple(k_matrix(rho))) return false;
  }
  return true;
}

bool refined_r2R_R3(const LieAlgebra& lie, std::uint64_t seed, int samples) {
  if (lie.differentials() != direct_sum(catalog("r2R"), catalog("R3")).differentials())
    throw std::invalid_argument("refined_r2R_R3 expects r2 + R + R^3 in the standard basis");
  return refined_r2R_R3_raw(lie, seed, samples);
}

bool v_is_j_invariant(const KForm& rho, const std::vector<KForm>& v) {
  const auto ann = kernel(coframe_of(v));
  for (const auto& alpha : v)
    for (const auto& x : ann) {
      Vector vec;
      for (int i = 0; i < 6; ++i) vec[i] = x[i];
      if (!wedge(wedge(alpha, contract(vec, rho)), rho).is_zero()) return false;
    }
  return true;
}

ObstructionReport obstruct(const LieAlgebra& lie) {
  const auto parts = split_direct_sum(lie);
  if (!parts) throw std::invalid_argument("obstruct expects a direct sum g1 + g2 in block form");
  std::optional<ObstructionReport> first;
  for (const auto& [a, b] : coherent_splittings(lie)) {
    ObstructionReport r;
    try {
      r = check_obstruction(lie, a, b);
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (r.verdict == ObstructionVerdict::NoHalfFlatSU3) return r;
    if (!first) first = r;
  }
  ObstructionReport out = first.value_or(ObstructionReport{});
  if (!first) out.detail = "no coherent splitting with dim V = 2 (a summand is not solvable)";
  if (auto ordered = standard_order(lie, "h3", "r2R"); ordered && refined_h3_r2R_raw(*ordered)) {
    out.verdict = ObstructionVerdict::NoHalfFlatSU3;
    out.refined = "h3+r2R";
    out.detail = "f^1 is isotropic for every half-flat structure (refined test on Z^3, Z^4)";
  } else if (auto ordered = standard_order(lie, "r2R", "R3"); ordered && refined_r2R_R3_raw(*ordered)) {
    out.verdict = ObstructionVerdict::NoHalfFlatSU3;
    out.refined = "r2R+R3";
    out.detail = "K_rho(e_2) is a multiple of e_2 for every closed rho, so lambda >= 0";
  }
  return out;
}

LambdaScan lambda_nonneg_scan(const LieAlgebra& lie, int samples, std::uint64_t seed) {
  LambdaScan scan;
  scan.seed = seed;
  const auto z3 = closed_forms(lie, 3).basis;
  scan.closed_dimension = z3.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> den_dist(1, 4);
  for (int s = 0; s < samples; ++s) {
    KForm rho(3);
    for (const auto& b : z3) {
      const int den = den_dist(rng);
      std::uniform_int_distribution<int> num_dist(-10 * den, 10 * den);
      rho = rho + KForm(rational(num_dist(rng), den) * b);
    }
    const Scalar lambda = lambda_of(rho);
    ++scan.samples;
    if (!scan.min_lambda || lambda < *scan.min_lambda) scan.min_lambda = lambda;
    if (lambda < 0) {
      if (!scan.negative_witness) scan.negative_witness = rho;
      ++scan.negative;
    }
  }
  return scan;
}

bool subspace_defeated(const LieAlgebra& lie, const Matrix<Scalar>& coframe) {
  auto [h03, h04] = obstruction_conditions(lie, coframe);
  return !h03 || !h04;
}

bool unimodular_no_splitting(const LieAlgebra& lie, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  int done = 0;
  while (done < samples) {
    Matrix<Scalar> a(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) a(i, j) = entry(rng);
    if (is_zero(determinant(a))) continue;
    ++done;
    if (!subspace_defeated(lie, a)) return false;
  }
  return true;
}

}  // namespace halfflat
