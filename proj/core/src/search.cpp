#include "halfflat/search.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/AutoDiff>
#include <unsupported/Eigen/NonLinearOptimization>

#include <algorithm>
#include <cmath>
#include <random>

#include "halfflat/halfflat.hpp"

namespace halfflat {

namespace {

using Derivatives = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 48, 1>;
using Dual = Eigen::AutoDiffScalar<Derivatives>;

double value_of(double x) { return x; }
double value_of(const Dual& x) { return x.value(); }

template <class T>
T hinge(const T& x, const T& zero) {
  return value_of(x) > 0 ? x : zero;
}

struct Entry {
  int a, b, out, sign;
};

// Sparse multiplication tables over the monomial bases.
struct Tables {
  std::vector<Mask> m2 = monomials(2), m3 = monomials(3), m4 = monomials(4), m5 = monomials(5);
  std::vector<Entry> w22, w23, w42;  // (a, b) -> out with sign
  std::vector<Entry> k_terms;        // K(kappa, j) += sign rho_a rho_b, packed out = 6 * k + j
  std::vector<std::pair<int, int>> pair_of;

  static int index_of(const std::vector<Mask>& list, Mask m) {
    return static_cast<int>(std::find(list.begin(), list.end(), m) - list.begin());
  }

  Tables() {
    auto product = [](const std::vector<Mask>& la, const std::vector<Mask>& lb, const std::vector<Mask>& lo,
                      std::vector<Entry>& out) {
      for (int a = 0; a < static_cast<int>(la.size()); ++a)
        for (int b = 0; b < static_cast<int>(lb.size()); ++b)
          if (int s = wedge_sign(la[a], lb[b])) out.push_back({a, b, index_of(lo, la[a] | lb[b]), s});
    };
    product(m2, m2, m4, w22);
    product(m2, m3, m5, w23);
    const std::vector<Mask> top{kVolumeMask};
    product(m4, m2, top, w42);
    for (int a = 0; a < 20; ++a)
      for (int j = 0; j < kDim; ++j) {
        const int cs = contract_sign(j, m3[a]);
        if (!cs) continue;
        const Mask rest = m3[a] & ~(1u << j);
        for (int b = 0; b < 20; ++b) {
          const int ws = wedge_sign(rest, m3[b]);
          if (!ws) continue;
          const Mask five = rest | m3[b];
          const int k = std::countr_zero(static_cast<unsigned>(~five & kVolumeMask));
          const int ks = (k & 1) ? -1 : 1;
          k_terms.push_back({a, b, 6 * k + j, cs * ws * ks});
        }
      }
    for (Mask m : m2) {
      const int i = std::countr_zero(static_cast<unsigned>(m));
      const int j = 31 - std::countl_zero(static_cast<unsigned>(m));
      pair_of.emplace_back(i, j);
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

// Float invariants generic over double and Dual.
template <class T>
struct Invariants {
  std::vector<T> k;  // 36, row-major
  T lambda;
  T phi;
  std::vector<T> omega_matrix;  // 36
};

template <class T>
Invariants<T> invariants(const std::vector<T>& omega, const std::vector<T>& rho, const T& zero) {
  const Tables& tab = tables();
  Invariants<T> out{std::vector<T>(36, zero), zero, zero, std::vector<T>(36, zero)};
  for (const auto& e : tab.k_terms) out.k[e.out] += double(e.sign) * rho[e.a] * rho[e.b];
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out.lambda += out.k[6 * i + j] * out.k[6 * j + i];
  out.lambda /= 6.0;
  std::vector<T> omega2(15, zero);
  for (const auto& e : tab.w22) omega2[e.out] += double(e.sign) * omega[e.a] * omega[e.b];
  for (const auto& e : tab.w42) out.phi += double(e.sign) * omega2[e.a] * omega[e.b];
  out.phi /= 6.0;
  for (int p = 0; p < 15; ++p) {
    const auto [i, j] = tab.pair_of[p];
    out.omega_matrix[6 * i + j] = omega[p];
    out.omega_matrix[6 * j + i] = -omega[p];
  }
  return out;
}

template <class T>
std::vector<T> metric_of(const Invariants<T>& inv, const T& zero) {
  const int eps = value_of(inv.lambda) < 0 ? -1 : 1;
  const int s = value_of(inv.phi) < 0 ? -1 : 1;
  std::vector<T> g(36, zero);
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v) {
      T acc = zero;
      for (int r = 0; r < 6; ++r) acc += inv.omega_matrix[6 * u + r] * inv.k[6 * r + v];
      g[6 * u + v] = double(eps * s) * acc;
    }
  return g;
}

std::vector<std::pair<int, int>> signature_options(StructureKind target) {
  switch (target) {
    case StructureKind::SU3: return {{0, 6}, {6, 0}};
    case StructureKind::SU12:
    case StructureKind::SU21: return {{4, 2}, {2, 4}};
    case StructureKind::SL3R: return {{3, 3}};
    default: throw std::invalid_argument("search target must be SU(3), SU(1,2) or SL(3,R)");
  }
}

bool kind_matches(StructureKind target, StructureKind got) {
  if (target == StructureKind::SU12 || target == StructureKind::SU21)
    return got == StructureKind::SU12 || got == StructureKind::SU21;
  return target == got;
}

std::vector<double> to_double(const std::vector<Scalar>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

std::vector<std::vector<double>> to_double(const Matrix<Scalar>& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_d();
  return out;
}

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> mat_vec(const std::vector<std::vector<double>>& m, const std::vector<double>& v) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

// Adapter for the MINPACK-style Levenberg-Marquardt driver.
struct LmFunctor {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const PenaltyModel* model;
  int inputs() const { return model->parameters(); }
  int values() const { return model->residual_count(); }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const auto r = model->residuals(std::vector<double>(x.data(), x.data() + x.size()));
    f = Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
    return 0;
  }
  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& jac) const {
    const auto j = model->jacobian(std::vector<double>(x.data(), x.data() + x.size()));
    jac = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        j.data(), values(), inputs());
    return 0;
  }
};

}  // namespace

FloatInvariants float_invariants(const std::vector<double>& omega, const std::vector<double>& rho) {
  const auto inv = invariants(omega, rho, 0.0);
  return {inv.k, inv.lambda, inv.phi, metric_of(inv, 0.0)};
}

PenaltyModel::PenaltyModel(const LieAlgebra& lie, StructureKind target, double hinge_target)
    : lie_(lie), target_(target), margin_(hinge_target) {
  if (lie.dim() != 6) throw std::invalid_argument("search expects a six-dimensional Lie algebra");
  signature_options(target);
  for (const auto& z : closed_forms(lie, 3).basis) closed_basis_.push_back(to_double(coordinates(z, 6)));
  d4_ = to_double(d_matrix(lie, 4));
}

int PenaltyModel::residual_count() const {
  // The driver needs at least as many residuals as parameters; extra rows stay zero.
  return std::max(21, parameters());
}

std::vector<double> PenaltyModel::rho_coordinates(const std::vector<double>& x) const {
  std::vector<double> rho(20, 0.0);
  for (std::size_t b = 0; b < closed_basis_.size(); ++b)
    for (int c = 0; c < 20; ++c) rho[c] += x[15 + b] * closed_basis_[b][c];
  return rho;
}

template <class T>
std::vector<T> PenaltyModel::evaluate(const std::vector<T>& x) const {
  const Tables& tab = tables();
  const T zero = x[0] * 0.0;
  std::vector<T> omega(x.begin(), x.begin() + 15);
  std::vector<T> rho(20, zero);
  for (std::size_t b = 0; b < closed_basis_.size(); ++b)
    for (int c = 0; c < 20; ++c)
      if (closed_basis_[b][c] != 0) rho[c] += closed_basis_[b][c] * x[15 + b];

  std::vector<T> out;
  out.reserve(residual_count());
  std::vector<T> omega2(15, zero);
  for (const auto& e : tab.w22) omega2[e.out] += double(e.sign) * omega[e.a] * omega[e.b];
  for (const auto& row : d4_) {
    T acc = zero;
    for (int c = 0; c < 15; ++c)
      if (row[c] != 0) acc += row[c] * omega2[c];
    out.push_back(acc);
  }
  std::vector<T> wr(6, zero);
  for (const auto& e : tab.w23) wr[e.out] += double(e.sign) * omega[e.a] * rho[e.b];
  out.insert(out.end(), wr.begin(), wr.end());

  T omega_sq = zero, rho_sq = zero;
  for (const auto& w : omega) omega_sq += w * w;
  for (const auto& r : rho) rho_sq += r * r;
  out.push_back(omega_sq - 1.0);
  out.push_back(rho_sq - 1.0);

  const auto inv = invariants(omega, rho, zero);
  out.push_back(target_ == StructureKind::SL3R ? hinge(T(margin_ - inv.lambda), zero)
                                               : hinge(T(inv.lambda + margin_), zero));

  const auto g = metric_of(inv, zero);
  Eigen::Matrix<double, 6, 6> sym;
  T frob_sq = zero;
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v) {
      sym(u, v) = 0.5 * (value_of(g[6 * u + v]) + value_of(g[6 * v + u]));
      frob_sq += g[6 * u + v] * g[6 * u + v];
    }
  const double frob = std::sqrt(value_of(frob_sq));
  if (frob < 1e-300) {
    for (int i = 0; i < 6; ++i) out.push_back(zero + 1.0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> eig(sym);
    const T inv_frob = T(1.0) / sqrt(frob_sq);
    // sigma_i = v_i^T S v_i has the eigenvalue derivative at a simple eigenvalue.
    std::vector<T> sigma;
    for (int i = 0; i < 6; ++i) {
      const auto vec = eig.eigenvectors().col(i);
      T acc = zero;
      for (int u = 0; u < 6; ++u)
        for (int v = 0; v < 6; ++v) acc += (vec(u) * vec(v)) * g[6 * u + v];
      sigma.push_back(acc * inv_frob);
    }
    std::vector<T> best;
    double best_cost = 0;
    for (const auto& [neg, pos] : signature_options(target_)) {
      (void)pos;
      std::vector<T> r;
      double cost = 0;
      for (int i = 0; i < 6; ++i) {
        r.push_back(i < neg ? hinge(T(sigma[i] + margin_), zero) : hinge(T(margin_ - sigma[i]), zero));
        cost += value_of(r.back()) * value_of(r.back());
      }
      if (best.empty() || cost < best_cost) {
        best = std::move(r);
        best_cost = cost;
      }
    }
    out.insert(out.end(), best.begin(), best.end());
  }
  while (static_cast<int>(out.size()) < residual_count()) out.push_back(zero);
  return out;
}

std::vector<double> PenaltyModel::residuals(const std::vector<double>& x) const { return evaluate(x); }

std::vector<double> PenaltyModel::jacobian(const std::vector<double>& x) const {
  const int n = parameters();
  std::vector<Dual> xd;
  for (int i = 0; i < n; ++i) xd.emplace_back(x[i], n, i);
  const auto r = evaluate(xd);
  std::vector<double> jac(static_cast<std::size_t>(residual_count()) * n, 0.0);
  for (int i = 0; i < residual_count(); ++i) {
    const auto& der = r[i].derivatives();
    for (int j = 0; j < der.size() && j < n; ++j) jac[static_cast<std::size_t>(i) * n + j] = der(j);
  }
  return jac;
}

double PenaltyModel::penalty(const std::vector<double>& x) const {
  double p = 0;
  for (double r : residuals(x)) p += r * r;
  return p;
}

std::vector<double> PenaltyModel::gradient(const std::vector<double>& x) const {
  const int n = parameters();
  const auto r = residuals(x);
  const auto jac = jacobian(x);
  std::vector<double> g(n, 0.0);
  for (int i = 0; i < residual_count(); ++i)
    for (int j = 0; j < n; ++j) g[j] += 2.0 * r[i] * jac[static_cast<std::size_t>(i) * n + j];
  return g;
}

SearchResult find_halfflat(const LieAlgebra& lie, StructureKind target, const SearchOptions& opts) {
  const PenaltyModel model(lie, target, opts.hinge_target);
  const auto d3 = to_double(d_matrix(lie, 3));
  const auto d4 = to_double(d_matrix(lie, 4));
  const int n = model.parameters();
  SearchResult result;
  result.target = target;
  result.seed = opts.seed;

  for (int restart = 0; restart < opts.restarts; ++restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = normal(rng);

    LmFunctor functor{&model};
    Eigen::LevenbergMarquardt<LmFunctor> lm(functor);
    lm.parameters.maxfev = opts.max_evaluations;
    lm.parameters.ftol = 1e-14;
    lm.parameters.xtol = 1e-14;
    lm.minimize(x);
    result.restarts_used = restart + 1;

    const std::vector<double> xs(x.data(), x.data() + n);
    std::vector<double> omega(xs.begin(), xs.begin() + 15);
    std::vector<double> rho = model.rho_coordinates(xs);
    const auto inv = float_invariants(omega, rho);
    if (inv.lambda == 0 || inv.phi_omega == 0) continue;
    // Normalize |lambda(c rho)| = 4 phi(omega)^2.
    const double c = std::pow(4 * inv.phi_omega * inv.phi_omega / std::abs(inv.lambda), 0.25);
    for (auto& r : rho) r *= c;

    std::vector<double> omega2(15, 0.0), wr(6, 0.0);
    for (const auto& e : tables().w22) omega2[e.out] += e.sign * omega[e.a] * omega[e.b];
    for (const auto& e : tables().w23) wr[e.out] += e.sign * omega[e.a] * rho[e.b];
    const auto scaled = float_invariants(omega, rho);
    Eigen::Matrix<double, 6, 6> g;
    for (int u = 0; u < 6; ++u)
      for (int v = 0; v < 6; ++v) g(u, v) = 0.5 * (scaled.g_raw[6 * u + v] + scaled.g_raw[6 * v + u]);
    const Eigen::VectorXd sigma = Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>>(g).eigenvalues() / g.norm();

    Inertia sig;
    double min_abs = INFINITY;
    for (int i = 0; i < 6; ++i) {
      (sigma(i) > 0 ? sig.positive : sig.negative) += 1;
      min_abs = std::min(min_abs, std::abs(sigma(i)));
    }
    const StructureType kind = classify_structure(scaled.lambda < 0 ? -1 : 1, sig);

    SearchResiduals res{norm(mat_vec(d3, rho)), norm(mat_vec(d4, omega2)), norm(wr), scaled.lambda, min_abs};
    const bool ok = res.d_rho < opts.tol && res.d_omega2 < opts.tol && res.omega_rho < opts.tol &&
                    min_abs > opts.margin && kind_matches(target, kind.kind);
    if (ok || restart == 0 || model.penalty(xs) < result.penalty) {
      result.omega = omega;
      result.rho = rho;
      result.residuals = res;
      result.penalty = model.penalty(xs);
    }
    if (ok) {
      result.found = true;
      return result;
    }
  }
  return result;
}

Scalar best_rational(double x, long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  if (max_den < 1) throw std::invalid_argument("max_den must be positive");
  // Convergents p/q of the continued fraction, then the best semiconvergent.
  const bool negative = x < 0;
  double y = std::abs(x);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = y;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(r);
    if (a_d > 1e15) break;
    const long a = static_cast<long>(a_d);
    const long q2 = q0 + a * q1;
    if (q2 > max_den) {
      const long k = (max_den - q0) / q1;
      const long ps = p0 + k * p1, qs = q0 + k * q1;
      const double err_semi = std::abs(y - static_cast<double>(ps) / qs);
      const double err_conv = std::abs(y - static_cast<double>(p1) / q1);
      if (err_semi < err_conv) {
        p1 = ps;
        q1 = qs;
      }
      break;
    }
    const long p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = r - a_d;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  Scalar out(p1, q1);
  out.canonicalize();
  return negative ? Scalar(-out) : out;
}

std::optional<std::pair<KForm, KForm>> rationalize(const SearchResult& result, const LieAlgebra& lie, long max_den) {
  if (!result.found && result.omega.empty()) return std::nullopt;
  auto round_form = [&](const std::vector<double>& coords, int degree, double scale) {
    std::vector<Scalar> exact;
    for (double c : coords) exact.push_back(best_rational(c / scale, max_den));
    return form_from_coordinates(exact, degree, 6);
  };
  auto max_abs = [](const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };
  const double scales[2][2] = {{1.0, 1.0}, {max_abs(result.omega), max_abs(result.rho)}};
  for (const auto& s : scales) {
    if (s[0] == 0 || s[1] == 0) continue;
    KForm omega = round_form(result.omega, 2, s[0]);
    KForm rho = round_form(result.rho, 3, s[1]);
    const auto report = verify(lie, omega, rho);
    if (report.half_flat() && kind_matches(result.target, report.structure.kind))
      return std::make_pair(std::move(omega), std::move(rho));
  }
  return std::nullopt;
}

}  // namespace halfflat
