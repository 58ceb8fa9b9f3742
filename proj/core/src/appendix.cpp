#include "halfflat/appendix.hpp"

#include <algorithm>
#include <sstream>

#include "halfflat/structure_file.hpp"

namespace halfflat::appendix {

namespace {

const std::vector<std::string>& names() {
  static const std::vector<std::string> basis = default_basis(6);
  return basis;
}

// Accumulates "c monomial" terms into a form over Q(sqrt D).
class FormBuilder {
 public:
  explicit FormBuilder(int degree) : form_(degree) {}
  FormBuilder& operator()(const QuadExt& c, std::string_view monomial) {
    const KForm unit = parse_form(monomial, names(), form_.degree());
    for (const auto& [m, s] : unit.terms()) form_.add_term(m, c * QuadExt(s));
    return *this;
  }
  QForm done() const { return form_; }

 private:
  QForm form_;
};

int index_of(std::string_view name) {
  const auto& b = names();
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown basis element");
}

// Printed metric: "c (x)^2" adds c on the diagonal, "c x.y" adds c/2 to both
// off-diagonal entries.
class MetricBuilder {
 public:
  MetricBuilder() : g_(6, 6) {}
  MetricBuilder& sq(const QuadExt& c, std::string_view x) {
    const int i = index_of(x);
    g_(i, i) += c;
    return *this;
  }
  MetricBuilder& dot(const QuadExt& c, std::string_view x, std::string_view y) {
    const int i = index_of(x), j = index_of(y);
    const QuadExt half = c / QuadExt(2);
    g_(i, j) += half;
    g_(j, i) += half;
    return *this;
  }
  MetricBuilder& identity() {
    for (int i = 0; i < 6; ++i) g_(i, i) += QuadExt(1);
    return *this;
  }
  Matrix<QuadExt> done() const { return g_; }

 private:
  Matrix<QuadExt> g_;
};

QForm sum_omega() { return FormBuilder(2)(1, "e1^f1")(1, "e2^f2")(1, "e3^f3").done(); }

Row make(int table, int index, std::string g1, std::string g2, QForm omega, QForm rho, Matrix<QuadExt> metric,
         std::optional<Scalar> mu = std::nullopt, Scalar c4 = 1, Scalar scale_sq = 1) {
  Row r;
  r.table = table;
  r.index = index;
  r.g1 = std::move(g1);
  r.g2 = std::move(g2);
  r.mu = std::move(mu);
  r.omega = std::move(omega);
  r.rho = std::move(rho);
  r.metric = std::move(metric);
  r.c4 = std::move(c4);
  r.metric_scale_sq = std::move(scale_sq);
  return r;
}

const std::vector<std::string> kUnimodular = {"su2", "sl2", "e2", "e11", "h3", "R3"};

std::vector<Row> table3() {
  std::vector<Row> out;
  const QForm omega = sum_omega();
  const QForm rho1 = FormBuilder(3)(1, "e1^e2^e3")(-1, "e1^f2^f3")(-1, "e2^f3^f1")(-1, "e3^f1^f2")(1, "e1^e2^f3")(
                         1, "e3^e1^f2")(1, "e2^e3^f1")(-1, "f1^f2^f3")
                         .done();
  for (const auto& h : kUnimodular)
    out.push_back(make(3, 1, h, h, omega, rho1, MetricBuilder().identity().done(), std::nullopt, rational(1, 4)));

  const QForm rho2 = FormBuilder(3)(1, "e1^e2^f3")(1, "e3^e1^f2")(1, "e2^e3^f1")(-1, "f1^f2^f3").done();
  for (const auto& h : kUnimodular) out.push_back(make(3, 2, h, "R3", omega, rho2, MetricBuilder().identity().done()));

  const QForm rho3 = FormBuilder(3)(rational(1, 2), "e1^e2^e3")(1, "e2^e3^f1")(1, "e3^e1^f2")(1, "e1^e2^f3")(
                         -1, "e1^f2^f3")(-1, "e2^f3^f1")(1, "e3^f1^f2")(-2, "f1^f2^f3")
                         .done();
  const auto g3 = MetricBuilder()
                      .sq(rational(3, 2), "e1")
                      .sq(rational(3, 2), "e2")
                      .sq(rational(1, 2), "e3")
                      .sq(1, "f1")
                      .sq(1, "f2")
                      .sq(3, "f3")
                      .dot(2, "e1", "f1")
                      .dot(2, "e2", "f2")
                      .dot(-2, "e3", "f3")
                      .done();
  out.push_back(make(3, 3, "su2", "sl2", omega, rho3, g3, std::nullopt, 2, 2));

  const QForm rho4 =
      FormBuilder(3)(-1, "e2^e3^f1")(-1, "e3^e1^f2")(-1, "e1^e2^f3")(1, "e2^f3^f1")(1, "e3^f1^f2")(1, "f1^f2^f3").done();
  const auto g4 =
      MetricBuilder().identity().sq(1, "f1").dot(-2, "e1", "f1").done();
  const QForm rho5 =
      FormBuilder(3)(-2, "e2^e3^f1")(-1, "e3^e1^f2")(-1, "e1^e2^f3")(1, "e2^f3^f1")(-1, "e3^f1^f2")(1, "f1^f2^f3").done();
  const auto g5 = MetricBuilder().identity().sq(1, "e2").sq(1, "e3").dot(2, "e2", "f2").dot(-2, "e3", "f3").done();
  out.push_back(make(3, 4, "su2", "e2", omega, rho4, g4));
  out.push_back(make(3, 5, "sl2", "e2", omega, rho5, g5));
  out.push_back(make(3, 6, "su2", "e11", omega, rho5, g5));
  out.push_back(make(3, 6, "e2", "e11", omega, rho5, g5));
  out.push_back(make(3, 7, "sl2", "e11", omega, rho4, g4));

  auto h3_metric = [](int sign) {
    return MetricBuilder()
        .sq(rational(5, 4), "e1")
        .sq(1, "e2")
        .sq(rational(5, 4), "e3")
        .sq(1, "f1")
        .sq(rational(5, 4), "f2")
        .sq(1, "f3")
        .dot(-sign, "e1", "f1")
        .dot(-sign, "e2", "f2")
        .dot(sign, "e3", "f3")
        .done();
  };
  auto h3_rho = [](int sign) {
    return FormBuilder(3)(-1, "e2^e3^f1")(rational(-5, 4), "e3^e1^f2")(-1, "e1^e2^f3")(sign, "e3^f1^f2")(
               1, "f1^f2^f3")
        .done();
  };
  for (const char* g : {"su2", "e2"}) out.push_back(make(3, 8, g, "h3", omega, h3_rho(1), h3_metric(1)));
  for (const char* g : {"sl2", "e11"}) out.push_back(make(3, 9, g, "h3", omega, h3_rho(-1), h3_metric(-1)));
  return out;
}

std::vector<Row> table4() {
  std::vector<Row> out;
  out.push_back(make(4, 1, "e2", "r2R", FormBuilder(2)(1, "e1^e2")(1, "e3^f1")(-1, "f2^f3").done(),
                     FormBuilder(3)(1, "e2^e3^f3")(1, "e2^f2^f1")(1, "e1^e3^f2")(-1, "e1^f3^f1").done(),
                     MetricBuilder().identity().done()));
  out.push_back(make(4, 2, "e11", "r2R", FormBuilder(2)(-1, "e1^f3")(-1, "e3^f2")(1, "e2^f1")(-1, "f2^f3").done(),
                     FormBuilder(3)(1, "e2^e3^f3")(-2, "e3^e1^f1")(1, "e1^e2^f2")(-3, "e1^f3^f1")(-1, "e3^f1^f2")(
                         2, "f1^f2^f3")
                         .done(),
                     MetricBuilder()
                         .sq(2, "e1")
                         .sq(1, "e2")
                         .sq(2, "e3")
                         .sq(1, "f1")
                         .sq(1, "f2")
                         .sq(5, "f3")
                         .dot(-2, "e1", "f2")
                         .dot(-6, "e3", "f3")
                         .done()));
  return out;
}

bool legal(const std::string& family, const Scalar& mu) {
  if (family == "r3mu+") return mu > 0 && mu <= 1;
  if (family == "r3mu-") return mu > -1 && mu < 0;
  return mu > 0;  // r3pmu
}

void table5_fixed(std::vector<Row>& out) {
  const QForm omega1 = FormBuilder(2)(1, "e1^f1")(-1, "f2^f3")(1, "e2^f2")(1, "e3^f3").done();
  const QForm rho1 = FormBuilder(3)(1, "e2^e3^f1")(1, "e3^e1^f2")(1, "e1^e2^f3")(1, "e2^f1^f2")(-1, "f1^f2^f3").done();
  const auto g1 = MetricBuilder().identity().sq(1, "f2").dot(-2, "e3", "f2").done();
  for (const char* g : {"su2", "sl2"}) out.push_back(make(5, 1, g, "r2R", omega1, rho1, g1));

  out.push_back(make(5, 2, "su2", "r3", FormBuilder(2)(1, "f2^f3")(1, "e2^e3")(2, "e1^f1").done(),
                     FormBuilder(3)(1, "e3^e1^f2")(-1, "e1^e2^f3")(-1, "e2^f3^f1")(1, "e3^f3^f1")(1, "e2^f1^f2").done(),
                     MetricBuilder()
                         .sq(2, "e1")
                         .sq(1, "e2")
                         .sq(1, "e3")
                         .sq(2, "f1")
                         .sq(1, "f2")
                         .sq(1, "f3")
                         .dot(2, "e1", "f1")
                         .dot(-1, "e2", "e3")
                         .dot(1, "f2", "f3")
                         .done(),
                     std::nullopt, rational(16, 3), rational(4, 3)));

  out.push_back(make(5, 3, "sl2", "r3", FormBuilder(2)(1, "e1^f1")(-2, "f2^f3")(1, "e3^f3")(1, "e2^f2").done(),
                     FormBuilder(3)(rational(1, 3), "e2^e3^f1")(3, "e3^e1^f2")(1, "e3^e1^f3")(1, "e1^e2^f2")(
                         rational(4, 3), "e1^e2^f3")(-4, "e2^f3^f1")(rational(7, 3), "e3^f3^f1")(3, "e2^f1^f2")(
                         -1, "e3^f1^f2")(-26, "f1^f2^f3")
                         .done(),
                     MetricBuilder()
                         .sq(3, "e1")
                         .sq(rational(4, 9), "e2")
                         .sq(1, "e3")
                         .sq(rational(17, 3), "f1")
                         .sq(94, "f2")
                         .sq(rational(328, 9), "f3")
                         .dot(-8, "e1", "f1")
                         .dot(rational(-2, 3), "e2", "e3")
                         .dot(rational(34, 3), "e2", "f2")
                         .dot(rational(16, 9), "e2", "f3")
                         .dot(-16, "e3", "f2")
                         .dot(rational(-34, 3), "e3", "f3")
                         .dot(rational(224, 3), "f2", "f3")
                         .done()));
}

void table5_at(std::vector<Row>& out, const Scalar& m) {
  const QuadExt mu(m);
  const QuadExt one(1);
  const QuadExt mp1 = mu + one;
  if (legal("r3mu+", m)) {
    out.push_back(make(
        5, 4, "su2", "r3mu", FormBuilder(2)(one / mp1, "e1^e2")(1, "e3^f1")(-1, "f3^f2").done(),
        FormBuilder(3)(1, "e1^e3^f2")(-1, "e2^e3^f3")(-mu, "e1^f1^f3")(-1, "e2^f1^f2").done(),
        MetricBuilder().sq(mu / mp1, "e1").sq(one / mp1, "e2").sq(1, "e3").sq(mu, "f1").sq(1, "f2").sq(mu, "f3").done(),
        m, 1 / (m * (m + 1) * (m + 1)), 1 / m));

    const QuadExt s = QuadExt::sqrt(2 * m + 1);
    const QuadExt r = QuadExt(2) * s / (mp1 * mp1);
    out.push_back(make(
        5, 7, "sl2", "r3mu",
        FormBuilder(2)(r, "e1^f3")(1, "e2^f1")(1, "f2^f3")(mu / mp1, "e1^e3")(1, "e1^f2")(1, "e3^f3").done(),
        FormBuilder(3)(QuadExt(2) * r, "e1^e2^e3")(1, "e2^e3^f2")(-1, "e1^e3^f1")(one / mu, "e1^e2^f3")(-1, "e3^f1^f3")(
            1, "e1^f1^f2")(mp1 / mu, "f1^f2^f3")
            .done(),
        MetricBuilder()
            .sq((mu * mu * mu + QuadExt(11) * mu * mu + QuadExt(7) * mu + one) / (mu * mp1 * mp1 * mp1), "e1")
            .sq(mp1 / mu, "e2")
            .sq(QuadExt(2) * mu + one, "e3")
            .sq(mp1 / mu, "f1")
            .sq(mp1 / (mu * mu), "f3")
            .sq((one + QuadExt(3) * mu + QuadExt(2) * mu * mu) / mu, "f2")
            .dot(QuadExt(6) * s / mp1, "e1", "e3")
            .dot(QuadExt(2) * s * (QuadExt(3) * mu + one) / (mu * mp1), "e1", "f2")
            .dot(QuadExt(4) * (QuadExt(2) * mu + one) / (mu * mp1 * mp1), "e1", "f3")
            .dot(QuadExt(2) * s / mu, "e2", "f1")
            .dot(QuadExt(4) + QuadExt(4) * mu, "e3", "f2")
            .dot(QuadExt(2) * s / mu, "e3", "f3")
            .dot(QuadExt(2) * s / mu, "f2", "f3")
            .done(),
        m));
  }
  if (legal("r3mu-", m)) {
    out.push_back(make(
        5, 5, "sl2", "r3mu", FormBuilder(2)(one / mp1, "e2^e3")(1, "e1^f1")(1, "f3^f2").done(),
        FormBuilder(3)(1, "e1^e2^f3")(-1, "e1^e3^f2")(1, "e2^f1^f2")(-mu, "e3^f1^f3").done(),
        MetricBuilder().sq(1, "e1").sq(one / mp1, "e2").sq(-mu / mp1, "e3").sq(-mu, "f1").sq(1, "f2").sq(-mu, "f3").done(),
        m, 1 / ((-m) * (m + 1) * (m + 1)), -1 / m));

    const QuadExt den = QuadExt(2) * mp1 * mp1;
    const QuadExt a = mu * (QuadExt(2) * mu + QuadExt(3)) / den;
    const QuadExt b = (QuadExt(2) * mu * mu + mu - QuadExt(2)) / den;
    const QuadExt c = (QuadExt(2) * mu * mu + QuadExt(3) * mu + QuadExt(2)) / den;
    const QuadExt q = mu * mu + mu + one;
    out.push_back(make(
        5, 6, "su2", "r3mu",
        FormBuilder(2)(1, "f2^f3")(1, "e3^f1")(-a, "e2^e3")(-1, "e1^f1")(1, "e1^f3")(a, "e1^e2")(-b, "e2^f2")(1, "e3^f3")
            .done(),
        FormBuilder(3)(-c, "e2^e3^f1")(-one / mu, "e2^e3^f3")(-2, "e1^e3^f2")(c, "e1^e2^f1")(-one / mu, "e1^e2^f3")(
            -1, "e1^f1^f3")(-1, "e3^f1^f3")(2, "e2^f1^f2")(2, "f1^f2^f3")
            .done(),
        MetricBuilder()
            .sq(-q / (mu * mp1), "e1")
            .sq(-(QuadExt(4) * mu * mu * mu * mu + QuadExt(20) * mu * mu * mu + QuadExt(29) * mu * mu + QuadExt(16) * mu +
                  QuadExt(4)) /
                    (QuadExt(4) * mu * mp1 * mp1 * mp1),
                "e2")
            .sq(-q / (mu * mp1), "e3")
            .sq(-mu / mp1, "f1")
            .sq((QuadExt(4) + QuadExt(3) * mu) / mp1, "f2")
            .sq(-mp1 / mu, "f3")
            .dot(QuadExt(2) * (mu * mu + one + QuadExt(3) * mu) / (mu * mp1), "e1", "e3")
            .dot(QuadExt(2) * (mu + QuadExt(2)) / mp1, "e1", "f2")
            .dot(-(QuadExt(2) * mu * mu + QuadExt(5) * mu + QuadExt(2)) / (mu * mp1), "e2", "f3")
            .dot(QuadExt(2) * (mu + QuadExt(2)) / mp1, "e3", "f2")
            .done(),
        m));
  }
  if (legal("r3pmu", m)) {
    const QForm omega = FormBuilder(2)(1, "e2^f2")(-QuadExt(2) * mu, "f2^f3")(1, "e3^f3")(1, "e1^f1").done();
    out.push_back(make(5, 8, "su2", "r3pmu", omega,
                       FormBuilder(3)(1, "e2^e3^f1")(1, "e3^e1^f2")(1, "e1^e2^f3")(1, "e2^f3^f1")(-mu, "e3^f3^f1")(
                           mu, "e2^f1^f2")(1, "e3^f1^f2")(mu * mu - one, "f1^f2^f3")
                           .done(),
                       MetricBuilder()
                           .identity()
                           .sq(1, "f1")
                           .sq(mu * mu, "f2")
                           .sq(mu * mu, "f3")
                           .dot(2, "e1", "f1")
                           .dot(QuadExt(2) * mu, "e2", "f3")
                           .dot(-QuadExt(2) * mu, "e3", "f2")
                           .done(),
                       m));
    out.push_back(make(5, 9, "sl2", "r3pmu", omega,
                       FormBuilder(3)(rational(1, 2), "e2^e3^f1")(2, "e3^e1^f2")(1, "e1^e2^f3")(2, "e2^f3^f1")(
                           mu, "e3^f3^f1")(QuadExt(2) * mu, "e2^f1^f2")(-1, "e3^f1^f2")(
                           -(QuadExt(4) * mu * mu + QuadExt(rational(29, 4))), "f1^f2^f3")
                           .done(),
                       MetricBuilder()
                           .sq(2, "e1")
                           .sq(rational(1, 2), "e2")
                           .sq(1, "e3")
                           .sq(rational(13, 8), "f1")
                           .sq(QuadExt(16) * mu * mu + QuadExt(rational(29, 2)), "f2")
                           .sq(QuadExt(2) * mu * mu + QuadExt(rational(29, 4)), "f3")
                           .dot(3, "e1", "f1")
                           .dot(-5, "e2", "f2")
                           .dot(-QuadExt(2) * mu, "e2", "f3")
                           .dot(-QuadExt(8) * mu, "e3", "f2")
                           .dot(5, "e3", "f3")
                           .dot(-QuadExt(10) * mu, "f2", "f3")
                           .done(),
                       m));
  }
}

const std::vector<Scalar>& sample_set() {
  static const std::vector<Scalar> mus = {rational(-3, 4), rational(-1, 2), rational(-1, 4), rational(1, 4),
                                          rational(1, 2),  rational(3, 4),  Scalar(1),        Scalar(2)};
  return mus;
}

std::string render(const QForm& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    os << (first ? "" : " + ") << "(" << c << ") ";
    bool lead = true;
    for (int i = 0; i < 6; ++i)
      if (m & (1u << i)) os << (lead ? "" : "^") << names()[i], lead = false;
    first = false;
  }
  return os.str();
}

}  // namespace

LieAlgebra Row::algebra() const {
  const bool parametric = g2 == "r3mu" || g2 == "r3pmu";
  return direct_sum(catalog(g1), parametric ? catalog(g2, mu) : catalog(g2));
}

std::string Row::label() const {
  std::ostringstream os;
  os << "table" << table << ".row" << index << " " << catalog_entry(g1).display << "+" << catalog_entry(g2).display;
  if (mu) os << " mu=" << *mu;
  return os.str();
}

std::vector<Row> rows(int table, std::optional<Scalar> mu) {
  switch (table) {
    case 3:
      return table3();
    case 4:
      return table4();
    case 5: {
      std::vector<Row> out;
      table5_fixed(out);
      if (mu) {
        table5_at(out, *mu);
      } else {
        for (const auto& m : sample_set()) table5_at(out, m);
      }
      std::stable_sort(out.begin(), out.end(), [](const Row& a, const Row& b) { return a.index < b.index; });
      return out;
    }
    default:
      throw std::invalid_argument("appendix tables are 3, 4 and 5");
  }
}

std::vector<Row> all_rows() {
  std::vector<Row> out;
  for (int t : {3, 4, 5}) {
    auto part = rows(t);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

RowCheck check_row(const Row& row) {
  RowCheck out;
  const LieAlgebra lie = row.algebra();
  out.report = verify(lie, row.omega, row.rho);
  const auto& rep = out.report;
  std::ostringstream why;
  if (!rep.d_rho_zero) {
    why << "d rho = " << render(rep.d_rho);
  } else if (!rep.d_omega2_zero) {
    why << "d omega^2 = " << render(rep.d_omega2);
  } else if (!rep.compatible) {
    why << "omega ^ rho = " << render(wedge(row.omega, row.rho));
  }
  out.lambda_negative = rep.lambda && rep.lambda->sign() < 0;
  if (why.str().empty() && !out.lambda_negative) why << "lambda = " << (rep.lambda ? rep.lambda->str() : "?");
  if (rep.g_raw) {
    const Inertia in = inertia(*rep.g_raw);
    out.positive_definite = in.positive == 6;
  }
  if (why.str().empty() && !out.positive_definite) why << "G_hat not positive definite (" << rep.structure.str() << ")";
  out.c4_match = rep.norm_c4 && *rep.norm_c4 == QuadExt(row.c4);
  if (why.str().empty() && !out.c4_match)
    why << "c^4 = " << (rep.norm_c4 ? rep.norm_c4->str() : "?") << ", expected " << row.c4;
  if (rep.g_raw && rep.lambda) {
    const Matrix<QuadExt>& g = *rep.g_raw;
    std::optional<QuadExt> k;
    for (int i = 0; i < 6 && !k; ++i)
      if (!is_zero(row.metric(i, i))) k = g(i, i) / row.metric(i, i);
    if (k) {
      out.metric_factor = k;
      const QuadExt expected_sq = QuadExt(row.metric_scale_sq) * (rep.lambda->sign() < 0 ? -*rep.lambda : *rep.lambda);
      out.metric_match = k->sign() > 0 && (*k) * (*k) == expected_sq && g == (*k) * row.metric;
      if (why.str().empty() && !out.metric_match) {
        why << "G_hat != k g_printed with k = " << k->str() << " (k^2 expected " << expected_sq.str() << ")";
        for (int i = 0; i < 6; ++i)
          for (int j = i; j < 6; ++j)
            if (g(i, j) != (*k) * row.metric(i, j))
              why << "; entry (" << names()[i] << "," << names()[j] << "): " << g(i, j) << " vs "
                  << (*k) * row.metric(i, j);
      }
    }
  }
  if (why.str().empty() && !out.metric_match) why << "no metric comparison possible";
  if (why.str().empty() && !(rep.half_flat() && rep.structure.kind == StructureKind::SU3))
    why << "verdict " << rep.structure.str();
  out.residual = why.str();
  return out;
}

std::optional<Row> typo_candidate(const Row& row) {
  if (row.table != 5 || row.index != 7) return std::nullopt;
  Row fixed = row;
  const QuadExt r = row.omega.terms().at(Mask{0b100001});
  fixed.rho.add_term(Mask{0b000111}, -r);
  return fixed;
}

}  // namespace halfflat::appendix
