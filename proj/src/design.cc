#include "adt/design.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "adt/error.h"
#include "adt/fisher.h"

namespace adt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double distance(double a, double b) { return std::fabs(a - b); }
double distance(const Point2& a, const Point2& b) {
  return std::max(std::fabs(a.x1 - b.x1), std::fabs(a.x2 - b.x2));
}

// Solution of M h = c through the eigendecomposition; `estimable` is false
// when c has a component in the null space of M.
struct PseudoSolve {
  Eigen::VectorXd h;
  bool estimable = false;
};

PseudoSolve pseudo_solve(const Eigen::MatrixXd& m, const Eigen::VectorXd& c) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  const Eigen::VectorXd proj = es.eigenvectors().transpose() * c;
  Eigen::VectorXd scaled = Eigen::VectorXd::Zero(ev.size());
  double outside = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cutoff) {
      scaled(i) = proj(i) / ev(i);
    } else {
      outside += proj(i) * proj(i);
    }
  }
  return {es.eigenvectors() * scaled, std::sqrt(outside) <= 1e-8 * c.norm()};
}

bool nonsingular(const Eigen::MatrixXd& m) { return std::isfinite(d_criterion(m)); }

Eigen::MatrixXd weighted_sum(const std::vector<Eigen::MatrixXd>& elemental,
                             const std::vector<double>& w) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(elemental[0].rows(), elemental[0].cols());
  for (std::size_t i = 0; i < elemental.size(); ++i) {
    if (w[i] != 0.0) m += w[i] * elemental[i];
  }
  return m;
}

template <class Point>
OptimizedDesign<Point> optimize_impl(const std::vector<Point>& points,
                                     const std::vector<Eigen::MatrixXd>& elemental,
                                     const Criterion& crit, double grid_step,
                                     const OptimizerOptions& opts) {
  if (points.size() != elemental.size()) {
    throw ValidationError("optimize_design: one elemental matrix per candidate point is required");
  }
  const WeightResult wr = multiplicative_weights(elemental, crit, opts);

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < wr.weights.size(); ++i) {
    if (wr.weights[i] >= opts.prune_threshold) idx.push_back(i);
  }
  std::vector<double> w(wr.weights.size(), 0.0);
  for (std::size_t i : idx) w[i] = wr.weights[i];

  OptimizedDesign<Point> out;
  // Merge light points into the heaviest neighbour within one grid step,
  // lightest first; ties resolved by candidate order.
  std::vector<std::size_t> order = idx;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  for (std::size_t i : order) {
    if (w[i] == 0.0 || w[i] >= opts.merge_threshold) continue;
    std::size_t best = i;
    for (std::size_t j : idx) {
      if (j == i || w[j] <= w[i]) continue;
      if (distance(points[i], points[j]) > grid_step * (1.0 + 1e-9)) continue;
      if (best == i || w[j] > w[best]) best = j;
    }
    if (best != i) {
      w[best] += w[i];
      w[i] = 0.0;
      ++out.merged;
    }
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;

  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) {
      out.design.support.push_back(points[i]);
      out.design.weights.push_back(w[i]);
    }
  }
  out.design.sort();

  const Eigen::MatrixXd m = weighted_sum(elemental, w);
  out.iterations = wr.iterations;
  out.converged = wr.converged;
  try {
    out.gap = equivalence_gap(elemental, crit, m);
  } catch (const ValidationError&) {
    out.gap = kInf;
  }
  out.criterion = crit.kind == Criterion::Kind::D ? d_criterion(m) : -criterion_value(crit, m);
  out.certified = out.gap <= opts.tolerance;
  return out;
}

}  // namespace

template <class Point>
void BasicDesign<Point>::validate(double tol) const {
  if (support.empty() || support.size() != weights.size()) {
    throw ValidationError("design: support and weights must be nonempty and of equal size");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw ValidationError("design: weights must be positive");
    total += w;
  }
  if (std::fabs(total - 1.0) > tol) throw ValidationError("design: weights must sum to 1");
  std::vector<Point> s = support;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw ValidationError("design: support points must be distinct");
  }
}

template <class Point>
void BasicDesign<Point>::sort() {
  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  BasicDesign<Point> sorted;
  for (std::size_t i : order) {
    sorted.support.push_back(support[i]);
    sorted.weights.push_back(weights[i]);
  }
  *this = std::move(sorted);
}

template struct BasicDesign<Point2>;
template struct BasicDesign<double>;

Grid::Grid(double increment) : inc_(increment) {
  if (!(increment > 0.0) || increment > 1.0) {
    throw ValidationError("grid: increment must lie in (0, 1]");
  }
  const double steps = 1.0 / increment;
  const double rounded = std::round(steps);
  if (std::fabs(steps - rounded) > 1e-12 * std::max(1.0, rounded)) {
    throw ValidationError("grid: increment must divide 1");
  }
  const int n = static_cast<int>(rounded);
  for (int i = 0; i <= n; ++i) axis_.push_back(static_cast<double>(i) / n);
}

std::vector<Point2> Grid::points() const {
  std::vector<Point2> pts;
  pts.reserve(axis_.size() * axis_.size());
  for (double a : axis_) {
    for (double b : axis_) pts.push_back({a, b});
  }
  return pts;
}

Criterion Criterion::c_optimal(Eigen::VectorXd c) {
  if (c.size() == 0 || c.norm() == 0.0 || !c.allFinite()) {
    throw ValidationError("c-criterion: coefficient vector must be finite and nonzero");
  }
  Criterion crit;
  crit.kind = Kind::C;
  crit.c = std::move(c);
  return crit;
}

double d_criterion(const Eigen::MatrixXd& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  if (!(top > 0.0) || ev.minCoeff() <= 1e-12 * top) return -kInf;
  return ev.array().log().sum();
}

double criterion_value(const Criterion& crit, const Eigen::MatrixXd& m) {
  if (crit.kind == Criterion::Kind::D) return d_criterion(m);
  const PseudoSolve ps = pseudo_solve(m, crit.c);
  if (!ps.estimable) return -kInf;
  return -crit.c.dot(ps.h);
}

std::vector<double> sensitivities(const std::vector<Eigen::MatrixXd>& elemental,
                                  const Criterion& crit, const Eigen::MatrixXd& m) {
  std::vector<double> psi(elemental.size());
  if (crit.kind == Criterion::Kind::D) {
    const Eigen::MatrixXd inv = m.ldlt().solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
    for (std::size_t i = 0; i < elemental.size(); ++i) {
      psi[i] = (elemental[i].cwiseProduct(inv)).sum();
    }
  } else {
    const Eigen::VectorXd h = pseudo_solve(m, crit.c).h;
    for (std::size_t i = 0; i < elemental.size(); ++i) psi[i] = h.dot(elemental[i] * h);
  }
  return psi;
}

double equivalence_gap(const std::vector<Eigen::MatrixXd>& elemental, const Criterion& crit,
                       const Eigen::MatrixXd& m) {
  if (crit.kind == Criterion::Kind::D) {
    if (!nonsingular(m)) throw ValidationError("equivalence_gap: singular information matrix");
    const std::vector<double> psi = sensitivities(elemental, crit, m);
    return *std::max_element(psi.begin(), psi.end()) - static_cast<double>(m.rows());
  }
  const PseudoSolve ps = pseudo_solve(m, crit.c);
  if (!ps.estimable) throw ValidationError("equivalence_gap: c is not estimable under the design");
  const double var = crit.c.dot(ps.h);
  const std::vector<double> psi = sensitivities(elemental, crit, m);
  return *std::max_element(psi.begin(), psi.end()) / var - 1.0;
}

WeightResult multiplicative_weights(const std::vector<Eigen::MatrixXd>& elemental,
                                    const Criterion& crit, const OptimizerOptions& opts) {
  if (elemental.empty()) throw ValidationError("multiplicative_weights: no candidate points");
  const std::size_t n = elemental.size();
  const double power = crit.kind == Criterion::Kind::D ? 1.0 : 0.5;
  WeightResult r;
  r.weights.assign(n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd m = weighted_sum(elemental, r.weights);
  if (!std::isfinite(criterion_value(crit, m))) {
    throw ValidationError("multiplicative_weights: no " + crit.name() +
                          "-estimable design on the candidate set");
  }
  for (r.iterations = 0;; ++r.iterations) {
    m = weighted_sum(elemental, r.weights);
    const std::vector<double> psi = sensitivities(elemental, crit, m);
    double bound;
    if (crit.kind == Criterion::Kind::D) {
      bound = static_cast<double>(m.rows());
    } else {
      bound = crit.c.dot(pseudo_solve(m, crit.c).h);
    }
    r.gap = *std::max_element(psi.begin(), psi.end()) / bound - 1.0;
    if (crit.kind == Criterion::Kind::D) r.gap *= bound;
    if (r.gap <= opts.tolerance) {
      r.converged = true;
      break;
    }
    if (r.iterations >= opts.max_iterations) break;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r.weights[i] *= std::pow(std::max(psi[i], 0.0), power);
      total += r.weights[i];
    }
    for (double& w : r.weights) w /= total;
  }
  return r;
}

OptimizedDesign<Point2> optimize_design(const std::vector<Point2>& points,
                                        const std::vector<Eigen::MatrixXd>& elemental,
                                        const Criterion& crit, double grid_step,
                                        const OptimizerOptions& opts) {
  return optimize_impl(points, elemental, crit, grid_step, opts);
}

OptimizedDesign<double> optimize_design(const std::vector<double>& points,
                                        const std::vector<Eigen::MatrixXd>& elemental,
                                        const Criterion& crit, double grid_step,
                                        const OptimizerOptions& opts) {
  return optimize_impl(points, elemental, crit, grid_step, opts);
}

template <class Point>
Eigen::MatrixXd design_info(const BasicDesign<Point>& d, const ElementalFn<Point>& elemental) {
  d.validate();
  Eigen::MatrixXd m;
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    const Eigen::MatrixXd mi = elemental(d.support[i]);
    if (i == 0) m = Eigen::MatrixXd::Zero(mi.rows(), mi.cols());
    m += d.weights[i] * mi;
  }
  return m;
}

template Eigen::MatrixXd design_info(const Design&, const ElementalFn<Point2>&);
template Eigen::MatrixXd design_info(const MarginalDesign&, const ElementalFn<double>&);

double elfving_marginal_weight(const MarginalParams& p, const TimePlan& plan, double x_u) {
  if (!(x_u < 0.0)) throw DomainError("elfving_marginal_weight: x_u must be negative");
  const double a = std::fabs(x_u);
  const double top = (1.0 + a) * std::sqrt(lambda_marginal(p, plan, 1.0));
  return top / (top + a * std::sqrt(lambda_marginal(p, plan, 0.0)));
}

Design product_design(const MarginalDesign& xi1, const MarginalDesign& xi2) {
  Design d;
  for (std::size_t i = 0; i < xi1.support.size(); ++i) {
    for (std::size_t j = 0; j < xi2.support.size(); ++j) {
      d.support.push_back({xi1.support[i], xi2.support[j]});
      d.weights.push_back(xi1.weights[i] * xi2.weights[j]);
    }
  }
  d.sort();
  return d;
}

std::pair<MarginalDesign, MarginalDesign> marginalize(const Design& d) {
  std::map<double, double> m1, m2;
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    m1[d.support[i].x1] += d.weights[i];
    m2[d.support[i].x2] += d.weights[i];
  }
  auto to_design = [](const std::map<double, double>& m) {
    MarginalDesign out;
    for (const auto& [x, w] : m) {
      out.support.push_back(x);
      out.weights.push_back(w);
    }
    return out;
  };
  return {to_design(m1), to_design(m2)};
}

template <class Point>
double efficiency(const BasicDesign<Point>& candidate, const BasicDesign<Point>& optimal,
                  const Criterion& crit, const ElementalFn<Point>& elemental) {
  const Eigen::MatrixXd mc = design_info(candidate, elemental);
  const Eigen::MatrixXd mo = design_info(optimal, elemental);
  const double vc = criterion_value(crit, mc);
  const double vo = criterion_value(crit, mo);
  if (!std::isfinite(vc)) return 0.0;
  if (crit.kind == Criterion::Kind::D) {
    return std::exp((vc - vo) / static_cast<double>(mc.rows()));
  }
  return vo / vc;
}

template double efficiency(const Design&, const Design&, const Criterion&,
                           const ElementalFn<Point2>&);
template double efficiency(const MarginalDesign&, const MarginalDesign&, const Criterion&,
                           const ElementalFn<double>&);

std::vector<SweepRow> sweep(double from, double to, int steps,
                            const std::function<SweepRow(double)>& run) {
  if (steps < 1) throw ValidationError("sweep: steps must be at least 1");
  std::vector<double> values;
  if (steps == 1 || from == to) {
    values.push_back(from);
  } else {
    for (int i = 0; i < steps; ++i) {
      values.push_back(from + (to - from) * static_cast<double>(i) / (steps - 1));
    }
  }
  std::vector<SweepRow> rows;
  for (double v : values) {
    try {
      SweepRow row = run(v);
      row.value = v;
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      SweepRow row;
      row.value = v;
      row.error = e.what();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace adt
