#include "l2/invariants.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

namespace l2 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Runs tasks[0..n) on `jobs` threads. Results land in caller-owned slots, so
/// the outcome is independent of scheduling order.
void run_parallel(const std::vector<std::function<void()>>& tasks, int jobs) {
  if (jobs < 1) throw InputError("worker count must be >= 1");
  if (jobs == 1 || tasks.size() <= 1) {
    for (const auto& t : tasks) t();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        tasks[i]();
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(jobs, static_cast<int>(tasks.size()));
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

struct LevelOutcome {
  LevelStats stats;
  SpectralDensity density;
};

LevelOutcome run_level(const RingMatrix& h, const Schedule& sched, int m) {
  const auto t0 = std::chrono::steady_clock::now();
  Compression c;
  if (sched.scheme == CompressionScheme::Folner)
    c = compress_folner(h, folner_set(h.spec(), m));
  else
    c = compress_quotient(h, quotient(h.spec(), m));

  LevelOutcome out;
  out.density = eigenvalues(c, sched.dimension_cap);
  const double threshold = effective_threshold(out.density, sched.kernel_theta);

  LevelStats& st = out.stats;
  st.m = m;
  st.normalization = c.normalization;
  st.dim = c.dim();
  st.f_at_zero = out.density.value(threshold);
  auto nld = normalized_log_det_positive(out.density, threshold);
  st.zero_operator = !nld.has_value();
  st.norm_log_det = nld.value_or(0.0);
  st.min_pos_eig = kNaN;
  for (Eigen::Index i = 0; i < out.density.eigenvalues.size(); ++i) {
    if (out.density.eigenvalues[i] > threshold) {
      st.min_pos_eig = out.density.eigenvalues[i];
      break;
    }
  }
  st.wall_ms = std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
  return out;
}

}  // namespace

void Schedule::validate() const {
  if (levels.empty()) throw InputError("schedule: at least one level required");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1) throw InputError("schedule: levels must be >= 1");
    if (i > 0 && levels[i] <= levels[i - 1])
      throw InputError("schedule: levels must be strictly ascending");
  }
  if (kernel_theta <= 0) throw InputError("schedule: kernel threshold must be positive");
  if (dimension_cap < 1) throw InputError("schedule: dimension cap must be >= 1");
}

DetEstimate fk_determinant(const RingMatrix& a, const Schedule& sched,
                           bool direct, int jobs) {
  sched.validate();
  if (!a.is_square()) throw InputError("fk_determinant: square matrix required");
  RingMatrix h = a;
  if (direct) {
    if (!matrix_is_symmetric(a))
      throw InputError("fk_determinant: direct evaluation requires A = A*");
  } else {
    h = matrix_mul(matrix_adjoint(a), a);
  }
  const double exponent = direct ? 1.0 : 0.5;

  DetEstimate est;
  est.squared_route = !direct;
  est.levels.resize(sched.levels.size());
  std::vector<SpectralDensity> densities(sched.levels.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < sched.levels.size(); ++i) {
    tasks.push_back([&, i] {
      LevelOutcome out = run_level(h, sched, sched.levels[i]);
      est.levels[i] = out.stats;
      densities[i] = std::move(out.density);
    });
  }
  run_parallel(tasks, jobs);

  for (const auto& st : est.levels) {
    est.log_det_by_level.push_back(st.zero_operator ? kNaN
                                                    : exponent * st.norm_log_det);
  }
  const LevelStats& top = est.levels.back();
  if (top.zero_operator)
    throw NumericError("fk_determinant: operator has no positive part (zero operator)");
  est.log_det = exponent * top.norm_log_det;
  est.det = std::exp(est.log_det);
  est.slope = est.levels.size() >= 2
                  ? est.log_det_by_level.back() -
                        est.log_det_by_level[est.log_det_by_level.size() - 2]
                  : kNaN;
  const SpectralDensity& top_density = densities.back();
  est.gap = gap_check(top_density, l1_bound(h),
                      effective_threshold(top_density, sched.kernel_theta));
  return est;
}

DetClassDiagnostic determinant_class_diagnostic(const SpectralDensity& s,
                                                double kernel_threshold) {
  DetClassDiagnostic d;
  std::int64_t positive = 0, near_zero = 0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double ev = s.eigenvalues[i];
    if (ev <= kernel_threshold) continue;
    ++positive;
    if (ev <= 10.0 * kernel_threshold) ++near_zero;
    if (ev <= 1.0) acc += std::log(ev);
  }
  d.finite_estimate = acc / static_cast<double>(s.normalization);
  d.near_zero_mass =
      static_cast<double>(near_zero) / static_cast<double>(s.normalization);
  // inconclusive when the operator is zero or mass accumulates just above
  // the kernel cut
  d.pass = positive > 0 && near_zero <= 1;
  return d;
}

TorsionReport l2_torsion(const CochainComplex& c, const Schedule& sched,
                         int jobs) {
  sched.validate();
  require_valid(c);
  const auto laps = laplacians(c);
  const int degrees = static_cast<int>(laps.size());
  const int n_levels = static_cast<int>(sched.levels.size());

  TorsionReport report;
  report.degrees.resize(static_cast<std::size_t>(degrees));
  report.euler_characteristic = euler_characteristic(c);
  std::vector<std::vector<SpectralDensity>> densities(
      static_cast<std::size_t>(degrees));
  for (auto& v : densities) v.resize(static_cast<std::size_t>(n_levels));

  std::vector<std::function<void()>> tasks;
  for (int j = 0; j < degrees; ++j) {
    auto& deg = report.degrees[static_cast<std::size_t>(j)];
    deg.degree = j;
    deg.rank = c.ranks[static_cast<std::size_t>(j)];
    deg.levels.resize(static_cast<std::size_t>(n_levels));
    if (deg.rank == 0) continue;  // empty module, nothing to compress
    for (int i = 0; i < n_levels; ++i) {
      tasks.push_back([&, j, i] {
        LevelOutcome out = run_level(laps[static_cast<std::size_t>(j)], sched,
                                     sched.levels[static_cast<std::size_t>(i)]);
        report.degrees[static_cast<std::size_t>(j)]
            .levels[static_cast<std::size_t>(i)] = out.stats;
        densities[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
            std::move(out.density);
      });
    }
  }
  run_parallel(tasks, jobs);

  double log_torsion = 0.0;
  bool unreliable = false;
  for (int j = 0; j < degrees; ++j) {
    auto& deg = report.degrees[static_cast<std::size_t>(j)];
    if (deg.rank == 0) {
      deg.det_class.pass = true;  // no operator, nothing to diverge
      continue;
    }
    const LevelStats& top = deg.levels.back();
    const SpectralDensity& density = densities[static_cast<std::size_t>(j)].back();
    deg.betti = top.f_at_zero;
    deg.zero_operator = top.zero_operator;
    deg.log_det_plus = top.zero_operator ? 0.0 : top.norm_log_det;
    deg.det_class = determinant_class_diagnostic(
        density, effective_threshold(density, sched.kernel_theta));
    if (!deg.det_class.pass) unreliable = true;
    const double weight = (j % 2 == 0 ? 1.0 : -1.0) * (static_cast<double>(j) / 2.0);
    log_torsion += weight * deg.log_det_plus;
  }
  report.log_torsion = log_torsion;
  report.unreliable = unreliable;
  return report;
}

std::vector<double> l2_betti(const CochainComplex& c, const Schedule& sched,
                             int jobs) {
  Schedule top_only = sched;
  top_only.levels = {sched.top_level()};
  TorsionReport report = l2_torsion(c, top_only, jobs);
  std::vector<double> betti;
  betti.reserve(report.degrees.size());
  for (const auto& deg : report.degrees) betti.push_back(deg.betti);
  return betti;
}

RingMatrix expand_unit_product(const UnitProduct& p) {
  if (p.size < 1) throw InputError("unit product: size must be >= 1");
  if (p.factors.empty()) throw InputError("unit product: at least one factor required");
  RingMatrix acc = RingMatrix::identity(p.spec, p.size);
  for (const auto& f : p.factors) {
    RingMatrix factor(p.spec, p.size, p.size);
    switch (f.kind) {
      case UnitFactor::Kind::Elementary: {
        if (!f.value) throw InputError("elementary factor: missing value");
        if (!f.value->is_integral())
          throw InputError("elementary factor: integer coefficients required");
        factor = RingMatrix::elementary(p.spec, p.size, f.row, f.col, *f.value);
        break;
      }
      case UnitFactor::Kind::DiagonalUnit:
        factor = RingMatrix::diagonal_unit(p.spec, p.size, f.index, f.sign,
                                           f.element);
        break;
    }
    acc = matrix_mul(acc, factor);
  }
  return acc;
}

DetEstimate whitehead_det(const UnitProduct& p, const Schedule& sched, int jobs) {
  RingMatrix a = expand_unit_product(p);
  return fk_determinant(a, sched, /*direct=*/false, jobs);
}

namespace {

/// Orthonormal kernel basis of a symmetric compression matrix.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& lap, double theta) {
  if (lap.rows() == 0) return Eigen::MatrixXd(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success)
    throw NumericError("kernel basis: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  const double threshold = theta * std::max(1.0, ev[ev.size() - 1]);
  Eigen::Index k = 0;
  while (k < ev.size() && ev[k] <= threshold) ++k;
  return solver.eigenvectors().leftCols(k);
}

double torsion_log_scalar(const TorsionReport& r) { return r.log_torsion; }

}  // namespace

ConeCheckReport mapping_cone_check(const ChainMap& f, const Schedule& sched,
                                   bool exact_mode, int jobs) {
  sched.validate();
  if (!is_chain_map(f)) throw InputError("mapping_cone_check: not a chain map");
  CochainComplex cone = mapping_cone(f);

  ConeCheckReport report;
  report.exact_mode = exact_mode;

  if (!exact_mode) {
    TorsionReport tc = l2_torsion(f.source, sched, jobs);
    TorsionReport tt = l2_torsion(f.target, sched, jobs);
    TorsionReport tcone = l2_torsion(cone, sched, jobs);
    report.log_source = torsion_log_scalar(tc);
    report.log_target = torsion_log_scalar(tt);
    report.log_cone = torsion_log_scalar(tcone);
    for (const auto& deg : tcone.degrees) report.cone_betti.push_back(deg.betti);
    report.residual = std::abs(report.log_source - report.log_target -
                               report.log_cone);
    return report;
  }

  if (!f.source.spec.is_finite())
    throw InputError("mapping_cone_check: exact mode requires a finite group");
  const std::int64_t q = f.source.spec.order();
  Schedule exact = sched;
  exact.scheme = CompressionScheme::Quotient;
  exact.levels = {1};  // finite specs map to themselves at every level

  TorsionReport tc = l2_torsion(f.source, exact, jobs);
  TorsionReport tt = l2_torsion(f.target, exact, jobs);
  TorsionReport tcone = l2_torsion(cone, exact, jobs);
  report.log_source = torsion_log_scalar(tc);
  report.log_target = torsion_log_scalar(tt);
  report.log_cone = torsion_log_scalar(tcone);
  for (const auto& deg : tcone.degrees) report.cone_betti.push_back(deg.betti);
  for (double b : report.cone_betti) {
    if (b > 0.5 / static_cast<double>(q))
      throw NumericError(
          "mapping_cone_check: cone has nonzero kernel mass; the map is not a "
          "homotopy equivalence");
  }

  // determinant of the induced map on harmonic spaces, degreewise
  const auto laps_src = laplacians(f.source);
  const auto laps_tgt = laplacians(f.target);
  const QuotientSpec self = quotient(f.source.spec, 1);
  double correction = 0.0;
  for (std::size_t j = 0; j < f.maps.size(); ++j) {
    if (f.source.ranks[j] == 0 && f.target.ranks[j] == 0) continue;
    Eigen::MatrixXd ker_src =
        f.source.ranks[j] == 0
            ? Eigen::MatrixXd(0, 0)
            : kernel_basis(compress_quotient(laps_src[j], self).matrix,
                           sched.kernel_theta);
    Eigen::MatrixXd ker_tgt =
        f.target.ranks[j] == 0
            ? Eigen::MatrixXd(0, 0)
            : kernel_basis(compress_quotient(laps_tgt[j], self).matrix,
                           sched.kernel_theta);
    if (ker_src.cols() != ker_tgt.cols())
      throw NumericError(
          "mapping_cone_check: harmonic spaces of source and target differ in "
          "dimension; the map is not a homotopy equivalence");
    if (ker_src.cols() == 0) continue;
    Eigen::MatrixXd f_reg =
        compress_quotient(f.maps[j], self, /*require_symmetric=*/false).matrix;
    Eigen::MatrixXd induced = ker_tgt.transpose() * f_reg * ker_src;
    const double det = induced.determinant();
    if (std::abs(det) < 1e-12)
      throw NumericError(
          "mapping_cone_check: induced harmonic map is singular; the map is "
          "not a homotopy equivalence");
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    correction += sign * std::log(std::abs(det)) / static_cast<double>(q);
  }
  report.harmonic_correction = correction;
  report.residual = std::abs(report.log_source - report.log_target -
                             report.log_cone - correction);
  return report;
}

}  // namespace l2
