#ifndef L2_INVARIANTS_HPP
#define L2_INVARIANTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "l2/complexes.hpp"
#include "l2/spectral.hpp"

namespace l2 {

/// Discretization of the level limit: which compression scheme to run and at
/// which levels, plus the kernel cut and the dense-solve dimension cap.
struct Schedule {
  CompressionScheme scheme = CompressionScheme::Folner;
  std::vector<int> levels;       // strictly ascending, nonempty
  double kernel_theta = 1e-10;   // effective cut = theta * max(1, lambda_max)
  std::int64_t dimension_cap = 5000;

  int top_level() const { return levels.back(); }
  void validate() const;  // throws InputError on malformed schedules
};

/// Per-level convergence record. wall_ms is a diagnostic and is kept out of
/// the stable report format.
struct LevelStats {
  int m = 0;
  std::int64_t normalization = 0;
  std::int64_t dim = 0;
  double f_at_zero = 0.0;      // F(kernel threshold)
  double norm_log_det = 0.0;   // (1/N) sum log lambda over the positive part
  double min_pos_eig = 0.0;    // NaN when there is no positive part
  bool zero_operator = false;
  double wall_ms = 0.0;
};

/// Fuglede-Kadison determinant estimate along a schedule.
struct DetEstimate {
  std::vector<LevelStats> levels;
  std::vector<double> log_det_by_level;  // estimate per level (0.5x when squared)
  double log_det = 0.0;                  // top-level estimate
  double det = 1.0;
  double slope = 0.0;                    // last-two-level difference (NaN if one level)
  GapDiagnostics gap;                    // top level
  bool squared_route = true;
};

/// Det(A) = exp(0.5 * lim (1/N) log det of compressed A*A); with direct set
/// (A = A* required) the unsquared positive-part evaluation is used.
DetEstimate fk_determinant(const RingMatrix& a, const Schedule& sched,
                           bool direct = false, int jobs = 1);

struct DetClassDiagnostic {
  double finite_estimate = 0.0;  // (1/N) sum of log over (threshold, 1]
  double near_zero_mass = 0.0;   // F-mass in (threshold, 10*threshold]
  bool pass = false;             // false = inconclusive
};

/// Determinant-class check on a top-level density: finite partial integral
/// over the divergence-risk region plus a mass-near-zero report.
DetClassDiagnostic determinant_class_diagnostic(const SpectralDensity& s,
                                                double kernel_threshold);

struct DegreeReport {
  int degree = 0;
  int rank = 0;
  double betti = 0.0;
  double log_det_plus = 0.0;  // log Det of the positive part of Delta_j
  bool zero_operator = false;
  DetClassDiagnostic det_class;
  std::vector<LevelStats> levels;
};

struct TorsionReport {
  std::vector<DegreeReport> degrees;
  double log_torsion = 0.0;  // sum_j (-1)^j (j/2) log Det(Delta_j^+)
  bool unreliable = false;   // some determinant-class verdict was inconclusive
  std::int64_t euler_characteristic = 0;
};

TorsionReport l2_torsion(const CochainComplex& c, const Schedule& sched,
                         int jobs = 1);

/// Kernel mass F(threshold) of each Laplacian at the top level.
std::vector<double> l2_betti(const CochainComplex& c, const Schedule& sched,
                             int jobs = 1);

/// One factor of an explicit unit product: an elementary matrix I + a E_{ij}
/// with integral a, or a diagonal unit (+-g) at a given index.
struct UnitFactor {
  enum class Kind { Elementary, DiagonalUnit };
  Kind kind = Kind::Elementary;
  // Elementary
  int row = 0, col = 0;
  std::optional<RingElement> value;
  // DiagonalUnit
  int index = 0;
  int sign = 1;
  GroupElement element;
};

/// Invertible-by-construction matrix over Z[G], kept in product form.
struct UnitProduct {
  GroupSpec spec;
  int size = 0;
  std::vector<UnitFactor> factors;
};

/// Exact expansion of the product; rejects non-integral elementary values.
RingMatrix expand_unit_product(const UnitProduct& p);

/// Det estimate of the expanded unit product; the expected limit is 1.
DetEstimate whitehead_det(const UnitProduct& p, const Schedule& sched,
                          int jobs = 1);

struct ConeCheckReport {
  double log_source = 0.0;
  double log_target = 0.0;
  double log_cone = 0.0;
  /// Exact mode only: sum_j (-1)^j log Det of the map induced on harmonic
  /// spaces; zero in schedule mode.
  double harmonic_correction = 0.0;
  double residual = 0.0;
  std::vector<double> cone_betti;
  bool exact_mode = false;
};

/// Torsion additivity check for a chain homotopy equivalence f : C -> C':
/// residual of log tor(C) - log tor(C') - log tor(cone f), with the
/// harmonic-volume identification computed exactly in finite-group mode.
ConeCheckReport mapping_cone_check(const ChainMap& f, const Schedule& sched,
                                   bool exact_mode, int jobs = 1);

}  // namespace l2

#endif  // L2_INVARIANTS_HPP
