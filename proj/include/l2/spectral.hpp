#ifndef L2_SPECTRAL_HPP
#define L2_SPECTRAL_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <optional>

#include "l2/groupring.hpp"

namespace l2 {

enum class CompressionScheme { Folner, Quotient };

/// Finite symmetric matrix obtained from a group-ring matrix by a Folner
/// window or a finite quotient. Entries come from exact rationals and are
/// rounded to double exactly once.
struct Compression {
  CompressionScheme scheme = CompressionScheme::Folner;
  int level = 0;
  std::int64_t normalization = 0;  // N_m, resp. |quotient|
  int block_rank = 0;              // rows of the source matrix
  Eigen::MatrixXd matrix;          // dimension block_rank * normalization

  std::int64_t dim() const { return matrix.rows(); }
};

/// Scalar block [g,h] of entry (i,j) is the coefficient of A_{ij} at g^{-1}h,
/// g,h in the window. Requires A = A* when require_symmetric is set.
Compression compress_folner(const RingMatrix& a, const FolnerSet& window,
                            bool require_symmetric = true);

/// Pushforward of A to the finite quotient, acting on l^2 of the quotient
/// group. The projection must be injective on each entry's support together
/// with the identity; a collision raises NumericError naming the pair.
Compression compress_quotient(const RingMatrix& a, const QuotientSpec& q,
                              bool require_symmetric = true);

/// Normalized eigenvalue counting data of a compression.
struct SpectralDensity {
  Eigen::VectorXd eigenvalues;  // ascending
  std::int64_t normalization = 0;
  int block_rank = 0;

  /// F(lambda) = #{eigenvalues <= lambda} / normalization.
  double value(double lambda) const;
  std::int64_t count_leq(double lambda) const;
  double lambda_max() const {
    return eigenvalues.size() ? eigenvalues[eigenvalues.size() - 1] : 0.0;
  }
  double lambda_min() const { return eigenvalues.size() ? eigenvalues[0] : 0.0; }
};

/// Dense symmetric eigensolve (deterministic); rejects dimensions above the
/// cap and non-finite entries, and cross-checks the eigenvalue sum against
/// the matrix trace.
SpectralDensity eigenvalues(const Compression& c, std::int64_t dimension_cap = 5000);

/// Effective kernel cut: theta * max(1, lambda_max).
double effective_threshold(const SpectralDensity& s, double theta);

/// (1/N) * sum of log(lambda) over eigenvalues above the kernel threshold.
/// Empty optional signals the zero operator (no positive part).
std::optional<double> normalized_log_det_positive(const SpectralDensity& s,
                                                  double kernel_threshold);

struct GapDiagnostics {
  double k_sq = 0.0;            // bound used for the check (l^1 bound)
  double spectral_floor = 0.0;  // least eigenvalue above the kernel cut (NaN if none)
  bool gap_ok = false;          // no eigenvalue in (threshold, 1/k_sq)
};

/// Checks F(lambda) = F(0) for lambda < 1/k_sq, up to the kernel threshold.
GapDiagnostics gap_check(const SpectralDensity& s, double k_sq,
                         double kernel_threshold);

}  // namespace l2

#endif  // L2_SPECTRAL_HPP
