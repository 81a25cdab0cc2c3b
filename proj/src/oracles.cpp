#include "l2/oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "l2/spectral.hpp"

namespace l2 {

LaurentPolynomial from_ring_element(const RingElement& a) {
  if (a.spec().kind() != GroupSpec::Kind::FreeAbelian)
    throw InputError("from_ring_element: free abelian group required");
  LaurentPolynomial p;
  p.vars = a.spec().rank();
  for (const auto& [g, c] : a.support()) p.support[g] = c;
  return p;
}

namespace {

/// p evaluated at (e^{2 pi i k_1/G}, ..., e^{2 pi i k_d/G}).
std::complex<double> eval_at_node(const LaurentPolynomial& p,
                                  const std::vector<std::complex<double>>& roots,
                                  const std::vector<int>& node, int grid) {
  std::complex<double> acc = 0.0;
  for (const auto& [expo, coeff] : p.support) {
    std::int64_t phase = 0;
    for (int v = 0; v < p.vars; ++v) {
      std::int64_t e = ((expo[v] % grid) + grid) % grid;
      phase = (phase + e * node[v]) % grid;
    }
    acc += to_double(coeff) * roots[static_cast<std::size_t>(phase)];
  }
  return acc;
}

}  // namespace

double mahler_jensen(const LaurentPolynomial& p) {
  if (p.vars != 1) throw InputError("mahler_jensen: one variable required");
  if (p.is_zero()) throw InputError("mahler_jensen: zero polynomial");
  // strip the monomial factor t^k (Mahler measure 1)
  std::int64_t lo = p.support.begin()->first[0];
  std::int64_t hi = p.support.rbegin()->first[0];
  const int deg = static_cast<int>(hi - lo);
  std::vector<double> coeff(static_cast<std::size_t>(deg) + 1, 0.0);
  for (const auto& [expo, c] : p.support)
    coeff[static_cast<std::size_t>(expo[0] - lo)] = to_double(c);
  if (deg == 0) return std::abs(coeff[0]);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeff[i] / coeff[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw NumericError("companion-matrix eigensolve failed");
  double measure = std::abs(coeff[deg]);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    measure *= std::max(1.0, std::abs(solver.eigenvalues()[i]));
  return measure;
}

MahlerResult mahler_measure(const LaurentPolynomial& p, int grid) {
  if (p.is_zero()) throw InputError("mahler_measure: zero polynomial");
  if (grid < 64) throw InputError("mahler_measure: grid must be >= 64");
  for (const auto& [expo, c] : p.support)
    if (static_cast<int>(expo.size()) != p.vars)
      throw InputError("mahler_measure: exponent arity mismatch");

  std::vector<std::complex<double>> roots(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) {
    double t = 2.0 * std::numbers::pi * k / grid;
    roots[static_cast<std::size_t>(k)] = {std::cos(t), std::sin(t)};
  }
  Rational scale_r = 0;
  for (const auto& [expo, c] : p.support) scale_r += abs(c);
  const double tiny = 1e-6 * to_double(scale_r);

  double acc = 0.0;
  std::int64_t used = 0, skipped = 0;
  std::vector<int> node(static_cast<std::size_t>(p.vars), 0);
  for (;;) {
    const double v = std::abs(eval_at_node(p, roots, node, grid));
    if (v < tiny) {
      if (p.vars == 1) {
        MahlerResult r;
        r.value = mahler_jensen(p);
        r.used_jensen = true;
        return r;
      }
      ++skipped;
    } else {
      acc += std::log(v);
      ++used;
    }
    int i = p.vars - 1;
    while (i >= 0 && ++node[static_cast<std::size_t>(i)] == grid)
      node[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
  }
  if (used == 0) throw NumericError("mahler_measure: no usable grid nodes");
  MahlerResult r;
  r.value = std::exp(acc / static_cast<double>(used));
  r.low_precision = skipped > 0;
  return r;
}

FiniteGroupDet finite_group_det(const RingMatrix& a, bool assert_invertible,
                                std::int64_t dimension_cap) {
  if (!a.spec().is_finite())
    throw InputError("finite_group_det: finite group required");
  if (!a.is_square()) throw InputError("finite_group_det: square matrix required");
  const std::int64_t q = a.spec().order();

  // regular representation R(A), then spectrum of R(A)^T R(A)
  Compression reg = compress_quotient(a, quotient(a.spec(), 1),
                                      /*require_symmetric=*/false);
  Compression h;
  h.scheme = CompressionScheme::Quotient;
  h.level = 1;
  h.normalization = reg.normalization;
  h.block_rank = reg.block_rank;
  h.matrix = reg.matrix.transpose() * reg.matrix;
  SpectralDensity s = eigenvalues(h, dimension_cap);

  const double threshold = effective_threshold(s, 1e-10);
  FiniteGroupDet out;
  double acc = 0.0;
  std::int64_t kernel = 0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double ev = s.eigenvalues[i];
    if (ev <= threshold)
      ++kernel;
    else
      acc += std::log(ev);
  }
  out.kernel_dim_tau = static_cast<double>(kernel) / static_cast<double>(q);
  out.positive_part = std::exp(acc / (2.0 * static_cast<double>(q)));
  out.singular = kernel > 0;
  out.value = out.singular ? 0.0 : out.positive_part;
  if (out.singular && assert_invertible)
    throw NumericError("finite_group_det: matrix is singular");
  return out;
}

}  // namespace l2
