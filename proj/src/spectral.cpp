#include "l2/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace l2 {

namespace {

void check_spectral_input(const RingMatrix& a, bool require_symmetric) {
  if (require_symmetric) {
    if (!a.is_square()) throw InputError("compression: matrix must be square");
    if (!matrix_is_symmetric(a))
      throw InputError("compression: matrix must satisfy A = A* for spectral use");
  }
}

std::string element_str(const GroupElement& g) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
  os << "]";
  return os.str();
}

}  // namespace

Compression compress_folner(const RingMatrix& a, const FolnerSet& window,
                            bool require_symmetric) {
  check_spectral_input(a, require_symmetric);
  if (a.spec() != window.spec)
    throw InputError("compress_folner: window group differs from matrix group");
  const std::int64_t n_window = window.size();
  const int n = a.rows();
  Compression c;
  c.scheme = CompressionScheme::Folner;
  c.level = window.m;
  c.normalization = n_window;
  c.block_rank = n;
  c.matrix = Eigen::MatrixXd::Zero(n * n_window, a.cols() * n_window);
  for (const auto& [ij, e] : a.entries()) {
    const std::int64_t ri = static_cast<std::int64_t>(ij.first) * n_window;
    const std::int64_t cj = static_cast<std::int64_t>(ij.second) * n_window;
    for (const auto& [s, coeff] : e.support()) {
      const double v = to_double(coeff);
      for (std::int64_t p = 0; p < n_window; ++p) {
        int q = window.position(compose(a.spec(), window.elements[p], s));
        if (q >= 0) c.matrix(ri + p, cj + q) += v;
      }
    }
  }
  return c;
}

Compression compress_quotient(const RingMatrix& a, const QuotientSpec& q,
                              bool require_symmetric) {
  check_spectral_input(a, require_symmetric);
  if (a.spec() != q.source)
    throw InputError("compress_quotient: quotient source differs from matrix group");
  // faithfulness at this level: projection injective on support + identity
  const GroupElement id = identity(q.source);
  for (const auto& [ij, e] : a.entries()) {
    std::map<GroupElement, GroupElement> image;
    auto probe = [&](const GroupElement& s) {
      auto [it, inserted] = image.try_emplace(q.project(s), s);
      if (!inserted && it->second != s) {
        std::ostringstream os;
        os << "support collision at quotient level " << q.level << ": elements "
           << element_str(it->second) << " and " << element_str(s)
           << " collide in entry (" << ij.first << "," << ij.second
           << "); raise the level";
        throw NumericError(os.str());
      }
    };
    probe(id);
    for (const auto& [s, coeff] : e.support()) probe(s);
  }

  const auto elems = enumerate_elements(q.quotient);
  std::map<GroupElement, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i)
    index[elems[i]] = static_cast<int>(i);
  const std::int64_t order = static_cast<std::int64_t>(elems.size());
  const int n = a.rows();

  Compression c;
  c.scheme = CompressionScheme::Quotient;
  c.level = q.level;
  c.normalization = order;
  c.block_rank = n;
  c.matrix = Eigen::MatrixXd::Zero(n * order, a.cols() * order);
  for (const auto& [ij, e] : a.entries()) {
    const std::int64_t ri = static_cast<std::int64_t>(ij.first) * order;
    const std::int64_t cj = static_cast<std::int64_t>(ij.second) * order;
    for (const auto& [s, coeff] : e.support()) {
      const GroupElement sbar = q.project(s);
      const double v = to_double(coeff);
      for (std::int64_t p = 0; p < order; ++p) {
        int pos = index.at(compose(q.quotient, elems[p], sbar));
        c.matrix(ri + p, cj + pos) += v;
      }
    }
  }
  return c;
}

double SpectralDensity::value(double lambda) const {
  return static_cast<double>(count_leq(lambda)) /
         static_cast<double>(normalization);
}

std::int64_t SpectralDensity::count_leq(double lambda) const {
  const double* begin = eigenvalues.data();
  const double* end = begin + eigenvalues.size();
  return std::upper_bound(begin, end, lambda) - begin;
}

SpectralDensity eigenvalues(const Compression& c, std::int64_t dimension_cap) {
  if (c.dim() > dimension_cap) {
    std::ostringstream os;
    os << "compression dimension " << c.dim() << " exceeds cap " << dimension_cap;
    throw ResourceError(os.str());
  }
  if (!c.matrix.allFinite())
    throw NumericError("compression matrix has non-finite entries");
  SpectralDensity s;
  s.normalization = c.normalization;
  s.block_rank = c.block_rank;
  if (c.dim() == 0) {
    s.eigenvalues = Eigen::VectorXd();
    return s;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c.matrix,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("symmetric eigensolver failed to converge");
  s.eigenvalues = solver.eigenvalues();
  const double sum = s.eigenvalues.sum();
  const double trace = c.matrix.trace();
  const double scale = std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
  if (std::abs(sum - trace) > 1e-8 * static_cast<double>(c.dim()) * scale)
    throw NumericError("eigenvalue sum inconsistent with matrix trace");
  return s;
}

double effective_threshold(const SpectralDensity& s, double theta) {
  return theta * std::max(1.0, s.lambda_max());
}

std::optional<double> normalized_log_det_positive(const SpectralDensity& s,
                                                  double kernel_threshold) {
  double acc = 0.0;
  std::int64_t kept = 0;
  for (Eigen::Index i = s.eigenvalues.size() - 1; i >= 0; --i) {
    const double ev = s.eigenvalues[i];
    if (ev <= kernel_threshold) break;
    acc += std::log(ev);
    ++kept;
  }
  if (kept == 0) return std::nullopt;
  return acc / static_cast<double>(s.normalization);
}

GapDiagnostics gap_check(const SpectralDensity& s, double k_sq,
                         double kernel_threshold) {
  if (k_sq <= 0) throw InputError("gap_check: bound must be positive");
  GapDiagnostics d;
  d.k_sq = k_sq;
  d.spectral_floor = std::numeric_limits<double>::quiet_NaN();
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues[i] > kernel_threshold) {
      d.spectral_floor = s.eigenvalues[i];
      break;
    }
  }
  const double gap_edge = 1.0 / k_sq;
  d.gap_ok = std::isnan(d.spectral_floor) || d.spectral_floor >= gap_edge;
  return d;
}

}  // namespace l2
