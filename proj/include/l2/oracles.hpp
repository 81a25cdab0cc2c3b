#ifndef L2_ORACLES_HPP
#define L2_ORACLES_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "l2/groupring.hpp"

namespace l2 {

/// Laurent polynomial in d variables with rational coefficients; mirrors a
/// RingElement over free_abelian(d).
struct LaurentPolynomial {
  int vars = 1;
  std::map<std::vector<std::int64_t>, Rational> support;

  bool is_zero() const { return support.empty(); }
};

LaurentPolynomial from_ring_element(const RingElement& a);

struct MahlerResult {
  double value = 0.0;
  bool used_jensen = false;   // d = 1 fallback when the grid meets a zero
  bool low_precision = false; // d >= 2 with near-zeros skipped
};

/// exp of the trapezoidal average of log|p| over a uniform torus grid.
/// Polynomials with (near-)zeros on the torus are routed through Jensen's
/// formula in one variable; in higher dimension the singular nodes are
/// skipped and the result flagged low-precision.
MahlerResult mahler_measure(const LaurentPolynomial& p, int grid = 4096);

/// Jensen's formula in one variable: |leading coefficient| times the product
/// of root moduli outside the unit circle. Roots via the companion matrix.
double mahler_jensen(const LaurentPolynomial& p);

struct FiniteGroupDet {
  double value = 0.0;          // |det R(A)|^{1/q}; 0 when singular
  double positive_part = 1.0;  // determinant of the positive part
  double kernel_dim_tau = 0.0; // tau-dimension of the kernel
  bool singular = false;
};

/// Exact regular-representation determinant for a matrix over a finite
/// group: |det of the (nq x nq) matrix|^{1/q}, evaluated spectrally from the
/// exact rational expansion. With assert_invertible, a singular matrix
/// raises NumericError.
FiniteGroupDet finite_group_det(const RingMatrix& a, bool assert_invertible = false,
                                std::int64_t dimension_cap = 5000);

}  // namespace l2

#endif  // L2_ORACLES_HPP
