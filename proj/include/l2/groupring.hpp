#ifndef L2_GROUPRING_HPP
#define L2_GROUPRING_HPP

#include <map>
#include <utility>
#include <vector>

#include "l2/common.hpp"
#include "l2/groups.hpp"

namespace l2 {

/// Finitely supported element of the rational group ring Q[G].
/// Coefficients are exact rationals; no zero coefficients are stored.
class RingElement {
 public:
  explicit RingElement(GroupSpec spec) : spec_(std::move(spec)) {}

  static RingElement zero(const GroupSpec& spec) { return RingElement(spec); }
  static RingElement one(const GroupSpec& spec);
  static RingElement monomial(const GroupSpec& spec, const GroupElement& g,
                              const Rational& c = 1);

  const GroupSpec& spec() const { return spec_; }
  const std::map<GroupElement, Rational>& support() const { return support_; }

  /// Adds c * g, dropping the term if the coefficient cancels.
  void add_term(const GroupElement& g, const Rational& c);
  Rational coefficient(const GroupElement& g) const;

  bool is_zero() const { return support_.empty(); }
  /// True when every coefficient is an integer.
  bool is_integral() const;

  bool operator==(const RingElement& other) const {
    return spec_ == other.spec_ && support_ == other.support_;
  }
  bool operator!=(const RingElement& other) const { return !(*this == other); }

 private:
  GroupSpec spec_;
  std::map<GroupElement, Rational> support_;
};

RingElement ring_add(const RingElement& a, const RingElement& b);
RingElement ring_sub(const RingElement& a, const RingElement& b);
RingElement ring_neg(const RingElement& a);
/// Convolution product: (ab)(g) = sum_h a(h) b(h^{-1} g).
RingElement ring_mul(const RingElement& a, const RingElement& b);
RingElement ring_scale(const Rational& c, const RingElement& a);

/// Involution a*(g) = a(g^{-1}) (real coefficients).
RingElement adjoint(const RingElement& a);
bool is_symmetric(const RingElement& a);

/// Coefficient of the identity.
Rational trace_tau(const RingElement& a);
/// Sum of absolute coefficient values.
Rational l1_norm(const RingElement& a);

/// Sparse matrix over the group ring. Zero entries are not stored.
class RingMatrix {
 public:
  RingMatrix(GroupSpec spec, int rows, int cols);

  static RingMatrix identity(const GroupSpec& spec, int n);
  static RingMatrix zero(const GroupSpec& spec, int rows, int cols) {
    return RingMatrix(spec, rows, cols);
  }
  /// I + a E_{ij}, i != j.
  static RingMatrix elementary(const GroupSpec& spec, int n, int i, int j,
                               const RingElement& a);
  /// Identity with entry (i,i) replaced by (+-1) * g.
  static RingMatrix diagonal_unit(const GroupSpec& spec, int n, int i, int sign,
                                  const GroupElement& g);

  const GroupSpec& spec() const { return spec_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const std::map<std::pair<int, int>, RingElement>& entries() const {
    return entries_;
  }
  /// Entry value; a fresh zero element when unset.
  RingElement entry(int i, int j) const;
  void set_entry(int i, int j, RingElement e);

  bool is_integral() const;
  bool operator==(const RingMatrix& other) const;
  bool operator!=(const RingMatrix& other) const { return !(*this == other); }

 private:
  void check_index(int i, int j) const;
  GroupSpec spec_;
  int rows_, cols_;
  std::map<std::pair<int, int>, RingElement> entries_;
};

RingMatrix matrix_add(const RingMatrix& a, const RingMatrix& b);
RingMatrix matrix_sub(const RingMatrix& a, const RingMatrix& b);
RingMatrix matrix_neg(const RingMatrix& a);
RingMatrix matrix_mul(const RingMatrix& a, const RingMatrix& b);
/// (A*)_{ij} = (A_{ji})*.
RingMatrix matrix_adjoint(const RingMatrix& a);
bool matrix_is_symmetric(const RingMatrix& a);

/// Tr_tau(A) = sum_i tau(A_{ii}); throws on non-square input.
Rational matrix_trace_tau(const RingMatrix& a);

/// l^1 bound on the operator norm: max over columns j of sum_i |A_{ij}|_1.
double l1_bound(const RingMatrix& a);

}  // namespace l2

#endif  // L2_GROUPRING_HPP
