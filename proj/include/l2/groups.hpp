#ifndef L2_GROUPS_HPP
#define L2_GROUPS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "l2/common.hpp"

namespace l2 {

/// Coordinates of a group element in the normal form of its spec:
/// a Z^d vector, residues, a Heisenberg triple (a,b,c), or the
/// concatenation of factor coordinates for a product.
using GroupElement = std::vector<std::int64_t>;

/// Description of one of the supported groups. Immutable.
class GroupSpec {
 public:
  enum class Kind {
    FreeAbelian,    // Z^d
    FiniteCyclic,   // Z/n
    FiniteAbelian,  // Z/f1 x ... x Z/fk
    Heisenberg,     // integer Heisenberg group H_3(Z)
    HeisenbergMod,  // Heisenberg triples mod m (finite, order m^3)
    Product,        // direct product of specs
  };

  static GroupSpec free_abelian(int d);
  static GroupSpec finite_cyclic(std::int64_t n);
  static GroupSpec finite_abelian(std::vector<std::int64_t> factors);
  static GroupSpec heisenberg();
  static GroupSpec heisenberg_mod(std::int64_t m);
  static GroupSpec product(std::vector<GroupSpec> factors);

  Kind kind() const { return kind_; }
  /// Number of integer coordinates of an element.
  int rank() const;
  bool is_finite() const;
  /// Number of elements; throws InputError for infinite specs.
  std::int64_t order() const;

  int dimension() const;                                 // FreeAbelian
  std::int64_t modulus() const;                          // FiniteCyclic / HeisenbergMod
  const std::vector<std::int64_t>& abelian_factors() const;  // FiniteAbelian
  const std::vector<GroupSpec>& factors() const;             // Product

  bool operator==(const GroupSpec& other) const;
  bool operator!=(const GroupSpec& other) const { return !(*this == other); }

  std::string describe() const;

 private:
  GroupSpec() = default;
  Kind kind_ = Kind::FreeAbelian;
  std::int64_t param_ = 0;
  std::vector<std::int64_t> ints_;
  std::vector<GroupSpec> subs_;
};

GroupElement identity(const GroupSpec& spec);
bool is_valid(const GroupSpec& spec, const GroupElement& g);
/// Throws InputError on shape mismatch with the spec.
void check_element(const GroupSpec& spec, const GroupElement& g);

/// Group product in normal form. Heisenberg rule:
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b').
GroupElement compose(const GroupSpec& spec, const GroupElement& g,
                     const GroupElement& h);
GroupElement inverse(const GroupSpec& spec, const GroupElement& g);

/// Standard word-metric generators together with their inverses.
/// +-e_i for abelian specs, the two horizontal generators for Heisenberg.
std::vector<GroupElement> generators(const GroupSpec& spec);

/// All elements of a finite spec, in lexicographic coordinate order.
std::vector<GroupElement> enumerate_elements(const GroupSpec& spec);

/// A finite truncation window X_m with element order fixed and invertible.
struct FolnerSet {
  GroupSpec spec;
  std::vector<GroupElement> elements;
  std::map<GroupElement, int> index;  // inverse of `elements`
  int m = 0;

  std::int64_t size() const { return static_cast<std::int64_t>(elements.size()); }
  /// Position of g in the window, -1 when outside.
  int position(const GroupElement& g) const;
};

/// Boxes: {0..m-1}^d for Z^d, {0..m-1}^2 x {0..m^2-1} for Heisenberg,
/// the whole group for finite specs, factor-wise products for products.
FolnerSet folner_set(const GroupSpec& spec, int m);

/// Fraction of window elements within word distance delta of the complement,
/// as an exact rational #boundary / #X_m.
Rational boundary_fraction(const GroupSpec& spec, int m, int delta = 1);

/// A finite quotient of the spec together with its projection rule.
struct QuotientSpec {
  GroupSpec source;
  GroupSpec quotient;  // finite
  int level = 0;

  GroupElement project(const GroupElement& g) const;
};

/// Coordinatewise reduction mod m: Z^d -> (Z/m)^d, Heisenberg -> triples
/// mod m with the same multiplication, finite specs map to themselves.
QuotientSpec quotient(const GroupSpec& spec, int m);

}  // namespace l2

#endif  // L2_GROUPS_HPP
