#ifndef L2_COMPLEXES_HPP
#define L2_COMPLEXES_HPP

#include <optional>
#include <string>
#include <vector>

#include "l2/groupring.hpp"

namespace l2 {

/// Finite cochain complex of free based modules: ranks n_0..n_N and
/// differentials d^j of shape n_{j+1} x n_j (differentials raise degree).
struct CochainComplex {
  GroupSpec spec;
  std::vector<int> ranks;
  std::vector<RingMatrix> differentials;

  int top_degree() const { return static_cast<int>(ranks.size()) - 1; }
  RingMatrix differential(int j) const;  // zero matrix outside 0..N-1
};

/// Location of the first failing block of the d∘d = 0 check.
struct ComplexViolation {
  int degree;
  std::string message;
};

/// Exact shape and d∘d = 0 validation. Empty optional means the complex is ok.
std::optional<ComplexViolation> validate(const CochainComplex& c);
/// Throws InputError carrying the violation when the complex is invalid.
void require_valid(const CochainComplex& c);

/// Per-degree combinatorial Laplacians (d^j)* d^j + d^{j-1} (d^{j-1})*.
std::vector<RingMatrix> laplacians(const CochainComplex& c);

/// Alternating sum of ranks.
std::int64_t euler_characteristic(const CochainComplex& c);

/// Per-degree maps f_j : source^j -> target^j commuting with differentials.
struct ChainMap {
  CochainComplex source;
  CochainComplex target;
  std::vector<RingMatrix> maps;
};

bool is_chain_map(const ChainMap& f);

/// Mapping cone of f : C -> C'. Degree j of the cone is C'^{j-1} (+) C^j with
/// block differential [[-d', f], [0, d]]; the sign convention is fixed
/// project-wide.
CochainComplex mapping_cone(const ChainMap& f);

}  // namespace l2

#endif  // L2_COMPLEXES_HPP
