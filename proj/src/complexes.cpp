#include "l2/complexes.hpp"

#include <sstream>

namespace l2 {

RingMatrix CochainComplex::differential(int j) const {
  if (j >= 0 && j < static_cast<int>(differentials.size())) return differentials[j];
  int from = (j >= 0 && j < static_cast<int>(ranks.size())) ? ranks[j] : 0;
  int to = (j + 1 >= 0 && j + 1 < static_cast<int>(ranks.size())) ? ranks[j + 1] : 0;
  return RingMatrix::zero(spec, to, from);
}

std::optional<ComplexViolation> validate(const CochainComplex& c) {
  const int n = static_cast<int>(c.ranks.size());
  if (n == 0) return ComplexViolation{0, "complex has no degrees"};
  for (int r : c.ranks)
    if (r < 0) return ComplexViolation{0, "negative rank"};
  if (static_cast<int>(c.differentials.size()) != n - 1)
    return ComplexViolation{0, "expected " + std::to_string(n - 1) + " differentials, got " +
                                   std::to_string(c.differentials.size())};
  for (int j = 0; j + 1 < n; ++j) {
    const RingMatrix& d = c.differentials[j];
    if (d.spec() != c.spec)
      return ComplexViolation{j, "differential group spec mismatch"};
    if (d.rows() != c.ranks[j + 1] || d.cols() != c.ranks[j]) {
      std::ostringstream os;
      os << "differential d^" << j << " has shape " << d.rows() << "x" << d.cols()
         << ", expected " << c.ranks[j + 1] << "x" << c.ranks[j];
      return ComplexViolation{j, os.str()};
    }
  }
  for (int j = 0; j + 2 < n; ++j) {
    RingMatrix dd = matrix_mul(c.differentials[j + 1], c.differentials[j]);
    for (const auto& [ij, e] : dd.entries()) {
      if (!e.is_zero()) {
        std::ostringstream os;
        os << "d∘d != 0 at degree " << j << ", block entry (" << ij.first << ","
           << ij.second << ")";
        return ComplexViolation{j, os.str()};
      }
    }
  }
  return std::nullopt;
}

void require_valid(const CochainComplex& c) {
  if (auto v = validate(c))
    throw InputError("invalid complex: " + v->message +
                     " (degree " + std::to_string(v->degree) + ")");
}

std::vector<RingMatrix> laplacians(const CochainComplex& c) {
  require_valid(c);
  std::vector<RingMatrix> out;
  const int n = static_cast<int>(c.ranks.size());
  out.reserve(n);
  for (int j = 0; j < n; ++j) {
    RingMatrix lap = RingMatrix::zero(c.spec, c.ranks[j], c.ranks[j]);
    if (j < n - 1) {
      const RingMatrix& d = c.differentials[j];
      lap = matrix_add(lap, matrix_mul(matrix_adjoint(d), d));
    }
    if (j > 0) {
      const RingMatrix& d = c.differentials[j - 1];
      lap = matrix_add(lap, matrix_mul(d, matrix_adjoint(d)));
    }
    out.push_back(std::move(lap));
  }
  return out;
}

std::int64_t euler_characteristic(const CochainComplex& c) {
  std::int64_t chi = 0;
  for (std::size_t j = 0; j < c.ranks.size(); ++j)
    chi += (j % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(c.ranks[j]);
  return chi;
}

bool is_chain_map(const ChainMap& f) {
  if (f.source.spec != f.target.spec) return false;
  if (validate(f.source) || validate(f.target)) return false;
  const int n = static_cast<int>(f.source.ranks.size());
  if (static_cast<int>(f.maps.size()) != n) return false;
  for (int j = 0; j < n; ++j) {
    if (f.maps[j].rows() != f.target.ranks[j] || f.maps[j].cols() != f.source.ranks[j])
      return false;
    if (f.maps[j].spec() != f.source.spec) return false;
  }
  // f d = d' f degreewise
  for (int j = 0; j + 1 < n; ++j) {
    if (j + 1 >= static_cast<int>(f.target.ranks.size())) return false;
    RingMatrix lhs = matrix_mul(f.maps[j + 1], f.source.differentials[j]);
    RingMatrix rhs = matrix_mul(f.target.differential(j), f.maps[j]);
    if (lhs != rhs) return false;
  }
  return true;
}

CochainComplex mapping_cone(const ChainMap& f) {
  if (!is_chain_map(f)) throw InputError("mapping_cone: input is not a chain map");
  const CochainComplex& C = f.source;
  const CochainComplex& Cp = f.target;
  auto rank_of = [](const CochainComplex& c, int j) {
    return (j >= 0 && j < static_cast<int>(c.ranks.size())) ? c.ranks[j] : 0;
  };
  const int top = std::max(C.top_degree(), Cp.top_degree() + 1);

  CochainComplex cone;
  cone.spec = C.spec;
  for (int j = 0; j <= top; ++j)
    cone.ranks.push_back(rank_of(Cp, j - 1) + rank_of(C, j));
  for (int j = 0; j < top; ++j) {
    // blocks: target is C'^j (+) C^{j+1}, source is C'^{j-1} (+) C^j
    int rt = rank_of(Cp, j), rb = rank_of(C, j + 1);
    int cl = rank_of(Cp, j - 1), cr = rank_of(C, j);
    RingMatrix d(cone.spec, rt + rb, cl + cr);
    if (cl > 0 && rt > 0) {
      RingMatrix dp = Cp.differential(j - 1);
      for (const auto& [ij, e] : dp.entries())
        d.set_entry(ij.first, ij.second, ring_neg(e));
    }
    if (cr > 0 && rt > 0 && j < static_cast<int>(f.maps.size())) {
      const RingMatrix& fj = f.maps[j];
      for (const auto& [ij, e] : fj.entries())
        d.set_entry(ij.first, cl + ij.second, e);
    }
    if (cr > 0 && rb > 0) {
      RingMatrix dj = C.differential(j);
      for (const auto& [ij, e] : dj.entries())
        d.set_entry(rt + ij.first, cl + ij.second, e);
    }
    cone.differentials.push_back(std::move(d));
  }
  require_valid(cone);
  return cone;
}

}  // namespace l2
