#include "l2/groupring.hpp"

#include <algorithm>

namespace l2 {

namespace {

void check_same_spec(const GroupSpec& a, const GroupSpec& b) {
  if (a != b) throw InputError("group spec mismatch between ring values");
}

}  // namespace

RingElement RingElement::one(const GroupSpec& spec) {
  return monomial(spec, identity(spec));
}

RingElement RingElement::monomial(const GroupSpec& spec, const GroupElement& g,
                                  const Rational& c) {
  RingElement e(spec);
  e.add_term(g, c);
  return e;
}

void RingElement::add_term(const GroupElement& g, const Rational& c) {
  if (c == 0) return;
  check_element(spec_, g);
  auto [it, inserted] = support_.try_emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) support_.erase(it);
  }
}

Rational RingElement::coefficient(const GroupElement& g) const {
  auto it = support_.find(g);
  return it == support_.end() ? Rational(0) : it->second;
}

bool RingElement::is_integral() const {
  return std::all_of(support_.begin(), support_.end(), [](const auto& kv) {
    return l2::is_integral(kv.second);
  });
}

RingElement ring_add(const RingElement& a, const RingElement& b) {
  check_same_spec(a.spec(), b.spec());
  RingElement out = a;
  for (const auto& [g, c] : b.support()) out.add_term(g, c);
  return out;
}

RingElement ring_sub(const RingElement& a, const RingElement& b) {
  check_same_spec(a.spec(), b.spec());
  RingElement out = a;
  for (const auto& [g, c] : b.support()) out.add_term(g, -c);
  return out;
}

RingElement ring_neg(const RingElement& a) {
  RingElement out(a.spec());
  for (const auto& [g, c] : a.support()) out.add_term(g, -c);
  return out;
}

RingElement ring_mul(const RingElement& a, const RingElement& b) {
  check_same_spec(a.spec(), b.spec());
  RingElement out(a.spec());
  for (const auto& [g, c] : a.support())
    for (const auto& [h, d] : b.support())
      out.add_term(compose(a.spec(), g, h), c * d);
  return out;
}

RingElement ring_scale(const Rational& c, const RingElement& a) {
  RingElement out(a.spec());
  for (const auto& [g, v] : a.support()) out.add_term(g, c * v);
  return out;
}

RingElement adjoint(const RingElement& a) {
  RingElement out(a.spec());
  for (const auto& [g, c] : a.support()) out.add_term(inverse(a.spec(), g), c);
  return out;
}

bool is_symmetric(const RingElement& a) { return a == adjoint(a); }

Rational trace_tau(const RingElement& a) {
  return a.coefficient(identity(a.spec()));
}

Rational l1_norm(const RingElement& a) {
  Rational s = 0;
  for (const auto& [g, c] : a.support()) s += abs(c);
  return s;
}

RingMatrix::RingMatrix(GroupSpec spec, int rows, int cols)
    : spec_(std::move(spec)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InputError("RingMatrix: negative shape");
}

RingMatrix RingMatrix::identity(const GroupSpec& spec, int n) {
  RingMatrix m(spec, n, n);
  for (int i = 0; i < n; ++i) m.set_entry(i, i, RingElement::one(spec));
  return m;
}

RingMatrix RingMatrix::elementary(const GroupSpec& spec, int n, int i, int j,
                                  const RingElement& a) {
  if (i == j) throw InputError("elementary: off-diagonal position required");
  RingMatrix m = identity(spec, n);
  m.set_entry(i, j, a);
  return m;
}

RingMatrix RingMatrix::diagonal_unit(const GroupSpec& spec, int n, int i,
                                     int sign, const GroupElement& g) {
  if (sign != 1 && sign != -1) throw InputError("diagonal_unit: sign must be +-1");
  RingMatrix m = identity(spec, n);
  m.set_entry(i, i, RingElement::monomial(spec, g, Rational(sign)));
  return m;
}

void RingMatrix::check_index(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw InputError("RingMatrix: index out of bounds");
}

RingElement RingMatrix::entry(int i, int j) const {
  check_index(i, j);
  auto it = entries_.find({i, j});
  return it == entries_.end() ? RingElement::zero(spec_) : it->second;
}

void RingMatrix::set_entry(int i, int j, RingElement e) {
  check_index(i, j);
  check_same_spec(spec_, e.spec());
  if (e.is_zero())
    entries_.erase({i, j});
  else
    entries_.insert_or_assign({i, j}, std::move(e));
}

bool RingMatrix::is_integral() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& kv) { return kv.second.is_integral(); });
}

bool RingMatrix::operator==(const RingMatrix& other) const {
  return spec_ == other.spec_ && rows_ == other.rows_ && cols_ == other.cols_ &&
         entries_ == other.entries_;
}

RingMatrix matrix_add(const RingMatrix& a, const RingMatrix& b) {
  check_same_spec(a.spec(), b.spec());
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("matrix_add: dimension mismatch");
  RingMatrix out = a;
  for (const auto& [ij, e] : b.entries())
    out.set_entry(ij.first, ij.second, ring_add(out.entry(ij.first, ij.second), e));
  return out;
}

RingMatrix matrix_sub(const RingMatrix& a, const RingMatrix& b) {
  return matrix_add(a, matrix_neg(b));
}

RingMatrix matrix_neg(const RingMatrix& a) {
  RingMatrix out(a.spec(), a.rows(), a.cols());
  for (const auto& [ij, e] : a.entries()) out.set_entry(ij.first, ij.second, ring_neg(e));
  return out;
}

RingMatrix matrix_mul(const RingMatrix& a, const RingMatrix& b) {
  check_same_spec(a.spec(), b.spec());
  if (a.cols() != b.rows()) throw InputError("matrix_mul: dimension mismatch");
  RingMatrix out(a.spec(), a.rows(), b.cols());
  std::map<std::pair<int, int>, RingElement> acc;
  for (const auto& [ik, e] : a.entries())
    for (const auto& [kj, f] : b.entries()) {
      if (ik.second != kj.first) continue;
      auto key = std::make_pair(ik.first, kj.second);
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(key, ring_mul(e, f));
      else
        it->second = ring_add(it->second, ring_mul(e, f));
    }
  for (auto& [ij, e] : acc) out.set_entry(ij.first, ij.second, std::move(e));
  return out;
}

RingMatrix matrix_adjoint(const RingMatrix& a) {
  RingMatrix out(a.spec(), a.cols(), a.rows());
  for (const auto& [ij, e] : a.entries())
    out.set_entry(ij.second, ij.first, adjoint(e));
  return out;
}

bool matrix_is_symmetric(const RingMatrix& a) {
  return a.is_square() && a == matrix_adjoint(a);
}

Rational matrix_trace_tau(const RingMatrix& a) {
  if (!a.is_square()) throw InputError("matrix_trace_tau: non-square matrix");
  Rational s = 0;
  for (int i = 0; i < a.rows(); ++i) s += trace_tau(a.entry(i, i));
  return s;
}

double l1_bound(const RingMatrix& a) {
  Rational best = 0;
  for (int j = 0; j < a.cols(); ++j) {
    Rational col = 0;
    for (int i = 0; i < a.rows(); ++i) col += l1_norm(a.entry(i, j));
    best = std::max(best, col);
  }
  return to_double(best);
}

}  // namespace l2
