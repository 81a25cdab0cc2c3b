#include "l2/groups.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace l2 {

namespace {

std::int64_t positive_mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

GroupSpec GroupSpec::free_abelian(int d) {
  if (d < 1) throw InputError("free_abelian: dimension must be >= 1");
  GroupSpec s;
  s.kind_ = Kind::FreeAbelian;
  s.param_ = d;
  return s;
}

GroupSpec GroupSpec::finite_cyclic(std::int64_t n) {
  if (n < 1) throw InputError("finite_cyclic: order must be >= 1");
  GroupSpec s;
  s.kind_ = Kind::FiniteCyclic;
  s.param_ = n;
  return s;
}

GroupSpec GroupSpec::finite_abelian(std::vector<std::int64_t> factors) {
  if (factors.empty()) throw InputError("finite_abelian: needs at least one factor");
  for (auto f : factors)
    if (f < 1) throw InputError("finite_abelian: factors must be >= 1");
  GroupSpec s;
  s.kind_ = Kind::FiniteAbelian;
  s.ints_ = std::move(factors);
  return s;
}

GroupSpec GroupSpec::heisenberg() {
  GroupSpec s;
  s.kind_ = Kind::Heisenberg;
  return s;
}

GroupSpec GroupSpec::heisenberg_mod(std::int64_t m) {
  if (m < 1) throw InputError("heisenberg_mod: modulus must be >= 1");
  GroupSpec s;
  s.kind_ = Kind::HeisenbergMod;
  s.param_ = m;
  return s;
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  if (factors.empty()) throw InputError("product: needs at least one factor");
  GroupSpec s;
  s.kind_ = Kind::Product;
  s.subs_ = std::move(factors);
  return s;
}

int GroupSpec::rank() const {
  switch (kind_) {
    case Kind::FreeAbelian: return static_cast<int>(param_);
    case Kind::FiniteCyclic: return 1;
    case Kind::FiniteAbelian: return static_cast<int>(ints_.size());
    case Kind::Heisenberg:
    case Kind::HeisenbergMod: return 3;
    case Kind::Product: {
      int r = 0;
      for (const auto& f : subs_) r += f.rank();
      return r;
    }
  }
  return 0;
}

bool GroupSpec::is_finite() const {
  switch (kind_) {
    case Kind::FreeAbelian:
    case Kind::Heisenberg: return false;
    case Kind::FiniteCyclic:
    case Kind::FiniteAbelian:
    case Kind::HeisenbergMod: return true;
    case Kind::Product:
      return std::all_of(subs_.begin(), subs_.end(),
                         [](const GroupSpec& f) { return f.is_finite(); });
  }
  return false;
}

std::int64_t GroupSpec::order() const {
  switch (kind_) {
    case Kind::FiniteCyclic: return param_;
    case Kind::FiniteAbelian: {
      std::int64_t n = 1;
      for (auto f : ints_) n *= f;
      return n;
    }
    case Kind::HeisenbergMod: return param_ * param_ * param_;
    case Kind::Product: {
      std::int64_t n = 1;
      for (const auto& f : subs_) n *= f.order();
      return n;
    }
    default: throw InputError("order(): spec is infinite");
  }
}

int GroupSpec::dimension() const {
  if (kind_ != Kind::FreeAbelian) throw InputError("dimension(): not free abelian");
  return static_cast<int>(param_);
}

std::int64_t GroupSpec::modulus() const {
  if (kind_ != Kind::FiniteCyclic && kind_ != Kind::HeisenbergMod)
    throw InputError("modulus(): spec has no modulus");
  return param_;
}

const std::vector<std::int64_t>& GroupSpec::abelian_factors() const {
  if (kind_ != Kind::FiniteAbelian) throw InputError("abelian_factors(): not finite abelian");
  return ints_;
}

const std::vector<GroupSpec>& GroupSpec::factors() const {
  if (kind_ != Kind::Product) throw InputError("factors(): not a product");
  return subs_;
}

bool GroupSpec::operator==(const GroupSpec& other) const {
  return kind_ == other.kind_ && param_ == other.param_ && ints_ == other.ints_ &&
         subs_ == other.subs_;
}

std::string GroupSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::FreeAbelian: os << "Z^" << param_; break;
    case Kind::FiniteCyclic: os << "Z/" << param_; break;
    case Kind::FiniteAbelian: {
      os << "Z/";
      for (std::size_t i = 0; i < ints_.size(); ++i) os << (i ? " x Z/" : "") << ints_[i];
      break;
    }
    case Kind::Heisenberg: os << "H3(Z)"; break;
    case Kind::HeisenbergMod: os << "H3(Z/" << param_ << ")"; break;
    case Kind::Product: {
      for (std::size_t i = 0; i < subs_.size(); ++i)
        os << (i ? " x " : "") << subs_[i].describe();
      break;
    }
  }
  return os.str();
}

GroupElement identity(const GroupSpec& spec) {
  return GroupElement(static_cast<std::size_t>(spec.rank()), 0);
}

bool is_valid(const GroupSpec& spec, const GroupElement& g) {
  if (static_cast<int>(g.size()) != spec.rank()) return false;
  switch (spec.kind()) {
    case GroupSpec::Kind::FreeAbelian:
    case GroupSpec::Kind::Heisenberg: return true;
    case GroupSpec::Kind::FiniteCyclic: return g[0] >= 0 && g[0] < spec.modulus();
    case GroupSpec::Kind::FiniteAbelian: {
      const auto& fs = spec.abelian_factors();
      for (std::size_t i = 0; i < fs.size(); ++i)
        if (g[i] < 0 || g[i] >= fs[i]) return false;
      return true;
    }
    case GroupSpec::Kind::HeisenbergMod: {
      for (auto c : g)
        if (c < 0 || c >= spec.modulus()) return false;
      return true;
    }
    case GroupSpec::Kind::Product: {
      std::size_t off = 0;
      for (const auto& f : spec.factors()) {
        GroupElement part(g.begin() + off, g.begin() + off + f.rank());
        if (!is_valid(f, part)) return false;
        off += f.rank();
      }
      return true;
    }
  }
  return false;
}

void check_element(const GroupSpec& spec, const GroupElement& g) {
  if (!is_valid(spec, g))
    throw InputError("element of wrong shape for group " + spec.describe());
}

GroupElement compose(const GroupSpec& spec, const GroupElement& g,
                     const GroupElement& h) {
  check_element(spec, g);
  check_element(spec, h);
  GroupElement out(g.size());
  switch (spec.kind()) {
    case GroupSpec::Kind::FreeAbelian:
      for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i] + h[i];
      break;
    case GroupSpec::Kind::FiniteCyclic:
      out[0] = positive_mod(g[0] + h[0], spec.modulus());
      break;
    case GroupSpec::Kind::FiniteAbelian: {
      const auto& fs = spec.abelian_factors();
      for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = positive_mod(g[i] + h[i], fs[i]);
      break;
    }
    case GroupSpec::Kind::Heisenberg:
      out[0] = g[0] + h[0];
      out[1] = g[1] + h[1];
      out[2] = g[2] + h[2] + g[0] * h[1];
      break;
    case GroupSpec::Kind::HeisenbergMod: {
      std::int64_t m = spec.modulus();
      out[0] = positive_mod(g[0] + h[0], m);
      out[1] = positive_mod(g[1] + h[1], m);
      out[2] = positive_mod(g[2] + h[2] + g[0] * h[1], m);
      break;
    }
    case GroupSpec::Kind::Product: {
      std::size_t off = 0;
      for (const auto& f : spec.factors()) {
        GroupElement a(g.begin() + off, g.begin() + off + f.rank());
        GroupElement b(h.begin() + off, h.begin() + off + f.rank());
        GroupElement c = compose(f, a, b);
        std::copy(c.begin(), c.end(), out.begin() + off);
        off += f.rank();
      }
      break;
    }
  }
  return out;
}

GroupElement inverse(const GroupSpec& spec, const GroupElement& g) {
  check_element(spec, g);
  GroupElement out(g.size());
  switch (spec.kind()) {
    case GroupSpec::Kind::FreeAbelian:
      for (std::size_t i = 0; i < g.size(); ++i) out[i] = -g[i];
      break;
    case GroupSpec::Kind::FiniteCyclic:
      out[0] = positive_mod(-g[0], spec.modulus());
      break;
    case GroupSpec::Kind::FiniteAbelian: {
      const auto& fs = spec.abelian_factors();
      for (std::size_t i = 0; i < g.size(); ++i) out[i] = positive_mod(-g[i], fs[i]);
      break;
    }
    case GroupSpec::Kind::Heisenberg:
      out[0] = -g[0];
      out[1] = -g[1];
      out[2] = g[0] * g[1] - g[2];
      break;
    case GroupSpec::Kind::HeisenbergMod: {
      std::int64_t m = spec.modulus();
      out[0] = positive_mod(-g[0], m);
      out[1] = positive_mod(-g[1], m);
      out[2] = positive_mod(g[0] * g[1] - g[2], m);
      break;
    }
    case GroupSpec::Kind::Product: {
      std::size_t off = 0;
      for (const auto& f : spec.factors()) {
        GroupElement a(g.begin() + off, g.begin() + off + f.rank());
        GroupElement c = inverse(f, a);
        std::copy(c.begin(), c.end(), out.begin() + off);
        off += f.rank();
      }
      break;
    }
  }
  return out;
}

std::vector<GroupElement> generators(const GroupSpec& spec) {
  std::vector<GroupElement> gens;
  // mod == 0 marks an unconstrained integer coordinate
  auto push_unit = [&](int coord, std::int64_t v, std::int64_t mod) {
    GroupElement e = identity(spec);
    e[coord] = mod > 0 ? positive_mod(v, mod) : v;
    gens.push_back(e);
  };
  switch (spec.kind()) {
    case GroupSpec::Kind::FreeAbelian:
      for (int i = 0; i < spec.rank(); ++i) {
        push_unit(i, 1, 0);
        push_unit(i, -1, 0);
      }
      break;
    case GroupSpec::Kind::FiniteCyclic:
      push_unit(0, 1, spec.modulus());
      push_unit(0, -1, spec.modulus());
      break;
    case GroupSpec::Kind::FiniteAbelian:
      for (int i = 0; i < spec.rank(); ++i) {
        push_unit(i, 1, spec.abelian_factors()[i]);
        push_unit(i, -1, spec.abelian_factors()[i]);
      }
      break;
    case GroupSpec::Kind::Heisenberg:
      // horizontal generators only; the center is not a generator
      push_unit(0, 1, 0);
      push_unit(0, -1, 0);
      push_unit(1, 1, 0);
      push_unit(1, -1, 0);
      break;
    case GroupSpec::Kind::HeisenbergMod:
      push_unit(0, 1, spec.modulus());
      push_unit(0, -1, spec.modulus());
      push_unit(1, 1, spec.modulus());
      push_unit(1, -1, spec.modulus());
      break;
    case GroupSpec::Kind::Product: {
      std::size_t off = 0;
      for (const auto& f : spec.factors()) {
        for (const auto& sub : generators(f)) {
          GroupElement e = identity(spec);
          std::copy(sub.begin(), sub.end(), e.begin() + off);
          gens.push_back(e);
        }
        off += f.rank();
      }
      break;
    }
  }
  // drop duplicates (order 1/2 coordinates collapse +1 and -1)
  std::set<GroupElement> seen;
  std::vector<GroupElement> out;
  GroupElement id = identity(spec);
  for (auto& g : gens)
    if (g != id && seen.insert(g).second) out.push_back(g);
  return out;
}

std::vector<GroupElement> enumerate_elements(const GroupSpec& spec) {
  if (!spec.is_finite()) throw InputError("enumerate_elements: spec is infinite");
  std::vector<std::int64_t> radix;
  switch (spec.kind()) {
    case GroupSpec::Kind::FiniteCyclic: radix = {spec.modulus()}; break;
    case GroupSpec::Kind::FiniteAbelian: radix = spec.abelian_factors(); break;
    case GroupSpec::Kind::HeisenbergMod:
      radix = {spec.modulus(), spec.modulus(), spec.modulus()};
      break;
    case GroupSpec::Kind::Product: {
      std::vector<GroupElement> acc = {GroupElement{}};
      for (const auto& f : spec.factors()) {
        std::vector<GroupElement> next;
        auto sub = enumerate_elements(f);
        next.reserve(acc.size() * sub.size());
        for (const auto& a : acc)
          for (const auto& s : sub) {
            GroupElement e = a;
            e.insert(e.end(), s.begin(), s.end());
            next.push_back(e);
          }
        acc = std::move(next);
      }
      return acc;
    }
    default: throw InputError("enumerate_elements: unsupported kind");
  }
  std::vector<GroupElement> out;
  GroupElement cur(radix.size(), 0);
  for (;;) {
    out.push_back(cur);
    int i = static_cast<int>(radix.size()) - 1;
    while (i >= 0 && ++cur[i] == radix[i]) cur[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

int FolnerSet::position(const GroupElement& g) const {
  auto it = index.find(g);
  return it == index.end() ? -1 : it->second;
}

namespace {

std::vector<GroupElement> box_elements(const std::vector<std::int64_t>& sides) {
  std::vector<GroupElement> out;
  GroupElement cur(sides.size(), 0);
  for (;;) {
    out.push_back(cur);
    int i = static_cast<int>(sides.size()) - 1;
    while (i >= 0 && ++cur[i] == sides[i]) cur[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

}  // namespace

FolnerSet folner_set(const GroupSpec& spec, int m) {
  if (m < 1) throw InputError("folner_set: level must be >= 1");
  FolnerSet X;
  X.spec = spec;
  X.m = m;
  switch (spec.kind()) {
    case GroupSpec::Kind::FreeAbelian:
      X.elements = box_elements(std::vector<std::int64_t>(spec.rank(), m));
      break;
    case GroupSpec::Kind::Heisenberg:
      X.elements = box_elements({m, m, static_cast<std::int64_t>(m) * m});
      break;
    case GroupSpec::Kind::FiniteCyclic:
    case GroupSpec::Kind::FiniteAbelian:
    case GroupSpec::Kind::HeisenbergMod:
      X.elements = enumerate_elements(spec);
      break;
    case GroupSpec::Kind::Product: {
      std::vector<GroupElement> acc = {GroupElement{}};
      for (const auto& f : spec.factors()) {
        auto sub = folner_set(f, m);
        std::vector<GroupElement> next;
        next.reserve(acc.size() * sub.elements.size());
        for (const auto& a : acc)
          for (const auto& s : sub.elements) {
            GroupElement e = a;
            e.insert(e.end(), s.begin(), s.end());
            next.push_back(e);
          }
        acc = std::move(next);
      }
      X.elements = std::move(acc);
      break;
    }
  }
  for (std::size_t i = 0; i < X.elements.size(); ++i)
    X.index[X.elements[i]] = static_cast<int>(i);
  return X;
}

namespace {

/// All nonidentity words of length <= delta in the standard generators,
/// by breadth-first search from the identity.
std::vector<GroupElement> word_ball(const GroupSpec& spec, int delta) {
  std::set<GroupElement> seen;
  std::vector<GroupElement> frontier = {identity(spec)};
  seen.insert(frontier.front());
  auto gens = generators(spec);
  for (int depth = 0; depth < delta; ++depth) {
    std::vector<GroupElement> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        GroupElement h = compose(spec, g, s);
        if (seen.insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  std::vector<GroupElement> out(seen.begin(), seen.end());
  return out;
}

}  // namespace

Rational boundary_fraction(const GroupSpec& spec, int m, int delta) {
  if (delta < 1) throw InputError("boundary_fraction: delta must be >= 1");
  FolnerSet X = folner_set(spec, m);
  auto ball = word_ball(spec, delta);
  std::int64_t boundary = 0;
  for (const auto& g : X.elements) {
    for (const auto& s : ball) {
      if (X.position(compose(spec, g, s)) < 0) {
        ++boundary;
        break;
      }
    }
  }
  return Rational(boundary, X.size());
}

GroupElement QuotientSpec::project(const GroupElement& g) const {
  check_element(source, g);
  switch (source.kind()) {
    case GroupSpec::Kind::FreeAbelian: {
      std::int64_t m = level;
      GroupElement out(g.size());
      for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = ((g[i] % m) + m) % m;
      return out;
    }
    case GroupSpec::Kind::Heisenberg: {
      std::int64_t m = level;
      GroupElement out(3);
      for (int i = 0; i < 3; ++i) out[i] = ((g[i] % m) + m) % m;
      return out;
    }
    case GroupSpec::Kind::FiniteCyclic:
    case GroupSpec::Kind::FiniteAbelian:
    case GroupSpec::Kind::HeisenbergMod:
      return g;
    case GroupSpec::Kind::Product: {
      GroupElement out;
      std::size_t off = 0;
      std::size_t qi = 0;
      for (const auto& f : source.factors()) {
        QuotientSpec sub{f, quotient.factors()[qi], level};
        GroupElement part(g.begin() + off, g.begin() + off + f.rank());
        GroupElement p = sub.project(part);
        out.insert(out.end(), p.begin(), p.end());
        off += f.rank();
        ++qi;
      }
      return out;
    }
  }
  throw InputError("project: unsupported kind");
}

QuotientSpec quotient(const GroupSpec& spec, int m) {
  if (m < 1) throw InputError("quotient: level must be >= 1");
  QuotientSpec q;
  q.source = spec;
  q.level = m;
  switch (spec.kind()) {
    case GroupSpec::Kind::FreeAbelian:
      q.quotient = GroupSpec::finite_abelian(
          std::vector<std::int64_t>(spec.rank(), m));
      break;
    case GroupSpec::Kind::Heisenberg:
      q.quotient = GroupSpec::heisenberg_mod(m);
      break;
    case GroupSpec::Kind::FiniteCyclic:
    case GroupSpec::Kind::FiniteAbelian:
    case GroupSpec::Kind::HeisenbergMod:
      q.quotient = spec;
      break;
    case GroupSpec::Kind::Product: {
      std::vector<GroupSpec> qs;
      for (const auto& f : spec.factors()) qs.push_back(quotient(f, m).quotient);
      q.quotient = GroupSpec::product(std::move(qs));
      break;
    }
  }
  return q;
}

}  // namespace l2
