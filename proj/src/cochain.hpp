#pragma once
// Normalized cochains on a finite group with Q/Z coefficients.
//
// A degree-d cochain stores values only on tuples of non-identity group
// elements; any tuple containing the identity evaluates to zero (the
// normalized subcomplex, which carries the full cohomology).  Coefficients
// are either the trivial module or the coinduced module C = Fun(H\G, Q/Z)
// attached to a coset space, on which G acts by (g |> f)(x) = f(x <| g).
// A coinduced cochain therefore carries one Q/Z value per (tuple, coset).

#include <cstdint>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "qmz.hpp"

namespace morita {

enum class CoefKind { trivial, coinduced };

struct CoefModule {
  CoefKind kind = CoefKind::trivial;
  const CosetSpace* cs = nullptr;

  static CoefModule trivial_module() { return {}; }
  static CoefModule coinduced(const CosetSpace& space) {
    return {CoefKind::coinduced, &space};
  }
  int ncoords() const {
    return kind == CoefKind::trivial ? 1 : cs->size();
  }
  bool same_as(const CoefModule& o) const {
    if (kind != o.kind) return false;
    if (kind == CoefKind::trivial) return true;
    return cs == o.cs || (&cs->group() == &o.cs->group() &&
                          cs->subgroup().elems == o.cs->subgroup().elems);
  }
};

class Cochain {
 public:
  Cochain() = default;
  Cochain(const FiniteGroup& G, int degree, CoefModule mod = {})
      : G_(&G), degree_(degree), mod_(mod) {
    if (degree < 0 || degree > 4) fail_invalid("cochain degree out of range");
    v_.assign(std::size_t(tuple_count()) * mod_.ncoords(), QmodZ{});
  }

  const FiniteGroup& group() const { return *G_; }
  int degree() const { return degree_; }
  const CoefModule& module() const { return mod_; }
  int ncoords() const { return mod_.ncoords(); }

  std::int64_t tuple_count() const {
    std::int64_t nm1 = G_->order() - 1, t = 1;
    for (int i = 0; i < degree_; ++i) t *= nm1;
    return t;
  }

  // Rank of a tuple of non-identity elements (base n-1 digits, first
  // element most significant).
  std::int64_t rank(const int* gs) const {
    std::int64_t r = 0;
    for (int i = 0; i < degree_; ++i) r = r * (G_->order() - 1) + (gs[i] - 1);
    return r;
  }
  void unrank(std::int64_t r, int* gs) const {
    for (int i = degree_ - 1; i >= 0; --i) {
      gs[i] = int(r % (G_->order() - 1)) + 1;
      r /= (G_->order() - 1);
    }
  }

  // Full evaluation: tuples may contain the identity (value 0).
  QmodZ eval(const int* gs, int coord = 0) const {
    for (int i = 0; i < degree_; ++i)
      if (gs[i] == 0) return QmodZ{};
    return v_[std::size_t(rank(gs)) * ncoords() + coord];
  }
  QmodZ eval1(int g, int coord = 0) const { return eval(&g, coord); }
  QmodZ eval2(int g1, int g2, int coord = 0) const {
    int gs[2] = {g1, g2};
    return eval(gs, coord);
  }
  QmodZ eval3(int g1, int g2, int g3, int coord = 0) const {
    int gs[3] = {g1, g2, g3};
    return eval(gs, coord);
  }

  void set(const int* gs, int coord, const QmodZ& val) {
    for (int i = 0; i < degree_; ++i)
      if (gs[i] == 0) {
        if (!val.is_zero()) fail_invalid("normalized cochain: identity tuple must be zero");
        return;
      }
    v_[std::size_t(rank(gs)) * ncoords() + coord] = val;
  }

  // Raw storage access (tuple-major) for the linear-algebra bridges.
  std::vector<QmodZ>& raw() { return v_; }
  const std::vector<QmodZ>& raw() const { return v_; }

  bool is_zero() const {
    for (const auto& q : v_)
      if (!q.is_zero()) return false;
    return true;
  }

  std::int64_t lcm_denominator() const {
    std::int64_t l = 1;
    for (const auto& q : v_) l = std::lcm(l, q.den);
    return l;
  }

  friend Cochain operator+(const Cochain& a, const Cochain& b) {
    a.require_compatible(b);
    Cochain out = a;
    for (std::size_t i = 0; i < out.v_.size(); ++i) out.v_[i] += b.v_[i];
    return out;
  }
  friend Cochain operator-(const Cochain& a, const Cochain& b) {
    a.require_compatible(b);
    Cochain out = a;
    for (std::size_t i = 0; i < out.v_.size(); ++i) out.v_[i] -= b.v_[i];
    return out;
  }
  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.degree_ == b.degree_ && a.G_->id() == b.G_->id() &&
           a.mod_.same_as(b.mod_) && a.v_ == b.v_;
  }

 private:
  void require_compatible(const Cochain& o) const {
    if (degree_ != o.degree_ || G_->id() != o.G_->id() || !mod_.same_as(o.mod_))
      fail_internal("cochain arithmetic on incompatible cochains");
  }

  const FiniteGroup* G_ = nullptr;
  int degree_ = 0;
  CoefModule mod_;
  std::vector<QmodZ> v_;
};

}  // namespace morita
