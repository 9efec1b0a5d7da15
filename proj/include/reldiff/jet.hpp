#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace reldiff {

/// Truncated bivariate Taylor expansion of a scalar field about a point.
///
/// A jet of order N stores the coefficients c_ab of (du1)^a (du2)^b for
/// a + b <= N. Storage is in total-degree order, and within a degree by
/// increasing b:
///
///     index 0: (0,0)   1: (1,0)   2: (0,1)   3: (2,0)   4: (1,1)   5: (0,2) ...
///
/// so that index(a, b) = d(d+1)/2 + b with d = a + b. Binary operations on
/// jets of different order produce a jet of the smaller order; all arithmetic
/// is exact up to that order.
class Jet2 {
 public:
  static constexpr int kMaxOrder = 8;
  static constexpr std::size_t kCapacity = (kMaxOrder + 1) * (kMaxOrder + 2) / 2;

  Jet2() = default;
  /// Constant jet of the given order.
  explicit Jet2(int order, double value = 0.0);

  static Jet2 constant(double value, int order) { return Jet2(order, value); }
  /// Jet of the coordinate function u^axis (axis is 1 or 2) centred at `value`.
  static Jet2 variable(int axis, double value, int order);

  static constexpr std::size_t size_for(int order) {
    return static_cast<std::size_t>((order + 1) * (order + 2) / 2);
  }
  static constexpr std::size_t index(int a, int b) {
    const int d = a + b;
    return static_cast<std::size_t>(d * (d + 1) / 2 + b);
  }

  int order() const { return order_; }
  std::size_t size() const { return size_for(order_); }
  double value() const { return c_[0]; }

  /// Taylor coefficient of (du1)^a (du2)^b; zero when a + b exceeds the order.
  double coeff(int a, int b) const;
  void set_coeff(int a, int b, double v);
  /// The partial derivative d^(a+b) f / du1^a du2^b at the centre.
  double partial(int a, int b) const;

  std::span<const double> coeffs() const { return {c_.data(), size()}; }

  /// Jet of the partial derivative in u^axis; one order lower.
  Jet2 derivative(int axis) const;
  Jet2 truncated(int order) const;

  bool is_constant() const;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(const Jet2& o);
  Jet2& operator/=(const Jet2& o);
  Jet2& operator+=(double s);
  Jet2& operator-=(double s);
  Jet2& operator*=(double s);
  Jet2& operator/=(double s);

  friend Jet2 operator-(Jet2 a);
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(const Jet2& a, const Jet2& b);
  friend Jet2 operator+(Jet2 a, double s) { return a += s; }
  friend Jet2 operator+(double s, Jet2 a) { return a += s; }
  friend Jet2 operator-(Jet2 a, double s) { return a -= s; }
  friend Jet2 operator-(double s, const Jet2& a) { return (-a) += s; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  friend Jet2 operator/(Jet2 a, double s) { return a /= s; }
  friend Jet2 operator/(double s, const Jet2& a);

 private:
  int order_ = 0;
  std::array<double, kCapacity> c_{};
};

/// Composes a univariate power series with a jet: sum_k series[k] (f - f0)^k,
/// where f0 is the value term of f. `series` must hold order+1 entries.
Jet2 compose(const Jet2& f, std::span<const double> series);

Jet2 sin(const Jet2& f);
Jet2 cos(const Jet2& f);
Jet2 exp(const Jet2& f);
/// Natural logarithm; DomainError unless the value term is positive.
Jet2 log(const Jet2& f);
/// DomainError unless the value term is positive.
Jet2 sqrt(const Jet2& f);
/// Sign-branch absolute value; DomainError when the value term is zero.
Jet2 abs(const Jet2& f);
/// f^p for real p. Non-negative integers use repeated products and accept any
/// base; negative integers need a nonzero base; other exponents need a
/// positive base.
Jet2 pow(const Jet2& f, double p);
Jet2 reciprocal(const Jet2& f);

}  // namespace reldiff
