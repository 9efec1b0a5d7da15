#include "reldiff/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "reldiff/errors.hpp"

namespace reldiff {
namespace {

struct MonomialTables {
  std::array<int, Jet2::kCapacity> a{};
  std::array<int, Jet2::kCapacity> b{};
  std::array<int, Jet2::kCapacity> degree{};
  // product[i][j]: index of monomial_i * monomial_j, valid when the degree
  // sum stays within kMaxOrder.
  std::array<std::array<int, Jet2::kCapacity>, Jet2::kCapacity> product{};

  MonomialTables() {
    for (int d = 0; d <= Jet2::kMaxOrder; ++d) {
      for (int bb = 0; bb <= d; ++bb) {
        const auto k = Jet2::index(d - bb, bb);
        a[k] = d - bb;
        b[k] = bb;
        degree[k] = d;
      }
    }
    for (std::size_t i = 0; i < Jet2::kCapacity; ++i) {
      for (std::size_t j = 0; j < Jet2::kCapacity; ++j) {
        const int d = degree[i] + degree[j];
        product[i][j] = d <= Jet2::kMaxOrder
                            ? static_cast<int>(Jet2::index(a[i] + a[j], b[i] + b[j]))
                            : -1;
      }
    }
  }
};

const MonomialTables& tables() {
  static const MonomialTables t;
  return t;
}

void check_order(int order) {
  if (order < 0 || order > Jet2::kMaxOrder) {
    throw OrderError("jet order " + std::to_string(order) + " outside [0, " +
                     std::to_string(Jet2::kMaxOrder) + "]");
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

bool is_integer(double p) { return std::isfinite(p) && std::floor(p) == p; }

}  // namespace

Jet2::Jet2(int order, double value) : order_(order) {
  check_order(order);
  c_[0] = value;
}

Jet2 Jet2::variable(int axis, double value, int order) {
  if (axis != 1 && axis != 2) throw PreconditionError("jet axis must be 1 or 2");
  Jet2 j(order, value);
  if (order >= 1) j.c_[axis == 1 ? 1 : 2] = 1.0;
  return j;
}

double Jet2::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a + b > order_) return 0.0;
  return c_[index(a, b)];
}

void Jet2::set_coeff(int a, int b, double v) {
  if (a < 0 || b < 0 || a + b > order_) {
    throw OrderError("coefficient (" + std::to_string(a) + "," + std::to_string(b) +
                     ") outside jet of order " + std::to_string(order_));
  }
  c_[index(a, b)] = v;
}

double Jet2::partial(int a, int b) const {
  if (a + b > order_) {
    throw OrderError("partial of total degree " + std::to_string(a + b) +
                     " requested from jet of order " + std::to_string(order_));
  }
  return coeff(a, b) * factorial(a) * factorial(b);
}

Jet2 Jet2::derivative(int axis) const {
  if (order_ == 0) throw OrderError("cannot differentiate an order-0 jet");
  Jet2 d(order_ - 1);
  const auto& t = tables();
  for (std::size_t k = 0; k < d.size(); ++k) {
    const int a = t.a[k];
    const int b = t.b[k];
    d.c_[k] = axis == 1 ? (a + 1) * c_[index(a + 1, b)] : (b + 1) * c_[index(a, b + 1)];
  }
  return d;
}

Jet2 Jet2::truncated(int order) const {
  if (order > order_) {
    throw OrderError("cannot raise jet order from " + std::to_string(order_) + " to " +
                     std::to_string(order));
  }
  Jet2 t(order);
  std::copy_n(c_.begin(), t.size(), t.c_.begin());
  return t;
}

bool Jet2::is_constant() const {
  return std::all_of(c_.begin() + 1, c_.begin() + static_cast<std::ptrdiff_t>(size()),
                     [](double v) { return v == 0.0; });
}

Jet2& Jet2::operator+=(const Jet2& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t k = 0; k < size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t k = 0; k < size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet2& Jet2::operator*=(const Jet2& o) { return *this = *this * o; }
Jet2& Jet2::operator/=(const Jet2& o) { return *this = *this / o; }

Jet2& Jet2::operator+=(double s) {
  c_[0] += s;
  return *this;
}
Jet2& Jet2::operator-=(double s) {
  c_[0] -= s;
  return *this;
}
Jet2& Jet2::operator*=(double s) {
  for (std::size_t k = 0; k < size(); ++k) c_[k] *= s;
  return *this;
}
Jet2& Jet2::operator/=(double s) {
  if (s == 0.0) throw DivisionByZero("jet divided by zero scalar");
  for (std::size_t k = 0; k < size(); ++k) c_[k] /= s;
  return *this;
}

Jet2 operator-(Jet2 a) {
  for (std::size_t k = 0; k < a.size(); ++k) a.c_[k] = -a.c_[k];
  return a;
}

Jet2 operator*(const Jet2& x, const Jet2& y) {
  const int r = std::min(x.order_, y.order_);
  Jet2 out(r);
  const auto& t = tables();
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x.c_[i];
    if (xi == 0.0) continue;
    const std::size_t m = Jet2::size_for(r - t.degree[i]);
    const auto& row = t.product[i];
    for (std::size_t j = 0; j < m; ++j) out.c_[row[j]] += xi * y.c_[j];
  }
  return out;
}

Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }

Jet2 operator/(double s, const Jet2& a) { return reciprocal(a) * s; }

Jet2 compose(const Jet2& f, std::span<const double> series) {
  const int n = f.order();
  if (series.size() < static_cast<std::size_t>(n + 1)) {
    throw OrderError("series shorter than jet order");
  }
  Jet2 h = f;
  h.set_coeff(0, 0, 0.0);
  // Horner in the nilpotent increment h; h^(n+1) vanishes.
  Jet2 out(n, series[static_cast<std::size_t>(n)]);
  for (int k = n - 1; k >= 0; --k) {
    out = out * h;
    out += series[static_cast<std::size_t>(k)];
  }
  return out;
}

namespace {

std::vector<double> sin_cos_series(double x0, int n, bool is_sin) {
  // d^k/dx^k sin = sin(x + k pi/2); cycle through (s, c, -s, -c).
  const double s = std::sin(x0);
  const double c = std::cos(x0);
  const std::array<double, 4> cycle_sin{s, c, -s, -c};
  const std::array<double, 4> cycle_cos{c, -s, -c, s};
  std::vector<double> out(static_cast<std::size_t>(n + 1));
  double kfact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) kfact *= k;
    out[static_cast<std::size_t>(k)] =
        (is_sin ? cycle_sin : cycle_cos)[static_cast<std::size_t>(k % 4)] / kfact;
  }
  return out;
}

// Binomial series coefficients C(p, k) x0^(p-k).
std::vector<double> power_series(double x0, double p, int n) {
  std::vector<double> out(static_cast<std::size_t>(n + 1));
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) binom *= (p - (k - 1)) / k;
    out[static_cast<std::size_t>(k)] = binom * std::pow(x0, p - k);
  }
  return out;
}

}  // namespace

Jet2 sin(const Jet2& f) { return compose(f, sin_cos_series(f.value(), f.order(), true)); }

Jet2 cos(const Jet2& f) { return compose(f, sin_cos_series(f.value(), f.order(), false)); }

Jet2 exp(const Jet2& f) {
  const int n = f.order();
  std::vector<double> series(static_cast<std::size_t>(n + 1));
  const double e0 = std::exp(f.value());
  double kfact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) kfact *= k;
    series[static_cast<std::size_t>(k)] = e0 / kfact;
  }
  return compose(f, series);
}

Jet2 log(const Jet2& f) {
  const double x0 = f.value();
  if (!(x0 > 0.0)) throw DomainError("ln of non-positive value " + std::to_string(x0));
  const int n = f.order();
  std::vector<double> series(static_cast<std::size_t>(n + 1));
  series[0] = std::log(x0);
  double pw = 1.0;
  for (int k = 1; k <= n; ++k) {
    pw *= x0;
    series[static_cast<std::size_t>(k)] = ((k % 2 == 1) ? 1.0 : -1.0) / (k * pw);
  }
  return compose(f, series);
}

Jet2 sqrt(const Jet2& f) {
  if (!(f.value() > 0.0)) {
    throw DomainError("sqrt of non-positive value " + std::to_string(f.value()));
  }
  return compose(f, power_series(f.value(), 0.5, f.order()));
}

Jet2 abs(const Jet2& f) {
  if (f.value() == 0.0) throw DomainError("abs of a jet with zero value term");
  return f.value() > 0.0 ? f : -f;
}

Jet2 reciprocal(const Jet2& f) {
  const double x0 = f.value();
  if (x0 == 0.0) throw DivisionByZero("divisor jet has zero value term");
  const int n = f.order();
  std::vector<double> series(static_cast<std::size_t>(n + 1));
  double pw = x0;
  for (int k = 0; k <= n; ++k) {
    series[static_cast<std::size_t>(k)] = ((k % 2 == 0) ? 1.0 : -1.0) / pw;
    pw *= x0;
  }
  return compose(f, series);
}

Jet2 pow(const Jet2& f, double p) {
  if (is_integer(p) && p >= 0.0) {
    Jet2 result(f.order(), 1.0);
    Jet2 base = f;
    auto e = static_cast<unsigned long long>(p);
    while (e > 0) {
      if (e & 1ULL) result = result * base;
      e >>= 1ULL;
      if (e > 0) base = base * base;
    }
    return result;
  }
  const double x0 = f.value();
  if (is_integer(p)) {
    if (x0 == 0.0) throw DivisionByZero("negative power of a jet with zero value term");
  } else if (!(x0 > 0.0)) {
    throw DomainError("non-integer power of non-positive value " + std::to_string(x0));
  }
  return compose(f, power_series(x0, p, f.order()));
}

}  // namespace reldiff
