#pragma once

// Dense univariate polynomials over an exact field, coefficients stored
// from the constant term upwards with no trailing zeros.

#include "k3lat/scalar.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace k3lat {

template <typename Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Scalar constant) : coeffs_{std::move(constant)} { trim(); }
  explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  static Polynomial monomial(Scalar c, int degree) {
    std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, Scalar(0));
    v.back() = std::move(c);
    return Polynomial(std::move(v));
  }
  static Polynomial t() { return monomial(Scalar(1), 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  Scalar coefficient(int i) const {
    if (i < 0 || i > degree()) return Scalar(0);
    return coeffs_[static_cast<std::size_t>(i)];
  }
  Scalar leading() const { return is_zero() ? Scalar(0) : coeffs_.back(); }

  /// Order of vanishing at t = 0; -1 for the zero polynomial.
  int valuation_at_zero() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) return static_cast<int>(i);
    }
    return -1;
  }

  Scalar operator()(const Scalar& x) const {
    Scalar acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  Polynomial derivative() const {
    std::vector<Scalar> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      d.push_back(coeffs_[i] * Scalar(static_cast<long>(i)));
    }
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * Polynomial(Scalar(1) / leading());
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()),
                          Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<Scalar> v = a.coeffs_;
    for (auto& c : v) c = -c;
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (-b);
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> v(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        v[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return Polynomial(std::move(v));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  Polynomial pow(int e) const {
    Polynomial result(Scalar(1));
    for (int i = 0; i < e; ++i) result = result * *this;
    return result;
  }

  /// Euclidean division; throws std::domain_error on division by zero.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                                  const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Scalar> rem = a.coeffs_;
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial(), a};
    std::vector<Scalar> quot(static_cast<std::size_t>(a.degree() - db + 1),
                             Scalar(0));
    for (int i = a.degree(); i >= db; --i) {
      const Scalar f = rem[static_cast<std::size_t>(i)] / b.leading();
      quot[static_cast<std::size_t>(i - db)] = f;
      if (f == 0) continue;
      for (int j = 0; j <= db; ++j) {
        rem[static_cast<std::size_t>(i - db + j)] -=
            f * b.coeffs_[static_cast<std::size_t>(j)];
      }
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  /// Monic greatest common divisor (zero if both are zero).
  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  bool divides(const Polynomial& f) const {
    return divmod(f, *this).second.is_zero();
  }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      Scalar c = coeffs_[i];
      if (c == 0) continue;
      const bool negative = c < 0;
      if (negative) c = -c;
      if (first) {
        if (negative) os << '-';
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      const bool unit = c == 1;
      if (i == 0 || !unit) os << k3lat::to_string(c);
      if (i > 0) {
        if (!unit) os << '*';
        os << var;
        if (i > 1) os << '^' << i;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Scalar> coeffs_;
};

using RationalPoly = Polynomial<Rational>;

}  // namespace k3lat
