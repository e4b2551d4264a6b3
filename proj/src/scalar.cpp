#include "k3lat/scalar.hpp"

#include <sstream>
#include <stdexcept>

namespace k3lat {

IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = r == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
  IntMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c) {
      throw std::invalid_argument("int_matrix: ragged rows");
    }
    Index j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

IntVector int_vector(std::initializer_list<long> entries) {
  IntVector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (long x : entries) v(i++) = x;
  return v;
}

bool is_integral(const Rational& x) { return x.get_den() == 1; }

bool is_integral(const RatMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j))) return false;
    }
  }
  return true;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j))) {
        throw std::domain_error("to_integer: entry " + to_string(m(i, j)) +
                                " is not integral");
      }
      out(i, j) = m(i, j).get_num();
    }
  }
  return out;
}

Integer common_denominator(const RatMatrix& m) {
  Integer d = 1;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).get_den_mpz_t());
    }
  }
  return d;
}

Integer floor_div(const Integer& a, const Integer& b) {
  if (b == 0) throw std::domain_error("floor_div: division by zero");
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r = a - floor_div(a, b) * b;
  return r;
}

Rational reduce_mod(const Rational& x, const Integer& m) {
  // x - m*floor(x/m)
  Rational scaled = x / Rational(m);
  Integer fl = floor_div(scaled.get_num(), scaled.get_den());
  Rational r = x - Rational(m * fl);
  return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  return c.get_str();
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v(i).get_str();
  }
  os << ')';
  return os.str();
}

std::string to_string(const RationalVector& v) {
  std::ostringstream os;
  os << '(';
  for (Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << to_string(v(i));
  }
  os << ')';
  return os.str();
}

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char ch : text) {
    if (ch != ' ') t.push_back(ch);
  }
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = t.find('/');
  auto parse_int = [](const std::string& s) {
    if (s.empty()) throw std::invalid_argument("bad rational literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("bad rational literal");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw std::invalid_argument("bad rational literal: " + s);
      }
    }
    return Integer(s[0] == '+' ? s.substr(1) : s, 10);
  };
  if (slash == std::string::npos) return Rational(parse_int(t));
  Integer num = parse_int(t.substr(0, slash));
  Integer den = parse_int(t.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in " + text);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace k3lat
