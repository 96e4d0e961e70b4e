#pragma once

// Exact rational scalar backed by GMP.
//
// Invariants (maintained by every constructor and operation):
//   - stored in lowest terms, denominator > 0, zero is 0/1;
//   - text form is "p/q" with the "/q" omitted when q == 1;
//   - all arithmetic and comparisons are exact, no rounding anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adjointkit {

class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long long n) : v_(static_cast<long>(n)) {}
  Rat(int n) : v_(n) {}
  Rat(long long num, long long den) : v_(static_cast<long>(num), static_cast<long>(den)) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    v_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rat(const mpz_class& z) : v_(z) {}

  // Parses "p", "p/q", with optional sign; rejects anything else.
  static Rat parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rat: empty string");
    for (size_t i = 0; i < s.size(); ++i) {
      char c = s[i];
      bool ok = (c >= '0' && c <= '9') || c == '/' || ((c == '-' || c == '+') && (i == 0 || s[i - 1] == '/'));
      if (!ok) throw std::invalid_argument("Rat: bad character in '" + s + "'");
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rat: unparsable '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("Rat: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rat(q);
  }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  // Exact conversion to long long; throws if the value is not an integer or overflows.
  long long to_ll() const {
    if (v_.get_den() != 1) throw std::domain_error("Rat: not an integer: " + str());
    if (!v_.get_num().fits_slong_p()) throw std::overflow_error("Rat: integer too large: " + str());
    return v_.get_num().get_si();
  }
  bool is_integer() const { return v_.get_den() == 1; }

  double to_double() const { return v_.get_d(); }

  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.sign() == 0) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  Rat abs() const { return sign() < 0 ? -*this : *this; }

  // Largest integer <= value.
  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }
  mpz_class ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }

 private:
  mpq_class v_;
};

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;
using ZVec = std::vector<long long>;

inline Rat rat_lcm_den(const QVec& v) {
  mpz_class l = 1;
  for (const Rat& x : v) {
    mpz_class d = x.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return Rat(l);
}

}  // namespace adjointkit
