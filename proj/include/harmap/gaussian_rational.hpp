#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "harmap/errors.hpp"

namespace harmap {

/// Exact complex number a + bi with arbitrary-precision rational parts.
///
/// Both parts are kept in GMP canonical form (reduced, positive denominator),
/// so structural equality is numeric equality.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(long re, long im) : re_(re), im_(im) {}
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {0, 1}; }

  /// Parses "num/den" or "num" decimal strings for each part.
  static GaussianRational parse(std::string_view re, std::string_view im) {
    return {parse_rational(re), parse_rational(im)};
  }

  /// Exact binary value of a double pair.
  static GaussianRational from_complex(std::complex<double> z) {
    return {mpq_class(z.real()), mpq_class(z.imag())};
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero Gaussian rational");
    mpq_class n = norm();
    return {re_ / n, -im_ / n};
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "num/den", always with an explicit denominator.
  static std::string to_fraction_string(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) {
    os << g.re_;
    if (!g.is_real()) os << (sgn(g.im_) < 0 ? "-" : "+") << abs(g.im_) << "i";
    return os;
  }

 private:
  static mpq_class parse_rational(std::string_view s) {
    auto valid_int = [](std::string_view t) {
      if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
      if (t.empty()) return false;
      for (char c : t)
        if (c < '0' || c > '9') return false;
      return true;
    };
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den))
      throw ParseError("malformed rational '" + std::string(s) + "'");
    mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
    mpz_class d(std::string(den.front() == '+' ? den.substr(1) : den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return q;
  }

  mpq_class re_;
  mpq_class im_;
};

}  // namespace harmap
