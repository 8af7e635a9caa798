#include "jetflow/numeric/gaussian_rational.hpp"

#include <cctype>
#include <ostream>
#include <utility>

#include "jetflow/errors.hpp"

namespace jetflow {

namespace {

std::string rational_text(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q.get_str();
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

GaussianRational::GaussianRational(const mpq_class& value)
    : re_(value.get_num()), im_(0), den_(value.get_den()) {}

GaussianRational::GaussianRational(mpz_class re, mpz_class im, mpz_class den)
    : re_(std::move(re)), im_(std::move(im)), den_(std::move(den)) {
  if (sgn(den_) == 0) throw DomainError("GaussianRational: zero denominator");
  normalize();
}

GaussianRational GaussianRational::from_parts(const mpq_class& re, const mpq_class& im) {
  mpz_class den = lcm(mpz_class(re.get_den()), mpz_class(im.get_den()));
  mpz_class a = re.get_num() * (den / re.get_den());
  mpz_class b = im.get_num() * (den / im.get_den());
  return {std::move(a), std::move(b), std::move(den)};
}

void GaussianRational::normalize() {
  if (sgn(den_) < 0) {
    den_ = -den_;
    re_ = -re_;
    im_ = -im_;
  }
  if (is_zero()) {
    den_ = 1;
    return;
  }
  if (den_ == 1) return;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), re_.get_mpz_t(), im_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(re_.get_mpz_t(), re_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(im_.get_mpz_t(), im_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

mpq_class GaussianRational::real() const {
  mpq_class q(re_, den_);
  q.canonicalize();
  return q;
}

mpq_class GaussianRational::imag() const {
  mpq_class q(im_, den_);
  q.canonicalize();
  return q;
}

mpq_class GaussianRational::norm() const {
  mpq_class q(re_ * re_ + im_ * im_, den_ * den_);
  q.canonicalize();
  return q;
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw DomainError("GaussianRational: inverse of zero");
  // den / (re + im i) = den (re - im i) / (re^2 + im^2)
  mpz_class n = re_ * re_ + im_ * im_;
  return {den_ * re_, -den_ * im_, std::move(n)};
}

GaussianRational GaussianRational::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  GaussianRational result(1);
  GaussianRational base = *this;
  auto e = static_cast<unsigned long>(exponent);
  while (e != 0) {
    if ((e & 1UL) != 0) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

std::complex<double> GaussianRational::to_complex() const {
  return {real().get_d(), imag().get_d()};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& rhs) {
  if (rhs.is_zero()) return *this;
  if (den_ == rhs.den_) {
    re_ += rhs.re_;
    im_ += rhs.im_;
  } else {
    re_ = re_ * rhs.den_ + rhs.re_ * den_;
    im_ = im_ * rhs.den_ + rhs.im_ * den_;
    den_ *= rhs.den_;
  }
  normalize();
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& rhs) {
  if (rhs.is_zero()) return *this;
  if (den_ == rhs.den_) {
    re_ -= rhs.re_;
    im_ -= rhs.im_;
  } else {
    re_ = re_ * rhs.den_ - rhs.re_ * den_;
    im_ = im_ * rhs.den_ - rhs.im_ * den_;
    den_ *= rhs.den_;
  }
  normalize();
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& rhs) {
  if (sgn(im_) == 0 && sgn(rhs.im_) == 0) {
    re_ *= rhs.re_;
  } else {
    mpz_class a = re_ * rhs.re_ - im_ * rhs.im_;
    mpz_class b = re_ * rhs.im_ + im_ * rhs.re_;
    re_ = std::move(a);
    im_ = std::move(b);
  }
  den_ *= rhs.den_;
  normalize();
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& rhs) {
  if (rhs.is_zero()) throw DomainError("GaussianRational: division by zero");
  return *this *= rhs.inverse();
}

std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
  // Compare re_a/den_a with re_b/den_b by cross multiplication.
  const int c_re = cmp(a.re_ * b.den_, b.re_ * a.den_);
  if (c_re != 0) return c_re < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  const int c_im = cmp(a.im_ * b.den_, b.im_ * a.den_);
  if (c_im != 0) return c_im < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string GaussianRational::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  if (sgn(re_) != 0) out = rational_text(re_, den_);
  if (sgn(im_) != 0) {
    mpz_class abs_im = abs(im_);
    if (sgn(im_) < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    mpq_class q(abs_im, den_);
    q.canonicalize();
    if (q != 1) out += q.get_str();
    out += 'i';
  }
  return out;
}

namespace detail {

bool read_number_literal(std::string_view text, std::size_t& pos, GaussianRational& out) {
  std::size_t p = pos;
  auto digits = [&](std::size_t from) {
    std::size_t q = from;
    while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q])) != 0) ++q;
    return q;
  };
  std::size_t end_num = digits(p);
  if (end_num == p) return false;
  mpz_class num(std::string(text.substr(p, end_num - p)));
  mpz_class den = 1;
  p = end_num;
  if (p + 1 < text.size() && text[p] == '/' &&
      std::isdigit(static_cast<unsigned char>(text[p + 1])) != 0) {
    std::size_t end_den = digits(p + 1);
    den = mpz_class(std::string(text.substr(p + 1, end_den - p - 1)));
    if (sgn(den) == 0) throw ParseError("zero denominator in number literal", p + 1);
    p = end_den;
  }
  bool imaginary = false;
  if (p < text.size() && text[p] == 'i' && (p + 1 >= text.size() || !is_ident_char(text[p + 1]))) {
    imaginary = true;
    ++p;
  }
  out = imaginary ? GaussianRational(0, num, den) : GaussianRational(num, 0, den);
  pos = p;
  return true;
}

}  // namespace detail

GaussianRational GaussianRational::parse(std::string_view text) {
  std::size_t pos = 0;
  GaussianRational total;
  bool any = false;
  while (pos < text.size()) {
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
      negative = text[pos] == '-';
      ++pos;
    } else if (any) {
      throw ParseError("expected '+' or '-' between parts of a Gaussian rational", pos);
    }
    GaussianRational part;
    if (!detail::read_number_literal(text, pos, part)) {
      if (pos < text.size() && text[pos] == 'i') {
        part = imaginary_unit();
        ++pos;
      } else {
        throw ParseError("expected a number or 'i'", pos);
      }
    }
    total += negative ? -part : part;
    any = true;
  }
  if (!any) throw ParseError("empty Gaussian rational", 0);
  return total;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

}  // namespace jetflow
