#include "shiftlab/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace shiftlab {

namespace {

unsigned g_bits = 0;
std::once_flag g_bits_once;

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2;
}

void apply_bits(unsigned bits) {
  g_bits = bits;
  Real::default_precision(digits10_for_bits(bits));
}

void init_bits() {
  std::call_once(g_bits_once, [] {
    unsigned bits = 64;
    if (const char* env = std::getenv("SHIFTLAB_PRECISION_BITS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v >= 64 && v <= 4096) bits = static_cast<unsigned>(v);
    }
    apply_bits(bits);
  });
}

Real abs_real(const Real& v) { return v < 0 ? Real(-v) : v; }

Real scale_of(const Scalar& s) {
  return s.is_exact() ? abs_real(to_real(s.exact())) : s.scale();
}

double merged_tol(const Scalar& a, const Scalar& b) {
  double t = std::max(a.tol(), b.tol());
  return t > 0 ? t : kDefaultTol;
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

}  // namespace

unsigned precision_bits() {
  init_bits();
  return g_bits;
}

void set_precision_bits(unsigned bits) {
  init_bits();
  if (bits < 64) throw std::invalid_argument("precision below 64 bits");
  apply_bits(bits);
}

const char* to_string(Track t) { return t == Track::exact ? "exact" : "approx"; }

const char* to_string(Sign s) {
  switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
    case Sign::tie: return "tie";
  }
  return "?";
}

Real to_real(const Rational& q) {
  init_bits();
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Scalar::Scalar(long num, long den) : q_(num, den) {
  if (den == 0) throw std::domain_error("zero denominator");
  q_.canonicalize();
}

Scalar Scalar::approx(const Real& value, double tol) { return approx(value, abs_real(value), tol); }

Scalar Scalar::approx(const Real& value, const Real& scale, double tol) {
  init_bits();
  Scalar s;
  s.a_ = std::make_shared<const ApproxPart>(ApproxPart{value, std::max(abs_real(value), abs_real(scale)), tol});
  return s;
}

Scalar Scalar::parse(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty number");
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
  if (auto slash = t.find('/'); slash != std::string::npos) {
    Rational q;
    mpz_class n, d;
    if (n.set_str(t.substr(0, slash), 10) != 0 || d.set_str(t.substr(slash + 1), 10) != 0) throw bad();
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    q = Rational(n, d);
    q.canonicalize();
    return Scalar(q);
  }
  std::string mant = t;
  long exp10 = 0;
  if (auto e = t.find_first_of("eE"); e != std::string::npos) {
    mant = t.substr(0, e);
    char* end = nullptr;
    std::string es = t.substr(e + 1);
    exp10 = std::strtol(es.c_str(), &end, 10);
    if (es.empty() || *end != '\0') throw bad();
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant.erase(0, 1);
  }
  std::string digits;
  long frac = 0;
  bool dot = false;
  for (char c : mant) {
    if (c == '.') {
      if (dot) throw bad();
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (dot) ++frac;
    } else {
      throw bad();
    }
  }
  if (digits.empty()) throw bad();
  mpz_class n(digits, 10);
  Rational q(n);
  q *= pow10(exp10 - frac);
  q.canonicalize();
  if (neg) q = -q;
  return Scalar(q);
}

const Rational& Scalar::exact() const {
  if (a_) throw std::logic_error("exact value requested from approx-track scalar " + str());
  return q_;
}

Real Scalar::real() const { return a_ ? a_->value : to_real(q_); }

const Real& Scalar::scale() const {
  if (!a_) throw std::logic_error("scale requested from exact scalar");
  return a_->scale;
}

double Scalar::to_double() const { return a_ ? a_->value.convert_to<double>() : q_.get_d(); }

std::string Scalar::str() const {
  if (!a_) return q_.get_str();
  return a_->value.str(20);
}

Scalar Scalar::operator-() const {
  if (!a_) return Scalar(Rational(-q_));
  return approx(-a_->value, a_->scale, a_->tol);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (!a.a_ && !b.a_) return Scalar(Rational(a.q_ + b.q_));
  Real v = a.real() + b.real();
  return Scalar::approx(v, std::max(scale_of(a), scale_of(b)), merged_tol(a, b));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (!a.a_ && !b.a_) return Scalar(Rational(a.q_ * b.q_));
  Real v = a.real() * b.real();
  return Scalar::approx(v, scale_of(a) * scale_of(b), merged_tol(a, b));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.a_ && !b.a_) return Scalar(Rational(a.q_ / b.q_));
  Real bv = b.real();
  if (bv == 0) throw std::domain_error("division by an approx zero");
  Real v = a.real() / bv;
  return Scalar::approx(v, scale_of(a) / abs_real(bv), merged_tol(a, b));
}

Scalar Scalar::pow(long n) const {
  if (n < 0) return Scalar(1) / pow(-n);
  if (!a_) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(n));
    return Scalar(Rational(num, den));
  }
  Scalar result(1), base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

bool Scalar::is_zero() const { return a_ ? a_->value == 0 : q_ == 0; }

bool Scalar::same(const Scalar& o) const {
  if (is_exact() != o.is_exact()) return false;
  return a_ ? a_->value == o.a_->value : q_ == o.q_;
}

Sign sign(const Scalar& x) {
  if (x.is_exact()) {
    int s = sgn(x.exact());
    return s < 0 ? Sign::negative : (s == 0 ? Sign::zero : Sign::positive);
  }
  Real v = x.real();
  // An approx zero is only a true zero when nothing nonzero produced it.
  if (v == 0 && x.scale() == 0) return Sign::zero;
  if (abs_real(v) <= x.scale() * x.tol()) return Sign::tie;
  return v < 0 ? Sign::negative : Sign::positive;
}

Sign compare(const Scalar& a, const Scalar& b) { return sign(a - b); }

std::optional<bool> le(const Scalar& a, const Scalar& b) {
  switch (compare(a, b)) {
    case Sign::negative:
    case Sign::zero: return true;
    case Sign::positive: return false;
    case Sign::tie: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<bool> lt(const Scalar& a, const Scalar& b) {
  switch (compare(a, b)) {
    case Sign::negative: return true;
    case Sign::zero:
    case Sign::positive: return false;
    case Sign::tie: return std::nullopt;
  }
  return std::nullopt;
}

bool equal(const Scalar& a, const Scalar& b) {
  Sign s = compare(a, b);
  return s == Sign::zero || s == Sign::tie;
}

Scalar abs(const Scalar& x) { return sign(x) == Sign::negative ? -x : x; }

Scalar min(const Scalar& a, const Scalar& b) { return compare(b, a) == Sign::negative ? b : a; }

Scalar max(const Scalar& a, const Scalar& b) { return compare(b, a) == Sign::positive ? b : a; }

std::optional<Rational> exact_root(const Rational& q, unsigned long n) {
  if (q < 0) return std::nullopt;
  if (n == 1) return q;
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), q.get_num_mpz_t(), n) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), q.get_den_mpz_t(), n) == 0) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

Scalar sqrt(const Scalar& x) {
  if (sign(x) == Sign::negative) throw std::domain_error("sqrt of negative " + x.str());
  if (x.is_exact()) {
    if (auto r = exact_root(x.exact(), 2)) return Scalar(*r);
    Real v = boost::multiprecision::sqrt(to_real(x.exact()));
    return Scalar::approx(v, kDefaultTol);
  }
  Real v = x.real() < 0 ? Real(0) : Real(boost::multiprecision::sqrt(x.real()));
  return Scalar::approx(v, boost::multiprecision::sqrt(x.scale()), x.tol());
}

Scalar rpow(const Scalar& base, const Rational& e) {
  if (e == 0) return Scalar(1);
  Sign s = sign(base);
  if (s == Sign::negative) throw std::domain_error("rpow of negative base " + base.str());
  if (base.is_zero()) {
    if (e < 0) throw std::domain_error("rpow: 0 to a negative power");
    return Scalar(0);
  }
  if (e.get_den() == 1) return base.pow(e.get_num().get_si());
  if (base.is_exact()) {
    if (auto r = exact_root(base.exact(), e.get_den().get_ui())) return Scalar(*r).pow(e.get_num().get_si());
  }
  Real v = boost::multiprecision::pow(base.real(), to_real(e));
  return Scalar::approx(v, std::max(base.tol(), kDefaultTol));
}

Scalar log(const Scalar& x) {
  if (sign(x) != Sign::positive) throw std::domain_error("log of nonpositive " + x.str());
  if (x.is_exact() && x.exact() == 1) return Scalar(0);
  Real v = boost::multiprecision::log(x.real());
  return Scalar::approx(v, abs_real(v) + 1, std::max(x.tol(), kDefaultTol));
}

}  // namespace shiftlab
