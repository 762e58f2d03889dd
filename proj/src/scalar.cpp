#include "oag/scalar.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

#include "oag/error.hpp"

namespace oag {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainMismatch: return "domain-mismatch";
    case ErrorKind::IllFormedSchema: return "ill-formed-schema";
    case ErrorKind::Parse: return "syntax";
    case ErrorKind::PredicateLeak: return "predicate-leak";
    case ErrorKind::UnknownPredicate: return "unknown-predicate";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::NotASentence: return "not-a-sentence";
    case ErrorKind::MissingAssignment: return "missing-assignment";
    case ErrorKind::DegenerateInterval: return "degenerate-interval";
    case ErrorKind::InvalidCover: return "invalid-cover";
    case ErrorKind::NotAFunction: return "not-a-function";
    case ErrorKind::Structure: return "structure";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::DomainMismatch, "zero denominator");
  q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    return j;
  };
  std::size_t num_end = digits(i);
  if (num_end == i) throw Error(ErrorKind::Parse, "malformed rational '" + s + "'");
  mpz_class num(s.substr(i, num_end - i), 10);
  mpz_class den(1);
  i = num_end;
  if (i < s.size() && s[i] == '/') {
    std::size_t den_end = digits(i + 1);
    if (den_end == i + 1) throw Error(ErrorKind::Parse, "malformed rational '" + s + "'");
    den = mpz_class(s.substr(i + 1, den_end - i - 1), 10);
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
    i = den_end;
  }
  if (i != s.size()) throw Error(ErrorKind::Parse, "malformed rational '" + s + "'");
  if (neg) num = -num;
  return Rational(mpq_class(num, den));
}

bool Rational::is_canonical() const {
  if (q_.get_den() <= 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return g == 1;
}

Rational Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return Rational(mpq_class(r));
}

Rational Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return Rational(mpq_class(r));
}

std::string Rational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::DomainMismatch, "division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

bool is_valid_radicand(int d) {
  if (d < 2 || d > kMaxRadicand) return false;
  for (int k = 2; k * k <= d; ++k)
    if (d % (k * k) == 0) return false;
  return true;
}

Scalar Scalar::quad(Rational rat, Rational irr, int radicand) {
  if (irr.is_zero()) return Scalar(std::move(rat));
  if (!is_valid_radicand(radicand))
    throw Error(ErrorKind::DomainMismatch, "radicand " + std::to_string(radicand) + " is not square-free in [2, 97]");
  return Scalar(std::move(rat), std::move(irr), radicand);
}

namespace {

int common_radicand(const Scalar& a, const Scalar& b) {
  if (a.is_rational()) return b.radicand();
  if (b.is_rational() || a.radicand() == b.radicand()) return a.radicand();
  throw Error(ErrorKind::DomainMismatch, "mixed radicands sqrt(" + std::to_string(a.radicand()) + ") and sqrt(" +
                                             std::to_string(b.radicand()) + ")");
}

}  // namespace

Scalar Scalar::operator-() const { return Scalar(-rat_, -irr_, radicand_); }

Scalar operator+(const Scalar& a, const Scalar& b) {
  int d = common_radicand(a, b);
  return Scalar::quad(a.rat_ + b.rat_, a.irr_ + b.irr_, d);
}

Scalar operator*(const Scalar& a, const Rational& k) {
  if (k.is_zero()) return Scalar();
  return Scalar(a.rat_ * k, a.irr_ * k, a.radicand_);
}

Scalar operator/(const Scalar& a, const Rational& k) {
  if (k.is_zero()) throw Error(ErrorKind::DomainMismatch, "division by zero");
  return Scalar(a.rat_ / k, a.irr_ / k, a.radicand_);
}

int Scalar::sign() const {
  int a = rat_.sign();
  int b = irr_.sign();
  if (b == 0) return a;
  if (a == 0 || a == b) return b;
  Rational diff = Rational(radicand_) * irr_ * irr_ - rat_ * rat_;
  return b * diff.sign();
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.radicand_ == b.radicand_ && a.rat_ == b.rat_ && a.irr_ == b.irr_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  int s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Order compare(const Scalar& a, const Scalar& b) {
  auto c = a <=> b;
  return c < 0 ? Order::LT : c > 0 ? Order::GT : Order::EQ;
}

Rational Scalar::floor() const {
  if (is_rational()) return rat_.floor();
  // |irr| * sqrt(d) = sqrt(d * p^2 * q^2) / q^2 with irr = p / q.
  mpz_class p = abs(irr_.numerator());
  mpz_class q = irr_.denominator();
  mpz_class n = radicand_ * p * p * q * q;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  Rational approx(mpq_class(root, q * q));
  if (irr_.sign() < 0) approx = -approx;
  Rational guess = (rat_ + approx).floor();
  while (Scalar(guess) > *this) guess -= 1;
  while (Scalar(guess + 1) <= *this) guess += 1;
  return guess;
}

Rational Scalar::ceil() const {
  Rational f = floor();
  return Scalar(f) == *this ? f : f + 1;
}

double Scalar::to_double() const {
  return rat_.to_double() + irr_.to_double() * std::sqrt(static_cast<double>(radicand_));
}

std::string Scalar::to_string() const {
  if (is_rational()) return rat_.to_string();
  std::string out = rat_.to_string();
  out += irr_.sign() < 0 ? " - " : " + ";
  out += irr_.abs().to_string() + "*sqrt(" + std::to_string(radicand_) + ")";
  return out;
}

Scalar Scalar::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty scalar");

  // Split into signed summands; each is `rat`, `rat*sqrt(d)` or `sqrt(d)`.
  Rational rat;
  Rational irr;
  int radicand = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    bool neg = false;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') neg = !neg;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string piece = s.substr(i, j - i);
    if (piece.empty()) throw Error(ErrorKind::Parse, "malformed scalar '" + std::string(text) + "'");
    auto at = piece.find("sqrt(");
    if (at == std::string::npos) {
      Rational r = Rational::parse(piece);
      rat += neg ? -r : r;
    } else {
      Rational coeff(1);
      if (at > 0) {
        if (piece[at - 1] != '*') throw Error(ErrorKind::Parse, "malformed scalar '" + std::string(text) + "'");
        coeff = Rational::parse(piece.substr(0, at - 1));
      }
      if (piece.back() != ')') throw Error(ErrorKind::Parse, "malformed scalar '" + std::string(text) + "'");
      int d = std::stoi(piece.substr(at + 5, piece.size() - at - 6));
      if (radicand != 0 && d != radicand) throw Error(ErrorKind::DomainMismatch, "mixed radicands in scalar");
      radicand = d;
      irr += neg ? -coeff : coeff;
    }
    i = j;
  }
  return quad(rat, irr, radicand == 0 ? 2 : radicand);
}

Scalar midpoint(const Scalar& a, const Scalar& b) { return (a + b) / Rational(2); }

Rational rational_between(const Scalar& a, const Scalar& b) {
  if (!(a < b)) throw Error(ErrorKind::DegenerateInterval, "rational_between requires a < b");
  Scalar mid = midpoint(a, b);
  if (mid.is_rational()) return mid.rat_part();
  for (Rational den(1);; den *= 2) {
    Rational p = (a * den).floor() + 1;
    Rational candidate = p / den;
    if (Scalar(candidate) < b) return candidate;
  }
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace oag
