#include "adelic/log_value.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace adelic {

LogValue LogValue::exact(Rational coeff, Integer prime) {
  LogValue v;
  coeff.canonicalize();
  v.coeff_ = std::move(coeff);
  v.prime_ = (v.coeff_ == 0) ? Integer(0) : std::move(prime);
  if (v.coeff_ != 0 && v.prime_ < 2) throw std::invalid_argument("exact log value needs a prime");
  return v;
}

LogValue LogValue::approx(double value, double error) {
  if (!(error >= 0.0)) throw std::invalid_argument("error bound must be nonnegative");
  LogValue v;
  v.kind_ = Kind::approx;
  v.value_ = value;
  v.error_ = error;
  return v;
}

LogValue LogValue::neg_infinity() {
  LogValue v;
  v.kind_ = Kind::neg_infinity;
  return v;
}

long double LogValue::value() const {
  switch (kind_) {
    case Kind::exact:
      if (coeff_ == 0) return 0.0L;
      return static_cast<long double>(coeff_.get_d()) * log_abs_integer(prime_);
    case Kind::approx:
      return value_;
    case Kind::neg_infinity:
      return -std::numeric_limits<long double>::infinity();
  }
  return 0.0L;
}

LogValue& LogValue::operator+=(const LogValue& other) {
  if (kind_ == Kind::neg_infinity || other.kind_ == Kind::neg_infinity) {
    *this = neg_infinity();
    return *this;
  }
  if (other.is_exact_zero()) return *this;
  if (is_exact_zero()) {
    *this = other;
    return *this;
  }
  if (kind_ == Kind::exact && other.kind_ == Kind::exact) {
    if (prime_ != other.prime_) throw std::logic_error("adding exact log values at different primes");
    coeff_ += other.coeff_;
    if (coeff_ == 0) prime_ = 0;
    return *this;
  }
  if (kind_ == Kind::approx && other.kind_ == Kind::approx) {
    value_ += other.value_;
    error_ += other.error_;
    return *this;
  }
  throw std::logic_error("adding an exact finite-place value to an archimedean value");
}

LogValue LogValue::operator-() const {
  LogValue v = *this;
  if (kind_ == Kind::neg_infinity) throw std::logic_error("negating log 0");
  v.coeff_ = -v.coeff_;
  v.value_ = -v.value_;
  return v;
}

LogValue& LogValue::operator-=(const LogValue& other) {
  if (other.kind_ == Kind::neg_infinity) throw std::logic_error("subtracting log 0");
  return *this += -other;
}

LogValue operator*(const Rational& s, LogValue v) {
  switch (v.kind_) {
    case LogValue::Kind::exact:
      v.coeff_ *= s;
      if (v.coeff_ == 0) v.prime_ = 0;
      return v;
    case LogValue::Kind::approx: {
      const double d = s.get_d();
      v.value_ *= d;
      v.error_ *= std::fabs(d);
      return v;
    }
    case LogValue::Kind::neg_infinity:
      if (s > 0) return v;
      throw std::logic_error("scaling log 0 by a non-positive factor");
  }
  return v;
}

LogValue operator*(double s, LogValue v) {
  switch (v.kind_) {
    case LogValue::Kind::exact:
      if (v.coeff_ == 0) return v;
      throw std::logic_error("floating scaling of an exact value");
    case LogValue::Kind::approx:
      v.value_ *= s;
      v.error_ *= std::fabs(s);
      return v;
    case LogValue::Kind::neg_infinity:
      if (s > 0) return v;
      throw std::logic_error("scaling log 0 by a non-positive factor");
  }
  return v;
}

bool operator==(const LogValue& a, const LogValue& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case LogValue::Kind::exact:
      return a.coeff_ == b.coeff_ && (a.coeff_ == 0 || a.prime_ == b.prime_);
    case LogValue::Kind::approx:
      return a.value_ == b.value_ && a.error_ == b.error_;
    case LogValue::Kind::neg_infinity:
      return true;
  }
  return false;
}

std::string LogValue::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::exact:
      if (coeff_ == 0) return "0";
      os << coeff_.get_str() << "*log(" << prime_.get_str() << ")";
      break;
    case Kind::approx:
      os.precision(17);
      os << value_ << " +/- " << error_;
      break;
    case Kind::neg_infinity:
      return "-inf";
  }
  return os.str();
}

int compare_exact(const LogValue& a, const LogValue& b) {
  if (!a.is_exact() || !b.is_exact()) throw std::logic_error("compare_exact on non-exact values");
  if (!a.is_exact_zero() && !b.is_exact_zero() && a.prime() != b.prime())
    throw std::logic_error("compare_exact at different primes");
  return cmp(a.coefficient(), b.coefficient()) < 0 ? -1 : (a.coefficient() == b.coefficient() ? 0 : 1);
}

}  // namespace adelic
