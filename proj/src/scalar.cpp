#include "couniv/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "couniv/error.hpp"

namespace couniv {

namespace {

Rational frac_part(Rational t) {
  // floor division keeps the result in [0, 1) for negative inputs too
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  Rational out = t - Rational(q);
  out.canonicalize();
  return out;
}

double frac_part(double t) { return t - std::floor(t); }

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s(buf);
  if (s == "-0") s = "0";
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

const Rational kHalf(1, 2);
const Rational kQuarter(1, 4);

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid_int = [](std::string_view t, bool allow_sign) {
    if (!t.empty() && allow_sign && (t[0] == '-' || t[0] == '+')) {
      t.remove_prefix(1);
    }
    if (t.empty()) return false;
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw ParseError(0, "malformed rational '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class d(den);
  if (d == 0) throw ParseError(0, "zero denominator in '" + s + "'");
  Rational q(mpz_class(num), d);
  q.canonicalize();
  return q;
}

Phase Phase::turns(Rational t) {
  Phase p;
  p.turns_ = frac_part(std::move(t));
  return p;
}

Phase Phase::approx(double t) {
  Phase p;
  p.exact_ = false;
  p.approx_ = frac_part(t);
  return p;
}

Phase Phase::parse(std::string_view text) {
  if (text.find_first_of(".eE") != std::string_view::npos) {
    std::string s(text);
    char* end = nullptr;
    double t = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !std::isfinite(t)) {
      throw ParseError(0, "malformed phase '" + s + "'");
    }
    return approx(t);
  }
  return turns(parse_rational(text));
}

const Rational& Phase::exact_turns() const {
  if (!exact_) throw ModeError("phase is inexact");
  return turns_;
}

double Phase::approx_turns() const {
  return exact_ ? turns_.get_d() : approx_;
}

std::complex<double> Phase::value() const {
  if (exact_) {
    // exact quarter turns map to exact units
    if (turns_ == 0) return {1, 0};
    if (turns_ == kQuarter) return {0, 1};
    if (turns_ == kHalf) return {-1, 0};
    if (turns_ == Rational(3, 4)) return {0, -1};
  }
  return std::polar(1.0, 2 * std::numbers::pi * approx_turns());
}

bool Phase::is_one() const { return *this == Phase(); }

bool Phase::is_quarter() const {
  if (!exact_) return false;
  Rational four = turns_ * 4;
  four.canonicalize();
  return four.get_den() == 1;
}

Phase Phase::operator*(const Phase& other) const {
  if (exact_ && other.exact_) return turns(turns_ + other.turns_);
  return approx(approx_turns() + other.approx_turns());
}

Phase Phase::conj() const {
  if (exact_) return turns(-turns_);
  return approx(-approx_);
}

std::string Phase::to_string() const {
  return exact_ ? couniv::to_string(turns_) : format_double(approx_);
}

bool operator==(const Phase& a, const Phase& b) {
  if (a.exact_ && b.exact_) return a.turns_ == b.turns_;
  double d = frac_part(a.approx_turns() - b.approx_turns());
  return std::min(d, 1 - d) <= kTolerance;
}

Scalar Scalar::gaussian(Rational re, Rational im) {
  re.canonicalize();
  im.canonicalize();
  return Scalar(Gaussian{std::move(re), std::move(im)});
}

Scalar Scalar::normalise_polar(Rational magnitude, Rational t) {
  if (magnitude == 0) return Scalar();
  t = frac_part(std::move(t));
  if (t >= kHalf) {
    t -= kHalf;
    magnitude = -magnitude;
  }
  if (t == 0) return gaussian(std::move(magnitude), 0);
  if (t == kQuarter) return gaussian(0, std::move(magnitude));
  magnitude.canonicalize();
  t.canonicalize();
  return Scalar(Polar{std::move(magnitude), std::move(t)});
}

Scalar Scalar::polar(Rational magnitude, const Phase& phase) {
  if (!phase.is_exact()) {
    return inexact(magnitude.get_d() * phase.value());
  }
  return normalise_polar(std::move(magnitude), phase.exact_turns());
}

Scalar Scalar::inexact(std::complex<double> z) { return Scalar(Inexact{z}); }

Scalar::Mode Scalar::mode() const {
  return static_cast<Mode>(value_.index());
}

bool Scalar::is_zero() const {
  if (auto g = std::get_if<Gaussian>(&value_)) return g->re == 0 && g->im == 0;
  if (auto z = std::get_if<Inexact>(&value_)) {
    return std::abs(z->value) <= kTolerance;
  }
  return false;
}

std::complex<double> Scalar::approx() const {
  if (auto g = std::get_if<Gaussian>(&value_)) {
    return {g->re.get_d(), g->im.get_d()};
  }
  if (auto p = std::get_if<Polar>(&value_)) {
    return std::polar(p->magnitude.get_d(),
                      2 * std::numbers::pi * p->turns.get_d());
  }
  return std::get<Inexact>(value_).value;
}

namespace {

// Polar coordinates (magnitude, turns) of an exact scalar, when the phase is
// rational. Gaussian values qualify only on the axes.
bool exact_polar(const Scalar::Gaussian& g, Rational& m, Rational& t) {
  if (g.im == 0) {
    m = g.re;
    t = 0;
    return true;
  }
  if (g.re == 0) {
    m = g.im;
    t = kQuarter;
    return true;
  }
  return false;
}

[[noreturn]] void mixed_modes(const char* op) {
  throw ModeError(std::string("cannot ") + op +
                  " exact and inexact coefficients");
}

}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero() && is_exact()) return o;
  if (o.is_zero() && o.is_exact()) return *this;
  if (mode() == Mode::Inexact || o.mode() == Mode::Inexact) {
    if (mode() != o.mode()) mixed_modes("add");
    return inexact(approx() + o.approx());
  }
  if (auto a = std::get_if<Gaussian>(&value_)) {
    if (auto b = std::get_if<Gaussian>(&o.value_)) {
      return gaussian(a->re + b->re, a->im + b->im);
    }
  }
  auto a = std::get_if<Polar>(&value_);
  auto b = std::get_if<Polar>(&o.value_);
  if (a && b && a->turns == b->turns) {
    return normalise_polar(a->magnitude + b->magnitude, a->turns);
  }
  throw ModeError("sum of " + to_string() + " and " + o.to_string() +
                  " has no exact representation in this mode");
}

Scalar Scalar::operator-() const {
  return std::visit(
      [](const auto& v) -> Scalar {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return gaussian(-v.re, -v.im);
        } else if constexpr (std::is_same_v<T, Polar>) {
          return Scalar(Polar{-v.magnitude, v.turns});
        } else {
          return inexact(-v.value);
        }
      },
      value_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (mode() == Mode::Inexact || o.mode() == Mode::Inexact) {
    if (mode() != o.mode()) {
      if ((is_exact() && is_zero()) || (o.is_exact() && o.is_zero())) {
        return inexact(0);
      }
      mixed_modes("multiply");
    }
    return inexact(approx() * o.approx());
  }
  auto ga = std::get_if<Gaussian>(&value_);
  auto gb = std::get_if<Gaussian>(&o.value_);
  if (ga && gb) {
    return gaussian(ga->re * gb->re - ga->im * gb->im,
                    ga->re * gb->im + ga->im * gb->re);
  }
  if (is_zero() || o.is_zero()) return Scalar();
  Rational ma, ta, mb, tb;
  auto polar_of = [](const Scalar& s, Rational& m, Rational& t) {
    if (auto p = std::get_if<Polar>(&s.value_)) {
      m = p->magnitude;
      t = p->turns;
      return true;
    }
    return exact_polar(std::get<Gaussian>(s.value_), m, t);
  };
  if (!polar_of(*this, ma, ta) || !polar_of(o, mb, tb)) {
    throw ModeError("product of " + to_string() + " and " + o.to_string() +
                    " has no exact representation in this mode");
  }
  return normalise_polar(ma * mb, ta + tb);
}

Scalar Scalar::conj() const {
  return std::visit(
      [](const auto& v) -> Scalar {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return gaussian(v.re, -v.im);
        } else if constexpr (std::is_same_v<T, Polar>) {
          return normalise_polar(v.magnitude, -v.turns);
        } else {
          return inexact(std::conj(v.value));
        }
      },
      value_);
}

Scalar Scalar::times(const Phase& p) const {
  if (!p.is_exact() || !is_exact()) return inexact(approx() * p.value());
  if (p.is_one()) return *this;
  return *this * polar(1, p);
}

bool Scalar::is_unit() const {
  if (auto g = std::get_if<Gaussian>(&value_)) {
    return g->re * g->re + g->im * g->im == 1;
  }
  if (auto p = std::get_if<Polar>(&value_)) {
    return p->magnitude == 1 || p->magnitude == -1;
  }
  return std::abs(std::abs(approx()) - 1) <= kTolerance;
}

Phase Scalar::to_phase() const {
  if (!is_unit()) {
    throw ModeError("scalar " + to_string() + " is not of unit modulus");
  }
  if (mode() == Mode::Inexact) {
    return Phase::approx(std::arg(approx()) / (2 * std::numbers::pi));
  }
  Rational m, t;
  if (auto p = std::get_if<Polar>(&value_)) {
    m = p->magnitude;
    t = p->turns;
  } else if (!exact_polar(std::get<Gaussian>(value_), m, t)) {
    // Gaussian units off the axes would need irrational coordinates.
    throw ConsistencyError("unit Gaussian rational off the axes");
  }
  return m > 0 ? Phase::turns(t) : Phase::turns(t + kHalf);
}

std::string Scalar::to_string() const {
  if (auto g = std::get_if<Gaussian>(&value_)) {
    if (g->im == 0) return couniv::to_string(g->re);
    std::string im;
    if (g->im == 1) {
      im = "i";
    } else if (g->im == -1) {
      im = "-i";
    } else {
      im = couniv::to_string(g->im) + "*i";
    }
    if (g->re == 0) return im;
    std::string out = "(" + couniv::to_string(g->re);
    if (g->im < 0) {
      Rational abs_im = -g->im;
      out += " - " + (abs_im == 1 ? std::string("i")
                                  : couniv::to_string(abs_im) + "*i");
    } else {
      out += " + " + im;
    }
    return out + ")";
  }
  if (auto p = std::get_if<Polar>(&value_)) {
    std::string phase = "e(" + couniv::to_string(p->turns) + ")";
    if (p->magnitude == 1) return phase;
    if (p->magnitude == -1) return "-" + phase;
    return couniv::to_string(p->magnitude) + "*" + phase;
  }
  auto z = std::get<Inexact>(value_).value;
  std::string out = "(" + format_double(z.real());
  out += z.imag() < 0 ? " - " + format_double(-z.imag())
                      : " + " + format_double(z.imag());
  return out + "*i)";
}

bool Scalar::renders_negative() const {
  if (auto g = std::get_if<Gaussian>(&value_)) {
    return g->im == 0 ? g->re < 0 : (g->re == 0 && g->im < 0);
  }
  if (auto p = std::get_if<Polar>(&value_)) return p->magnitude < 0;
  return false;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.value_ == b.value_;
  if (a.mode() != b.mode() && !(a.is_exact() ? a.is_zero() : b.is_zero())) {
    mixed_modes("compare");
  }
  return std::abs(a.approx() - b.approx()) <= kTolerance;
}

}  // namespace couniv
