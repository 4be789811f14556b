#pragma once

// Exact and inexact scalars for the operator calculus.
//
// Phases are points e^{2 pi i t} of the circle, stored either as an exact
// rational t in [0, 1) or as an approximate double. Scalars come in three
// modes:
//
//   Gaussian   a + bi with a, b rational;
//   Polar      m e^{2 pi i t} with m, t rational, for phases that are not
//              multiples of a quarter turn;
//   Inexact    std::complex<double>, compared with tolerance kTolerance.
//
// Exact values are kept in a unique normal form, so equality is structural.
// A sum of two exact values whose phases differ (other than by a half turn)
// has no exact representation here and raises ModeError, as does mixing an
// exact nonzero value with an inexact one.

#include <complex>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace couniv {

using Rational = mpq_class;

inline constexpr double kTolerance = 1e-9;

/// Canonical "p/q" text of a rational.
std::string to_string(const Rational& q);
/// Parses "p", "-p" or "p/q"; throws ParseError otherwise.
Rational parse_rational(std::string_view text);

class Phase {
 public:
  Phase() = default;

  /// e^{2 pi i t}, reduced to t in [0, 1).
  static Phase turns(Rational t);
  static Phase approx(double t);
  /// "p/q" or an integer gives an exact phase; a decimal gives an inexact
  /// one.
  static Phase parse(std::string_view text);

  bool is_exact() const noexcept { return exact_; }
  /// Requires is_exact().
  const Rational& exact_turns() const;
  double approx_turns() const;
  std::complex<double> value() const;

  bool is_one() const;
  /// Exact multiple of a quarter turn.
  bool is_quarter() const;

  Phase operator*(const Phase& other) const;
  Phase conj() const;

  std::string to_string() const;

  /// Exact phases compare structurally; otherwise within kTolerance.
  friend bool operator==(const Phase& a, const Phase& b);

 private:
  bool exact_ = true;
  Rational turns_{0};
  double approx_ = 0.0;
};

class Scalar {
 public:
  struct Gaussian {
    Rational re, im;
    friend bool operator==(const Gaussian&, const Gaussian&) = default;
  };
  struct Polar {
    Rational magnitude;  // nonzero
    Rational turns;      // in (0, 1/2), never 1/4
    friend bool operator==(const Polar&, const Polar&) = default;
  };
  struct Inexact {
    std::complex<double> value;
    friend bool operator==(const Inexact&, const Inexact&) = default;
  };

  enum class Mode { Gaussian, Polar, Inexact };

  Scalar() : value_(Gaussian{0, 0}) {}
  Scalar(int n) : value_(Gaussian{n, 0}) {}  // NOLINT: implicit by design
  static Scalar rational(Rational q) { return gaussian(std::move(q), 0); }
  static Scalar gaussian(Rational re, Rational im);
  static Scalar polar(Rational magnitude, const Phase& phase);
  static Scalar inexact(std::complex<double> z);
  static Scalar i() { return gaussian(0, 1); }

  Mode mode() const;
  bool is_exact() const { return mode() != Mode::Inexact; }
  bool is_zero() const;
  std::complex<double> approx() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const { return *this + (-o); }
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar conj() const;
  /// Multiplies by a phase; an inexact phase turns the result inexact.
  Scalar times(const Phase& p) const;
  /// Same value in inexact mode.
  Scalar to_inexact() const { return inexact(approx()); }

  /// The phase of a unit-modulus value; throws ModeError for other values.
  Phase to_phase() const;
  bool is_unit() const;

  /// Element-syntax rendering, e.g. "-1/2", "(1 + 2*i)", "3*e(1/3)".
  std::string to_string() const;
  /// Whether to_string() starts with a minus sign that can be pulled out
  /// of a sum.
  bool renders_negative() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  using Value = std::variant<Gaussian, Polar, Inexact>;
  explicit Scalar(Value v) : value_(std::move(v)) {}
  static Scalar normalise_polar(Rational magnitude, Rational turns);

  Value value_;
};

}  // namespace couniv
