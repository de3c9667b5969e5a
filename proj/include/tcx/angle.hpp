#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>

namespace tcx {

using Rational = boost::multiprecision::cpp_rational;

// Error with a stable machine-readable code ("AngleSumViolation", ...).
// The CLI maps input-side codes to exit 2 and analysis failures to exit 1.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Parses "p/q" or "p". Throws Error("BadRational") on garbage.
Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& r);
double rational_to_double(const Rational& r);

// Numeric values (radians) of the declared irrational atoms. Atoms are
// declared algebraically independent from pi by the user; nothing here
// tries to detect hidden relations.
class AtomEnv {
 public:
  void declare(const std::string& name, double value);
  double value(const std::string& name) const;  // throws UnknownAtom
  bool has(const std::string& name) const;
  const std::map<std::string, double>& values() const { return values_; }
  bool operator==(const AtomEnv&) const = default;

 private:
  std::map<std::string, double> values_;
};

// Exact angle: pi_coeff * pi + sum over atoms of coeff * atom.
// Coefficients are arbitrary-precision rationals in lowest terms;
// zero atom coefficients are never stored.
class AngleExpr {
 public:
  AngleExpr() = default;
  static AngleExpr pi(const Rational& coeff);
  static AngleExpr atom(const std::string& name, const Rational& coeff);

  const Rational& pi_coeff() const { return pi_; }
  const std::map<std::string, Rational>& atom_terms() const { return atoms_; }

  AngleExpr operator+(const AngleExpr& o) const;
  AngleExpr operator-(const AngleExpr& o) const;
  AngleExpr operator-() const;
  AngleExpr scaled(const Rational& k) const;
  AngleExpr& operator+=(const AngleExpr& o);
  AngleExpr& operator-=(const AngleExpr& o);

  bool operator==(const AngleExpr& o) const = default;
  bool is_zero() const { return pi_ == 0 && atoms_.empty(); }

  // Projection realizing the quotient R/piQ: drops the pi part.
  AngleExpr mod_pi_rational() const;
  bool is_pi_commensurable() const { return atoms_.empty(); }

  // Canonical representative with pi coefficient reduced into [0, m)
  // (used for holonomy values mod (pi/q)Z, m = 1/q). Atom part unchanged.
  AngleExpr mod_pi_multiple(const Rational& m) const;

  double numeric(const AtomEnv& env) const;  // throws UnknownAtom
  std::string str() const;                   // e.g. "1/2 pi + 1 alpha"

 private:
  Rational pi_;
  std::map<std::string, Rational> atoms_;
  void prune();
};

// Sign of a - b: exact equality decides 0; otherwise the sign of the
// numeric difference (sound because atoms are declared independent).
int compare(const AngleExpr& a, const AngleExpr& b, const AtomEnv& env);

inline AngleExpr angle_pi(long num, long den = 1) {
  return AngleExpr::pi(Rational(num, den));
}

extern const double kPi;

}  // namespace tcx
