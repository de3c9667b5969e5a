#include "tcx/angle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tcx {

const double kPi = std::numbers::pi;

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw Error("BadRational", "empty rational literal");
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(s));
    }
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw Error("BadRational", "zero denominator in " + s);
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error("BadRational", "cannot parse rational literal '" + s + "'");
  }
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  if (boost::multiprecision::denominator(r) == 1) {
    os << boost::multiprecision::numerator(r);
  } else {
    os << boost::multiprecision::numerator(r) << "/"
       << boost::multiprecision::denominator(r);
  }
  return os.str();
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

void AtomEnv::declare(const std::string& name, double value) {
  if (name.empty()) throw Error("BadAtom", "atom name must be nonempty");
  if (!(value > 0) || !std::isfinite(value))
    throw Error("BadAtom", "atom '" + name + "' must have a finite positive value");
  if (values_.count(name))
    throw Error("BadAtom", "duplicate atom '" + name + "'");
  values_[name] = value;
}

double AtomEnv::value(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw Error("UnknownAtom", "atom '" + name + "' not declared");
  return it->second;
}

bool AtomEnv::has(const std::string& name) const { return values_.count(name) > 0; }

AngleExpr AngleExpr::pi(const Rational& coeff) {
  AngleExpr a;
  a.pi_ = coeff;
  return a;
}

AngleExpr AngleExpr::atom(const std::string& name, const Rational& coeff) {
  AngleExpr a;
  if (coeff != 0) a.atoms_[name] = coeff;
  return a;
}

void AngleExpr::prune() {
  for (auto it = atoms_.begin(); it != atoms_.end();) {
    if (it->second == 0)
      it = atoms_.erase(it);
    else
      ++it;
  }
}

AngleExpr AngleExpr::operator+(const AngleExpr& o) const {
  AngleExpr r = *this;
  r += o;
  return r;
}

AngleExpr& AngleExpr::operator+=(const AngleExpr& o) {
  pi_ += o.pi_;
  for (const auto& [name, c] : o.atoms_) atoms_[name] += c;
  prune();
  return *this;
}

AngleExpr AngleExpr::operator-(const AngleExpr& o) const { return *this + (-o); }

AngleExpr& AngleExpr::operator-=(const AngleExpr& o) {
  *this += -o;
  return *this;
}

AngleExpr AngleExpr::operator-() const {
  AngleExpr r;
  r.pi_ = -pi_;
  for (const auto& [name, c] : atoms_) r.atoms_[name] = -c;
  return r;
}

AngleExpr AngleExpr::scaled(const Rational& k) const {
  AngleExpr r;
  r.pi_ = pi_ * k;
  if (k != 0)
    for (const auto& [name, c] : atoms_) r.atoms_[name] = c * k;
  return r;
}

AngleExpr AngleExpr::mod_pi_rational() const {
  AngleExpr r = *this;
  r.pi_ = 0;
  return r;
}

AngleExpr AngleExpr::mod_pi_multiple(const Rational& m) const {
  if (m <= 0) throw Error("BadModulus", "modulus must be positive");
  AngleExpr r = *this;
  // floor division of pi_ by m
  Rational q = pi_ / m;
  boost::multiprecision::cpp_int fl =
      boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
  if (q < 0 && fl * boost::multiprecision::denominator(q) !=
                   boost::multiprecision::numerator(q))
    fl -= 1;
  r.pi_ = pi_ - Rational(fl) * m;
  return r;
}

double AngleExpr::numeric(const AtomEnv& env) const {
  double v = rational_to_double(pi_) * kPi;
  for (const auto& [name, c] : atoms_) v += rational_to_double(c) * env.value(name);
  if (!std::isfinite(v)) throw Error("NonFiniteAngle", "angle evaluates non-finite");
  return v;
}

std::string AngleExpr::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (pi_ != 0) {
    os << rational_str(pi_) << " pi";
    first = false;
  }
  for (const auto& [name, c] : atoms_) {
    if (!first) os << (c >= 0 ? " + " : " - ");
    Rational a = (!first && c < 0) ? Rational(-c) : c;
    os << rational_str(a) << " " << name;
    first = false;
  }
  return os.str();
}

int compare(const AngleExpr& a, const AngleExpr& b, const AtomEnv& env) {
  if (a == b) return 0;
  double d = a.numeric(env) - b.numeric(env);
  if (d > 0) return 1;
  if (d < 0) return -1;
  // Exactly equal numerics but different expressions: order by structure so
  // ties stay deterministic.
  if (a.pi_coeff() != b.pi_coeff()) return a.pi_coeff() < b.pi_coeff() ? -1 : 1;
  return a.atom_terms() < b.atom_terms() ? -1 : 1;
}

}  // namespace tcx
