#include "fukaya/novikov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "fukaya/errors.hpp"

namespace fukaya {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Complex unit_pow(const Complex& z, long long k) {
  if (k == 0) return {1.0, 0.0};
  return std::polar(1.0, std::arg(z) * static_cast<double>(k));
}

NovikovScalar::NovikovScalar(std::vector<NovikovTerm> terms, Cutoff cutoff)
    : cutoff_(std::move(cutoff)) {
  std::sort(terms.begin(), terms.end(),
            [](const NovikovTerm& a, const NovikovTerm& b) { return a.exponent < b.exponent; });
  for (auto& t : terms) {
    if (!below_cutoff(t.exponent, cutoff_)) break;
    if (!terms_.empty() && terms_.back().exponent == t.exponent) {
      terms_.back().coefficient += t.coefficient;
    } else {
      terms_.push_back(t);
    }
  }
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                              [](const NovikovTerm& t) { return t.coefficient == Complex(0.0, 0.0); }),
               terms_.end());
}

NovikovScalar NovikovScalar::zero(Cutoff cutoff) { return NovikovScalar({}, std::move(cutoff)); }

NovikovScalar NovikovScalar::constant(const Complex& c, Cutoff cutoff) {
  return NovikovScalar({{Rational(0), c}}, std::move(cutoff));
}

NovikovScalar NovikovScalar::monomial(const Rational& exponent, const Complex& c, Cutoff cutoff) {
  return NovikovScalar({{exponent, c}}, std::move(cutoff));
}

Complex NovikovScalar::coefficient_at(const Rational& e) const {
  for (const auto& t : terms_) {
    if (t.exponent == e) return t.coefficient;
    if (e < t.exponent) break;
  }
  return {0.0, 0.0};
}

NovikovScalar NovikovScalar::truncated(const Cutoff& c) const {
  return NovikovScalar(terms_, cutoff_min(cutoff_, c));
}

NovikovScalar NovikovScalar::scaled(const Complex& c) const {
  std::vector<NovikovTerm> out = terms_;
  for (auto& t : out) t.coefficient *= c;
  return NovikovScalar(std::move(out), cutoff_);
}

NovikovScalar NovikovScalar::shifted(const Rational& e) const {
  std::vector<NovikovTerm> out = terms_;
  for (auto& t : out) t.exponent += e;
  Cutoff c = cutoff_;
  if (c) c = *c + e;
  return NovikovScalar(std::move(out), std::move(c));
}

NovikovScalar NovikovScalar::operator-() const { return scaled({-1.0, 0.0}); }

NovikovScalar operator+(const NovikovScalar& a, const NovikovScalar& b) {
  std::vector<NovikovTerm> merged;
  merged.reserve(a.terms_.size() + b.terms_.size());
  merged.insert(merged.end(), a.terms_.begin(), a.terms_.end());
  merged.insert(merged.end(), b.terms_.begin(), b.terms_.end());
  return NovikovScalar(std::move(merged), cutoff_min(a.cutoff_, b.cutoff_));
}

NovikovScalar operator-(const NovikovScalar& a, const NovikovScalar& b) { return a + (-b); }

NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b) {
  Cutoff cut = cutoff_min(a.cutoff_, b.cutoff_);
  std::map<Rational, Complex> acc;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Rational e = ta.exponent + tb.exponent;
      if (!below_cutoff(e, cut)) continue;
      acc[e] += ta.coefficient * tb.coefficient;
    }
  }
  std::vector<NovikovTerm> out;
  out.reserve(acc.size());
  for (const auto& [e, c] : acc) out.push_back({e, c});
  return NovikovScalar(std::move(out), std::move(cut));
}

RingConfig::RingConfig(Rational cutoff_, double tol_, int n_)
    : cutoff(std::move(cutoff_)), tol(tol_), n(n_) {
  if (!(Rational(0) < cutoff)) throw ValidationError("RingConfig: cutoff must be positive");
  if (!(tol >= 0.0 && tol < 1.0)) throw ValidationError("RingConfig: tol must be in [0,1)");
  if (n < 1) throw ValidationError("RingConfig: n must be a positive integer");
}

Complex RingConfig::zeta() const { return std::polar(1.0, kPi / n); }

Complex RingConfig::zeta_pow(long long k) const {
  long long m = 2LL * n;
  long long r = k % m;
  if (r < 0) r += m;
  if (r == 0) return {1.0, 0.0};
  return std::polar(1.0, kPi * static_cast<double>(r) / n);
}

std::optional<Rational> nv_val(const NovikovScalar& a) {
  if (a.is_zero()) return std::nullopt;
  return a.terms().front().exponent;
}

NovikovScalar nv_add(const NovikovScalar& a, const NovikovScalar& b) { return a + b; }
NovikovScalar nv_mul(const NovikovScalar& a, const NovikovScalar& b) { return a * b; }

NovikovScalar nv_inv(const NovikovScalar& a, double tol) {
  if (a.is_zero()) throw ZeroDivisionError("nv_inv: inverse of zero");
  const NovikovTerm& lead = a.terms().front();
  if (std::abs(lead.coefficient) <= tol) {
    throw IllConditionedError("nv_inv: leading coefficient magnitude " +
                              std::to_string(std::abs(lead.coefficient)) + " is within tolerance");
  }
  const Rational& e = lead.exponent;
  Complex inv_c = Complex(1.0, 0.0) / lead.coefficient;

  // a = lead * (1 + q) with val(q) > 0; inverse = lead^{-1} * sum (-q)^k.
  // Knowing a mod T^c determines the inverse mod T^{c - 2e}.
  NovikovScalar q = (a - NovikovScalar::monomial(e, lead.coefficient, a.cutoff()))
                        .shifted(-e)
                        .scaled(inv_c);
  Cutoff result_cut = a.cutoff();
  if (result_cut) result_cut = *result_cut - e - e;

  if (q.is_zero()) {
    return NovikovScalar::monomial(-e, inv_c, result_cut);
  }
  if (!a.cutoff()) {
    throw DomainError("nv_inv: non-monomial operand needs a finite cutoff");
  }
  Cutoff series_cut = *result_cut + e;
  q = q.truncated(series_cut);
  NovikovScalar series = NovikovScalar::constant({1.0, 0.0}, series_cut);
  NovikovScalar power = NovikovScalar::constant({1.0, 0.0}, series_cut);
  while (true) {
    power = power * (-q);
    if (power.is_zero()) break;
    series = series + power;
  }
  return series.shifted(-e).scaled(inv_c).truncated(result_cut);
}

NovikovScalar nv_exp(const NovikovScalar& a) {
  Complex c0{0.0, 0.0};
  std::vector<NovikovTerm> positive;
  for (const auto& t : a.terms()) {
    if (t.exponent.is_negative()) {
      throw DomainError("nv_exp: operand has negative valuation");
    }
    if (t.exponent.is_zero()) {
      c0 = t.coefficient;
    } else {
      positive.push_back(t);
    }
  }
  NovikovScalar p(std::move(positive), a.cutoff());
  if (!p.is_zero() && !a.cutoff()) {
    throw DomainError("nv_exp: non-constant operand needs a finite cutoff");
  }
  NovikovScalar result = NovikovScalar::constant({1.0, 0.0}, a.cutoff());
  if (!p.is_zero()) {
    NovikovScalar term = NovikovScalar::constant({1.0, 0.0}, a.cutoff());
    for (long long k = 1;; ++k) {
      term = (term * p).scaled(Complex(1.0 / static_cast<double>(k), 0.0));
      if (term.is_zero()) break;
      result = result + term;
    }
  }
  return result.scaled(std::exp(c0));
}

NovikovScalar nv_pow(const NovikovScalar& a, long long k, double tol) {
  if (k < 0) return nv_pow(nv_inv(a, tol), -k, tol);
  NovikovScalar result = NovikovScalar::constant({1.0, 0.0}, a.cutoff());
  NovikovScalar base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

NovikovScalar nv_weighted_product(const Rational& shift, const std::vector<NovikovScalar>& bases,
                                  const std::vector<long long>& exponents,
                                  const RingConfig& cfg) {
  if (bases.size() != exponents.size()) {
    throw ValidationError("nv_weighted_product: one exponent per base");
  }
  // Negative factor valuations (and a negative leading shift) pull
  // high-order terms of the other factors back below the cutoff.
  Rational pull = fukaya::min(shift, Rational(0));
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (exponents[i] == 0) continue;
    if (bases[i].is_zero()) throw ZeroDivisionError("nv_weighted_product: zero base");
    Rational d = *nv_val(bases[i]) * Rational(exponents[i]);
    if (d.is_negative()) pull += d;
  }
  NovikovScalar w = NovikovScalar::monomial(shift, {1.0, 0.0});
  bool truncated_inverse = false;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    long long e = exponents[i];
    if (e == 0) continue;
    if (e > 0) {
      w = w * nv_pow(bases[i], e, cfg.tol);
      continue;
    }
    // The factor base^e must be correct modulo the cutoff minus the downward
    // pull of the others; inverting costs 2*val once, and each of the |e|
    // inverse factors can pull the others' terms down by val more.
    Rational val = *nv_val(bases[i]);
    Rational d = val * Rational(e);
    Rational need = cfg.cutoff - (pull - fukaya::min(d, Rational(0)));
    Rational input_cut = need + Rational(-e + 1) * fukaya::max(val, Rational(0));
    NovikovScalar base = bases[i].truncated(Cutoff(input_cut));
    if (base.terms().size() > 1 || base.terms().size() < bases[i].terms().size()) {
      truncated_inverse = true;
    }
    w = w * nv_pow(base, e, cfg.tol);
  }
  // Monomial inverses and plain powers are exact to any order; only a
  // truncated inverse series limits the result to the working cutoff.
  return truncated_inverse ? w.truncated(Cutoff(cfg.cutoff)) : w;
}

NovikovScalar nv_pow_in_ring(const NovikovScalar& a, long long k, const RingConfig& cfg) {
  if (k < 0) return nv_weighted_product(Rational(0), {a}, {k}, cfg);
  return nv_pow(a, k, cfg.tol);
}

bool nv_exact_eq(const NovikovScalar& a, const NovikovScalar& b) {
  Cutoff bound = cutoff_min(a.cutoff(), b.cutoff());
  NovikovScalar ta = a.truncated(bound);
  NovikovScalar tb = b.truncated(bound);
  if (ta.terms().size() != tb.terms().size()) return false;
  for (std::size_t i = 0; i < ta.terms().size(); ++i) {
    if (ta.terms()[i].exponent != tb.terms()[i].exponent) return false;
    if (ta.terms()[i].coefficient != tb.terms()[i].coefficient) return false;
  }
  return true;
}

double nv_max_dev(const NovikovScalar& a, const NovikovScalar& b, const RingConfig& cfg) {
  Cutoff bound = cutoff_min(cutoff_min(a.cutoff(), b.cutoff()), Cutoff(cfg.cutoff));
  double dev = 0.0;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->exponent < ib->exponent)) {
      if (below_cutoff(ia->exponent, bound)) dev = std::max(dev, std::abs(ia->coefficient));
      ++ia;
    } else if (ia == a.terms().end() || ib->exponent < ia->exponent) {
      if (below_cutoff(ib->exponent, bound)) dev = std::max(dev, std::abs(ib->coefficient));
      ++ib;
    } else {
      if (below_cutoff(ia->exponent, bound)) {
        dev = std::max(dev, std::abs(ia->coefficient - ib->coefficient));
      }
      ++ia;
      ++ib;
    }
  }
  return dev;
}

bool nv_eq(const NovikovScalar& a, const NovikovScalar& b, const RingConfig& cfg) {
  return nv_max_dev(a, b, cfg) <= cfg.tol;
}

std::string format_complex(const Complex& c) {
  char buf[64];
  if (c.imag() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%.12g", c.real());
    return buf;
  }
  std::snprintf(buf, sizeof(buf), "(%.12g%+.12gi)", c.real(), c.imag());
  return buf;
}

std::string NovikovScalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    bool unit_coef = t.coefficient == Complex(1.0, 0.0);
    if (t.exponent.is_zero()) {
      os << format_complex(t.coefficient);
    } else {
      if (!unit_coef) os << format_complex(t.coefficient) << "*";
      os << "T^(" << t.exponent.str() << ")";
    }
  }
  if (cutoff_) os << " [mod T^(" << cutoff_->str() << ")]";
  return os.str();
}

}  // namespace fukaya
