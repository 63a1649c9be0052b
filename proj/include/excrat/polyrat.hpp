#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "excrat/ffield.hpp"

namespace excrat {

// Dense univariate polynomial over one Field. Coefficients are stored as
// element indices, constant term first, with trailing zeros trimmed, so the
// zero polynomial has an empty coefficient vector and degree -1.
class Polynomial {
public:
  explicit Polynomial(FieldPtr field) : field_(std::move(field)) {}
  Polynomial(FieldPtr field, std::vector<std::uint64_t> coeff_indices);

  static Polynomial zero(FieldPtr field) { return Polynomial(std::move(field)); }
  static Polynomial one(const FieldPtr& field);
  static Polynomial constant(const FieldElement& c);
  static Polynomial identity(const FieldPtr& field);  // the polynomial X
  static Polynomial monomial(const FieldPtr& field, std::uint64_t degree,
                             std::uint64_t coeff_index = 1);
  static Polynomial from_elements(const std::vector<FieldElement>& coeffs);
  // m = 1: "0,2,0,1"; m >= 2: element encodings joined by ';'
  static Polynomial parse(const FieldPtr& field, std::string_view text);

  const FieldPtr& field() const { return field_; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  std::uint64_t coeff_index(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  FieldElement coeff(std::size_t i) const { return {field_, coeff_index(i)}; }
  std::uint64_t leading_index() const { return c_.empty() ? 0 : c_.back(); }
  FieldElement leading() const { return {field_, leading_index()}; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Polynomial operator-() const;
  Polynomial pow(std::uint64_t e) const;
  Polynomial derivative() const;
  std::uint64_t evaluate_index(std::uint64_t x) const;
  FieldElement evaluate(const FieldElement& x) const;

  std::string to_string() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const FieldElement& s);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
  void trim();
  FieldPtr field_;
  std::vector<std::uint64_t> c_;
};

// quotient and remainder; b must be nonzero
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b);
Polynomial poly_div(const Polynomial& a, const Polynomial& b);
Polynomial poly_mod(const Polynomial& a, const Polynomial& b);
bool divides(const Polynomial& d, const Polynomial& a);
// monic gcd; gcd(a, 0) = monic(a), gcd(0, 0) = 0
Polynomial poly_gcd(Polynomial a, Polynomial b);
Polynomial make_monic(const Polynomial& a);

Polynomial taylor_shift(const Polynomial& p, const FieldElement& c);  // p(X + c)
Polynomial scale_arg(const Polynomial& p, const FieldElement& b);     // p(bX)
// X^deg(p) * p(1/X); maps roots to their inverses when p(0) != 0
Polynomial reverse_poly(const Polynomial& p);
// pre: p is a p-th power (its derivative vanishes identically)
Polynomial pth_root(const Polynomial& p);
// coefficientwise x -> x^{p^i}
Polynomial frobenius_coeffs(const Polynomial& p, unsigned i);
Polynomial map_into(const Polynomial& p, const EmbeddingMap& emb);

// p = lc * prod g_i^{m_i} with the g_i monic, squarefree, pairwise coprime and
// the m_i distinct; only nonconstant g_i are listed, sorted by multiplicity
std::vector<std::pair<Polynomial, unsigned>> squarefree_decomposition(const Polynomial& p);
Polynomial squarefree_part(const Polynomial& p);
unsigned multiplicity_at(const Polynomial& p, const FieldElement& alpha);
// all roots in the polynomial's own field, ascending; costs O(|field| * deg)
std::vector<FieldElement> roots_of(const Polynomial& p);
// true iff every root of v (in any extension) is a root of k; k monic squarefree, v nonzero
bool roots_contained_in(Polynomial v, const Polynomial& k);

// A point of the projective line over a field: either finite or the point at
// infinity. Ordered by element index with infinity last.
class ProjectivePoint {
public:
  static ProjectivePoint at_infinity(FieldPtr field);
  static ProjectivePoint finite(FieldElement value);

  bool is_infinity() const { return inf_; }
  const FieldElement& value() const;
  const FieldPtr& field() const { return field_; }
  std::string to_string() const;

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b);
  friend bool operator!=(const ProjectivePoint& a, const ProjectivePoint& b) {
    return !(a == b);
  }
  friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b);

private:
  ProjectivePoint(FieldPtr field, bool inf, FieldElement v);
  FieldPtr field_;
  bool inf_;
  FieldElement v_;
};

// Reduced fraction num/den with monic denominator. The constructor reduces;
// the `reduced` factory trusts its caller and only normalizes the leading
// denominator coefficient.
class RationalFunction {
public:
  RationalFunction(Polynomial num, Polynomial den);
  static RationalFunction reduced(Polynomial num, Polynomial den);
  static RationalFunction from_polynomial(Polynomial p);
  static RationalFunction parse(const FieldPtr& field, std::string_view text);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }
  // degree as a map of the projective line
  std::int64_t degree() const { return std::max(num_.degree(), den_.degree()); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_zero() const { return num_.is_zero(); }

  std::string to_string() const;  // "num / den"

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
    return !(a == b);
  }

private:
  struct trusted_t {};
  RationalFunction(Polynomial num, Polynomial den, trusted_t);
  Polynomial num_, den_;
};

// outer(inner), reduced once at the end; asserts degree multiplicativity
RationalFunction rf_compose(const RationalFunction& outer, const RationalFunction& inner);
RationalFunction rf_compose(const Polynomial& outer, const RationalFunction& inner);
// f((a X + b)/(c X + d)) for an invertible matrix; reduction is preserved, no gcd
RationalFunction substitute_moebius(const RationalFunction& f, const FieldElement& a,
                                    const FieldElement& b, const FieldElement& c,
                                    const FieldElement& d);
// special Moebius substitutions with linear cost per coefficient row
RationalFunction rf_shift_arg(const RationalFunction& f, const FieldElement& c);  // f(X + c)
RationalFunction rf_scale_arg(const RationalFunction& f, const FieldElement& b);  // f(bX), b nonzero
RationalFunction rf_scale(const RationalFunction& f, const FieldElement& c);
RationalFunction rf_sub_scalar(const RationalFunction& f, const FieldElement& c);  // f - c
ProjectivePoint rf_evaluate(const RationalFunction& f, const ProjectivePoint& x);
// order of vanishing at a finite point; f must be nonzero
int valuation_at(const RationalFunction& f, const FieldElement& alpha);
int valuation_at_infinity(const RationalFunction& f);
// numerator of the derivative: num' * den - num * den'
Polynomial rf_derivative_numerator(const RationalFunction& f);
RationalFunction map_into(const RationalFunction& f, const EmbeddingMap& emb);

}  // namespace excrat
