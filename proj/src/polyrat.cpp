#include "excrat/polyrat.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace excrat {

namespace {
using u64 = std::uint64_t;
using u16 = std::uint16_t;

void require_same_field(const Polynomial& a, const Polynomial& b, const char* op) {
  if (a.field() != b.field())
    throw std::invalid_argument(std::string(op) + ": polynomials over different fields");
}
}  // namespace

Polynomial::Polynomial(FieldPtr field, std::vector<u64> coeff_indices)
    : field_(std::move(field)), c_(std::move(coeff_indices)) {
  for (u64 c : c_)
    if (c >= field_->order()) throw std::invalid_argument("polynomial: coefficient index out of range");
  trim();
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::one(const FieldPtr& field) { return {field, {1}}; }

Polynomial Polynomial::constant(const FieldElement& c) {
  return {c.field(), {c.index()}};
}

Polynomial Polynomial::identity(const FieldPtr& field) { return {field, {0, 1}}; }

Polynomial Polynomial::monomial(const FieldPtr& field, u64 degree, u64 coeff_index) {
  if (coeff_index == 0) return zero(field);
  std::vector<u64> c(degree + 1, 0);
  c[degree] = coeff_index;
  return {field, std::move(c)};
}

Polynomial Polynomial::from_elements(const std::vector<FieldElement>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial: empty coefficient list");
  std::vector<u64> idx;
  idx.reserve(coeffs.size());
  for (const auto& e : coeffs) {
    if (e.field() != coeffs.front().field())
      throw std::invalid_argument("polynomial: coefficients from different fields");
    idx.push_back(e.index());
  }
  return {coeffs.front().field(), std::move(idx)};
}

Polynomial Polynomial::parse(const FieldPtr& field, std::string_view text) {
  const char sep = field->extension_degree() >= 2 ? ';' : ',';
  std::vector<FieldElement> coeffs;
  std::string token;
  std::istringstream is{std::string(text)};
  while (std::getline(is, token, sep)) {
    size_t b = token.find_first_not_of(" \t");
    size_t e = token.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("polynomial: empty coefficient");
    coeffs.push_back(field->parse(token.substr(b, e - b + 1)));
  }
  if (coeffs.empty()) throw std::invalid_argument("polynomial: empty encoding");
  return from_elements(coeffs);
}

std::string Polynomial::to_string() const {
  if (c_.empty()) return field_->zero().to_string();
  const char* sep = field_->extension_degree() >= 2 ? ";" : ",";
  std::ostringstream os;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << sep;
    os << FieldElement(field_, c_[i]).to_string();
  }
  return os.str();
}

Polynomial Polynomial::operator-() const {
  Polynomial r(field_);
  r.c_.reserve(c_.size());
  for (u64 c : c_) r.c_.push_back(field_->neg_i(c));
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_field(a, b, "add");
  const auto& f = *a.field_;
  Polynomial r(a.field_);
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] = f.add_i(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0);
  r.trim();
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  require_same_field(a, b, "sub");
  const auto& f = *a.field_;
  Polynomial r(a.field_);
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] = f.sub_i(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0);
  r.trim();
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_field(a, b, "mul");
  if (a.is_zero() || b.is_zero()) return Polynomial::zero(a.field_);
  const auto& f = *a.field_;
  Polynomial r(a.field_);
  r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  if (f.tabled()) {
    const u64 n = f.order();
    const u16* MT = f.mul_table();
    const u16* AT = f.add_table();
    for (size_t i = 0; i < a.c_.size(); ++i) {
      const u64 ai = a.c_[i];
      if (!ai) continue;
      const u16* row = MT + ai * n;
      u64* out = r.c_.data() + i;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        const u64 t = row[b.c_[j]];
        if (t) out[j] = AT[out[j] * n + t];
      }
    }
  } else {
    for (size_t i = 0; i < a.c_.size(); ++i) {
      const u64 ai = a.c_[i];
      if (!ai) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        u64 t = f.mul_i(ai, b.c_[j]);
        if (t) r.c_[i + j] = f.add_i(r.c_[i + j], t);
      }
    }
  }
  r.trim();
  return r;
}

Polynomial operator*(const Polynomial& a, const FieldElement& s) {
  if (a.field() != s.field()) throw std::invalid_argument("scale: fields differ");
  if (s.is_zero() || a.is_zero()) return Polynomial::zero(a.field_);
  const auto& f = *a.field_;
  Polynomial r(a.field_);
  r.c_.reserve(a.c_.size());
  for (u64 c : a.c_) r.c_.push_back(f.mul_i(c, s.index()));
  return r;
}

Polynomial Polynomial::pow(u64 e) const {
  Polynomial r = one(field_);
  Polynomial base = *this;
  while (e) {
    if (e & 1) r = r * base;
    if (e >>= 1) base = base * base;
  }
  return r;
}

Polynomial Polynomial::derivative() const {
  Polynomial r(field_);
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) {
    u64 k = i % field_->characteristic();
    r.c_[i - 1] = field_->mul_i(c_[i], k);
  }
  r.trim();
  return r;
}

u64 Polynomial::evaluate_index(u64 x) const {
  u64 acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = field_->add_i(field_->mul_i(acc, x), c_[i]);
  return acc;
}

FieldElement Polynomial::evaluate(const FieldElement& x) const {
  if (x.field() != field_) throw std::invalid_argument("evaluate: point not in coefficient field");
  return {field_, evaluate_index(x.index())};
}

namespace {

// r <- r mod b (b trimmed, nonzero); r may keep trailing zeros
void mod_inplace(std::vector<u64>& r, const std::vector<u64>& b, const Field& f) {
  const size_t db = b.size() - 1;
  const u64 linv = f.inv_i(b.back());
  while (!r.empty() && r.back() == 0) r.pop_back();
  if (f.tabled()) {
    const u64 n = f.order();
    const u16* MT = f.mul_table();
    const u16* ST = f.sub_table();
    while (r.size() > db) {
      const u64 lead = r.back();
      if (lead) {
        const u64 t = MT[lead * n + linv];
        const u16* row = MT + t * n;
        u64* dst = r.data() + (r.size() - 1 - db);
        for (size_t j = 0; j < db; ++j) dst[j] = ST[dst[j] * n + row[b[j]]];
      }
      r.pop_back();
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
  } else {
    while (r.size() > db) {
      const u64 lead = r.back();
      if (lead) {
        const u64 t = f.mul_i(lead, linv);
        u64* dst = r.data() + (r.size() - 1 - db);
        for (size_t j = 0; j < db; ++j) dst[j] = f.sub_i(dst[j], f.mul_i(t, b[j]));
      }
      r.pop_back();
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
  }
}

}  // namespace

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b) {
  require_same_field(a, b, "divmod");
  if (b.is_zero()) throw std::domain_error("divmod: division by the zero polynomial");
  const auto& f = *a.field();
  const std::int64_t da = a.degree(), db = b.degree();
  if (da < db) return {Polynomial::zero(a.field()), a};
  std::vector<u64> r = a.coeffs();
  std::vector<u64> q(da - db + 1, 0);
  const u64 linv = f.inv_i(b.leading_index());
  const auto& bc = b.coeffs();
  if (f.tabled()) {
    const u64 n = f.order();
    const u16* MT = f.mul_table();
    const u16* ST = f.sub_table();
    for (std::int64_t k = da - db; k >= 0; --k) {
      const u64 lead = r[k + db];
      if (!lead) continue;
      const u64 t = MT[lead * n + linv];
      q[k] = t;
      const u16* row = MT + t * n;
      u64* dst = r.data() + k;
      for (std::int64_t j = 0; j < db; ++j) dst[j] = ST[dst[j] * n + row[bc[j]]];
      r[k + db] = 0;
    }
  } else {
    for (std::int64_t k = da - db; k >= 0; --k) {
      const u64 lead = r[k + db];
      if (!lead) continue;
      const u64 t = f.mul_i(lead, linv);
      q[k] = t;
      for (std::int64_t j = 0; j < db; ++j)
        r[k + j] = f.sub_i(r[k + j], f.mul_i(t, bc[j]));
      r[k + db] = 0;
    }
  }
  r.resize(db > 0 ? db : 0);
  return {Polynomial(a.field(), std::move(q)), Polynomial(a.field(), std::move(r))};
}

Polynomial poly_div(const Polynomial& a, const Polynomial& b) { return poly_divmod(a, b).first; }
Polynomial poly_mod(const Polynomial& a, const Polynomial& b) { return poly_divmod(a, b).second; }

bool divides(const Polynomial& d, const Polynomial& a) {
  if (a.is_zero()) return true;
  if (d.is_zero() || d.degree() > a.degree()) return false;
  return poly_mod(a, d).is_zero();
}

Polynomial make_monic(const Polynomial& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return a * FieldElement(a.field(), a.field()->inv_i(a.leading_index()));
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
  require_same_field(a, b, "gcd");
  std::vector<u64> x = a.coeffs(), y = b.coeffs();
  const auto& f = *a.field();
  while (!y.empty()) {
    mod_inplace(x, y, f);
    std::swap(x, y);
    while (!y.empty() && y.back() == 0) y.pop_back();
  }
  return make_monic(Polynomial(a.field(), std::move(x)));
}

Polynomial taylor_shift(const Polynomial& p, const FieldElement& c) {
  if (p.field() != c.field()) throw std::invalid_argument("taylor_shift: fields differ");
  if (c.is_zero() || p.is_constant()) return p;
  const auto& f = *p.field();
  const u64 ci = c.index();
  const auto& pc = p.coeffs();
  std::vector<u64> r{pc.back()};
  if (f.tabled()) {
    const u64 n = f.order();
    const u16* MT = f.mul_table();
    const u16* AT = f.add_table();
    const u16* crow = MT + ci * n;
    for (size_t i = pc.size() - 1; i-- > 0;) {
      r.push_back(0);
      for (size_t j = r.size() - 1; j >= 1; --j) r[j] = AT[r[j - 1] * n + crow[r[j]]];
      r[0] = crow[r[0]];
      r[0] = AT[r[0] * n + pc[i]];
    }
  } else {
    for (size_t i = pc.size() - 1; i-- > 0;) {
      r.push_back(0);
      for (size_t j = r.size() - 1; j >= 1; --j) r[j] = f.add_i(r[j - 1], f.mul_i(r[j], ci));
      r[0] = f.add_i(f.mul_i(r[0], ci), pc[i]);
    }
  }
  return Polynomial(p.field(), std::move(r));
}

Polynomial scale_arg(const Polynomial& p, const FieldElement& b) {
  if (p.field() != b.field()) throw std::invalid_argument("scale_arg: fields differ");
  if (p.is_zero()) return p;
  const auto& f = *p.field();
  if (b.is_zero()) return Polynomial(p.field(), {p.coeff_index(0)});
  std::vector<u64> r(p.coeffs());
  u64 bpow = 1;
  for (auto& c : r) {
    c = f.mul_i(c, bpow);
    bpow = f.mul_i(bpow, b.index());
  }
  return Polynomial(p.field(), std::move(r));
}

Polynomial reverse_poly(const Polynomial& p) {
  std::vector<u64> r(p.coeffs());
  std::reverse(r.begin(), r.end());
  return Polynomial(p.field(), std::move(r));
}

Polynomial pth_root(const Polynomial& p) {
  if (p.is_zero()) return p;
  const auto& f = *p.field();
  const u64 ch = f.characteristic();
  const unsigned m = f.extension_degree();
  std::vector<u64> r((p.degree() / ch) + 1, 0);
  for (size_t i = 0; i < p.coeffs().size(); ++i) {
    u64 c = p.coeffs()[i];
    if (!c) continue;
    if (i % ch != 0) throw std::logic_error("pth_root: polynomial is not a p-th power");
    r[i / ch] = f.frob_i(c, m - 1);
  }
  return Polynomial(p.field(), std::move(r));
}

Polynomial frobenius_coeffs(const Polynomial& p, unsigned i) {
  const auto& f = *p.field();
  std::vector<u64> r(p.coeffs());
  for (auto& c : r) c = f.frob_i(c, i);
  return Polynomial(p.field(), std::move(r));
}

Polynomial map_into(const Polynomial& p, const EmbeddingMap& emb) {
  if (p.field() != emb.source()) throw std::invalid_argument("map_into: field is not the embedding source");
  std::vector<u64> r(p.coeffs());
  for (auto& c : r) c = emb.map_index(c);
  return Polynomial(emb.target(), std::move(r));
}

std::vector<std::pair<Polynomial, unsigned>> squarefree_decomposition(const Polynomial& p) {
  std::vector<std::pair<Polynomial, unsigned>> out;
  if (p.degree() <= 0) return out;
  const unsigned ch = static_cast<unsigned>(p.field()->characteristic());

  // Musser's loop; the residue after it is a p-th power handled recursively
  auto rec = [&](auto&& self, Polynomial cur, unsigned mult) -> void {
    Polynomial d = cur.derivative();
    if (d.is_zero()) {
      self(self, pth_root(cur), mult * ch);
      return;
    }
    Polynomial c = poly_gcd(cur, d);
    Polynomial w = poly_div(cur, c);
    unsigned i = 1;
    while (w.degree() > 0) {
      Polynomial y = poly_gcd(w, c);
      Polynomial z = poly_div(w, y);
      if (z.degree() > 0) out.emplace_back(std::move(z), mult * i);
      w = std::move(y);
      c = poly_div(c, w);
      ++i;
    }
    if (c.degree() > 0) self(self, pth_root(c), mult * ch);
  };
  rec(rec, make_monic(p), 1);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return make_monic(p);
  Polynomial r = Polynomial::one(p.field());
  for (const auto& [g, m] : squarefree_decomposition(p)) r = r * g;
  return r;
}

unsigned multiplicity_at(const Polynomial& p, const FieldElement& alpha) {
  if (p.field() != alpha.field()) throw std::invalid_argument("multiplicity_at: fields differ");
  if (p.is_zero()) throw std::domain_error("multiplicity_at: zero polynomial");
  const auto& f = *p.field();
  const u64 a = alpha.index();
  std::vector<u64> w(p.coeffs());
  unsigned mult = 0;
  while (!w.empty()) {
    // synthetic division by X - alpha
    u64 carry = 0;
    for (size_t i = w.size(); i-- > 0;) {
      u64 next = f.add_i(w[i], f.mul_i(carry, a));
      w[i] = carry;
      carry = next;
    }
    if (carry != 0) break;
    ++mult;
    // quotient sits in w with one trailing zero slot
    while (!w.empty() && w.back() == 0) w.pop_back();
  }
  return mult;
}

std::vector<FieldElement> roots_of(const Polynomial& p) {
  std::vector<FieldElement> out;
  if (p.degree() <= 0) return out;
  for (u64 x = 0; x < p.field()->order(); ++x) {
    if (p.evaluate_index(x) == 0) out.emplace_back(p.field(), x);
  }
  return out;
}

bool roots_contained_in(Polynomial v, const Polynomial& k) {
  require_same_field(v, k, "roots_contained_in");
  if (v.is_zero()) throw std::domain_error("roots_contained_in: zero polynomial");
  if (k.degree() < 1) return v.degree() == 0;
  while (v.degree() > 0) {
    Polynomial g = poly_gcd(v, k);
    if (g.degree() == 0) return false;
    while (v.degree() > 0) {
      auto [q, rem] = poly_divmod(v, g);
      if (!rem.is_zero()) break;
      v = std::move(q);
    }
  }
  return true;
}

ProjectivePoint::ProjectivePoint(FieldPtr field, bool inf, FieldElement v)
    : field_(std::move(field)), inf_(inf), v_(std::move(v)) {}

ProjectivePoint ProjectivePoint::at_infinity(FieldPtr field) {
  FieldElement z = field->zero();
  return ProjectivePoint(std::move(field), true, std::move(z));
}

ProjectivePoint ProjectivePoint::finite(FieldElement value) {
  FieldPtr f = value.field();
  return ProjectivePoint(std::move(f), false, std::move(value));
}

const FieldElement& ProjectivePoint::value() const {
  if (inf_) throw std::logic_error("projective point: infinity has no finite value");
  return v_;
}

std::string ProjectivePoint::to_string() const { return inf_ ? "inf" : v_.to_string(); }

bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (a.field_ != b.field_) return false;
  if (a.inf_ != b.inf_) return false;
  return a.inf_ || a.v_ == b.v_;
}

bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (a.inf_ != b.inf_) return b.inf_;
  if (a.inf_) return false;
  return a.v_.index() < b.v_.index();
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den, trusted_t)
    : num_(std::move(num)), den_(std::move(den)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  require_same_field(num_, den_, "rational function");
  if (den_.is_zero()) throw std::invalid_argument("rational function: zero denominator");
  Polynomial g = poly_gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = poly_div(num_, g);
    den_ = poly_div(den_, g);
  }
  if (num_.is_zero()) {
    den_ = Polynomial::one(den_.field());
    return;
  }
  if (!den_.is_monic()) {
    FieldElement linv(den_.field(), den_.field()->inv_i(den_.leading_index()));
    num_ = num_ * linv;
    den_ = den_ * linv;
  }
}

RationalFunction RationalFunction::reduced(Polynomial num, Polynomial den) {
  require_same_field(num, den, "rational function");
  if (den.is_zero()) throw std::invalid_argument("rational function: zero denominator");
  if (num.is_zero()) return {std::move(num), Polynomial::one(den.field()), trusted_t{}};
  if (!den.is_monic()) {
    FieldElement linv(den.field(), den.field()->inv_i(den.leading_index()));
    num = num * linv;
    den = den * linv;
  }
  return {std::move(num), std::move(den), trusted_t{}};
}

RationalFunction RationalFunction::from_polynomial(Polynomial p) {
  FieldPtr f = p.field();
  return reduced(std::move(p), Polynomial::one(f));
}

RationalFunction RationalFunction::parse(const FieldPtr& field, std::string_view text) {
  size_t slash = text.find('/');
  if (slash == std::string_view::npos)
    return from_polynomial(Polynomial::parse(field, text));
  std::string_view ns = text.substr(0, slash);
  std::string_view ds = text.substr(slash + 1);
  auto strip = [](std::string_view s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string_view::npos ? std::string_view{} : s.substr(b, e - b + 1);
  };
  return {Polynomial::parse(field, strip(ns)), Polynomial::parse(field, strip(ds))};
}

std::string RationalFunction::to_string() const {
  return num_.to_string() + " / " + den_.to_string();
}

namespace {

// (sum_i N_i n^i d^{e-i}, sum_j D_j n^j d^{e-j}) by Horner in n with one
// running power of d shared by both sums
std::pair<Polynomial, Polynomial> cleared_pair(const Polynomial& N, const Polynomial& D,
                                               const Polynomial& n, const Polynomial& d,
                                               std::int64_t e) {
  Polynomial accN = Polynomial::zero(n.field());
  Polynomial accD = Polynomial::zero(n.field());
  Polynomial dcur = Polynomial::one(n.field());  // d^{e-i} for the current i
  for (std::int64_t i = e; i >= 0; --i) {
    accN = accN * n;
    accD = accD * n;
    u64 ni = N.coeff_index(i);
    u64 di = D.coeff_index(i);
    if (ni) accN = accN + dcur * FieldElement(n.field(), ni);
    if (di) accD = accD + dcur * FieldElement(n.field(), di);
    if (i > 0) dcur = dcur * d;
  }
  return {std::move(accN), std::move(accD)};
}

}  // namespace

RationalFunction rf_compose(const RationalFunction& outer, const RationalFunction& inner) {
  if (outer.field() != inner.field())
    throw std::invalid_argument("compose: functions over different fields");
  if (outer.is_zero()) return RationalFunction::reduced(Polynomial::zero(outer.field()),
                                                        Polynomial::one(outer.field()));
  const std::int64_t e = std::max(outer.num().degree(), outer.den().degree());
  auto [nhat, dhat] = cleared_pair(outer.num(), outer.den(), inner.num(), inner.den(), e);
  RationalFunction r(std::move(nhat), std::move(dhat));
  assert(r.degree() == outer.degree() * inner.degree());
  return r;
}

RationalFunction rf_compose(const Polynomial& outer, const RationalFunction& inner) {
  return rf_compose(RationalFunction::from_polynomial(outer), inner);
}

RationalFunction substitute_moebius(const RationalFunction& f, const FieldElement& a,
                                    const FieldElement& b, const FieldElement& c,
                                    const FieldElement& d) {
  const FieldPtr& F = f.field();
  if (a.field() != F || b.field() != F || c.field() != F || d.field() != F)
    throw std::invalid_argument("moebius: matrix entries not in the function's field");
  if ((a * d - b * c).is_zero()) throw std::invalid_argument("moebius: singular matrix");
  Polynomial n = Polynomial::from_elements({b, a});
  Polynomial den = Polynomial::from_elements({d, c});
  const std::int64_t e = std::max(f.num().degree(), f.den().degree());
  auto [nhat, dhat] = cleared_pair(f.num(), f.den(), n, den, e);
  RationalFunction r = RationalFunction::reduced(std::move(nhat), std::move(dhat));
  assert(r.degree() == f.degree());
  return r;
}

RationalFunction rf_shift_arg(const RationalFunction& f, const FieldElement& c) {
  return RationalFunction::reduced(taylor_shift(f.num(), c), taylor_shift(f.den(), c));
}

RationalFunction rf_scale_arg(const RationalFunction& f, const FieldElement& b) {
  if (b.is_zero()) throw std::invalid_argument("scale_arg: zero scale is not invertible");
  return RationalFunction::reduced(scale_arg(f.num(), b), scale_arg(f.den(), b));
}

RationalFunction rf_scale(const RationalFunction& f, const FieldElement& c) {
  if (c.field() != f.field()) throw std::invalid_argument("scale: fields differ");
  return RationalFunction::reduced(f.num() * c, f.den());
}

RationalFunction rf_sub_scalar(const RationalFunction& f, const FieldElement& c) {
  if (c.field() != f.field()) throw std::invalid_argument("sub: fields differ");
  return RationalFunction::reduced(f.num() - f.den() * c, f.den());
}

ProjectivePoint rf_evaluate(const RationalFunction& f, const ProjectivePoint& x) {
  if (x.field() != f.field()) throw std::invalid_argument("evaluate: point not in the function's field");
  if (x.is_infinity()) {
    const std::int64_t gap = f.num().degree() - f.den().degree();
    if (gap > 0) return ProjectivePoint::at_infinity(f.field());
    if (gap < 0) return ProjectivePoint::finite(f.field()->zero());
    return ProjectivePoint::finite(f.num().leading());  // denominator is monic
  }
  const u64 xi = x.value().index();
  const u64 dv = f.den().evaluate_index(xi);
  if (dv != 0) {
    const u64 nv = f.num().evaluate_index(xi);
    return ProjectivePoint::finite(FieldElement(f.field(), f.field()->div_i(nv, dv)));
  }
  if (f.num().evaluate_index(xi) == 0)
    throw std::logic_error("evaluate: common root in a reduced fraction");
  return ProjectivePoint::at_infinity(f.field());
}

int valuation_at(const RationalFunction& f, const FieldElement& alpha) {
  if (f.is_zero()) throw std::domain_error("valuation: zero function");
  return static_cast<int>(multiplicity_at(f.num(), alpha)) -
         static_cast<int>(multiplicity_at(f.den(), alpha));
}

int valuation_at_infinity(const RationalFunction& f) {
  if (f.is_zero()) throw std::domain_error("valuation: zero function");
  return static_cast<int>(f.den().degree() - f.num().degree());
}

Polynomial rf_derivative_numerator(const RationalFunction& f) {
  return f.num().derivative() * f.den() - f.num() * f.den().derivative();
}

RationalFunction map_into(const RationalFunction& f, const EmbeddingMap& emb) {
  return RationalFunction::reduced(map_into(f.num(), emb), map_into(f.den(), emb));
}

}  // namespace excrat
