#include "excrat/ffield.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace excrat {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // deterministic Miller-Rabin bases for 64-bit inputs
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// dense F_p[X] helpers for the modulus scan, coefficients constant-first
using PPoly = std::vector<u64>;

void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmul_mod(const PPoly& a, const PPoly& b, const PPoly& mod, u64 p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + u128(a[i]) * b[j]) % p;
  }
  // mod is monic
  const size_t dm = mod.size() - 1;
  for (size_t k = r.size(); k-- > dm;) {
    u64 c = r[k];
    if (!c) continue;
    r[k] = 0;
    for (size_t j = 0; j < dm; ++j) r[k - dm + j] = (r[k - dm + j] + u128(c) * (p - mod[j])) % p;
  }
  r.resize(dm);
  ptrim(r);
  return r;
}

PPoly ppowmod(PPoly base, u64 e, const PPoly& mod, u64 p) {
  PPoly r{1};
  while (e) {
    if (e & 1) r = pmul_mod(r, base, mod, p);
    base = pmul_mod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

PPoly pgcd_fp(PPoly a, PPoly b, u64 p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    // a mod b
    u64 li = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      u64 t = mulmod(a.back(), li, p);
      size_t k = a.size() - b.size();
      for (size_t j = 0; j < b.size(); ++j) a[k + j] = (a[k + j] + u128(t) * (p - b[j])) % p;
      ptrim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// monic degree-m poly irreducible over F_p iff it shares no factor with X^{p^i}-X, i <= m/2
bool irreducible_fp(const PPoly& f, u64 p) {
  const size_t m = f.size() - 1;
  if (m == 1) return true;
  PPoly xp{0, 1};
  for (size_t i = 1; i <= m / 2; ++i) {
    xp = ppowmod(xp, p, f, p);
    PPoly diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    ptrim(diff);
    PPoly g = pgcd_fp(f, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

Field::Field(u64 p, unsigned m) : p_(p), m_(m) {
  if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("make_field: p must be an odd prime");
  if (m < 1) throw std::invalid_argument("make_field: extension degree m must be >= 1");
  u128 n = 1;
  for (unsigned i = 0; i < m; ++i) {
    n *= p;
    if (n > (u128(1) << 62)) throw std::invalid_argument("make_field: p^m too large");
  }
  n_ = static_cast<u64>(n);

  if (m == 1) {
    modulus_ = {0, 1};
  } else {
    // least monic irreducible of degree m in counting order
    bool found = false;
    for (u64 low = 0; low < n_; ++low) {
      PPoly f = decode(low);
      f.resize(m + 1, 0);
      f[m] = 1;
      if (irreducible_fp(f, p_)) {
        modulus_ = f;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("make_field: no irreducible polynomial found");
  }

  if (m >= 2) {
    // X^m mod modulus, then successive shifts
    std::vector<u64> row(m);
    for (unsigned j = 0; j < m; ++j) row[j] = (p_ - modulus_[j]) % p_;
    xpow_red_.push_back(row);
    for (unsigned j = 1; j + 1 < m; ++j) {
      std::vector<u64> nx(m, 0);
      const auto& prev = xpow_red_.back();
      u64 top = prev[m - 1];
      for (unsigned i = m - 1; i >= 1; --i) nx[i] = prev[i - 1];
      nx[0] = 0;
      if (top) {
        for (unsigned i = 0; i < m; ++i) nx[i] = (nx[i] + mulmod(top, xpow_red_[0][i], p_)) % p_;
      }
      xpow_red_.push_back(nx);
    }
  }

  if (n_ <= 2048) build_tables();
}

std::vector<u64> Field::decode(u64 index) const {
  std::vector<u64> c(m_);
  for (unsigned i = 0; i < m_; ++i) {
    c[i] = index % p_;
    index /= p_;
  }
  return c;
}

u64 Field::encode(const std::vector<u64>& coeffs) const {
  if (coeffs.size() > m_) throw std::invalid_argument("field element: too many coefficients");
  u64 idx = 0;
  for (size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= p_) throw std::invalid_argument("field element: coefficient out of range");
    idx = idx * p_ + coeffs[i];
  }
  return idx;
}

u64 Field::add_slow(u64 a, u64 b) const {
  u64 r = 0, mult = 1;
  for (unsigned i = 0; i < m_; ++i) {
    u64 da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    r += ((da + db) % p_) * mult;
    mult *= p_;
  }
  return r;
}

u64 Field::sub_slow(u64 a, u64 b) const {
  u64 r = 0, mult = 1;
  for (unsigned i = 0; i < m_; ++i) {
    u64 da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    r += ((da + p_ - db) % p_) * mult;
    mult *= p_;
  }
  return r;
}

u64 Field::mul_slow(u64 a, u64 b) const {
  if (m_ == 1) return mulmod(a, b, p_);
  auto da = decode(a), db = decode(b);
  std::vector<u64> prod(2 * m_ - 1, 0);
  for (unsigned i = 0; i < m_; ++i) {
    if (!da[i]) continue;
    for (unsigned j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + u128(da[i]) * db[j]) % p_;
  }
  for (unsigned k = 2 * m_ - 2; k >= m_; --k) {
    u64 c = prod[k];
    if (!c) continue;
    const auto& row = xpow_red_[k - m_];
    for (unsigned i = 0; i < m_; ++i) prod[i] = (prod[i] + u128(c) * row[i]) % p_;
  }
  prod.resize(m_);
  return encode(prod);
}

void Field::build_tables() {
  tabled_ = false;  // slow paths during construction
  const size_t n = n_;
  tadd_.resize(n * n);
  tsub_.resize(n * n);
  tmul_.resize(n * n);
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = 0; b < n; ++b) {
      tadd_[a * n + b] = static_cast<std::uint16_t>(add_slow(a, b));
      tsub_[a * n + b] = static_cast<std::uint16_t>(sub_slow(a, b));
      tmul_[a * n + b] = static_cast<std::uint16_t>(mul_slow(a, b));
    }
  }
  tabled_ = true;
  tinv_.assign(n, 0);
  for (size_t a = 1; a < n; ++a) tinv_[a] = static_cast<std::uint16_t>(pow_i(a, n_ - 2));
  tfrob1_.assign(n, 0);
  for (size_t a = 0; a < n; ++a) tfrob1_[a] = static_cast<std::uint16_t>(pow_i(a, p_));
  tsqrt_.assign(n, 0xFFFF);
  tissq_.assign(n, 0);
  tissq_[0] = 1;
  tsqrt_[0] = 0;
  for (size_t y = 1; y < n; ++y) {
    u64 sq = mul_i(y, y);
    tissq_[sq] = 1;
    if (tsqrt_[sq] == 0xFFFF) tsqrt_[sq] = static_cast<std::uint16_t>(y);
  }
}

u64 Field::inv_i(u64 a) const {
  if (a == 0) throw std::domain_error("field: division by zero");
  if (tabled_) return tinv_[a];
  return pow_i(a, n_ - 2);
}

u64 Field::pow_i(u64 a, u64 e) const {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul_i(r, a);
    a = mul_i(a, a);
    e >>= 1;
  }
  return r;
}

u64 Field::frob_i(u64 a, unsigned i) const {
  i %= m_;
  if (i == 0 || a == 0) return a;
  if (tabled_) {
    u64 r = a;
    for (unsigned j = 0; j < i; ++j) r = tfrob1_[r];
    return r;
  }
  u64 e = 1;
  for (unsigned j = 0; j < i; ++j) e *= p_;
  return pow_i(a, e);
}

bool Field::is_square_i(u64 a) const {
  assert(a != 0);
  if (tabled_) return tissq_[a] != 0;
  return pow_i(a, (n_ - 1) / 2) == 1;
}

std::optional<u64> Field::sqrt_i(u64 a) const {
  if (a == 0) return 0;
  if (tabled_) {
    if (tsqrt_[a] == 0xFFFF) return std::nullopt;
    return tsqrt_[a];
  }
  if (!is_square_i(a)) return std::nullopt;
  u64 y;
  if ((n_ - 1) % 4 == 2) {  // n = 3 mod 4
    y = pow_i(a, (n_ + 1) / 4);
  } else {
    // Tonelli-Shanks in the cyclic group of order n-1
    u64 t = n_ - 1;
    unsigned s = 0;
    while ((t & 1) == 0) t >>= 1, ++s;
    u64 z = 0;
    for (u64 cand = 1; cand < n_; ++cand) {
      if (!is_square_i(cand)) {
        z = cand;
        break;
      }
    }
    u64 mm = s;
    u64 c = pow_i(z, t);
    u64 u = pow_i(a, t);
    u64 r = pow_i(a, (t + 1) / 2);
    while (u != 1) {
      u64 v = u;
      unsigned i = 0;
      while (v != 1) {
        v = mul_i(v, v);
        ++i;
      }
      u64 b = c;
      for (u64 j = 0; j + i + 1 < mm; ++j) b = mul_i(b, b);
      mm = i;
      c = mul_i(b, b);
      u = mul_i(u, c);
      r = mul_i(r, b);
    }
    y = r;
  }
  return std::min(y, neg_i(y));
}

FieldPtr Field::make(u64 p, unsigned m) {
  static std::mutex mtx;
  static std::map<std::pair<u64, unsigned>, FieldPtr> registry;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(p, m);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;
  FieldPtr f(new Field(p, m));
  registry.emplace(key, f);
  return f;
}

std::string Field::label() const {
  std::ostringstream os;
  os << p_;
  if (m_ > 1) os << '^' << m_;
  return os.str();
}

FieldElement Field::zero() const { return {shared_from_this(), 0}; }
FieldElement Field::one() const { return {shared_from_this(), 1}; }

FieldElement Field::generator() const {
  return {shared_from_this(), m_ >= 2 ? p_ : 1};
}

FieldElement Field::element(u64 index) const {
  if (index >= n_) throw std::invalid_argument("field element: index out of range");
  return {shared_from_this(), index};
}

FieldElement Field::from_coeffs(const std::vector<u64>& coeffs) const {
  std::vector<u64> reduced(coeffs);
  for (auto& c : reduced) c %= p_;
  return {shared_from_this(), encode(reduced)};
}

FieldElement Field::from_int(std::int64_t value) const {
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return {shared_from_this(), static_cast<u64>(r)};
}

FieldElement Field::parse(std::string_view text) const {
  std::vector<u64> coeffs;
  std::string token;
  std::istringstream is{std::string(text)};
  while (std::getline(is, token, ',')) {
    size_t pos = 0;
    unsigned long long v = std::stoull(token, &pos);
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size()) throw std::invalid_argument("field element: bad encoding '" + std::string(text) + "'");
    coeffs.push_back(v);
  }
  if (coeffs.empty() || coeffs.size() > m_)
    throw std::invalid_argument("field element: bad encoding '" + std::string(text) + "'");
  for (auto c : coeffs)
    if (c >= p_) throw std::invalid_argument("field element: coefficient out of range in '" + std::string(text) + "'");
  return from_coeffs(coeffs);
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e >= 0) return {field_, field_->pow_i(idx_, static_cast<u64>(e))};
  return {field_, field_->pow_i(field_->inv_i(idx_), static_cast<u64>(-e))};
}

std::string FieldElement::to_string() const {
  auto c = coeffs();
  std::ostringstream os;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  return os.str();
}

void require_same_field(const FieldElement& a, const FieldElement& b, const char* op) {
  if (a.field() != b.field())
    throw std::invalid_argument(std::string(op) + ": operands belong to different fields");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b, "add");
  return {a.field_, a.field_->add_i(a.idx_, b.idx_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b, "sub");
  return {a.field_, a.field_->sub_i(a.idx_, b.idx_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b, "mul");
  return {a.field_, a.field_->mul_i(a.idx_, b.idx_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b, "div");
  return {a.field_, a.field_->div_i(a.idx_, b.idx_)};
}

bool is_square(const FieldElement& x) {
  if (x.is_zero()) throw std::domain_error("is_square: zero has no quadratic character");
  return x.field()->is_square_i(x.index());
}

FieldElement sqrt_in(const FieldElement& x, const FieldPtr& target) {
  FieldElement y = x;
  if (x.field() != target) {
    auto emb = EmbeddingMap::find(x.field(), target);
    y = emb(x);
  }
  auto r = target->sqrt_i(y.index());
  if (!r) throw std::domain_error("sqrt_in: element is a nonsquare in the target field");
  return {target, *r};
}

FieldElement least_nonsquare(const FieldPtr& field) {
  for (u64 i = 1; i < field->order(); ++i) {
    if (!field->is_square_i(i)) return {field, i};
  }
  throw std::logic_error("least_nonsquare: field has no nonsquare");
}

std::vector<FieldElement> enumerate(const FieldPtr& field) {
  std::vector<FieldElement> out;
  out.reserve(field->order());
  for (u64 i = 0; i < field->order(); ++i) out.emplace_back(field, i);
  return out;
}

EmbeddingMap::EmbeddingMap(FieldPtr s, FieldPtr t, FieldElement img)
    : source_(std::move(s)), target_(std::move(t)), gen_image_(std::move(img)) {
  gen_powers_.resize(source_->extension_degree());
  u64 acc = 1;
  for (unsigned j = 0; j < source_->extension_degree(); ++j) {
    gen_powers_[j] = acc;
    acc = target_->mul_i(acc, gen_image_.index());
  }
}

EmbeddingMap EmbeddingMap::identity(FieldPtr field) {
  FieldElement img = field->generator();
  return EmbeddingMap(field, field, img);
}

EmbeddingMap EmbeddingMap::find(FieldPtr source, FieldPtr target) {
  if (source->characteristic() != target->characteristic())
    throw std::invalid_argument("embed: characteristics differ");
  if (target->extension_degree() % source->extension_degree() != 0)
    throw std::invalid_argument("embed: source degree does not divide target degree");
  if (source == target) return identity(source);
  const auto& mod = source->modulus();
  for (u64 cand = 0; cand < target->order(); ++cand) {
    // evaluate the source modulus at cand inside target
    u64 acc = 0;
    for (size_t i = mod.size(); i-- > 0;) {
      acc = target->mul_i(acc, cand);
      acc = target->add_i(acc, mod[i]);  // constants have index = residue
    }
    if (acc == 0) return EmbeddingMap(source, target, FieldElement(target, cand));
  }
  throw std::logic_error("embed: no root of source modulus in target");
}

u64 EmbeddingMap::map_index(u64 idx) const {
  if (source_ == target_) return idx;
  u64 acc = 0;
  unsigned i = 0;
  while (idx) {
    u64 digit = idx % source_->characteristic();
    idx /= source_->characteristic();
    if (digit) acc = target_->add_i(acc, target_->mul_i(digit, gen_powers_[i]));
    ++i;
  }
  return acc;
}

FieldElement EmbeddingMap::operator()(const FieldElement& x) const {
  if (x.field() != source_) throw std::invalid_argument("embed: element not in source field");
  return {target_, map_index(x.index())};
}

}  // namespace excrat
