#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace excrat {

class Field;
class FieldElement;
using FieldPtr = std::shared_ptr<const Field>;

// F_{p^m} = F_p[X]/(modulus), p an odd prime, modulus the least monic irreducible
// of degree m in counting order (constant coefficient is the least significant
// base-p digit). Elements are identified with their index in that order, so the
// canonical total order on elements is plain integer comparison of indices.
// Instances are interned: make(p, m) always returns the same object.
class Field : public std::enable_shared_from_this<Field> {
public:
  static FieldPtr make(std::uint64_t p, unsigned m);

  std::uint64_t characteristic() const { return p_; }
  unsigned extension_degree() const { return m_; }
  std::uint64_t order() const { return n_; }
  // monic, length m+1, constant term first
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  std::string label() const;

  FieldElement zero() const;
  FieldElement one() const;
  // class of X for m >= 2, multiplicative 1 for m = 1
  FieldElement generator() const;
  FieldElement element(std::uint64_t index) const;
  FieldElement from_coeffs(const std::vector<std::uint64_t>& coeffs) const;
  FieldElement from_int(std::int64_t value) const;
  // "2,1" = 2 + x
  FieldElement parse(std::string_view text) const;

  std::vector<std::uint64_t> decode(std::uint64_t index) const;
  std::uint64_t encode(const std::vector<std::uint64_t>& coeffs) const;

  // index arithmetic; the hot path for polynomial kernels
  std::uint64_t add_i(std::uint64_t a, std::uint64_t b) const {
    return tabled_ ? tadd_[a * n_ + b] : add_slow(a, b);
  }
  std::uint64_t sub_i(std::uint64_t a, std::uint64_t b) const {
    return tabled_ ? tsub_[a * n_ + b] : sub_slow(a, b);
  }
  std::uint64_t mul_i(std::uint64_t a, std::uint64_t b) const {
    return tabled_ ? tmul_[a * n_ + b] : mul_slow(a, b);
  }
  std::uint64_t neg_i(std::uint64_t a) const { return sub_i(0, a); }
  std::uint64_t inv_i(std::uint64_t a) const;
  std::uint64_t div_i(std::uint64_t a, std::uint64_t b) const { return mul_i(a, inv_i(b)); }
  std::uint64_t pow_i(std::uint64_t a, std::uint64_t e) const;
  // x -> x^{p^i}
  std::uint64_t frob_i(std::uint64_t a, unsigned i) const;

  bool is_square_i(std::uint64_t a) const;
  std::optional<std::uint64_t> sqrt_i(std::uint64_t a) const;

  bool tabled() const { return tabled_; }
  const std::uint16_t* mul_table() const { return tmul_.data(); }
  const std::uint16_t* add_table() const { return tadd_.data(); }
  const std::uint16_t* sub_table() const { return tsub_.data(); }

private:
  Field(std::uint64_t p, unsigned m);
  void build_tables();
  std::uint64_t add_slow(std::uint64_t, std::uint64_t) const;
  std::uint64_t sub_slow(std::uint64_t, std::uint64_t) const;
  std::uint64_t mul_slow(std::uint64_t, std::uint64_t) const;

  std::uint64_t p_;
  unsigned m_;
  std::uint64_t n_;
  std::vector<std::uint64_t> modulus_;
  // X^{m+j} mod modulus, j in [0, m-1), as digit rows; used by mul_slow
  std::vector<std::vector<std::uint64_t>> xpow_red_;

  bool tabled_ = false;
  std::vector<std::uint16_t> tmul_, tadd_, tsub_;
  std::vector<std::uint16_t> tinv_, tfrob1_, tsqrt_;
  std::vector<std::uint8_t> tissq_;
};

class FieldElement {
public:
  FieldElement() = default;
  FieldElement(FieldPtr field, std::uint64_t index)
      : field_(std::move(field)), idx_(index) {}

  const FieldPtr& field() const { return field_; }
  std::uint64_t index() const { return idx_; }
  std::vector<std::uint64_t> coeffs() const { return field_->decode(idx_); }
  bool is_zero() const { return idx_ == 0; }
  bool is_one() const { return idx_ == 1; }

  FieldElement operator-() const { return {field_, field_->neg_i(idx_)}; }
  FieldElement inverse() const { return {field_, field_->inv_i(idx_)}; }
  FieldElement pow(std::int64_t e) const;
  FieldElement frobenius(unsigned i) const { return {field_, field_->frob_i(idx_, i)}; }

  std::string to_string() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.idx_ == b.idx_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
  // canonical order; only meaningful within one field
  friend bool operator<(const FieldElement& a, const FieldElement& b) {
    return a.idx_ < b.idx_;
  }

private:
  FieldPtr field_;
  std::uint64_t idx_ = 0;
};

void require_same_field(const FieldElement& a, const FieldElement& b, const char* op);

// Euler criterion; zero is rejected
bool is_square(const FieldElement& x);
// least square root of x inside target (x's field must embed); throws if x is a nonsquare there
FieldElement sqrt_in(const FieldElement& x, const FieldPtr& target);
FieldElement least_nonsquare(const FieldPtr& field);
std::vector<FieldElement> enumerate(const FieldPtr& field);

// Subfield embedding determined by the least root of the source modulus in the
// target, so repeated construction picks the same map.
class EmbeddingMap {
public:
  static EmbeddingMap find(FieldPtr source, FieldPtr target);
  static EmbeddingMap identity(FieldPtr field);

  const FieldPtr& source() const { return source_; }
  const FieldPtr& target() const { return target_; }
  const FieldElement& image_of_generator() const { return gen_image_; }

  FieldElement operator()(const FieldElement& x) const;
  std::uint64_t map_index(std::uint64_t idx) const;

private:
  EmbeddingMap(FieldPtr s, FieldPtr t, FieldElement img);
  FieldPtr source_, target_;
  FieldElement gen_image_;
  std::vector<std::uint64_t> gen_powers_;  // indices of img^0..img^{m-1}
};

}  // namespace excrat
