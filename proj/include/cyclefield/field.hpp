#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cyclefield {

class FieldSpec;

/// Fields are immutable once constructed and shared by reference everywhere.
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// A finite field F_q with q = p^k. Elements are handled as integer codes in
/// [0, q): the code's base-p digits are the coordinates over F_p, constant
/// coordinate in the lowest digit. For k > 1 the field is F_p[X] modulo a
/// monic irreducible of degree k, chosen as the lexicographically smallest
/// one (coefficients compared from the constant term up) so that every
/// derived number is reproducible.
///
/// Code-level arithmetic (add/sub/mul/inv on std::uint32_t) is the hot path
/// used by polynomial kernels and does not validate its inputs; the
/// FieldElement wrapper adds the checked, value-semantic surface.
class FieldSpec {
  public:
    /// Enumeration-backed operations need q elements to fit in a flat table.
    static constexpr std::uint64_t kMaxCardinality = std::uint64_t{1} << 20;
    /// Full add/mul/inv lookup tables are built below this size.
    static constexpr std::uint64_t kLutLimit = 256;

    /// F_{p^k}; p must be prime, k >= 1, p^k <= kMaxCardinality.
    static FieldPtr make(std::uint64_t p, unsigned k);

    /// Accepts "p^k" or a plain prime power "q".
    static FieldPtr parse(std::string_view text);

    std::uint64_t characteristic() const { return p_; }
    unsigned extension_degree() const { return k_; }
    std::uint64_t size() const { return q_; }

    /// Low-order coefficients of the modulus, length k; empty for k = 1.
    std::span<const std::uint32_t> modulus() const { return modulus_; }

    std::string name() const;            // "p^k"
    std::string modulus_string() const;  // full coefficient list, low degree first

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
    }

    std::uint32_t zero() const { return 0; }
    std::uint32_t one() const { return 1; }
    std::uint32_t from_integer(std::uint64_t v) const { return static_cast<std::uint32_t>(v % p_); }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (!add_lut_.empty()) return add_lut_[static_cast<std::size_t>(a) * q_ + b];
        if (k_ == 1) {
            std::uint64_t s = static_cast<std::uint64_t>(a) + b;
            return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
        }
        return add_generic(a, b);
    }

    std::uint32_t neg(std::uint32_t a) const {
        if (!add_lut_.empty()) return neg_lut_[a];
        if (k_ == 1) return a == 0 ? 0 : static_cast<std::uint32_t>(p_ - a);
        return neg_generic(a);
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (!mul_lut_.empty()) return mul_lut_[static_cast<std::size_t>(a) * q_ + b];
        if (k_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
        return mul_generic(a, b);
    }

    /// Multiplicative inverse; DivisionByZero on 0.
    std::uint32_t inv(std::uint32_t a) const;

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    /// Coordinates of a code over F_p, digits[0] the constant coordinate.
    void decode(std::uint32_t code, std::span<std::uint32_t> digits) const;
    std::uint32_t encode(std::span<const std::uint32_t> digits) const;

    /// Element code at a position of the enumeration order. The order is
    /// lexicographic on the coordinate vector read from the constant
    /// coordinate up, i.e. the constant coordinate is the most significant
    /// digit of the index.
    std::uint32_t code_at(std::uint64_t index) const;

  private:
    FieldSpec(std::uint64_t p, unsigned k, std::vector<std::uint32_t> modulus);

    void build_luts();
    std::uint32_t add_generic(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg_generic(std::uint32_t a) const;
    std::uint32_t mul_generic(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv_uncached(std::uint32_t a) const;

    std::uint64_t p_;
    unsigned k_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> add_lut_;
    std::vector<std::uint32_t> mul_lut_;
    std::vector<std::uint32_t> neg_lut_;
    std::vector<std::uint32_t> inv_lut_;
};

/// A field element as a value: a code plus the field it lives in. Binary
/// operators require both operands from the same field and throw MixedFields
/// otherwise.
class FieldElement {
  public:
    FieldElement(FieldPtr spec, std::uint32_t code);

    const FieldPtr& spec() const { return spec_; }
    std::uint32_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }

    FieldElement inverse() const { return {spec_, spec_->inv(code_)}; }
    FieldElement pow(std::uint64_t e) const { return {spec_, spec_->pow(code_, e)}; }

    std::string to_string() const { return std::to_string(code_); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a);
    friend bool operator==(const FieldElement& a, const FieldElement& b);

  private:
    FieldPtr spec_;
    std::uint32_t code_;
};

/// All q elements, pairwise distinct, in the spec's enumeration order.
std::vector<FieldElement> enumerate_elements(const FieldPtr& spec);

}  // namespace cyclefield
