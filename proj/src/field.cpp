#include "cyclefield/field.hpp"

#include <array>
#include <charconv>

#include "cyclefield/arithmetic.hpp"
#include "cyclefield/errors.hpp"
#include "cyclefield/polyring.hpp"

namespace cyclefield {

namespace {

constexpr unsigned kMaxExtensionDegree = 20;  // 2^20 caps p^k, so k <= 20

std::uint64_t checked_cardinality(std::uint64_t p, unsigned k) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (q > FieldSpec::kMaxCardinality / p)
            throw FieldTooLarge("p^k exceeds the enumeration width 2^20");
        q *= p;
    }
    return q;
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw DomainError("malformed field description: " + std::string(text));
    return value;
}

}  // namespace

FieldSpec::FieldSpec(std::uint64_t p, unsigned k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), q_(checked_cardinality(p, k)), modulus_(std::move(modulus)) {
    if (q_ <= kLutLimit) build_luts();
}

FieldPtr FieldSpec::make(std::uint64_t p, unsigned k) {
    if (!is_prime(p)) throw NonPrimeCharacteristic(std::to_string(p) + " is not prime");
    if (k == 0) throw DomainError("extension degree must be >= 1");
    if (k > kMaxExtensionDegree) throw FieldTooLarge("p^k exceeds the enumeration width 2^20");
    checked_cardinality(p, k);
    if (k == 1) return FieldPtr(new FieldSpec(p, 1, {}));

    // First irreducible of degree k in enumeration order; the order compares
    // coefficients from the constant term up, so the choice is reproducible.
    FieldPtr base = make(p, 1);
    std::uint64_t candidates = 1;
    for (unsigned i = 0; i < k; ++i) candidates *= p;
    for (std::uint64_t index = 0; index < candidates; ++index) {
        Poly f = monic_at(base, k, index);
        if (is_irreducible(f)) {
            std::vector<std::uint32_t> modulus(f.coeffs().begin(), f.coeffs().end() - 1);
            return FieldPtr(new FieldSpec(p, k, std::move(modulus)));
        }
    }
    throw InternalInconsistency("no irreducible modulus found");
}

FieldPtr FieldSpec::parse(std::string_view text) {
    auto caret = text.find('^');
    if (caret == std::string_view::npos) {
        PrimePower pp = require_prime_power(parse_u64(text));
        return make(pp.p, pp.k);
    }
    std::uint64_t p = parse_u64(text.substr(0, caret));
    std::uint64_t k = parse_u64(text.substr(caret + 1));
    if (k == 0 || k > kMaxExtensionDegree)
        throw DomainError("extension degree out of range in: " + std::string(text));
    return make(p, static_cast<unsigned>(k));
}

std::string FieldSpec::name() const { return std::to_string(p_) + "^" + std::to_string(k_); }

std::string FieldSpec::modulus_string() const {
    if (k_ == 1) return "";
    std::string out;
    for (std::uint32_t c : modulus_) {
        out += std::to_string(c);
        out += ',';
    }
    out += '1';
    return out;
}

void FieldSpec::decode(std::uint32_t code, std::span<std::uint32_t> digits) const {
    std::uint64_t rem = code;
    for (unsigned i = 0; i < k_; ++i) {
        digits[i] = static_cast<std::uint32_t>(rem % p_);
        rem /= p_;
    }
}

std::uint32_t FieldSpec::encode(std::span<const std::uint32_t> digits) const {
    std::uint64_t code = 0;
    std::uint64_t place = 1;
    for (unsigned i = 0; i < k_; ++i) {
        code += digits[i] * place;
        place *= p_;
    }
    return static_cast<std::uint32_t>(code);
}

std::uint32_t FieldSpec::code_at(std::uint64_t index) const {
    std::uint64_t scale = q_ / p_;
    std::uint64_t place = 1;
    std::uint64_t code = 0;
    for (unsigned i = 0; i < k_; ++i) {
        code += (index / scale) * place;
        index %= scale;
        place *= p_;
        if (i + 1 < k_) scale /= p_;
    }
    return static_cast<std::uint32_t>(code);
}

std::uint32_t FieldSpec::add_generic(std::uint32_t a, std::uint32_t b) const {
    std::array<std::uint32_t, kMaxExtensionDegree> da{}, db{};
    decode(a, std::span(da.data(), k_));
    decode(b, std::span(db.data(), k_));
    for (unsigned i = 0; i < k_; ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(da[i]) + db[i];
        da[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    return encode(std::span<const std::uint32_t>(da.data(), k_));
}

std::uint32_t FieldSpec::neg_generic(std::uint32_t a) const {
    std::array<std::uint32_t, kMaxExtensionDegree> da{};
    decode(a, std::span(da.data(), k_));
    for (unsigned i = 0; i < k_; ++i) {
        if (da[i] != 0) da[i] = static_cast<std::uint32_t>(p_ - da[i]);
    }
    return encode(std::span<const std::uint32_t>(da.data(), k_));
}

std::uint32_t FieldSpec::mul_generic(std::uint32_t a, std::uint32_t b) const {
    std::array<std::uint32_t, kMaxExtensionDegree> da{}, db{};
    std::array<std::uint64_t, 2 * kMaxExtensionDegree> conv{};
    decode(a, std::span(da.data(), k_));
    decode(b, std::span(db.data(), k_));
    for (unsigned i = 0; i < k_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < k_; ++j) {
            conv[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
        }
    }
    // X^k = -modulus_low(X), applied from the top coefficient down.
    for (unsigned d = 2 * k_ - 2; d >= k_; --d) {
        std::uint64_t c = conv[d] % p_;
        conv[d] = 0;
        if (c == 0) continue;
        for (unsigned j = 0; j < k_; ++j) {
            if (modulus_[j] == 0) continue;
            conv[d - k_ + j] += c * (p_ - modulus_[j]);
        }
    }
    std::array<std::uint32_t, kMaxExtensionDegree> out{};
    for (unsigned i = 0; i < k_; ++i) out[i] = static_cast<std::uint32_t>(conv[i] % p_);
    return encode(std::span<const std::uint32_t>(out.data(), k_));
}

std::uint32_t FieldSpec::inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero in " + name());
    if (!inv_lut_.empty()) return inv_lut_[a];
    return inv_uncached(a);
}

std::uint32_t FieldSpec::inv_uncached(std::uint32_t a) const { return pow(a, q_ - 2); }

std::uint32_t FieldSpec::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t result = 1;
    std::uint32_t base = a;
    while (e != 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

void FieldSpec::build_luts() {
    std::size_t q = static_cast<std::size_t>(q_);
    add_lut_.resize(q * q);
    mul_lut_.resize(q * q);
    neg_lut_.resize(q);
    inv_lut_.assign(q, 0);
    std::vector<std::uint32_t> add_row(q), mul_row(q);
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b < q; ++b) {
            std::uint32_t ca = static_cast<std::uint32_t>(a);
            std::uint32_t cb = static_cast<std::uint32_t>(b);
            std::uint32_t sum, prod;
            if (k_ == 1) {
                sum = static_cast<std::uint32_t>((a + b) % p_);
                prod = static_cast<std::uint32_t>(a * b % p_);
            } else {
                sum = add_generic(ca, cb);
                prod = mul_generic(ca, cb);
            }
            add_lut_[a * q + b] = sum;
            mul_lut_[a * q + b] = prod;
            if (sum == 0) neg_lut_[a] = cb;
        }
    }
    for (std::size_t a = 1; a < q; ++a)
        inv_lut_[a] = inv_uncached(static_cast<std::uint32_t>(a));
}

FieldElement::FieldElement(FieldPtr spec, std::uint32_t code) : spec_(std::move(spec)), code_(code) {
    if (!spec_) throw DomainError("element without a field");
    if (code_ >= spec_->size()) throw DomainError("element code out of range");
}

namespace {

const FieldPtr& common_spec(const FieldElement& a, const FieldElement& b) {
    if (a.spec() != b.spec() && !(*a.spec() == *b.spec()))
        throw MixedFields("operands from different fields");
    return a.spec();
}

}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    const FieldPtr& spec = common_spec(a, b);
    return {spec, spec->add(a.code(), b.code())};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    const FieldPtr& spec = common_spec(a, b);
    return {spec, spec->sub(a.code(), b.code())};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    const FieldPtr& spec = common_spec(a, b);
    return {spec, spec->mul(a.code(), b.code())};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    const FieldPtr& spec = common_spec(a, b);
    return {spec, spec->mul(a.code(), spec->inv(b.code()))};
}

FieldElement operator-(const FieldElement& a) { return {a.spec(), a.spec()->neg(a.code())}; }

bool operator==(const FieldElement& a, const FieldElement& b) {
    return *a.spec() == *b.spec() && a.code() == b.code();
}

std::vector<FieldElement> enumerate_elements(const FieldPtr& spec) {
    if (!spec) throw DomainError("null field");
    std::vector<FieldElement> out;
    out.reserve(spec->size());
    for (std::uint64_t index = 0; index < spec->size(); ++index) {
        out.emplace_back(spec, spec->code_at(index));
    }
    return out;
}

}  // namespace cyclefield
