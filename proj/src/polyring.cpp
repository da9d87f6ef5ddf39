#include "cyclefield/polyring.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "cyclefield/errors.hpp"
#include "cyclefield/parallel.hpp"
#include "cyclefield/rng.hpp"

namespace cyclefield {

namespace {

// Internal kernels work on bare coefficient vectors (codes, low degree first,
// no trailing zeros; the zero polynomial is the empty vector). Out-parameters
// let hot callers reuse capacity across millions of polynomials.
using Codes = std::vector<std::uint32_t>;

void normalize(Codes& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

void mul_codes(const FieldSpec& F, const Codes& a, const Codes& b, Codes& out) {
    if (a.empty() || b.empty()) {
        out.clear();
        return;
    }
    out.assign(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
        }
    }
}

// a %= b. b nonzero.
void rem_inplace(const FieldSpec& F, Codes& a, const Codes& b) {
    std::uint32_t inv_lead = F.inv(b.back());
    while (a.size() >= b.size() && !a.empty()) {
        std::uint32_t coef = F.mul(a.back(), inv_lead);
        std::size_t shift = a.size() - b.size();
        if (coef != 0) {
            for (std::size_t j = 0; j + 1 < b.size(); ++j) {
                a[shift + j] = F.sub(a[shift + j], F.mul(coef, b[j]));
            }
        }
        a.pop_back();
    }
    normalize(a);
}

void divmod_codes(const FieldSpec& F, Codes a, const Codes& b, Codes& quot, Codes& rem) {
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    if (a.size() < b.size()) {
        quot.clear();
        rem = std::move(a);
        return;
    }
    quot.assign(a.size() - b.size() + 1, 0);
    std::uint32_t inv_lead = F.inv(b.back());
    while (a.size() >= b.size() && !a.empty()) {
        std::uint32_t coef = F.mul(a.back(), inv_lead);
        std::size_t shift = a.size() - b.size();
        quot[shift] = coef;
        if (coef != 0) {
            for (std::size_t j = 0; j + 1 < b.size(); ++j) {
                a[shift + j] = F.sub(a[shift + j], F.mul(coef, b[j]));
            }
        }
        a.pop_back();
    }
    normalize(a);
    rem = std::move(a);
    normalize(quot);
}

void make_monic(const FieldSpec& F, Codes& a) {
    if (a.empty() || a.back() == 1) return;
    std::uint32_t scale = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, scale);
}

// Monic gcd computed in place; a and b are consumed, the result lands in a.
void gcd_inplace(const FieldSpec& F, Codes& a, Codes& b) {
    while (!b.empty()) {
        rem_inplace(F, a, b);
        std::swap(a, b);
    }
    make_monic(F, a);
}

void derivative_codes(const FieldSpec& F, const Codes& a, Codes& out) {
    out.clear();
    for (std::size_t i = 1; i < a.size(); ++i) {
        out.push_back(F.mul(F.from_integer(i), a[i]));
    }
    normalize(out);
}

std::uint32_t eval_codes(const FieldSpec& F, std::span<const std::uint32_t> coeffs, std::uint32_t x) {
    std::uint32_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = F.add(F.mul(acc, x), coeffs[i]);
    }
    return acc;
}

// out = base^e mod f. base must already be reduced mod f; deg f >= 1.
void powmod_u64(const FieldSpec& F, Codes base, std::uint64_t e, const Codes& f, Codes& out,
                Codes& tmp) {
    out.assign(1, 1);
    while (e != 0) {
        if (e & 1) {
            mul_codes(F, out, base, tmp);
            rem_inplace(F, tmp, f);
            std::swap(out, tmp);
        }
        e >>= 1;
        if (e != 0) {
            mul_codes(F, base, base, tmp);
            rem_inplace(F, tmp, f);
            std::swap(base, tmp);
        }
    }
}

void powmod_big(const FieldSpec& F, Codes base, const BigInt& e, const Codes& f, Codes& out,
                Codes& tmp) {
    out.assign(1, 1);
    if (e == 0) return;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) {
            mul_codes(F, out, base, tmp);
            rem_inplace(F, tmp, f);
            std::swap(out, tmp);
        }
        if (i + 1 < bits) {
            mul_codes(F, base, base, tmp);
            rem_inplace(F, tmp, f);
            std::swap(base, tmp);
        }
    }
}

// For f with zero derivative, i.e. f in F_q[X^p]: the unique g with g^p = f.
// Coefficient roots are Frobenius preimages, c^(q/p).
void pth_root(const FieldSpec& F, const Codes& f, Codes& out) {
    std::uint64_t p = F.characteristic();
    std::uint64_t root_exp = F.size() / p;
    out.clear();
    for (std::size_t i = 0; i < f.size(); i += p) {
        out.push_back(F.pow(f[i], root_exp));
    }
    normalize(out);
}

// f monic of degree >= 1. Appends (g, m) pairs with g monic squarefree,
// pairwise coprime, and f = prod g^m. Multiplicities of factors inside a
// p-th power layer are scaled by `scale`.
void squarefree_decomposition(const FieldSpec& F, const Codes& f,
                              std::vector<std::pair<Codes, unsigned>>& out, unsigned scale) {
    Codes deriv;
    derivative_codes(F, f, deriv);
    std::uint64_t p = F.characteristic();
    if (deriv.empty()) {
        Codes root;
        pth_root(F, f, root);
        squarefree_decomposition(F, root, out, scale * static_cast<unsigned>(p));
        return;
    }
    Codes u = f, b = deriv;
    gcd_inplace(F, u, b);
    if (u.size() == 1) {
        out.emplace_back(f, scale);
        return;
    }
    Codes v, rem;
    divmod_codes(F, f, u, v, rem);
    unsigned m = 1;
    Codes w, t1, t2, z;
    while (v.size() > 1) {
        t1 = u;
        t2 = v;
        gcd_inplace(F, t1, t2);
        w = std::move(t1);
        divmod_codes(F, v, w, z, rem);
        if (z.size() > 1) out.emplace_back(z, m * scale);
        divmod_codes(F, u, w, t2, rem);
        u = std::move(t2);
        v = std::move(w);
        ++m;
    }
    if (u.size() > 1) {
        Codes root;
        pth_root(F, u, root);
        squarefree_decomposition(F, root, out, scale * static_cast<unsigned>(p));
    }
}

// g monic squarefree. Appends (product of irreducible factors of degree d, d).
void distinct_degree_split(const FieldSpec& F, Codes g, std::vector<std::pair<Codes, unsigned>>& out) {
    Codes h{0, 1};  // X
    if (g.size() <= 2) {
        if (g.size() == 2) out.emplace_back(std::move(g), 1);
        return;
    }
    rem_inplace(F, h, g);
    Codes tmp, w, t1, quot, rem;
    unsigned d = 0;
    while (2 * (d + 1) + 1 <= g.size()) {
        ++d;
        powmod_u64(F, h, F.size(), g, tmp, t1);
        std::swap(h, tmp);
        // w = gcd(h - X, g)
        w = h;
        if (w.size() < 2) w.resize(2, 0);
        w[1] = F.sub(w[1], 1);
        normalize(w);
        t1 = g;
        gcd_inplace(F, w, t1);
        if (w.size() > 1) {
            out.emplace_back(w, d);
            divmod_codes(F, g, w, quot, rem);
            g = std::move(quot);
            if (g.size() <= 1) return;
            rem_inplace(F, h, g);
        }
    }
    if (g.size() > 1) out.emplace_back(std::move(g), static_cast<unsigned>(g.size() - 1));
}

// v monic, a product of distinct irreducibles all of degree d. Splits into
// the individual factors (Cantor-Zassenhaus; trace construction for p = 2).
void equal_degree_split(const FieldSpec& F, const Codes& v, unsigned d, SubstreamRng& rng,
                        std::vector<Codes>& out) {
    if (v.size() - 1 == d) {
        out.push_back(v);
        return;
    }
    Codes r, s, tmp, w, t1, quot, rem;
    for (;;) {
        r.assign(v.size() - 1, 0);
        for (auto& c : r) c = static_cast<std::uint32_t>(rng.uniform_below(F.size()));
        normalize(r);
        if (r.size() <= 1) continue;
        if (F.characteristic() == 2) {
            // Trace map over F_2: s = r + r^2 + ... + r^(2^(k*d - 1)).
            unsigned k = F.extension_degree();
            s = r;
            tmp = r;
            for (unsigned i = 1; i < k * d; ++i) {
                mul_codes(F, tmp, tmp, t1);
                rem_inplace(F, t1, v);
                std::swap(tmp, t1);
                if (s.size() < tmp.size()) s.resize(tmp.size(), 0);
                for (std::size_t j = 0; j < tmp.size(); ++j) s[j] = F.add(s[j], tmp[j]);
                normalize(s);
            }
            w = std::move(s);
        } else {
            w = r;
            t1 = v;
            gcd_inplace(F, w, t1);
            if (w.size() > 1 && w.size() < v.size()) {
                divmod_codes(F, v, w, quot, rem);
                equal_degree_split(F, w, d, rng, out);
                equal_degree_split(F, quot, d, rng, out);
                return;
            }
            BigInt e = (power(F.size(), d) - 1) / 2;
            powmod_big(F, r, e, v, s, t1);
            if (s.empty()) continue;
            s[0] = F.sub(s[0], 1);
            normalize(s);
            w = std::move(s);
        }
        t1 = v;
        gcd_inplace(F, w, t1);
        if (w.size() > 1 && w.size() < v.size()) {
            divmod_codes(F, v, w, quot, rem);
            equal_degree_split(F, w, d, rng, out);
            equal_degree_split(F, quot, d, rng, out);
            return;
        }
    }
}

const FieldPtr& require_same_field(const Poly& a, const Poly& b) {
    if (a.field() != b.field() && !(*a.field() == *b.field()))
        throw MixedFields("polynomials over different fields");
    return a.field();
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < exp; ++i) out *= base;
    return out;
}

void unrank_monic(std::uint64_t q, unsigned degree, std::uint64_t index,
                  std::span<std::uint32_t> lower) {
    for (unsigned pos = degree; pos-- > 0;) {
        lower[degree - 1 - pos] = 0;
    }
    // Constant coefficient is the most significant digit of the index.
    std::uint64_t scale = degree == 0 ? 1 : pow_u64(q, degree - 1);
    for (unsigned pos = 0; pos < degree; ++pos) {
        lower[pos] = static_cast<std::uint32_t>(index / scale);
        index %= scale;
        if (pos + 1 < degree) scale /= q;
    }
}

// Advances the lower coefficient vector to the next polynomial in enumeration
// order (last coefficient fastest) and reports each changed position to fn as
// (exponent, old_code, new_code). Wraps back to all zero after the last one.
template <typename ChangeFn>
void odometer_step(std::uint64_t q, std::span<std::uint32_t> lower, ChangeFn&& fn) {
    for (std::size_t j = lower.size(); j-- > 0;) {
        std::uint32_t old = lower[j];
        if (old + 1 < q) {
            lower[j] = old + 1;
            fn(j, old, old + 1);
            return;
        }
        lower[j] = 0;
        fn(j, old, 0u);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(FieldPtr field, std::vector<std::uint32_t> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw DomainError("polynomial without a field");
    for (std::uint32_t c : coeffs_) {
        if (c >= field_->size()) throw DomainError("coefficient code out of range");
    }
    normalize(coeffs_);
}

Poly Poly::zero(FieldPtr field) { return Poly(std::move(field), {}); }

Poly Poly::one(FieldPtr field) { return Poly(std::move(field), {1}); }

Poly Poly::x(FieldPtr field) { return Poly(std::move(field), {0, 1}); }

Poly Poly::constant(const FieldElement& c) { return Poly(c.spec(), {c.code()}); }

Poly Poly::monic_with_lower(FieldPtr field, std::span<const std::uint32_t> lower) {
    std::vector<std::uint32_t> coeffs(lower.begin(), lower.end());
    coeffs.push_back(1);
    return Poly(std::move(field), std::move(coeffs));
}

Poly Poly::from_string(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw DomainError("missing field tag in polynomial text");
    FieldPtr field = FieldSpec::parse(text.substr(0, colon));
    std::vector<std::uint32_t> coeffs;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string_view tok = rest.substr(0, comma);
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(std::string(tok), &pos);
        } catch (const std::exception&) {
            throw DomainError("malformed coefficient: " + std::string(tok));
        }
        if (pos != tok.size()) throw DomainError("malformed coefficient: " + std::string(tok));
        coeffs.push_back(static_cast<std::uint32_t>(v));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return Poly(std::move(field), std::move(coeffs));
}

std::string Poly::to_string() const {
    std::string out = field_->name() + ":";
    if (coeffs_.empty()) return out + "0";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(coeffs_[i]);
    }
    return out;
}

FieldElement Poly::leading_coefficient() const {
    if (coeffs_.empty()) throw DomainError("zero polynomial has no leading coefficient");
    return {field_, coeffs_.back()};
}

Poly operator+(const Poly& a, const Poly& b) {
    const FieldPtr& field = require_same_field(a, b);
    std::vector<std::uint32_t> out(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = field->add(a.coeff(i), b.coeff(i));
    return Poly(field, std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) {
    const FieldPtr& field = require_same_field(a, b);
    std::vector<std::uint32_t> out(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = field->sub(a.coeff(i), b.coeff(i));
    return Poly(field, std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
    const FieldPtr& field = require_same_field(a, b);
    Codes out;
    Codes lhs(a.coeffs().begin(), a.coeffs().end());
    Codes rhs(b.coeffs().begin(), b.coeffs().end());
    mul_codes(*field, lhs, rhs, out);
    return Poly(field, std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
    return *a.field() == *b.field() &&
           std::ranges::equal(a.coeffs(), b.coeffs());
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
    if (auto c = a.coeffs().size() <=> b.coeffs().size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.coeffs().begin(), a.coeffs().end(),
                                                  b.coeffs().begin(), b.coeffs().end());
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    const FieldPtr& field = require_same_field(a, b);
    Codes quot, rem;
    divmod_codes(*field, Codes(a.coeffs().begin(), a.coeffs().end()),
                 Codes(b.coeffs().begin(), b.coeffs().end()), quot, rem);
    return {Poly(field, std::move(quot)), Poly(field, std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

Poly gcd(const Poly& a, const Poly& b) {
    const FieldPtr& field = require_same_field(a, b);
    Codes x(a.coeffs().begin(), a.coeffs().end());
    Codes y(b.coeffs().begin(), b.coeffs().end());
    if (x.empty()) {
        make_monic(*field, y);
        return Poly(field, std::move(y));
    }
    gcd_inplace(*field, x, y);
    return Poly(field, std::move(x));
}

Poly derivative(const Poly& f) {
    Codes out;
    derivative_codes(*f.field(), Codes(f.coeffs().begin(), f.coeffs().end()), out);
    return Poly(f.field(), std::move(out));
}

FieldElement evaluate(const Poly& f, const FieldElement& x) {
    if (f.field() != x.spec() && !(*f.field() == *x.spec()))
        throw MixedFields("evaluation point from a different field");
    return {f.field(), eval_codes(*f.field(), f.coeffs(), x.code())};
}

// ---------------------------------------------------------------------------
// Interpolation and point counting

Poly lagrange_interpolate(std::span<const std::pair<FieldElement, FieldElement>> points) {
    if (points.empty()) throw DomainError("interpolation needs at least one point");
    const FieldPtr& field = points.front().first.spec();
    const FieldSpec& F = *field;
    for (const auto& [x, y] : points) {
        if (!(*x.spec() == F) || !(*y.spec() == F))
            throw MixedFields("interpolation points from different fields");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].first.code() == points[j].first.code())
                throw DuplicateAbscissa("repeated abscissa " + points[i].first.to_string());
        }
    }

    // Full node polynomial, then peel one root per basis term.
    Codes node{1};
    Codes tmp;
    for (const auto& [x, y] : points) {
        Codes lin{F.neg(x.code()), 1};
        mul_codes(F, node, lin, tmp);
        std::swap(node, tmp);
    }
    Codes acc(points.size(), 0);
    Codes basis, rem;
    for (const auto& [x, y] : points) {
        if (y.is_zero()) continue;
        Codes lin{F.neg(x.code()), 1};
        divmod_codes(F, node, lin, basis, rem);
        std::uint32_t denom = eval_codes(F, basis, x.code());
        std::uint32_t scale = F.mul(y.code(), F.inv(denom));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            acc[i] = F.add(acc[i], F.mul(scale, basis[i]));
        }
    }
    return Poly(field, std::move(acc));
}

BigInt count_through_points(const FieldPtr& field, unsigned degree,
                            std::span<const std::pair<FieldElement, FieldElement>> constraints,
                            std::uint64_t cap) {
    if (!field) throw DomainError("null field");
    const FieldSpec& F = *field;
    for (const auto& [x, y] : constraints) {
        if (!(*x.spec() == F) || !(*y.spec() == F))
            throw MixedFields("constraint points from different fields");
    }
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        for (std::size_t j = i + 1; j < constraints.size(); ++j) {
            if (constraints[i].first.code() == constraints[j].first.code())
                throw DuplicateAbscissa("repeated abscissa");
        }
    }
    if (degree < constraints.size())
        throw DegreeTooSmall("degree " + std::to_string(degree) + " below " +
                             std::to_string(constraints.size()) + " constraints");

    BigInt expected = power(F.size(), degree - static_cast<unsigned>(constraints.size()));

    if (within_cap(F.size(), degree, cap)) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> want;
        for (const auto& [x, y] : constraints) want.emplace_back(x.code(), y.code());
        unsigned workers = default_workers();
        std::vector<std::uint64_t> counts(workers, 0);
        scan_point_values(field, degree, cap, workers,
                          [&](unsigned w, std::uint64_t, std::span<const std::uint32_t> vals) {
                              for (const auto& [xc, yc] : want) {
                                  if (vals[xc] != yc) return;
                              }
                              ++counts[w];
                          });
        std::uint64_t total = 0;
        for (std::uint64_t c : counts) total += c;
        if (BigInt(static_cast<unsigned long>(total)) != expected)
            throw InternalInconsistency("point-count parametrization mismatch");
    }
    return expected;
}

// ---------------------------------------------------------------------------
// Irreducibility, squarefreeness, factorization

namespace {

// Reusable scratch for Rabin's irreducibility test.
struct IrreducibilityTester {
    const FieldSpec& F;
    Codes f, h, t, tmp, scratch;
    std::vector<unsigned> checkpoints;

    explicit IrreducibilityTester(const FieldSpec& field) : F(field) {}

    static std::vector<unsigned> prime_checkpoints(unsigned n) {
        std::vector<unsigned> out;
        unsigned rest = n;
        for (unsigned p = 2; p * p <= rest; ++p) {
            if (rest % p != 0) continue;
            out.push_back(n / p);
            while (rest % p == 0) rest /= p;
        }
        if (rest > 1) out.push_back(n / rest);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool test(std::span<const std::uint32_t> monic_coeffs) {
        unsigned n = static_cast<unsigned>(monic_coeffs.size()) - 1;
        if (n == 1) return true;
        // Root scan first: for small q a linear factor is far cheaper to
        // find by evaluation than through the Frobenius ladder.
        if (F.size() <= 64) {
            for (std::uint32_t c = 0; c < F.size(); ++c) {
                if (eval_codes(F, monic_coeffs, c) == 0) return false;
            }
        }
        f.assign(monic_coeffs.begin(), monic_coeffs.end());
        checkpoints = prime_checkpoints(n);
        h.assign({0, 1});
        std::size_t next_check = 0;
        for (unsigned j = 1; j <= n; ++j) {
            powmod_u64(F, h, F.size(), f, tmp, scratch);
            std::swap(h, tmp);
            if (next_check < checkpoints.size() && j == checkpoints[next_check]) {
                ++next_check;
                t = h;
                if (t.size() < 2) t.resize(2, 0);
                t[1] = F.sub(t[1], 1);
                normalize(t);
                tmp = f;
                gcd_inplace(F, t, tmp);
                if (t.size() != 1) return false;
            }
        }
        return h.size() == 2 && h[0] == 0 && h[1] == 1;
    }
};

}  // namespace

bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) throw ZeroDegree("irreducibility needs degree >= 1");
    IrreducibilityTester tester(*f.field());
    if (!f.is_monic()) {
        Codes scaled(f.coeffs().begin(), f.coeffs().end());
        make_monic(*f.field(), scaled);
        return tester.test(scaled);
    }
    return tester.test(f.coeffs());
}

bool is_squarefree(const Poly& f) {
    if (f.degree() < 1) throw ZeroDegree("squarefreeness needs degree >= 1");
    const FieldSpec& F = *f.field();
    Codes deriv;
    derivative_codes(F, Codes(f.coeffs().begin(), f.coeffs().end()), deriv);
    if (deriv.empty()) return false;  // f is a p-th power
    Codes a(f.coeffs().begin(), f.coeffs().end());
    gcd_inplace(F, a, deriv);
    return a.size() == 1;
}

Poly Factorization::product() const {
    Poly out = Poly::one(field);
    for (const auto& [g, m] : factors) {
        for (unsigned i = 0; i < m; ++i) out = out * g;
    }
    return out;
}

Factorization factor(const Poly& f, std::uint64_t seed) {
    if (f.degree() < 1) throw ZeroDegree("factorization needs degree >= 1");
    if (!f.is_monic()) throw DomainError("factorization expects a monic polynomial");
    const FieldSpec& F = *f.field();
    SubstreamRng rng(seed);

    std::vector<std::pair<Codes, unsigned>> layers;
    squarefree_decomposition(F, Codes(f.coeffs().begin(), f.coeffs().end()), layers, 1);

    Factorization out{f.field(), {}};
    std::vector<std::pair<Codes, unsigned>> by_degree;
    std::vector<Codes> split;
    for (const auto& [g, mult] : layers) {
        by_degree.clear();
        distinct_degree_split(F, g, by_degree);
        for (const auto& [product, d] : by_degree) {
            split.clear();
            equal_degree_split(F, product, d, rng, split);
            for (auto& irr : split) {
                out.factors.emplace_back(Poly(f.field(), std::move(irr)), mult);
            }
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// ---------------------------------------------------------------------------
// Factorization types in bulk

struct FactorizationTypeScanner::Impl {
    FieldPtr field;
    Codes f, deriv, g, h, tmp, t1, t2, quot, rem;
    std::vector<std::pair<Codes, unsigned>> layers;

    explicit Impl(FieldPtr fp) : field(std::move(fp)) {}

    // Distinct-degree pass over a squarefree layer; type counts only, so the
    // equal-degree stage is never needed.
    void accumulate_layer(Codes layer, unsigned mult, std::vector<std::uint32_t>& type) {
        const FieldSpec& F = *field;
        if (layer.size() == 2) {
            type[0] += mult;
            return;
        }
        h.assign({0, 1});
        rem_inplace(F, h, layer);
        unsigned d = 0;
        while (2 * (d + 1) + 1 <= layer.size()) {
            ++d;
            powmod_u64(F, h, F.size(), layer, tmp, t1);
            std::swap(h, tmp);
            t1 = h;
            if (t1.size() < 2) t1.resize(2, 0);
            t1[1] = F.sub(t1[1], 1);
            normalize(t1);
            t2 = layer;
            gcd_inplace(F, t1, t2);
            if (t1.size() > 1) {
                type[d - 1] += mult * static_cast<std::uint32_t>((t1.size() - 1) / d);
                divmod_codes(F, layer, t1, quot, rem);
                layer = std::move(quot);
                if (layer.size() <= 1) return;
                rem_inplace(F, h, layer);
            }
        }
        if (layer.size() > 1) {
            type[layer.size() - 2] += mult;
        }
    }

    void type_of(std::span<const std::uint32_t> lower, std::vector<std::uint32_t>& type) {
        const FieldSpec& F = *field;
        unsigned n = static_cast<unsigned>(lower.size());
        type.assign(n, 0);
        if (n == 0) return;
        f.assign(lower.begin(), lower.end());
        f.push_back(1);
        if (n == 1) {
            type[0] = 1;
            return;
        }
        layers.clear();
        squarefree_decomposition(F, f, layers, 1);
        for (auto& [g_m, mult] : layers) {
            accumulate_layer(std::move(g_m), mult, type);
        }
    }
};

FactorizationTypeScanner::FactorizationTypeScanner(FieldPtr field)
    : impl_(std::make_unique<Impl>(std::move(field))) {}
FactorizationTypeScanner::~FactorizationTypeScanner() = default;
FactorizationTypeScanner::FactorizationTypeScanner(FactorizationTypeScanner&&) noexcept = default;
FactorizationTypeScanner& FactorizationTypeScanner::operator=(FactorizationTypeScanner&&) noexcept =
    default;

void FactorizationTypeScanner::type_of(std::span<const std::uint32_t> lower,
                                       std::vector<std::uint32_t>& type) {
    impl_->type_of(lower, type);
}

PartitionVector factorization_type(const Poly& f) {
    if (f.degree() < 1) throw DomainError("factorization type needs degree >= 1");
    if (!f.is_monic()) throw DomainError("factorization type expects a monic polynomial");
    FactorizationTypeScanner scanner(f.field());
    std::vector<std::uint32_t> type;
    scanner.type_of(f.coeffs().subspan(0, f.coeffs().size() - 1), type);
    return PartitionVector(std::move(type));
}

// ---------------------------------------------------------------------------
// Enumeration

std::uint64_t enumeration_cap() {
    static const std::uint64_t cap = [] {
        if (const char* env = std::getenv("CYCLEFIELD_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && v >= 1) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{1} << 24;
    }();
    return cap;
}

bool within_cap(std::uint64_t q, unsigned degree, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (unsigned i = 0; i < degree; ++i) {
        if (total > cap / q) return false;
        total *= q;
    }
    return total <= cap;
}

Poly monic_at(const FieldPtr& field, unsigned degree, std::uint64_t index) {
    std::vector<std::uint32_t> lower(degree, 0);
    unrank_monic(field->size(), degree, index, lower);
    return Poly::monic_with_lower(field, lower);
}

std::vector<Poly> enumerate_monic(const FieldPtr& field, unsigned degree, std::uint64_t cap) {
    if (!within_cap(field->size(), degree, cap))
        throw EnumerationTooLarge("q^degree exceeds the enumeration cap");
    std::uint64_t total = pow_u64(field->size(), degree);
    std::vector<Poly> out;
    out.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i) out.push_back(monic_at(field, degree, i));
    return out;
}

void scan_monic(const FieldPtr& field, unsigned degree, std::uint64_t cap, unsigned workers,
                const std::function<void(unsigned, std::uint64_t, std::span<const std::uint32_t>)>& fn) {
    if (!field) throw DomainError("null field");
    std::uint64_t q = field->size();
    if (!within_cap(q, degree, cap)) throw EnumerationTooLarge("q^degree exceeds the enumeration cap");
    std::uint64_t total = pow_u64(q, degree);
    parallel_ranges(total, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint32_t> lower(degree, 0);
        unrank_monic(q, degree, begin, lower);
        for (std::uint64_t i = begin; i < end; ++i) {
            fn(w, i, lower);
            odometer_step(q, lower, [](std::size_t, std::uint32_t, std::uint32_t) {});
        }
    });
}

void scan_point_values(const FieldPtr& field, unsigned degree, std::uint64_t cap, unsigned workers,
                       const std::function<void(unsigned, std::uint64_t, std::span<const std::uint32_t>)>& fn) {
    if (!field) throw DomainError("null field");
    const FieldSpec& F = *field;
    std::uint64_t q = F.size();
    if (!within_cap(q, degree, cap)) throw EnumerationTooLarge("q^degree exceeds the enumeration cap");
    std::uint64_t total = pow_u64(q, degree);

    // x^j for every element, laid out per element for cache-friendly updates.
    std::vector<std::uint32_t> powers(static_cast<std::size_t>(q) * (degree + 1));
    for (std::uint64_t c = 0; c < q; ++c) {
        std::uint32_t acc = 1;
        for (unsigned j = 0; j <= degree; ++j) {
            powers[c * (degree + 1) + j] = acc;
            acc = F.mul(acc, static_cast<std::uint32_t>(c));
        }
    }
    // Field delta when a coefficient code steps from u to u+1 (or wraps).
    std::vector<std::uint32_t> step_delta(q);
    for (std::uint64_t u = 0; u + 1 < q; ++u)
        step_delta[u] = F.sub(static_cast<std::uint32_t>(u + 1), static_cast<std::uint32_t>(u));
    std::uint32_t wrap_delta = F.neg(static_cast<std::uint32_t>(q - 1));

    parallel_ranges(total, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint32_t> lower(degree, 0);
        unrank_monic(q, degree, begin, lower);
        std::vector<std::uint32_t> full(lower.begin(), lower.end());
        full.push_back(1);
        std::vector<std::uint32_t> vals(q);
        for (std::uint64_t c = 0; c < q; ++c)
            vals[c] = eval_codes(F, full, static_cast<std::uint32_t>(c));
        for (std::uint64_t i = begin; i < end; ++i) {
            fn(w, i, vals);
            odometer_step(q, lower, [&](std::size_t j, std::uint32_t old, std::uint32_t neu) {
                std::uint32_t delta = (neu == 0 && old == q - 1) ? wrap_delta : step_delta[old];
                for (std::uint64_t c = 0; c < q; ++c) {
                    vals[c] = F.add(vals[c], F.mul(delta, powers[c * (degree + 1) + j]));
                }
            });
        }
    });
}

std::uint64_t count_irreducible_exhaustive(const FieldPtr& field, unsigned degree,
                                           std::uint64_t cap, unsigned workers) {
    if (degree == 0) throw ZeroDegree("irreducibility needs degree >= 1");
    unsigned used = workers ? workers : default_workers();
    std::vector<IrreducibilityTester> testers(used, IrreducibilityTester(*field));
    std::vector<std::uint64_t> counts(used, 0);
    std::vector<std::vector<std::uint32_t>> bufs(used, std::vector<std::uint32_t>(degree + 1, 0));
    scan_monic(field, degree, cap, used,
               [&](unsigned w, std::uint64_t, std::span<const std::uint32_t> lower) {
                   auto& buf = bufs[w];
                   std::copy(lower.begin(), lower.end(), buf.begin());
                   buf[degree] = 1;
                   if (testers[w].test(buf)) ++counts[w];
               });
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    return total;
}

std::uint64_t count_squarefree_exhaustive(const FieldPtr& field, unsigned degree,
                                          std::uint64_t cap, unsigned workers) {
    if (degree == 0) throw ZeroDegree("squarefreeness needs degree >= 1");
    const FieldSpec& F = *field;
    unsigned used = workers ? workers : default_workers();
    struct Scratch {
        Codes f, deriv;
    };
    std::vector<Scratch> scratch(used);
    std::vector<std::uint64_t> counts(used, 0);
    scan_monic(field, degree, cap, used,
               [&](unsigned w, std::uint64_t, std::span<const std::uint32_t> lower) {
                   auto& s = scratch[w];
                   s.f.assign(lower.begin(), lower.end());
                   s.f.push_back(1);
                   derivative_codes(F, s.f, s.deriv);
                   if (s.deriv.empty()) return;
                   gcd_inplace(F, s.f, s.deriv);
                   if (s.f.size() == 1) ++counts[w];
               });
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    return total;
}

std::uint64_t count_rootless_exhaustive(const FieldPtr& field, unsigned degree,
                                        std::uint64_t cap, unsigned workers) {
    std::uint64_t q = field->size();
    unsigned used = workers ? workers : default_workers();
    std::vector<std::uint64_t> counts(used, 0);
    scan_point_values(field, degree, cap, used,
                      [&](unsigned w, std::uint64_t, std::span<const std::uint32_t> vals) {
                          for (std::uint64_t c = 0; c < q; ++c) {
                              if (vals[c] == 0) return;
                          }
                          ++counts[w];
                      });
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    return total;
}

}  // namespace cyclefield
