#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclefield/arithmetic.hpp"
#include "cyclefield/field.hpp"
#include "cyclefield/partitions.hpp"

namespace cyclefield {

/// Default bound for q^n in exhaustive scans: 2^24, overridable by the
/// CYCLEFIELD_CAP environment variable (read once per process).
std::uint64_t enumeration_cap();

/// q^degree <= cap, computed without overflow.
bool within_cap(std::uint64_t q, unsigned degree, std::uint64_t cap);

/// Dense polynomial over a finite field. Coefficients are element codes
/// stored low degree first with no trailing zeros; the zero polynomial has an
/// empty coefficient vector and degree -1. Values are immutable in practice:
/// all operations return fresh polynomials.
class Poly {
  public:
    /// Normalizes (drops trailing zero coefficients).
    Poly(FieldPtr field, std::vector<std::uint32_t> coeffs);

    static Poly zero(FieldPtr field);
    static Poly one(FieldPtr field);
    static Poly x(FieldPtr field);
    static Poly constant(const FieldElement& c);

    /// Monic polynomial of degree lower.size() with the given low-order
    /// coefficients.
    static Poly monic_with_lower(FieldPtr field, std::span<const std::uint32_t> lower);

    /// Text format: field tag, colon, all coefficients low to high including
    /// the leading one, e.g. "2^1:1,1,1" is X^2+X+1 over F_2.
    static Poly from_string(std::string_view text);
    std::string to_string() const;

    const FieldPtr& field() const { return field_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
    std::span<const std::uint32_t> coeffs() const { return coeffs_; }
    std::uint32_t coeff(unsigned i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

    FieldElement leading_coefficient() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

    /// Degree first, then coefficients compared from the constant term up.
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

  private:
    FieldPtr field_;
    std::vector<std::uint32_t> coeffs_;
};

/// Quotient and remainder; the divisor must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);

/// Monic greatest common divisor; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

Poly derivative(const Poly& f);

/// Horner evaluation; x must live in f's field.
FieldElement evaluate(const Poly& f, const FieldElement& x);

/// The unique polynomial of degree < points.size() through the given
/// (abscissa, value) pairs. Abscissae must be pairwise distinct.
Poly lagrange_interpolate(std::span<const std::pair<FieldElement, FieldElement>> points);

/// Number of monic polynomials of the given degree passing through every
/// constraint (alpha, c): q^(degree - #constraints). When q^degree fits under
/// the cap the count is also verified against exhaustive enumeration.
BigInt count_through_points(const FieldPtr& field, unsigned degree,
                            std::span<const std::pair<FieldElement, FieldElement>> constraints,
                            std::uint64_t cap = enumeration_cap());

/// Rabin's criterion: f of degree n is irreducible iff X^(q^n) = X mod f and
/// gcd(X^(q^(n/r)) - X, f) = 1 for every prime r dividing n.
bool is_irreducible(const Poly& f);

/// gcd(f, f') = 1, with the zero-derivative case handled (such f are p-th
/// powers, never squarefree for degree >= 1).
bool is_squarefree(const Poly& f);

struct Factorization {
    FieldPtr field;
    /// Irreducible monic factors with multiplicities, sorted by degree and
    /// then by coefficient order; the product reproduces the input exactly.
    std::vector<std::pair<Poly, unsigned>> factors;

    Poly product() const;
};

/// Full factorization into monic irreducibles: squarefree decomposition,
/// then distinct-degree splitting, then seeded equal-degree splitting.
/// The sorted output does not depend on the seed.
Factorization factor(const Poly& f, std::uint64_t seed);

/// a_i = number of irreducible factors of degree i counted with multiplicity.
/// Needs no equal-degree splitting, so it is deterministic and much cheaper
/// than factor().
PartitionVector factorization_type(const Poly& f);

/// Monic polynomial at a position of the enumeration order: lexicographic on
/// the lower coefficient vector, constant term most significant.
Poly monic_at(const FieldPtr& field, unsigned degree, std::uint64_t index);

/// All q^degree monic polynomials in enumeration order.
std::vector<Poly> enumerate_monic(const FieldPtr& field, unsigned degree,
                                  std::uint64_t cap = enumeration_cap());

/// Streams every monic polynomial of the given degree as (worker, index,
/// lower coefficients), index-split across workers. fn must be safe to call
/// concurrently from distinct workers.
void scan_monic(const FieldPtr& field, unsigned degree, std::uint64_t cap, unsigned workers,
                const std::function<void(unsigned, std::uint64_t, std::span<const std::uint32_t>)>& fn);

/// Streams (worker, index, values) where values[c] is the evaluation of the
/// index-th monic polynomial at the element with code c. Evaluations are
/// maintained incrementally, so the cost per polynomial is O(q), not O(nq).
void scan_point_values(const FieldPtr& field, unsigned degree, std::uint64_t cap, unsigned workers,
                       const std::function<void(unsigned, std::uint64_t, std::span<const std::uint32_t>)>& fn);

std::uint64_t count_irreducible_exhaustive(const FieldPtr& field, unsigned degree,
                                           std::uint64_t cap = enumeration_cap(), unsigned workers = 0);
std::uint64_t count_squarefree_exhaustive(const FieldPtr& field, unsigned degree,
                                          std::uint64_t cap = enumeration_cap(), unsigned workers = 0);
std::uint64_t count_rootless_exhaustive(const FieldPtr& field, unsigned degree,
                                        std::uint64_t cap = enumeration_cap(), unsigned workers = 0);

/// Factorization types in bulk. Reuses scratch buffers across calls, which
/// matters when scanning millions of polynomials; one scanner per worker.
class FactorizationTypeScanner {
  public:
    explicit FactorizationTypeScanner(FieldPtr field);
    ~FactorizationTypeScanner();
    FactorizationTypeScanner(FactorizationTypeScanner&&) noexcept;
    FactorizationTypeScanner& operator=(FactorizationTypeScanner&&) noexcept;

    /// Type of the monic polynomial with the given low-order coefficients
    /// (degree = lower.size()); writes a_1..a_degree into `type`.
    void type_of(std::span<const std::uint32_t> lower, std::vector<std::uint32_t>& type);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace cyclefield
