#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hjfa/config.hpp"
#include "hjfa/field.hpp"
#include "hjfa/hales_jewett.hpp"

namespace hjfa::hyper {

inline constexpr unsigned kDefaultNMax = 6;

/// y^2 = (x - a_1) ... (x - a_{2g+2}) with pairwise distinct roots.
class SplitHyperellipticCurve {
public:
    SplitHyperellipticCurve(FieldTag field, std::vector<Rational> roots);

    const FieldTag& field() const noexcept { return field_; }
    const std::vector<Rational>& roots() const noexcept { return roots_; }
    unsigned degree() const noexcept { return static_cast<unsigned>(roots_.size()); }
    unsigned genus() const noexcept { return degree() / 2 - 1; }

    /// f(x) = prod (x - a_j), computed in the field.
    Rational evaluate(const Rational& x) const;

private:
    FieldTag field_;
    std::vector<Rational> roots_;
};

/// b_1..b_N with every nonempty subset sum nonzero.
using BVector = std::vector<Rational>;
using BFamily = std::function<BVector(unsigned n)>;

bool is_zero_sum_free(const FieldTag& field, std::span<const Rational> b);
/// Candidates b_i = B^(i-1) for B = 2, 3, ... until zero-sum-free.
BVector choose_b(const FieldTag& field, unsigned n);

struct ExclusionSet {
    unsigned n = 0;
    std::set<Rational> elements;

    bool contains(const Rational& c) const { return elements.count(c) != 0; }
};

/// { sum_i b_i a_{j_i} } over all index tuples.
ExclusionSet exclusion_set(const SplitHyperellipticCurve& curve, std::span<const Rational> b,
                           const Limits& limits = {});

/// cell -> class of c - sum_i b_i a_{cell_i}; ColorId is the class bit mask.
hj::Coloring coloring_for_c(const SplitHyperellipticCurve& curve, std::span<const Rational> b, const Rational& c,
                            const Limits& limits = {});

/// t -> (t - r) / s.
struct LinearMap {
    Rational r;
    Rational s;

    Rational apply(const FieldTag& field, const Rational& t) const;
    friend auto operator<=>(const LinearMap& a, const LinearMap& b) {
        if (auto cmp = cmp_rational(a.s, b.s); cmp != 0) return cmp;
        return cmp_rational(a.r, b.r);
    }
    friend bool operator==(const LinearMap&, const LinearMap&) = default;

private:
    static std::strong_ordering cmp_rational(const Rational& x, const Rational& y) {
        int c = cmp(x, y);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
};

std::set<LinearMap> linear_family(const SplitHyperellipticCurve& curve, std::span<const Rational> b,
                                  const Limits& limits = {});

struct PointCertificate {
    Rational c;
    unsigned n = 0;
    hj::LineTemplate line;
    std::vector<unsigned> star_set;  // 0-based slot indices
    Rational r;
    Rational s;
    SquareClass line_class;
    Rational x;
    Rational y;
    // Q_p only: y^2 agrees with f(x) modulo p^y_precision.
    std::optional<int> y_precision;
};

std::optional<PointCertificate> find_point_for_c(const SplitHyperellipticCurve& curve, const BFamily& b_family,
                                                 const Rational& c, unsigned n_max = kDefaultNMax,
                                                 const Limits& limits = {});
std::optional<PointCertificate> find_point_for_c(const SplitHyperellipticCurve& curve, const Rational& c,
                                                 unsigned n_max = kDefaultNMax, const Limits& limits = {});

/// True iff c lies in the exclusion set for every N <= n_max.
bool excluded_at_every_n(const SplitHyperellipticCurve& curve, const Rational& c, unsigned n_max,
                         const Limits& limits = {});

/// F_p: 0, 1, ..., p-1. Q and Q_p: 0, 1, -1, 2, -2, ... (first `count`).
std::vector<Rational> default_c_stream(const FieldTag& field, std::size_t count);

struct EnumerationResult {
    std::vector<PointCertificate> certificates;  // pairwise distinct x
    std::size_t attempted = 0;
    std::size_t excluded = 0;
    std::size_t successes = 0;
    std::size_t failures = 0;
    std::size_t duplicate_x = 0;
};

EnumerationResult enumerate_points(const SplitHyperellipticCurve& curve, std::span<const Rational> c_stream,
                                   std::size_t limit, unsigned n_max = kDefaultNMax, const Limits& limits = {});

struct AffinePoint {
    Rational x;
    Rational y;
    friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

/// Exhaustive scan over F_p.
std::vector<AffinePoint> brute_force_points(const SplitHyperellipticCurve& curve,
                                            std::uint64_t max_p = 10'000'000);

enum class VerifyFailure {
    line_not_monochromatic,  // (i)
    subset_sum_mismatch,     // (ii)
    x_relation,              // (iii)
    class_not_trivial,       // (iv)
    curve_equation,          // (v)
};

std::string_view to_string(VerifyFailure failure) noexcept;

struct Verification {
    std::optional<VerifyFailure> failure;
    std::string detail;

    bool ok() const noexcept { return !failure.has_value(); }
    explicit operator bool() const noexcept { return ok(); }
};

Verification verify_certificate(const SplitHyperellipticCurve& curve, const PointCertificate& cert,
                                const Limits& limits = {});

}  // namespace hjfa::hyper
