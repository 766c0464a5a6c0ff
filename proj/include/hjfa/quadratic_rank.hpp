#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hjfa/config.hpp"
#include "hjfa/numeric.hpp"

namespace hjfa::rank {

/// y^2 = (x - a1)(x - a2)(x - a3) over Q, a_i pairwise distinct integers.
class EllipticCurveQ {
public:
    explicit EllipticCurveQ(std::array<Integer, 3> roots);

    const std::array<Integer, 3>& roots() const noexcept { return roots_; }
    Rational f(const Rational& x) const;
    Integer f(const Integer& x) const;
    std::uint64_t f_mod(std::uint64_t x, std::uint64_t p) const;
    /// Coefficient of x^2 in the monic cubic, -(a1 + a2 + a3).
    const Integer& a2() const noexcept { return a2_; }
    const Integer& a4() const noexcept { return a4_; }
    /// 16 * prod_{i<j} (a_i - a_j)^2
    const Integer& discriminant() const noexcept { return discriminant_; }
    /// p odd and p does not divide the discriminant.
    bool good_reduction(std::uint64_t p) const;

private:
    std::array<Integer, 3> roots_;
    Integer a2_, a4_, a6_;
    Integer discriminant_;
};

/// Q(sqrt d), d squarefree and not 0 or 1.
class QuadField {
public:
    explicit QuadField(Integer d);
    const Integer& d() const noexcept { return d_; }

private:
    Integer d_;
};

bool is_squarefree(const Integer& d, std::uint64_t trial_bound = 1'000'000);

/// A point of E(Q(sqrt d)) with rational x and y = w * sqrt(d), or the
/// point at infinity. These form the twist subgroup the construction lives in.
struct QuadPoint {
    bool infinity = true;
    Rational x;
    Rational w;

    static QuadPoint identity() { return {}; }
    static QuadPoint affine(Rational x, Rational w) { return {false, std::move(x), std::move(w)}; }
    bool on_curve(const EllipticCurveQ& curve, const Integer& d) const;
    friend bool operator==(const QuadPoint&, const QuadPoint&) = default;
};

std::int64_t threshold_constant(std::int64_t g);

/// Smallest x in [0, p) with f(x) a non-residue mod p. Without `force` the
/// prime must be good and exceed threshold_constant(1).
std::optional<std::uint64_t> nonresidue_x(const EllipticCurveQ& curve, std::uint64_t p, bool force = false);

/// Smallest prime p >= start that is good, > 13, prime to every d_i, and
/// has every d_i a quadratic residue.
std::uint64_t steering_prime(const EllipticCurveQ& curve, std::span<const Integer> previous_d, std::uint64_t start,
                             std::uint64_t search_cap = 100'000'000);

/// Smallest c >= 0 with c = x_target (mod p) and c not excluded.
Integer steer_c(std::uint64_t p, std::uint64_t x_target, const std::set<Integer>& exclusions);
/// As above, additionally skipping roots of f.
Integer steer_c(const EllipticCurveQ& curve, std::uint64_t p, std::uint64_t x_target,
                const std::set<Integer>& exclusions);

/// The squarefree integer d with r = d * (rational square); sign kept.
Integer squarefree_part(const Rational& r, std::uint64_t trial_bound = 1'000'000);

/// True iff the class of d is outside the F_2-span of the previous classes
/// in Q^x/(Q^x)^2.
bool fresh_class_check(const Integer& d, std::span<const Integer> previous, std::uint64_t trial_bound = 1'000'000);

struct TwistPoint {
    // 1 marks a point already defined over Q (including the 2-torsion).
    Integer d;
    QuadPoint point;
};

TwistPoint point_from_x(const EllipticCurveQ& curve, const Rational& x, std::uint64_t trial_bound = 1'000'000);

QuadPoint quad_neg(const QuadPoint& p);
QuadPoint quad_add(const EllipticCurveQ& curve, const Integer& d, const QuadPoint& p, const QuadPoint& q);
QuadPoint quad_mul(const EllipticCurveQ& curve, const Integer& d, const QuadPoint& p, const Integer& m);

/// #E(F_p) including infinity, by exhaustive scan.
std::uint64_t count_points(const EllipticCurveQ& curve, std::uint64_t p);
/// #E(F_{p^2}) from the trace: p^2 + 1 - (t^2 - 2p).
std::uint64_t count_points_ext(const EllipticCurveQ& curve, std::uint64_t p);

struct TorsionBound {
    Integer bound;
    std::uint64_t p1 = 0;
    std::uint64_t p2 = 0;
    std::uint64_t n1 = 0;  // #E(F_{p1^2})
    std::uint64_t n2 = 0;  // #E(F_{p2^2})
};

/// Multiple of every torsion order in E(Q(sqrt d)), from reduction at the
/// two smallest odd primes not dividing 2 * d * disc.
TorsionBound torsion_bound(const EllipticCurveQ& curve, const Integer& d);

/// m * P != O for m = B; any torsion point has order dividing B.
bool certify_nontorsion(const EllipticCurveQ& curve, const Integer& d, const QuadPoint& p, const TorsionBound& bound);

struct FamilyConfig {
    std::uint64_t steering_start = 14;
    std::uint64_t steering_cap = 100'000'000;
    unsigned retry_budget = 32;
    std::uint64_t trial_division_bound = 1'000'000;
};

struct FamilyMember {
    std::uint64_t p_steer = 0;
    std::uint64_t x_target = 0;
    Integer c;
    Integer d;
    QuadPoint point;
    TorsionBound torsion;
    std::vector<Integer> multiples_checked;
};

struct IndependentFamily {
    std::vector<FamilyMember> members;
    // Set when the run stopped short of the requested size.
    std::optional<std::string> diagnostic;
};

IndependentFamily build_independent_family(const EllipticCurveQ& curve, std::size_t n, const FamilyConfig& config = {});

struct FamilyCheck {
    bool ok = true;
    std::string detail;
};

/// Re-derives every recorded certificate of a family from scratch.
FamilyCheck verify_family(const EllipticCurveQ& curve, std::span<const FamilyMember> members,
                          std::uint64_t trial_bound = 1'000'000);

}  // namespace hjfa::rank
