#include "hjfa/quadratic_rank.hpp"

#include <algorithm>
#include <map>

#include "hjfa/error.hpp"
#include "hjfa/field.hpp"

namespace hjfa::rank {

namespace {

Integer from_u64(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

void require_odd_prime(std::uint64_t p) {
    if (p == 2 || !is_prime_u64(p)) throw Error(ErrorCode::invalid_field, std::to_string(p) + " is not an odd prime");
}

// Odd-exponent primes of d (sign handled separately by the caller).
std::vector<Integer> odd_primes(const Integer& value, std::uint64_t bound) {
    std::vector<Integer> out;
    for (const auto& [prime, exp] : factor_trial(value, bound))
        if (exp % 2 == 1) out.push_back(prime);
    return out;
}

// Vectors over F_2 indexed by sign (column 0) and primes.
class SquareClassSpace {
public:
    using Vector = std::vector<std::uint64_t>;

    Vector encode(const Integer& d, std::uint64_t bound) {
        std::vector<std::size_t> bits;
        if (d < 0) bits.push_back(0);
        for (const auto& p : odd_primes(d, bound)) {
            auto [it, inserted] = columns_.try_emplace(p, columns_.size() + 1);
            bits.push_back(it->second);
        }
        Vector v;
        for (auto b : bits) {
            if (v.size() <= b / 64) v.resize(b / 64 + 1, 0);
            v[b / 64] |= std::uint64_t{1} << (b % 64);
        }
        return v;
    }

    static Vector reduce(Vector v, const std::vector<std::pair<Vector, std::size_t>>& basis) {
        for (const auto& [row, pivot] : basis) {
            if (pivot / 64 < v.size() && ((v[pivot / 64] >> (pivot % 64)) & 1U)) {
                if (v.size() < row.size()) v.resize(row.size(), 0);
                for (std::size_t i = 0; i < row.size(); ++i) v[i] ^= row[i];
            }
        }
        return v;
    }

    static std::optional<std::size_t> lowest_bit(const Vector& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) return i * 64 + static_cast<std::size_t>(__builtin_ctzll(v[i]));
        return std::nullopt;
    }

private:
    std::map<Integer, std::size_t> columns_;
};

}  // namespace

EllipticCurveQ::EllipticCurveQ(std::array<Integer, 3> roots) : roots_(std::move(roots)) {
    const auto& [r1, r2, r3] = roots_;
    if (r1 == r2 || r1 == r3 || r2 == r3) throw Error(ErrorCode::precondition, "roots must be pairwise distinct");
    a2_ = -(r1 + r2 + r3);
    a4_ = r1 * r2 + r1 * r3 + r2 * r3;
    a6_ = -(r1 * r2 * r3);
    Integer diff = (r1 - r2) * (r1 - r3) * (r2 - r3);
    discriminant_ = 16 * diff * diff;
}

Rational EllipticCurveQ::f(const Rational& x) const {
    return (x - Rational(roots_[0])) * (x - Rational(roots_[1])) * (x - Rational(roots_[2]));
}

Integer EllipticCurveQ::f(const Integer& x) const { return (x - roots_[0]) * (x - roots_[1]) * (x - roots_[2]); }

std::uint64_t EllipticCurveQ::f_mod(std::uint64_t x, std::uint64_t p) const {
    std::uint64_t out = 1 % p;
    for (const auto& a : roots_) {
        std::uint64_t am = mod_u64(a, p);
        out = mul_mod(out, (x % p + p - am) % p, p);
    }
    return out;
}

bool EllipticCurveQ::good_reduction(std::uint64_t p) const {
    return p % 2 == 1 && mod_u64(discriminant_, p) != 0;
}

bool is_squarefree(const Integer& d, std::uint64_t trial_bound) {
    if (d == 0) return false;
    for (const auto& [prime, exp] : factor_trial(d, trial_bound))
        if (exp > 1) return false;
    return true;
}

QuadField::QuadField(Integer d) : d_(std::move(d)) {
    if (d_ == 0 || d_ == 1) throw Error(ErrorCode::precondition, "Q(sqrt d) needs d not in {0, 1}");
    if (!is_squarefree(d_)) throw Error(ErrorCode::precondition, to_string(d_) + " is not squarefree");
}

bool QuadPoint::on_curve(const EllipticCurveQ& curve, const Integer& d) const {
    if (infinity) return true;
    return Rational(d) * w * w == curve.f(x);
}

std::int64_t threshold_constant(std::int64_t g) {
    if (g < 0) throw Error(ErrorCode::precondition, "genus must be >= 0");
    auto inner = static_cast<std::uint64_t>(g * g + 2 * g + 3);
    return 2 * g * g + 2 * g + 3 + 2 * g * static_cast<std::int64_t>(isqrt_ceil_u64(inner));
}

std::optional<std::uint64_t> nonresidue_x(const EllipticCurveQ& curve, std::uint64_t p, bool force) {
    require_odd_prime(p);
    if (!force) {
        if (p <= static_cast<std::uint64_t>(threshold_constant(1)))
            throw Error(ErrorCode::precondition, "p must exceed " + std::to_string(threshold_constant(1)));
        if (!curve.good_reduction(p)) throw Error(ErrorCode::precondition, "bad reduction at " + std::to_string(p));
    }
    for (std::uint64_t x = 0; x < p; ++x)
        if (legendre(curve.f_mod(x, p), p) == -1) return x;
    return std::nullopt;
}

std::uint64_t steering_prime(const EllipticCurveQ& curve, std::span<const Integer> previous_d, std::uint64_t start,
                             std::uint64_t search_cap) {
    for (const auto& d : previous_d)
        if (d == 0) throw Error(ErrorCode::precondition, "previous d must be nonzero");
    const auto floor = static_cast<std::uint64_t>(threshold_constant(1)) + 1;
    for (std::uint64_t p = std::max(start, floor); p <= search_cap; ++p) {
        if (p % 2 == 0 || !is_prime_u64(p) || !curve.good_reduction(p)) continue;
        bool split = std::all_of(previous_d.begin(), previous_d.end(),
                                 [p](const Integer& d) { return legendre(d, p) == 1; });
        if (split) return p;
    }
    throw Error(ErrorCode::not_found, "no steering prime below " + std::to_string(search_cap));
}

Integer steer_c(std::uint64_t p, std::uint64_t x_target, const std::set<Integer>& exclusions) {
    if (x_target >= p) throw Error(ErrorCode::precondition, "x_target must lie in [0, p)");
    Integer c = from_u64(x_target);
    while (exclusions.count(c) != 0) c += from_u64(p);
    return c;
}

Integer steer_c(const EllipticCurveQ& curve, std::uint64_t p, std::uint64_t x_target,
                const std::set<Integer>& exclusions) {
    if (x_target >= p) throw Error(ErrorCode::precondition, "x_target must lie in [0, p)");
    Integer c = from_u64(x_target);
    while (exclusions.count(c) != 0 || curve.f(c) == 0) c += from_u64(p);
    return c;
}

Integer squarefree_part(const Rational& r, std::uint64_t trial_bound) {
    if (r == 0) throw Error(ErrorCode::precondition, "zero has no squarefree part");
    // num/den = num*den / den^2
    Integer d = 1;
    for (const auto& p : odd_primes(r.get_num() * r.get_den(), trial_bound)) d *= p;
    return r < 0 ? Integer(-d) : d;
}

bool fresh_class_check(const Integer& d, std::span<const Integer> previous, std::uint64_t trial_bound) {
    SquareClassSpace space;
    std::vector<std::pair<SquareClassSpace::Vector, std::size_t>> basis;
    for (const auto& prev : previous) {
        auto v = SquareClassSpace::reduce(space.encode(prev, trial_bound), basis);
        if (auto pivot = SquareClassSpace::lowest_bit(v)) basis.emplace_back(std::move(v), *pivot);
    }
    auto v = SquareClassSpace::reduce(space.encode(d, trial_bound), basis);
    return SquareClassSpace::lowest_bit(v).has_value();
}

TwistPoint point_from_x(const EllipticCurveQ& curve, const Rational& x, std::uint64_t trial_bound) {
    Rational fx = curve.f(x);
    if (fx == 0) return {Integer(1), QuadPoint::affine(x, Rational(0))};
    Integer d = squarefree_part(fx, trial_bound);
    Rational square = fx / Rational(d);
    Integer num = square.get_num(), den = square.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
        throw Error(ErrorCode::precondition, "f(x)/d is not a rational square");
    mpz_sqrt(num.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(den.get_mpz_t(), den.get_mpz_t());
    Rational w(num, den);
    w.canonicalize();
    return {d, QuadPoint::affine(x, w)};
}

QuadPoint quad_neg(const QuadPoint& p) {
    if (p.infinity) return p;
    return QuadPoint::affine(p.x, -p.w);
}

QuadPoint quad_add(const EllipticCurveQ& curve, const Integer& d, const QuadPoint& p, const QuadPoint& q) {
    if (p.infinity) return q;
    if (q.infinity) return p;
    const Rational dd(d);
    const Rational a2(curve.a2());
    Rational slope;  // lambda = slope * sqrt(d)
    if (p.x == q.x) {
        if (p.w != q.w || p.w == 0) return QuadPoint::identity();
        // (3x^2 + 2 a2 x + a4) / (2 w sqrt d) = [.../(2 w d)] sqrt d
        slope = (3 * p.x * p.x + 2 * a2 * p.x + Rational(curve.a4())) / (2 * p.w * dd);
    } else {
        slope = (q.w - p.w) / (q.x - p.x);
    }
    Rational x3 = slope * slope * dd - a2 - p.x - q.x;
    Rational w3 = slope * (p.x - x3) - p.w;
    return QuadPoint::affine(std::move(x3), std::move(w3));
}

QuadPoint quad_mul(const EllipticCurveQ& curve, const Integer& d, const QuadPoint& p, const Integer& m) {
    if (m < 0) return quad_mul(curve, d, quad_neg(p), -m);
    QuadPoint result = QuadPoint::identity();
    const auto bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = quad_add(curve, d, result, result);
        if (mpz_tstbit(m.get_mpz_t(), i) != 0) result = quad_add(curve, d, result, p);
    }
    return result;
}

std::uint64_t count_points(const EllipticCurveQ& curve, std::uint64_t p) {
    require_odd_prime(p);
    if (!curve.good_reduction(p)) throw Error(ErrorCode::precondition, "bad reduction at " + std::to_string(p));
    std::uint64_t n = 1;
    for (std::uint64_t x = 0; x < p; ++x) n += static_cast<std::uint64_t>(1 + legendre(curve.f_mod(x, p), p));
    return n;
}

std::uint64_t count_points_ext(const EllipticCurveQ& curve, std::uint64_t p) {
    const auto n = static_cast<__int128>(count_points(curve, p));
    const auto q = static_cast<__int128>(p);
    const __int128 t = q + 1 - n;
    return static_cast<std::uint64_t>(q * q + 1 - (t * t - 2 * q));
}

TorsionBound torsion_bound(const EllipticCurveQ& curve, const Integer& d) {
    if (d == 0) throw Error(ErrorCode::precondition, "d must be nonzero");
    const Integer avoid = 2 * d * curve.discriminant();
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 3; primes.size() < 2; p += 2)
        if (is_prime_u64(p) && mod_u64(avoid, p) != 0) primes.push_back(p);

    TorsionBound out;
    out.p1 = primes[0];
    out.p2 = primes[1];
    out.n1 = count_points_ext(curve, out.p1);
    out.n2 = count_points_ext(curve, out.p2);
    const std::array<std::pair<std::uint64_t, std::uint64_t>, 2> counts{{{out.p1, out.n1}, {out.p2, out.n2}}};

    std::set<Integer> ells;
    for (auto [p, n] : counts)
        for (const auto& [ell, e] : factor_trial(from_u64(n), 1'000'000)) ells.insert(ell);
    out.bound = 1;
    for (const auto& ell : ells) {
        long e = -1;
        for (auto [p, n] : counts) {
            if (ell == from_u64(p)) continue;
            long v = valuation(from_u64(n), ell.get_ui());
            e = e < 0 ? v : std::min(e, v);
        }
        for (long i = 0; i < e; ++i) out.bound *= ell;
    }
    return out;
}

bool certify_nontorsion(const EllipticCurveQ& curve, const Integer& d, const QuadPoint& p, const TorsionBound& bound) {
    if (p.infinity) return false;
    return !quad_mul(curve, d, p, bound.bound).infinity;
}

IndependentFamily build_independent_family(const EllipticCurveQ& curve, std::size_t n, const FamilyConfig& config) {
    if (n < 1) throw Error(ErrorCode::precondition, "family size must be >= 1");
    IndependentFamily family;
    std::vector<Integer> previous_d;
    std::set<Integer> used_c;
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = steering_prime(curve, previous_d, config.steering_start, config.steering_cap);
        const auto x_target = nonresidue_x(curve, p);
        if (!x_target) {
            family.diagnostic = "no non-residue value of f modulo " + std::to_string(p);
            return family;
        }
        bool placed = false;
        for (unsigned attempt = 0; attempt <= config.retry_budget && !placed; ++attempt) {
            Integer c = steer_c(curve, p, *x_target, used_c);
            used_c.insert(c);
            auto [d, point] = point_from_x(curve, Rational(c), config.trial_division_bound);
            // f(c) is a non-residue mod p while every earlier class is a residue.
            if (!fresh_class_check(d, previous_d, config.trial_division_bound))
                throw Error(ErrorCode::precondition, "steered class " + to_string(d) + " is not fresh");
            auto bound = torsion_bound(curve, d);
            if (!certify_nontorsion(curve, d, point, bound)) continue;
            family.members.push_back({p, *x_target, c, d, point, bound, {bound.bound}});
            previous_d.push_back(d);
            placed = true;
        }
        if (!placed) {
            family.diagnostic = "retry budget exhausted at step " + std::to_string(i + 1) + " (p = " + std::to_string(p) + ")";
            return family;
        }
    }
    return family;
}

FamilyCheck verify_family(const EllipticCurveQ& curve, std::span<const FamilyMember> members,
                          std::uint64_t trial_bound) {
    auto fail = [](std::size_t i, const std::string& why) {
        return FamilyCheck{false, "point " + std::to_string(i + 1) + ": " + why};
    };
    std::vector<Integer> previous;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& m = members[i];
        if (m.point.infinity) return fail(i, "point at infinity");
        if (m.point.x != Rational(m.c)) return fail(i, "x differs from c");
        if (!m.point.on_curve(curve, m.d)) return fail(i, "d*w^2 != f(x)");
        if (m.d == 1 || !is_squarefree(m.d, trial_bound)) return fail(i, "d is not a squarefree non-square");
        if (m.p_steer <= 13 || !is_prime_u64(m.p_steer) || !curve.good_reduction(m.p_steer))
            return fail(i, "steering prime is not an odd good prime > 13");
        if (mod_u64(m.c, m.p_steer) != m.x_target) return fail(i, "c is not congruent to x_target");
        if (legendre(curve.f_mod(m.x_target, m.p_steer), m.p_steer) != -1) return fail(i, "f(x_target) is a residue");
        if (legendre(m.d, m.p_steer) != -1) return fail(i, "legendre(d_i, p_i) != -1");
        for (const auto& prev : previous)
            if (legendre(prev, m.p_steer) != 1) return fail(i, "an earlier d is not split at p_i");
        if (!fresh_class_check(m.d, previous, trial_bound)) return fail(i, "square class not fresh");
        auto bound = torsion_bound(curve, m.d);
        if (bound.bound != m.torsion.bound || bound.p1 != m.torsion.p1 || bound.p2 != m.torsion.p2)
            return fail(i, "torsion bound does not match recomputation");
        if (!certify_nontorsion(curve, m.d, m.point, bound)) return fail(i, "B * P is the identity");
        previous.push_back(m.d);
    }
    return {};
}

}  // namespace hjfa::rank
