#include "hjfa/hyperelliptic.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "hjfa/error.hpp"

namespace hjfa::hyper {

using hjfa::to_string;

namespace {

constexpr unsigned kMaxSubsetSumBits = 24;

std::uint64_t checked_power(std::uint64_t base, unsigned exp, std::uint64_t cap, unsigned reached) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (out > cap / std::max<std::uint64_t>(base, 1)) throw ResourceLimitError("enumeration exceeds cell budget", reached);
        out *= base;
    }
    return out;
}

// products[i][j] = b_i * a_j in the field.
std::vector<std::vector<Rational>> products(const SplitHyperellipticCurve& curve, std::span<const Rational> b) {
    const auto& field = curve.field();
    std::vector<std::vector<Rational>> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (const auto& a : curve.roots()) out[i].push_back(mul(field, b[i], a));
    return out;
}

hj::Coloring make_coloring(const SplitHyperellipticCurve& curve, std::span<const Rational> b, const Rational& c) {
    auto table = std::make_shared<const std::vector<std::vector<Rational>>>(products(curve, b));
    auto field = curve.field();
    Rational base = reduce(field, c);
    hj::Coloring coloring;
    coloring.m = curve.degree();
    coloring.n = static_cast<unsigned>(b.size());
    coloring.k = 1U << field.class_width();
    coloring.evaluate = [table, field, base](std::span<const hj::Symbol> cell) -> hj::ColorId {
        Rational value = base;
        for (std::size_t i = 0; i < cell.size(); ++i) value -= (*table)[i][cell[i] - 1U];
        return square_class(field, reduce(field, value)).bits();
    };
    return coloring;
}

// Per-N b vectors and exclusion sets, computed on first use.
class PipelineContext {
public:
    PipelineContext(const SplitHyperellipticCurve& curve, BFamily family, Limits limits)
        : curve_(curve), family_(std::move(family)), limits_(limits) {}

    /// Empty when no zero-sum-free candidate of length n exists.
    const std::optional<BVector>& b(unsigned n) {
        auto it = b_.find(n);
        if (it == b_.end()) {
            std::optional<BVector> value;
            try {
                value = family_(n);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::field_too_small) throw;
            }
            if (value && (value->size() != n || !is_zero_sum_free(curve_.field(), *value)))
                throw Error(ErrorCode::precondition, "b-family returned an invalid vector for N = " + std::to_string(n));
            it = b_.emplace(n, std::move(value)).first;
        }
        return it->second;
    }

    /// Null when N is unavailable.
    const ExclusionSet* exclusion(unsigned n) {
        const auto& bn = b(n);
        if (!bn) return nullptr;
        auto it = c_.find(n);
        if (it == c_.end()) it = c_.emplace(n, exclusion_set(curve_, *bn, limits_)).first;
        return &it->second;
    }

    /// True when N admits a coloring for c.
    bool admits(unsigned n, const Rational& c) {
        const auto* excl = exclusion(n);
        return excl != nullptr && !excl->contains(c);
    }

    const SplitHyperellipticCurve& curve() const { return curve_; }
    const Limits& limits() const { return limits_; }

private:
    const SplitHyperellipticCurve& curve_;
    BFamily family_;
    Limits limits_;
    std::map<unsigned, std::optional<BVector>> b_;
    std::map<unsigned, ExclusionSet> c_;
};

std::optional<PointCertificate> run_pipeline(PipelineContext& ctx, const Rational& c_raw, unsigned n_max) {
    const auto& curve = ctx.curve();
    const auto& field = curve.field();
    const Rational c = reduce(field, c_raw);
    hj::ColoringFamily family = [&](unsigned n) -> std::optional<hj::Coloring> {
        if (!ctx.admits(n, c)) return std::nullopt;
        return make_coloring(curve, *ctx.b(n), c);
    };
    auto found = hj::find_line_incremental(family, curve.degree(), n_max, ctx.limits());
    if (!found) return std::nullopt;

    const auto& b = *ctx.b(found->n);
    PointCertificate cert;
    cert.c = c;
    cert.n = found->n;
    cert.line = found->line;
    cert.line_class = SquareClass(static_cast<std::uint8_t>(found->color), field.class_width());
    cert.r = 0;
    cert.s = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (cert.line.is_star(i)) {
            cert.star_set.push_back(static_cast<unsigned>(i));
            cert.s = add(field, cert.s, b[i]);
        } else {
            cert.r = add(field, cert.r, mul(field, b[i], curve.roots()[cert.line.slot(i) - 1U]));
        }
    }
    cert.x = div(field, sub(field, c, cert.r), cert.s);

    Rational fx = curve.evaluate(cert.x);
    if (fx == 0) {
        cert.y = 0;
    } else {
        if (!square_class(field, fx).is_identity())
            throw Error(ErrorCode::precondition, "monochromatic line produced a non-square f(x)");
        auto p = field.prime_p();
        if (field.is_prime_field()) {
            cert.y = Rational(Integer(static_cast<unsigned long>(sqrt_mod_p(fx.get_num(), p))));
        } else {
            auto split = padic_split(fx, p);
            const int k = field.precision();
            // y = p^(v/2) * y_unit; y^2 - f(x) = p^v (y_unit^2 - u).
            const int unit_precision = k - static_cast<int>(std::min(0L, split.valuation));
            Rational y(hensel_sqrt(split.unit, p, unit_precision));
            Integer scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), p, static_cast<unsigned long>(std::labs(split.valuation / 2)));
            if (split.valuation >= 0) y *= scale;
            else y /= scale;
            cert.y = y;
            cert.y_precision = k;
        }
    }
    return cert;
}

bool excluded_everywhere(PipelineContext& ctx, const Rational& c, unsigned n_max) {
    const Rational reduced = reduce(ctx.curve().field(), c);
    for (unsigned n = 1; n <= n_max; ++n)
        if (ctx.admits(n, reduced)) return false;
    return true;
}

}  // namespace

SplitHyperellipticCurve::SplitHyperellipticCurve(FieldTag field, std::vector<Rational> roots)
    : field_(field), roots_(std::move(roots)) {
    if (roots_.size() < 2 || roots_.size() % 2 != 0)
        throw Error(ErrorCode::precondition, "a split hyperelliptic curve needs an even number (>= 2) of roots");
    if (roots_.size() > hj::kMaxAlphabet) throw Error(ErrorCode::precondition, "too many roots");
    for (auto& a : roots_) a = reduce(field_, a);
    for (std::size_t i = 0; i < roots_.size(); ++i)
        for (std::size_t j = i + 1; j < roots_.size(); ++j)
            if (roots_[i] == roots_[j])
                throw Error(ErrorCode::precondition, "roots must be pairwise distinct in " + field_.to_string());
}

Rational SplitHyperellipticCurve::evaluate(const Rational& x) const {
    Rational out = 1;
    for (const auto& a : roots_) out = mul(field_, out, sub(field_, x, a));
    return out;
}

bool is_zero_sum_free(const FieldTag& field, std::span<const Rational> b) {
    if (b.size() > kMaxSubsetSumBits) throw ResourceLimitError("too many subset sums", b.size());
    const std::size_t count = std::size_t{1} << b.size();
    std::vector<Rational> sums(count);
    for (std::size_t mask = 1; mask < count; ++mask) {
        auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
        sums[mask] = add(field, sums[mask & (mask - 1)], b[low]);
        if (sums[mask] == 0) return false;
    }
    return true;
}

BVector choose_b(const FieldTag& field, unsigned n) {
    if (n < 1) throw Error(ErrorCode::precondition, "N must be >= 1");
    // In F_p bases B and B + p give the same vector.
    const std::uint64_t last_base = field.is_prime_field() ? field.prime_p() - 1 : 1000;
    for (std::uint64_t base = 2; base <= last_base; ++base) {
        BVector b;
        Rational power = 1;
        for (unsigned i = 0; i < n; ++i) {
            b.push_back(reduce(field, power));
            power *= Integer(static_cast<unsigned long>(base));
        }
        if (is_zero_sum_free(field, b)) return b;
    }
    throw Error(ErrorCode::field_too_small,
                "no zero-sum-free sequence of length " + std::to_string(n) + " among candidates in " + field.to_string());
}

ExclusionSet exclusion_set(const SplitHyperellipticCurve& curve, std::span<const Rational> b, const Limits& limits) {
    const auto n = static_cast<unsigned>(b.size());
    if (n < 1) throw Error(ErrorCode::precondition, "b must be nonempty");
    const auto& field = curve.field();
    auto table = products(curve, b);
    ExclusionSet out{n, {}};
    const auto total = checked_power(curve.degree(), n, limits.max_cells, n);
    std::vector<unsigned> index(n, 0);
    for (std::uint64_t t = 0; t < total; ++t) {
        Rational sum = 0;
        for (unsigned i = 0; i < n; ++i) sum = add(field, sum, table[i][index[i]]);
        out.elements.insert(std::move(sum));
        for (std::size_t i = n; i-- > 0;) {
            if (++index[i] < curve.degree()) break;
            index[i] = 0;
        }
    }
    return out;
}

hj::Coloring coloring_for_c(const SplitHyperellipticCurve& curve, std::span<const Rational> b, const Rational& c,
                            const Limits& limits) {
    if (exclusion_set(curve, b, limits).contains(reduce(curve.field(), c)))
        throw Error(ErrorCode::excluded_parameter, "c = " + to_string(c) + " lies in the exclusion set");
    return make_coloring(curve, b, c);
}

Rational LinearMap::apply(const FieldTag& field, const Rational& t) const { return div(field, sub(field, t, r), s); }

std::set<LinearMap> linear_family(const SplitHyperellipticCurve& curve, std::span<const Rational> b,
                                  const Limits& limits) {
    const auto n = static_cast<unsigned>(b.size());
    const unsigned m = curve.degree();
    // sum over nonempty S of m^(N-|S|) = (m+1)^N - m^N
    checked_power(m + 1ULL, n, limits.max_cells, n);
    const auto& field = curve.field();
    auto table = products(curve, b);
    std::set<LinearMap> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        Rational s = 0;
        std::vector<unsigned> fixed;
        for (unsigned i = 0; i < n; ++i) {
            if ((mask >> i) & 1U) s = add(field, s, b[i]);
            else fixed.push_back(i);
        }
        std::vector<unsigned> choice(fixed.size(), 0);
        while (true) {
            Rational r = 0;
            for (std::size_t t = 0; t < fixed.size(); ++t) r = add(field, r, table[fixed[t]][choice[t]]);
            out.insert(LinearMap{r, s});
            std::size_t t = 0;
            while (t < choice.size() && ++choice[t] == m) choice[t++] = 0;
            if (t == choice.size()) break;
        }
    }
    return out;
}

std::optional<PointCertificate> find_point_for_c(const SplitHyperellipticCurve& curve, const BFamily& b_family,
                                                 const Rational& c, unsigned n_max, const Limits& limits) {
    PipelineContext ctx(curve, b_family, limits);
    return run_pipeline(ctx, c, n_max);
}

std::optional<PointCertificate> find_point_for_c(const SplitHyperellipticCurve& curve, const Rational& c,
                                                 unsigned n_max, const Limits& limits) {
    auto field = curve.field();
    return find_point_for_c(curve, [field](unsigned n) { return choose_b(field, n); }, c, n_max, limits);
}

bool excluded_at_every_n(const SplitHyperellipticCurve& curve, const Rational& c, unsigned n_max,
                         const Limits& limits) {
    auto field = curve.field();
    PipelineContext ctx(curve, [field](unsigned n) { return choose_b(field, n); }, limits);
    return excluded_everywhere(ctx, c, n_max);
}

std::vector<Rational> default_c_stream(const FieldTag& field, std::size_t count) {
    std::vector<Rational> out;
    if (field.is_prime_field()) count = std::min<std::size_t>(count, field.prime_p());
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (field.is_prime_field()) {
            out.emplace_back(Integer(static_cast<unsigned long>(i)));
        } else {
            // 0, 1, -1, 2, -2, ...
            long magnitude = static_cast<long>((i + 1) / 2);
            out.emplace_back(Integer(i % 2 == 1 ? magnitude : -magnitude));
        }
    }
    return out;
}

EnumerationResult enumerate_points(const SplitHyperellipticCurve& curve, std::span<const Rational> c_stream,
                                   std::size_t limit, unsigned n_max, const Limits& limits) {
    EnumerationResult result;
    if (limit == 0) return result;
    auto field = curve.field();
    PipelineContext ctx(curve, [field](unsigned n) { return choose_b(field, n); }, limits);
    std::set<Rational> seen_x;
    for (const auto& c : c_stream) {
        ++result.attempted;
        if (excluded_everywhere(ctx, c, n_max)) {
            ++result.excluded;
            continue;
        }
        auto cert = run_pipeline(ctx, c, n_max);
        if (!cert) {
            ++result.failures;
            continue;
        }
        ++result.successes;
        if (!seen_x.insert(cert->x).second) {
            ++result.duplicate_x;
            continue;
        }
        result.certificates.push_back(std::move(*cert));
        if (result.certificates.size() == limit) break;
    }
    return result;
}

std::vector<AffinePoint> brute_force_points(const SplitHyperellipticCurve& curve, std::uint64_t max_p) {
    const auto& field = curve.field();
    if (!field.is_prime_field())
        throw Error(ErrorCode::unsupported_field, "brute force needs a finite prime field");
    const auto p = field.prime_p();
    if (p > max_p) throw ResourceLimitError("prime too large for exhaustive scan", p);
    std::vector<AffinePoint> out;
    for (std::uint64_t xv = 0; xv < p; ++xv) {
        Rational x(Integer(static_cast<unsigned long>(xv)));
        Rational fx = curve.evaluate(x);
        if (fx == 0) {
            out.push_back({x, Rational(0)});
        } else if (legendre(fx.get_num(), p) == 1) {
            auto y = sqrt_mod_p(fx.get_num(), p);
            out.push_back({x, Rational(Integer(static_cast<unsigned long>(y)))});
            out.push_back({x, Rational(Integer(static_cast<unsigned long>(p - y)))});
        }
    }
    return out;
}

std::string_view to_string(VerifyFailure failure) noexcept {
    switch (failure) {
        case VerifyFailure::line_not_monochromatic: return "(i) line not monochromatic of the stated class";
        case VerifyFailure::subset_sum_mismatch: return "(ii) r/s do not match the template and b";
        case VerifyFailure::x_relation: return "(iii) x*s + r != c";
        case VerifyFailure::class_not_trivial: return "(iv) f(x) is not a square";
        case VerifyFailure::curve_equation: return "(v) y^2 != f(x)";
    }
    return "unknown";
}

Verification verify_certificate(const SplitHyperellipticCurve& curve, const PointCertificate& cert,
                                const Limits& limits) {
    const auto& field = curve.field();
    const unsigned m = curve.degree();
    auto fail = [](VerifyFailure f, std::string detail) { return Verification{f, std::move(detail)}; };

    if (cert.n < 1 || cert.line.size() != cert.n)
        return fail(VerifyFailure::line_not_monochromatic, "template length differs from N");
    for (auto s : cert.line.slots())
        if (s > m) return fail(VerifyFailure::line_not_monochromatic, "template symbol exceeds 2g+2");
    {
        auto stars = cert.line.star_positions();
        if (stars.empty()) return fail(VerifyFailure::line_not_monochromatic, "template has no star");
        if (!std::equal(stars.begin(), stars.end(), cert.star_set.begin(), cert.star_set.end()))
            return fail(VerifyFailure::line_not_monochromatic, "star set does not match template stars");
    }
    if (cert.line_class.width() != field.class_width())
        return fail(VerifyFailure::line_not_monochromatic, "class width does not match field");

    const BVector b = choose_b(field, cert.n);
    const Rational c = reduce(field, cert.c);
    if (exclusion_set(curve, b, limits).contains(c))
        return fail(VerifyFailure::line_not_monochromatic, "c lies in the exclusion set");
    auto coloring = make_coloring(curve, b, c);
    for (const auto& cell : hj::line_cells(cert.line, m))
        if (coloring.evaluate(cell) != cert.line_class.bits())
            return fail(VerifyFailure::line_not_monochromatic, "a line cell has a different square class");

    Rational s = 0, r = 0;
    for (unsigned i = 0; i < cert.n; ++i) {
        if (cert.line.is_star(i)) s = add(field, s, b[i]);
        else r = add(field, r, mul(field, b[i], curve.roots()[cert.line.slot(i) - 1U]));
    }
    if (s == 0 || s != cert.s) return fail(VerifyFailure::subset_sum_mismatch, "s differs from the star subset sum");
    if (r != cert.r) return fail(VerifyFailure::subset_sum_mismatch, "r differs from the fixed-slot sum");

    if (add(field, mul(field, cert.x, cert.s), cert.r) != c)
        return fail(VerifyFailure::x_relation, "x*s + r = " + to_string(add(field, mul(field, cert.x, cert.s), cert.r)));

    const Rational fx = curve.evaluate(cert.x);
    if (fx != 0 && !square_class(field, fx).is_identity())
        return fail(VerifyFailure::class_not_trivial, "f(x) = " + to_string(fx));

    if (field.is_prime_field()) {
        if (cert.y != reduce(field, cert.y) || mul(field, cert.y, cert.y) != fx)
            return fail(VerifyFailure::curve_equation, "y^2 = " + to_string(mul(field, cert.y, cert.y)));
    } else {
        const Rational diff = cert.y * cert.y - fx;
        if (diff != 0) {
            if (!cert.y_precision || *cert.y_precision < field.precision())
                return fail(VerifyFailure::curve_equation, "missing or insufficient y precision");
            if (fx == 0) return fail(VerifyFailure::curve_equation, "Weierstrass point must have y = 0");
            auto v = padic_split(diff, field.prime_p()).valuation;
            if (v < *cert.y_precision)
                return fail(VerifyFailure::curve_equation, "v_p(y^2 - f(x)) = " + std::to_string(v));
        }
    }
    return {};
}

}  // namespace hjfa::hyper
