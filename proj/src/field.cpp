#include "hjfa/field.hpp"

#include <charconv>

#include "hjfa/error.hpp"

namespace hjfa {

namespace {

void require_odd_prime(std::uint64_t p) {
    if (p == 2 || !is_prime_u64(p))
        throw Error(ErrorCode::invalid_field, std::to_string(p) + " is not an odd prime");
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw Error(ErrorCode::parse, "bad " + std::string(what) + " '" + std::string(text) + "'");
    return value;
}

// Residue of num/den modulo m (den must be a unit mod m).
std::uint64_t residue(const Rational& value, std::uint64_t m) {
    std::uint64_t den = mod_u64(value.get_den(), m);
    if (den == 0)
        throw Error(ErrorCode::precondition,
                    "denominator of " + to_string(value) + " vanishes modulo " + std::to_string(m));
    return mul_mod(mod_u64(value.get_num(), m), inverse_mod(den, m), m);
}

Integer pow_integer(std::uint64_t p, unsigned long k) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), p, k);
    return out;
}

}  // namespace

FieldTag FieldTag::prime(std::uint64_t p) {
    require_odd_prime(p);
    return FieldTag(PrimeField{p});
}

FieldTag FieldTag::rational() { return FieldTag(RationalField{}); }

FieldTag FieldTag::padic(std::uint64_t p, int precision) {
    require_odd_prime(p);
    if (precision < 1) throw Error(ErrorCode::invalid_field, "p-adic precision must be >= 1");
    return FieldTag(PadicField{p, precision});
}

FieldTag FieldTag::parse(std::string_view text) {
    if (text == "q") return rational();
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (parts.size() == 2 && parts[0] == "fp") return prime(parse_u64(parts[1], "prime"));
    if (parts.size() == 2 && parts[0] == "qp") return padic(parse_u64(parts[1], "prime"));
    if (parts.size() == 3 && parts[0] == "qp") {
        auto k = parse_u64(parts[2], "precision");
        if (k > 100000) throw Error(ErrorCode::invalid_field, "p-adic precision too large");
        return padic(parse_u64(parts[1], "prime"), static_cast<int>(k));
    }
    throw Error(ErrorCode::parse, "unknown field '" + std::string(text) + "' (expected fp:<p>, q, qp:<p>[:<k>])");
}

std::string FieldTag::to_string() const {
    if (const auto* f = std::get_if<PrimeField>(&value_)) return "fp:" + std::to_string(f->p);
    if (const auto* f = std::get_if<PadicField>(&value_))
        return "qp:" + std::to_string(f->p) + ":" + std::to_string(f->precision);
    return "q";
}

std::uint64_t FieldTag::prime_p() const {
    if (const auto* f = std::get_if<PrimeField>(&value_)) return f->p;
    if (const auto* f = std::get_if<PadicField>(&value_)) return f->p;
    throw Error(ErrorCode::unsupported_field, "Q has no distinguished prime");
}

int FieldTag::precision() const {
    if (const auto* f = std::get_if<PadicField>(&value_)) return f->precision;
    throw Error(ErrorCode::unsupported_field, to_string() + " has no p-adic precision");
}

unsigned FieldTag::class_width() const {
    if (is_prime_field()) return 1;
    if (is_padic_field()) return 2;
    throw Error(ErrorCode::unsupported_field, "Q has an infinite square-class group");
}

Rational reduce(const FieldTag& field, const Rational& value) {
    if (const auto* f = std::get_if<PrimeField>(&field.variant()))
        return Rational(Integer(static_cast<unsigned long>(residue(value, f->p))));
    return value;
}

bool is_zero(const FieldTag& field, const Rational& value) { return reduce(field, value) == 0; }

Rational add(const FieldTag& field, const Rational& a, const Rational& b) { return reduce(field, a + b); }
Rational sub(const FieldTag& field, const Rational& a, const Rational& b) { return reduce(field, a - b); }
Rational mul(const FieldTag& field, const Rational& a, const Rational& b) { return reduce(field, a * b); }

Rational div(const FieldTag& field, const Rational& a, const Rational& b) {
    if (is_zero(field, b)) throw Error(ErrorCode::precondition, "division by zero in " + field.to_string());
    if (field.is_prime_field()) {
        auto p = field.prime_p();
        auto q = mul_mod(residue(a, p), inverse_mod(residue(b, p), p), p);
        return Rational(Integer(static_cast<unsigned long>(q)));
    }
    return a / b;
}

int legendre(std::uint64_t a, std::uint64_t p) {
    require_odd_prime(p);
    a %= p;
    if (a == 0) return 0;
    return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int legendre(const Integer& a, std::uint64_t p) {
    require_odd_prime(p);
    return legendre(mod_u64(a, p), p);
}

std::uint64_t sqrt_mod_p(const Integer& a, std::uint64_t p) {
    require_odd_prime(p);
    std::uint64_t n = mod_u64(a, p);
    if (n == 0) return 0;
    if (pow_mod(n, (p - 1) / 2, p) != 1)
        throw Error(ErrorCode::no_square_root, a.get_str() + " is a non-residue modulo " + std::to_string(p));

    std::uint64_t root = 0;
    if (p % 4 == 3) {
        root = pow_mod(n, (p + 1) / 4, p);
    } else {
        std::uint64_t q = p - 1;
        unsigned s = 0;
        while ((q & 1U) == 0) {
            q >>= 1U;
            ++s;
        }
        std::uint64_t z = least_nonresidue(p);
        std::uint64_t c = pow_mod(z, q, p);
        std::uint64_t r = pow_mod(n, (q + 1) / 2, p);
        std::uint64_t t = pow_mod(n, q, p);
        unsigned m = s;
        while (t != 1) {
            unsigned i = 0;
            std::uint64_t t2 = t;
            while (t2 != 1) {
                t2 = mul_mod(t2, t2, p);
                ++i;
            }
            std::uint64_t b = c;
            for (unsigned j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
            r = mul_mod(r, b, p);
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            m = i;
        }
        root = r;
    }
    return std::min(root, p - root);
}

PadicSplit padic_split(const Rational& r, std::uint64_t p) {
    if (r == 0) throw Error(ErrorCode::zero_valuation, "zero has no p-adic valuation");
    long vn = valuation(r.get_num(), p);
    long vd = valuation(r.get_den(), p);
    Rational unit = r;
    Integer pp = pow_integer(p, static_cast<unsigned long>(vn > 0 ? vn : vd));
    if (vn > 0) unit /= pp;
    else if (vd > 0) unit *= pp;
    return {vn - vd, unit};
}

SquareClass::SquareClass(std::uint8_t bits, unsigned width)
    : bits_(bits), width_(static_cast<std::uint8_t>(width)) {
    if (width < 1 || width > 8 || (width < 8 && (bits >> width) != 0))
        throw Error(ErrorCode::precondition, "square-class bits out of range");
}

std::vector<int> SquareClass::to_vector() const {
    std::vector<int> out(width_);
    for (unsigned i = 0; i < width_; ++i) out[i] = bit(i) ? 1 : 0;
    return out;
}

SquareClass operator+(SquareClass a, SquareClass b) {
    if (a.width_ != b.width_) throw Error(ErrorCode::precondition, "square classes of different groups");
    return SquareClass(static_cast<std::uint8_t>(a.bits_ ^ b.bits_), a.width_);
}

SquareClass square_class(const FieldTag& field, const Rational& x) {
    if (field.is_rational_field())
        throw Error(ErrorCode::unsupported_field, "Q has an infinite square-class group");
    auto p = field.prime_p();
    if (field.is_prime_field()) {
        auto n = residue(x, p);
        if (n == 0) throw Error(ErrorCode::undefined_class, "zero has no square class");
        return SquareClass(pow_mod(n, (p - 1) / 2, p) == 1 ? 0 : 1, 1);
    }
    if (x == 0) throw Error(ErrorCode::undefined_class, "zero has no square class");
    auto split = padic_split(x, p);
    auto u = residue(split.unit, p);
    std::uint8_t bits = static_cast<std::uint8_t>(split.valuation & 1L);
    if (pow_mod(u, (p - 1) / 2, p) != 1) bits |= 2U;
    return SquareClass(bits, 2);
}

Integer hensel_sqrt(const Rational& r, std::uint64_t p, int k) {
    require_odd_prime(p);
    if (k < 1) throw Error(ErrorCode::precondition, "precision must be >= 1");
    auto split = padic_split(r, p);
    if (split.valuation % 2 != 0)
        throw Error(ErrorCode::odd_valuation, to_string(r) + " has odd " + std::to_string(p) + "-adic valuation");
    Integer modulus = pow_integer(p, static_cast<unsigned long>(k));
    Integer u;
    {
        Integer den_inv;
        if (mpz_invert(den_inv.get_mpz_t(), split.unit.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0)
            throw Error(ErrorCode::precondition, "unit part has non-invertible denominator");
        u = split.unit.get_num() * den_inv;
        mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t());
    }
    // Throws no_square_root on a non-residue unit part.
    Integer y(static_cast<unsigned long>(sqrt_mod_p(u, p)));
    for (long prec = 1; prec < k; prec *= 2) {
        Integer two_y = 2 * y;
        Integer inv;
        mpz_invert(inv.get_mpz_t(), two_y.get_mpz_t(), modulus.get_mpz_t());
        y -= (y * y - u) * inv;
        mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), modulus.get_mpz_t());
    }
    Integer other = modulus - y;
    if (y == 0) return y;
    return other < y ? other : y;
}

std::uint64_t least_nonresidue(std::uint64_t p) {
    require_odd_prime(p);
    for (std::uint64_t n = 2;; ++n)
        if (pow_mod(n, (p - 1) / 2, p) == p - 1) return n;
}

SquareClassGroup square_class_group(const FieldTag& field) {
    auto width = field.class_width();
    auto p = field.prime_p();
    Rational n0(Integer(static_cast<unsigned long>(least_nonresidue(p))));
    if (field.is_prime_field()) return {field, width, {Rational(1), n0}};
    Rational pr(Integer(static_cast<unsigned long>(p)));
    return {field, width, {Rational(1), n0, pr, pr * n0}};
}

}  // namespace hjfa
