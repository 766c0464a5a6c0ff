#include "hjfa/numeric.hpp"

#include <array>
#include <cctype>

#include "hjfa/error.hpp"

namespace hjfa {

namespace {

bool is_integer_literal(std::string_view text) {
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) text.remove_prefix(1);
    if (text.empty()) return false;
    for (char ch : text)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
    if (!is_integer_literal(text))
        throw Error(ErrorCode::parse, "not an integer: '" + std::string(text) + "'");
    if (text.front() == '+') text.remove_prefix(1);
    return Integer(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
        throw Error(ErrorCode::parse, "denominator must be unsigned: '" + std::string(text) + "'");
    Integer den = parse_integer(den_text);
    if (den == 0) throw Error(ErrorCode::parse, "zero denominator: '" + std::string(text) + "'");
    Rational out(num, den);
    out.canonicalize();
    return out;
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_string(const Rational& value) {
    return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

std::uint64_t mod_u64(const Integer& a, std::uint64_t m) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(a.get_mpz_t(), m);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    // Extended Euclid on signed 128-bit to stay clear of overflow.
    __int128 old_r = a % m, r = m, old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        __int128 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw Error(ErrorCode::precondition, "value is not invertible modulo " + std::to_string(m));
    __int128 out = old_s % static_cast<__int128>(m);
    if (out < 0) out += m;
    return static_cast<std::uint64_t>(out);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto b : bases) {
        if (n == b) return true;
        if (n % b == 0) return false;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (auto a : bases) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t next_prime_at_least(std::uint64_t n) {
    while (!is_prime_u64(n)) ++n;
    return n;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
    Integer root(static_cast<unsigned long>(n));
    mpz_sqrt(root.get_mpz_t(), root.get_mpz_t());
    return root.get_ui();
}

std::uint64_t isqrt_ceil_u64(std::uint64_t n) {
    auto r = isqrt_u64(n);
    return r * r == n ? r : r + 1;
}

long valuation(const Integer& value, std::uint64_t p) {
    if (value == 0) throw Error(ErrorCode::zero_valuation, "valuation of zero");
    Integer rest = value;
    Integer prime(static_cast<unsigned long>(p));
    long v = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), prime.get_mpz_t()) != 0) {
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t());
        ++v;
    }
    return v;
}

std::vector<std::pair<Integer, unsigned>> factor_trial(const Integer& n, std::uint64_t bound) {
    if (n == 0) throw Error(ErrorCode::precondition, "cannot factor zero");
    std::vector<std::pair<Integer, unsigned>> out;
    Integer rest = abs(n);
    auto strip = [&](unsigned long d) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), d) != 0) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
            ++e;
        }
        if (e != 0) out.emplace_back(Integer(d), e);
    };
    strip(2);
    for (unsigned long d = 3; d <= bound; d += 2) {
        if (rest == 1) break;
        if (Integer(d) * d > rest) break;
        strip(d);
    }
    if (rest != 1) {
        Integer b(static_cast<unsigned long>(bound));
        // No factor up to min(bound, sqrt(rest)) remains; rest is prime when
        // the scan covered its square root.
        if (rest > b * b)
            throw Error(ErrorCode::factorization_limit,
                        "cofactor " + rest.get_str() + " exceeds trial division bound " + std::to_string(bound));
        out.emplace_back(rest, 1U);
    }
    return out;
}

}  // namespace hjfa
