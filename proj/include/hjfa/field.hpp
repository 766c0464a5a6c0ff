#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hjfa/numeric.hpp"

namespace hjfa {

inline constexpr int kDefaultPadicPrecision = 16;

struct PrimeField {
    std::uint64_t p;
    friend bool operator==(const PrimeField&, const PrimeField&) = default;
};

struct RationalField {
    friend bool operator==(const RationalField&, const RationalField&) = default;
};

/// Q embedded in Q_p; elements stay exact rationals, `precision` only
/// governs how far square roots are expanded.
struct PadicField {
    std::uint64_t p;
    int precision;
    friend bool operator==(const PadicField&, const PadicField&) = default;
};

/// One of F_p, Q, Q_p with p an odd prime. Textual form: `fp:<p>`, `q`,
/// `qp:<p>:<k>` (`qp:<p>` uses the default precision).
class FieldTag {
public:
    using Variant = std::variant<PrimeField, RationalField, PadicField>;

    static FieldTag prime(std::uint64_t p);
    static FieldTag rational();
    static FieldTag padic(std::uint64_t p, int precision = kDefaultPadicPrecision);
    static FieldTag parse(std::string_view text);

    std::string to_string() const;
    const Variant& variant() const noexcept { return value_; }

    bool is_prime_field() const noexcept { return std::holds_alternative<PrimeField>(value_); }
    bool is_rational_field() const noexcept { return std::holds_alternative<RationalField>(value_); }
    bool is_padic_field() const noexcept { return std::holds_alternative<PadicField>(value_); }

    /// p for F_p and Q_p; throws unsupported_field for Q.
    std::uint64_t prime_p() const;
    /// Q_p precision k; throws unsupported_field otherwise.
    int precision() const;

    /// Bit width of the square-class vector: 1 for F_p, 2 for Q_p.
    unsigned class_width() const;

    friend bool operator==(const FieldTag&, const FieldTag&) = default;

private:
    explicit FieldTag(Variant value) : value_(value) {}
    Variant value_;
};

// Field arithmetic on the common Rational carrier. For F_p every result is
// reduced to an integer residue in [0, p).
Rational reduce(const FieldTag& field, const Rational& value);
bool is_zero(const FieldTag& field, const Rational& value);
Rational add(const FieldTag& field, const Rational& a, const Rational& b);
Rational sub(const FieldTag& field, const Rational& a, const Rational& b);
Rational mul(const FieldTag& field, const Rational& a, const Rational& b);
Rational div(const FieldTag& field, const Rational& a, const Rational& b);

/// Euler's criterion; -1, 0 or +1. p must be an odd prime.
int legendre(const Integer& a, std::uint64_t p);
int legendre(std::uint64_t a, std::uint64_t p);

/// Tonelli-Shanks; returns the smaller of the two roots.
std::uint64_t sqrt_mod_p(const Integer& a, std::uint64_t p);

struct PadicSplit {
    long valuation;
    Rational unit;
};

/// r = p^v * u with u's numerator and denominator prime to p.
PadicSplit padic_split(const Rational& r, std::uint64_t p);

/// Element of K^x/(K^x)^2 as a bit vector packed into `bits`. For Q_p bit 0
/// is valuation parity and bit 1 the unit-part non-residue flag.
class SquareClass {
public:
    SquareClass() = default;
    SquareClass(std::uint8_t bits, unsigned width);

    static SquareClass identity(unsigned width) { return SquareClass(0, width); }

    std::uint8_t bits() const noexcept { return bits_; }
    unsigned width() const noexcept { return width_; }
    bool bit(unsigned i) const noexcept { return ((bits_ >> i) & 1U) != 0; }
    bool is_identity() const noexcept { return bits_ == 0; }
    std::vector<int> to_vector() const;

    friend SquareClass operator+(SquareClass a, SquareClass b);
    friend bool operator==(const SquareClass&, const SquareClass&) = default;

private:
    std::uint8_t bits_ = 0;
    std::uint8_t width_ = 1;
};

SquareClass square_class(const FieldTag& field, const Rational& x);

/// Square root of the unit part of r modulo p^k, the smaller of the two
/// residues. Requires r to be a nonzero p-adic square.
Integer hensel_sqrt(const Rational& r, std::uint64_t p, int k);

struct SquareClassGroup {
    FieldTag field;
    unsigned width;
    std::vector<Rational> representatives;
};

SquareClassGroup square_class_group(const FieldTag& field);

/// Least positive quadratic non-residue modulo an odd prime.
std::uint64_t least_nonresidue(std::uint64_t p);

}  // namespace hjfa
