#pragma once

// Independent reference computations for the test suites. Nothing here
// calls into the library's algorithms; everything is brute force.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline std::set<std::int64_t> squares_mod(std::int64_t p) {
    std::set<std::int64_t> out;
    for (std::int64_t x = 1; x < p; ++x) out.insert(x * x % p);
    return out;
}

/// Legendre symbol by enumeration of squares.
inline int legendre(std::int64_t a, std::int64_t p) {
    a = mod(a, p);
    if (a == 0) return 0;
    return squares_mod(p).count(a) != 0 ? 1 : -1;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Does any combinatorial line of [1,m]^n carry one color? Words over
/// {0 = star, 1..m} are generated recursively and the line is read off cell
/// by cell through `color(cell)`.
inline bool has_monochromatic_line(unsigned m, unsigned n,
                                   const std::function<unsigned(const std::vector<unsigned>&)>& color) {
    std::vector<unsigned> word(n, 0);
    std::function<bool(unsigned)> rec = [&](unsigned pos) -> bool {
        if (pos == n) {
            bool any_star = false;
            for (auto s : word) any_star |= s == 0;
            if (!any_star) return false;
            std::optional<unsigned> first;
            for (unsigned j = 1; j <= m; ++j) {
                std::vector<unsigned> cell(word);
                for (auto& s : cell)
                    if (s == 0) s = j;
                auto c = color(cell);
                if (!first) first = c;
                else if (*first != c) return false;
            }
            return true;
        }
        for (unsigned s = 0; s <= m; ++s) {
            word[pos] = s;
            if (rec(pos + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

/// Decode a coloring numbered `code` in base k, cell index lexicographic.
inline std::vector<unsigned> coloring_from_code(std::uint64_t code, unsigned k, std::uint64_t cells) {
    std::vector<unsigned> out(cells);
    for (std::uint64_t i = 0; i < cells; ++i) {
        out[i] = static_cast<unsigned>(code % k);
        code /= k;
    }
    return out;
}

inline std::uint64_t lex_index(const std::vector<unsigned>& cell, unsigned m) {
    std::uint64_t i = 0;
    for (auto s : cell) i = i * m + (s - 1);
    return i;
}

/// F_{p^2} = F_p[t]/(t^2 - nr) with nr a non-residue; elements (a, b) = a + b t.
struct Fp2 {
    std::int64_t p;
    std::int64_t nr;

    explicit Fp2(std::int64_t prime) : p(prime), nr(2) {
        while (legendre(nr, p) != -1) ++nr;
    }
    std::pair<std::int64_t, std::int64_t> mul(std::pair<std::int64_t, std::int64_t> x,
                                              std::pair<std::int64_t, std::int64_t> y) const {
        return {mod(x.first * y.first + nr * mod(x.second * y.second, p), p),
                mod(x.first * y.second + x.second * y.first, p)};
    }
    std::pair<std::int64_t, std::int64_t> sub(std::pair<std::int64_t, std::int64_t> x, std::int64_t c) const {
        return {mod(x.first - c, p), x.second};
    }
};

/// #E(F_{p^2}) for y^2 = (x-a1)(x-a2)(x-a3) by full enumeration.
inline std::int64_t count_points_fp2(std::int64_t p, std::int64_t a1, std::int64_t a2, std::int64_t a3) {
    Fp2 k(p);
    std::vector<std::int64_t> square_count(static_cast<std::size_t>(p * p), 0);
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b) {
            auto s = k.mul({a, b}, {a, b});
            ++square_count[static_cast<std::size_t>(s.first * p + s.second)];
        }
    std::int64_t n = 1;
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b) {
            auto v = k.mul(k.mul(k.sub({a, b}, a1), k.sub({a, b}, a2)), k.sub({a, b}, a3));
            n += square_count[static_cast<std::size_t>(v.first * p + v.second)];
        }
    return n;
}

/// #E(F_p) by enumeration of (x, y) pairs.
inline std::int64_t count_points_fp(std::int64_t p, std::int64_t a1, std::int64_t a2, std::int64_t a3) {
    std::int64_t n = 1;
    for (std::int64_t x = 0; x < p; ++x)
        for (std::int64_t y = 0; y < p; ++y)
            if (mod(y * y - (x - a1) * (x - a2) % p * (x - a3), p) == 0) ++n;
    return n;
}

/// Affine point on y^2 = x^3 + A x^2 + B x + C over F_p; nullopt is infinity.
using FpPoint = std::optional<std::pair<std::int64_t, std::int64_t>>;

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    a = mod(a, p);
    for (std::int64_t x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    return 0;
}

inline FpPoint fp_add(std::int64_t p, std::int64_t A, std::int64_t B, FpPoint P, FpPoint Q) {
    if (!P) return Q;
    if (!Q) return P;
    auto [x1, y1] = *P;
    auto [x2, y2] = *Q;
    std::int64_t lambda;
    if (x1 == x2) {
        if (mod(y1 + y2, p) == 0) return std::nullopt;
        lambda = mod((3 * x1 % p * x1 + 2 * A * x1 + B) % p * inv_mod(2 * y1, p), p);
    } else {
        lambda = mod((y2 - y1) * inv_mod(x2 - x1, p), p);
    }
    std::int64_t x3 = mod(lambda * lambda - A - x1 - x2, p);
    std::int64_t y3 = mod(lambda * (x1 - x3) - y1, p);
    return std::make_pair(x3, y3);
}

}  // namespace oracle
