#include "hjfa/hales_jewett.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>

#include "hjfa/error.hpp"

namespace hjfa::hj {

namespace {

// Upper bound on the template list we are willing to materialize.
constexpr std::uint64_t kMaxTemplates = 100'000'000;

void require_shape(unsigned m, unsigned n) {
    if (m < 1 || m > kMaxAlphabet) throw Error(ErrorCode::precondition, "alphabet size must be in [1, 255]");
    if (n < 1) throw Error(ErrorCode::precondition, "dimension N must be >= 1");
}

std::uint64_t saturating_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
        out *= base;
    }
    return out;
}

// Cells of a line are base, base + stride, ..., base + (m-1) * stride.
struct LineGeometry {
    std::uint64_t base;
    std::uint64_t stride;
};

LineGeometry geometry(const LineTemplate& t, unsigned m) {
    LineGeometry g{0, 0};
    for (std::size_t i = 0; i < t.size(); ++i) {
        g.base *= m;
        g.stride *= m;
        if (t.is_star(i)) g.stride += 1;
        else g.base += t.slot(i) - 1U;
    }
    return g;
}

struct TemplateList {
    std::vector<LineTemplate> templates;
    std::vector<LineGeometry> geometries;
};

std::vector<LineTemplate> build_templates(unsigned m, unsigned n) {
    require_shape(m, n);
    auto words = saturating_pow(m + 1ULL, n);
    if (words > kMaxTemplates) throw ResourceLimitError("template enumeration too large", n);
    std::vector<std::vector<LineTemplate>> by_stars(n + 1);
    std::vector<Symbol> word(n, kStar);
    for (std::uint64_t w = 0; w < words; ++w) {
        auto stars = static_cast<std::size_t>(std::count(word.begin(), word.end(), kStar));
        if (stars != 0) by_stars[stars].emplace_back(word);
        // Odometer increment in lexicographic order, star = 0 first.
        for (std::size_t i = n; i-- > 0;) {
            if (word[i] < m) {
                ++word[i];
                break;
            }
            word[i] = kStar;
        }
    }
    std::vector<LineTemplate> out;
    out.reserve(words - saturating_pow(m, n));
    for (auto& bucket : by_stars)
        for (auto& t : bucket) out.push_back(std::move(t));
    return out;
}

std::shared_ptr<const TemplateList> cached_templates(unsigned m, unsigned n) {
    static std::mutex mutex;
    static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const TemplateList>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find({m, n}); it != cache.end()) return it->second;
    }
    auto list = std::make_shared<TemplateList>();
    list->templates = build_templates(m, n);
    list->geometries.reserve(list->templates.size());
    for (const auto& t : list->templates) list->geometries.push_back(geometry(t, m));
    std::lock_guard lock(mutex);
    return cache.try_emplace({m, n}, std::move(list)).first->second;
}

ColorId checked_color(const Coloring& coloring, std::span<const Symbol> cell) {
    auto color = coloring.evaluate(cell);
    if (color >= coloring.k)
        throw Error(ErrorCode::precondition,
                    "coloring returned " + std::to_string(color) + " but k = " + std::to_string(coloring.k));
    return color;
}

}  // namespace

LineTemplate::LineTemplate(std::vector<Symbol> slots) : slots_(std::move(slots)) {
    if (slots_.empty()) throw Error(ErrorCode::precondition, "template must have at least one slot");
}

LineTemplate LineTemplate::parse(std::string_view text) {
    std::vector<Symbol> slots;
    auto push = [&](std::string_view token) {
        if (token == "*") {
            slots.push_back(kStar);
            return;
        }
        unsigned value = 0;
        for (char ch : token) {
            if (ch < '0' || ch > '9') throw Error(ErrorCode::parse, "bad template symbol '" + std::string(token) + "'");
            value = value * 10 + static_cast<unsigned>(ch - '0');
            if (value > kMaxAlphabet) throw Error(ErrorCode::parse, "template symbol too large");
        }
        if (token.empty() || value == 0) throw Error(ErrorCode::parse, "template symbols start at 1");
        slots.push_back(static_cast<Symbol>(value));
    };
    if (text.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (true) {
            auto comma = text.find(',', start);
            push(text.substr(start, comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    } else {
        for (std::size_t i = 0; i < text.size(); ++i) push(text.substr(i, 1));
    }
    return LineTemplate(std::move(slots));
}

std::string LineTemplate::to_string(unsigned m) const {
    std::string out;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        if (m > 9 && i != 0) out += ',';
        out += slots_[i] == kStar ? std::string("*") : std::to_string(slots_[i]);
    }
    return out;
}

std::size_t LineTemplate::star_count() const noexcept {
    return static_cast<std::size_t>(std::count(slots_.begin(), slots_.end(), kStar));
}

std::vector<std::size_t> LineTemplate::star_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < slots_.size(); ++i)
        if (slots_[i] == kStar) out.push_back(i);
    return out;
}

std::vector<Cell> line_cells(const LineTemplate& line, unsigned m) {
    if (line.star_count() == 0) throw Error(ErrorCode::degenerate_line, "template has no star slot");
    for (auto s : line.slots())
        if (s > m) throw Error(ErrorCode::precondition, "template symbol exceeds alphabet size");
    std::vector<Cell> out;
    out.reserve(m);
    for (unsigned j = 1; j <= m; ++j) {
        Cell cell = line.slots();
        for (auto& s : cell)
            if (s == kStar) s = static_cast<Symbol>(j);
        out.push_back(std::move(cell));
    }
    return out;
}

std::vector<LineTemplate> enumerate_templates(unsigned m, unsigned n) { return cached_templates(m, n)->templates; }

std::uint64_t cube_size(unsigned m, unsigned n) { return saturating_pow(m, n); }

std::uint64_t cell_index(std::span<const Symbol> cell, unsigned m) {
    std::uint64_t index = 0;
    for (auto s : cell) {
        if (s < 1 || s > m) throw Error(ErrorCode::precondition, "cell symbol outside [1, m]");
        index = index * m + (s - 1U);
    }
    return index;
}

Cell cell_at(std::uint64_t index, unsigned m, unsigned n) {
    Cell cell(n);
    for (std::size_t i = n; i-- > 0;) {
        cell[i] = static_cast<Symbol>(index % m + 1);
        index /= m;
    }
    return cell;
}

Coloring ColoringTable::as_coloring() const {
    auto table = std::make_shared<const std::vector<ColorId>>(colors);
    auto alphabet = m;
    return Coloring{m, n, k, [table, alphabet](std::span<const Symbol> cell) {
                        return (*table)[cell_index(cell, alphabet)];
                    }};
}

ColoringTable ColoringTable::read(std::istream& in) {
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };
    if (!next_line()) throw Error(ErrorCode::parse, "empty coloring file");
    ColoringTable table;
    {
        std::istringstream header(line);
        long m = 0, n = 0, k = 0;
        if (!(header >> m >> n >> k) || m < 1 || m > static_cast<long>(kMaxAlphabet) || n < 1 || k < 1)
            throw Error(ErrorCode::parse, "coloring header must be 'm N k'");
        table.m = static_cast<unsigned>(m);
        table.n = static_cast<unsigned>(n);
        table.k = static_cast<unsigned>(k);
    }
    auto cells = cube_size(table.m, table.n);
    if (cells > 100'000'000) throw ResourceLimitError("coloring file too large", table.n);
    table.colors.reserve(cells);
    if (!next_line()) throw Error(ErrorCode::parse, "coloring file has no cells");
    auto check = [&](unsigned long color) {
        if (color >= table.k) throw Error(ErrorCode::parse, "color " + std::to_string(color) + " >= k");
        table.colors.push_back(static_cast<ColorId>(color));
    };
    if (line.find(':') == std::string::npos) {
        if (line.size() != cells) throw Error(ErrorCode::parse, "dense coloring must have m^N digits");
        for (char ch : line) {
            if (ch < '0' || ch > '9') throw Error(ErrorCode::parse, "dense coloring digits must be 0-9");
            check(static_cast<unsigned long>(ch - '0'));
        }
    } else {
        for (std::uint64_t i = 0; i < cells; ++i) {
            if (i != 0 && !next_line()) throw Error(ErrorCode::parse, "coloring file ends early");
            auto colon = line.find(':');
            if (colon == std::string::npos) throw Error(ErrorCode::parse, "expected 'coords:color'");
            std::vector<Symbol> coords;
            std::istringstream coords_in(line.substr(0, colon));
            std::string token;
            while (std::getline(coords_in, token, ',')) {
                unsigned long v = 0;
                try {
                    v = std::stoul(token);
                } catch (const std::exception&) {
                    throw Error(ErrorCode::parse, "bad coordinate '" + token + "'");
                }
                if (v < 1 || v > table.m) throw Error(ErrorCode::parse, "coordinate outside [1, m]");
                coords.push_back(static_cast<Symbol>(v));
            }
            if (coords.size() != table.n || cell_index(coords, table.m) != i)
                throw Error(ErrorCode::parse, "cells must be listed in lexicographic order");
            try {
                check(std::stoul(line.substr(colon + 1)));
            } catch (const std::invalid_argument&) {
                throw Error(ErrorCode::parse, "bad color in '" + line + "'");
            }
        }
    }
    return table;
}

void ColoringTable::write(std::ostream& out, bool dense) const {
    out << m << ' ' << n << ' ' << k << '\n';
    if (dense) {
        for (auto c : colors) out << c;
        out << '\n';
        return;
    }
    for (std::uint64_t i = 0; i < colors.size(); ++i) {
        auto cell = cell_at(i, m, n);
        for (std::size_t j = 0; j < cell.size(); ++j) out << (j ? "," : "") << unsigned(cell[j]);
        out << ':' << colors[i] << '\n';
    }
}

std::optional<MonochromaticLine> find_monochromatic_line(const Coloring& coloring, const Limits& limits) {
    const unsigned m = coloring.m;
    const unsigned n = coloring.n;
    require_shape(m, n);
    if (!coloring.evaluate) throw Error(ErrorCode::precondition, "coloring has no evaluator");
    auto cells = cube_size(m, n);
    if (cells > limits.max_cells) throw ResourceLimitError("cube [1,m]^N exceeds cell budget", n);

    auto list = cached_templates(m, n);
    if (cells <= limits.dense_cells) {
        std::vector<ColorId> table(cells);
        Cell cell(n, 1);
        for (std::uint64_t i = 0; i < cells; ++i) {
            table[i] = checked_color(coloring, cell);
            for (std::size_t j = n; j-- > 0;) {
                if (cell[j] < m) {
                    ++cell[j];
                    break;
                }
                cell[j] = 1;
            }
        }
        for (std::size_t t = 0; t < list->templates.size(); ++t) {
            auto [base, stride] = list->geometries[t];
            ColorId first = table[base];
            bool mono = true;
            for (unsigned j = 1; j < m && mono; ++j) mono = table[base + j * stride] == first;
            if (mono) return MonochromaticLine{list->templates[t], first};
        }
        return std::nullopt;
    }
    for (const auto& t : list->templates) {
        auto line = line_cells(t, m);
        ColorId first = checked_color(coloring, line[0]);
        bool mono = true;
        for (unsigned j = 1; j < m && mono; ++j) mono = checked_color(coloring, line[j]) == first;
        if (mono) return MonochromaticLine{t, first};
    }
    return std::nullopt;
}

std::optional<IncrementalLine> find_line_incremental(const ColoringFamily& family, unsigned m, unsigned n_max,
                                                     const Limits& limits) {
    for (unsigned n = 1; n <= n_max; ++n) {
        if (cube_size(m, n) > limits.max_cells) throw ResourceLimitError("cube [1,m]^N exceeds cell budget", n);
        auto coloring = family(n);
        if (!coloring) continue;
        if (coloring->m != m || coloring->n != n)
            throw Error(ErrorCode::precondition, "coloring family returned the wrong shape");
        if (auto found = find_monochromatic_line(*coloring, limits))
            return IncrementalLine{n, std::move(found->line), found->color};
    }
    return std::nullopt;
}

std::optional<ColoringTable> line_free_coloring(unsigned m, unsigned k, unsigned n, const Limits& limits) {
    require_shape(m, n);
    const auto cells = cube_size(m, n);
    if (cells > limits.backtrack_cells) throw ResourceLimitError("backtracking search space too large", n);
    if (k == 0) return std::nullopt;

    auto list = cached_templates(m, n);
    // Every line is checked once, when its last cell receives a color.
    std::vector<std::vector<LineGeometry>> ending(cells);
    for (const auto& g : list->geometries) ending[g.base + (m - 1ULL) * g.stride].push_back(g);

    std::vector<long> color(cells, -1);
    // highest[i]: largest color used among cells [0, i). Colors are
    // introduced in order, which keeps the lexicographically first solution.
    std::vector<long> highest(cells + 1, -1);
    auto conflicts = [&](std::uint64_t pos, long c) {
        for (const auto& g : ending[pos]) {
            bool mono = true;
            for (unsigned j = 0; j + 1 < m && mono; ++j) mono = color[g.base + j * g.stride] == c;
            if (mono) return true;
        }
        return false;
    };

    std::uint64_t pos = 0;
    while (true) {
        if (pos == cells) {
            ColoringTable out{m, n, k, {}};
            out.colors.reserve(cells);
            for (auto c : color) out.colors.push_back(static_cast<ColorId>(c));
            return out;
        }
        long limit = std::min<long>(static_cast<long>(k) - 1, highest[pos] + 1);
        long c = color[pos] + 1;
        while (c <= limit && conflicts(pos, c)) ++c;
        if (c <= limit) {
            color[pos] = c;
            highest[pos + 1] = std::max(highest[pos], c);
            ++pos;
            continue;
        }
        color[pos] = -1;
        if (pos == 0) return std::nullopt;
        --pos;
    }
}

std::optional<unsigned> hj_number_exact(unsigned m, unsigned k, unsigned n_cap, const Limits& limits) {
    for (unsigned n = 1; n <= n_cap; ++n)
        if (!line_free_coloring(m, k, n, limits)) return n;
    return std::nullopt;
}

}  // namespace hjfa::hj
