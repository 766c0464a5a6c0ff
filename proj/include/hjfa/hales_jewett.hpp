#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hjfa/config.hpp"

namespace hjfa::hj {

/// Alphabet symbols are 1..m; 0 marks a wildcard slot in a template.
using Symbol = std::uint8_t;
inline constexpr Symbol kStar = 0;
inline constexpr unsigned kMaxAlphabet = 255;

using ColorId = std::uint32_t;
using Cell = std::vector<Symbol>;

/// Word over {1..m} ∪ {*}. Substituting j for every star yields the j-th
/// cell of the combinatorial line.
class LineTemplate {
public:
    LineTemplate() = default;
    explicit LineTemplate(std::vector<Symbol> slots);

    /// "*2*1" for m <= 9, otherwise comma separated ("*,12,3").
    static LineTemplate parse(std::string_view text);
    std::string to_string(unsigned m) const;

    std::size_t size() const noexcept { return slots_.size(); }
    Symbol slot(std::size_t i) const { return slots_.at(i); }
    bool is_star(std::size_t i) const { return slots_.at(i) == kStar; }
    const std::vector<Symbol>& slots() const noexcept { return slots_; }
    std::size_t star_count() const noexcept;
    /// 0-based positions of the star slots, ascending.
    std::vector<std::size_t> star_positions() const;

    friend bool operator==(const LineTemplate&, const LineTemplate&) = default;

private:
    std::vector<Symbol> slots_;
};

std::vector<Cell> line_cells(const LineTemplate& line, unsigned m);

/// All (m+1)^N - m^N templates: fewest stars first, then lexicographic
/// with the star ordered before every symbol.
std::vector<LineTemplate> enumerate_templates(unsigned m, unsigned n);

std::uint64_t cube_size(unsigned m, unsigned n);
/// Lexicographic rank of a cell in [1,m]^N.
std::uint64_t cell_index(std::span<const Symbol> cell, unsigned m);
Cell cell_at(std::uint64_t index, unsigned m, unsigned n);

struct Coloring {
    unsigned m = 0;
    unsigned n = 0;
    unsigned k = 0;
    std::function<ColorId(std::span<const Symbol>)> evaluate;
};

/// Explicit coloring of [1,m]^N, cells in lexicographic order.
struct ColoringTable {
    unsigned m = 0;
    unsigned n = 0;
    unsigned k = 0;
    std::vector<ColorId> colors;

    Coloring as_coloring() const;
    ColorId at(std::span<const Symbol> cell) const { return colors.at(cell_index(cell, m)); }

    /// Header `m N k`, then either one `c1,...,cN:color` line per cell in
    /// lexicographic order or a single line of m^N color digits.
    static ColoringTable read(std::istream& in);
    void write(std::ostream& out, bool dense = false) const;
};

struct MonochromaticLine {
    LineTemplate line;
    ColorId color;
};

/// First monochromatic template in enumeration order, if any.
std::optional<MonochromaticLine> find_monochromatic_line(const Coloring& coloring, const Limits& limits = {});

struct IncrementalLine {
    unsigned n;
    LineTemplate line;
    ColorId color;
};

/// Colorings indexed by N. An empty optional marks an N with no coloring
/// available; that N is skipped.
using ColoringFamily = std::function<std::optional<Coloring>(unsigned n)>;

std::optional<IncrementalLine> find_line_incremental(const ColoringFamily& family, unsigned m, unsigned n_max,
                                                     const Limits& limits = {});

/// Backtracking search for a k-coloring of [1,m]^N without monochromatic
/// lines. Cells are assigned in lexicographic order, colors ascending.
std::optional<ColoringTable> line_free_coloring(unsigned m, unsigned k, unsigned n, const Limits& limits = {});

/// Least N <= n_cap at which every k-coloring of [1,m]^N has a
/// monochromatic line.
std::optional<unsigned> hj_number_exact(unsigned m, unsigned k, unsigned n_cap, const Limits& limits = {});

}  // namespace hjfa::hj
