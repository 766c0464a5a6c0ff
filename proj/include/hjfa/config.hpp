#pragma once

#include <cstdint>

namespace hjfa {

/// Budget caps shared by the search routines. `from_env` honours
/// HP_MAX_CELLS and HP_TRIAL_DIVISION_BOUND.
struct Limits {
    // Largest cube [1,m]^N any search will touch.
    std::uint64_t max_cells = 10'000'000;
    // Colorings up to this many cells are memoized in a dense table.
    std::uint64_t dense_cells = 10'000'000;
    // Backtracking for line-free colorings refuses cubes larger than this.
    std::uint64_t backtrack_cells = 64;
    std::uint64_t trial_division_bound = 1'000'000;

    static Limits from_env();
};

}  // namespace hjfa
