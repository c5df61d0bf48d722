#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "patmat/bitmatrix.hpp"

namespace patmat {

struct ExOptions {
    double timeLimitSec = 0.0; // 0 = unlimited
    bool force = false;        // lift the default 8x8 size guard
};

struct ExResult {
    int n = 0;
    int m = 0;
    long long value = 0;
    BitMatrix01 witness{1, 1};
    bool exact = false;
};

// Exact maximum weight of an n x m host avoiding the pattern. Rows are
// chosen bottom to top (masks in decreasing weight, then decreasing value);
// states reached with the same remaining row budget and the same greedy
// match progress against every increasing column selection are merged, so
// the search is a memoised DP rather than a plain enumeration. The witness
// replays the first optimum found under that fixed order. Requires
// n, m <= 8 unless force is set; m <= 20 always.
ExResult exExact(const BitMatrix01& p, int n, int m, const ExOptions& opts = {});
ExResult exExact(const TrimmedPattern& p, int n, int m, const ExOptions& opts = {});

// Saturation heuristic: adds random admissible 1s until no cell can be
// added; best over `restarts` seeded attempts. Always a lower bound.
ExResult exLowerGreedy(const BitMatrix01& p, int n, int m, std::uint64_t seed, int restarts = 4);
ExResult exLowerGreedy(const TrimmedPattern& p, int n, int m, std::uint64_t seed,
                       int restarts = 4);

struct DecompositionReport {
    int B = 0;
    int G = 0;
    bool inputPatternFree = false; // host avoided the supplied trimmed pattern
    int emptyRows = 0;             // rows with no 1s (in no slab, counted apart)
    // per-category 1 counts; they partition the weight of the input
    long long local = 0;
    long long first = 0;
    long long last = 0;
    long long heavyMiddle = 0;
    long long lightFirst = 0;
    long long lightMiddle = 0;
    long long lightLast = 0;
    std::vector<long long> slabLocalRows; // n_i per slab
    long long globalRows = 0;             // n*
    BitMatrix01 heavyContracted{1, 1};    // block grid, 1 = heavy block
    BitMatrix01 lightMidContracted{1, 1}; // block grid, 1 at each chunk boundary
    std::vector<std::vector<std::pair<int, int>>> chunks; // per slab: block-row ranges
};

// Slab/block taxonomy of a host matrix: vertical slabs of B columns (the
// last may be narrower), local versus global rows, first/middle/last global
// 1s, heavy blocks (containing the hat) in the G-row grid over global rows,
// and the light-middle chunk scan per slab.
DecompositionReport decompose(const BitMatrix01& a, const TrimmedPattern& qab, int B, int G);

} // namespace patmat
