#pragma once

#include <cstdint>
#include <vector>

#include "patmat/bitmatrix.hpp"
#include "patmat/permutation.hpp"

namespace patmat {

// Touch matrix of an online BST-style execution: row i (time step i, bottom
// to top) has a 1 in column x when element x was touched while serving s(i).
struct TouchMatrix {
    BitMatrix01 touched;
    std::vector<int> perStep; // touches at each step
    long long total = 0;
};

// Greedy insertion execution. Serving r = s(i) touches r itself plus, on each
// side, the inserted elements forming the strict staircase of most recent
// last-touch times when scanning away from r.
TouchMatrix greedyTouchMatrix(const Permutation& s);

// A point set is arborally satisfied when every pair of points not sharing a
// row or column has a third point in its closed bounding rectangle.
bool isArborallySatisfied(const BitMatrix01& points);

struct HatBoxViolation {
    int rowBottom, rowTop;
    int colLeft, colMid, colRight;
};

struct HatBoxReport {
    unsigned long long candidates = 0; // hat occurrences in the touch matrix
    unsigned long long checked = 0;
    bool exhaustive = false;
    std::vector<HatBoxViolation> violations;
};

// Every hat occurrence in the touch matrix of s should contain some input
// point (i, s(i)) within its bounding box. Checks all occurrences when there
// are at most exhaustLimit, otherwise a seeded random sample.
HatBoxReport hatBoundingBoxCheck(const Permutation& s, unsigned long long exhaustLimit = 1000000,
                                 unsigned long long samples = 200000, std::uint64_t seed = 1);

} // namespace patmat
