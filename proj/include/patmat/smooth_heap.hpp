#pragma once

#include <cstdint>
#include <vector>

#include "patmat/greedy_bst.hpp"
#include "patmat/permutation.hpp"

namespace patmat {

// Sorts s by inserting every key and then deleting the minimum n times.
// Inserts only buffer the key as a new rightmost root. Each delete-min
// removes the minimum root, splices its children in place, then consolidates
// the root list by repeatedly linking a local-maximum root under its larger
// neighbour (left links append as last child, right links prepend as first
// child, preserving left-to-right order).
//
// Row i of the touch matrix marks the keys touched by the i-th delete-min:
// the removed minimum plus every root taking part in consolidation.
struct SmoothSortResult {
    std::vector<int> sorted;
    TouchMatrix touch;
};

// validate re-checks heap order and left-to-right insertion order after every
// delete-min (slow; intended for tests).
SmoothSortResult smoothHeapSort(const Permutation& s, bool validate = false);

struct ComparisonRecord {
    long long greedyTouches = 0;
    long long smoothTouches = 0;
    double ratio = 0.0; // smooth / greedy
};

// Greedy run on s versus smooth heap sort on the inverse permutation, which
// swaps the roles of key order and arrival order between the two models.
ComparisonRecord smoothVsGreedy(const Permutation& s);

} // namespace patmat
