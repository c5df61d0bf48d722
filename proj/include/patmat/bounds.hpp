#pragma once

#include <string>
#include <vector>

#include "patmat/ackermann.hpp"
#include "patmat/bitmatrix.hpp"

namespace patmat {

// mu_{i,t} = (2C + 3i)^(t-2) * (2^i - 1), the weight coefficient of the main
// recurrence. Requires i >= 1 and t >= 2.
BigInt mu(const BigInt& C, int i, int t);

struct MuViolation {
    int i = 0;
    int t = 0;
    int constraint = 0; // 9 or 10, the two recurrence inequalities
};

// Verifies both recurrence inequalities exactly (no floating point) for
// 2 <= i <= iMax, 4 <= t <= tMax with both constants set to C.
std::vector<MuViolation> checkMuConstraints(const BigInt& C, int iMax, int tMax);

// Closed-form bounds for the recursion base cases, by pattern weight t:
//   t = 2: n + (2k-1)(m-1)
//   t = 3: 2n + (2k-1) * max(0, m-2)
//   t >= 4: 2^(t-2) n + (2k-1) * j^(t-3) * max(0, m-2), j = ceil(log2 m)
// where k is half the pattern's row count.
BigInt baseCaseBounds(const TrimmedPattern& qab, const BigInt& n, const BigInt& m);

// Corner join: r goes top-left, s bottom-right, overlapping in a single
// shared cell; requires a 1 at the bottom-right corner cell of r's last
// column and at the top-left corner cell of s (r(1, cols(r)) and
// s(rows(s), 1)).
BitMatrix01 keszeghJoin(const BitMatrix01& r, const BitMatrix01& s);

// Row/column prunings used by the containment reductions.
BitMatrix01 dropTopOfEachColumn(const BitMatrix01& a);
BitMatrix01 dropLeadingOnesPerRow(const BitMatrix01& a, int count);
BitMatrix01 dropTrailingOnesPerRow(const BitMatrix01& a, int count);

// Role of a 1 inside the two 4-point hat extensions.
struct Hat4Roles {
    bool bottomRightOfL = false; // last 1 of a hat4L copy's bottom row
    bool bottomLeftOfR = false;  // first 1 of a hat4R copy's bottom row
    int topRowL = 0;             // row of the witness copy's top 1 (i_L)
    int topRowR = 0;             // i_R
};

Hat4Roles hat4RolesAt(const BitMatrix01& m, int row, int col);

struct WBothCell {
    Cell cell;
    int topRowL = 0;
    int topRowR = 0;
    std::string resolved; // "w", "wprime" or "wdoubleprime", by comparing rows
};

struct WReductionReport {
    BitMatrix01 reduced;     // input minus the top 1 of every column
    bool reducedWppFree = false;
    long long bottomRightOfLCount = 0;
    long long bottomLeftOfRCount = 0;
    std::vector<WBothCell> bothCells; // should stay empty
};

// Requires the input to avoid both w and wPrime. After dropping each
// column's top 1, no surviving 1 may close a hat4L copy on its left and a
// hat4R copy on its right at once; such a 1 would force a w, wPrime or
// wDoublePrime back into the input.
WReductionReport wReductionCheck(const BitMatrix01& a);

struct MainBoundReport {
    int k = 0;
    int t = 0;
    int level = 0; // inverse-table level used
    BigInt value;
};

// Headline upper-bound value for square n x n hosts and a weight-3k pattern
// family parameterised by k; reporting only, no tightness claim.
MainBoundReport mainBound(const BigInt& n, int k, const BigInt& C = 64);

} // namespace patmat
