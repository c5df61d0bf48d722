#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace patmat {

// (row, col), 1-based. Row 1 is the bottom row throughout this library;
// files and displays follow the same bottom-to-top convention.
using Cell = std::pair<int, int>;

// Finite 0-1 matrix. Used both as a pattern and as a host. Values are
// conceptually immutable once built; set() exists for builder-style code
// (file parsers, search buffers) and is not meant for shared instances.
class BitMatrix01 {
public:
    BitMatrix01(int rows, int cols);
    static BitMatrix01 fromCells(int rows, int cols, const std::vector<Cell>& ones);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int weight() const { return weight_; }

    bool get(int row, int col) const;
    void set(int row, int col, bool value = true);
    void clearRow(int row);

    int rowWeight(int row) const;
    bool rowEmpty(int row) const { return rowWeight(row) == 0; }

    // Row bitset words, LSB = column 1.
    const std::uint64_t* rowWords(int row) const;
    int wordsPerRow() const { return words_; }

    std::vector<Cell> cells() const; // sorted by (row, col)
    std::vector<int> rowCols(int row) const;

    bool operator==(const BitMatrix01& other) const;
    bool operator!=(const BitMatrix01& other) const { return !(*this == other); }

private:
    int rows_;
    int cols_;
    int words_;
    int weight_;
    std::vector<std::uint64_t> bits_;
};

// A pattern Q_{a,b} under the containment semantics of the trimmed relation:
// all-zero pattern rows may only map to host rows that contain a 1 somewhere.
// zeroRows is always derived from base, never supplied by callers.
struct TrimmedPattern {
    BitMatrix01 base;
    std::vector<int> zeroRows;

    explicit TrimmedPattern(BitMatrix01 b);
};

// Symmetries.
BitMatrix01 reflectY(const BitMatrix01& m); // mirror columns
BitMatrix01 reflectX(const BitMatrix01& m); // mirror rows
BitMatrix01 transposed(const BitMatrix01& m);

bool isPermutationMatrix(const BitMatrix01& m);

// Kronecker expansion of a permutation matrix with the hat pattern: each 1 at
// (r, c) becomes ones at (2r, 3c-1), (2r-1, 3c-2), (2r-1, 3c). Rejects
// non-permutation input.
BitMatrix01 kronHat(const BitMatrix01& perm);

// Kronecker expansion with the horizontal pair: (r, c) -> (r, 2c-1), (r, 2c).
BitMatrix01 kronVpair(const BitMatrix01& perm);

// Remove the first `a` and last `b` columns of q; requires a + b < cols(q).
TrimmedPattern trim(const BitMatrix01& q, int a, int b);

// Plain containment: pattern obtainable from host by deleting rows/columns
// and flipping 1s to 0. An all-zero pattern is contained whenever the host
// has at least as many rows and columns.
bool contains(const BitMatrix01& pattern, const BitMatrix01& host);

// Trimmed containment per the all-zero-row rule.
bool containsTrimmed(const TrimmedPattern& q, const BitMatrix01& host);

// Reusable compiled matcher. A single instance holds scratch buffers, so it
// is cheap to call repeatedly but must not be shared between threads; the
// free functions above construct a fresh matcher and are safe anywhere.
class PatternMatcher {
public:
    explicit PatternMatcher(const BitMatrix01& pattern);
    explicit PatternMatcher(const TrimmedPattern& pattern);

    bool matches(const BitMatrix01& host) const;
    // Containment against the bottom `topRow` host rows only.
    bool matchesPrefix(const BitMatrix01& host, int topRow) const;

private:
    void init(const BitMatrix01& pattern, bool zeroRowsNeedNonzero);
    bool search(const BitMatrix01& host, int hostRows) const;
    bool columnsFeasible(const BitMatrix01& host, int assignedCount) const;

    BitMatrix01 pattern_;
    bool zeroRowsNeedNonzero_ = false;
    bool isW_ = false;
    std::vector<int> activeRows_;             // pattern rows with >= 1 one, ascending
    std::vector<int> activeRowWeight_;
    std::vector<std::vector<int>> colNeeds_;  // per pattern col: active-row indices
    std::vector<int> gapBefore_;              // zero pattern rows before active[i]
    int gapAfter_ = 0;
    // scratch
    mutable std::vector<int> assigned_;
    mutable std::vector<int> eligiblePrefix_;
};

namespace detail {
// Exact W-containment specialised for large sparse hosts (all host rows of
// small weight). Exposed for cross-validation against the generic matcher.
bool containsWFast(const BitMatrix01& host);
}

// Named constant patterns.
namespace patterns {
const BitMatrix01& hat();           // 2x3: (1,1) (1,3) (2,2)
const BitMatrix01& hat4L();         // 3x4: (1,2) (1,4) (2,3) (3,1)
const BitMatrix01& hat4R();         // 3x4: (1,1) (1,3) (2,2) (3,4)
const BitMatrix01& w();             // 4x5: (1,2) (1,4) (2,3) (3,5) (4,1)
const BitMatrix01& wPrime();        // reflectY(w)
const BitMatrix01& wDoublePrime();  // 3x5: (1,2) (1,4) (2,3) (3,1) (3,5)
const BitMatrix01& vpair();         // 1x2: (1,1) (1,2)
const BitMatrix01* byName(const std::string& name); // nullptr if unknown
}

// "m01" file format: first line "<rows> <cols>", then one "<row> <col>" pair
// per line (1-based, rows bottom-to-top, any order, duplicates rejected).
std::string toM01(const BitMatrix01& m);
BitMatrix01 parseM01(std::istream& in);
BitMatrix01 loadM01(const std::string& path);
void saveM01(const BitMatrix01& m, const std::string& path);

} // namespace patmat
