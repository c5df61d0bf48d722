#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "patmat/ackermann.hpp"
#include "patmat/bitmatrix.hpp"

namespace patmat {

// Sequence of blocks; each block is a contiguous run of distinct symbols and
// is either live or dead. Symbols are positive integers; canonical form
// numbers them by first appearance.
struct Block {
    bool live = true;
    std::vector<int> syms;
};

struct BlockedSequence {
    std::vector<Block> blocks;
    int alphabetSize = 0;

    long long length() const; // total symbol count
    int liveCount() const;
    int deadCount() const;
    std::vector<int> flatten() const;
};

BlockedSequence canonicalForm(const BlockedSequence& u);

// Building blocks of the recursive family:
//   uGadget(j)   (j .. 1)(1 .. j), two live blocks
//   uBase1(j)    [1 .. j](1 .. j), dead then live
//   uBase0(i)    ()(), two empty live blocks
BlockedSequence uGadget(int j);
BlockedSequence uBase1(int j);
BlockedSequence uBase0(int i);

// Replace every live block of top by a re-lettered copy of mid: position p of
// mid's alphabet maps to the p-th symbol of the block. Dead blocks are kept.
// Requires mid to be all-live and every live block of top to have length
// equal to mid's alphabet size.
BlockedSequence compose(const BlockedSequence& top, const BlockedSequence& mid);

// Left shuffle: each live block (a_1 .. a_j) of sub is replaced by a
// fresh-alphabet copy of bot with a_l prepended to the copy's l-th live
// block; sub's dead-block runs are re-inserted between the copies. Requires
// every live block of sub to have length liveCount(bot).
BlockedSequence leftShuffle(const BlockedSequence& sub, const BlockedSequence& bot);

// Predicted statistics (saturating; overflow means "bigger than any sane
// budget"). liveBlocksPredicted is L(i,j), alphabetPredicted is N(i,j), and
// lengthPredicted is N(i,j) * (2^(i-1) + 1).
SatValue liveBlocksPredicted(int i, const BigInt& j);
SatValue alphabetPredicted(int i, const BigInt& j);
SatValue lengthPredicted(int i, const BigInt& j);

// Recursive construction; throws std::runtime_error when the predicted
// length exceeds budget. Output is in canonical form.
BlockedSequence buildU(int i, int j, long long budget);

struct UStats {
    int i = 0;
    int j = 0;
    long long n = 0;          // alphabet size
    long long liveBlocks = 0;
    long long deadBlocks = 0;
    long long length = 0;
    std::map<int, long long> occurrenceHistogram; // occurrences -> #symbols
};

// Measured statistics of a built U(i,j), cross-checked against the
// recurrences; any mismatch throws std::logic_error.
UStats stats(const BlockedSequence& u, int i, int j);

// True when the flattened sequence has a subsequence order-isomorphic to
// word (equal letters must map to equal symbols). Word may use at most 5
// distinct letters.
bool containsOrderIsomorphic(const BlockedSequence& u, const std::vector<int>& word);

namespace detail {
bool contains41213(const std::vector<int>& flat);
bool containsOrderIsomorphicSlow(const std::vector<int>& flat, const std::vector<int>& word);
}

struct PairViolation {
    int a = 0;
    int b = 0;
};

// For every pair of symbols sharing a live block, their restriction must
// read a* b* (ab) b* a* with the middle "ab" adjacent inside one live block.
// Checks at most maxPairs pairs (seeded sample when there are more).
std::vector<PairViolation> checkPairRestrictions(const BlockedSequence& u,
                                                 std::size_t maxPairs = SIZE_MAX,
                                                 std::uint64_t seed = 1);

// Symbol-block incidence matrix: rows are symbols (bottom to top), columns
// blocks (left to right), 1 when the symbol appears in the block.
BitMatrix01 toIncidenceMatrix(const BlockedSequence& u);

// bseq file format: one block per line, "L" or "D" then the symbols.
std::string toBseq(const BlockedSequence& u);
BlockedSequence loadBseq(const std::string& path);
void saveBseq(const BlockedSequence& u, const std::string& path);

} // namespace patmat
