#include "patmat/bitmatrix.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace patmat {

namespace {

void checkDims(int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("matrix dimensions must be positive");
    if (rows > (1 << 22) || cols > (1 << 22))
        throw std::invalid_argument("matrix dimensions too large");
}

} // namespace

BitMatrix01::BitMatrix01(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), weight_(0) {
    checkDims(rows, cols);
    bits_.assign(static_cast<std::size_t>(rows_) * words_, 0);
}

BitMatrix01 BitMatrix01::fromCells(int rows, int cols, const std::vector<Cell>& ones) {
    BitMatrix01 m(rows, cols);
    for (const auto& [r, c] : ones) {
        if (m.get(r, c))
            throw std::invalid_argument("duplicate cell (" + std::to_string(r) + "," +
                                        std::to_string(c) + ")");
        m.set(r, c);
    }
    return m;
}

bool BitMatrix01::get(int row, int col) const {
    if (row < 1 || row > rows_ || col < 1 || col > cols_)
        throw std::out_of_range("cell (" + std::to_string(row) + "," + std::to_string(col) +
                                ") outside " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
    const std::uint64_t w = bits_[static_cast<std::size_t>(row - 1) * words_ + (col - 1) / 64];
    return (w >> ((col - 1) % 64)) & 1u;
}

void BitMatrix01::set(int row, int col, bool value) {
    const bool old = get(row, col);
    if (old == value)
        return;
    std::uint64_t& w = bits_[static_cast<std::size_t>(row - 1) * words_ + (col - 1) / 64];
    w ^= (std::uint64_t{1} << ((col - 1) % 64));
    weight_ += value ? 1 : -1;
}

void BitMatrix01::clearRow(int row) {
    weight_ -= rowWeight(row);
    std::fill_n(bits_.begin() + static_cast<std::size_t>(row - 1) * words_, words_, 0);
}

int BitMatrix01::rowWeight(int row) const {
    if (row < 1 || row > rows_)
        throw std::out_of_range("row out of range");
    int w = 0;
    const std::uint64_t* p = rowWords(row);
    for (int i = 0; i < words_; ++i)
        w += std::popcount(p[i]);
    return w;
}

const std::uint64_t* BitMatrix01::rowWords(int row) const {
    return bits_.data() + static_cast<std::size_t>(row - 1) * words_;
}

std::vector<Cell> BitMatrix01::cells() const {
    std::vector<Cell> out;
    out.reserve(weight_);
    for (int r = 1; r <= rows_; ++r)
        for (int c : rowCols(r))
            out.emplace_back(r, c);
    return out;
}

std::vector<int> BitMatrix01::rowCols(int row) const {
    std::vector<int> out;
    const std::uint64_t* p = rowWords(row);
    for (int i = 0; i < words_; ++i) {
        std::uint64_t w = p[i];
        while (w) {
            const int b = std::countr_zero(w);
            out.push_back(i * 64 + b + 1);
            w &= w - 1;
        }
    }
    return out;
}

bool BitMatrix01::operator==(const BitMatrix01& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && bits_ == other.bits_;
}

TrimmedPattern::TrimmedPattern(BitMatrix01 b) : base(std::move(b)) {
    for (int r = 1; r <= base.rows(); ++r)
        if (base.rowEmpty(r))
            zeroRows.push_back(r);
}

BitMatrix01 reflectY(const BitMatrix01& m) {
    BitMatrix01 out(m.rows(), m.cols());
    for (const auto& [r, c] : m.cells())
        out.set(r, m.cols() + 1 - c);
    return out;
}

BitMatrix01 reflectX(const BitMatrix01& m) {
    BitMatrix01 out(m.rows(), m.cols());
    for (const auto& [r, c] : m.cells())
        out.set(m.rows() + 1 - r, c);
    return out;
}

BitMatrix01 transposed(const BitMatrix01& m) {
    BitMatrix01 out(m.cols(), m.rows());
    for (const auto& [r, c] : m.cells())
        out.set(c, r);
    return out;
}

bool isPermutationMatrix(const BitMatrix01& m) {
    if (m.rows() != m.cols() || m.weight() != m.rows())
        return false;
    std::vector<bool> colSeen(m.cols() + 1, false);
    for (int r = 1; r <= m.rows(); ++r) {
        const auto cs = m.rowCols(r);
        if (cs.size() != 1 || colSeen[cs[0]])
            return false;
        colSeen[cs[0]] = true;
    }
    return true;
}

BitMatrix01 kronHat(const BitMatrix01& perm) {
    if (!isPermutationMatrix(perm))
        throw std::invalid_argument("kronHat requires a permutation matrix");
    const int k = perm.rows();
    BitMatrix01 out(2 * k, 3 * k);
    for (const auto& [r, c] : perm.cells()) {
        out.set(2 * r - 1, 3 * c - 2);
        out.set(2 * r - 1, 3 * c);
        out.set(2 * r, 3 * c - 1);
    }
    return out;
}

BitMatrix01 kronVpair(const BitMatrix01& perm) {
    if (!isPermutationMatrix(perm))
        throw std::invalid_argument("kronVpair requires a permutation matrix");
    const int k = perm.rows();
    BitMatrix01 out(k, 2 * k);
    for (const auto& [r, c] : perm.cells()) {
        out.set(r, 2 * c - 1);
        out.set(r, 2 * c);
    }
    return out;
}

TrimmedPattern trim(const BitMatrix01& q, int a, int b) {
    if (a < 0 || b < 0 || a + b >= q.cols())
        throw std::invalid_argument("trim: must leave at least one column");
    BitMatrix01 out(q.rows(), q.cols() - a - b);
    for (const auto& [r, c] : q.cells())
        if (c > a && c <= q.cols() - b)
            out.set(r, c - a);
    return TrimmedPattern(std::move(out));
}

// ---------------------------------------------------------------------------
// containment

PatternMatcher::PatternMatcher(const BitMatrix01& pattern) : pattern_(pattern) {
    init(pattern, false);
}

PatternMatcher::PatternMatcher(const TrimmedPattern& pattern) : pattern_(pattern.base) {
    init(pattern.base, true);
}

void PatternMatcher::init(const BitMatrix01& pattern, bool zeroRowsNeedNonzero) {
    zeroRowsNeedNonzero_ = zeroRowsNeedNonzero;
    colNeeds_.assign(pattern.cols(), {});
    int zeros = 0;
    for (int r = 1; r <= pattern.rows(); ++r) {
        const auto cs = pattern.rowCols(r);
        if (cs.empty()) {
            ++zeros;
            continue;
        }
        const int idx = static_cast<int>(activeRows_.size());
        activeRows_.push_back(r);
        activeRowWeight_.push_back(static_cast<int>(cs.size()));
        gapBefore_.push_back(zeros);
        zeros = 0;
        for (int c : cs)
            colNeeds_[c - 1].push_back(idx);
    }
    gapAfter_ = zeros;
    isW_ = !zeroRowsNeedNonzero && pattern == patterns::w();
}

bool PatternMatcher::matches(const BitMatrix01& host) const {
    return matchesPrefix(host, host.rows());
}

bool PatternMatcher::matchesPrefix(const BitMatrix01& host, int topRow) const {
    if (topRow < 0 || topRow > host.rows())
        throw std::out_of_range("matchesPrefix: bad row count");
    if (pattern_.rows() > topRow || pattern_.cols() > host.cols())
        return false;
    if (isW_ && topRow == host.rows() && topRow > 64) {
        bool sparse = true;
        for (int r = 1; r <= topRow && sparse; ++r)
            sparse = host.rowWeight(r) <= 16;
        if (sparse)
            return detail::containsWFast(host);
    }
    return search(host, topRow);
}

// Eligible rows for all-zero pattern rows: any host row under the plain
// relation, only nonzero host rows under the trimmed one.
bool PatternMatcher::search(const BitMatrix01& host, int hostRows) const {
    eligiblePrefix_.assign(hostRows + 1, 0);
    for (int r = 1; r <= hostRows; ++r)
        eligiblePrefix_[r] =
            eligiblePrefix_[r - 1] + ((!zeroRowsNeedNonzero_ || !host.rowEmpty(r)) ? 1 : 0);
    const auto eligibleBetween = [&](int lo, int hi) { // open interval (lo, hi)
        if (hi <= lo + 1)
            return 0;
        return eligiblePrefix_[hi - 1] - eligiblePrefix_[lo];
    };

    const int levels = static_cast<int>(activeRows_.size());
    if (levels == 0)
        return eligibleBetween(0, hostRows + 1) >= pattern_.rows() &&
               host.cols() >= pattern_.cols();

    // Minimal number of host rows an active row's suffix still needs above it.
    std::vector<int> minAbove(levels, 0);
    minAbove[levels - 1] = 0;
    for (int i = levels - 2; i >= 0; --i)
        minAbove[i] = minAbove[i + 1] + 1 + gapBefore_[i + 1];

    assigned_.assign(levels, 0);
    // Depth-first assignment of active pattern rows to increasing host rows,
    // pruning on row weight, zero-row feasibility in each gap, and a greedy
    // left-to-right column check over the rows assigned so far.
    auto dfs = [&](auto&& self, int level) -> bool {
        const int prev = level == 0 ? 0 : assigned_[level - 1];
        const int maxRow = hostRows - gapAfter_ - minAbove[level];
        for (int h = prev + 1; h <= maxRow; ++h) {
            if (host.rowWeight(h) < activeRowWeight_[level])
                continue;
            if (eligibleBetween(prev, h) < gapBefore_[level])
                continue;
            assigned_[level] = h;
            if (!columnsFeasible(host, level + 1))
                continue;
            if (level + 1 == levels) {
                if (eligibleBetween(h, hostRows + 1) >= gapAfter_)
                    return true;
            } else if (self(self, level + 1)) {
                return true;
            }
        }
        return false;
    };
    return dfs(dfs, 0);
}

// Greedy column sweep: map pattern columns to increasing host columns, taking
// the earliest host column consistent with the assigned rows. Exact once all
// active rows are assigned; a sound relaxation on prefixes.
bool PatternMatcher::columnsFeasible(const BitMatrix01& host, int assignedCount) const {
    const int words = host.wordsPerRow();
    int cursor = 0; // last consumed host column
    for (const auto& needs : colNeeds_) {
        int nAssigned = 0;
        for (int idx : needs)
            if (idx < assignedCount)
                ++nAssigned;
        if (nAssigned == 0) {
            if (++cursor > host.cols())
                return false;
            continue;
        }
        // earliest host column > cursor where every required row has a 1
        int found = -1;
        for (int wi = cursor / 64; wi < words && found < 0; ++wi) {
            std::uint64_t w = ~std::uint64_t{0};
            for (int idx : needs)
                if (idx < assignedCount)
                    w &= host.rowWords(assigned_[idx])[wi];
            if (wi == cursor / 64 && cursor % 64)
                w &= ~std::uint64_t{0} << (cursor % 64); // keep columns > cursor
            if (w)
                found = wi * 64 + std::countr_zero(w) + 1;
        }
        if (found < 0)
            return false;
        cursor = found;
    }
    return true;
}

bool contains(const BitMatrix01& pattern, const BitMatrix01& host) {
    return PatternMatcher(pattern).matches(host);
}

bool containsTrimmed(const TrimmedPattern& q, const BitMatrix01& host) {
    return PatternMatcher(q).matches(host);
}

namespace detail {

// For each host row and each pair of its ones (c2 < c4), greedily take the
// lowest row above with a 1 strictly between them, then the lowest row above
// that with a 1 right of c4, then any higher row with a 1 left of c2. The
// greedy choices are minimal, so failure here means no embedding exists.
bool containsWFast(const BitMatrix01& host) {
    const int n = host.rows();
    const int m = host.cols();
    if (n < 4 || m < 5)
        return false;

    // per-column value = row index, tree indexed by column
    std::vector<std::vector<int>> colRows(m + 1);
    for (const auto& [r, c] : host.cells())
        colRows[c].push_back(r);

    // tree keyed by column, each node holding the sorted rows of its range
    struct ColTree {
        std::size_t size;
        std::vector<std::vector<int>> nodes;
        explicit ColTree(const std::vector<std::vector<int>>& byCol) {
            const std::size_t m = byCol.size() - 1;
            size = 1;
            while (size < std::max<std::size_t>(m, 1))
                size <<= 1;
            nodes.assign(2 * size, {});
            for (std::size_t c = 1; c <= m; ++c)
                nodes[size + c - 1] = byCol[c]; // already row-sorted
            for (std::size_t i = size; i-- > 1;) {
                const auto& a = nodes[2 * i];
                const auto& b = nodes[2 * i + 1];
                nodes[i].resize(a.size() + b.size());
                std::merge(a.begin(), a.end(), b.begin(), b.end(), nodes[i].begin());
            }
        }
        int minRowAbove(int colLo, int colHi, int row) const {
            if (colLo > colHi)
                return -1;
            int best = -1;
            std::size_t l = static_cast<std::size_t>(colLo - 1) + size;
            std::size_t r = static_cast<std::size_t>(colHi) + size;
            while (l < r) {
                auto probe = [&](const std::vector<int>& v) {
                    auto it = std::upper_bound(v.begin(), v.end(), row);
                    if (it != v.end() && (best < 0 || *it < best))
                        best = *it;
                };
                if (l & 1)
                    probe(nodes[l++]);
                if (r & 1)
                    probe(nodes[--r]);
                l >>= 1;
                r >>= 1;
            }
            return best;
        }
    } tree(colRows);

    for (int r1 = 1; r1 <= n - 3; ++r1) {
        const auto cs = host.rowCols(r1);
        for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                const int c2 = cs[i], c4 = cs[j];
                if (c2 < 2 || c4 > m - 1 || c4 - c2 < 2)
                    continue;
                const int r2 = tree.minRowAbove(c2 + 1, c4 - 1, r1);
                if (r2 < 0)
                    continue;
                const int r3 = tree.minRowAbove(c4 + 1, m, r2);
                if (r3 < 0)
                    continue;
                if (tree.minRowAbove(1, c2 - 1, r3) > 0)
                    return true;
            }
        }
    }
    return false;
}

} // namespace detail

namespace patterns {

namespace {
BitMatrix01 make(int rows, int cols, std::vector<Cell> cs) {
    return BitMatrix01::fromCells(rows, cols, cs);
}
} // namespace

const BitMatrix01& hat() {
    static const BitMatrix01 m = make(2, 3, {{1, 1}, {1, 3}, {2, 2}});
    return m;
}

const BitMatrix01& hat4L() {
    static const BitMatrix01 m = make(3, 4, {{1, 2}, {1, 4}, {2, 3}, {3, 1}});
    return m;
}

const BitMatrix01& hat4R() {
    static const BitMatrix01 m = make(3, 4, {{1, 1}, {1, 3}, {2, 2}, {3, 4}});
    return m;
}

const BitMatrix01& w() {
    static const BitMatrix01 m = make(4, 5, {{1, 2}, {1, 4}, {2, 3}, {3, 5}, {4, 1}});
    return m;
}

const BitMatrix01& wPrime() {
    static const BitMatrix01 m = reflectY(w());
    return m;
}

const BitMatrix01& wDoublePrime() {
    static const BitMatrix01 m = make(3, 5, {{1, 2}, {1, 4}, {2, 3}, {3, 1}, {3, 5}});
    return m;
}

const BitMatrix01& vpair() {
    static const BitMatrix01 m = make(1, 2, {{1, 1}, {1, 2}});
    return m;
}

const BitMatrix01* byName(const std::string& name) {
    if (name == "hat")
        return &hat();
    if (name == "hat4l")
        return &hat4L();
    if (name == "hat4r")
        return &hat4R();
    if (name == "w")
        return &w();
    if (name == "wprime")
        return &wPrime();
    if (name == "wdoubleprime")
        return &wDoublePrime();
    if (name == "vpair")
        return &vpair();
    return nullptr;
}

} // namespace patterns

std::string toM01(const BitMatrix01& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << '\n';
    for (const auto& [r, c] : m.cells())
        out << r << ' ' << c << '\n';
    return out.str();
}

BitMatrix01 parseM01(std::istream& in) {
    int rows = 0, cols = 0;
    if (!(in >> rows >> cols))
        throw std::invalid_argument("m01: missing dimension line");
    BitMatrix01 m(rows, cols);
    int r = 0, c = 0;
    while (in >> r >> c) {
        if (r < 1 || r > rows || c < 1 || c > cols)
            throw std::invalid_argument("m01: cell (" + std::to_string(r) + "," +
                                        std::to_string(c) + ") out of range");
        if (m.get(r, c))
            throw std::invalid_argument("m01: duplicate cell (" + std::to_string(r) + "," +
                                        std::to_string(c) + ")");
        m.set(r, c);
    }
    if (!in.eof()) {
        in.clear();
        std::string tok;
        in >> tok;
        throw std::invalid_argument("m01: unexpected token '" + tok + "'");
    }
    return m;
}

BitMatrix01 loadM01(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    return parseM01(in);
}

void saveM01(const BitMatrix01& m, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot open " + path + " for writing");
    out << toM01(m);
}

} // namespace patmat
