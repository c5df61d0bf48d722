#include "patmat/extremal.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <string>
#include <unordered_map>
#include <random>
#include <stdexcept>

namespace patmat {

namespace {

// Exact search engine. Hosts are built row by row (bottom to top). For a
// fixed selection sigma of host columns, matching the pattern against the
// prefix is a plain subsequence problem over required row masks, so greedy
// row-by-row advancement computes the exact match progress. The tuple of
// progress values over every sigma is a complete summary of the prefix:
// two prefixes with equal tuples admit exactly the same safe completions.
// That makes the search a memoised DP on (rows left, progress tuple).
struct Search {
    int n, m;
    int patRows;
    std::vector<std::uint32_t> masks; // decreasing weight, then decreasing value
    std::vector<std::uint32_t> req;   // [sigma * patRows + q] required bits
    std::vector<bool> needNonzero;    // per pattern row (trimmed all-zero rows)
    int sigmaCount = 0;
    std::unordered_map<std::string, long long> memo;
    bool timedOut = false;
    std::chrono::steady_clock::time_point deadline;
    bool hasDeadline = false;
    unsigned long long ticks = 0;
    // incumbent, for timed-out runs
    long long bestSeen = -1;
    std::vector<std::uint32_t> pathMasks, bestMasks;

    Search(const BitMatrix01& p, bool trimmedRows, int n_, int m_, double timeLimitSec)
        : n(n_), m(m_), patRows(p.rows()) {
        masks.resize(std::size_t{1} << m);
        for (std::uint32_t v = 0; v < masks.size(); ++v)
            masks[v] = v;
        std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
            const int pa = std::popcount(a), pb = std::popcount(b);
            return pa != pb ? pa > pb : a > b;
        });
        needNonzero.resize(patRows + 1, false);
        if (trimmedRows)
            for (int r = 1; r <= patRows; ++r)
                needNonzero[r] = p.rowWeight(r) == 0;

        // enumerate increasing column selections
        const int pc = p.cols();
        std::vector<int> sel(pc);
        std::vector<std::vector<int>> sigmas;
        auto rec = [&](auto&& self, int idx, int start) -> void {
            if (idx == pc) {
                sigmas.push_back(sel);
                return;
            }
            for (int c = start; c <= m - (pc - idx) + 1; ++c) {
                sel[idx] = c;
                self(self, idx + 1, c + 1);
            }
        };
        rec(rec, 0, 1);
        sigmaCount = static_cast<int>(sigmas.size());
        if (sigmaCount > 200000)
            throw std::invalid_argument("exExact: pattern/host shape too wide for search");
        req.assign(static_cast<std::size_t>(sigmaCount) * patRows, 0);
        for (int s = 0; s < sigmaCount; ++s)
            for (int r = 1; r <= patRows; ++r) {
                std::uint32_t bits = 0;
                for (int c : p.rowCols(r))
                    bits |= std::uint32_t{1} << (sigmas[s][c - 1] - 1);
                req[static_cast<std::size_t>(s) * patRows + (r - 1)] = bits;
            }
        if (timeLimitSec > 0) {
            hasDeadline = true;
            deadline = std::chrono::steady_clock::now() +
                       std::chrono::microseconds(static_cast<long long>(timeLimitSec * 1e6));
        }
        pathMasks.reserve(n);
    }

    // next progress tuple, or false when some sigma completes the pattern
    bool advance(const std::string& q, std::uint32_t mask, std::string& out) const {
        out.resize(q.size());
        const bool nonzero = mask != 0;
        for (int s = 0; s < sigmaCount; ++s) {
            int v = q[s];
            if (v < patRows) {
                const std::uint32_t need = req[static_cast<std::size_t>(s) * patRows + v];
                const bool ok =
                    (mask & need) == need && (!needNonzero[v + 1] || nonzero);
                if (ok)
                    ++v;
            }
            if (v == patRows)
                return false;
            out[s] = static_cast<char>(v);
        }
        return true;
    }

    long long dfs(int rowsLeft, const std::string& q, long long cur) {
        if (rowsLeft == 0) {
            if (cur > bestSeen) {
                bestSeen = cur;
                bestMasks = pathMasks;
            }
            return 0;
        }
        if ((++ticks & 255u) == 0 && hasDeadline &&
            std::chrono::steady_clock::now() > deadline)
            timedOut = true;
        std::string key;
        key.reserve(q.size() + 1);
        key.push_back(static_cast<char>(rowsLeft));
        key += q;
        if (const auto it = memo.find(key); it != memo.end())
            return it->second;
        long long best = -1;
        std::string next;
        for (const std::uint32_t mask : masks) {
            const long long w = std::popcount(mask);
            if (w + static_cast<long long>(rowsLeft - 1) * m <= best)
                break; // masks sorted by weight, nothing below can win
            if (!advance(q, mask, next))
                continue;
            if (timedOut)
                return best < 0 ? 0 : best;
            pathMasks.push_back(mask);
            const long long sub = dfs(rowsLeft - 1, next, cur + w);
            pathMasks.pop_back();
            if (w + sub > best)
                best = w + sub;
        }
        if (best < 0)
            best = 0; // the all-zero row always avoids a nonempty pattern
        if (!timedOut)
            memo.emplace(std::move(key), best);
        return best;
    }

    // replay the DP choices to materialise the first optimum in mask order
    BitMatrix01 reconstruct(long long total) {
        BitMatrix01 host(n, m);
        std::string q(sigmaCount, '\0'), next;
        long long remaining = total;
        for (int r = 1; r <= n; ++r) {
            const int rowsLeft = n - r;
            for (const std::uint32_t mask : masks) {
                const long long w = std::popcount(mask);
                if (w > remaining)
                    continue;
                if (!advance(q, mask, next))
                    continue;
                long long sub = 0;
                if (rowsLeft > 0) {
                    std::string key;
                    key.push_back(static_cast<char>(rowsLeft));
                    key += next;
                    const auto it = memo.find(key);
                    sub = it != memo.end() ? it->second : dfs(rowsLeft, next, 0);
                }
                if (w + sub == remaining) {
                    for (int b = 0; b < m; ++b)
                        if (mask >> b & 1)
                            host.set(r, b + 1);
                    remaining -= w;
                    q = next;
                    break;
                }
            }
        }
        return host;
    }
};

ExResult runExact(const BitMatrix01& p, bool trimmedRows, int n, int m,
                  const ExOptions& opts) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("exExact requires n, m >= 1");
    if (p.weight() < 1)
        throw std::invalid_argument("exExact: pattern must contain at least one 1");
    if (!opts.force && (n > 8 || m > 8))
        throw std::invalid_argument("exExact: n, m > 8 needs the force option");
    if (m > 20)
        throw std::invalid_argument("exExact: m too large for exact search");

    ExResult res;
    res.n = n;
    res.m = m;
    if (p.rows() > n || p.cols() > m) { // pattern cannot fit, all-ones is free
        BitMatrix01 full(n, m);
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c <= m; ++c)
                full.set(r, c);
        res.value = static_cast<long long>(n) * m;
        res.witness = std::move(full);
        res.exact = true;
        return res;
    }

    Search s(p, trimmedRows, n, m, opts.timeLimitSec);
    const long long value = s.dfs(n, std::string(s.sigmaCount, '\0'), 0);
    if (s.timedOut) {
        res.value = std::max(s.bestSeen, 0LL);
        res.witness = BitMatrix01(n, m);
        for (std::size_t r = 0; r < s.bestMasks.size(); ++r)
            for (int b = 0; b < m; ++b)
                if (s.bestMasks[r] >> b & 1)
                    res.witness.set(static_cast<int>(r) + 1, b + 1);
        res.exact = false;
        return res;
    }
    res.value = value;
    res.witness = s.reconstruct(value);
    res.exact = true;
    return res;
}

template <typename Pattern>
ExResult runGreedy(const Pattern& p, int n, int m, std::uint64_t seed, int restarts) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("exLowerGreedy requires n, m >= 1");
    const PatternMatcher matcher(p);
    ExResult best;
    best.n = n;
    best.m = m;
    best.value = -1;
    for (int attempt = 0; attempt < std::max(restarts, 1); ++attempt) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b97f4a7c15ULL);
        std::vector<std::pair<int, int>> cells;
        cells.reserve(static_cast<std::size_t>(n) * m);
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c <= m; ++c)
                cells.emplace_back(r, c);
        std::shuffle(cells.begin(), cells.end(), rng);
        BitMatrix01 host(n, m);
        long long weight = 0;
        // once a cell is rejected it stays inadmissible, so one pass saturates
        for (const auto& [r, c] : cells) {
            host.set(r, c);
            if (matcher.matches(host))
                host.set(r, c, false);
            else
                ++weight;
        }
        if (weight > best.value) {
            best.value = weight;
            best.witness = std::move(host);
        }
    }
    best.exact = false;
    return best;
}

} // namespace

ExResult exExact(const BitMatrix01& p, int n, int m, const ExOptions& opts) {
    return runExact(p, false, n, m, opts);
}

ExResult exExact(const TrimmedPattern& p, int n, int m, const ExOptions& opts) {
    return runExact(p.base, true, n, m, opts);
}

ExResult exLowerGreedy(const BitMatrix01& p, int n, int m, std::uint64_t seed, int restarts) {
    return runGreedy(p, n, m, seed, restarts);
}

ExResult exLowerGreedy(const TrimmedPattern& p, int n, int m, std::uint64_t seed, int restarts) {
    return runGreedy(p, n, m, seed, restarts);
}

DecompositionReport decompose(const BitMatrix01& a, const TrimmedPattern& qab, int B, int G) {
    if (B < 1 || G < 1)
        throw std::invalid_argument("decompose requires B, G >= 1");
    const int n = a.rows(), m = a.cols();
    const int numSlabs = (m + B - 1) / B;
    const auto slabOf = [B](int c) { return (c - 1) / B; }; // 0-based

    DecompositionReport rep;
    rep.B = B;
    rep.G = G;
    rep.inputPatternFree = !containsTrimmed(qab, a);
    rep.slabLocalRows.assign(numSlabs, 0);

    // local rows touch one slab; global rows several; empty rows neither
    std::vector<int> globalIndex(n + 1, 0); // 1-based compact index
    std::vector<int> minSlab(n + 1, -1), maxSlab(n + 1, -1);
    for (int r = 1; r <= n; ++r) {
        const auto cs = a.rowCols(r);
        if (cs.empty()) {
            ++rep.emptyRows;
            continue;
        }
        const int lo = slabOf(cs.front());
        const int hi = slabOf(cs.back());
        minSlab[r] = lo;
        maxSlab[r] = hi;
        if (lo == hi) {
            ++rep.slabLocalRows[lo];
            rep.local += static_cast<long long>(cs.size());
        } else {
            globalIndex[r] = static_cast<int>(++rep.globalRows);
        }
    }

    const int blockRows =
        rep.globalRows > 0 ? static_cast<int>((rep.globalRows + G - 1) / G) : 1;
    rep.heavyContracted = BitMatrix01(blockRows, numSlabs);
    rep.lightMidContracted = BitMatrix01(blockRows, numSlabs);

    // middle 1s of global rows, grouped into the block grid
    struct BlockCells {
        std::vector<std::pair<int, int>> cells; // (global row index, col)
    };
    std::map<std::pair<int, int>, BlockCells> blocks; // (blockRow 1-based, slab)
    for (int r = 1; r <= n; ++r) {
        if (!globalIndex[r])
            continue;
        for (int c : a.rowCols(r)) {
            const int s = slabOf(c);
            if (s == minSlab[r])
                ++rep.first;
            else if (s == maxSlab[r])
                ++rep.last;
            else {
                const int gr = globalIndex[r];
                blocks[{(gr - 1) / G + 1, s}].cells.emplace_back(gr, c);
            }
        }
    }

    // heavy = some row of the block has 1s on both sides of a higher 1
    std::vector<std::vector<std::pair<int, int>>> lightMidBySlab(numSlabs); // (blockRow, col)
    for (auto& [key, blk] : blocks) {
        auto& cells = blk.cells;
        std::sort(cells.begin(), cells.end());
        bool heavy = false;
        for (std::size_t i = 0; i < cells.size() && !heavy; ++i) {
            // span of row cells[i].first within this block
            const int row = cells[i].first;
            int lo = cells[i].second, hi = cells[i].second;
            std::size_t j = i;
            while (j + 1 < cells.size() && cells[j + 1].first == row)
                hi = cells[++j].second;
            if (hi > lo)
                for (std::size_t u = j + 1; u < cells.size() && !heavy; ++u)
                    heavy = cells[u].second > lo && cells[u].second < hi;
            i = j;
        }
        if (heavy) {
            rep.heavyContracted.set(key.first, key.second + 1);
            rep.heavyMiddle += static_cast<long long>(cells.size());
            continue;
        }
        for (std::size_t i = 0; i < cells.size();) {
            std::size_t j = i;
            while (j + 1 < cells.size() && cells[j + 1].first == cells[i].first)
                ++j;
            ++rep.lightFirst; // a single 1 counts as first only
            if (j > i)
                ++rep.lightLast;
            for (std::size_t u = i + 1; u < j; ++u) {
                ++rep.lightMiddle;
                lightMidBySlab[key.second].emplace_back(key.first, cells[u].second);
            }
            i = j + 1;
        }
    }

    // chunk scan: walk block rows, splitting whenever a column would collect
    // a second light-middle 1 since the last split
    rep.chunks.assign(numSlabs, {});
    for (int s = 0; s < numSlabs; ++s) {
        auto& cellsBySlab = lightMidBySlab[s];
        if (cellsBySlab.empty())
            continue;
        std::sort(cellsBySlab.begin(), cellsBySlab.end());
        std::map<int, int> colCount;
        int chunkStart = cellsBySlab.front().first;
        rep.lightMidContracted.set(chunkStart, s + 1);
        std::size_t i = 0;
        while (i < cellsBySlab.size()) {
            const int br = cellsBySlab[i].first;
            std::size_t j = i;
            while (j < cellsBySlab.size() && cellsBySlab[j].first == br)
                ++j;
            bool split = false;
            for (std::size_t u = i; u < j && !split; ++u)
                split = colCount.count(cellsBySlab[u].second) > 0;
            if (split && br != chunkStart) {
                rep.chunks[s].emplace_back(chunkStart, br - 1);
                rep.lightMidContracted.set(br, s + 1);
                colCount.clear();
                chunkStart = br;
            }
            for (std::size_t u = i; u < j; ++u) {
                if (++colCount[cellsBySlab[u].second] > 1)
                    throw std::logic_error(
                        "decompose: light block holds two light-middle 1s in a column");
                }
            i = j;
        }
        rep.chunks[s].emplace_back(chunkStart, blockRows);
    }
    return rep;
}

} // namespace patmat
