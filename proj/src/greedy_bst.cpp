#include "patmat/greedy_bst.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace patmat {

TouchMatrix greedyTouchMatrix(const Permutation& s) {
    const int n = s.size();
    TouchMatrix out{BitMatrix01(n, n), {}, 0};
    out.perStep.reserve(n);

    std::vector<int> lastTouch(n + 1, 0); // 0 = never
    std::vector<bool> inserted(n + 1, false);
    std::vector<int> touched;
    touched.reserve(n);

    for (int i = 1; i <= n; ++i) {
        const int r = s.value(i);
        touched.clear();
        touched.push_back(r);
        // strict staircase of last-touch times, scanning outward from r
        int best = 0;
        for (int x = r - 1; x >= 1; --x) {
            if (!inserted[x])
                continue;
            if (lastTouch[x] > best)
                touched.push_back(x);
            best = std::max(best, lastTouch[x]);
        }
        best = 0;
        for (int x = r + 1; x <= n; ++x) {
            if (!inserted[x])
                continue;
            if (lastTouch[x] > best)
                touched.push_back(x);
            best = std::max(best, lastTouch[x]);
        }
        for (int x : touched) {
            lastTouch[x] = i;
            out.touched.set(i, x);
        }
        inserted[r] = true;
        out.perStep.push_back(static_cast<int>(touched.size()));
        out.total += static_cast<long long>(touched.size());
    }
    return out;
}

bool isArborallySatisfied(const BitMatrix01& points) {
    const auto cs = points.cells();
    const int n = points.rows(), m = points.cols();
    // 2D prefix counts for O(1) closed-rectangle queries
    std::vector<int> pre(static_cast<std::size_t>(n + 1) * (m + 1), 0);
    auto at = [&](int r, int c) -> int& { return pre[static_cast<std::size_t>(r) * (m + 1) + c]; };
    for (const auto& [r, c] : cs)
        at(r, c) += 1;
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= m; ++c)
            at(r, c) += at(r - 1, c) + at(r, c - 1) - at(r - 1, c - 1);
    auto rectCount = [&](int r1, int r2, int c1, int c2) {
        return at(r2, c2) - at(r1 - 1, c2) - at(r2, c1 - 1) + at(r1 - 1, c1 - 1);
    };

    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            const auto [r1, c1] = cs[i];
            const auto [r2, c2] = cs[j];
            if (r1 == r2 || c1 == c2)
                continue;
            if (rectCount(std::min(r1, r2), std::max(r1, r2), std::min(c1, c2),
                          std::max(c1, c2)) < 3)
                return false;
        }
    }
    return true;
}

HatBoxReport hatBoundingBoxCheck(const Permutation& s, unsigned long long exhaustLimit,
                                 unsigned long long samples, std::uint64_t seed) {
    const TouchMatrix tm = greedyTouchMatrix(s);
    const BitMatrix01& a = tm.touched;
    const int n = a.rows();

    // prefix counts over the input points (i, s(i))
    std::vector<int> pre(static_cast<std::size_t>(n + 1) * (n + 1), 0);
    auto at = [&](int r, int c) -> int& { return pre[static_cast<std::size_t>(r) * (n + 1) + c]; };
    for (int i = 1; i <= n; ++i)
        at(i, s.value(i)) += 1;
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c)
            at(r, c) += at(r - 1, c) + at(r, c - 1) - at(r - 1, c - 1);
    auto boxHasInput = [&](int r1, int r2, int c1, int c2) {
        return at(r2, c2) - at(r1 - 1, c2) - at(r2, c1 - 1) + at(r1 - 1, c1 - 1) > 0;
    };

    std::vector<std::vector<int>> rowOnes(n + 1);
    for (int r = 1; r <= n; ++r)
        rowOnes[r] = a.rowCols(r);

    HatBoxReport rep;
    // Hat occurrences: bottom row rb with ones at x < z, top row rt > rb with
    // a 1 at y strictly between. Count them first.
    for (int rb = 1; rb <= n; ++rb) {
        const auto& bot = rowOnes[rb];
        if (bot.size() < 2)
            continue;
        for (int rt = rb + 1; rt <= n; ++rt) {
            for (int y : rowOnes[rt]) {
                const auto leftEnd =
                    std::lower_bound(bot.begin(), bot.end(), y) - bot.begin();
                const auto rightStart =
                    std::upper_bound(bot.begin(), bot.end(), y) - bot.begin();
                rep.candidates += static_cast<unsigned long long>(leftEnd) *
                                  static_cast<unsigned long long>(bot.size() - rightStart);
            }
        }
    }

    auto checkOne = [&](int rb, int rt, int x, int y, int z) {
        ++rep.checked;
        if (!boxHasInput(rb, rt, x, z))
            rep.violations.push_back({rb, rt, x, y, z});
    };

    if (rep.candidates <= exhaustLimit) {
        rep.exhaustive = true;
        for (int rb = 1; rb <= n; ++rb) {
            const auto& bot = rowOnes[rb];
            if (bot.size() < 2)
                continue;
            for (int rt = rb + 1; rt <= n; ++rt) {
                for (int y : rowOnes[rt]) {
                    for (int x : bot) {
                        if (x >= y)
                            break;
                        for (auto it = bot.rbegin(); it != bot.rend() && *it > y; ++it)
                            checkOne(rb, rt, x, y, *it);
                    }
                }
            }
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pickRow(1, n);
        unsigned long long done = 0;
        unsigned long long attempts = 0;
        while (done < samples && attempts++ < samples * 200) {
            const int rb = pickRow(rng);
            const int rt = pickRow(rng);
            if (rb >= rt || rowOnes[rb].size() < 2 || rowOnes[rt].empty())
                continue;
            const auto& bot = rowOnes[rb];
            const auto& top = rowOnes[rt];
            const int y = top[rng() % top.size()];
            const int x = bot[rng() % bot.size()];
            const int z = bot[rng() % bot.size()];
            if (!(x < y && y < z))
                continue;
            checkOne(rb, rt, x, y, z);
            ++done;
        }
    }
    return rep;
}

} // namespace patmat
