#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "patmat/extremal.hpp"

using namespace patmat;

namespace {

BitMatrix01 i2() { return BitMatrix01::fromCells(2, 2, {{1, 1}, {2, 2}}); }
BitMatrix01 i3() { return BitMatrix01::fromCells(3, 3, {{1, 1}, {2, 2}, {3, 3}}); }
BitMatrix01 allOnes22() {
    return BitMatrix01::fromCells(2, 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}});
}

BitMatrix01 randomMatrix(int n, int m, double density, std::mt19937_64& rng) {
    BitMatrix01 out(n, m);
    std::bernoulli_distribution coin(density);
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= m; ++c)
            if (coin(rng))
                out.set(r, c);
    return out;
}

} // namespace

TEST_CASE("exact search matches full host enumeration") {
    const std::vector<BitMatrix01> pats = {patterns::hat(), i2(), i3(), allOnes22(),
                                           patterns::hat4L()};
    for (const auto& p : pats)
        for (int n = 1; n <= 4; ++n)
            for (int m = 1; m <= 4; ++m) {
                const ExResult res = exExact(p, n, m);
                CHECK(res.exact);
                CHECK(res.value == oracle::exBrute(p, n, m));
                CHECK(res.witness.weight() == res.value);
                CHECK_FALSE(contains(p, res.witness));
            }
}

TEST_CASE("classic exact values") {
    for (int n = 2; n <= 6; ++n)
        CHECK(exExact(i2(), n, n).value == 2 * n - 1);
    for (int n = 1; n <= 5; ++n)
        for (int m = 2; m <= 5; ++m)
            CHECK(exExact(patterns::vpair(), n, m).value == n);
    // pattern larger than the host: everything fits
    CHECK(exExact(patterns::w(), 3, 3).value == 9);
}

TEST_CASE("guards") {
    CHECK_THROWS(exExact(i2(), 9, 4));
    CHECK_THROWS(exExact(i2(), 4, 9));
    CHECK_THROWS(exExact(BitMatrix01(2, 2), 3, 3)); // empty pattern
    ExOptions force;
    force.force = true;
    CHECK(exExact(i2(), 9, 4, force).value == 9 + 4 - 1);
}

TEST_CASE("time limit reports inexact") {
    ExOptions o;
    o.force = true;
    o.timeLimitSec = 0.01;
    const ExResult res = exExact(patterns::hat(), 12, 12, o);
    if (!res.exact)
        CHECK(res.value >= 0);
}

TEST_CASE("greedy lower bound never beats exact") {
    std::mt19937_64 rng(3);
    const std::vector<BitMatrix01> pats = {patterns::hat(), i2(), allOnes22()};
    for (const auto& p : pats)
        for (int n = 2; n <= 4; ++n) {
            const ExResult g = exLowerGreedy(p, n, n, rng());
            const ExResult e = exExact(p, n, n);
            CHECK_FALSE(contains(p, g.witness));
            CHECK(g.value <= e.value);
            CHECK(g.value >= 1);
        }
}

TEST_CASE("trimmed exact search against trimmed enumeration") {
    const TrimmedPattern q = trim(kronHat(i2()), 2, 2);
    for (int n = 2; n <= 5; ++n)
        for (int m = 1; m <= 4; ++m) {
            const ExResult res = exExact(q, n, m);
            long long best = 0;
            for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * m)); ++code) {
                BitMatrix01 h(n, m);
                int w = 0;
                for (int b = 0; b < n * m; ++b)
                    if (code >> b & 1) {
                        h.set(b / m + 1, b % m + 1);
                        ++w;
                    }
                if (w > best && !oracle::containsTrimmedBrute(q, h))
                    best = w;
            }
            CHECK(res.value == best);
            CHECK_FALSE(containsTrimmed(q, res.witness));
        }
}

TEST_CASE("decomposition partitions the ones") {
    std::mt19937_64 rng(2024);
    const TrimmedPattern q = trim(kronHat(i2()), 2, 2);
    for (int it = 0; it < 120; ++it) {
        const int n = 2 + static_cast<int>(rng() % 40);
        const int m = 2 + static_cast<int>(rng() % 40);
        const BitMatrix01 a = randomMatrix(n, m, 0.02 + 0.3 * (it % 7) / 6.0, rng);
        const int B = 1 + static_cast<int>(rng() % m);
        const int G = 1 + static_cast<int>(rng() % 8);
        const DecompositionReport rep = decompose(a, q, B, G);
        CHECK(rep.local + rep.first + rep.last + rep.heavyMiddle + rep.lightFirst +
                  rep.lightMiddle + rep.lightLast ==
              a.weight());
        long long localRows = 0;
        for (long long v : rep.slabLocalRows)
            localRows += v;
        CHECK(localRows + rep.globalRows + rep.emptyRows == n);
        for (const auto& perSlab : rep.chunks)
            for (std::size_t i = 1; i < perSlab.size(); ++i)
                CHECK(perSlab[i].first == perSlab[i - 1].second + 1);
    }
}

TEST_CASE("decomposition hand example") {
    // two global rows crossing three 2-wide slabs, one heavy block
    BitMatrix01 a = BitMatrix01::fromCells(
        4, 6, {{1, 1}, {1, 3}, {1, 6}, {2, 4}, {3, 1}, {3, 4}, {3, 6}, {4, 2}});
    // row 2 and row 4 are local, rows 1 and 3 global; middle slab holds their
    // middle 1s: (1,3) spans cols {3} of slab 2, (3,4) col 4 of slab 2
    const DecompositionReport rep = decompose(a, trim(kronHat(i2()), 2, 2), 2, 2);
    CHECK(rep.globalRows == 2);
    CHECK(rep.local == 2);
    CHECK(rep.first == 2);
    CHECK(rep.last == 2);
    CHECK(rep.lightFirst == 2); // one middle 1 per row, both light-first
    CHECK(rep.lightMiddle == 0);
    CHECK(rep.heavyMiddle == 0);
}
