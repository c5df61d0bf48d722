#include "patmat/blocked_seq.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace patmat {

long long BlockedSequence::length() const {
    long long n = 0;
    for (const auto& b : blocks)
        n += static_cast<long long>(b.syms.size());
    return n;
}

int BlockedSequence::liveCount() const {
    int n = 0;
    for (const auto& b : blocks)
        n += b.live ? 1 : 0;
    return n;
}

int BlockedSequence::deadCount() const {
    return static_cast<int>(blocks.size()) - liveCount();
}

std::vector<int> BlockedSequence::flatten() const {
    std::vector<int> out;
    out.reserve(length());
    for (const auto& b : blocks)
        out.insert(out.end(), b.syms.begin(), b.syms.end());
    return out;
}

BlockedSequence canonicalForm(const BlockedSequence& u) {
    std::vector<int> rename(u.alphabetSize + 1, 0);
    int next = 0;
    BlockedSequence out;
    out.blocks.reserve(u.blocks.size());
    for (const auto& b : u.blocks) {
        Block nb{b.live, {}};
        nb.syms.reserve(b.syms.size());
        for (int s : b.syms) {
            if (s < 1 || s > u.alphabetSize)
                throw std::invalid_argument("symbol outside declared alphabet");
            if (!rename[s])
                rename[s] = ++next;
            nb.syms.push_back(rename[s]);
        }
        out.blocks.push_back(std::move(nb));
    }
    out.alphabetSize = next;
    return out;
}

BlockedSequence uGadget(int j) {
    if (j < 1)
        throw std::invalid_argument("uGadget requires j >= 1");
    BlockedSequence u;
    u.alphabetSize = j;
    Block desc{true, {}}, asc{true, {}};
    for (int s = j; s >= 1; --s)
        desc.syms.push_back(s);
    for (int s = 1; s <= j; ++s)
        asc.syms.push_back(s);
    u.blocks = {std::move(desc), std::move(asc)};
    return u;
}

BlockedSequence uBase1(int j) {
    if (j < 1)
        throw std::invalid_argument("uBase1 requires j >= 1");
    BlockedSequence u;
    u.alphabetSize = j;
    Block dead{false, {}}, live{true, {}};
    for (int s = 1; s <= j; ++s) {
        dead.syms.push_back(s);
        live.syms.push_back(s);
    }
    u.blocks = {std::move(dead), std::move(live)};
    return u;
}

BlockedSequence uBase0(int i) {
    if (i < 2)
        throw std::invalid_argument("uBase0 requires i >= 2");
    BlockedSequence u;
    u.alphabetSize = 0;
    u.blocks = {Block{true, {}}, Block{true, {}}};
    return u;
}

BlockedSequence compose(const BlockedSequence& top, const BlockedSequence& mid) {
    for (const auto& b : mid.blocks)
        if (!b.live)
            throw std::invalid_argument("compose: mid must contain only live blocks");
    BlockedSequence out;
    out.alphabetSize = top.alphabetSize;
    for (const auto& b : top.blocks) {
        if (!b.live) {
            out.blocks.push_back(b);
            continue;
        }
        if (static_cast<int>(b.syms.size()) != mid.alphabetSize)
            throw std::invalid_argument("compose: live block length differs from mid alphabet");
        for (const auto& mb : mid.blocks) {
            Block nb{true, {}};
            nb.syms.reserve(mb.syms.size());
            for (int p : mb.syms)
                nb.syms.push_back(b.syms[static_cast<std::size_t>(p) - 1]);
            out.blocks.push_back(std::move(nb));
        }
    }
    return out;
}

BlockedSequence leftShuffle(const BlockedSequence& sub, const BlockedSequence& bot) {
    const int liveB = bot.liveCount();
    BlockedSequence out;
    int copies = 0;
    for (const auto& b : sub.blocks)
        copies += b.live ? 1 : 0;
    out.alphabetSize = sub.alphabetSize + copies * bot.alphabetSize;

    int copyIdx = 0;
    for (const auto& b : sub.blocks) {
        if (!b.live) {
            out.blocks.push_back(b); // dead runs of sub stay in place
            continue;
        }
        if (static_cast<int>(b.syms.size()) != liveB)
            throw std::invalid_argument(
                "leftShuffle: live block length differs from bot live count");
        const int offset = sub.alphabetSize + copyIdx * bot.alphabetSize;
        ++copyIdx;
        int liveSeen = 0;
        for (const auto& bb : bot.blocks) {
            Block nb{bb.live, {}};
            nb.syms.reserve(bb.syms.size() + 1);
            if (bb.live)
                nb.syms.push_back(b.syms[liveSeen++]); // a_l at the left end
            for (int s : bb.syms)
                nb.syms.push_back(s + offset);
            out.blocks.push_back(std::move(nb));
        }
    }
    return out;
}

namespace {

// Values double at least once per column step, so anything past 512 steps or
// 2^512 in magnitude is treated as overflow; budgets are far smaller.
const BigInt kSatCap = BigInt(1) << 512;

SatValue satMul(const SatValue& a, const SatValue& b) {
    if (a.overflow || b.overflow)
        return {true, 0};
    BigInt v = a.value * b.value;
    if (v >= kSatCap)
        return {true, 0};
    return {false, std::move(v)};
}

SatValue satAdd(const SatValue& a, const SatValue& b) {
    if (a.overflow || b.overflow)
        return {true, 0};
    BigInt v = a.value + b.value;
    if (v >= kSatCap)
        return {true, 0};
    return {false, std::move(v)};
}

} // namespace

SatValue liveBlocksPredicted(int i, const BigInt& j) {
    if (i < 1 || j < 0)
        throw std::invalid_argument("liveBlocksPredicted requires i >= 1, j >= 0");
    if (i == 1)
        return {false, 1};
    if (j == 0)
        return {false, 2};
    if (j > 512)
        return {true, 0}; // L(i,j) >= 2^(j+1)
    SatValue prev{false, 2};
    for (BigInt jj = 1; jj <= j; ++jj) {
        if (prev.overflow)
            return prev;
        const SatValue inner = liveBlocksPredicted(i - 1, prev.value);
        prev = satMul(satMul(prev, {false, 2}), inner);
    }
    return prev;
}

SatValue alphabetPredicted(int i, const BigInt& j) {
    if (i < 1 || j < 0)
        throw std::invalid_argument("alphabetPredicted requires i >= 1, j >= 0");
    if (i == 1)
        return j >= kSatCap ? SatValue{true, 0} : SatValue{false, j};
    if (j == 0)
        return {false, 0};
    if (j > 512)
        return {true, 0};
    SatValue n{false, 0};
    SatValue l{false, 2};
    for (BigInt jj = 1; jj <= j; ++jj) {
        if (l.overflow)
            return {true, 0};
        const SatValue innerL = liveBlocksPredicted(i - 1, l.value);
        const SatValue innerN = alphabetPredicted(i - 1, l.value);
        n = satAdd(satMul(n, satMul({false, 2}, innerL)), innerN);
        l = satMul(satMul(l, {false, 2}), innerL);
    }
    return n;
}

SatValue lengthPredicted(int i, const BigInt& j) {
    const SatValue n = alphabetPredicted(i, j);
    return satMul(n, {false, (BigInt(1) << static_cast<unsigned>(i - 1)) + 1});
}

BlockedSequence buildU(int i, int j, long long budget) {
    if (i < 1 || j < 0 || (i == 1 && j == 0))
        throw std::invalid_argument("buildU requires i >= 1 and j >= 0, not both minimal");
    const SatValue len = lengthPredicted(i, j);
    if (len.overflow || len.value > budget)
        throw std::runtime_error("buildU: predicted length exceeds budget");
    if (i == 1)
        return uBase1(j);
    if (j == 0)
        return uBase0(i);

    const SatValue wSat = liveBlocksPredicted(i, j - 1);
    if (wSat.overflow || wSat.value > 100000000)
        throw std::runtime_error("buildU: predicted length exceeds budget");
    const int w = static_cast<int>(wSat.value);
    const BlockedSequence bot = buildU(i, j - 1, budget);
    const BlockedSequence top = buildU(i - 1, w, budget);
    return canonicalForm(leftShuffle(compose(top, uGadget(w)), bot));
}

UStats stats(const BlockedSequence& u, int i, int j) {
    UStats st;
    st.i = i;
    st.j = j;
    st.n = u.alphabetSize;
    st.liveBlocks = u.liveCount();
    st.deadBlocks = u.deadCount();
    st.length = u.length();

    std::vector<long long> occ(u.alphabetSize + 1, 0);
    std::vector<int> lastBlock(u.alphabetSize + 1, -1); // doubles as duplicate check
    for (std::size_t bi = 0; bi < u.blocks.size(); ++bi) {
        const auto& b = u.blocks[bi];
        for (int s : b.syms) {
            if (s < 1 || s > u.alphabetSize)
                throw std::logic_error("stats: symbol outside alphabet");
            if (lastBlock[s] == static_cast<int>(bi))
                throw std::logic_error("stats: repeated symbol inside a block");
            if (occ[s] == 0 && b.live)
                throw std::logic_error("stats: first occurrence in a live block");
            lastBlock[s] = static_cast<int>(bi);
            ++occ[s];
        }
        if (b.live && static_cast<int>(b.syms.size()) != j)
            throw std::logic_error("stats: live block length differs from j");
    }

    const long long expectedOcc = (1LL << (i - 1)) + 1;
    for (int s = 1; s <= u.alphabetSize; ++s) {
        if (occ[s] != expectedOcc)
            throw std::logic_error("stats: symbol occurrence count mismatch");
        ++st.occurrenceHistogram[static_cast<int>(occ[s])];
    }

    const SatValue predL = liveBlocksPredicted(i, j);
    const SatValue predN = alphabetPredicted(i, j);
    if (predL.overflow || predN.overflow || predL.value != st.liveBlocks ||
        predN.value != st.n)
        throw std::logic_error("stats: alphabet/live-block recurrence mismatch");
    // The dead-block bound is about the recursive step; the j-indexed base
    // sequence has exactly one dead block next to its single live block.
    if (i == 1 ? st.deadBlocks != 1 : st.deadBlocks > st.liveBlocks - 1)
        throw std::logic_error("stats: too many dead blocks");
    if (BigInt(st.n) * (BigInt(1) << static_cast<unsigned>(i - 1)) != BigInt(j) * st.liveBlocks)
        throw std::logic_error("stats: alphabet/live-block ratio mismatch");
    return st;
}

namespace detail {

namespace {

// merge-sort tree over positions, with symbol values in each node sorted
class ValueTree {
public:
    explicit ValueTree(const std::vector<int>& values) : n_(values.size()) {
        size_ = 1;
        while (size_ < std::max<std::size_t>(n_, 1))
            size_ <<= 1;
        nodes_.assign(2 * size_, {});
        for (std::size_t i = 0; i < n_; ++i)
            nodes_[size_ + i] = {values[i]};
        for (std::size_t i = size_; i-- > 1;) {
            const auto& a = nodes_[2 * i];
            const auto& b = nodes_[2 * i + 1];
            nodes_[i].resize(a.size() + b.size());
            std::merge(a.begin(), a.end(), b.begin(), b.end(), nodes_[i].begin());
        }
    }

    // positions are 1-based and inclusive
    int minValueAbove(int lo, int hi, int threshold) const {
        int best = -1;
        visit(lo, hi, [&](const std::vector<int>& v) {
            auto it = std::upper_bound(v.begin(), v.end(), threshold);
            if (it != v.end() && (best < 0 || *it < best))
                best = *it;
        });
        return best;
    }

    bool anyInBand(int lo, int hi, int valLo, int valHi) const {
        if (valLo > valHi)
            return false;
        bool found = false;
        visit(lo, hi, [&](const std::vector<int>& v) {
            if (found)
                return;
            auto it = std::lower_bound(v.begin(), v.end(), valLo);
            found = it != v.end() && *it <= valHi;
        });
        return found;
    }

private:
    template <typename F>
    void visit(int lo, int hi, F&& f) const {
        lo = std::max(lo, 1);
        hi = std::min<long long>(hi, static_cast<long long>(n_));
        if (lo > hi)
            return;
        std::size_t l = static_cast<std::size_t>(lo - 1) + size_;
        std::size_t r = static_cast<std::size_t>(hi) + size_;
        while (l < r) {
            if (l & 1)
                f(nodes_[l++]);
            if (r & 1)
                f(nodes_[--r]);
            l >>= 1;
            r >>= 1;
        }
    }

    std::size_t n_;
    std::size_t size_;
    std::vector<std::vector<int>> nodes_;
};

} // namespace

// Pattern d a b a c with a < b < c < d. For each consecutive occurrence pair
// (t2, t4) of a symbol a it suffices to take d as the prefix maximum before
// t2, b as the smallest symbol above a strictly inside (t2, t4), and then ask
// for any c strictly between b and d occurring after t4; each greedy choice
// only loosens the remaining constraints.
bool contains41213(const std::vector<int>& flat) {
    const int n = static_cast<int>(flat.size());
    if (n < 5)
        return false;
    int maxSym = 0;
    for (int v : flat)
        maxSym = std::max(maxSym, v);

    std::vector<std::vector<int>> occ(maxSym + 1);
    std::vector<int> prefixMax(n + 1, 0); // max over positions < p
    for (int p = 1; p <= n; ++p) {
        occ[flat[p - 1]].push_back(p);
        prefixMax[p] = p == 1 ? 0 : std::max(prefixMax[p - 1], flat[p - 2]);
    }
    const ValueTree tree(flat);

    for (int a = 1; a <= maxSym; ++a) {
        const auto& ps = occ[a];
        for (std::size_t q = 0; q + 1 < ps.size(); ++q) {
            const int t2 = ps[q], t4 = ps[q + 1];
            if (t4 - t2 < 2)
                continue;
            const int d = prefixMax[t2];
            if (d < a + 3)
                continue;
            const int b = tree.minValueAbove(t2 + 1, t4 - 1, a);
            if (b < 0 || b + 1 > d - 1)
                continue;
            if (tree.anyInBand(t4 + 1, n, b + 1, d - 1))
                return true;
        }
    }
    return false;
}

bool containsOrderIsomorphicSlow(const std::vector<int>& flat, const std::vector<int>& word) {
    const int n = static_cast<int>(flat.size());
    const int k = static_cast<int>(word.size());
    if (k == 0)
        return true;
    if (k > n)
        return false;

    // letter ranks 1..K by sorted distinct letters
    std::vector<int> letters(word);
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    const int K = static_cast<int>(letters.size());
    std::vector<int> rankSeq(k);
    for (int d = 0; d < k; ++d)
        rankSeq[d] =
            static_cast<int>(std::lower_bound(letters.begin(), letters.end(), word[d]) -
                             letters.begin()) +
            1;

    int maxSym = 0;
    for (int v : flat)
        maxSym = std::max(maxSym, v);
    std::vector<std::vector<int>> occ(maxSym + 1);
    for (int p = 0; p < n; ++p)
        occ[flat[p]].push_back(p);

    std::vector<int> assign(K + 1, 0); // rank -> symbol, 0 = free

    auto dfs = [&](auto&& self, int d, int pos) -> bool { // pos: last used index
        if (d == k)
            return true;
        const int q = rankSeq[d];
        if (assign[q]) {
            const auto& ps = occ[assign[q]];
            const auto it = std::upper_bound(ps.begin(), ps.end(), pos);
            return it != ps.end() && self(self, d + 1, *it);
        }
        int loVal = 0, hiVal = maxSym + 1;
        for (int r = q - 1; r >= 1; --r)
            if (assign[r]) {
                loVal = assign[r];
                break;
            }
        for (int r = q + 1; r <= K; ++r)
            if (assign[r]) {
                hiVal = assign[r];
                break;
            }
        std::set<int> tried; // first occurrence of each candidate dominates
        for (int p = pos + 1; p < n; ++p) {
            const int s = flat[p];
            if (s <= loVal || s >= hiVal || !tried.insert(s).second)
                continue;
            assign[q] = s;
            if (self(self, d + 1, p))
                return true;
            assign[q] = 0;
        }
        return false;
    };
    return dfs(dfs, 0, -1);
}

} // namespace detail

bool containsOrderIsomorphic(const BlockedSequence& u, const std::vector<int>& word) {
    {
        std::set<int> distinct(word.begin(), word.end());
        if (distinct.size() > 5)
            throw std::invalid_argument("word may use at most 5 distinct letters");
    }
    const std::vector<int> flat = u.flatten();
    static const std::vector<int> kPattern{4, 1, 2, 1, 3};
    if (flat.size() > 64) {
        // dispatch by rank pattern, not literal letters
        if (word.size() == 5) {
            std::vector<int> sorted(word);
            std::sort(sorted.begin(), sorted.end());
            sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
            std::vector<int> ranks(5);
            for (int d = 0; d < 5; ++d)
                ranks[d] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(),
                                                             word[d]) -
                                            sorted.begin()) +
                           1;
            if (ranks == kPattern)
                return detail::contains41213(flat);
        }
    }
    return detail::containsOrderIsomorphicSlow(flat, word);
}

std::vector<PairViolation> checkPairRestrictions(const BlockedSequence& u, std::size_t maxPairs,
                                                 std::uint64_t seed) {
    struct Occ {
        int block;
        int posInBlock;
        long long globalPos;
    };
    std::vector<std::vector<Occ>> occ(u.alphabetSize + 1);
    long long gp = 0;
    for (std::size_t bi = 0; bi < u.blocks.size(); ++bi)
        for (std::size_t pi = 0; pi < u.blocks[bi].syms.size(); ++pi)
            occ[u.blocks[bi].syms[pi]].push_back(
                {static_cast<int>(bi), static_cast<int>(pi), gp++});

    auto pairOk = [&](int a, int b) { // a < b
        std::vector<bool> isA; // merged occurrence order, true = a
        std::size_t ia = 0, ib = 0;
        const auto& oa = occ[a];
        const auto& ob = occ[b];
        while (ia < oa.size() || ib < ob.size()) {
            if (ib == ob.size() || (ia < oa.size() && oa[ia].globalPos < ob[ib].globalPos)) {
                isA.push_back(true);
                ++ia;
            } else {
                isA.push_back(false);
                ++ib;
            }
        }
        // a^x b^y (ab) b^z a^w: every split point for the central ab works or
        // none does, so try each candidate
        for (std::size_t q = 0; q + 1 < isA.size(); ++q) {
            if (!isA[q] || isA[q + 1])
                continue;
            std::size_t p = 0;
            while (p < q && isA[p])
                ++p;
            while (p < q && !isA[p])
                ++p;
            if (p != q)
                continue;
            p = q + 2;
            while (p < isA.size() && !isA[p])
                ++p;
            while (p < isA.size() && isA[p])
                ++p;
            if (p == isA.size())
                return true;
        }
        return false;
    };

    // pairs sharing a live block; one wide block can hold billions of
    // candidates, so count first and sample instead of materialising
    std::vector<const Block*> liveBlocks;
    std::vector<unsigned long long> cumCandidates; // running pair totals
    unsigned long long totalCandidates = 0;
    for (const auto& blk : u.blocks) {
        if (!blk.live || blk.syms.size() < 2)
            continue;
        const unsigned long long s = blk.syms.size();
        totalCandidates += s * (s - 1) / 2;
        liveBlocks.push_back(&blk);
        cumCandidates.push_back(totalCandidates);
    }
    std::vector<std::pair<int, int>> pairs;
    std::set<std::pair<int, int>> dedupe;
    if (totalCandidates <= maxPairs) {
        for (const Block* blk : liveBlocks)
            for (std::size_t x = 0; x < blk->syms.size(); ++x)
                for (std::size_t y = x + 1; y < blk->syms.size(); ++y) {
                    const int a = std::min(blk->syms[x], blk->syms[y]);
                    const int b = std::max(blk->syms[x], blk->syms[y]);
                    if (dedupe.insert({a, b}).second)
                        pairs.emplace_back(a, b);
                }
    } else {
        std::mt19937_64 rng(seed);
        unsigned long long attempts = 0;
        while (pairs.size() < maxPairs && attempts++ < 20 * maxPairs) {
            const unsigned long long t = rng() % totalCandidates;
            const std::size_t bi =
                std::upper_bound(cumCandidates.begin(), cumCandidates.end(), t) -
                cumCandidates.begin();
            const auto& syms = liveBlocks[bi]->syms;
            std::size_t x = rng() % syms.size();
            std::size_t y = rng() % (syms.size() - 1);
            if (y >= x)
                ++y;
            const int a = std::min(syms[x], syms[y]);
            const int b = std::max(syms[x], syms[y]);
            if (dedupe.insert({a, b}).second)
                pairs.emplace_back(a, b);
        }
    }

    std::vector<PairViolation> out;
    for (const auto& [a, b] : pairs)
        if (!pairOk(a, b))
            out.push_back({a, b});
    return out;
}

BitMatrix01 toIncidenceMatrix(const BlockedSequence& u) {
    if (u.alphabetSize < 1 || u.blocks.empty())
        throw std::invalid_argument("toIncidenceMatrix: empty sequence");
    BitMatrix01 m(u.alphabetSize, static_cast<int>(u.blocks.size()));
    for (std::size_t bi = 0; bi < u.blocks.size(); ++bi)
        for (int s : u.blocks[bi].syms)
            m.set(s, static_cast<int>(bi) + 1);
    return m;
}

std::string toBseq(const BlockedSequence& u) {
    std::ostringstream out;
    for (const auto& b : u.blocks) {
        out << (b.live ? 'L' : 'D');
        for (int s : b.syms)
            out << ' ' << s;
        out << '\n';
    }
    return out.str();
}

BlockedSequence loadBseq(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    BlockedSequence u;
    std::string line;
    int maxSym = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "L" && tag != "D")
            throw std::invalid_argument("bseq: block line must start with L or D");
        Block b{tag == "L", {}};
        int s = 0;
        std::set<int> seen;
        while (ls >> s) {
            if (s < 1 || !seen.insert(s).second)
                throw std::invalid_argument("bseq: invalid or repeated symbol in block");
            b.syms.push_back(s);
            maxSym = std::max(maxSym, s);
        }
        if (!ls.eof())
            throw std::invalid_argument("bseq: non-integer symbol");
        u.blocks.push_back(std::move(b));
    }
    u.alphabetSize = maxSym;
    return u;
}

void saveBseq(const BlockedSequence& u, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot open " + path + " for writing");
    out << toBseq(u);
}

} // namespace patmat
