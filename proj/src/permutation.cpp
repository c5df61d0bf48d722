#include "patmat/permutation.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace patmat {

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
    if (values_.empty())
        throw std::invalid_argument("permutation must be nonempty");
    std::vector<bool> seen(values_.size() + 1, false);
    for (int v : values_) {
        if (v < 1 || v > static_cast<int>(values_.size()) || seen[v])
            throw std::invalid_argument("not a permutation of 1.." +
                                        std::to_string(values_.size()));
        seen[v] = true;
    }
}

int Permutation::value(int i) const {
    if (i < 1 || i > size())
        throw std::out_of_range("permutation index out of range");
    return values_[i - 1];
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(values_.size());
    for (int i = 1; i <= size(); ++i)
        inv[values_[i - 1] - 1] = i;
    return Permutation(std::move(inv));
}

BitMatrix01 permutationMatrix(const Permutation& s) {
    BitMatrix01 m(s.size(), s.size());
    for (int i = 1; i <= s.size(); ++i)
        m.set(s.value(i), i);
    return m;
}

// Backtracking over pattern positions, mapping them to increasing host
// positions while keeping the chosen values order-isomorphic to the pattern.
bool avoids(const Permutation& s, const Permutation& pattern) {
    const int n = s.size();
    const int k = pattern.size();
    if (k > n)
        return true;
    std::vector<int> pos(k, 0); // chosen host positions, 1-based

    auto consistent = [&](int depth) {
        const int pd = pattern.value(depth + 1);
        const int vd = s.value(pos[depth]);
        for (int j = 0; j < depth; ++j) {
            const int pj = pattern.value(j + 1);
            const int vj = s.value(pos[j]);
            if ((pj < pd) != (vj < vd))
                return false;
        }
        return true;
    };

    auto dfs = [&](auto&& self, int depth) -> bool {
        if (depth == k)
            return true;
        const int lo = depth == 0 ? 1 : pos[depth - 1] + 1;
        for (int p = lo; p <= n - (k - depth - 1); ++p) {
            pos[depth] = p;
            if (consistent(depth) && self(self, depth + 1))
                return true;
        }
        return false;
    };
    return !dfs(dfs, 0);
}

Permutation genSequential(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = i + 1;
    return Permutation(std::move(v));
}

namespace {

struct BstNode {
    int key;
    int left = -1;
    int right = -1;
};

// BST built by inserting 1..n in uniformly random order.
std::vector<BstNode> randomBst(int n, std::uint64_t seed, int& root) {
    std::mt19937_64 rng(seed);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i + 1;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<BstNode> nodes;
    nodes.reserve(n);
    root = -1;
    for (int key : order) {
        const int idx = static_cast<int>(nodes.size());
        nodes.push_back({key});
        if (root < 0) {
            root = idx;
            continue;
        }
        int cur = root;
        for (;;) {
            int& next = key < nodes[cur].key ? nodes[cur].left : nodes[cur].right;
            if (next < 0) {
                next = idx;
                break;
            }
            cur = next;
        }
    }
    return nodes;
}

} // namespace

Permutation genPreorder(int n, std::uint64_t seed) {
    int root = -1;
    auto nodes = randomBst(n, seed, root);
    std::vector<int> out;
    out.reserve(n);
    auto walk = [&](auto&& self, int idx) -> void {
        if (idx < 0)
            return;
        out.push_back(nodes[idx].key);
        self(self, nodes[idx].left);
        self(self, nodes[idx].right);
    };
    walk(walk, root);
    return Permutation(std::move(out));
}

Permutation genPostorder(int n, std::uint64_t seed) {
    int root = -1;
    auto nodes = randomBst(n, seed, root);
    std::vector<int> out;
    out.reserve(n);
    auto walk = [&](auto&& self, int idx) -> void {
        if (idx < 0)
            return;
        self(self, nodes[idx].left);
        self(self, nodes[idx].right);
        out.push_back(nodes[idx].key);
    };
    walk(walk, root);
    return Permutation(std::move(out));
}

Permutation genDeque(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> out;
    out.reserve(n);
    int lo = 1, hi = n;
    while (lo <= hi) {
        if (lo == hi || (rng() & 1))
            out.push_back(lo++);
        else
            out.push_back(hi--);
    }
    return Permutation(std::move(out));
}

Permutation genKIncreasing(int n, int k, std::uint64_t seed) {
    if (k < 2)
        throw std::invalid_argument("genKIncreasing needs k >= 2");
    std::mt19937_64 rng(seed);
    // Split 1..n into k-1 classes; always emit the smallest remaining value of
    // a random nonempty class, so each class appears in increasing order.
    const int classes = k - 1;
    std::vector<std::vector<int>> buckets(classes);
    std::uniform_int_distribution<int> pick(0, classes - 1);
    for (int v = n; v >= 1; --v)
        buckets[pick(rng)].push_back(v); // descending, pop_back yields smallest
    std::vector<int> out;
    out.reserve(n);
    std::vector<int> nonempty;
    for (int b = 0; b < classes; ++b)
        if (!buckets[b].empty())
            nonempty.push_back(b);
    while (!nonempty.empty()) {
        std::uniform_int_distribution<std::size_t> which(0, nonempty.size() - 1);
        const std::size_t slot = which(rng);
        const int b = nonempty[slot];
        out.push_back(buckets[b].back());
        buckets[b].pop_back();
        if (buckets[b].empty()) {
            nonempty[slot] = nonempty.back();
            nonempty.pop_back();
        }
    }
    return Permutation(std::move(out));
}

Permutation genPiAvoiding(int n, const Permutation& pattern, std::uint64_t seed, int maxTries) {
    std::mt19937_64 rng(seed);
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = i + 1;
    for (int t = 0; t < maxTries; ++t) {
        std::shuffle(v.begin(), v.end(), rng);
        Permutation s(v);
        if (avoids(s, pattern))
            return s;
    }
    throw std::runtime_error("genPiAvoiding: no avoider found in " + std::to_string(maxTries) +
                             " tries");
}

std::string toPermFile(const Permutation& s) {
    std::ostringstream out;
    for (int v : s.values())
        out << v << '\n';
    return out.str();
}

Permutation loadPermFile(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    std::vector<int> v;
    int x = 0;
    while (in >> x)
        v.push_back(x);
    if (!in.eof())
        throw std::invalid_argument("perm file: non-integer token in " + path);
    return Permutation(std::move(v));
}

void savePermFile(const Permutation& s, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot open " + path + " for writing");
    out << toPermFile(s);
}

} // namespace patmat
