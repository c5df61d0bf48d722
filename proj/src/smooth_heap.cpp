#include "patmat/smooth_heap.hpp"

#include <stdexcept>

namespace patmat {

namespace {

struct Heap {
    int n;
    std::vector<std::vector<int>> child; // left-to-right flatten order
    std::vector<int> frontCount;         // children preceding the parent in that order
    std::vector<int> prevR, nextR;       // root list links, 0 = none
    std::vector<int> arrival;            // insertion index, for structure checks
    int head = 0;
    int tail = 0;
    int rootCount = 0;

    explicit Heap(int n_)
        : n(n_), child(n_ + 1), frontCount(n_ + 1, 0), prevR(n_ + 1, 0), nextR(n_ + 1, 0),
          arrival(n_ + 1, 0) {}

    void pushRoot(int k) {
        prevR[k] = tail;
        nextR[k] = 0;
        if (tail)
            nextR[tail] = k;
        else
            head = k;
        tail = k;
        ++rootCount;
    }

    void removeRoot(int k) {
        if (prevR[k])
            nextR[prevR[k]] = nextR[k];
        else
            head = nextR[k];
        if (nextR[k])
            prevR[nextR[k]] = prevR[k];
        else
            tail = prevR[k];
        prevR[k] = nextR[k] = 0;
        --rootCount;
    }

    // replace root m by its children, preserving left-to-right order
    void splice(int m) {
        int left = prevR[m];
        const int right = nextR[m];
        removeRoot(m);
        for (int c : child[m]) {
            prevR[c] = left;
            nextR[c] = right;
            if (left)
                nextR[left] = c;
            else
                head = c;
            if (right)
                prevR[right] = c;
            else
                tail = c;
            left = c;
            ++rootCount;
        }
        child[m].clear();
        frontCount[m] = 0;
    }

    // One pass with a roving pointer; the pointer always sits right of an
    // ascending run, so whenever it stops it is at a local maximum.
    void consolidate() {
        if (rootCount <= 1)
            return;
        int x = head;
        while (prevR[x] || nextR[x]) {
            const int nx = nextR[x];
            const int pv = prevR[x];
            if (nx && x < nx) {
                x = nx;
            } else if (pv && (!nx || pv > nx)) {
                removeRoot(x);
                child[pv].push_back(x); // x was the right neighbour
                x = pv;
            } else {
                removeRoot(x);
                child[nx].insert(child[nx].begin(), x); // x was the left neighbour
                ++frontCount[nx];
                x = nx;
            }
        }
    }

    void checkStructure() const {
        int last = 0;
        auto flatten = [&](auto&& self, int v) -> void {
            for (int i = 0; i < static_cast<int>(child[v].size()); ++i) {
                const int c = child[v][i];
                if (c < v)
                    throw std::logic_error("smooth heap: heap order violated");
                if (i == frontCount[v]) {
                    if (arrival[v] <= last)
                        throw std::logic_error("smooth heap: insertion order violated");
                    last = arrival[v];
                }
                self(self, c);
            }
            if (static_cast<int>(child[v].size()) <= frontCount[v]) {
                if (arrival[v] <= last)
                    throw std::logic_error("smooth heap: insertion order violated");
                last = arrival[v];
            }
        };
        for (int r = head; r; r = nextR[r])
            flatten(flatten, r);
    }
};

} // namespace

SmoothSortResult smoothHeapSort(const Permutation& s, bool validate) {
    const int n = s.size();
    Heap h(n);
    for (int i = 1; i <= n; ++i) {
        const int k = s.value(i);
        h.arrival[k] = i;
        h.pushRoot(k);
    }

    SmoothSortResult out{{}, {BitMatrix01(n, n), {}, 0}};
    out.sorted.reserve(n);

    for (int step = 1; step <= n; ++step) {
        int m = h.head;
        for (int r = h.nextR[m]; r; r = h.nextR[r])
            if (r < m)
                m = r;
        out.sorted.push_back(m);

        h.splice(m);
        out.touch.touched.set(step, m);
        int count = 1;
        if (h.rootCount >= 2) { // every root is compared during consolidation
            for (int r = h.head; r; r = h.nextR[r]) {
                out.touch.touched.set(step, r);
                ++count;
            }
        }
        out.touch.perStep.push_back(count);
        out.touch.total += count;

        h.consolidate();
        if (validate)
            h.checkStructure();
    }
    return out;
}

ComparisonRecord smoothVsGreedy(const Permutation& s) {
    ComparisonRecord rec;
    rec.greedyTouches = greedyTouchMatrix(s).total;
    rec.smoothTouches = smoothHeapSort(s.inverse()).touch.total;
    rec.ratio = rec.greedyTouches == 0
                    ? 0.0
                    : static_cast<double>(rec.smoothTouches) / static_cast<double>(rec.greedyTouches);
    return rec;
}

} // namespace patmat
