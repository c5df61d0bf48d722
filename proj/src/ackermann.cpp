#include "patmat/ackermann.hpp"

#include <stdexcept>

namespace patmat {

namespace {

BigInt ceilDiv(const BigInt& a, const BigInt& b) {
    return (a + b - 1) / b;
}

// smallest r >= 1 with r^t >= x
BigInt integerCeilRoot(const BigInt& x, int t) {
    if (x <= 1)
        return 1;
    BigInt lo = 1, hi = x;
    while (lo < hi) {
        const BigInt mid = (lo + hi) / 2;
        if (boost::multiprecision::pow(mid, static_cast<unsigned>(t)) >= x)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

} // namespace

AckTable::AckTable(BigInt cap) : cap_(std::move(cap)) {
    if (cap_ < 1)
        throw std::invalid_argument("AckTable cap must be >= 1");
}

SatValue AckTable::get(int i, const BigInt& j) {
    if (i < 1 || j < 1)
        throw std::invalid_argument("AckTable indices must be >= 1");

    if (i == 1) { // 2^j, closed form
        const unsigned capBits = cap_ == 1 ? 0 : boost::multiprecision::msb(cap_);
        // 2^j >= cap exactly when j >= capBits, plus one when cap is not a power of two
        BigInt threshold = capBits;
        if (cap_ != (BigInt(1) << capBits))
            threshold += 1;
        if (j >= threshold)
            return {true, 0};
        return {false, BigInt(1) << static_cast<unsigned>(j)};
    }

    Row& row = rows_[i];
    while (!row.saturated && BigInt(row.exact.size()) < j) {
        BigInt val;
        if (row.exact.empty()) {
            val = 2;
        } else {
            const BigInt& w = row.exact.back();
            const SatValue sub = get(i - 1, w);
            if (sub.overflow) { // w * sub >= sub >= cap
                row.saturated = true;
                break;
            }
            val = w * sub.value;
        }
        if (val >= cap_)
            row.saturated = true;
        else
            row.exact.push_back(std::move(val));
    }
    if (BigInt(row.exact.size()) >= j)
        return {false, row.exact[static_cast<std::size_t>(j - 1)]};
    return {true, 0};
}

SatValue ack(int i, const BigInt& j, const BigInt& cap) {
    AckTable t(cap);
    return t.get(i, j);
}

namespace {

int leastLevel(const BigInt& j, const BigInt& threshold) {
    AckTable table(threshold);
    for (int i = 1; i <= 512; ++i)
        if (table.get(i, j).atLeast(threshold))
            return i;
    throw std::logic_error("inverse level search exceeded 512 rows");
}

} // namespace

int alpha(const BigInt& n, const BigInt& m) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("alpha requires n, m >= 1");
    BigInt j = ceilDiv(n, m);
    if (j < 3)
        j = 3;
    return leastLevel(j, m);
}

int alphaSquare(const BigInt& n) {
    return alpha(n, n);
}

int alphaProof(const BigInt& n, const BigInt& m, int t) {
    if (n < 1 || m < 1 || t < 1)
        throw std::invalid_argument("alphaProof requires n, m, t >= 1");
    BigInt j = integerCeilRoot(ceilDiv(n, m), t);
    if (j < 3)
        j = 3;
    // a^t >= m is the same as a >= ceil(m^(1/t))
    const BigInt threshold = integerCeilRoot(m, t);
    return leastLevel(j, threshold);
}

} // namespace patmat
