#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace patmat {

using BigInt = boost::multiprecision::cpp_int;

// Value from the rapidly growing table a_{i,j}, saturated at a cap:
// overflow means "at least cap".
struct SatValue {
    bool overflow = false;
    BigInt value; // meaningful only when !overflow

    bool atLeast(const BigInt& m) const { return overflow || value >= m; }
};

// a_{1,j} = 2^j, a_{i,1} = 2, a_{i,j} = w * a_{i-1,w} with w = a_{i,j-1}.
// Values explode so fast that each row holds only a handful of exact entries
// below any practical cap; the table records where each row saturates.
class AckTable {
public:
    explicit AckTable(BigInt cap);

    SatValue get(int i, const BigInt& j);
    const BigInt& cap() const { return cap_; }

private:
    struct Row {
        std::vector<BigInt> exact; // values for j = 1, 2, ...
        bool saturated = false;    // true once the next entry would reach cap
    };

    BigInt cap_;
    std::map<int, Row> rows_;
};

SatValue ack(int i, const BigInt& j, const BigInt& cap);

// Least i such that a_{i,j} >= m for j = max(3, ceil(n/m)).
int alpha(const BigInt& n, const BigInt& m);
int alphaSquare(const BigInt& n); // alpha(n, n)

// Variant used by the recursion analysis: j = max(3, ceil(ceil(n/m)^(1/t))),
// least i with a_{i,j}^t >= m.
int alphaProof(const BigInt& n, const BigInt& m, int t);

} // namespace patmat
