#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patmat/bitmatrix.hpp"

namespace patmat {

// Permutation of {1..n}, 1-based: value(i) is the image of position i.
class Permutation {
public:
    explicit Permutation(std::vector<int> values);

    int size() const { return static_cast<int>(values_.size()); }
    int value(int i) const;
    const std::vector<int>& values() const { return values_; }

    Permutation inverse() const;
    bool operator==(const Permutation& o) const { return values_ == o.values_; }

private:
    std::vector<int> values_;
};

// P_s: one 1 per column, column i carries its 1 in row s(i). Row 1 is the
// bottom row, so the matrix plots the permutation as points (s(i), i).
BitMatrix01 permutationMatrix(const Permutation& s);

// Classical pattern containment on permutations.
bool avoids(const Permutation& s, const Permutation& pattern);

// Input-sequence generators. All draw from a seeded mt19937_64 and are
// deterministic per (n, seed).
Permutation genSequential(int n);
Permutation genPreorder(int n, std::uint64_t seed);  // avoids (2,3,1)
Permutation genPostorder(int n, std::uint64_t seed); // avoids (3,1,2)
Permutation genDeque(int n, std::uint64_t seed);     // avoids (2,1,3) and (2,3,1)
Permutation genKIncreasing(int n, int k, std::uint64_t seed);
// Rejection sampling; throws std::runtime_error after maxTries failures.
Permutation genPiAvoiding(int n, const Permutation& pattern, std::uint64_t seed,
                          int maxTries = 10000);

// perm file format: one integer per line, line i holding s(i).
std::string toPermFile(const Permutation& s);
Permutation loadPermFile(const std::string& path);
void savePermFile(const Permutation& s, const std::string& path);

} // namespace patmat
