#include "patmat/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace patmat {

namespace {

BigInt bpow(const BigInt& base, int exp) {
    if (exp < 0)
        throw std::invalid_argument("negative exponent");
    return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

int ceilLog2(const BigInt& m) { // smallest j with 2^j >= m
    if (m < 1)
        throw std::invalid_argument("ceilLog2 requires m >= 1");
    if (m == 1)
        return 0;
    const unsigned b = boost::multiprecision::msb(m);
    return static_cast<int>(b) + ((m == (BigInt(1) << b)) ? 0 : 1);
}

} // namespace

BigInt mu(const BigInt& C, int i, int t) {
    if (C < 1 || i < 1 || t < 2)
        throw std::invalid_argument("mu requires C >= 1, i >= 1, t >= 2");
    return bpow(2 * C + 3 * i, t - 2) * ((BigInt(1) << static_cast<unsigned>(i)) - 1);
}

std::vector<MuViolation> checkMuConstraints(const BigInt& C, int iMax, int tMax) {
    std::vector<MuViolation> out;
    for (int i = 2; i <= iMax; ++i) {
        for (int t = 4; t <= tMax; ++t) {
            const BigInt m = mu(C, i, t);
            const BigInt m1 = mu(C, i, t - 1);
            const BigInt m2 = mu(C, i, t - 2);
            const BigInt m3 = mu(C, i - 1, t);
            if (m < 2 * m1 + 2 * C * m2 + 2 * m3 + C)
                out.push_back({i, t, 9});

            // fractional inequality, checked exactly after clearing the
            // denominators c^(t-2) * 2^(3k+t-5)
            const int k = (t + 2) / 3; // smallest k with 3k >= t
            const BigInt c = 3 * k;
            const BigInt lhs = m * bpow(c, t - 2) * bpow(2, 3 * k + t - 5);
            const BigInt rhs = 2 * m1 * bpow(c, t - 3) * bpow(2, 3 * k + t - 5) +
                               2 * C * m2 * bpow(c, t - 3) * bpow(2, 3 * k + t - 5) +
                               2 * m3 * bpow(c, t - 2) * bpow(2, t - 4) +
                               C * c * bpow(2, 3 * k - 1);
            if (lhs < rhs)
                out.push_back({i, t, 10});
        }
    }
    return out;
}

BigInt baseCaseBounds(const TrimmedPattern& qab, const BigInt& n, const BigInt& m) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("baseCaseBounds requires n, m >= 1");
    if (qab.base.rows() % 2 != 0)
        throw std::invalid_argument("baseCaseBounds: pattern must have an even row count");
    const int t = qab.base.weight();
    const int k = qab.base.rows() / 2;
    if (t < 2)
        throw std::invalid_argument("baseCaseBounds: pattern weight must be >= 2");
    const BigInt mm2 = m >= 2 ? m - 2 : BigInt(0);
    if (t == 2)
        return n + (2 * k - 1) * (m - 1);
    if (t == 3)
        return 2 * n + (2 * k - 1) * mm2;
    const BigInt j = ceilLog2(m);
    return bpow(2, t - 2) * n + (2 * k - 1) * bpow(j, t - 3) * mm2;
}

BitMatrix01 keszeghJoin(const BitMatrix01& r, const BitMatrix01& s) {
    if (!r.get(1, r.cols()))
        throw std::invalid_argument("keszeghJoin: first operand needs a 1 at (1, cols)");
    if (!s.get(s.rows(), 1))
        throw std::invalid_argument("keszeghJoin: second operand needs a 1 at (rows, 1)");
    BitMatrix01 out(r.rows() + s.rows() - 1, r.cols() + s.cols() - 1);
    for (const auto& [rr, cc] : r.cells())
        out.set(rr + s.rows() - 1, cc);
    for (const auto& [rr, cc] : s.cells())
        out.set(rr, cc + r.cols() - 1, true);
    if (out.weight() != r.weight() + s.weight() - 1)
        throw std::logic_error("keszeghJoin: operands overlap beyond the shared corner");
    return out;
}

BitMatrix01 dropTopOfEachColumn(const BitMatrix01& a) {
    BitMatrix01 out(a.rows(), a.cols());
    std::vector<int> top(a.cols() + 1, 0);
    for (const auto& [r, c] : a.cells())
        top[c] = std::max(top[c], r);
    for (const auto& [r, c] : a.cells())
        if (r != top[c])
            out.set(r, c);
    return out;
}

BitMatrix01 dropLeadingOnesPerRow(const BitMatrix01& a, int count) {
    if (count < 0)
        throw std::invalid_argument("negative drop count");
    BitMatrix01 out(a.rows(), a.cols());
    for (int r = 1; r <= a.rows(); ++r) {
        const auto cs = a.rowCols(r);
        for (std::size_t i = count; i < cs.size(); ++i)
            out.set(r, cs[i]);
    }
    return out;
}

BitMatrix01 dropTrailingOnesPerRow(const BitMatrix01& a, int count) {
    if (count < 0)
        throw std::invalid_argument("negative drop count");
    BitMatrix01 out(a.rows(), a.cols());
    for (int r = 1; r <= a.rows(); ++r) {
        const auto cs = a.rowCols(r);
        for (std::size_t i = 0; i + count < cs.size(); ++i)
            out.set(r, cs[i]);
    }
    return out;
}

Hat4Roles hat4RolesAt(const BitMatrix01& m, int row, int col) {
    Hat4Roles roles;
    if (!m.get(row, col))
        return roles;

    // (row, col) as the rightmost bottom 1 of a hat4L copy: a 1 at (row, c2)
    // with c2 < col, a 1 strictly between them in a higher row, and the top 1
    // further up and left of c2.
    for (int c2 = 1; c2 < col && !roles.bottomRightOfL; ++c2) {
        if (!m.get(row, c2))
            continue;
        for (int r2 = row + 1; r2 <= m.rows() && !roles.bottomRightOfL; ++r2) {
            bool mid = false;
            for (int c3 = c2 + 1; c3 < col && !mid; ++c3)
                mid = m.get(r2, c3);
            if (!mid)
                continue;
            for (int r3 = r2 + 1; r3 <= m.rows() && !roles.bottomRightOfL; ++r3)
                for (int c1 = 1; c1 < c2; ++c1)
                    if (m.get(r3, c1)) {
                        roles.bottomRightOfL = true;
                        roles.topRowL = r3;
                        break;
                    }
        }
    }

    // mirrored: (row, col) as the leftmost bottom 1 of a hat4R copy
    for (int c3 = col + 1; c3 <= m.cols() && !roles.bottomLeftOfR; ++c3) {
        if (!m.get(row, c3))
            continue;
        for (int r2 = row + 1; r2 <= m.rows() && !roles.bottomLeftOfR; ++r2) {
            bool mid = false;
            for (int c2 = col + 1; c2 < c3 && !mid; ++c2)
                mid = m.get(r2, c2);
            if (!mid)
                continue;
            for (int r3 = r2 + 1; r3 <= m.rows() && !roles.bottomLeftOfR; ++r3)
                for (int c4 = c3 + 1; c4 <= m.cols(); ++c4)
                    if (m.get(r3, c4)) {
                        roles.bottomLeftOfR = true;
                        roles.topRowR = r3;
                        break;
                    }
        }
    }
    return roles;
}

WReductionReport wReductionCheck(const BitMatrix01& a) {
    if (contains(patterns::w(), a) || contains(patterns::wPrime(), a))
        throw std::invalid_argument("wReductionCheck: input must avoid both w and wPrime");

    WReductionReport rep{dropTopOfEachColumn(a), false, 0, 0, {}};
    rep.reducedWppFree = !contains(patterns::wDoublePrime(), rep.reduced);

    for (const auto& [r, c] : rep.reduced.cells()) {
        const Hat4Roles roles = hat4RolesAt(rep.reduced, r, c);
        if (roles.bottomRightOfL)
            ++rep.bottomRightOfLCount;
        if (roles.bottomLeftOfR)
            ++rep.bottomLeftOfRCount;
        if (roles.bottomRightOfL && roles.bottomLeftOfR) {
            WBothCell both{{r, c}, roles.topRowL, roles.topRowR, ""};
            if (roles.topRowL == roles.topRowR)
                both.resolved = "wdoubleprime";
            else if (roles.topRowL < roles.topRowR)
                both.resolved = "wprime";
            else
                both.resolved = "w";
            rep.bothCells.push_back(std::move(both));
        }
    }
    return rep;
}

MainBoundReport mainBound(const BigInt& n, int k, const BigInt& C) {
    if (n < 2 || k < 1)
        throw std::invalid_argument("mainBound requires n >= 2, k >= 1");
    MainBoundReport rep;
    rep.k = k;
    rep.t = 3 * k;
    if (rep.t < 2)
        throw std::invalid_argument("mainBound: pattern weight too small");
    rep.level = alphaProof(n, n, rep.t);
    const BigInt c = 3 * k;
    const BigInt j = 3; // square hosts: ceil(n/m) = 1
    const BigInt tail =
        rep.t >= 3 ? bpow(c * j, rep.t - 3) * (2 * k - 1) * (n - 2) : BigInt(0);
    rep.value = mu(C, rep.level, rep.t) * (n + tail);
    return rep;
}

} // namespace patmat
