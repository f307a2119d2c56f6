#pragma once

// Brute-force references used only by the tests and the acceptance runner.
// None of these call into the code they check beyond field arithmetic.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "eisen/gf.hpp"
#include "eisen/upoly.hpp"
#include "eisen/zq.hpp"

namespace oracle {

using eisen::gf::FFElem;
using eisen::gf::LinearizedPoly;
using eisen::gf::ResidueField;

inline FFElem apply(const ResidueField& k, const LinearizedPoly& A, const FFElem& x) {
    FFElem acc = k.zero();
    FFElem xp = x;
    for (int i = 0; i < 4; ++i) {
        acc = k.add(acc, k.mul(A.a[static_cast<std::size_t>(i)], xp));
        xp = k.pow(xp, static_cast<std::uint64_t>(k.p()));
    }
    return acc;
}

inline std::set<std::uint64_t> image(const ResidueField& k, const LinearizedPoly& A) {
    std::set<std::uint64_t> out;
    for (const auto& x : k.elements()) out.insert(k.index(apply(k, A, x)));
    return out;
}

inline bool range_subset(const ResidueField& k, const LinearizedPoly& A, const LinearizedPoly& T) {
    const auto a = image(k, A);
    const auto t = image(k, T);
    return std::includes(a.begin(), a.end(), t.begin(), t.end());
}

inline int kernel_size(const ResidueField& k, const LinearizedPoly& A) {
    int n = 0;
    for (const auto& x : k.elements())
        if (k.is_zero(apply(k, A, x))) ++n;
    return n;
}

// Dense polynomials over the residue field, ascending.
using Poly = std::vector<FFElem>;

inline void trim(const ResidueField& k, Poly& a) {
    while (!a.empty() && k.is_zero(a.back())) a.pop_back();
}

inline Poly mulmod(const ResidueField& k, const Poly& a, const Poly& b, const Poly& m) {
    Poly r(a.size() + b.size(), k.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
    trim(k, r);
    const std::size_t d = m.size() - 1;
    const FFElem lead_inv = k.inv(m.back());
    while (r.size() > d) {
        const FFElem c = k.mul(r.back(), lead_inv);
        const std::size_t s = r.size() - 1 - d;
        for (std::size_t i = 0; i <= d; ++i) r[s + i] = k.sub(r[s + i], k.mul(c, m[i]));
        trim(k, r);
    }
    return r;
}

inline Poly powmod(const ResidueField& k, Poly base, std::uint64_t e, const Poly& m) {
    Poly r{k.one()};
    while (e) {
        if (e & 1) r = mulmod(k, r, base, m);
        base = mulmod(k, base, base, m);
        e >>= 1;
    }
    return r;
}

/// Degree over k of the splitting field of a separable A: the least d with
/// A | Y^{q^d} - Y. Returns 0 if none is found below `cap`.
inline int splitting_degree(const ResidueField& k, const LinearizedPoly& A, int cap = 8) {
    const int top = A.degree_index();
    std::uint64_t deg = 1;
    for (int i = 0; i < top; ++i) deg *= static_cast<std::uint64_t>(k.p());
    Poly m(deg + 1, k.zero());
    std::uint64_t e = 1;
    for (int i = 0; i <= top; ++i, e *= static_cast<std::uint64_t>(k.p())) m[e] = A.a[static_cast<std::size_t>(i)];
    const Poly y{k.zero(), k.one()};
    Poly cur = y;
    for (int d = 1; d <= cap; ++d) {
        cur = powmod(k, cur, k.q(), m);
        if (cur == y) return d;
    }
    return 0;
}

inline bool is_power_of(int d, int p) {
    while (d % p == 0) d /= p;
    return d == 1;
}

/// Sum over connected labelled graphs on n vertices of (-1)^{#edges}.
inline long long signed_connected_graphs(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    long long total = 0;
    for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
        std::vector<int> parent(static_cast<std::size_t>(n));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
            return x;
        };
        int comps = n;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!(mask >> e & 1)) continue;
            const int a = find(edges[e].first), b = find(edges[e].second);
            if (a != b) {
                parent[static_cast<std::size_t>(a)] = b;
                --comps;
            }
        }
        if (comps == 1) total += (std::popcount(mask) % 2) ? -1 : 1;
    }
    return total;
}

/// delta^{[m]}_{l,k}: l when l >= m and l | k, else 0.
inline long long delta(int m, int ell, int k) { return (ell >= m && k % ell == 0) ? ell : 0; }

/// Sum over ordered tuples of distinct indices of zeta^{...}, evaluated with
/// complex floating point and rounded. Independent of the cyclotomic ring.
inline long long sigma_numeric(const std::vector<int>& parts, int ell) {
    const std::size_t r = parts.size();
    if (r > static_cast<std::size_t>(ell)) return 0;
    std::complex<double> total = 0;
    std::vector<bool> used(static_cast<std::size_t>(ell), false);
    const double w = 2 * std::acos(-1.0) / ell;
    auto rec = [&](auto&& self, std::size_t pos, long long expo) -> void {
        if (pos == r) {
            total += std::polar(1.0, w * static_cast<double>(expo % ell));
            return;
        }
        for (int i = 0; i < ell; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            used[static_cast<std::size_t>(i)] = true;
            self(self, pos + 1, expo + static_cast<long long>(i) * parts[pos]);
            used[static_cast<std::size_t>(i)] = false;
        }
    };
    rec(rec, 0, 0);
    return std::llround(total.real());
}

}  // namespace oracle
