#include "eisen/cyclosum.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "eisen/error.hpp"

namespace eisen::cyclosum {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    if (parts.empty()) throw DomainError("partition must have at least one part");
    for (int x : parts)
        if (x <= 0) throw DomainError("partition parts must be positive");
    std::sort(parts.begin(), parts.end(), std::greater<>());
}

Partition Partition::scaled(int k) const {
    std::vector<int> q = parts;
    for (int& x : q) x *= k;
    return Partition(std::move(q));
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
    os << ')';
    return os.str();
}

std::vector<long long> cyclotomic_polynomial(int ell) {
    if (ell < 1) throw DomainError("cyclotomic index must be positive");
    // x^l - 1
    std::vector<long long> num(static_cast<std::size_t>(ell + 1), 0);
    num[0] = -1;
    num[ell] = 1;
    for (int d = 1; d < ell; ++d) {
        if (ell % d) continue;
        const auto den = cyclotomic_polynomial(d);
        // Exact division by a monic polynomial.
        const int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
        std::vector<long long> q(static_cast<std::size_t>(dn - dd + 1), 0);
        for (int i = dn; i >= dd; --i) {
            const long long c = num[i];
            q[i - dd] = c;
            for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
        }
        num = std::move(q);
    }
    return num;
}

CyclotomicRing::CyclotomicRing(int ell) : ell_(ell), phi_(cyclotomic_polynomial(ell)) {}

CyclotomicRing::CycInt CyclotomicRing::reduce(std::vector<long long> poly) const {
    const int d = degree();
    for (int i = static_cast<int>(poly.size()) - 1; i >= d; --i) {
        const long long c = poly[i];
        if (c == 0) continue;
        for (int j = 0; j <= d; ++j) poly[i - d + j] -= c * phi_[j];
    }
    poly.resize(static_cast<std::size_t>(d), 0);
    return poly;
}

CyclotomicRing::CycInt CyclotomicRing::power_of_zeta(long long e) const {
    e %= ell_;
    if (e < 0) e += ell_;
    std::vector<long long> poly(static_cast<std::size_t>(e + 1), 0);
    poly[e] = 1;
    return reduce(std::move(poly));
}

CyclotomicRing::CycInt CyclotomicRing::add(const CycInt& a, const CycInt& b) const {
    CycInt r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

bool CyclotomicRing::is_rational(const CycInt& a) const {
    return std::all_of(a.begin() + (a.empty() ? 0 : 1), a.end(), [](long long c) { return c == 0; });
}

long long sigma_direct(const Partition& lambda, int ell) {
    if (ell < 1) throw DomainError("l must be positive");
    const int r = lambda.size();
    if (r > ell) return 0;
    const CyclotomicRing ring(ell);

    // Histogram of exponents mod l over all injective index tuples.
    std::vector<long long> hist(static_cast<std::size_t>(ell), 0);
    std::vector<int> idx(static_cast<std::size_t>(r));
    std::vector<char> used(static_cast<std::size_t>(ell), 0);
    std::function<void(int, long long)> rec = [&](int pos, long long expo) {
        if (pos == r) {
            ++hist[static_cast<std::size_t>(expo % ell)];
            return;
        }
        for (int i = 0; i < ell; ++i) {
            if (used[i]) continue;
            used[i] = 1;
            rec(pos + 1, expo + static_cast<long long>(i) * lambda.parts[pos]);
            used[i] = 0;
        }
    };
    rec(0, 0);

    const auto value = ring.reduce(hist);
    if (!ring.is_rational(value)) throw Error("sum of roots of unity reduced to a non-integer");
    return value.empty() ? 0 : value[0];
}

void for_each_set_partition(int r, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> a(static_cast<std::size_t>(r), 0);
    std::function<void(int, int)> rec = [&](int pos, int blocks) {
        if (pos == r) {
            visit(a);
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            a[pos] = b;
            rec(pos + 1, std::max(blocks, b + 1));
        }
    };
    if (r == 0) {
        visit(a);
        return;
    }
    a[0] = 0;
    rec(1, 1);
}

long long block_weight(int s) {
    long long w = 1;
    for (int i = 2; i < s; ++i) w *= i;
    return (s % 2 == 1) ? w : -w;
}

long long sigma_formula(const Partition& lambda, int ell) {
    if (ell < 1) throw DomainError("l must be positive");
    const int r = lambda.size();
    long long total = 0;
    for_each_set_partition(r, [&](const std::vector<int>& labels) {
        const int blocks = *std::max_element(labels.begin(), labels.end()) + 1;
        std::vector<long long> sum(static_cast<std::size_t>(blocks), 0);
        std::vector<int> size(static_cast<std::size_t>(blocks), 0);
        for (int i = 0; i < r; ++i) {
            sum[labels[i]] += lambda.parts[i];
            ++size[labels[i]];
        }
        long long term = 1;
        for (int b = 0; b < blocks; ++b) {
            if (sum[b] % ell) return;
            term *= ell * block_weight(size[b]);
        }
        total += term;
    });
    return total;
}

}  // namespace eisen::cyclosum
