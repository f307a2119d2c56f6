#pragma once

// Sums of l-th roots of unity over tuples of distinct indices.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace eisen::cyclosum {

/// Weakly decreasing positive parts.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    /// Sorts the parts; throws DomainError if empty or non-positive.
    explicit Partition(std::vector<int> parts);

    int size() const { return static_cast<int>(parts.size()); }
    /// Every part multiplied by k.
    Partition scaled(int k) const;
    std::string to_string() const;
};

/// Z[x]/(Phi_l(x)).
class CyclotomicRing {
public:
    explicit CyclotomicRing(int ell);

    int ell() const { return ell_; }
    int degree() const { return static_cast<int>(phi_.size()) - 1; }
    /// Ascending, monic.
    const std::vector<long long>& phi() const { return phi_; }

    using CycInt = std::vector<long long>;

    CycInt zero() const { return CycInt(static_cast<std::size_t>(degree()), 0); }
    /// x^e reduced.
    CycInt power_of_zeta(long long e) const;
    /// Reduce an arbitrary integer polynomial modulo Phi_l.
    CycInt reduce(std::vector<long long> poly) const;
    CycInt add(const CycInt& a, const CycInt& b) const;
    bool is_rational(const CycInt& a) const;

private:
    int ell_;
    std::vector<long long> phi_;
};

/// Phi_l by dividing x^l - 1 by Phi_d for each proper divisor d.
std::vector<long long> cyclotomic_polynomial(int ell);

/// Sum over r-tuples of distinct indices in [0, l) of zeta_l^{sum i_j lambda_j}.
long long sigma_direct(const Partition& lambda, int ell);

/// Set-partition formula: blocks whose lambda-sum is divisible by l
/// contribute l^{#blocks} prod (-1)^{s-1} (s-1)!.
long long sigma_formula(const Partition& lambda, int ell);

/// Calls `visit` with each restricted growth string of length r
/// (block labels, first occurrence order).
void for_each_set_partition(int r, const std::function<void(const std::vector<int>&)>& visit);

/// (-1)^{s-1} (s-1)!.
long long block_weight(int s);

}  // namespace eisen::cyclosum
