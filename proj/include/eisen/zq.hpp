#pragma once

// The unramified ring O_K = W(F_{p^f}) truncated at p^N, represented as
// (Z/p^N)[x]/(M(x)) with M an integer lift of the residue modulus.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eisen/gf.hpp"

namespace eisen::zq {

inline constexpr int kMaxDegree = 4;

/// Coordinates in the basis 1, x, ..., x^{f-1}; each in [0, p^N).
struct QElem {
    std::array<std::uint64_t, kMaxDegree> c{};

    friend bool operator==(const QElem&, const QElem&) = default;
};

class UnramRing {
public:
    UnramRing(gf::ResidueField residue, int precision);

    const gf::ResidueField& residue() const { return residue_; }
    int p() const { return residue_.p(); }
    int f() const { return residue_.f(); }
    int precision() const { return precision_; }
    /// p^N.
    std::uint64_t modulus() const { return pN_; }
    const std::vector<std::uint64_t>& lift_modulus() const { return lift_modulus_; }

    /// Same residue field at another precision; values move between the two
    /// only through `reduce_to` / `embed`.
    UnramRing with_precision(int precision) const { return UnramRing(residue_, precision); }

    QElem zero() const { return {}; }
    QElem one() const { return from_int(1); }
    QElem from_int(long long v) const;
    QElem from_coeffs(std::span<const long long> coeffs) const;
    /// Digit-wise lift of a residue (coordinates in [0, p)).
    QElem lift(const gf::FFElem& r) const;
    gf::FFElem reduce(const QElem& a) const;

    bool is_zero(const QElem& a) const { return a == QElem{}; }
    QElem add(const QElem& a, const QElem& b) const;
    QElem sub(const QElem& a, const QElem& b) const;
    QElem neg(const QElem& a) const;
    QElem mul(const QElem& a, const QElem& b) const;
    QElem scale(const QElem& a, long long k) const;
    QElem pow(const QElem& a, std::uint64_t e) const;
    /// Inverse of a unit, by Newton iteration from the residue inverse.
    QElem inv(const QElem& a) const;

    /// Largest k <= N with p^k dividing every coordinate (N for zero).
    int valuation(const QElem& a) const;

    /// The multiplicative representative of r.
    QElem teichmuller(const gf::FFElem& r) const;

    /// b with p^k b = a, meaningful modulo p^{N-k} (coordinates reduced
    /// there). Throws DomainError when valuation(a) < k.
    QElem exact_div_p(const QElem& a, int k) const;
    /// Residue of a / p^k.
    gf::FFElem residue_of_div(const QElem& a, int k) const { return reduce(exact_div_p(a, k)); }

    /// a mod p^{m}, for m <= N.
    QElem reduce_to(const QElem& a, int m) const;

    /// Coordinates of log(u)/p modulo p^{m-1}; u must be a principal unit.
    std::vector<std::uint64_t> padic_log(const QElem& u, int m) const;
    /// Number of series terms used by padic_log at level m.
    int log_series_length(int m) const;

    std::string to_string(const QElem& a) const;

private:
    gf::ResidueField residue_;
    int precision_;
    std::uint64_t pN_;
    std::vector<std::uint64_t> lift_modulus_;  // ascending, monic, degree f
};

/// Exact p-adic valuation of a nonzero integer.
int vp(long long n, int p);

}  // namespace eisen::zq
