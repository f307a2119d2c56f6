#pragma once

// Residue field F_{p^f} = F_p[t]/(m(t)) and the additive (linearized)
// polynomials acting on it.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eisen::gf {

inline constexpr int kMaxDegree = 8;

/// Element of F_{p^f}: coefficients of 1, t, ..., t^{f-1}, each in [0, p).
/// Entries past f are always zero, so defaulted comparison is meaningful.
struct FFElem {
    std::array<std::uint32_t, kMaxDegree> c{};

    friend bool operator==(const FFElem&, const FFElem&) = default;
};

/// Lexicographic order on the coefficient sequence (c0 first).
bool lex_less(const FFElem& a, const FFElem& b);

class ResidueField {
public:
    /// `modulus` is ascending and monic of degree f; empty selects the
    /// built-in default (Conway polynomial where tabulated).
    ResidueField(int p, int f, std::vector<int> modulus = {});

    int p() const { return p_; }
    int f() const { return f_; }
    std::uint64_t q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    FFElem zero() const { return {}; }
    FFElem one() const { return from_int(1); }
    FFElem from_int(long long v) const;
    FFElem from_coeffs(std::span<const long long> coeffs) const;
    /// The generator t of the field over F_p (t = -m0 when f = 1).
    FFElem generator() const;

    /// Elements are numbered in lexicographic order, 0 .. q-1.
    FFElem element(std::uint64_t index) const;
    std::uint64_t index(const FFElem& x) const;
    std::vector<FFElem> elements() const;

    bool is_zero(const FFElem& x) const { return x == FFElem{}; }
    bool in_prime_field(const FFElem& x) const;

    FFElem add(const FFElem& a, const FFElem& b) const;
    FFElem sub(const FFElem& a, const FFElem& b) const;
    FFElem neg(const FFElem& a) const;
    FFElem mul(const FFElem& a, const FFElem& b) const;
    FFElem scale(const FFElem& a, long long k) const;
    FFElem inv(const FFElem& a) const;
    FFElem div(const FFElem& a, const FFElem& b) const;
    FFElem pow(const FFElem& a, std::uint64_t e) const;

    /// x^{p^k}, or with `inverse` the unique y with y^{p^k} = x.
    FFElem frobenius(const FFElem& x, long long k, bool inverse = false) const;

    /// Some d-th root of x (lexicographically first) when x lies in
    /// (F_q^x)^d, nullopt otherwise. Throws DomainError for x = 0.
    std::optional<FFElem> dth_root(const FFElem& x, std::uint64_t d) const;
    bool is_dth_power(const FFElem& x, std::uint64_t d) const;
    /// Every y with y^d = x, in lexicographic order.
    std::vector<FFElem> all_roots_of_power(const FFElem& x, std::uint64_t d) const;

    std::string to_string(const FFElem& x) const;

private:
    int p_;
    int f_;
    std::uint64_t q_;
    std::vector<int> modulus_;
};

/// Sum of a_i Y^{p^i}, 0 <= i <= 3.
struct LinearizedPoly {
    std::array<FFElem, 4> a{};

    /// Highest i with a_i != 0, or -1 for the zero polynomial.
    int degree_index() const;
    bool is_zero() const { return degree_index() < 0; }

    static LinearizedPoly from(std::initializer_list<FFElem> coeffs);
};

FFElem evaluate(const ResidueField& k, const LinearizedPoly& A, const FFElem& x);

struct AffineSolution {
    std::vector<FFElem> roots;   // all x with A(x) = c, lexicographic
    int kernel_dim = 0;          // dimension of ker A over F_p
    bool splits_completely = false;  // #ker A == p^{degree index}
};

/// Solves A(x) = c over the residue field by linear algebra over F_p.
AffineSolution solve_linearized(const ResidueField& k, const LinearizedPoly& A,
                                const FFElem& c);

/// Convenience: whether c lies in A(k).
bool in_range(const ResidueField& k, const LinearizedPoly& A, const FFElem& c);

}  // namespace eisen::gf
