#pragma once

// Eisenstein polynomials over O_K and the ring O_L = O_K[X]/(f).

#include <cstdint>
#include <vector>

#include "eisen/zq.hpp"

namespace eisen::upoly {

using zq::QElem;
using zq::UnramRing;

/// f(X) = X^n + f_1 X^{n-1} + ... + f_n. `coeff(i)` is f_i, i in [0, n],
/// with f_0 = 1.
class EisensteinPoly {
public:
    /// `coeffs` holds f_1..f_n. Throws DomainError unless p | f_i and
    /// v(f_n) = 1.
    EisensteinPoly(UnramRing ring, std::vector<QElem> coeffs);

    const UnramRing& ring() const { return ring_; }
    int degree() const { return n_; }
    int p() const { return ring_.p(); }
    const QElem& coeff(int i) const { return f_[static_cast<std::size_t>(i)]; }
    /// f_1..f_n.
    std::vector<QElem> coeffs() const { return {f_.begin() + 1, f_.end()}; }
    /// Ascending coefficient list c_0..c_n (c_j multiplies X^j).
    std::vector<QElem> ascending() const;

    /// Same coefficients over `ring` (precision change); values are
    /// reduced if the new precision is smaller.
    EisensteinPoly with_ring(const UnramRing& ring) const;

    friend bool operator==(const EisensteinPoly& a, const EisensteinPoly& b) {
        return a.n_ == b.n_ && a.f_ == b.f_;
    }

private:
    UnramRing ring_;
    int n_;
    std::vector<QElem> f_;
};

/// log_p of the degree when it is p^2 or p^3, else 0.
int degree_exponent(int n, int p);

/// Reduce f_i mod p^3 (i < n) and f_n mod p^4 for degree p^2; p^4 and p^5
/// for degree p^3.
EisensteinPoly canonical_truncate(const EisensteinPoly& f);

/// Element sum a_i pi^i of O_L, i in [0, n).
using LElem = std::vector<QElem>;

class LocalRing {
public:
    explicit LocalRing(const EisensteinPoly& f);

    const EisensteinPoly& poly() const { return f_; }
    const UnramRing& base() const { return f_.ring(); }
    int degree() const { return f_.degree(); }

    LElem zero() const;
    LElem one() const;
    LElem from_base(const QElem& a) const;
    /// pi^k, reduced; zero once k >= n*N.
    LElem pi_power(int k) const;

    LElem add(const LElem& a, const LElem& b) const;
    LElem sub(const LElem& a, const LElem& b) const;
    LElem scale(const LElem& a, const QElem& c) const;
    LElem mul(const LElem& a, const LElem& b) const;
    LElem mul_pi(const LElem& a) const;
    LElem pow(const LElem& a, std::uint64_t e) const;

    /// min over coordinates of n*v_K(a_i) + i; n*N when every coordinate
    /// vanishes ("at least n*N").
    int valuation(const LElem& a) const;

    /// Determinant of multiplication by x on the basis 1, pi, ..., pi^{n-1}.
    QElem norm(const LElem& x) const;
    /// N(1 - theta pi^l), using cached powers of pi.
    QElem norm_one_minus(const QElem& theta, int ell) const;

private:
    void ensure_powers(int k) const;

    EisensteinPoly f_;
    int n_;
    int cap_;  // n*N: pi^k = 0 from here on
    mutable std::vector<LElem> powers_;
};

/// Determinant over O_K/p^N by minimal-valuation pivoting. `m` is
/// row-major, size*size; it is consumed.
QElem local_determinant(const UnramRing& R, std::vector<QElem> m, int size);

QElem norm_from_L(const EisensteinPoly& f, const LElem& x);
QElem norm_one_minus(const EisensteinPoly& f, const QElem& theta, int ell);

/// X^d a(1/X) for an ascending coefficient list of length d+1.
std::vector<QElem> reverse_poly(const std::vector<QElem>& a);
QElem evaluate(const UnramRing& R, const std::vector<QElem>& a, const QElem& x);

struct PolygonSegment {
    /// Valuation of the roots of f(X+pi) on this segment, as num/den.
    long long slope_num = 0;
    long long slope_den = 1;
    int length = 0;

    friend bool operator==(const PolygonSegment&, const PolygonSegment&) = default;
};

struct RamificationData {
    /// v_L of the X^k coefficient of f(X+pi), k in [0, n]; entries equal to
    /// `unknown` are only known to be at least that large.
    std::vector<int> coefficient_valuations;
    int unknown = 0;
    /// Segments of the lower convex hull, in increasing root valuation.
    std::vector<PolygonSegment> segments;

    /// Lower breaks (slope - 1) of the integral segments, increasing.
    std::vector<int> lower_breaks() const;
    /// Every segment has integral slope, so the breaks describe the whole polygon.
    bool all_integral() const;
};

/// Newton polygon of f(X+pi)/X over L. Throws PrecisionError when an
/// unresolved coefficient could lie on the hull.
RamificationData ramification_data(const EisensteinPoly& f);

enum class AHScaling {
    inverse_ell,  // factors 1 - theta^k pi^{kl}/l
    unit,         // factors 1 - theta^k pi^{kl}
};

/// E(theta pi^l) as the truncated product of (1 - s theta^k pi^{kl})^{mu(k)/k}
/// over k prime to p, followed by its norm. Requires gcd(l, p) = 1.
QElem artin_hasse_norm(const EisensteinPoly& f, const QElem& theta, int ell,
                       AHScaling scaling = AHScaling::inverse_ell);
LElem artin_hasse_element(const LocalRing& L, const QElem& theta, int ell,
                          AHScaling scaling = AHScaling::inverse_ell);

/// Moebius function.
int moebius(int k);

}  // namespace eisen::upoly
