#include "eisen/upoly.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "eisen/error.hpp"

namespace eisen::upoly {

EisensteinPoly::EisensteinPoly(UnramRing ring, std::vector<QElem> coeffs)
    : ring_(std::move(ring)), n_(static_cast<int>(coeffs.size())) {
    if (n_ < 1) throw DomainError("Eisenstein polynomial needs degree at least 1");
    if (ring_.precision() < 2) throw DomainError("Eisenstein check needs precision at least 2");
    f_.reserve(coeffs.size() + 1);
    f_.push_back(ring_.one());
    for (auto& c : coeffs) f_.push_back(c);
    for (int i = 1; i <= n_; ++i)
        if (ring_.valuation(f_[i]) < 1) throw DomainError("coefficient f_" + std::to_string(i) + " is not divisible by p");
    if (ring_.valuation(f_[n_]) != 1) throw DomainError("constant term must have valuation exactly 1");
}

std::vector<QElem> EisensteinPoly::ascending() const {
    std::vector<QElem> c(f_.size());
    for (int j = 0; j <= n_; ++j) c[j] = f_[n_ - j];
    return c;
}

EisensteinPoly EisensteinPoly::with_ring(const UnramRing& ring) const {
    std::vector<QElem> c;
    for (int i = 1; i <= n_; ++i)
        c.push_back(ring.precision() < ring_.precision() ? ring_.reduce_to(f_[i], ring.precision()) : f_[i]);
    return EisensteinPoly(ring, std::move(c));
}

int degree_exponent(int n, int p) {
    if (n == p * p) return 2;
    if (n == p * p * p) return 3;
    return 0;
}

EisensteinPoly canonical_truncate(const EisensteinPoly& f) {
    const int e = degree_exponent(f.degree(), f.p());
    if (e == 0) throw DomainError("canonical truncation is defined for degree p^2 or p^3");
    const auto& R = f.ring();
    std::vector<QElem> c;
    for (int i = 1; i <= f.degree(); ++i) {
        const int level = std::min(i == f.degree() ? e + 2 : e + 1, R.precision());
        c.push_back(R.reduce_to(f.coeff(i), level));
    }
    return EisensteinPoly(R, std::move(c));
}

LocalRing::LocalRing(const EisensteinPoly& f) : f_(f), n_(f.degree()), cap_(f.degree() * f.ring().precision()) {
    powers_.reserve(static_cast<std::size_t>(cap_));
    powers_.push_back(one());
    for (int k = 1; k < cap_; ++k) powers_.push_back(mul_pi(powers_.back()));
}

LElem LocalRing::zero() const { return LElem(static_cast<std::size_t>(n_), base().zero()); }

LElem LocalRing::one() const {
    LElem r = zero();
    r[0] = base().one();
    return r;
}

LElem LocalRing::from_base(const QElem& a) const {
    LElem r = zero();
    r[0] = a;
    return r;
}

LElem LocalRing::pi_power(int k) const {
    if (k < 0) throw DomainError("negative power of the uniformizer");
    if (k >= cap_) return zero();
    return powers_[static_cast<std::size_t>(k)];
}

LElem LocalRing::add(const LElem& a, const LElem& b) const {
    LElem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = base().add(a[i], b[i]);
    return r;
}

LElem LocalRing::sub(const LElem& a, const LElem& b) const {
    LElem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = base().sub(a[i], b[i]);
    return r;
}

LElem LocalRing::scale(const LElem& a, const QElem& c) const {
    LElem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = base().mul(a[i], c);
    return r;
}

LElem LocalRing::mul_pi(const LElem& a) const {
    const auto& R = base();
    LElem r = zero();
    for (int j = 1; j < n_; ++j) r[j] = a[j - 1];
    const QElem top = a[n_ - 1];
    if (!R.is_zero(top))
        for (int i = 1; i <= n_; ++i) r[n_ - i] = R.sub(r[n_ - i], R.mul(top, f_.coeff(i)));
    return r;
}

LElem LocalRing::mul(const LElem& a, const LElem& b) const {
    const auto& R = base();
    std::vector<QElem> prod(static_cast<std::size_t>(2 * n_ - 1), R.zero());
    for (int i = 0; i < n_; ++i) {
        if (R.is_zero(a[i])) continue;
        for (int j = 0; j < n_; ++j) prod[i + j] = R.add(prod[i + j], R.mul(a[i], b[j]));
    }
    for (int d = 2 * n_ - 2; d >= n_; --d) {
        const QElem c = prod[d];
        if (R.is_zero(c)) continue;
        // pi^n = -(f_1 pi^{n-1} + ... + f_n)
        for (int i = 1; i <= n_; ++i) prod[d - i] = R.sub(prod[d - i], R.mul(c, f_.coeff(i)));
    }
    prod.resize(static_cast<std::size_t>(n_));
    return prod;
}

LElem LocalRing::pow(const LElem& a, std::uint64_t e) const {
    LElem result = one();
    LElem b = a;
    while (e) {
        if (e & 1) result = mul(result, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return result;
}

int LocalRing::valuation(const LElem& a) const {
    int v = cap_;
    for (int i = 0; i < n_; ++i) {
        if (base().is_zero(a[i])) continue;
        v = std::min(v, n_ * base().valuation(a[i]) + i);
    }
    return v;
}

namespace {

int scalar_valuation(std::uint64_t a, std::uint64_t p, int N) {
    if (a == 0) return N;
    int v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

// Same elimination as local_determinant on plain residues mod p^N (f = 1).
QElem scalar_determinant(const UnramRing& R, const std::vector<QElem>& src, int size) {
    const int N = R.precision();
    const std::uint64_t M = R.modulus();
    const auto p = static_cast<std::uint64_t>(R.p());
    std::vector<std::uint64_t> m(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) m[i] = src[i].c[0];
    auto row = [&](int i) { return m.data() + static_cast<std::size_t>(i) * size; };

    std::uint64_t det = 1;
    bool negate = false;
    for (int k = 0; k < size; ++k) {
        int best = -1;
        int best_v = N;
        for (int i = k; i < size; ++i) {
            const int v = scalar_valuation(row(i)[k], p, N);
            if (v < best_v) {
                best_v = v;
                best = i;
                if (v == 0) break;
            }
        }
        if (best < 0) return R.zero();
        if (best != k) {
            std::swap_ranges(row(k) + k, row(k) + size, row(best) + k);
            negate = !negate;
        }
        const std::uint64_t pivot = row(k)[k];
        det = det * pivot % M;
        std::uint64_t pv = 1;
        for (int i = 0; i < best_v; ++i) pv *= p;
        QElem unit;
        unit.c[0] = pivot / pv;
        const std::uint64_t unit_inv = R.inv(unit).c[0];
        const std::uint64_t* rk = row(k);
        for (int i = k + 1; i < size; ++i) {
            std::uint64_t* ri = row(i);
            if (ri[k] == 0) continue;
            const std::uint64_t factor = (ri[k] / pv) % M * unit_inv % M;
            for (int j = k + 1; j < size; ++j) {
                if (rk[j] == 0) continue;
                ri[j] = (ri[j] + M - factor * rk[j] % M) % M;
            }
        }
    }
    QElem out;
    out.c[0] = negate && det ? M - det : det;
    return out;
}

}  // namespace

QElem local_determinant(const UnramRing& R, std::vector<QElem> m, int size) {
    if (R.f() == 1) return scalar_determinant(R, m, size);
    const int N = R.precision();
    QElem det = R.one();
    bool negate = false;
    auto at = [&](int i, int j) -> QElem& { return m[static_cast<std::size_t>(i) * size + j]; };
    for (int k = 0; k < size; ++k) {
        int best = -1;
        int best_v = N;
        for (int i = k; i < size; ++i) {
            const int v = R.valuation(at(i, k));
            if (v < best_v) {
                best_v = v;
                best = i;
                if (v == 0) break;
            }
        }
        if (best < 0) return R.zero();
        if (best != k) {
            for (int j = k; j < size; ++j) std::swap(at(k, j), at(best, j));
            negate = !negate;
        }
        const QElem pivot = at(k, k);
        det = R.mul(det, pivot);
        // Quotients are only known mod p^{N-v}; the discrepancy is absorbed
        // by the factor p^v already multiplied into det.
        const QElem unit_inv = R.inv(R.exact_div_p(pivot, best_v));
        for (int i = k + 1; i < size; ++i) {
            if (R.is_zero(at(i, k))) continue;
            const QElem factor = R.mul(R.exact_div_p(at(i, k), best_v), unit_inv);
            for (int j = k + 1; j < size; ++j) {
                if (R.is_zero(at(k, j))) continue;
                at(i, j) = R.sub(at(i, j), R.mul(factor, at(k, j)));
            }
        }
    }
    return negate ? R.neg(det) : det;
}

QElem LocalRing::norm(const LElem& x) const {
    std::vector<QElem> m(static_cast<std::size_t>(n_) * n_);
    LElem col = x;
    for (int j = 0; j < n_; ++j) {
        for (int i = 0; i < n_; ++i) m[static_cast<std::size_t>(i) * n_ + j] = col[i];
        if (j + 1 < n_) col = mul_pi(col);
    }
    return local_determinant(base(), std::move(m), n_);
}

QElem LocalRing::norm_one_minus(const QElem& theta, int ell) const {
    if (ell < 1) throw DomainError("norm_one_minus needs l >= 1");
    const auto& R = base();
    if (R.is_zero(theta)) return R.one();
    std::vector<QElem> m(static_cast<std::size_t>(n_) * n_, R.zero());
    for (int j = 0; j < n_; ++j) {
        m[static_cast<std::size_t>(j) * n_ + j] = R.one();
        const int k = ell + j;
        if (k >= cap_) continue;
        const LElem& pk = powers_[static_cast<std::size_t>(k)];
        for (int i = 0; i < n_; ++i) {
            auto& e = m[static_cast<std::size_t>(i) * n_ + j];
            e = R.sub(e, R.mul(theta, pk[i]));
        }
    }
    return local_determinant(R, std::move(m), n_);
}

QElem norm_from_L(const EisensteinPoly& f, const LElem& x) { return LocalRing(f).norm(x); }

QElem norm_one_minus(const EisensteinPoly& f, const QElem& theta, int ell) {
    return LocalRing(f).norm_one_minus(theta, ell);
}

std::vector<QElem> reverse_poly(const std::vector<QElem>& a) { return {a.rbegin(), a.rend()}; }

QElem evaluate(const UnramRing& R, const std::vector<QElem>& a, const QElem& x) {
    QElem acc = R.zero();
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = R.add(R.mul(acc, x), *it);
    return acc;
}

std::vector<int> RamificationData::lower_breaks() const {
    std::vector<int> out;
    for (const auto& s : segments)
        if (s.slope_den == 1) out.push_back(static_cast<int>(s.slope_num) - 1);
    return out;
}

bool RamificationData::all_integral() const {
    for (const auto& s : segments)
        if (s.slope_den != 1) return false;
    return true;
}

RamificationData ramification_data(const EisensteinPoly& f) {
    const LocalRing L(f);
    const auto& R = f.ring();
    const int n = f.degree();
    const auto c = f.ascending();
    const std::uint64_t M = R.modulus();

    // Pascal's triangle mod p^N.
    std::vector<std::vector<std::uint64_t>> binom(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        binom[i].assign(static_cast<std::size_t>(i + 1), 1);
        for (int k = 1; k < i; ++k) binom[i][k] = (binom[i - 1][k - 1] + binom[i - 1][k]) % M;
    }

    RamificationData out;
    out.unknown = n * R.precision();
    out.coefficient_valuations.assign(static_cast<std::size_t>(n + 1), out.unknown);
    for (int k = 0; k <= n; ++k) {
        LElem a = L.zero();
        for (int i = k; i <= n; ++i) {
            if (R.is_zero(c[i])) continue;
            const QElem s = R.mul(c[i], R.from_int(static_cast<long long>(binom[i][k])));
            a = L.add(a, L.scale(L.pi_power(i - k), s));
        }
        out.coefficient_valuations[k] = L.valuation(a);
    }

    // Lower hull of the points (k, v_k), 1 <= k <= n, over known values.
    const auto& v = out.coefficient_valuations;
    if (v[1] >= out.unknown) throw PrecisionError("v_L(f'(pi)) is beyond the working precision");
    std::vector<int> hull{1};
    for (int k = 2; k <= n; ++k) {
        if (v[k] >= out.unknown) continue;
        while (hull.size() >= 2) {
            const int a = hull[hull.size() - 2], b = hull.back();
            // Drop b if it lies on or above the segment a -> k.
            const long long lhs = static_cast<long long>(v[b] - v[a]) * (k - a);
            const long long rhs = static_cast<long long>(v[k] - v[a]) * (b - a);
            if (lhs >= rhs) hull.pop_back();
            else break;
        }
        hull.push_back(k);
    }
    for (int k = 2; k < n; ++k) {
        if (v[k] < out.unknown) continue;
        const auto right = std::upper_bound(hull.begin(), hull.end(), k);
        const int a = *(right - 1), b = *right;
        // Hull height at k, compared without division.
        const long long scaled = static_cast<long long>(v[a]) * (b - a) + static_cast<long long>(v[b] - v[a]) * (k - a);
        if (scaled > static_cast<long long>(out.unknown) * (b - a))
            throw PrecisionError("an unresolved coefficient of f(X+pi) may lie on the Newton polygon");
    }
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const int a = hull[s], b = hull[s + 1];
        long long num = v[a] - v[b];
        long long den = b - a;
        const long long g = std::gcd(num, den);
        out.segments.push_back({num / g, den / g, b - a});
    }
    std::sort(out.segments.begin(), out.segments.end(), [](const PolygonSegment& x, const PolygonSegment& y) {
        return x.slope_num * y.slope_den < y.slope_num * x.slope_den;
    });
    return out;
}

int moebius(int k) {
    int result = 1;
    for (int d = 2; d * d <= k; ++d) {
        if (k % d) continue;
        k /= d;
        if (k % d == 0) return 0;
        result = -result;
    }
    if (k > 1) result = -result;
    return result;
}

namespace {

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    long long t = 0, new_t = 1;
    long long r = static_cast<long long>(m), new_r = static_cast<long long>(a % m);
    while (new_r) {
        const long long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw DomainError("no modular inverse");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<long long>(m) : t);
}

}  // namespace

LElem artin_hasse_element(const LocalRing& L, const QElem& theta, int ell, AHScaling scaling) {
    const auto& R = L.base();
    const int p = R.p();
    if (ell < 1 || ell % p == 0) throw DomainError("Artin-Hasse norm needs l prime to p");
    const int n = L.degree();
    const int cap = n * R.precision();

    // Principal units of O_L/p^N have exponent dividing p^E.
    int log_n = 0;
    for (long long t = 1; t < n; t *= p) ++log_n;
    const int E = R.precision() + log_n + 1;
    std::uint64_t pE = 1;
    for (int i = 0; i < E; ++i) pE *= static_cast<std::uint64_t>(p);

    const QElem inv_ell = scaling == AHScaling::unit ? R.one() : R.inv(R.from_int(ell));
    LElem result = L.one();
    for (int k = 1; static_cast<long long>(k) * ell < cap; ++k) {
        if (k % p == 0) continue;
        const int mu = moebius(k);
        if (mu == 0) continue;
        const QElem coef = R.mul(inv_ell, R.pow(theta, static_cast<std::uint64_t>(k)));
        const LElem factor = L.sub(L.one(), L.scale(L.pi_power(k * ell), coef));
        const std::uint64_t kinv = inverse_mod(static_cast<std::uint64_t>(k), pE);
        const std::uint64_t e = mu > 0 ? kinv : (pE - kinv) % pE;
        result = L.mul(result, L.pow(factor, e));
    }
    return result;
}

QElem artin_hasse_norm(const EisensteinPoly& f, const QElem& theta, int ell, AHScaling scaling) {
    const LocalRing L(f);
    return L.norm(artin_hasse_element(L, theta, ell, scaling));
}

}  // namespace eisen::upoly
