#include "eisen/zq.hpp"

#include <algorithm>
#include <sstream>

#include "eisen/error.hpp"

namespace eisen::zq {

int vp(long long n, int p) {
    if (n == 0) throw DomainError("valuation of zero integer");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

UnramRing::UnramRing(gf::ResidueField residue, int precision)
    : residue_(std::move(residue)), precision_(precision) {
    if (precision < 1) throw DomainError("working precision must be at least 1");
    if (residue_.f() > kMaxDegree) throw DomainError("residue degree too large for the unramified ring");
    pN_ = 1;
    for (int i = 0; i < precision; ++i) {
        pN_ *= static_cast<std::uint64_t>(residue_.p());
        if (pN_ >= (std::uint64_t{1} << 31)) throw DomainError("p^N exceeds the supported word size");
    }
    for (int c : residue_.modulus()) lift_modulus_.push_back(static_cast<std::uint64_t>(c));
}

QElem UnramRing::from_int(long long v) const {
    QElem a;
    const long long m = static_cast<long long>(pN_);
    long long r = v % m;
    a.c[0] = static_cast<std::uint64_t>(r < 0 ? r + m : r);
    return a;
}

QElem UnramRing::from_coeffs(std::span<const long long> coeffs) const {
    if (static_cast<int>(coeffs.size()) > f()) throw DomainError("too many coordinates for O_K element");
    QElem a;
    const long long m = static_cast<long long>(pN_);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        long long r = coeffs[i] % m;
        a.c[i] = static_cast<std::uint64_t>(r < 0 ? r + m : r);
    }
    return a;
}

QElem UnramRing::lift(const gf::FFElem& r) const {
    QElem a;
    for (int i = 0; i < f(); ++i) a.c[i] = r.c[i];
    return a;
}

gf::FFElem UnramRing::reduce(const QElem& a) const {
    gf::FFElem r;
    for (int i = 0; i < f(); ++i) r.c[i] = static_cast<std::uint32_t>(a.c[i] % p());
    return r;
}

QElem UnramRing::add(const QElem& a, const QElem& b) const {
    QElem r;
    for (int i = 0; i < f(); ++i) {
        const std::uint64_t s = a.c[i] + b.c[i];
        r.c[i] = s >= pN_ ? s - pN_ : s;
    }
    return r;
}

QElem UnramRing::neg(const QElem& a) const {
    QElem r;
    for (int i = 0; i < f(); ++i) r.c[i] = a.c[i] == 0 ? 0 : pN_ - a.c[i];
    return r;
}

QElem UnramRing::sub(const QElem& a, const QElem& b) const { return add(a, neg(b)); }

QElem UnramRing::mul(const QElem& a, const QElem& b) const {
    const int n = f();
    if (n == 1) {
        QElem r;
        r.c[0] = a.c[0] * b.c[0] % pN_;
        return r;
    }
    std::array<std::uint64_t, 2 * kMaxDegree> prod{};
    for (int i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + a.c[i] * b.c[j]) % pN_;
    }
    for (int i = 2 * n - 2; i >= n; --i) {
        const std::uint64_t c = prod[i];
        if (c == 0) continue;
        for (int j = 0; j < n; ++j) {
            const std::uint64_t t = c * lift_modulus_[j] % pN_;
            prod[i - n + j] = (prod[i - n + j] + pN_ - t) % pN_;
        }
    }
    QElem r;
    for (int i = 0; i < n; ++i) r.c[i] = prod[i];
    return r;
}

QElem UnramRing::scale(const QElem& a, long long k) const { return mul(a, from_int(k)); }

QElem UnramRing::pow(const QElem& a, std::uint64_t e) const {
    QElem result = one();
    QElem base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

QElem UnramRing::inv(const QElem& a) const {
    if (valuation(a) != 0) throw DomainError("inverting a non-unit of O_K");
    QElem y = lift(residue_.inv(reduce(a)));
    const QElem two = from_int(2);
    for (int prec = 1; prec < precision_; prec *= 2) y = mul(y, sub(two, mul(a, y)));
    if (mul(a, y) != one()) throw Error("Newton inverse failed to converge");
    return y;
}

int UnramRing::valuation(const QElem& a) const {
    int v = precision_;
    for (int i = 0; i < f(); ++i) {
        std::uint64_t c = a.c[i];
        if (c == 0) continue;
        int k = 0;
        while (c % p() == 0) {
            c /= p();
            ++k;
        }
        v = std::min(v, k);
    }
    return v;
}

QElem UnramRing::teichmuller(const gf::FFElem& r) const {
    QElem t = lift(r);
    for (int i = 0; i <= precision_; ++i) {
        const QElem next = pow(t, residue_.q());
        if (next == t) return t;
        t = next;
    }
    throw Error("Teichmuller iteration did not stabilise");
}

QElem UnramRing::exact_div_p(const QElem& a, int k) const {
    if (k < 0 || k > precision_) throw DomainError("exact division exponent out of range");
    if (valuation(a) < k) throw DomainError("exact division by p^k of an element of smaller valuation");
    std::uint64_t pk = 1;
    for (int i = 0; i < k; ++i) pk *= static_cast<std::uint64_t>(p());
    const std::uint64_t m = pN_ / pk;
    QElem b;
    for (int i = 0; i < f(); ++i) b.c[i] = (a.c[i] / pk) % m;
    return b;
}

QElem UnramRing::reduce_to(const QElem& a, int m) const {
    if (m < 0 || m > precision_) throw DomainError("reduction level out of range");
    std::uint64_t pm = 1;
    for (int i = 0; i < m; ++i) pm *= static_cast<std::uint64_t>(p());
    QElem b;
    for (int i = 0; i < f(); ++i) b.c[i] = a.c[i] % pm;
    return b;
}

int UnramRing::log_series_length(int m) const {
    // Smallest K with K - floor(log_p K) >= m, plus one term.
    int K = 1;
    for (;; ++K) {
        int lg = 0;
        for (long long t = p(); t <= K; t *= p()) ++lg;
        if (K - lg >= m) break;
    }
    return K + 1;
}

std::vector<std::uint64_t> UnramRing::padic_log(const QElem& u, int m) const {
    if (m < 2) throw DomainError("log level must be at least 2");
    const QElem x = sub(u, one());
    if (valuation(x) < 1) throw DomainError("padic_log needs a principal unit");
    const int terms = log_series_length(m);
    int guard = 0;
    for (int k = 1; k <= terms; ++k) guard = std::max(guard, vp(k, p()));
    if (precision_ < m + guard) throw PrecisionError("working precision too small for the logarithm level");

    std::uint64_t pm = 1;
    for (int i = 0; i < m; ++i) pm *= static_cast<std::uint64_t>(p());
    const UnramRing level = with_precision(m);

    QElem sum = level.zero();
    QElem xk = one();
    for (int k = 1; k <= terms; ++k) {
        xk = mul(xk, x);
        const int e = vp(k, p());
        long long unit = k;
        for (int i = 0; i < e; ++i) unit /= p();
        QElem term = reduce_to(exact_div_p(xk, e), m);
        term = level.mul(term, level.inv(level.from_int(unit)));
        sum = (k % 2 == 1) ? level.add(sum, term) : level.sub(sum, term);
    }
    if (level.valuation(sum) < 1) throw Error("logarithm of a principal unit not divisible by p");
    const QElem scaled = level.exact_div_p(sum, 1);
    std::vector<std::uint64_t> out(static_cast<std::size_t>(f()));
    for (int i = 0; i < f(); ++i) out[i] = scaled.c[i] % (pm / p());
    return out;
}

std::string UnramRing::to_string(const QElem& a) const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < f(); ++i) os << (i ? "," : "") << a.c[i];
    os << ']';
    return os.str();
}

}  // namespace eisen::zq
