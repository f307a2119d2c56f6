#include "eisen/gf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "eisen/error.hpp"

namespace eisen::gf {

namespace {

using Poly = std::vector<long long>;  // ascending coefficients over F_p

long long mod(long long a, long long p) {
    a %= p;
    return a < 0 ? a + p : a;
}

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, long long p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j], p);
    const std::size_t d = m.size() - 1;  // m is monic
    for (std::size_t i = r.size(); i-- > d;) {
        const long long c = r[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= d; ++j) r[i - d + j] = mod(r[i - d + j] - c * m[j], p);
    }
    r.resize(std::min(r.size(), d));
    trim(r);
    return r;
}

Poly poly_rem(Poly a, const Poly& b, long long p) {
    trim(a);
    const long long lead_inv = [&] {
        long long x = b.back(), e = p - 2, r = 1;
        while (e) {
            if (e & 1) r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return r;
    }();
    while (a.size() >= b.size()) {
        const long long c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = mod(a[shift + j] - c * b[j], p);
        trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, long long p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// X^{p^i} mod m for i = 1..f, checking gcd(X^{p^i} - X, m) = 1 for i < f
// and X^{p^f} = X.
bool is_irreducible(const std::vector<int>& modulus, long long p) {
    const Poly m(modulus.begin(), modulus.end());
    const std::size_t f = m.size() - 1;
    if (f == 1) return true;
    Poly x = {0, 1};
    Poly cur = x;
    for (std::size_t i = 1; i <= f; ++i) {
        Poly acc = {1};
        Poly base = cur;
        for (long long e = p; e; e >>= 1) {
            if (e & 1) acc = poly_mulmod(acc, base, m, p);
            base = poly_mulmod(base, base, m, p);
        }
        cur = acc;
        Poly diff = cur;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = mod(diff[1] - 1, p);
        trim(diff);
        if (i < f) {
            if (diff.empty()) return false;
            if (poly_gcd(m, diff, p).size() != 1) return false;
        } else if (!diff.empty()) {
            return false;
        }
    }
    return true;
}

const std::map<std::pair<int, int>, std::vector<int>>& conway_table() {
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{3, 1}, {1, 1}},       {{3, 2}, {2, 2, 1}}, {{3, 3}, {1, 2, 0, 1}},
        {{5, 1}, {3, 1}},       {{5, 2}, {2, 4, 1}}, {{5, 3}, {3, 3, 0, 1}},
        {{7, 1}, {4, 1}},       {{7, 2}, {3, 6, 1}}, {{7, 3}, {4, 0, 6, 1}},
    };
    return table;
}

std::vector<int> default_modulus(int p, int f) {
    if (auto it = conway_table().find({p, f}); it != conway_table().end()) return it->second;
    // First irreducible monic polynomial, counting the lower coefficients as
    // a base-p number.
    std::vector<int> m(static_cast<std::size_t>(f) + 1, 0);
    m[f] = 1;
    for (;;) {
        for (int i = 0; i < f; ++i) {
            if (++m[i] < p) break;
            m[i] = 0;
        }
        if (m[0] != 0 && is_irreducible(m, p)) return m;
    }
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

bool lex_less(const FFElem& a, const FFElem& b) {
    return std::lexicographical_compare(a.c.begin(), a.c.end(), b.c.begin(), b.c.end());
}

ResidueField::ResidueField(int p, int f, std::vector<int> modulus) : p_(p), f_(f) {
    if (p < 3 || !is_prime(p)) throw DomainError("residue characteristic must be an odd prime");
    if (f < 1 || f > kMaxDegree) throw DomainError("residue degree out of supported range");
    q_ = 1;
    for (int i = 0; i < f; ++i) q_ *= static_cast<std::uint64_t>(p);
    if (modulus.empty()) modulus = default_modulus(p, f);
    if (static_cast<int>(modulus.size()) != f + 1)
        throw DomainError("residue modulus must have degree f");
    for (int& c : modulus) c = static_cast<int>(mod(c, p));
    if (modulus.back() != 1) throw DomainError("residue modulus must be monic");
    if (!is_irreducible(modulus, p)) throw DomainError("residue modulus is not irreducible over F_p");
    modulus_ = std::move(modulus);
}

FFElem ResidueField::from_int(long long v) const {
    FFElem x;
    x.c[0] = static_cast<std::uint32_t>(mod(v, p_));
    return x;
}

FFElem ResidueField::from_coeffs(std::span<const long long> coeffs) const {
    if (static_cast<int>(coeffs.size()) > f_) throw DomainError("too many residue coefficients");
    FFElem x;
    for (std::size_t i = 0; i < coeffs.size(); ++i) x.c[i] = static_cast<std::uint32_t>(mod(coeffs[i], p_));
    return x;
}

FFElem ResidueField::generator() const {
    if (f_ == 1) return from_int(-modulus_[0]);
    FFElem t;
    t.c[1] = 1;
    return t;
}

FFElem ResidueField::element(std::uint64_t index) const {
    FFElem x;
    for (int i = f_ - 1; i >= 0; --i) {
        x.c[i] = static_cast<std::uint32_t>(index % p_);
        index /= p_;
    }
    return x;
}

std::uint64_t ResidueField::index(const FFElem& x) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < f_; ++i) idx = idx * p_ + x.c[i];
    return idx;
}

std::vector<FFElem> ResidueField::elements() const {
    std::vector<FFElem> out;
    out.reserve(q_);
    for (std::uint64_t i = 0; i < q_; ++i) out.push_back(element(i));
    return out;
}

bool ResidueField::in_prime_field(const FFElem& x) const {
    for (int i = 1; i < f_; ++i)
        if (x.c[i] != 0) return false;
    return true;
}

FFElem ResidueField::add(const FFElem& a, const FFElem& b) const {
    FFElem r;
    for (int i = 0; i < f_; ++i) {
        const std::uint32_t s = a.c[i] + b.c[i];
        r.c[i] = s >= static_cast<std::uint32_t>(p_) ? s - p_ : s;
    }
    return r;
}

FFElem ResidueField::sub(const FFElem& a, const FFElem& b) const { return add(a, neg(b)); }

FFElem ResidueField::neg(const FFElem& a) const {
    FFElem r;
    for (int i = 0; i < f_; ++i) r.c[i] = a.c[i] == 0 ? 0 : p_ - a.c[i];
    return r;
}

FFElem ResidueField::mul(const FFElem& a, const FFElem& b) const {
    std::array<long long, 2 * kMaxDegree> prod{};
    for (int i = 0; i < f_; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < f_; ++j) prod[i + j] += static_cast<long long>(a.c[i]) * b.c[j];
    }
    for (int i = 2 * f_ - 2; i >= f_; --i) {
        const long long c = prod[i] % p_;
        if (c == 0) continue;
        for (int j = 0; j < f_; ++j) prod[i - f_ + j] -= c * modulus_[j];
    }
    FFElem r;
    for (int i = 0; i < f_; ++i) r.c[i] = static_cast<std::uint32_t>(mod(prod[i], p_));
    return r;
}

FFElem ResidueField::scale(const FFElem& a, long long k) const { return mul(a, from_int(k)); }

FFElem ResidueField::pow(const FFElem& a, std::uint64_t e) const {
    FFElem result = one();
    FFElem base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FFElem ResidueField::inv(const FFElem& a) const {
    if (is_zero(a)) throw DomainError("division by zero in residue field");
    return pow(a, q_ - 2);
}

FFElem ResidueField::div(const FFElem& a, const FFElem& b) const { return mul(a, inv(b)); }

FFElem ResidueField::frobenius(const FFElem& x, long long k, bool inverse) const {
    long long steps = mod(inverse ? -k : k, f_);
    FFElem r = x;
    for (long long i = 0; i < steps; ++i) r = pow(r, static_cast<std::uint64_t>(p_));
    return r;
}

bool ResidueField::is_dth_power(const FFElem& x, std::uint64_t d) const {
    if (is_zero(x)) throw DomainError("power-class test on zero");
    if (d == 0) throw DomainError("power-class test needs d >= 1");
    const std::uint64_t g = std::gcd(d, q_ - 1);
    return pow(x, (q_ - 1) / g) == one();
}

std::vector<FFElem> ResidueField::all_roots_of_power(const FFElem& x, std::uint64_t d) const {
    std::vector<FFElem> out;
    for (std::uint64_t i = 0; i < q_; ++i) {
        FFElem y = element(i);
        if (pow(y, d) == x) out.push_back(y);
    }
    return out;
}

std::optional<FFElem> ResidueField::dth_root(const FFElem& x, std::uint64_t d) const {
    if (!is_dth_power(x, d)) return std::nullopt;
    for (std::uint64_t i = 1; i < q_; ++i) {
        FFElem y = element(i);
        if (pow(y, d) == x) return y;
    }
    throw Error("power-class test and root enumeration disagree");
}

std::string ResidueField::to_string(const FFElem& x) const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < f_; ++i) os << (i ? "," : "") << x.c[i];
    os << ']';
    return os.str();
}

int LinearizedPoly::degree_index() const {
    for (int i = 3; i >= 0; --i)
        if (a[i] != FFElem{}) return i;
    return -1;
}

LinearizedPoly LinearizedPoly::from(std::initializer_list<FFElem> coeffs) {
    if (coeffs.size() > 4) throw DomainError("linearized polynomial degree index above 3");
    LinearizedPoly out;
    std::size_t i = 0;
    for (const FFElem& c : coeffs) out.a[i++] = c;
    return out;
}

FFElem evaluate(const ResidueField& k, const LinearizedPoly& A, const FFElem& x) {
    FFElem acc = k.zero();
    FFElem xp = x;
    for (int i = 0; i < 4; ++i) {
        if (!k.is_zero(A.a[i])) acc = k.add(acc, k.mul(A.a[i], xp));
        xp = k.pow(xp, static_cast<std::uint64_t>(k.p()));
    }
    return acc;
}

AffineSolution solve_linearized(const ResidueField& k, const LinearizedPoly& A, const FFElem& c) {
    if (A.is_zero()) throw DomainError("solve_linearized needs a nonzero additive polynomial");
    const int f = k.f();
    const long long p = k.p();

    // Augmented f x (f+1) matrix over F_p: column j is A(t^j).
    std::vector<std::vector<long long>> m(f, std::vector<long long>(f + 1, 0));
    for (int j = 0; j < f; ++j) {
        FFElem basis;
        basis.c[j] = 1;
        const FFElem img = evaluate(k, A, basis);
        for (int i = 0; i < f; ++i) m[i][j] = img.c[i];
    }
    for (int i = 0; i < f; ++i) m[i][f] = c.c[i];

    auto inv_mod = [p](long long a) {
        long long r = 1, e = p - 2;
        a = mod(a, p);
        while (e) {
            if (e & 1) r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };

    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < f && row < f; ++col) {
        int sel = -1;
        for (int r = row; r < f; ++r)
            if (m[r][col] != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[row], m[sel]);
        const long long iv = inv_mod(m[row][col]);
        for (int j = 0; j <= f; ++j) m[row][j] = m[row][j] * iv % p;
        for (int r = 0; r < f; ++r) {
            if (r == row || m[r][col] == 0) continue;
            const long long factor = m[r][col];
            for (int j = 0; j <= f; ++j) m[r][j] = mod(m[r][j] - factor * m[row][j], p);
        }
        pivot_col.push_back(col);
        ++row;
    }
    const int rank = row;

    AffineSolution sol;
    sol.kernel_dim = f - rank;
    std::uint64_t kernel_size = 1;
    for (int i = 0; i < sol.kernel_dim; ++i) kernel_size *= static_cast<std::uint64_t>(p);
    std::uint64_t expected_roots = 1;
    for (int i = 0; i < A.degree_index(); ++i) expected_roots *= static_cast<std::uint64_t>(p);
    sol.splits_completely = kernel_size == expected_roots;

    for (int r = rank; r < f; ++r)
        if (m[r][f] != 0) return sol;  // inconsistent

    std::vector<int> free_cols;
    for (int col = 0, pi = 0; col < f; ++col) {
        if (pi < rank && pivot_col[pi] == col) {
            ++pi;
            continue;
        }
        free_cols.push_back(col);
    }
    for (std::uint64_t combo = 0; combo < kernel_size; ++combo) {
        std::vector<long long> x(f, 0);
        std::uint64_t rest = combo;
        for (int fc : free_cols) {
            x[fc] = static_cast<long long>(rest % p);
            rest /= p;
        }
        for (int r = 0; r < rank; ++r) {
            long long v = m[r][f];
            for (int fc : free_cols) v -= m[r][fc] * x[fc];
            x[pivot_col[r]] = mod(v, p);
        }
        sol.roots.push_back(k.from_coeffs(x));
    }
    std::sort(sol.roots.begin(), sol.roots.end(), lex_less);
    if (sol.roots.size() != kernel_size) throw Error("affine solution count is not p^dim ker");
    return sol;
}

bool in_range(const ResidueField& k, const LinearizedPoly& A, const FFElem& c) {
    return !solve_linearized(k, A, c).roots.empty();
}

}  // namespace eisen::gf
