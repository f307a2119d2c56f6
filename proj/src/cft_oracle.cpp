#include "eisen/cft_oracle.hpp"

#include <algorithm>
#include <exception>

#include "eisen/error.hpp"

namespace eisen::cft_oracle {

int default_level(const upoly::EisensteinPoly& f) {
    const int e = upoly::degree_exponent(f.degree(), f.p());
    if (e == 0) throw DomainError("oracle supports degree p^2 or p^3");
    return e + 1;
}

int required_precision(int p, int level) {
    const zq::UnramRing probe(gf::ResidueField(p, 1), 1);
    const int terms = probe.log_series_length(level);
    int guard = 0;
    for (int k = 1; k <= terms; ++k) guard = std::max(guard, zq::vp(k, p));
    return level + guard;
}

std::vector<std::vector<std::uint64_t>> generator_logs(const upoly::EisensteinPoly& f, int level, int ell_max,
                                                       Schedule schedule) {
    const auto& R = f.ring();
    const auto& k = R.residue();
    const upoly::LocalRing L(f);

    std::vector<zq::QElem> thetas;
    for (std::uint64_t i = 1; i < k.q(); ++i) thetas.push_back(R.teichmuller(k.element(i)));

    const long long total = static_cast<long long>(thetas.size()) * ell_max;
    std::vector<std::vector<std::uint64_t>> out(static_cast<std::size_t>(total));
    auto one = [&](long long idx) {
        const auto& theta = thetas[static_cast<std::size_t>(idx / ell_max)];
        const int ell = static_cast<int>(idx % ell_max) + 1;
        out[static_cast<std::size_t>(idx)] = R.padic_log(L.norm_one_minus(theta, ell), level);
    };

    if (schedule == Schedule::serial) {
        for (long long idx = 0; idx < total; ++idx) one(idx);
        return out;
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long long idx = 0; idx < total; ++idx) {
        try {
            one(idx);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<std::uint64_t> quotient_invariants(std::vector<std::vector<std::uint64_t>> rows, int cols, int p, int e) {
    std::uint64_t mod = 1;
    for (int i = 0; i < e; ++i) mod *= static_cast<std::uint64_t>(p);
    auto val = [&](std::uint64_t x) {
        if (x == 0) return e;
        int v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    };
    auto inv = [&](std::uint64_t u) {
        // u^{-1} mod p^e via Euler: u^{phi(p^e) - 1}.
        std::uint64_t ex = mod / p * (p - 1) - 1, b = u % mod, r = 1 % mod;
        while (ex) {
            if (ex & 1) r = r * b % mod;
            b = b * b % mod;
            ex >>= 1;
        }
        return r;
    };

    const int nrows = static_cast<int>(rows.size());
    std::vector<int> diag_vals;
    int top = 0;  // rows/cols [0, top) are done
    std::vector<int> colmap(static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c) colmap[c] = c;

    while (top < cols && top < nrows) {
        int bi = -1, bj = -1, bv = e;
        for (int i = top; i < nrows && bv > 0; ++i)
            for (int j = top; j < cols; ++j) {
                const int v = val(rows[i][j]);
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                    if (v == 0) break;
                }
            }
        if (bi < 0) break;
        std::swap(rows[top], rows[bi]);
        if (bj != top)
            for (auto& r : rows) std::swap(r[top], r[bj]);

        // The pivot has minimal valuation overall, so both eliminations are
        // exact modulo p^e.
        std::uint64_t pv = 1;
        for (int i = 0; i < bv; ++i) pv *= static_cast<std::uint64_t>(p);
        const std::uint64_t uinv = inv(rows[top][top] / pv);
        for (int i = top + 1; i < nrows; ++i) {
            if (rows[i][top] == 0) continue;
            const std::uint64_t factor = rows[i][top] / pv % mod * uinv % mod;
            for (int j = top; j < cols; ++j)
                rows[i][j] = (rows[i][j] + mod - factor * rows[top][j] % mod) % mod;
        }
        for (int j = top + 1; j < cols; ++j) {
            if (rows[top][j] == 0) continue;
            const std::uint64_t factor = rows[top][j] / pv % mod * uinv % mod;
            for (int i = top; i < nrows; ++i)
                rows[i][j] = (rows[i][j] + mod - factor * rows[i][top] % mod) % mod;
        }
        diag_vals.push_back(bv);
        ++top;
    }
    while (static_cast<int>(diag_vals.size()) < cols) diag_vals.push_back(e);

    std::vector<std::uint64_t> factors;
    for (int v : diag_vals) {
        if (v == 0) continue;
        std::uint64_t pw = 1;
        for (int i = 0; i < v; ++i) pw *= static_cast<std::uint64_t>(p);
        factors.push_back(pw);
    }
    std::sort(factors.begin(), factors.end(), std::greater<>());
    return factors;
}

NormGroupReport norm_subgroup(const upoly::EisensteinPoly& f_in, const OracleOptions& options) {
    const int m = options.level ? options.level : default_level(f_in);
    if (m < 2) throw DomainError("oracle level must be at least 2");
    const int need = required_precision(f_in.p(), m);
    const upoly::EisensteinPoly f =
        f_in.ring().precision() >= need ? f_in : f_in.with_ring(f_in.ring().with_precision(need));

    const int n = f.degree();
    const int ell_max = options.ell_max ? options.ell_max : n * (m - 1);
    auto rows = generator_logs(f, m, ell_max, options.schedule);

    NormGroupReport report;
    report.level = m;
    report.generator_count = static_cast<int>(rows.size());
    report.invariant_factors = quotient_invariants(std::move(rows), f.ring().f(), f.p(), m - 1);
    for (auto x : report.invariant_factors) report.quotient_order *= x;
    report.max_abelian_degree = report.quotient_order;
    return report;
}

OracleVerdicts verdicts_from(const NormGroupReport& report, int n, int p) {
    OracleVerdicts v;
    v.max_abelian_degree = report.max_abelian_degree;
    v.invariant_factors = report.invariant_factors;
    v.cyclic = report.is_cyclic_of(static_cast<std::uint64_t>(n));
    if (n == p * p) {
        v.galois = report.quotient_order == static_cast<std::uint64_t>(n);
        v.elementary_abelian = report.invariant_factors == std::vector<std::uint64_t>{static_cast<std::uint64_t>(p),
                                                                                      static_cast<std::uint64_t>(p)};
    } else {
        v.galois = v.cyclic;
    }
    return v;
}

OracleVerdicts oracle_verdicts(const upoly::EisensteinPoly& f, const OracleOptions& options) {
    return verdicts_from(norm_subgroup(f, options), f.degree(), f.p());
}

}  // namespace eisen::cft_oracle
