#pragma once

// K^x / N(L^x) for totally ramified L/K, from the norms of the generators
// 1 - theta pi^l of U_{1,L}, read through the p-adic logarithm.

#include <cstdint>
#include <vector>

#include "eisen/upoly.hpp"

namespace eisen::cft_oracle {

struct NormGroupReport {
    int level = 0;  // quotient computed in U_{1,K}/U_{m,K}
    int generator_count = 0;
    std::vector<std::uint64_t> invariant_factors;  // decreasing prime powers
    std::uint64_t quotient_order = 1;
    std::uint64_t max_abelian_degree = 1;

    bool is_cyclic_of(std::uint64_t n) const {
        return invariant_factors.size() == 1 && invariant_factors[0] == n;
    }
};

enum class Schedule { serial, parallel };

struct OracleOptions {
    int level = 0;    // 0: 3 for degree p^2, 4 for degree p^3
    int ell_max = 0;  // 0: n(m-1)
    Schedule schedule = Schedule::parallel;
};

/// Standard level for the degree (3 for p^2, 4 for p^3).
int default_level(const upoly::EisensteinPoly& f);

/// Log coordinates (length f, mod p^{m-1}) of N(1 - theta pi^l) for each
/// nonzero Teichmueller theta (outer, residue-index order) and 1 <= l <= ell_max
/// (inner). The polynomial must already carry enough precision.
std::vector<std::vector<std::uint64_t>> generator_logs(const upoly::EisensteinPoly& f, int level, int ell_max,
                                                       Schedule schedule);

/// Invariant factors of (Z/p^e)^cols modulo the row span, by minimal
/// valuation pivoting. Returned in decreasing order, trivial factors omitted.
std::vector<std::uint64_t> quotient_invariants(std::vector<std::vector<std::uint64_t>> rows, int cols, int p, int e);

/// Precision needed to evaluate logs at `level`.
int required_precision(int p, int level);

NormGroupReport norm_subgroup(const upoly::EisensteinPoly& f, const OracleOptions& options = {});

struct OracleVerdicts {
    bool galois = false;               // degree p^2 only
    bool cyclic = false;
    bool elementary_abelian = false;   // degree p^2 only
    std::uint64_t max_abelian_degree = 1;
    std::vector<std::uint64_t> invariant_factors;
};

OracleVerdicts verdicts_from(const NormGroupReport& report, int n, int p);
OracleVerdicts oracle_verdicts(const upoly::EisensteinPoly& f, const OracleOptions& options = {});

}  // namespace eisen::cft_oracle
