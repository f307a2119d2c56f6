#pragma once

// Degree p^3: the closed-form cyclicity conditions, numbered 1..18, and a
// generator of conforming polynomials and near misses.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eisen/gf.hpp"
#include "eisen/upoly.hpp"

namespace eisen::classify3 {

using gf::FFElem;

inline constexpr int kConditionCount = 18;

struct ConditionRecord {
    int id = 0;
    bool pass = false;
    std::string reason;
    /// Indices l at which a per-l condition fails.
    std::vector<int> failed_at;
    /// Verdict of the uncorrected form, for conditions where the checker
    /// evaluates a corrected one; nullopt when that form is not integral or
    /// mentions an undefined quantity.
    std::optional<bool> printed;
};

/// One evaluation of a condition under a particular choice of auxiliary lifts.
struct LiftTrial {
    int condition = 0;
    std::string choice;
    bool pass = false;
};

struct Theo3Report {
    std::vector<ConditionRecord> conditions;  // ids 1..18
    bool cyclic = false;

    std::optional<FFElem> F_p2, F_p3;
    std::map<int, FFElem> G, H;

    std::vector<FFElem> rho;          // residues with rho^{p(p-1)} = -F_{p^2}/F_{p^3}
    std::optional<FFElem> alpha;      // witness for condition 8 (first rho)
    std::map<int, FFElem> rho_ell;    // rho_l^p = G_{pl}/F_{p^2}, l in [2, p+1]
    std::optional<FFElem> tau2;       // tau^{p^2} = -F_{p^3}/2
    std::map<int, FFElem> Q, R;       // l in [3, p+1], and l = 2
    std::optional<FFElem> P2, S2;
    std::optional<FFElem> xi, omega;  // condition 18, first admissible choice

    std::vector<LiftTrial> lift_trials;
    bool lift_independent = true;

    int first_failed() const;
    bool passed(int id) const { return conditions.at(static_cast<std::size_t>(id - 1)).pass; }
};

/// Requires degree p^3 with p >= 5 and working precision at least 4.
Theo3Report check_cyclic_p3(const upoly::EisensteinPoly& f);

enum class Target { cyclic, fail_condition, perturb };

std::string to_string(Target t);
std::optional<Target> target_from_string(const std::string& s);

struct GenRequest {
    Target target = Target::cyclic;
    int condition = 0;  // for fail_condition
    std::uint64_t seed = 0;
};

/// Conditions a targeted failure can hit at this p.
std::vector<int> failable_conditions(int p);

/// Deterministic under the seed; output is canonically truncated. `cyclic`
/// passes every condition; `fail_condition` breaks exactly the requested one
/// and repairs the later ones where possible; `perturb` changes one random
/// admissible digit of a conforming polynomial.
upoly::EisensteinPoly gen_p3(const gf::ResidueField& k, int precision, const GenRequest& req);

}  // namespace eisen::classify3
