#pragma once

// Degree p^2: the closed-form cyclicity conditions and the classification
// of p-group normal closures by the break of L/F.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eisen/gf.hpp"
#include "eisen/upoly.hpp"

namespace eisen::classify2 {

using gf::FFElem;

struct ConditionRecord {
    int id = 0;
    bool pass = false;
    std::string reason;
};

/// Residue of f_i / p^k, or nullopt when v(f_i) < k.
std::optional<FFElem> scaled_residue(const upoly::EisensteinPoly& f, int i, int k);

/// Integers in [a, b] prime to p.
std::vector<int> prime_to_p(int a, int b, int p);

/// Outcome of the last condition for one choice of theta.
struct ThetaCheck {
    FFElem theta_bar;
    zq::QElem theta;
    FFElem target;             // residue of (f_{p^2} theta^{p^2} + f_p theta^p)/p^2 + G_1 theta_bar
    std::vector<FFElem> roots;  // of F_{p^2} X^p + F_p X = target
    bool pass = false;
};

struct Theo1Report {
    std::vector<ConditionRecord> conditions;  // ids 1..7
    bool cyclic = false;

    std::optional<FFElem> F_p, F_p2;
    std::map<int, FFElem> G;  // G_i for the indices the conditions use
    std::optional<int> V_kernel_dim;
    std::vector<ThetaCheck> theta_checks;  // one per admissible theta, lexicographic
    bool theta_independent = true;

    /// First failing condition id, 0 when all pass.
    int first_failed() const;
    bool passed(int id) const { return conditions.at(static_cast<std::size_t>(id - 1)).pass; }
};

/// Requires degree p^2, p odd.
Theo1Report check_cyclic_p2(const upoly::EisensteinPoly& f);

enum class Regime { BreakPplus1, BreakEll, Break1, Unclassified };
enum class Split { split, nonsplit, not_applicable };

std::string to_string(Regime r);
std::string to_string(Split s);

struct ClassificationP2 {
    Regime regime = Regime::Unclassified;
    int ell = 0;  // for BreakEll
    bool p_group_closure = false;
    bool galois = false;
    bool cyclic = false;
    bool elementary_abelian = false;
    // Set only when the closure is a p-group.
    std::optional<int> module_length;
    std::optional<bool> has_unramified_part;
    std::optional<std::vector<int>> upper_breaks_over_F;
    std::optional<Split> split;
    std::optional<int> exponent;  // p or p^2
    std::string note;
};

/// Valuation-profile regime only.
Regime detect_regime(const upoly::EisensteinPoly& f, int* ell = nullptr);

ClassificationP2 classify_p2(const upoly::EisensteinPoly& f);

/// Lower breaks the regime predicts for f(X + pi).
std::vector<int> expected_lower_breaks(Regime r, int ell, int p);

enum class Target { cyclic, fail_condition, random_profile, break_ell, break1, random_eisenstein };

std::string to_string(Target t);
std::optional<Target> target_from_string(const std::string& s);

struct GenRequest {
    Target target = Target::cyclic;
    int condition = 0;  // for fail_condition
    int ell = 2;        // for break_ell
    std::uint64_t seed = 0;
};

/// Conditions a targeted failure can hit at this p (5 needs p >= 5).
std::vector<int> failable_conditions(int p);

/// Deterministic under the seed; output is canonically truncated.
upoly::EisensteinPoly gen_p2(const gf::ResidueField& k, int precision, const GenRequest& req);

}  // namespace eisen::classify2
