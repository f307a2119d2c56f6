// Runs the ten acceptance criteria and prints one line per criterion.
// Exit status is nonzero when any criterion fails or runs over its budget.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eisen/additive.hpp"
#include "eisen/cft_oracle.hpp"
#include "eisen/classify2.hpp"
#include "eisen/classify3.hpp"
#include "eisen/cyclosum.hpp"
#include "eisen/report.hpp"
#include "support/oracles.hpp"

using namespace eisen;
using gf::FFElem;
using gf::LinearizedPoly;
using gf::ResidueField;
using upoly::EisensteinPoly;
using zq::QElem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Counts checks and keeps the first few failures for the summary line.
class Tally {
public:
    void check(bool ok, const std::string& what) {
        ++total_;
        if (ok) return;
        ++failed_;
        if (failed_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
    }
    Outcome outcome(const std::string& summary) const {
        std::ostringstream os;
        os << summary << ", " << (total_ - failed_) << "/" << total_ << " checks";
        if (failed_) os << " [" << notes_ << "]";
        return {failed_ == 0, os.str()};
    }

private:
    long total_ = 0;
    long failed_ = 0;
    std::string notes_;
};

// 1. sigma_formula = sigma_direct exhaustively.
Outcome sigma_equivalence() {
    Tally t;
    long cases = 0;
    std::vector<int> parts;
    std::function<void(int)> rec = [&](int max_part) {
        if (!parts.empty()) {
            for (int ell = 1; ell <= 7; ++ell) {
                const cyclosum::Partition lam(parts);
                const auto d = cyclosum::sigma_direct(lam, ell);
                const auto f = cyclosum::sigma_formula(lam, ell);
                t.check(d == f, lam.to_string() + " l=" + std::to_string(ell));
                ++cases;
            }
        }
        if (parts.size() == 5) return;
        for (int k = 1; k <= max_part; ++k) {
            parts.push_back(k);
            rec(k);
            parts.pop_back();
        }
    };
    rec(9);
    return t.outcome(std::to_string(cases) + " (partition, l) pairs, r <= 5, parts <= 9, l <= 7");
}

// 2. The closed forms of small shapes, and invariance under scaling by p.
Outcome sum_identities() {
    using oracle::delta;
    Tally t;
    auto both = [&](const std::vector<int>& parts, int ell, long long expect, const std::string& name) {
        const cyclosum::Partition lam(parts);
        t.check(cyclosum::sigma_formula(lam, ell) == expect, name + " formula l=" + std::to_string(ell));
        t.check(cyclosum::sigma_direct(lam, ell) == expect, name + " direct l=" + std::to_string(ell));
    };
    for (int p : {3, 5}) {
        for (int ell = 2; ell <= 10; ++ell) {
            if (ell % p == 0) continue;
            for (int k = 1; k <= 3 * ell; ++k) {
                const std::string ks = std::to_string(k);
                both({k}, ell, delta(1, ell, k), "(" + ks + ")");
                both({k, 1}, ell, -delta(2, ell, k + 1), "(" + ks + ",1)");
                if (k % p) {
                    both({k, p}, ell, -delta(2, ell, k + p), "(" + ks + ",p)");
                    both({k, p * p}, ell, -delta(2, ell, k + p * p), "(" + ks + ",p^2)");
                }
            }
            both({1, 1, 1}, ell, 2 * delta(3, ell, 3), "(1,1,1)");
            both({p, 1, 1}, ell, 2 * delta(3, ell, p + 2), "(p,1,1)");
            both({p, p, 1}, ell, 2 * delta(3, ell, 2 * p + 1), "(p,p,1)");

            // Scaling every part by p permutes the roots of unity.
            std::vector<int> parts;
            std::function<void(int)> rec = [&](int max_part) {
                if (!parts.empty()) {
                    const cyclosum::Partition lam(parts);
                    t.check(cyclosum::sigma_formula(lam.scaled(p), ell) == cyclosum::sigma_formula(lam, ell),
                            "scaled " + lam.to_string());
                    t.check(cyclosum::sigma_direct(lam.scaled(p), ell) == cyclosum::sigma_direct(lam, ell),
                            "scaled direct " + lam.to_string());
                }
                if (parts.size() == 3) return;
                for (int k = 1; k <= max_part; ++k) {
                    parts.push_back(k);
                    rec(k);
                    parts.pop_back();
                }
            };
            rec(6);
        }
    }
    return t.outcome("shapes (k), (k,1), (k,p), (k,p^2), (1,1,1), (p,1,1), (p,p,1) and p-scaling, p in {3,5}, l in [2,10]");
}

// 3. Signed connected-graph counts.
Outcome graph_counts() {
    Tally t;
    for (int n = 1; n <= 5; ++n) {
        const long long brute = oracle::signed_connected_graphs(n);
        long long fact = 1;
        for (int i = 2; i < n; ++i) fact *= i;
        const long long closed = (n % 2 ? 1 : -1) * fact;
        t.check(brute == closed, "closed form at n=" + std::to_string(n));
        t.check(cyclosum::block_weight(n) == brute, "block weight at n=" + std::to_string(n));
    }
    return t.outcome("1 to 5 vertices by edge-subset enumeration");
}

bool witness_ok(const ResidueField& k, const LinearizedPoly& A, const LinearizedPoly& T, const additive::Composition& w) {
    const auto G = LinearizedPoly::from({w.alpha, w.beta, w.gamma});
    for (const auto& x : k.elements())
        if (oracle::apply(k, T, x) != oracle::apply(k, A, oracle::apply(k, G, x))) return false;
    return true;
}

// 4. Additive-polynomial criteria against enumeration.
Outcome additive_criteria() {
    Tally t;
    int range_cases = 0, split_cases = 0;

    ResidueField k3(3, 1);
    for (const auto& a1 : k3.elements())
        for (const auto& ap : k3.elements()) {
            const auto A = LinearizedPoly::from({a1, ap});
            if (k3.is_zero(a1) || k3.is_zero(ap) || oracle::kernel_size(k3, A) != 3) continue;
            for (std::uint64_t code = 1; code < 81; ++code) {
                LinearizedPoly T;
                std::uint64_t c = code;
                for (int i = 0; i < 4; ++i, c /= 3) T.a[static_cast<std::size_t>(i)] = k3.element(c % 3);
                const auto v = additive::range_contained(k3, A, T);
                t.check(v.contained == oracle::range_subset(k3, A, T), "F_3 range");
                if (v.contained) t.check(witness_ok(k3, A, T, *v.witness), "F_3 witness");
                ++range_cases;
            }
        }
    for (const auto& b : k3.elements()) {
        if (k3.is_zero(b)) continue;
        for (const auto& a : k3.elements()) {
            const auto A = LinearizedPoly::from({b, a, k3.one()});
            t.check(additive::is_p_extension_splitting(k3, A) == oracle::is_power_of(oracle::splitting_degree(k3, A), 3),
                    "F_3 splitting");
            ++split_cases;
        }
    }

    ResidueField k9(3, 2);
    std::mt19937_64 rng(2024);
    int f9_range = 0;
    while (f9_range < 600) {
        const auto A = LinearizedPoly::from({k9.element(rng() % 9), k9.element(rng() % 9)});
        if (k9.is_zero(A.a[0]) || k9.is_zero(A.a[1]) || oracle::kernel_size(k9, A) != 3) continue;
        LinearizedPoly T;
        const int top = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i <= top; ++i) T.a[static_cast<std::size_t>(i)] = k9.element(rng() % 9);
        if (rng() % 2) {
            // A o G, so that roughly half the cases are contained.
            LinearizedPoly AG;
            FFElem g[3] = {k9.element(rng() % 9), k9.element(rng() % 9), k9.element(rng() % 9)};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 3; ++j)
                    AG.a[static_cast<std::size_t>(i + j)] =
                        k9.add(AG.a[static_cast<std::size_t>(i + j)],
                               k9.mul(A.a[static_cast<std::size_t>(i)], k9.frobenius(g[j], i)));
            T = AG;
        }
        if (T.is_zero()) continue;
        const auto v = additive::range_contained(k9, A, T);
        t.check(v.contained == oracle::range_subset(k9, A, T), "F_9 range");
        if (v.contained) t.check(witness_ok(k9, A, T, *v.witness), "F_9 witness");
        ++f9_range;
    }
    int f9_split = 0;
    for (int i = 0; i < 500; ++i) {
        const auto b = k9.element(1 + rng() % 8);
        const auto a = k9.element(rng() % 9);
        const auto A = LinearizedPoly::from({b, a, k9.one()});
        const int d = oracle::splitting_degree(k9, A);
        t.check(d > 0 && additive::is_p_extension_splitting(k9, A) == oracle::is_power_of(d, 3), "F_9 splitting");
        ++f9_split;
    }
    std::ostringstream os;
    os << "F_3 exhaustive: " << range_cases << " containment, " << split_cases << " splitting; F_9 random: " << f9_range
       << " containment, " << f9_split << " splitting";
    return t.outcome(os.str());
}

EisensteinPoly gen2(const ResidueField& k, classify2::Target target, std::uint64_t seed, int condition = 0,
                    int ell = 2) {
    classify2::GenRequest req;
    req.target = target;
    req.seed = seed;
    req.condition = condition;
    req.ell = ell;
    return classify2::gen_p2(k, 6, req);
}

struct Corpus {
    std::vector<EisensteinPoly> polys;
    std::vector<std::string> labels;
};

Corpus corpus_p2(int p, int f, int random_profiles, int cyclic, int failures_per_condition, std::uint64_t seed0) {
    ResidueField k(p, f);
    Corpus c;
    for (int i = 0; i < random_profiles; ++i) {
        c.polys.push_back(gen2(k, classify2::Target::random_profile, seed0 + static_cast<std::uint64_t>(i)));
        c.labels.push_back("random_profile");
    }
    for (int i = 0; i < cyclic; ++i) {
        c.polys.push_back(gen2(k, classify2::Target::cyclic, seed0 + static_cast<std::uint64_t>(i)));
        c.labels.push_back("cyclic");
    }
    for (int cond : classify2::failable_conditions(p))
        for (int i = 0; i < failures_per_condition; ++i) {
            c.polys.push_back(gen2(k, classify2::Target::fail_condition, seed0 + static_cast<std::uint64_t>(i), cond));
            c.labels.push_back("fail " + std::to_string(cond));
        }
    return c;
}

// 5. Degree-p^2 checker against the oracle.
Outcome p2_equivalence() {
    Tally t;
    std::ostringstream os;
    struct Run {
        int p, f, random_profiles, cyclic, failures;
    };
    // At p = 3 condition 5 is vacuous, so six conditions can be targeted.
    for (const Run& r : {Run{3, 1, 200, 50, 2}, Run{3, 2, 30, 14, 1}, Run{5, 1, 6, 7, 1}}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto c = corpus_p2(r.p, r.f, r.random_profiles, r.cyclic, r.failures, 100);
        const auto n = static_cast<std::uint64_t>(r.p * r.p);
        int agree = 0;
        for (std::size_t i = 0; i < c.polys.size(); ++i) {
            const bool checker = classify2::check_cyclic_p2(c.polys[i]).cyclic;
            const bool orc = cft_oracle::norm_subgroup(c.polys[i]).is_cyclic_of(n);
            t.check(checker == orc, "(" + std::to_string(r.p) + "," + std::to_string(r.f) + ") " + c.labels[i]);
            if (checker == orc) ++agree;
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        t.check(secs < (r.p == 3 && r.f == 1 ? 120 : 300), "time budget");
        os << "(" << r.p << "," << r.f << ") " << agree << "/" << c.polys.size() << "; ";
    }
    return t.outcome(os.str() + "checker cyclic == oracle cyclic of order p^2");
}

// 6. Degree-p^2 classification against the oracle and the polygon.
Outcome p2_classification() {
    Tally t;
    ResidueField k(3, 1);
    auto c = corpus_p2(3, 1, 200, 50, 2, 100);
    for (int i = 0; i < 40; ++i) {
        c.polys.push_back(gen2(k, classify2::Target::break_ell, static_cast<std::uint64_t>(i)));
        c.labels.push_back("break_ell");
        c.polys.push_back(gen2(k, classify2::Target::break1, static_cast<std::uint64_t>(i)));
        c.labels.push_back("break1");
    }
    std::map<std::string, int> regimes;
    int unclassified = 0;
    for (std::size_t i = 0; i < c.polys.size(); ++i) {
        const auto& P = c.polys[i];
        const auto cl = classify2::classify_p2(P);
        const auto ov = cft_oracle::oracle_verdicts(P);
        const auto& lbl = c.labels[i];
        ++regimes[classify2::to_string(cl.regime)];
        t.check(cl.galois == (ov.max_abelian_degree == 9), lbl + " galois");
        t.check(cl.elementary_abelian == (ov.invariant_factors == std::vector<std::uint64_t>{3, 3}), lbl + " elementary");
        if (cl.p_group_closure && !cl.galois) t.check(ov.max_abelian_degree == 3, lbl + " non-Galois p-group");
        const auto rd = upoly::ramification_data(P);
        const auto lb = rd.lower_breaks();
        if (cl.regime == classify2::Regime::Unclassified) {
            ++unclassified;
            if (!rd.all_integral()) continue;
            t.check(lb != classify2::expected_lower_breaks(classify2::Regime::BreakPplus1, 0, 3) &&
                        lb != classify2::expected_lower_breaks(classify2::Regime::BreakEll, 2, 3) &&
                        lb != classify2::expected_lower_breaks(classify2::Regime::Break1, 0, 3),
                    lbl + " unclassified polygon");
        } else {
            t.check(rd.all_integral() && lb == classify2::expected_lower_breaks(cl.regime, cl.ell, 3),
                    lbl + " regime polygon");
        }
    }
    std::ostringstream os;
    os << c.polys.size() << " polynomials at (3,1):";
    for (const auto& [r, n] : regimes) os << " " << r << "=" << n;
    os << "; " << unclassified << " unclassified compared on the whole polygon";
    return t.outcome(os.str());
}

// 7. Degree-p^3 checker against the oracle at (5,1).
Outcome p3_equivalence() {
    Tally t;
    ResidueField k(5, 1);
    auto gen = [&](classify3::Target target, std::uint64_t seed, int condition = 0) {
        classify3::GenRequest req;
        req.target = target;
        req.seed = seed;
        req.condition = condition;
        return classify3::gen_p3(k, 7, req);
    };
    int cyclic_ok = 0, near = 0, near_agree = 0;
    auto discrepancy = [&](const EisensteinPoly& P, const classify3::Theo3Report& rep,
                           const cft_oracle::NormGroupReport& o, const std::string& label) {
        report::Json j{{"discrepancy", label},
                       {"checker_cyclic", rep.cyclic},
                       {"first_failed", rep.first_failed()},
                       {"oracle", report::to_json(o)},
                       {"document", report::to_json(report::from_poly(P))}};
        std::cerr << j.dump() << "\n";
    };
    for (std::uint64_t s = 0; s < 6; ++s) {
        const auto P = gen(classify3::Target::cyclic, s);
        const auto rep = classify3::check_cyclic_p3(P);
        const auto o = cft_oracle::norm_subgroup(P);
        const bool ok = rep.cyclic && o.invariant_factors == std::vector<std::uint64_t>{125};
        t.check(ok, "cyclic seed " + std::to_string(s));
        if (ok) ++cyclic_ok;
        else discrepancy(P, rep, o, "cyclic seed " + std::to_string(s));
    }
    std::vector<std::pair<EisensteinPoly, std::string>> misses;
    for (int c : classify3::failable_conditions(5))
        misses.emplace_back(gen(classify3::Target::fail_condition, 40 + static_cast<std::uint64_t>(c), c),
                            "fail " + std::to_string(c));
    for (std::uint64_t s = 0; s < 12; ++s) misses.emplace_back(gen(classify3::Target::perturb, 70 + s), "perturb");
    for (const auto& [P, label] : misses) {
        const auto rep = classify3::check_cyclic_p3(P);
        const auto o = cft_oracle::norm_subgroup(P);
        const bool ok = rep.cyclic == o.is_cyclic_of(125);
        t.check(ok, label);
        ++near;
        if (ok) ++near_agree;
        else discrepancy(P, rep, o, label);
    }
    std::ostringstream os;
    os << cyclic_ok << "/6 conforming with invariants [125]; " << near_agree << "/" << near
       << " near misses agree (18 targeted, 12 perturbed)";
    return t.outcome(os.str());
}

// 8. Verdicts are unchanged by coefficient changes below the truncation level.
Outcome truncation_invariance() {
    Tally t;
    ResidueField k(3, 1);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        const auto target = i % 2 ? classify2::Target::random_eisenstein : classify2::Target::random_profile;
        const auto P = gen2(k, target, 500 + static_cast<std::uint64_t>(i));
        const auto& R = P.ring();
        auto c = P.coeffs();
        for (std::size_t j = 0; j < c.size(); ++j) {
            const long long step = j + 1 == c.size() ? 81 : 27;
            c[j] = R.add(c[j], R.from_int(step * static_cast<long long>(rng() % 9)));
        }
        const EisensteinPoly Q(R, c);
        const auto a = classify2::check_cyclic_p2(P), b = classify2::check_cyclic_p2(Q);
        for (int id = 1; id <= 7; ++id) t.check(a.passed(id) == b.passed(id), "condition " + std::to_string(id));
        const auto ca = classify2::classify_p2(P), cb = classify2::classify_p2(Q);
        t.check(report::to_json(ca) == report::to_json(cb), "classification");
        const auto oa = cft_oracle::norm_subgroup(P), ob = cft_oracle::norm_subgroup(Q);
        t.check(oa.invariant_factors == ob.invariant_factors, "oracle invariants");
    }
    return t.outcome("50 random (3,1) polynomials, p^3 added to f_i (i < n), p^4 to f_n");
}

// 9. Independence of the auxiliary Teichmueller and lift choices.
Outcome lift_independence() {
    Tally t;
    int n2 = 0, n3 = 0, trials = 0;
    for (auto [p, f, count] : {std::tuple{3, 1, 15}, std::tuple{3, 2, 15}, std::tuple{5, 1, 10}}) {
        ResidueField k(p, f);
        for (int i = 0; i < count; ++i) {
            const auto rep = classify2::check_cyclic_p2(gen2(k, classify2::Target::cyclic, 900 + static_cast<std::uint64_t>(i)));
            t.check(rep.cyclic, "conforming");
            t.check(!rep.theta_checks.empty(), "theta choices");
            for (const auto& tc : rep.theta_checks) t.check(tc.pass == rep.passed(7), "theta choice");
            t.check(rep.theta_independent, "theta flag");
            trials += static_cast<int>(rep.theta_checks.size());
            ++n2;
        }
    }
    ResidueField k5(5, 1);
    for (int i = 0; i < 10; ++i) {
        classify3::GenRequest req;
        req.seed = 900 + static_cast<std::uint64_t>(i);
        const auto rep = classify3::check_cyclic_p3(classify3::gen_p3(k5, 7, req));
        t.check(rep.cyclic, "conforming p^3");
        for (const auto& lt : rep.lift_trials) t.check(lt.pass == rep.passed(lt.condition), "lift " + lt.choice);
        t.check(rep.lift_independent, "lift flag");
        trials += static_cast<int>(rep.lift_trials.size());
        ++n3;
    }
    std::ostringstream os;
    os << n2 << " degree-p^2 and " << n3 << " degree-p^3 conforming polynomials, " << trials << " auxiliary choices";
    return t.outcome(os.str());
}

// 10. Artin-Hasse norms against the closed-form coefficient c_l(theta).
Outcome artin_hasse() {
    Tally t;
    ResidueField k(3, 1);
    const int p = 3;
    const auto pp = static_cast<std::uint64_t>(p);
    int cases = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto P = gen2(k, classify2::Target::cyclic, 300 + s);
        const auto& R = P.ring();
        const auto F = [&](int i) { return P.coeff(i); };
        const auto half = R.inv(R.from_int(2));
        for (int ell : {2, 4}) {
            for (const auto& r : k.elements()) {
                const auto th = R.teichmuller(r);
                const auto thp = R.pow(th, pp), thp2 = R.pow(th, pp * pp);
                QElem c = R.mul(F(ell), th);
                if (ell == 2)
                    c = R.sub(c, R.mul(half, R.add(R.mul(R.mul(F(p), F(p)), thp), R.mul(R.mul(F(p * p), F(p * p)), thp2))));
                if (ell == p + 1) c = R.sub(c, R.mul(R.mul(F(p), F(p * p)), thp));
                if (ell <= p - 1) c = R.add(c, R.mul(F(p * ell), thp));
                const auto lhs = R.reduce_to(R.add(R.one(), c), 3);
                const auto rhs = R.reduce_to(upoly::artin_hasse_norm(P, th, ell), 3);
                t.check(lhs == rhs, "seed " + std::to_string(s) + " l=" + std::to_string(ell));
                ++cases;
            }
        }
    }
    return t.outcome(std::to_string(cases) + " (polynomial, l, theta) cases, l in {2,4}, 20 cyclic (3,1) polynomials");
}

}  // namespace

// With no arguments every criterion runs; otherwise only the listed ids.
int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* name;
        double budget;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "sigma formula equals direct sum", 30, sigma_equivalence},
        {2, "sum identities", 5, sum_identities},
        {3, "signed connected-graph counts", 5, graph_counts},
        {4, "additive-polynomial criteria", 30, additive_criteria},
        {5, "degree-p^2 checker vs oracle", 600, p2_equivalence},
        {6, "degree-p^2 classification vs oracle", 180, p2_classification},
        {7, "degree-p^3 checker vs oracle at (5,1)", 900, p3_equivalence},
        {8, "truncation invariance", 60, truncation_invariance},
        {9, "theta and lift independence", 60, lift_independence},
        {10, "Artin-Hasse consistency", 60, artin_hasse},
    };
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    int failures = 0, ran = 0;
    for (const auto& c : criteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        ++ran;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("criterion %2d %s: %s (%.1f s of %.0f s) %s%s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs, c.budget,
                    o.detail.c_str(), in_time ? "" : " [over time budget]");
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", ran - failures, ran);
    return failures || ran == 0 ? 1 : 0;
}
