#include "eisen/classify3.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "eisen/additive.hpp"
#include "eisen/classify2.hpp"
#include "eisen/error.hpp"

namespace eisen::classify3 {

using classify2::prime_to_p;
using classify2::scaled_residue;
using gf::LinearizedPoly;
using upoly::EisensteinPoly;
using zq::QElem;

int Theo3Report::first_failed() const {
    for (const auto& c : conditions)
        if (!c.pass) return c.id;
    return 0;
}

namespace {

int val(const EisensteinPoly& f, int i) { return f.ring().valuation(f.coeff(i)); }

std::string idx(const char* name, int i) { return std::string(name) + "_" + std::to_string(i); }

void require_p3(const EisensteinPoly& f) {
    if (upoly::degree_exponent(f.degree(), f.p()) != 3) throw DomainError("expected a polynomial of degree p^3");
    if (f.p() < 5)
        throw DomainError("degree p^3 conditions need p >= 5: the expansion divides by 3, and p = 2 is out of scope");
    if (f.ring().precision() < 4) throw PrecisionError("degree p^3 conditions need working precision at least 4");
}

// A lift of a residue other than the multiplicative representative changes
// nothing the conditions can see; the checker tries a few.
std::vector<std::pair<std::string, QElem>> lifts(const zq::UnramRing& R, const FFElem& r, int count) {
    const QElem t = R.teichmuller(r);
    std::vector<std::pair<std::string, QElem>> out{{"teichmuller", t}};
    if (count > 1) out.push_back({"teichmuller+p", R.add(t, R.from_int(R.p()))});
    if (count > 2) out.push_back({"teichmuller+p*t", R.add(t, R.scale(R.lift(R.residue().generator()), R.p()))});
    return out;
}

struct Checker {
    const EisensteinPoly& f;
    const zq::UnramRing& R;
    const gf::ResidueField& k;
    int p;
    std::uint64_t pu;
    Theo3Report rep;

    explicit Checker(const EisensteinPoly& poly)
        : f(poly), R(poly.ring()), k(poly.ring().residue()), p(poly.p()), pu(static_cast<std::uint64_t>(poly.p())) {}

    const QElem& c(int i) const { return f.coeff(i); }
    FFElem pw(const FFElem& x, std::uint64_t e) const { return k.pow(x, e); }
    FFElem root_p(const FFElem& x, int times = 1) const { return k.frobenius(x, times, true); }
    QElem times_p(const QElem& x) const { return R.scale(x, p); }
    FFElem res3(const QElem& x) const { return R.residue_of_div(x, 3); }

    FFElem G(int i) const {
        auto it = rep.G.find(i);
        if (it == rep.G.end()) throw DomainError(idx("G", i) + " undefined (valuation < 2)");
        return it->second;
    }
    FFElem H(int i) const {
        auto it = rep.H.find(i);
        if (it == rep.H.end()) throw DomainError(idx("H", i) + " undefined (valuation < 3)");
        return it->second;
    }
    FFElem F2() const { return *rep.F_p2; }
    FFElem F3() const { return *rep.F_p3; }
    LinearizedPoly A() const { return LinearizedPoly::from({F2(), F3()}); }

    bool contained(const LinearizedPoly& T) const { return additive::range_contained(k, A(), T).contained; }

    void record(ConditionRecord r) { rep.conditions.push_back(std::move(r)); }

    // Runs one condition; a quantity that is undefined or not integral
    // fails it with the reason.
    void run(int id, const std::function<void(ConditionRecord&)>& body) {
        ConditionRecord r;
        r.id = id;
        r.pass = true;
        try {
            body(r);
        } catch (const DomainError& e) {
            r.pass = false;
            r.reason = e.what();
        }
        if (!r.failed_at.empty()) r.pass = false;
        record(std::move(r));
    }

    // Evaluates a per-l condition, collecting the failing l.
    void per_ell(ConditionRecord& r, const std::vector<int>& ells, const std::function<bool(int)>& test) {
        for (int l : ells) {
            bool ok = false;
            try {
                ok = test(l);
            } catch (const DomainError& e) {
                if (r.reason.empty()) r.reason = "l = " + std::to_string(l) + ": " + e.what();
            }
            if (!ok) r.failed_at.push_back(l);
        }
        if (!r.failed_at.empty() && r.reason.empty()) r.reason = "fails at l = " + std::to_string(r.failed_at.front());
    }

    // Verdict of the first trial; any disagreement marks lift dependence.
    bool settle(const std::vector<LiftTrial>& trials) {
        for (const auto& t : trials) {
            rep.lift_trials.push_back(t);
            if (t.pass != trials.front().pass) rep.lift_independent = false;
        }
        return trials.front().pass;
    }

    void profiles();
    void quantities();
    void residue_conditions();
    void high_ell();
    void low_ell();
    void last_condition();
};

void Checker::profiles() {
    const int p2 = p * p;
    run(1, [&](ConditionRecord& r) {
        if (val(f, p2) != 1) throw DomainError("v(f_{p^2}) = " + std::to_string(val(f, p2)) + ", expected 1");
        for (int i = 2; i <= p - 1; ++i)
            if (val(f, p2 * i) < 2) {
                r.pass = false;
                r.reason = "v(" + idx("f", p2 * i) + ") < 2";
                return;
            }
    });
    run(2, [&](ConditionRecord& r) {
        for (int i = 1; i <= p - 1; ++i)
            if (val(f, p * i) < 2) {
                r.pass = false;
                r.reason = "v(" + idx("f", p * i) + ") < 2";
                return;
            }
        if (val(f, p2 + p) != 2) throw DomainError("v(f_{p^2+p}) = " + std::to_string(val(f, p2 + p)) + ", expected 2");
        // Printed as i in I(p+1, p^2-1), which would contradict v(f_{p^2+p}) = 2.
        for (int i : prime_to_p(p + 2, p2 - 1, p))
            if (val(f, p * i) < 3) {
                r.pass = false;
                r.reason = "v(" + idx("f", p * i) + ") < 3";
                return;
            }
    });
    run(3, [&](ConditionRecord& r) {
        for (int i : prime_to_p(1, p2 + p - 1, p))
            if (val(f, i) < 3) {
                r.pass = false;
                r.reason = "v(" + idx("f", i) + ") < 3";
                return;
            }
        if (val(f, p2 + p + 1) != 3)
            throw DomainError("v(f_{p^2+p+1}) = " + std::to_string(val(f, p2 + p + 1)) + ", expected 3");
        for (int i : prime_to_p(p2 + p + 2, p * p2 - 1, p))
            if (val(f, i) < 4) {
                r.pass = false;
                r.reason = "v(" + idx("f", i) + ") < 4";
                return;
            }
    });
}

void Checker::quantities() {
    const int p2 = p * p;
    rep.F_p2 = scaled_residue(f, p2, 1);
    rep.F_p3 = scaled_residue(f, p * p2, 1);
    std::vector<int> g_idx;
    for (int i : prime_to_p(1, p + 1, p)) g_idx.push_back(p * i);
    for (int j = 2; j <= p - 1; ++j) g_idx.push_back(p2 * j);
    for (int i : g_idx)
        if (auto g = scaled_residue(f, i, 2)) rep.G[i] = *g;
    std::vector<int> h_idx = prime_to_p(1, p2 + p + 1, p);
    for (int l : prime_to_p(p + 2, p2 - 1, p)) h_idx.push_back(p * l);
    for (int i : h_idx)
        if (auto h = scaled_residue(f, i, 3)) rep.H[i] = *h;
}

void Checker::residue_conditions() {
    const int p2 = p * p;
    const FFElem half = k.inv(k.from_int(2));
    const bool f2_unit = rep.F_p2 && !k.is_zero(*rep.F_p2);
    auto need_f2 = [&] {
        if (!f2_unit) throw DomainError("F_{p^2} vanishes");
    };

    run(4, [&](ConditionRecord& r) {
        need_f2();
        const FFElem c = k.neg(k.div(F2(), F3()));
        if (!k.is_dth_power(c, pu - 1)) {
            r.pass = false;
            r.reason = "-F_{p^2}/F_{p^3} is not a (p-1)-th power";
        }
    });

    run(5, [&](ConditionRecord& r) {
        need_f2();
        if (pw(G(p2 + p), pu) != k.neg(pw(F2(), pu + 1))) {
            r.pass = false;
            r.reason = "G_{p(p+1)}^p != -F_{p^2}^{p+1}";
        }
    });

    run(6, [&](ConditionRecord& r) {
        need_f2();
        std::vector<int> ells;
        for (int l = 3; l <= p - 1; ++l) ells.push_back(l);
        per_ell(r, ells, [&](int l) { return G(p2 * l) == k.mul(F3(), pw(k.div(G(p * l), F2()), pu)); });
    });

    run(7, [&](ConditionRecord& r) {
        need_f2();
        const FFElem rhs = k.add(k.mul(F3(), pw(k.div(G(2 * p), F2()), pu)),
                                 k.mul(half, k.mul(F2(), k.sub(F2(), root_p(F3())))));
        if (G(2 * p2) != rhs) {
            r.pass = false;
            r.reason = "G_{2p^2} mismatch";
        }
    });

    run(8, [&](ConditionRecord& r) {
        if (!rep.passed(4)) throw DomainError("no rho with rho^{p(p-1)} = -F_{p^2}/F_{p^3}");
        const FFElem cval = k.neg(k.div(F2(), F3()));
        rep.rho = k.all_roots_of_power(cval, pu * (pu - 1));
        std::vector<LiftTrial> trials;
        for (const auto& rb : rep.rho) {
            for (const auto& [label, rho] : lifts(R, rb, 2)) {
                const QElem s = R.add(R.add(R.mul(c(p * p2), R.pow(rho, pu * pu)), R.mul(c(p2), R.pow(rho, pu))),
                                      R.mul(c(p), rho));
                const FFElem x = R.residue_of_div(s, 2);
                const auto sol = gf::solve_linearized(k, A(), x);
                if (!rep.alpha && !sol.roots.empty()) rep.alpha = sol.roots.front();
                trials.push_back({8, "rho=" + k.to_string(rb) + "," + label, !sol.roots.empty()});
            }
        }
        if (!settle(trials)) {
            r.pass = false;
            r.reason = "not of the form F_{p^3} a^p + F_{p^2} a";
        }
    });
}

void Checker::high_ell() {
    const int p2 = p * p;

    run(9, [&](ConditionRecord& r) {
        bool printed = true;
        per_ell(r, prime_to_p(p2 + 1, p2 + p + 1, p), [&](int l) {
            const FFElem b = k.neg(k.mul(G(p * (l - p2)), F3()));
            const FFElem h = H(l);
            printed = printed && b == k.mul(F3(), pw(k.div(h, F2()), pu));
            return contained(LinearizedPoly::from({h, b}));
        });
        r.printed = printed;
    });

    run(10, [&](ConditionRecord& r) {
        per_ell(r, prime_to_p(2 * p + 2, p2 - 1, p),
                [&](int l) { return contained(LinearizedPoly::from({H(l), H(p * l)})); });
    });

    run(11, [&](ConditionRecord& r) {
        const int l = 2 * p + 1;
        const LinearizedPoly T = LinearizedPoly::from(
            {H(l), k.sub(H(p * l), k.mul(F2(), G(p2 + p))), k.mul(pw(F3(), 2), F2())});
        if (!contained(T)) {
            r.pass = false;
            r.reason = "A_{2p+1}(k) not contained in A(k)";
        }
    });

    // The uncorrected condition names F_{p^2(l-p)}; only G is defined at that
    // index, and the listed A_l uses the coefficient f_{p^2(l-p)}/p^2.
    run(12, [&](ConditionRecord& r) {
        per_ell(r, prime_to_p(p + 3, 2 * p - 1, p), [&](int l) {
            const LinearizedPoly T = LinearizedPoly::from(
                {H(l), k.sub(H(p * l), k.mul(F2(), G(p * (l - p)))), k.neg(k.mul(F3(), G(p2 * (l - p))))});
            return contained(T);
        });
    });

    run(13, [&](ConditionRecord& r) {
        const int l = p + 2;
        const LinearizedPoly T = LinearizedPoly::from({H(l), k.sub(H(p * l), k.mul(F2(), G(2 * p))),
                                                      k.sub(k.mul(F3(), pw(F2(), 2)), k.mul(F3(), G(2 * p2)))});
        if (!contained(T)) {
            r.pass = false;
            r.reason = "A_{p+2}(k) not contained in A(k)";
        }
    });
}

void Checker::low_ell() {
    const int p2 = p * p;
    const int p3 = p * p2;
    const QElem half = R.inv(R.from_int(2));
    const FFElem third_bar = k.inv(k.from_int(3));

    for (int l = 2; l <= p + 1; ++l) {
        if (l % p == 0) continue;
        try {
            rep.rho_ell[l] = root_p(k.div(G(p * l), F2()));
        } catch (const DomainError&) {
        }
    }
    auto rho_bar = [&](int l) {
        auto it = rep.rho_ell.find(l);
        if (it == rep.rho_ell.end() || k.is_zero(F2())) throw DomainError("rho_" + std::to_string(l) + " undefined");
        return it->second;
    };
    // (f_{pl} - p f_{p^2} rho^p)/p^3, reduced.
    auto q_part = [&](int l, const QElem& rho) { return res3(R.sub(c(p * l), times_p(R.mul(c(p2), R.pow(rho, pu))))); };
    auto printed_or_null = [&](const std::function<bool()>& fn) -> std::optional<bool> {
        try {
            return fn();
        } catch (const DomainError&) {
            return std::nullopt;
        }
    };

    // l = p + 1
    run(14, [&](ConditionRecord& r) {
        const int l = p + 1;
        const FFElem rb = rho_bar(l);
        std::vector<LiftTrial> trials;
        for (const auto& [label, rho] : lifts(R, rb, 3)) {
            const FFElem Q = k.sub(q_part(l, rho), k.mul(F2(), G(p)));
            const FFElem Rv =
                res3(R.neg(R.add(R.mul(c(p3), c(p2)), times_p(R.mul(c(p3), R.pow(rho, pu * pu))))));
            if (trials.empty()) {
                rep.Q[l] = Q;
                rep.R[l] = Rv;
                r.printed = printed_or_null([&] { return contained(LinearizedPoly::from({H(l), Q, Rv})); });
            }
            const FFElem c1 = k.sub(H(l), k.mul(G(p), rb));
            trials.push_back({14, "rho_" + std::to_string(l) + "," + label, contained(LinearizedPoly::from({c1, Q, Rv}))});
        }
        if (!settle(trials)) {
            r.pass = false;
            r.reason = "l = p+1 polynomial not contained in A(k)";
        }
    });

    // 4 <= l <= p - 1
    run(15, [&](ConditionRecord& r) {
        bool printed_defined = true;
        bool printed = true;
        std::vector<int> ells;
        for (int l = 4; l <= p - 1; ++l) ells.push_back(l);
        per_ell(r, ells, [&](int l) {
            const FFElem rb = rho_bar(l);
            std::vector<LiftTrial> trials;
            for (const auto& [label, rho] : lifts(R, rb, 3)) {
                const QElem rho_p2 = R.pow(rho, pu * pu);
                const FFElem Q = q_part(l, rho);
                const FFElem Rv =
                    k.sub(res3(R.sub(c(p2 * l), times_p(R.mul(c(p3), rho_p2)))), k.mul(F2(), G(p2 * (l - 1))));
                if (trials.empty()) {
                    rep.Q[l] = Q;
                    rep.R[l] = Rv;
                    // Uncorrected form: an extra -F_{p^2} G_p in Q and -f_{p^2 l} in R.
                    auto pr = printed_or_null([&] {
                        const FFElem Rp = k.sub(res3(R.neg(R.add(c(p2 * l), times_p(R.mul(c(p3), rho_p2))))),
                                                k.mul(F2(), G(p2 * (l - 1))));
                        return contained(LinearizedPoly::from({H(l), k.sub(Q, k.mul(F2(), G(p))), Rp}));
                    });
                    if (pr) printed = printed && *pr;
                    else printed_defined = false;
                }
                const FFElem c1 = k.sub(H(l), k.mul(G(p), rb));
                trials.push_back(
                    {15, "rho_" + std::to_string(l) + "," + label, contained(LinearizedPoly::from({c1, Q, Rv}))});
            }
            return settle(trials);
        });
        if (printed_defined) r.printed = printed;
    });

    // l = 3
    run(16, [&](ConditionRecord& r) {
        const int l = 3;
        const FFElem rb = rho_bar(l);
        const FFElem d = k.mul(third_bar, pw(F3(), 3));
        std::vector<LiftTrial> trials;
        for (const auto& [label, rho] : lifts(R, rb, 3)) {
            const FFElem Q = q_part(l, rho);
            const FFElem Rv = k.sub(k.add(res3(R.sub(c(3 * p2), times_p(R.mul(c(p3), R.pow(rho, pu * pu))))),
                                          k.mul(third_bar, pw(F2(), 3))),
                                    k.mul(F2(), G(2 * p2)));
            if (trials.empty()) {
                rep.Q[l] = Q;
                rep.R[l] = Rv;
                r.printed = printed_or_null([&] { return contained(LinearizedPoly::from({H(l), Q, Rv, d})); });
            }
            const FFElem c1 = k.sub(H(l), k.mul(G(p), rb));
            trials.push_back({16, "rho_3," + label, contained(LinearizedPoly::from({c1, Q, Rv, d}))});
        }
        if (!settle(trials)) {
            r.pass = false;
            r.reason = "l = 3 polynomial not contained in A(k)";
        }
    });

    // l = 2
    run(17, [&](ConditionRecord& r) {
        const int l = 2;
        const FFElem rb = rho_bar(l);
        rep.tau2 = root_p(k.neg(k.mul(k.inv(k.from_int(2)), F3())), 2);
        const FFElem tb = *rep.tau2;
        std::vector<LiftTrial> trials;
        for (const auto& [rl, rho] : lifts(R, rb, 3)) {
            for (const auto& [tl, tau] : lifts(R, tb, 3)) {
                const FFElem P = k.sub(H(2), k.mul(G(p), rb));
                const FFElem Q = k.sub(q_part(l, rho), k.mul(G(p), tb));
                auto r2 = [&](std::uint64_t tau_exp) {
                    QElem s = R.sub(c(2 * p2), R.mul(half, R.mul(c(p2), c(p2))));
                    s = R.sub(s, times_p(R.mul(c(p3), R.pow(rho, pu * pu))));
                    s = R.sub(s, times_p(R.mul(c(p2), R.pow(tau, tau_exp))));
                    return res3(s);
                };
                auto s2 = [&](std::uint64_t tau_exp) {
                    return res3(R.neg(R.add(R.mul(half, R.mul(c(p3), c(p3))), times_p(R.mul(c(p3), R.pow(tau, tau_exp))))));
                };
                const FFElem Rv = r2(pu);
                const FFElem S = s2(pu * pu);
                if (trials.empty()) {
                    rep.P2 = P;
                    rep.Q[l] = Q;
                    rep.R[l] = Rv;
                    rep.S2 = S;
                    // Uncorrected form: tau^{p^2} in R_2 and tau^{p^3} in S_2.
                    r.printed = printed_or_null(
                        [&] { return contained(LinearizedPoly::from({P, Q, r2(pu * pu), s2(pu * pu * pu)})); });
                }
                trials.push_back({17, "rho_2," + rl + ";tau_2," + tl, contained(LinearizedPoly::from({P, Q, Rv, S}))});
            }
        }
        if (!settle(trials)) {
            r.pass = false;
            r.reason = "l = 2 polynomial not contained in A(k)";
        }
    });
}

void Checker::last_condition() {
    const int p2 = p * p;
    const int p3 = p * p2;
    run(18, [&](ConditionRecord& r) {
        if (!rep.passed(4)) throw DomainError("no rho with rho^{p^2(p-1)} = -F_{p^2}/F_{p^3}");
        const FFElem cval = k.neg(k.div(F2(), F3()));
        const LinearizedPoly Axi = LinearizedPoly::from({k.zero(), F2(), F3()});
        std::vector<LiftTrial> trials;
        for (const auto& tb : k.all_roots_of_power(cval, pu * pu * (pu - 1))) {
            for (const auto& [tl, th] : lifts(R, tb, 2)) {
                const QElem t1 = th;
                const QElem tp = R.pow(th, pu);
                const QElem tp2 = R.pow(th, pu * pu);
                const QElem tp3 = R.pow(th, pu * pu * pu);
                const QElem lead = R.add(R.add(R.mul(c(p3), tp3), R.mul(c(p2), tp2)), R.mul(c(p), tp));
                const auto xis = gf::solve_linearized(k, Axi, R.residue_of_div(lead, 2)).roots;
                if (xis.empty()) {
                    trials.push_back({18, "rho=" + k.to_string(tb) + "," + tl + ";no xi", false});
                    continue;
                }
                QElem w = R.sub(lead, R.mul(R.mul(c(p2), c(p3 - p2)), tp3));
                w = R.add(w, R.mul(c(1), t1));
                for (const auto& xb : xis) {
                    for (const auto& [xl, xi] : lifts(R, xb, 2)) {
                        const QElem h = times_p(R.add(R.add(R.mul(c(p3), R.pow(xi, pu * pu)), R.mul(c(p2), R.pow(xi, pu))),
                                                      R.mul(c(p), xi)));
                        const FFElem omega_target = res3(R.sub(w, h));
                        const auto om = gf::solve_linearized(k, A(), omega_target).roots;
                        if (!rep.xi) {
                            rep.xi = xb;
                            if (!om.empty()) rep.omega = om.front();
                        }
                        trials.push_back(
                            {18, "rho=" + k.to_string(tb) + "," + tl + ";xi=" + k.to_string(xb) + "," + xl, !om.empty()});
                    }
                }
            }
        }
        if (trials.empty()) throw DomainError("no admissible rho");
        if (!settle(trials)) {
            r.pass = false;
            r.reason = "not of the form F_{p^3} w^p + F_{p^2} w";
        }
    });
}

}  // namespace

Theo3Report check_cyclic_p3(const EisensteinPoly& f) {
    require_p3(f);
    Checker ch(f);
    ch.profiles();
    ch.quantities();
    ch.residue_conditions();
    ch.high_ell();
    ch.low_ell();
    ch.last_condition();
    auto& rep = ch.rep;
    rep.cyclic = std::all_of(rep.conditions.begin(), rep.conditions.end(), [](const auto& c) { return c.pass; });
    return std::move(rep);
}

std::string to_string(Target t) {
    switch (t) {
        case Target::cyclic: return "cyclic";
        case Target::fail_condition: return "fail";
        case Target::perturb: return "perturb";
    }
    return "?";
}

std::optional<Target> target_from_string(const std::string& s) {
    for (Target t : {Target::cyclic, Target::fail_condition, Target::perturb})
        if (to_string(t) == s) return t;
    return std::nullopt;
}

std::vector<int> failable_conditions(int p) {
    std::vector<int> out;
    for (int id = 1; id <= kConditionCount; ++id) out.push_back(id);
    (void)p;
    return out;
}

namespace {

// A digit of one coefficient that a condition (at one l) pins down.
struct Unit {
    int condition;
    int ell;  // 0 for single conditions
    int index;
    int level;
};

std::vector<Unit> units(int p) {
    const int p2 = p * p;
    std::vector<Unit> u;
    u.push_back({4, 0, p * p2, 1});
    u.push_back({5, 0, p2 + p, 2});
    for (int l = 3; l <= p - 1; ++l) u.push_back({6, l, p2 * l, 2});
    u.push_back({7, 0, 2 * p2, 2});
    u.push_back({8, 0, p, 2});
    for (int l : prime_to_p(p2 + 1, p2 + p + 1, p)) u.push_back({9, l, l, 3});
    for (int l : prime_to_p(2 * p + 2, p2 - 1, p)) u.push_back({10, l, p * l, 3});
    u.push_back({11, 0, p * (2 * p + 1), 3});
    for (int l : prime_to_p(p + 3, 2 * p - 1, p)) u.push_back({12, l, p * l, 3});
    u.push_back({13, 0, p * (p + 2), 3});
    u.push_back({14, 0, p * (p + 1), 3});
    for (int l = 4; l <= p - 1; ++l) u.push_back({15, l, p * l, 3});
    u.push_back({16, 0, 3 * p, 3});
    u.push_back({17, 0, 2 * p, 3});
    u.push_back({18, 0, 1, 3});
    return u;
}

// Lowest digit level each coefficient may use, and whether that digit must
// be nonzero (exact valuation).
std::pair<int, bool> floor_of(int i, int p) {
    const int p2 = p * p;
    const int p3 = p * p2;
    if (i == p3 || i == p2) return {1, true};
    if (i % p2 == 0) return {2, false};
    if (i == p2 + p) return {2, true};
    if (i % p == 0) return {i < p2 + p ? 2 : 3, false};
    if (i == p2 + p + 1) return {3, true};
    return {i < p2 + p + 1 ? 3 : 4, false};
}

class Builder3 {
public:
    Builder3(const gf::ResidueField& k, int precision, std::uint64_t seed)
        : k_(k), R_(k, precision), rng_(seed), p_(k.p()), n_(k.p() * k.p() * k.p()),
          coeffs_(static_cast<std::size_t>(n_ + 1), R_.zero()) {
        if (precision < 5) throw DomainError("degree p^3 generator needs precision at least 5");
        if (p_ < 5) throw DomainError("degree p^3 generator needs p >= 5");
    }

    int p() const { return p_; }
    int n() const { return n_; }
    int top(int i) const { return i == n_ ? 4 : 3; }

    FFElem any() { return k_.element(std::uniform_int_distribution<std::uint64_t>(0, k_.q() - 1)(rng_)); }
    FFElem nonzero() { return k_.element(std::uniform_int_distribution<std::uint64_t>(1, k_.q() - 1)(rng_)); }
    int below(int m) { return std::uniform_int_distribution<int>(0, m - 1)(rng_); }

    FFElem digit(int i, int level) const {
        FFElem d;
        std::uint64_t pl = 1;
        for (int j = 0; j < level; ++j) pl *= static_cast<std::uint64_t>(p_);
        const QElem& a = coeffs_[static_cast<std::size_t>(i)];
        for (int c = 0; c < k_.f(); ++c) d.c[c] = static_cast<std::uint32_t>(a.c[c] / pl % static_cast<std::uint64_t>(p_));
        return d;
    }

    void set_digit(int i, int level, const FFElem& d) {
        std::uint64_t pl = 1;
        for (int j = 0; j < level; ++j) pl *= static_cast<std::uint64_t>(p_);
        QElem& a = coeffs_[static_cast<std::size_t>(i)];
        const FFElem old = digit(i, level);
        for (int c = 0; c < k_.f(); ++c) a.c[c] = a.c[c] - old.c[c] * pl + d.c[c] * pl;
    }

    void randomize() {
        for (int i = 1; i <= n_; ++i) {
            const auto [lo, exact] = floor_of(i, p_);
            for (int level = lo; level <= top(i); ++level)
                set_digit(i, level, level == lo && exact ? nonzero() : any());
        }
    }

    EisensteinPoly build() const {
        return upoly::canonical_truncate(EisensteinPoly(R_, {coeffs_.begin() + 1, coeffs_.end()}));
    }

    // Residues in a seeded order.
    std::vector<FFElem> shuffled() {
        auto all = k_.elements();
        std::shuffle(all.begin(), all.end(), rng_);
        return all;
    }

private:
    const gf::ResidueField& k_;
    zq::UnramRing R_;
    std::mt19937_64 rng_;
    int p_, n_;
    std::vector<QElem> coeffs_;
};

bool unit_holds(const Theo3Report& rep, const Unit& u) {
    const auto& c = rep.conditions.at(static_cast<std::size_t>(u.condition - 1));
    if (u.ell == 0) return c.pass;
    if (std::find(c.failed_at.begin(), c.failed_at.end(), u.ell) != c.failed_at.end()) return false;
    return c.pass || !c.failed_at.empty();
}

// Tries every residue for the unit's digit until the unit holds; leaves the
// last candidate in place if none does.
bool solve_unit(Builder3& b, const Unit& u) {
    const bool exact = floor_of(u.index, b.p()).second && floor_of(u.index, b.p()).first == u.level;
    for (const auto& d : b.shuffled()) {
        if (exact && d == FFElem{}) continue;
        b.set_digit(u.index, u.level, d);
        if (unit_holds(check_cyclic_p3(b.build()), u)) return true;
    }
    return false;
}

void solve_from(Builder3& b, int first_condition) {
    for (const auto& u : units(b.p()))
        if (u.condition >= first_condition) solve_unit(b, u);
}

void break_profile(Builder3& b, int condition) {
    const int p = b.p();
    const int p2 = p * p;
    switch (condition) {
        case 1:
            if (b.below(2)) b.set_digit(p2, 1, FFElem{});
            else b.set_digit(p2 * (2 + b.below(p - 2)), 1, b.nonzero());
            break;
        case 2:
            if (b.below(2)) b.set_digit(p2 + p, 2, FFElem{});
            else b.set_digit(p * (1 + b.below(p - 1)), 1, b.nonzero());
            break;
        default:
            if (b.below(2)) b.set_digit(p2 + p + 1, 3, FFElem{});
            else {
                const auto low = prime_to_p(1, p2 + p - 1, p);
                b.set_digit(low[static_cast<std::size_t>(b.below(static_cast<int>(low.size())))], 2, b.nonzero());
            }
            break;
    }
}

}  // namespace

EisensteinPoly gen_p3(const gf::ResidueField& k, int precision, const GenRequest& req) {
    Builder3 b(k, precision, req.seed);
    b.randomize();
    solve_from(b, 4);
    switch (req.target) {
        case Target::cyclic: break;
        case Target::fail_condition: {
            const int c = req.condition;
            if (c < 1 || c > kConditionCount) throw DomainError("no condition " + std::to_string(c));
            if (c <= 3) {
                break_profile(b, c);
                break;
            }
            std::vector<Unit> mine;
            for (const auto& u : units(b.p()))
                if (u.condition == c) mine.push_back(u);
            const Unit u = mine[static_cast<std::size_t>(b.below(static_cast<int>(mine.size())))];
            const bool exact = floor_of(u.index, b.p()).second && floor_of(u.index, b.p()).first == u.level;
            bool broken = false;
            for (const auto& d : b.shuffled()) {
                if (exact && d == FFElem{}) continue;
                b.set_digit(u.index, u.level, d);
                if (!unit_holds(check_cyclic_p3(b.build()), u)) {
                    broken = true;
                    break;
                }
            }
            if (!broken) throw Error("could not break condition " + std::to_string(c));
            solve_from(b, c + 1);
            break;
        }
        case Target::perturb: {
            std::vector<std::pair<int, int>> slots;
            for (int i = 1; i <= b.n(); ++i)
                for (int level = floor_of(i, b.p()).first; level <= b.top(i); ++level) slots.push_back({i, level});
            const auto [i, level] = slots[static_cast<std::size_t>(b.below(static_cast<int>(slots.size())))];
            const bool exact = floor_of(i, b.p()).second && floor_of(i, b.p()).first == level;
            const FFElem old = b.digit(i, level);
            FFElem d = b.any();
            while (d == old || (exact && d == FFElem{})) d = b.any();
            b.set_digit(i, level, d);
            break;
        }
    }
    return b.build();
}

}  // namespace eisen::classify3
