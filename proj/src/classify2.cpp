#include "eisen/classify2.hpp"

#include <algorithm>

#include "eisen/additive.hpp"
#include "eisen/error.hpp"

namespace eisen::classify2 {

using gf::LinearizedPoly;
using upoly::EisensteinPoly;
using zq::QElem;

std::optional<FFElem> scaled_residue(const EisensteinPoly& f, int i, int k) {
    const auto& R = f.ring();
    if (R.valuation(f.coeff(i)) < k) return std::nullopt;
    return R.residue_of_div(f.coeff(i), k);
}

std::vector<int> prime_to_p(int a, int b, int p) {
    std::vector<int> out;
    for (int i = std::max(a, 1); i <= b; ++i)
        if (i % p) out.push_back(i);
    return out;
}

int Theo1Report::first_failed() const {
    for (const auto& c : conditions)
        if (!c.pass) return c.id;
    return 0;
}

namespace {

int val(const EisensteinPoly& f, int i) { return f.ring().valuation(f.coeff(i)); }

std::string idx(const char* name, int i) { return std::string(name) + "_" + std::to_string(i); }

void require_p2(const EisensteinPoly& f) {
    if (f.p() == 2) throw DomainError("p = 2 is not supported");
    if (upoly::degree_exponent(f.degree(), f.p()) != 2) throw DomainError("expected a polynomial of degree p^2");
}

// Conditions 1 and 2 as (pass, reason).
std::pair<bool, std::string> profile_condition_1(const EisensteinPoly& f) {
    const int p = f.p();
    if (val(f, p) != 1) return {false, "v(f_" + std::to_string(p) + ") = " + std::to_string(val(f, p)) + ", expected 1"};
    for (int i : prime_to_p(2, p - 1, p))
        if (val(f, p * i) < 2) return {false, "v(" + idx("f", p * i) + ") < 2"};
    return {true, ""};
}

std::pair<bool, std::string> profile_condition_2(const EisensteinPoly& f) {
    const int p = f.p();
    for (int i : prime_to_p(1, p - 1, p))
        if (val(f, i) < 2) return {false, "v(" + idx("f", i) + ") < 2"};
    if (val(f, p + 1) != 2)
        return {false, "v(" + idx("f", p + 1) + ") = " + std::to_string(val(f, p + 1)) + ", expected 2"};
    for (int i : prime_to_p(p + 2, p * p - 1, p))
        if (val(f, i) < 3) return {false, "v(" + idx("f", i) + ") < 3"};
    return {true, ""};
}

}  // namespace

Theo1Report check_cyclic_p2(const EisensteinPoly& f) {
    require_p2(f);
    const auto& R = f.ring();
    const auto& k = R.residue();
    const int p = f.p();
    const int n = f.degree();
    const FFElem half = k.inv(k.from_int(2));

    Theo1Report rep;
    auto record = [&](int id, bool pass, std::string reason) { rep.conditions.push_back({id, pass, std::move(reason)}); };

    {
        auto [ok, why] = profile_condition_1(f);
        record(1, ok, why);
    }
    {
        auto [ok, why] = profile_condition_2(f);
        record(2, ok, why);
    }

    rep.F_p = scaled_residue(f, p, 1);
    rep.F_p2 = scaled_residue(f, n, 1);
    std::vector<int> g_indices = prime_to_p(1, p + 1, p);
    for (int l = 2; l <= p - 1; ++l) g_indices.push_back(p * l);
    for (int i : g_indices)
        if (auto g = scaled_residue(f, i, 2)) rep.G[i] = *g;
    auto G = [&](int i) -> std::optional<FFElem> {
        auto it = rep.G.find(i);
        return it == rep.G.end() ? std::nullopt : std::optional<FFElem>(it->second);
    };

    const FFElem Fp = *rep.F_p;
    const FFElem Fp2 = *rep.F_p2;
    const bool fp_unit = !k.is_zero(Fp);
    const LinearizedPoly A = LinearizedPoly::from({Fp, Fp2});
    rep.V_kernel_dim = gf::solve_linearized(k, A, k.zero()).kernel_dim;

    // (3)
    std::optional<FFElem> c;  // -F_p/F_{p^2}
    if (!fp_unit) {
        record(3, false, "F_p = 0");
    } else {
        c = k.neg(k.div(Fp, Fp2));
        const bool ok = k.is_dth_power(*c, static_cast<std::uint64_t>(p - 1));
        record(3, ok, ok ? "" : "-F_p/F_{p^2} is not a (p-1)-th power");
    }

    // (4)
    if (auto g = G(p + 1)) {
        const bool ok = k.pow(*g, static_cast<std::uint64_t>(p)) == k.neg(k.pow(Fp, static_cast<std::uint64_t>(p + 1)));
        record(4, ok, ok ? "" : "G_{p+1}^p != -F_p^{p+1}");
    } else {
        record(4, false, idx("G", p + 1) + " undefined (valuation < 2)");
    }

    // (5)
    {
        bool ok = true;
        std::string why;
        for (int l : prime_to_p(3, p - 1, p)) {
            const auto gl = G(l), gpl = G(p * l);
            if (!fp_unit || !gl || !gpl) {
                ok = false;
                why = "undefined quantity at l = " + std::to_string(l);
                break;
            }
            if (*gpl != k.mul(Fp2, k.pow(k.div(*gl, Fp), static_cast<std::uint64_t>(p)))) {
                ok = false;
                why = "fails at l = " + std::to_string(l);
                break;
            }
        }
        record(5, ok, why);
    }

    // (6)
    {
        const auto g2 = G(2), g2p = G(2 * p);
        if (!fp_unit || !g2 || !g2p) {
            record(6, false, "undefined quantity");
        } else {
            const FFElem rhs = k.add(k.mul(Fp2, k.pow(k.div(*g2, Fp), static_cast<std::uint64_t>(p))),
                                     k.mul(half, k.mul(Fp, k.sub(Fp, k.frobenius(Fp2, 1, true)))));
            const bool ok = *g2p == rhs;
            record(6, ok, ok ? "" : "G_{2p} mismatch");
        }
    }

    // (7), for every admissible theta
    {
        const auto g1 = G(1);
        if (!c || !rep.passed(3)) {
            record(7, false, "no theta with theta^{p(p-1)} = -F_p/F_{p^2}");
        } else if (!g1) {
            record(7, false, "G_1 undefined (valuation < 2)");
        } else {
            const auto pp = static_cast<std::uint64_t>(p);
            for (const auto& tb : k.all_roots_of_power(*c, pp * (pp - 1))) {
                ThetaCheck tc;
                tc.theta_bar = tb;
                tc.theta = R.teichmuller(tb);
                const QElem w = R.add(R.mul(f.coeff(n), R.pow(tc.theta, pp * pp)), R.mul(f.coeff(p), R.pow(tc.theta, pp)));
                if (R.valuation(w) < 2) throw Error("f_{p^2} theta^{p^2} + f_p theta^p not divisible by p^2");
                tc.target = k.add(R.residue_of_div(w, 2), k.mul(*g1, tb));
                tc.roots = gf::solve_linearized(k, A, tc.target).roots;
                tc.pass = !tc.roots.empty();
                rep.theta_checks.push_back(std::move(tc));
            }
            const bool ok = rep.theta_checks.front().pass;
            for (const auto& tc : rep.theta_checks)
                if (tc.pass != ok) rep.theta_independent = false;
            record(7, ok, ok ? "" : "no root in the residue field");
        }
    }

    rep.cyclic = std::all_of(rep.conditions.begin(), rep.conditions.end(), [](const auto& c) { return c.pass; });
    return rep;
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::BreakPplus1: return "BreakPplus1";
        case Regime::BreakEll: return "BreakEll";
        case Regime::Break1: return "Break1";
        case Regime::Unclassified: return "Unclassified";
    }
    return "?";
}

std::string to_string(Split s) {
    switch (s) {
        case Split::split: return "split";
        case Split::nonsplit: return "nonsplit";
        case Split::not_applicable: return "not-applicable";
    }
    return "?";
}

Regime detect_regime(const EisensteinPoly& f, int* ell_out) {
    require_p2(f);
    const int p = f.p();
    if (profile_condition_1(f).first && profile_condition_2(f).first) return Regime::BreakPplus1;

    bool pi_ok = true;  // v(f_{pi}) >= 2 for i in I(2, p-1)
    for (int i : prime_to_p(2, p - 1, p)) pi_ok = pi_ok && val(f, p * i) >= 2;

    if (val(f, p) == 1 && pi_ok) {
        for (int l = 2; l <= p - 1; ++l) {
            const int r = p * p - (p - 1) * l + p;
            bool ok = val(f, r) == 2;
            for (int i : prime_to_p(1, r - 1, p)) ok = ok && val(f, i) >= 2;
            for (int i : prime_to_p(r + 1, p * p - 1, p)) ok = ok && val(f, i) >= 3;
            if (ok) {
                if (ell_out) *ell_out = l;
                return Regime::BreakEll;
            }
        }
    }
    if (val(f, 1) == 1 && pi_ok) {
        bool ok = true;
        for (int i : prime_to_p(2, p * p - 1, p)) ok = ok && val(f, i) >= 2;
        if (ok) return Regime::Break1;
    }
    return Regime::Unclassified;
}

std::vector<int> expected_lower_breaks(Regime r, int ell, int p) {
    switch (r) {
        case Regime::BreakPplus1: return {1, p + 1};
        case Regime::BreakEll: return {1, ell};
        case Regime::Break1: return {1};
        case Regime::Unclassified: return {};
    }
    return {};
}

namespace {

std::vector<int> breaks_upto(int last, std::optional<int> extra) {
    std::vector<int> b;
    for (int i = 1; i <= last; ++i) b.push_back(i);
    if (extra) b.push_back(*extra);
    return b;
}

void set_closure(ClassificationP2& c, int m, bool unram, std::vector<int> breaks, Split s, int exponent) {
    c.p_group_closure = true;
    c.module_length = m;
    c.has_unramified_part = unram;
    c.upper_breaks_over_F = std::move(breaks);
    c.split = s;
    c.exponent = exponent;
}

void classify_break_pplus1(const EisensteinPoly& f, ClassificationP2& out) {
    const auto& k = f.ring().residue();
    const int p = f.p();
    const auto pp = static_cast<std::uint64_t>(p);
    const Theo1Report rep = check_cyclic_p2(f);
    const FFElem Fp = *rep.F_p, Fp2 = *rep.F_p2;
    const FFElem Gp1 = rep.G.at(p + 1);

    if (!rep.passed(3)) {
        out.note = "-F_p/F_{p^2} is not a (p-1)-th power; L contains no Galois subextension of degree p";
        return;
    }
    if (!k.is_dth_power(k.div(Gp1, k.mul(Fp, Fp2)), pp - 1)) {
        out.note = "G_{p+1}/(F_p F_{p^2}) is not a (p-1)-th power; L/F is not Galois";
        return;
    }
    const int p2 = p * p;

    if (!rep.passed(4)) {
        set_closure(out, p, false, breaks_upto(p - 1, p + 1), Split::split, p2);
        out.note = "wreath product of two cyclic groups of order p";
        return;
    }

    // Largest l whose G-condition fails.
    const FFElem c = k.neg(k.div(Fp, Fp2));
    int ell = 0;
    for (int l = p - 1; l >= 3 && !ell; --l) {
        const auto gl = rep.G.find(l), gpl = rep.G.find(p * l);
        if (gl == rep.G.end() || gpl == rep.G.end()) continue;
        if (gpl->second != k.mul(Fp2, k.pow(k.div(gl->second, Fp), pp))) ell = l;
    }
    if (!ell && !rep.passed(6)) ell = 2;

    if (ell) {
        const auto gl = rep.G.find(ell), gpl = rep.G.find(p * ell);
        if (gl == rep.G.end() || gpl == rep.G.end()) {
            out.note = "G-coefficients undefined at l = " + std::to_string(ell);
            return;
        }
        // U(X) = F_{p^2} c^{l/p} X^p + F_p X - G_{pl} c^{l/p} - G_l
        const FFElem cl = k.frobenius(k.pow(c, static_cast<std::uint64_t>(ell)), 1, true);
        const LinearizedPoly U = LinearizedPoly::from({Fp, k.mul(Fp2, cl)});
        const FFElem rhs = k.add(k.mul(gpl->second, cl), gl->second);
        const bool root = gf::in_range(k, U, rhs);
        set_closure(out, root ? ell : ell + 1, !root, breaks_upto(ell - 1, p + 1), Split::nonsplit, p2);
        return;
    }

    if (!rep.passed(7)) {
        set_closure(out, 2, true, {p + 1}, Split::nonsplit, p2);
        return;
    }
    set_closure(out, 1, false, {p + 1}, Split::nonsplit, p2);
    out.galois = true;
    out.cyclic = true;
}

void classify_break_ell(const EisensteinPoly& f, int ell, ClassificationP2& out) {
    const auto& k = f.ring().residue();
    const int p = f.p();
    const auto pp = static_cast<std::uint64_t>(p);
    const int r = p * p - (p - 1) * ell + p;
    const FFElem Fp = *scaled_residue(f, p, 1);
    const FFElem Fp2 = *scaled_residue(f, p * p, 1);
    const FFElem Gr = *scaled_residue(f, r, 2);

    const FFElem c = k.neg(k.div(Fp, Fp2));
    if (!k.is_dth_power(c, pp - 1)) {
        out.note = "-F_p/F_{p^2} is not a (p-1)-th power";
        return;
    }
    const FFElem d = k.div(k.scale(Gr, ell), k.mul(Fp, Fp2));
    if (!k.is_dth_power(d, pp - 1)) {
        out.note = "l G_r/(F_p F_{p^2}) is not a (p-1)-th power; L/F is not Galois";
        return;
    }
    // U(X) = c^l X^p - d X - 1
    const LinearizedPoly U = LinearizedPoly::from({k.neg(d), k.pow(c, static_cast<std::uint64_t>(ell))});
    const bool root = gf::in_range(k, U, k.one());
    const int m = root ? ell : ell + 1;
    set_closure(out, m, !root, breaks_upto(ell, std::nullopt), Split::split, m < p ? p : p * p);
}

void classify_break1(const EisensteinPoly& f, ClassificationP2& out) {
    const auto& k = f.ring().residue();
    const int p = f.p();
    const FFElem F1 = *scaled_residue(f, 1, 1);
    const FFElem Fp = *scaled_residue(f, p, 1);
    const FFElem Fp2 = *scaled_residue(f, p * p, 1);
    const LinearizedPoly A = LinearizedPoly::from({k.div(F1, Fp2), k.div(Fp, Fp2), k.one()});
    if (!additive::is_p_extension_splitting(k, A)) {
        out.note = "F_{p^2} Y^{p^2} + F_p Y^p + F_1 Y fails the p-extension test";
        return;
    }
    const bool splits = gf::solve_linearized(k, A, k.zero()).splits_completely;
    if (splits) {
        set_closure(out, 1, false, {1}, Split::split, p);
        out.galois = true;
        out.elementary_abelian = true;
    } else {
        set_closure(out, 2, true, {1}, Split::split, p);
    }
}

}  // namespace

ClassificationP2 classify_p2(const EisensteinPoly& f) {
    ClassificationP2 out;
    out.regime = detect_regime(f, &out.ell);
    switch (out.regime) {
        case Regime::BreakPplus1: classify_break_pplus1(f, out); break;
        case Regime::BreakEll: classify_break_ell(f, out.ell, out); break;
        case Regime::Break1: classify_break1(f, out); break;
        case Regime::Unclassified: out.note = "valuation profile outside the classified cases"; break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generator

std::string to_string(Target t) {
    switch (t) {
        case Target::cyclic: return "cyclic";
        case Target::fail_condition: return "fail";
        case Target::random_profile: return "random_profile";
        case Target::break_ell: return "break_ell";
        case Target::break1: return "break1";
        case Target::random_eisenstein: return "random_eisenstein";
    }
    return "?";
}

std::optional<Target> target_from_string(const std::string& s) {
    for (auto t : {Target::cyclic, Target::fail_condition, Target::random_profile, Target::break_ell, Target::break1,
                   Target::random_eisenstein})
        if (to_string(t) == s) return t;
    return std::nullopt;
}

std::vector<int> failable_conditions(int p) {
    std::vector<int> out{1, 2, 3, 4};
    if (p >= 5) out.push_back(5);
    out.push_back(6);
    out.push_back(7);
    return out;
}

namespace {

class Builder {
public:
    Builder(const gf::ResidueField& k, int precision, std::uint64_t seed)
        : k_(k), R_(k, precision), rng_(seed), p_(k.p()), n_(k.p() * k.p()), coeffs_(static_cast<std::size_t>(n_ + 1)) {
        if (precision < 4) throw DomainError("generator needs precision at least 4");
        for (auto& c : coeffs_) c = R_.zero();
    }

    FFElem any() { return k_.element(std::uniform_int_distribution<std::uint64_t>(0, k_.q() - 1)(rng_)); }
    FFElem nonzero() { return k_.element(std::uniform_int_distribution<std::uint64_t>(1, k_.q() - 1)(rng_)); }
    bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }
    int below(int m) { return std::uniform_int_distribution<int>(0, m - 1)(rng_); }

    /// Sum of p^{lo + j} lift(digits[j]).
    QElem digits(int lo, std::initializer_list<FFElem> ds) const {
        QElem acc = R_.zero();
        QElem pw = R_.from_int(1);
        for (int i = 0; i < lo; ++i) pw = R_.scale(pw, p_);
        for (const auto& d : ds) {
            acc = R_.add(acc, R_.mul(pw, R_.lift(d)));
            pw = R_.scale(pw, p_);
        }
        return acc;
    }

    void set(int i, QElem v) { coeffs_[static_cast<std::size_t>(i)] = v; }
    const QElem& get(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
    void set_residues(int i, int lo, std::initializer_list<FFElem> ds) { set(i, digits(lo, ds)); }

    EisensteinPoly build() const {
        return upoly::canonical_truncate(EisensteinPoly(R_, {coeffs_.begin() + 1, coeffs_.end()}));
    }

    const gf::ResidueField& k() const { return k_; }
    const zq::UnramRing& R() const { return R_; }
    int p() const { return p_; }
    int n() const { return n_; }

private:
    const gf::ResidueField& k_;
    zq::UnramRing R_;
    std::mt19937_64 rng_;
    int p_, n_;
    std::vector<QElem> coeffs_;
};

// Residue of (f_{p^2} theta^{p^2} + f_p theta^p)/p^2.
FFElem c0_prime(const Builder& b, const QElem& theta) {
    const auto& R = b.R();
    const auto pp = static_cast<std::uint64_t>(b.p());
    const QElem w = R.add(R.mul(b.get(b.n()), R.pow(theta, pp * pp)), R.mul(b.get(b.p()), R.pow(theta, pp)));
    return R.residue_of_div(w, 2);
}

EisensteinPoly gen_conforming_profile(Builder& b, const GenRequest& req) {
    const auto& k = b.k();
    const int p = b.p();
    const auto pp = static_cast<std::uint64_t>(p);
    const int fail = req.target == Target::fail_condition ? req.condition : 0;
    const bool random = req.target == Target::random_profile;

    const FFElem Fp2 = b.nonzero();
    FFElem Fp;
    if (random) {
        Fp = b.nonzero();
    } else if (fail == 3) {
        // -F_p/F_{p^2} outside the (p-1)-th powers.
        FFElem z;
        do z = b.nonzero();
        while (k.is_dth_power(z, pp - 1));
        Fp = k.neg(k.mul(Fp2, z));
    } else {
        Fp = k.neg(k.mul(Fp2, k.pow(b.nonzero(), pp - 1)));
    }
    const FFElem c = k.neg(k.div(Fp, Fp2));
    const FFElem half = k.inv(k.from_int(2));

    std::map<int, FFElem> G;
    G[p + 1] = random ? b.nonzero() : k.frobenius(k.neg(k.pow(Fp, pp + 1)), 1, true);
    for (int l : prime_to_p(2, p - 1, p)) G[l] = b.any();
    for (int l : prime_to_p(3, p - 1, p))
        G[p * l] = random ? b.any() : k.mul(Fp2, k.pow(k.div(G[l], Fp), pp));
    G[2 * p] = random ? b.any()
                      : k.add(k.mul(Fp2, k.pow(k.div(G[2], Fp), pp)),
                              k.mul(half, k.mul(Fp, k.sub(Fp, k.frobenius(Fp2, 1, true)))));

    if (fail == 4) {
        // G_{p+1} stays nonzero, else condition 2 fails first.
        FFElem moved;
        do moved = k.add(G[p + 1], b.nonzero());
        while (k.is_zero(moved));
        G[p + 1] = moved;
    }
    if (fail == 5) {
        const auto ls = prime_to_p(3, p - 1, p);
        if (ls.empty()) throw DomainError("condition 5 is vacuous at p = 3");
        const int l = ls[static_cast<std::size_t>(b.below(static_cast<int>(ls.size())))];
        G[p * l] = k.add(G[p * l], b.nonzero());
    }
    if (fail == 6) G[2 * p] = k.add(G[2 * p], b.nonzero());

    b.set_residues(p, 1, {Fp, b.any()});
    b.set_residues(p * p, 1, {Fp2, b.any(), b.any()});

    // G_1 so that the last condition holds (or fails, for fail == 7).
    const auto thetas = k.is_dth_power(c, pp - 1) ? k.all_roots_of_power(c, pp * (pp - 1)) : std::vector<FFElem>{};
    if (random || thetas.empty()) {
        G[1] = b.any();
    } else {
        const FFElem tb = thetas.front();
        const FFElem c0 = c0_prime(b, b.R().teichmuller(tb));
        const LinearizedPoly A = LinearizedPoly::from({Fp, Fp2});
        FFElem value;
        if (fail == 7) {
            do value = b.any();
            while (gf::in_range(k, A, value));
        } else {
            value = gf::evaluate(k, A, b.any());
        }
        G[1] = k.div(k.sub(value, c0), tb);
    }

    for (const auto& [i, g] : G) b.set_residues(i, 2, {g});
    if (fail == 1) b.set(2 * p, b.R().add(b.get(2 * p), b.digits(1, {b.nonzero()})));
    if (fail == 2) b.set_residues(p + 2, 2, {b.nonzero()});
    return b.build();
}

EisensteinPoly gen_break_ell(Builder& b, int ell) {
    const auto& k = b.k();
    const int p = b.p();
    const auto pp = static_cast<std::uint64_t>(p);
    if (ell < 2 || ell > p - 1) throw DomainError("break_ell needs 2 <= l <= p-1");
    const int r = p * p - (p - 1) * ell + p;

    const FFElem Fp2 = b.nonzero();
    const bool galois_friendly = b.coin();
    const FFElem Fp = galois_friendly ? k.neg(k.mul(Fp2, k.pow(b.nonzero(), pp - 1))) : b.nonzero();
    FFElem Gr = b.nonzero();
    if (galois_friendly && b.coin())
        Gr = k.div(k.mul(k.mul(Fp, Fp2), k.pow(b.nonzero(), pp - 1)), k.from_int(ell));

    b.set_residues(p, 1, {Fp, b.any()});
    b.set_residues(p * p, 1, {Fp2, b.any(), b.any()});
    for (int i : prime_to_p(2, p - 1, p)) b.set_residues(p * i, 2, {b.any()});
    for (int i : prime_to_p(1, r - 1, p)) b.set_residues(i, 2, {b.any()});
    b.set_residues(r, 2, {Gr});
    return b.build();
}

EisensteinPoly gen_break1(Builder& b) {
    const auto& k = b.k();
    const int p = b.p();
    const auto pp = static_cast<std::uint64_t>(p);

    const FFElem Fp2 = b.nonzero();
    FFElem F1, Fp;
    if (b.coin()) {
        // (Y^p - uY) o (Y^p - vY) with v = w1^{p-1}; u = B(w2)^{p-1} when
        // that is nonzero, which makes the kernel two-dimensional.
        const FFElem w1 = b.nonzero();
        const FFElem v = k.pow(w1, pp - 1);
        const FFElem w2 = b.any();
        FFElem s = k.sub(k.pow(w2, pp), k.mul(v, w2));
        if (k.is_zero(s) || b.coin()) s = b.nonzero();
        const FFElem u = k.pow(s, pp - 1);
        Fp = k.neg(k.mul(Fp2, k.add(k.pow(v, pp), u)));
        F1 = k.mul(Fp2, k.mul(u, v));
    } else {
        F1 = b.nonzero();
        Fp = b.any();
    }
    b.set_residues(1, 1, {F1, b.any()});
    b.set_residues(p, 1, {Fp, b.any()});
    b.set_residues(p * p, 1, {Fp2, b.any(), b.any()});
    for (int i : prime_to_p(2, p * p - 1, p)) b.set_residues(i, 2, {b.any()});
    for (int i : prime_to_p(2, p - 1, p)) b.set_residues(p * i, 2, {b.any()});
    return b.build();
}

EisensteinPoly gen_random_eisenstein(Builder& b) {
    const int p = b.p();
    for (int i = 1; i < b.n(); ++i) b.set_residues(i, 1, {b.any(), b.any()});
    b.set_residues(p * p, 1, {b.nonzero(), b.any(), b.any()});
    return b.build();
}

}  // namespace

EisensteinPoly gen_p2(const gf::ResidueField& k, int precision, const GenRequest& req) {
    if (k.p() < 3) throw DomainError("p must be odd");
    Builder b(k, precision, req.seed);
    switch (req.target) {
        case Target::cyclic:
        case Target::random_profile: return gen_conforming_profile(b, req);
        case Target::fail_condition: {
            const auto ok = failable_conditions(k.p());
            if (std::find(ok.begin(), ok.end(), req.condition) == ok.end())
                throw DomainError("condition " + std::to_string(req.condition) + " cannot be targeted at this p");
            return gen_conforming_profile(b, req);
        }
        case Target::break_ell: return gen_break_ell(b, req.ell);
        case Target::break1: return gen_break1(b);
        case Target::random_eisenstein: return gen_random_eisenstein(b);
    }
    throw DomainError("unknown target");
}

}  // namespace eisen::classify2
