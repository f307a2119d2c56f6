#include "eisen/report.hpp"

#include <algorithm>
#include <exception>

#include "eisen/error.hpp"

namespace eisen::report {

namespace {

std::uint64_t parse_coordinate(const Json& v) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
        if (v.get<long long>() < 0) throw InputError("coefficient coordinates must be non-negative");
        return v.get<std::uint64_t>();
    }
    if (!v.is_string()) throw InputError("coefficient coordinates must be integers or decimal strings");
    const auto s = v.get<std::string>();
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw InputError("not a non-negative decimal integer: \"" + s + "\"");
    return 0;  // strings are reduced later, digit by digit
}

// Decimal string modulo m.
std::uint64_t reduce_decimal(const std::string& s, std::uint64_t m) {
    std::uint64_t r = 0;
    for (char c : s) r = (r * 10 + static_cast<std::uint64_t>(c - '0')) % m;
    return r;
}

template <class T>
T field(const Json& j, const char* key) {
    if (!j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InputError(std::string("field \"") + key + "\" has the wrong type");
    }
}

}  // namespace

PolynomialDocument parse_document(const Json& j) {
    if (!j.is_object()) throw InputError("document must be a JSON object");
    PolynomialDocument d;
    d.p = field<int>(j, "p");
    d.f = j.contains("f") ? field<int>(j, "f") : 1;
    if (j.contains("residue_modulus")) d.residue_modulus = field<std::vector<int>>(j, "residue_modulus");
    d.degree = field<int>(j, "degree");
    if (j.contains("precision") && !j.at("precision").is_null()) d.precision = field<int>(j, "precision");
    if (!j.contains("coeffs") || !j.at("coeffs").is_array()) throw InputError("\"coeffs\" must be an array");
    for (const auto& entry : j.at("coeffs")) {
        std::vector<std::string> coords;
        if (!entry.is_array()) {
            parse_coordinate(entry);
            coords.push_back(entry.is_string() ? entry.get<std::string>() : std::to_string(entry.get<std::uint64_t>()));
        } else {
            for (const auto& v : entry) {
                parse_coordinate(v);
                coords.push_back(v.is_string() ? v.get<std::string>() : std::to_string(v.get<std::uint64_t>()));
            }
        }
        d.coeffs.push_back(std::move(coords));
    }
    return d;
}

Json to_json(const PolynomialDocument& d) {
    Json j;
    j["schema"] = kSchema;
    j["p"] = d.p;
    j["f"] = d.f;
    if (!d.residue_modulus.empty()) j["residue_modulus"] = d.residue_modulus;
    j["degree"] = d.degree;
    if (d.precision) j["precision"] = *d.precision;
    j["coeffs"] = d.coeffs;
    return j;
}

int default_precision(int degree_exponent) { return degree_exponent == 3 ? 7 : 6; }

upoly::EisensteinPoly to_poly(const PolynomialDocument& d) {
    try {
        if (d.p < 3) throw InputError("p must be an odd prime");
        if (d.f < 1) throw InputError("f must be positive");
        const int e = upoly::degree_exponent(d.degree, d.p);
        if (e == 0) throw InputError("degree must be p^2 or p^3");
        if (static_cast<int>(d.coeffs.size()) != d.degree)
            throw InputError("expected " + std::to_string(d.degree) + " coefficients, got " +
                             std::to_string(d.coeffs.size()));
        gf::ResidueField k(d.p, d.f, d.residue_modulus);
        zq::UnramRing R(k, d.precision.value_or(default_precision(e)));
        std::vector<zq::QElem> cs;
        for (const auto& coords : d.coeffs) {
            if (static_cast<int>(coords.size()) > d.f) throw InputError("a coefficient has more than f coordinates");
            zq::QElem a;
            for (std::size_t i = 0; i < coords.size(); ++i) a.c[i] = reduce_decimal(coords[i], R.modulus());
            cs.push_back(a);
        }
        return upoly::EisensteinPoly(R, std::move(cs));
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(e.what());
    }
}

PolynomialDocument from_poly(const upoly::EisensteinPoly& f) {
    PolynomialDocument d;
    const auto& R = f.ring();
    d.p = f.p();
    d.f = R.f();
    d.residue_modulus = R.residue().modulus();
    d.degree = f.degree();
    d.precision = R.precision();
    for (const auto& c : f.coeffs()) {
        std::vector<std::string> coords;
        for (int i = 0; i < R.f(); ++i) coords.push_back(std::to_string(c.c[i]));
        d.coeffs.push_back(std::move(coords));
    }
    return d;
}

Json residue_json(const gf::FFElem& x, int f) {
    Json j = Json::array();
    for (int i = 0; i < f; ++i) j.push_back(x.c[i]);
    return j;
}

Json element_json(const zq::QElem& x, int f) {
    Json j = Json::array();
    for (int i = 0; i < f; ++i) j.push_back(std::to_string(x.c[i]));
    return j;
}

namespace {

template <class Opt>
Json opt_residue(const Opt& x, int f) {
    return x ? residue_json(*x, f) : Json(nullptr);
}

Json residue_map(const std::map<int, gf::FFElem>& m, int f) {
    Json j = Json::object();
    for (const auto& [i, v] : m) j[std::to_string(i)] = residue_json(v, f);
    return j;
}

}  // namespace

Json to_json(const classify2::Theo1Report& rep, const gf::ResidueField& k) {
    const int f = k.f();
    Json j;
    j["cyclic"] = rep.cyclic;
    j["first_failed"] = rep.first_failed();
    Json conds = Json::array();
    for (const auto& c : rep.conditions) conds.push_back({{"id", c.id}, {"pass", c.pass}, {"reason", c.reason}});
    j["conditions"] = conds;
    j["F_p"] = opt_residue(rep.F_p, f);
    j["F_p2"] = opt_residue(rep.F_p2, f);
    j["G"] = residue_map(rep.G, f);
    j["V_kernel_dim"] = rep.V_kernel_dim ? Json(*rep.V_kernel_dim) : Json(nullptr);
    Json thetas = Json::array();
    for (const auto& t : rep.theta_checks) {
        Json roots = Json::array();
        for (const auto& r : t.roots) roots.push_back(residue_json(r, f));
        thetas.push_back({{"theta_bar", residue_json(t.theta_bar, f)},
                          {"theta", element_json(t.theta, f)},
                          {"target", residue_json(t.target, f)},
                          {"roots", roots},
                          {"pass", t.pass}});
    }
    j["theta_checks"] = thetas;
    j["theta_independent"] = rep.theta_independent;
    return j;
}

Json to_json(const classify2::ClassificationP2& c) {
    Json j;
    j["regime"] = classify2::to_string(c.regime);
    j["ell"] = c.ell;
    j["p_group_closure"] = c.p_group_closure;
    j["galois"] = c.galois;
    j["cyclic"] = c.cyclic;
    j["elementary_abelian"] = c.elementary_abelian;
    j["module_length"] = c.module_length ? Json(*c.module_length) : Json(nullptr);
    j["has_unramified_part"] = c.has_unramified_part ? Json(*c.has_unramified_part) : Json(nullptr);
    j["upper_breaks_over_F"] = c.upper_breaks_over_F ? Json(*c.upper_breaks_over_F) : Json(nullptr);
    j["split"] = c.split ? Json(classify2::to_string(*c.split)) : Json(nullptr);
    j["exponent"] = c.exponent ? Json(*c.exponent) : Json(nullptr);
    j["note"] = c.note;
    return j;
}

Json to_json(const classify3::Theo3Report& rep, const gf::ResidueField& k) {
    const int f = k.f();
    Json j;
    j["cyclic"] = rep.cyclic;
    j["first_failed"] = rep.first_failed();
    Json conds = Json::array();
    for (const auto& c : rep.conditions) {
        Json e{{"id", c.id}, {"pass", c.pass}, {"reason", c.reason}};
        if (!c.failed_at.empty()) e["failed_at"] = c.failed_at;
        e["printed"] = c.printed ? Json(*c.printed) : Json(nullptr);
        conds.push_back(e);
    }
    j["conditions"] = conds;
    j["F_p2"] = opt_residue(rep.F_p2, f);
    j["F_p3"] = opt_residue(rep.F_p3, f);
    j["G"] = residue_map(rep.G, f);
    j["H"] = residue_map(rep.H, f);
    Json rho = Json::array();
    for (const auto& r : rep.rho) rho.push_back(residue_json(r, f));
    j["rho"] = rho;
    j["alpha"] = opt_residue(rep.alpha, f);
    j["rho_ell"] = residue_map(rep.rho_ell, f);
    j["tau2"] = opt_residue(rep.tau2, f);
    j["P2"] = opt_residue(rep.P2, f);
    j["Q"] = residue_map(rep.Q, f);
    j["R"] = residue_map(rep.R, f);
    j["S2"] = opt_residue(rep.S2, f);
    j["xi"] = opt_residue(rep.xi, f);
    j["omega"] = opt_residue(rep.omega, f);
    j["lift_trials"] = static_cast<int>(rep.lift_trials.size());
    j["lift_independent"] = rep.lift_independent;
    return j;
}

Json to_json(const cft_oracle::NormGroupReport& r) {
    Json j;
    j["level"] = r.level;
    j["generator_count"] = r.generator_count;
    Json inv = Json::array();
    for (auto x : r.invariant_factors) inv.push_back(std::to_string(x));
    j["invariant_factors"] = inv;
    j["quotient_order"] = std::to_string(r.quotient_order);
    j["max_abelian_degree"] = std::to_string(r.max_abelian_degree);
    return j;
}

Json error_json(const std::string& kind, const std::string& message) {
    return Json{{"schema", kSchema}, {"error", {{"kind", kind}, {"message", message}}}};
}

std::vector<std::string> default_targets(int degree_exponent) {
    if (degree_exponent == 3) return {"cyclic", "fail", "perturb"};
    return {"cyclic", "random_profile", "fail", "break_ell", "break1"};
}

std::uint64_t sample_seed(std::uint64_t seed, int index) {
    // splitmix64 of the pair
    std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(index) + 1;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

void verify_p2(const gf::ResidueField& k, int precision, const std::string& target, SampleOutcome& s,
               cft_oracle::Schedule schedule) {
    using namespace classify2;
    const int p = k.p();
    const auto t = target_from_string(target);
    if (!t) throw InputError("unknown degree p^2 target \"" + target + "\"");
    GenRequest req;
    req.target = *t;
    req.seed = s.seed;
    const auto fails = failable_conditions(p);
    if (*t == Target::fail_condition) req.condition = s.condition = fails[static_cast<std::size_t>(s.index) % fails.size()];
    if (*t == Target::break_ell) req.ell = s.ell = 2 + s.index % std::max(1, p - 2);

    const auto P = gen_p2(k, precision, req);
    s.document = to_json(from_poly(P));
    const auto rep = check_cyclic_p2(P);
    const auto cl = classify_p2(P);
    cft_oracle::OracleOptions opt;
    opt.schedule = schedule;
    const auto ov = cft_oracle::oracle_verdicts(P, opt);
    const auto rd = upoly::ramification_data(P);
    const auto lb = rd.lower_breaks();

    s.checker_cyclic = rep.cyclic;
    s.first_failed = rep.first_failed();
    s.oracle_cyclic = ov.cyclic;
    s.invariant_factors = ov.invariant_factors;
    const auto p2 = static_cast<std::uint64_t>(p * p);
    s.galois_agree = cl.galois == (ov.max_abelian_degree == p2);
    s.elementary_agree = cl.elementary_abelian == ov.elementary_abelian;
    s.non_galois_agree = !(cl.p_group_closure && !cl.galois) || ov.max_abelian_degree == static_cast<std::uint64_t>(p);
    // Regime <=> polygon: a classified regime predicts the whole polygon, and
    // an unclassified polynomial has none of the predicted shapes.
    if (cl.regime == Regime::Unclassified) {
        bool shaped = false;
        if (rd.all_integral()) {
            shaped = lb == expected_lower_breaks(Regime::BreakPplus1, 0, p) ||
                     lb == expected_lower_breaks(Regime::Break1, 0, p);
            for (int l = 2; l <= p - 1; ++l) shaped = shaped || lb == expected_lower_breaks(Regime::BreakEll, l, p);
        }
        s.regime_agree = !shaped;
    } else {
        s.regime_agree = rd.all_integral() && lb == expected_lower_breaks(cl.regime, cl.ell, p);
    }
    s.lifts_agree = rep.theta_independent;
    s.agree = s.checker_cyclic == s.oracle_cyclic && s.galois_agree && s.elementary_agree && s.non_galois_agree &&
              s.regime_agree && s.lifts_agree;
}

void verify_p3(const gf::ResidueField& k, int precision, const std::string& target, SampleOutcome& s,
               cft_oracle::Schedule schedule) {
    using namespace classify3;
    const auto t = target_from_string(target);
    if (!t) throw InputError("unknown degree p^3 target \"" + target + "\"");
    GenRequest req;
    req.target = *t;
    req.seed = s.seed;
    const auto fails = failable_conditions(k.p());
    if (*t == Target::fail_condition) req.condition = s.condition = fails[static_cast<std::size_t>(s.index) % fails.size()];

    const auto P = gen_p3(k, precision, req);
    s.document = to_json(from_poly(P));
    const auto rep = check_cyclic_p3(P);
    cft_oracle::OracleOptions opt;
    opt.schedule = schedule;
    const auto ov = cft_oracle::oracle_verdicts(P, opt);
    s.checker_cyclic = rep.cyclic;
    s.first_failed = rep.first_failed();
    s.oracle_cyclic = ov.cyclic;
    s.invariant_factors = ov.invariant_factors;
    s.lifts_agree = rep.lift_independent;
    s.agree = s.checker_cyclic == s.oracle_cyclic && s.lifts_agree;
}

}  // namespace

VerifyResult run_verify(const VerifyOptions& options) {
    if (options.degree_exponent != 2 && options.degree_exponent != 3) throw InputError("degree must be p2 or p3");
    if (options.samples < 0) throw InputError("sample count must be non-negative");
    VerifyResult out;
    out.options = options;
    if (out.options.targets.empty()) out.options.targets = default_targets(options.degree_exponent);
    const auto& targets = out.options.targets;
    for (const auto& t : targets) {
        const bool ok = options.degree_exponent == 2 ? classify2::target_from_string(t).has_value()
                                                     : classify3::target_from_string(t).has_value();
        if (!ok) throw InputError("unknown target \"" + t + "\"");
    }
    gf::ResidueField k = [&] {
        try {
            return gf::ResidueField(options.p, options.f);
        } catch (const Error& e) {
            throw InputError(e.what());
        }
    }();
    const int precision = options.precision ? options.precision : default_precision(options.degree_exponent);

    out.samples.resize(static_cast<std::size_t>(options.samples));
    std::vector<std::string> errors(out.samples.size());
    const auto inner = options.parallel ? cft_oracle::Schedule::serial : cft_oracle::Schedule::parallel;

#pragma omp parallel for schedule(dynamic) if (options.parallel)
    for (int i = 0; i < options.samples; ++i) {
        auto& s = out.samples[static_cast<std::size_t>(i)];
        s.index = i;
        s.target = targets[static_cast<std::size_t>(i) % targets.size()];
        s.seed = sample_seed(options.seed, i);
        try {
            if (options.degree_exponent == 2) verify_p2(k, precision, s.target, s, inner);
            else verify_p3(k, precision, s.target, s, inner);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
            s.agree = false;
        }
    }
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        if (!errors[i].empty()) out.samples[i].document["error"] = errors[i];
        if (!out.samples[i].agree) ++out.disagreements;
    }
    return out;
}

Json to_json(const VerifyResult& r) {
    const bool p2 = r.options.degree_exponent == 2;
    Json j;
    j["schema"] = kSchema;
    j["p"] = r.options.p;
    j["f"] = r.options.f;
    j["degree"] = p2 ? "p2" : "p3";
    j["samples"] = static_cast<int>(r.samples.size());
    j["seed"] = std::to_string(r.options.seed);

    // Rows: checker verdict; columns: oracle verdict.
    Json matrix = Json::object();
    Json by_target = Json::object();
    int agree = 0;
    int cc = 0, cn = 0, nc = 0, nn = 0;
    for (const auto& s : r.samples) {
        if (s.agree) ++agree;
        (s.checker_cyclic ? (s.oracle_cyclic ? cc : cn) : (s.oracle_cyclic ? nc : nn))++;
        auto& t = by_target[s.target];
        if (t.is_null()) t = {{"samples", 0}, {"agree", 0}};
        t["samples"] = t["samples"].get<int>() + 1;
        if (s.agree) t["agree"] = t["agree"].get<int>() + 1;
    }
    matrix["checker_cyclic"] = {{"oracle_cyclic", cc}, {"oracle_not_cyclic", cn}};
    matrix["checker_not_cyclic"] = {{"oracle_cyclic", nc}, {"oracle_not_cyclic", nn}};
    j["agreement"] = {{"agree", agree}, {"total", static_cast<int>(r.samples.size())}};
    j["matrix"] = matrix;
    j["by_target"] = by_target;

    Json discrepancies = Json::array();
    for (const auto& s : r.samples) {
        if (s.agree) continue;
        Json d{{"index", s.index},
               {"target", s.target},
               {"seed", std::to_string(s.seed)},
               {"checker_cyclic", s.checker_cyclic},
               {"first_failed", s.first_failed},
               {"oracle_cyclic", s.oracle_cyclic}};
        Json inv = Json::array();
        for (auto x : s.invariant_factors) inv.push_back(std::to_string(x));
        d["invariant_factors"] = inv;
        if (s.condition) d["condition"] = s.condition;
        if (p2) {
            d["galois_agree"] = s.galois_agree;
            d["elementary_agree"] = s.elementary_agree;
            d["non_galois_agree"] = s.non_galois_agree;
            d["regime_agree"] = s.regime_agree;
        }
        d["lifts_agree"] = s.lifts_agree;
        d["document"] = s.document;
        discrepancies.push_back(d);
    }
    j["discrepancies"] = discrepancies;
    return j;
}

}  // namespace eisen::report
