#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eisen/cft_oracle.hpp"
#include "eisen/classify2.hpp"
#include "eisen/classify3.hpp"
#include "eisen/cyclosum.hpp"
#include "eisen/error.hpp"
#include "eisen/report.hpp"

using namespace eisen;
using report::Json;

namespace {

constexpr int kDisagreement = 1;
constexpr int kBadInput = 2;

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

upoly::EisensteinPoly load(const std::string& path) { return report::to_poly(report::parse_document(read_json(path))); }

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json header(const upoly::EisensteinPoly& f) {
    Json j;
    j["schema"] = report::kSchema;
    j["p"] = f.p();
    j["f"] = f.ring().f();
    j["degree"] = f.degree();
    j["precision"] = f.ring().precision();
    return j;
}

int classify(const std::string& path, bool full, bool p3_only) {
    const auto f = load(path);
    const auto& k = f.ring().residue();
    const int e = upoly::degree_exponent(f.degree(), f.p());
    if (p3_only && e != 3) throw InputError("check-p3 needs a degree p^3 polynomial");
    Json j = header(f);
    if (e == 2) {
        const auto rep = classify2::check_cyclic_p2(f);
        const auto cl = classify2::classify_p2(f);
        j["cyclic"] = rep.cyclic;
        j["first_failed"] = rep.first_failed();
        j["regime"] = classify2::to_string(cl.regime);
        if (full) {
            j["checker"] = report::to_json(rep, k);
            j["classification"] = report::to_json(cl);
        }
    } else {
        const auto rep = classify3::check_cyclic_p3(f);
        j["cyclic"] = rep.cyclic;
        j["first_failed"] = rep.first_failed();
        j["lift_independent"] = rep.lift_independent;
        if (full) j["checker"] = report::to_json(rep, k);
    }
    emit(j);
    return 0;
}

int oracle(const std::string& path, int level) {
    const auto f = load(path);
    cft_oracle::OracleOptions opt;
    opt.level = level;
    Json j = header(f);
    j["report"] = report::to_json(cft_oracle::norm_subgroup(f, opt));
    emit(j);
    return 0;
}

struct GenArgs {
    int p = 3, f = 1;
    std::string degree = "p2";
    std::string target = "cyclic";
    std::uint64_t seed = 0;
    int condition = 1;
    int ell = 2;
    int precision = 0;
};

int gen(const GenArgs& a) {
    const int e = a.degree == "p3" ? 3 : 2;
    gf::ResidueField k(a.p, a.f);
    const int prec = a.precision ? a.precision : report::default_precision(e);
    if (e == 2) {
        const auto t = classify2::target_from_string(a.target);
        if (!t) throw InputError("unknown target \"" + a.target + "\"");
        classify2::GenRequest req;
        req.target = *t;
        req.condition = a.condition;
        req.ell = a.ell;
        req.seed = a.seed;
        emit(report::to_json(report::from_poly(classify2::gen_p2(k, prec, req))));
    } else {
        const auto t = classify3::target_from_string(a.target);
        if (!t) throw InputError("unknown target \"" + a.target + "\"");
        classify3::GenRequest req;
        req.target = *t;
        req.condition = a.condition;
        req.seed = a.seed;
        emit(report::to_json(report::from_poly(classify3::gen_p3(k, prec, req))));
    }
    return 0;
}

std::vector<int> parse_parts(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError("bad partition part \"" + item + "\"");
        }
    }
    return out;
}

int sigma(const std::string& lambda, int ell, const std::string& method) {
    if (ell < 1) throw InputError("ell must be positive");
    const cyclosum::Partition part(parse_parts(lambda));
    Json j;
    j["schema"] = report::kSchema;
    j["lambda"] = part.parts;
    j["ell"] = ell;
    int code = 0;
    if (method == "direct") {
        j["sigma"] = std::to_string(cyclosum::sigma_direct(part, ell));
    } else if (method == "formula") {
        j["sigma"] = std::to_string(cyclosum::sigma_formula(part, ell));
    } else {
        const auto d = cyclosum::sigma_direct(part, ell);
        const auto f = cyclosum::sigma_formula(part, ell);
        j["sigma"] = std::to_string(f);
        j["direct"] = std::to_string(d);
        j["formula"] = std::to_string(f);
        j["equal"] = d == f;
        if (d != f) code = kDisagreement;
    }
    emit(j);
    return code;
}

int verify(report::VerifyOptions opt, const std::string& degree, const std::string& targets) {
    opt.degree_exponent = degree == "p3" ? 3 : 2;
    if (!targets.empty()) {
        std::stringstream ss(targets);
        std::string t;
        while (std::getline(ss, t, ',')) opt.targets.push_back(t);
    }
    const auto r = report::run_verify(opt);
    emit(report::to_json(r));
    return r.disagreements ? kDisagreement : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclicity and Galois closure of degree p^2 and p^3 Eisenstein polynomials"};
    app.require_subcommand(1);

    std::string input;
    bool full = false;
    auto* cls = app.add_subcommand("classify", "Closed-form verdicts for a polynomial document");
    cls->add_option("--input", input, "PolynomialDocument JSON")->required();
    cls->add_flag("--json", full, "Full report with intermediate quantities");

    auto* chk = app.add_subcommand("check-p3", "Degree p^3 conditions for a polynomial document");
    chk->add_option("--input", input, "PolynomialDocument JSON")->required();
    chk->add_flag("--json", full, "Full report with intermediate quantities");

    int level = 0;
    auto* orc = app.add_subcommand("oracle", "Norm-group invariants of a polynomial document");
    orc->add_option("--input", input, "PolynomialDocument JSON")->required();
    orc->add_option("--level", level, "Work in U_1/U_m (default 3 for p^2, 4 for p^3)")->check(CLI::Range(2, 8));

    GenArgs ga;
    auto* gn = app.add_subcommand("gen", "Generate a polynomial document");
    gn->add_option("--p", ga.p)->required();
    gn->add_option("--f", ga.f);
    gn->add_option("--degree", ga.degree)->check(CLI::IsMember({"p2", "p3"}));
    gn->add_option("--target", ga.target, "p2: cyclic fail random_profile break_ell break1 random_eisenstein; "
                                          "p3: cyclic fail perturb");
    gn->add_option("--seed", ga.seed);
    gn->add_option("--condition", ga.condition, "Condition to break for --target fail");
    gn->add_option("--ell", ga.ell, "Break for --target break_ell");
    gn->add_option("--precision", ga.precision);

    std::string lambda, method = "both";
    int ell = 0;
    auto* sg = app.add_subcommand("sigma", "Sum of roots of unity over distinct index tuples");
    sg->add_option("--lambda", lambda, "Comma-separated parts")->required();
    sg->add_option("--ell", ell)->required();
    sg->add_option("--method", method)->check(CLI::IsMember({"direct", "formula", "both"}));

    report::VerifyOptions vo;
    std::string vdegree = "p2", vtargets;
    bool serial = false;
    auto* vf = app.add_subcommand("verify", "Compare closed-form verdicts with the norm-group oracle");
    vf->add_option("--p", vo.p)->required();
    vf->add_option("--f", vo.f);
    vf->add_option("--degree", vdegree)->check(CLI::IsMember({"p2", "p3"}));
    vf->add_option("--samples", vo.samples);
    vf->add_option("--seed", vo.seed);
    vf->add_option("--targets", vtargets, "Comma-separated generator targets");
    vf->add_option("--precision", vo.precision);
    vf->add_flag("--serial", serial, "Run samples one at a time");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << report::error_json("usage", e.what()).dump() << "\n";
        return kBadInput;
    }

    try {
        if (*cls) return classify(input, full, false);
        if (*chk) return classify(input, full, true);
        if (*orc) return oracle(input, level);
        if (*gn) return gen(ga);
        if (*sg) return sigma(lambda, ell, method);
        if (*vf) {
            vo.parallel = !serial;
            return verify(vo, vdegree, vtargets);
        }
    } catch (const InputError& e) {
        std::cerr << report::error_json("input", e.what()).dump() << "\n";
        return kBadInput;
    } catch (const DomainError& e) {
        std::cerr << report::error_json("domain", e.what()).dump() << "\n";
        return kBadInput;
    } catch (const PrecisionError& e) {
        std::cerr << report::error_json("precision", e.what()).dump() << "\n";
        return kBadInput;
    }
    return 0;
}
