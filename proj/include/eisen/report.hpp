#pragma once

// JSON documents and reports shared by the command-line tool, the tests and
// the acceptance runner, plus the checker-versus-oracle verification loop.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eisen/cft_oracle.hpp"
#include "eisen/classify2.hpp"
#include "eisen/classify3.hpp"
#include "eisen/upoly.hpp"

namespace eisen::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

/// A polynomial on disk: coordinates of f_1..f_n in the basis of the ring
/// generator, read modulo p^N.
struct PolynomialDocument {
    int p = 0;
    int f = 1;
    std::vector<int> residue_modulus;  // ascending, length f+1; empty for the default
    int degree = 0;
    std::vector<std::vector<std::string>> coeffs;  // decimal, non-negative
    std::optional<int> precision;
};

/// Throws InputError on a malformed document.
PolynomialDocument parse_document(const Json& j);
Json to_json(const PolynomialDocument& doc);

/// N = 6 for degree p^2 and 7 for degree p^3 unless the document says otherwise.
int default_precision(int degree_exponent);

/// Builds the ring and polynomial; Eisenstein validity and the degree are
/// checked here (InputError).
upoly::EisensteinPoly to_poly(const PolynomialDocument& doc);
PolynomialDocument from_poly(const upoly::EisensteinPoly& f);

Json residue_json(const gf::FFElem& x, int f);
Json element_json(const zq::QElem& x, int f);

Json to_json(const classify2::Theo1Report& rep, const gf::ResidueField& k);
Json to_json(const classify2::ClassificationP2& c);
Json to_json(const classify3::Theo3Report& rep, const gf::ResidueField& k);
Json to_json(const cft_oracle::NormGroupReport& r);

/// {"schema": 1, "error": {"kind": ..., "message": ...}}.
Json error_json(const std::string& kind, const std::string& message);

struct VerifyOptions {
    int p = 3;
    int f = 1;
    int degree_exponent = 2;
    int samples = 50;
    std::uint64_t seed = 0;
    /// Generator targets cycled through by sample index; empty selects the
    /// default set for the degree.
    std::vector<std::string> targets;
    int precision = 0;  // 0: default for the degree
    bool parallel = true;
};

struct SampleOutcome {
    int index = 0;
    std::string target;
    int condition = 0;
    int ell = 0;
    std::uint64_t seed = 0;

    bool checker_cyclic = false;
    bool oracle_cyclic = false;
    int first_failed = 0;
    std::vector<std::uint64_t> invariant_factors;

    // Degree p^2 only.
    bool galois_agree = true;
    bool elementary_agree = true;
    bool non_galois_agree = true;
    bool regime_agree = true;
    // Auxiliary choices (theta, or the degree p^3 lifts) did not matter.
    bool lifts_agree = true;

    bool agree = false;
    Json document;
};

struct VerifyResult {
    VerifyOptions options;
    std::vector<SampleOutcome> samples;
    int disagreements = 0;
};

std::vector<std::string> default_targets(int degree_exponent);

/// Sample i uses target i mod |targets| and a seed derived from (seed, i);
/// results are ordered by i whatever the schedule.
VerifyResult run_verify(const VerifyOptions& options);
Json to_json(const VerifyResult& r);

/// Per-sample seed.
std::uint64_t sample_seed(std::uint64_t seed, int index);

}  // namespace eisen::report
