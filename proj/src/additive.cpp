#include "eisen/additive.hpp"

#include <algorithm>

namespace eisen::additive {

using gf::FFElem;

RangeVerdict range_contained(const gf::ResidueField& k, const gf::LinearizedPoly& A,
                             const gf::LinearizedPoly& T) {
    const FFElem& a1 = A.a[0];
    const FFElem& ap = A.a[1];
    if (k.is_zero(ap)) throw DegenerateLeadingTerm("range containment with a_p = 0");
    if (A.degree_index() != 1) throw DomainError("range containment needs A = a_p Y^p + a_1 Y");
    if (k.is_zero(a1)) throw DomainError("range containment needs A'(0) != 0");
    if (!gf::solve_linearized(k, A, k.zero()).splits_completely)
        throw DomainError("range containment needs every root of A in the residue field");

    const int arity = std::max(1, T.degree_index());
    const FFElem alpha = k.div(T.a[0], a1);
    const auto frob = [&](const FFElem& x) { return k.frobenius(x, 1); };
    const auto frob_inv = [&](const FFElem& x) { return k.frobenius(x, 1, true); };

    RangeVerdict out;
    Composition w{alpha, k.zero(), k.zero()};
    switch (arity) {
        case 1: {
            out.contained = T.a[1] == k.mul(ap, frob(alpha));
            break;
        }
        case 2: {
            const FFElem beta = frob_inv(k.div(T.a[2], ap));
            out.contained = T.a[1] == k.add(k.mul(ap, frob(alpha)), k.mul(a1, beta));
            if (out.contained) {
                const FFElem beta_alt = k.sub(k.div(T.a[1], a1), k.mul(k.div(ap, a1), frob(alpha)));
                if (beta_alt != beta) throw Error("range containment: the two beta formulas disagree");
            }
            w.beta = beta;
            break;
        }
        default: {
            const FFElem gamma = frob_inv(k.div(T.a[3], ap));
            const FFElem lhs = k.add(k.mul(k.div(a1, ap), gamma), frob(k.div(T.a[1], a1)));
            const FFElem rhs = k.add(k.div(T.a[2], ap),
                                     k.mul(frob(k.div(ap, a1)), k.frobenius(alpha, 2)));
            out.contained = lhs == rhs;
            w.gamma = gamma;
            w.beta = k.sub(k.div(T.a[1], a1), k.mul(k.div(ap, a1), frob(alpha)));
            break;
        }
    }
    if (out.contained) out.witness = w;
    return out;
}

bool is_p_extension_splitting(const gf::ResidueField& k, const gf::LinearizedPoly& A) {
    if (A.degree_index() != 2 || A.a[2] != k.one())
        throw DomainError("p-extension test needs a monic Y^{p^2} + a Y^p + b Y");
    const FFElem& b = A.a[0];
    if (k.is_zero(b)) throw DomainError("p-extension test needs b != 0");
    const bool has_nonzero_root = gf::solve_linearized(k, A, k.zero()).kernel_dim >= 1;
    return has_nonzero_root && k.is_dth_power(b, static_cast<std::uint64_t>(k.p() - 1));
}

}  // namespace eisen::additive
