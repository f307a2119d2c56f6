#pragma once

// Range containment between additive polynomials over the residue field and
// the p-extension test for degree-p^2 additive polynomials.

#include <optional>

#include "eisen/error.hpp"
#include "eisen/gf.hpp"

namespace eisen::additive {

/// Raised when a containment formula would divide by a vanishing a_p.
class DegenerateLeadingTerm : public DomainError {
public:
    using DomainError::DomainError;
};

/// T = A o G with G(Y) = gamma Y^{p^2} + beta Y^p + alpha Y.
struct Composition {
    gf::FFElem alpha;
    gf::FFElem beta;
    gf::FFElem gamma;
};

struct RangeVerdict {
    bool contained = false;
    std::optional<Composition> witness;  // set iff contained
};

/// Decides T(k) \subseteq A(k) from the coefficients alone. A must be
/// a_p Y^p + a_1 Y with a_1 != 0 and all p roots in k; T has degree index
/// at most 3 and is dispatched to the two-, three- or four-term formula.
RangeVerdict range_contained(const gf::ResidueField& k, const gf::LinearizedPoly& A,
                             const gf::LinearizedPoly& T);

/// For A = Y^{p^2} + a Y^p + b Y: the splitting field over k is a p-extension
/// iff A has a nonzero root in k and b is a (p-1)-th power.
bool is_p_extension_splitting(const gf::ResidueField& k, const gf::LinearizedPoly& A);

}  // namespace eisen::additive
