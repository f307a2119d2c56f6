#include <doctest.h>

#include <random>

#include "eisen/error.hpp"
#include "eisen/gf.hpp"
#include "support/oracles.hpp"

using namespace eisen;
using gf::FFElem;
using gf::LinearizedPoly;
using gf::ResidueField;

namespace {

FFElem el(const ResidueField& k, std::initializer_list<long long> c) {
    std::vector<long long> v(c);
    return k.from_coeffs(v);
}

}  // namespace

TEST_CASE("prime field arithmetic") {
    ResidueField k(3, 1);
    CHECK(k.mul(k.from_int(2), k.from_int(2)) == k.one());
    CHECK(k.inv(k.from_int(2)) == k.from_int(2));
    CHECK(k.from_int(-1) == k.from_int(2));
    CHECK_THROWS_AS(k.inv(k.zero()), DomainError);
}

TEST_CASE("quadratic extension with modulus X^2 + 1") {
    ResidueField k(3, 2, {1, 0, 1});
    const auto x = el(k, {0, 1});
    CHECK(k.mul(x, x) == k.from_int(2));
    CHECK(k.frobenius(x, 1) == k.neg(x));
    CHECK(k.frobenius(k.neg(x), 1, true) == x);
    for (const auto& a : k.elements()) {
        if (k.is_zero(a)) continue;
        CHECK(k.mul(a, k.inv(a)) == k.one());
        CHECK(k.pow(a, k.q() - 1) == k.one());
    }
}

TEST_CASE("frobenius is trivial on the prime field") {
    ResidueField k(5, 1);
    for (const auto& a : k.elements()) CHECK(k.frobenius(a, 1) == a);
}

TEST_CASE("element numbering round-trips") {
    ResidueField k(5, 2);
    for (std::uint64_t i = 0; i < k.q(); ++i) CHECK(k.index(k.element(i)) == i);
}

TEST_CASE("d-th powers") {
    ResidueField k3(3, 1);
    CHECK(k3.is_dth_power(k3.one(), 2));
    CHECK(*k3.dth_root(k3.one(), 2) == k3.one());
    CHECK_FALSE(k3.is_dth_power(k3.from_int(2), 2));
    ResidueField k9(3, 2);
    CHECK(k9.is_dth_power(k9.from_int(2), 2));
    CHECK_THROWS_AS(k9.dth_root(k9.zero(), 2), DomainError);

    // Against brute force: x is a d-th power iff some y has y^d = x.
    for (int d : {2, 4, 8}) {
        for (const auto& x : k9.elements()) {
            if (k9.is_zero(x)) continue;
            bool found = false;
            for (const auto& y : k9.elements()) found = found || k9.pow(y, static_cast<std::uint64_t>(d)) == x;
            CHECK(k9.is_dth_power(x, static_cast<std::uint64_t>(d)) == found);
            auto roots = k9.all_roots_of_power(x, static_cast<std::uint64_t>(d));
            for (const auto& r : roots) CHECK(k9.pow(r, static_cast<std::uint64_t>(d)) == x);
        }
    }
}

TEST_CASE("linearized solve on F_3") {
    ResidueField k(3, 1);
    const auto zero_map = LinearizedPoly::from({k.from_int(2), k.one()});  // Y^3 + 2Y
    auto s = gf::solve_linearized(k, zero_map, k.zero());
    CHECK(s.roots.size() == 3);
    CHECK(s.kernel_dim == 1);
    CHECK(gf::solve_linearized(k, zero_map, k.one()).roots.empty());

    const auto cube = LinearizedPoly::from({k.zero(), k.one()});
    auto c = gf::solve_linearized(k, cube, k.from_int(2));
    REQUIRE(c.roots.size() == 1);
    CHECK(c.roots[0] == k.from_int(2));
}

TEST_CASE("linearized solve matches enumeration over F_25") {
    ResidueField k(5, 2);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        LinearizedPoly A;
        for (int i = 0; i < 3; ++i) A.a[static_cast<std::size_t>(i)] = k.element(rng() % k.q());
        const auto c = k.element(rng() % k.q());
        std::vector<FFElem> expect;
        for (const auto& x : k.elements())
            if (oracle::apply(k, A, x) == c) expect.push_back(x);
        const auto s = gf::solve_linearized(k, A, c);
        CHECK(s.roots == expect);
        CHECK(gf::in_range(k, A, c) == !expect.empty());
        CHECK(gf::evaluate(k, A, c) == oracle::apply(k, A, c));
    }
}
