#include <doctest.h>

#include <random>

#include "eisen/error.hpp"
#include "eisen/zq.hpp"

using namespace eisen;
using gf::ResidueField;
using zq::QElem;
using zq::UnramRing;

TEST_CASE("unit inverses") {
    UnramRing R(ResidueField(3, 1), 4);
    CHECK(R.mul(R.from_int(2), R.inv(R.from_int(2))) == R.one());
    CHECK_THROWS_AS(R.inv(R.from_int(3)), DomainError);
    UnramRing S(ResidueField(3, 1), 2);
    CHECK(S.inv(S.from_int(2)) == S.from_int(5));

    UnramRing T(ResidueField(5, 2), 3);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        std::vector<long long> c{static_cast<long long>(rng() % 125), static_cast<long long>(rng() % 125)};
        const auto a = T.from_coeffs(c);
        if (T.valuation(a) > 0) continue;
        CHECK(T.mul(a, T.inv(a)) == T.one());
    }
}

TEST_CASE("valuation") {
    UnramRing R(ResidueField(3, 1), 4);
    CHECK(R.valuation(R.zero()) == 4);
    CHECK(R.valuation(R.from_int(9)) == 2);
    UnramRing S(ResidueField(3, 2), 3);
    std::vector<long long> c{3, 3};
    CHECK(S.valuation(S.from_coeffs(c)) == 1);
    CHECK(zq::vp(54, 3) == 3);
}

TEST_CASE("teichmuller lifts") {
    UnramRing R(ResidueField(3, 1), 4);
    CHECK(R.teichmuller(R.residue().zero()) == R.zero());
    CHECK(R.teichmuller(R.residue().one()) == R.one());
    CHECK(R.teichmuller(R.residue().from_int(2)) == R.from_int(80));
    UnramRing S(ResidueField(5, 1), 2);
    CHECK(S.teichmuller(S.residue().from_int(2)) == S.from_int(7));

    UnramRing T(ResidueField(3, 2), 5);
    for (const auto& r : T.residue().elements()) {
        const auto t = T.teichmuller(r);
        CHECK(T.reduce(t) == r);
        CHECK(T.pow(t, T.residue().q()) == t);
    }
}

TEST_CASE("exact division by powers of p") {
    UnramRing R(ResidueField(3, 1), 4);
    CHECK(R.exact_div_p(R.from_int(9), 2) == R.one());
    CHECK(R.exact_div_p(R.zero(), 3) == R.zero());
    CHECK(R.exact_div_p(R.from_int(45), 1) == R.from_int(15));
    CHECK_THROWS_AS(R.exact_div_p(R.from_int(3), 2), DomainError);
}

namespace {

// log(u)/p mod p^{m-1} from the limit (u^{p^k} - 1)/p^k, at a precision
// chosen so the truncation error is invisible.
std::vector<std::uint64_t> log_by_limit(const ResidueField& k, const QElem& u_in, int m) {
    const int kk = m + 1;
    UnramRing big(k, 2 * m + 4);
    QElem u;
    for (int i = 0; i < k.f(); ++i) u.c[static_cast<std::size_t>(i)] = u_in.c[static_cast<std::size_t>(i)];
    std::uint64_t pk = 1;
    for (int i = 0; i < kk; ++i) pk *= static_cast<std::uint64_t>(k.p());
    const QElem y = big.sub(big.pow(u, pk), big.one());
    const QElem l = big.exact_div_p(y, kk + 1);
    std::uint64_t mod = 1;
    for (int i = 0; i < m - 1; ++i) mod *= static_cast<std::uint64_t>(k.p());
    std::vector<std::uint64_t> out;
    for (int i = 0; i < k.f(); ++i) out.push_back(l.c[static_cast<std::size_t>(i)] % mod);
    return out;
}

}  // namespace

TEST_CASE("p-adic logarithm") {
    UnramRing R(ResidueField(3, 1), 6);
    CHECK(R.padic_log(R.one(), 3) == std::vector<std::uint64_t>{0});
    CHECK(R.padic_log(R.from_int(4), 3) == std::vector<std::uint64_t>{7});
    CHECK(R.padic_log(R.pow(R.from_int(4), 9), 3) == std::vector<std::uint64_t>{0});
    CHECK_THROWS_AS(R.padic_log(R.from_int(2), 3), DomainError);

    for (int p : {3, 5}) {
        for (int f : {1, 2}) {
            ResidueField k(p, f);
            UnramRing S(k, 6);
            std::mt19937_64 rng(static_cast<std::uint64_t>(p * 10 + f));
            for (int i = 0; i < 20; ++i) {
                std::vector<long long> c(static_cast<std::size_t>(f));
                for (auto& x : c) x = static_cast<long long>(rng() % S.modulus());
                QElem u = S.add(S.one(), S.scale(S.from_coeffs(c), p));
                for (int m : {2, 3, 4}) CHECK(S.padic_log(u, m) == log_by_limit(k, u, m));
            }
        }
    }
}

TEST_CASE("logarithm is a homomorphism") {
    UnramRing R(ResidueField(5, 2), 6);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
        std::vector<long long> a{static_cast<long long>(rng() % 1000), static_cast<long long>(rng() % 1000)};
        std::vector<long long> b{static_cast<long long>(rng() % 1000), static_cast<long long>(rng() % 1000)};
        const auto u = R.add(R.one(), R.scale(R.from_coeffs(a), 5));
        const auto v = R.add(R.one(), R.scale(R.from_coeffs(b), 5));
        const auto lu = R.padic_log(u, 3), lv = R.padic_log(v, 3), luv = R.padic_log(R.mul(u, v), 3);
        for (std::size_t j = 0; j < 2; ++j) CHECK(luv[j] == (lu[j] + lv[j]) % 25);
    }
}
