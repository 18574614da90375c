#include <cmath>
#include <numeric>

#include "momentlab/arith.hpp"
#include "momentlab/errors.hpp"
#include "support.hpp"

using namespace momentlab;
using momentlab::test::close;

TEST(Arith, DivisorTauTrivial) {
    EXPECT_TRUE(close(divisor_tau(1, Complex(0.3, 1.7)), Complex(1), tail_tol()));
    EXPECT_TRUE(close(divisor_tau(6, Complex(0)), Complex(4), tail_tol()));
    EXPECT_EQ(tau0(6), 4u);
    EXPECT_EQ(tau0(720720), 240u);
}

TEST(Arith, DivisorTauBruteForce) {
    Complex v(0.0, 0.5);
    Complex sum(0);
    for (long n1 = 1; n1 <= 12; ++n1) {
        if (12 % n1) continue;
        long n2 = 12 / n1;
        sum += pow(Real(n1) / Real(n2), v);
    }
    EXPECT_TRUE(close(divisor_tau(12, v), sum, tail_tol()));
}

TEST(Arith, DivisorTauSymmetric) {
    std::uint64_t state = 12345;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 33;
    };
    for (int i = 0; i < 100; ++i) {
        std::uint64_t n = 1 + next() % 5000;
        Complex v(Real(static_cast<long>(next() % 200) - 100) / 400, Real(static_cast<long>(next() % 400) - 200) / 100);
        EXPECT_TRUE(close(divisor_tau(n, v), divisor_tau(n, -v), tail_tol() * abs(divisor_tau(n, v)))) << n;
    }
}

TEST(Arith, TauMultiplicative) {
    for (std::uint64_t m = 1; m <= 100; ++m)
        for (std::uint64_t n = 1; n <= 100; ++n)
            if (std::gcd(m, n) == 1) EXPECT_EQ(tau0(m * n), tau0(m) * tau0(n));
}

TEST(Arith, MultiplicativeBasics) {
    auto one = multiplicative_basics(1);
    EXPECT_EQ(one.mu, 1);
    EXPECT_EQ(one.phi, 1u);
    EXPECT_EQ(one.rho, mpq_class(1));
    auto twelve = multiplicative_basics(12);
    EXPECT_EQ(twelve.mu, 0);
    EXPECT_EQ(twelve.phi, 4u);
    EXPECT_EQ(twelve.rho, mpq_class(2));
    auto thirty = multiplicative_basics(30);
    EXPECT_EQ(thirty.mu, -1);
    EXPECT_EQ(thirty.phi, 8u);
    EXPECT_EQ(thirty.rho, mpq_class(3, 2) * mpq_class(4, 3) * mpq_class(6, 5));
}

TEST(Arith, KloostermanSmall) {
    EXPECT_TRUE(close(kloosterman(1, 1, 1), Real(1), tail_tol()));
    EXPECT_TRUE(close(kloosterman(0, 1, 2), Real(-1), tail_tol()));
    // a over (Z/5)^*, with inverses 1↔1, 2↔3, 4↔4
    double direct = 0;
    const int inv[] = {0, 1, 3, 2, 4};
    for (int a = 1; a < 5; ++a) direct += std::cos(2 * M_PI * (a + inv[a]) / 5.0);
    EXPECT_NEAR(kloosterman(1, 1, 5).to_double(), direct, 1e-14);
}

TEST(Arith, KloostermanRejectsZeroModulus) { EXPECT_THROW(kloosterman(1, 1, 0), DomainError); }

TEST(Arith, WeilBound) {
    for (long c = 1; c <= 50; ++c) {
        RootsOfUnity roots(c);
        for (long m = 1; m <= 20; ++m)
            for (long n = 1; n <= 20; ++n)
                EXPECT_LE(abs(kloosterman(m, n, roots)).to_double(), weil_bound(m, n, c) * (1 + 1e-12));
    }
}

TEST(Arith, RamanujanSumIdentity) {
    // Σ_c S(0,m;c)/c² → σ_{-1}(m)/ζ(2), with tail ≤ Σ_{c>C} σ_1(m)/c²
    Real zeta2 = const_pi() * const_pi() / 6;
    for (long m = 1; m <= 10; ++m) {
        Real target = divisor_sigma(static_cast<std::uint64_t>(m), Complex(-1)).re / zeta2;
        for (long C : {100L, 400L}) {
            Real sum(0);
            for (long c = 1; c <= C; ++c) sum += kloosterman(0, m, c) / (Real(c) * Real(c));
            Real err = abs(sum - target);
            Real bound = divisor_sigma(static_cast<std::uint64_t>(m), Complex(1)).re / Real(C);
            EXPECT_LE(err.to_double(), bound.to_double()) << "m=" << m << " C=" << C;
        }
    }
}

TEST(Arith, Factorize) {
    auto f = factorize(2 * 2 * 3 * 7 * 7 * 101ULL);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[0], (std::pair<std::uint64_t, int>{2, 2}));
    EXPECT_EQ(f[3], (std::pair<std::uint64_t, int>{101, 1}));
    EXPECT_EQ(mod_inverse(3, 7), 5);
}
