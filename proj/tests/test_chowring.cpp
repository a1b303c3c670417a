// Tests for the graded polynomial ring and the universal Chern-class
// pipeline (Newton identities, fiberwise Riemann-Roch pushforward, Porteous
// determinants, stratum classes, divisor basis changes).
//
// Oracles:
//  * ring axioms under randomized inputs (fixed seed);
//  * closed forms computed by hand for every pinned pipeline output,
//    including the full codimension-2 stratum class;
//  * the symmetric-function model for the Chern character of a sum of two
//    line classes, ch_n = (x^n + y^n)/n!.

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "scrollcalc/chowring.hpp"

namespace sc = scrollcalc;

namespace {

sc::GradedPoly random_homogeneous(std::mt19937& rng, int deg, int trunc) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> terms(1, 4);
    sc::GradedPoly p(trunc);
    for (int t = terms(rng); t > 0; --t) {
        sc::ChowMonomial m;
        int rem = deg;
        m.exp[4] = std::uniform_int_distribution<int>(0, std::min(1, rem))(rng);
        rem -= m.exp[4];
        m.exp[2] = std::uniform_int_distribution<int>(0, rem / 2)(rng);
        rem -= 2 * m.exp[2];
        m.exp[3] = std::uniform_int_distribution<int>(0, rem / 2)(rng);
        rem -= 2 * m.exp[3];
        m.exp[0] = std::uniform_int_distribution<int>(0, rem)(rng);
        m.exp[1] = rem - m.exp[0];
        p.add_term(m, sc::Rat(num(rng), den(rng)));
    }
    return p;
}

sc::GradedPoly random_poly(std::mt19937& rng, int trunc) {
    sc::GradedPoly p(trunc);
    std::uniform_int_distribution<int> deg(0, trunc);
    for (int i = 0; i < 3; ++i) p = p + random_homogeneous(rng, deg(rng), trunc);
    return p;
}

sc::GradedPoly poly_pow(const sc::GradedPoly& p, int n) {
    sc::GradedPoly r = sc::GradedPoly::constant(sc::Rat(1), p.truncation());
    for (int i = 0; i < n; ++i) r = r * p;
    return r;
}

}  // namespace

TEST(GradedPoly, RingAxiomsRandomized) {
    std::mt19937 rng(20260814);
    const int trunc = 5;
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_poly(rng, trunc);
        const auto b = random_poly(rng, trunc);
        const auto c = random_poly(rng, trunc);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a + sc::GradedPoly(trunc), a);
        EXPECT_EQ(a * sc::GradedPoly::constant(sc::Rat(1), trunc), a);
        EXPECT_TRUE((a - a).is_zero());
        // The ideal relations hold after every multiplication.
        const auto prod = a * b;
        for (const auto& [m, coeff] : prod.terms()) {
            (void)coeff;
            EXPECT_LE(m.exp[4], 1);
            EXPECT_LE(m.degree(), trunc);
        }
    }
    // h^2 = 0 exactly.
    EXPECT_TRUE((sc::GradedPoly::h() * sc::GradedPoly::h()).is_zero());
}

TEST(GradedPoly, PrintingAndMonomialOrder) {
    const auto t1 = sc::GradedPoly::t1();
    const auto u1 = sc::GradedPoly::u1();
    const auto t2 = sc::GradedPoly::t2();
    const auto h = sc::GradedPoly::h();
    const auto one = sc::GradedPoly::constant(sc::Rat(1));

    EXPECT_EQ(sc::GradedPoly().to_string(), "0");
    EXPECT_EQ(sc::GradedPoly::constant(sc::Rat(3, 2)).to_string(), "3/2");
    EXPECT_EQ(sc::GradedPoly::constant(sc::Rat(-3, 2)).to_string(), "-3/2");
    EXPECT_EQ((t1 - u1).to_string(), "1*t1 - 1*u1");
    EXPECT_EQ(((t1 + u1) * (t1 + u1)).to_string(), "1*t1^2 + 2*t1*u1 + 1*u1^2");
    // Graded order first, then descending lex within a degree.
    EXPECT_EQ((t2 + u1 * h + t1 * t1).to_string(), "1*t1^2 + 1*u1*h + 1*t2");
    EXPECT_EQ((one + t1 * t1 + t1).to_string(), "1 + 1*t1 + 1*t1^2");

    // Truncation drops high degrees on construction.
    EXPECT_TRUE(poly_pow(sc::GradedPoly::t1(2), 3).is_zero());
    EXPECT_EQ(poly_pow(sc::GradedPoly::t1(2), 2).to_string(), "1*t1^2");

    // Component extraction and h decomposition.
    const auto mix = t1 * u1 + t1 * h + u1 + sc::GradedPoly::constant(sc::Rat(7));
    EXPECT_EQ(mix.component(2), t1 * u1 + t1 * h);
    EXPECT_EQ(mix.component(1), u1);
    EXPECT_EQ(mix.h_free(), t1 * u1 + u1 + sc::GradedPoly::constant(sc::Rat(7)));
    EXPECT_EQ(mix.h_coeff(), t1);
    EXPECT_TRUE(mix.is_homogeneous(2) == false);
    EXPECT_TRUE((t1 * u1 + t1 * h).is_homogeneous(2));
}

TEST(Chowring, UniversalChernClasses) {
    const auto t1 = sc::GradedPoly::t1();
    const auto u1 = sc::GradedPoly::u1();
    const auto t2 = sc::GradedPoly::t2();
    const auto h = sc::GradedPoly::h();

    // d = 3: c1(K) = t1 - 3h, c2(K) = t2 + h u1.
    const auto K = sc::universal_K_chern(3);
    EXPECT_EQ(K.rank, 2);
    EXPECT_EQ(K.cls(0), sc::GradedPoly::constant(sc::Rat(1)));
    EXPECT_EQ(K.cls(1), t1 - h * sc::Rat(3));
    EXPECT_EQ(K.cls(2), t2 + h * u1);
    EXPECT_TRUE(K.cls(3).is_zero());

    for (int d : {1, 2, 3, 5, 8}) {
        const auto Kd = sc::universal_K_chern(d);
        const auto Ed = sc::universal_E_chern(d);
        EXPECT_EQ(Ed.cls(1), -t1 + h * sc::Rat(d));
        EXPECT_EQ(Ed.cls(2),
                  t1 * t1 - h * t1 * sc::Rat(2 * d) - t2 - u1 * h);
        // Whitney: c(K) c(E) = 1 through degree 2.
        sc::GradedPoly prod(sc::GradedPoly::kDefaultTruncation);
        prod = prod + sc::GradedPoly::constant(sc::Rat(1));
        sc::GradedPoly total = (Kd.cls(0) + Kd.cls(1) + Kd.cls(2)) *
                               (Ed.cls(0) + Ed.cls(1) + Ed.cls(2));
        EXPECT_TRUE(total.component(1).is_zero());
        EXPECT_TRUE(total.component(2).is_zero());
    }
    EXPECT_THROW(sc::universal_K_chern(0), sc::DomainError);
}

TEST(Chowring, DualizeTwist) {
    const auto t1 = sc::GradedPoly::t1();
    const auto u1 = sc::GradedPoly::u1();
    const auto t2 = sc::GradedPoly::t2();
    const auto h = sc::GradedPoly::h();

    const int d = 3, a = 2;
    const auto tw = sc::dualize_twist(sc::universal_K_chern(d), a);
    EXPECT_EQ(tw.cls(1), h * sc::Rat(2 * a + d) - t1);
    EXPECT_EQ(tw.cls(2), -(t1 * h * sc::Rat(a)) - t2 - h * u1);
    EXPECT_EQ(tw.cls(3), h * t2 * sc::Rat(a));  // the "virtual" tail
    EXPECT_TRUE(tw.is_virtual);

    // a = 0 degenerates to the plain dual on c1; no virtual tail.
    const auto dual = sc::dualize_twist(sc::universal_K_chern(d), 0);
    EXPECT_EQ(dual.cls(1), -sc::universal_K_chern(d).cls(1));
    EXPECT_TRUE(dual.cls(3).is_zero());
    EXPECT_FALSE(dual.is_virtual);

    sc::ChernSequence not_rank2;
    not_rank2.rank = 3;
    not_rank2.classes = {sc::GradedPoly::constant(sc::Rat(1))};
    EXPECT_THROW(sc::dualize_twist(not_rank2, 1), sc::DomainError);
}

TEST(Chowring, ChernToCharacterBasics) {
    std::mt19937 rng(7);
    const int trunc = 6;
    for (int trial = 0; trial < 20; ++trial) {
        const auto c1 = random_homogeneous(rng, 1, trunc);
        const auto c2 = random_homogeneous(rng, 2, trunc);
        const auto ch = sc::chern_to_char(sc::make_rank2(c1, c2), 4);
        EXPECT_EQ(ch.ch[0], sc::GradedPoly::constant(sc::Rat(2), trunc));
        EXPECT_EQ(ch.ch[1], c1);
        EXPECT_EQ(ch.ch[2], (c1 * c1 - c2 * sc::Rat(2)) * sc::Rat(1, 2));
    }
    // Zero Chern classes: the character is the constant rank.
    const auto flat = sc::chern_to_char(
        sc::make_rank2(sc::GradedPoly(trunc), sc::GradedPoly(trunc)), 6);
    EXPECT_EQ(flat.ch[0], sc::GradedPoly::constant(sc::Rat(2), trunc));
    for (int n = 1; n <= 6; ++n) EXPECT_TRUE(flat.ch[static_cast<std::size_t>(n)].is_zero());
}

TEST(Chowring, PinnedTwistedCharacter) {
    // ch_1(K^v (x) O(a)) = -t1 + h(d + 2a), and the derived ch_2 is pinned
    // as a regression so convention drift is caught.
    const auto t1 = sc::GradedPoly::t1();
    const auto u1 = sc::GradedPoly::u1();
    const auto t2 = sc::GradedPoly::t2();
    const auto h = sc::GradedPoly::h();
    for (int d : {2, 3, 5}) {
        for (int a : {0, 1, 4}) {
            const auto ch = sc::chern_to_char(
                sc::dualize_twist(sc::universal_K_chern(d), a), 2);
            EXPECT_EQ(ch.ch[1], -t1 + h * sc::Rat(d + 2 * a));
            EXPECT_EQ(ch.ch[2], t1 * t1 * sc::Rat(1, 2) - t1 * h * sc::Rat(a + d) +
                                    t2 + h * u1)
                << "d=" << d << " a=" << a;
        }
    }
}

TEST(Chowring, WhitneySumOfLineClasses) {
    // c(L1 (+) L2) = (1 + x)(1 + y) with x = t1, y = u1: the character must
    // match the symmetric-function expansion ch_n = (x^n + y^n)/n!.
    const int N = 6;
    const auto x = sc::GradedPoly::t1(N);
    const auto y = sc::GradedPoly::u1(N);
    const auto ch = sc::chern_to_char(sc::make_rank2(x + y, x * y), N);
    for (int n = 1; n <= N; ++n) {
        const auto expected =
            (poly_pow(x, n) + poly_pow(y, n)) * sc::Rat(sc::Int(1), sc::factorial(static_cast<unsigned>(n)));
        EXPECT_EQ(ch.ch[static_cast<std::size_t>(n)], expected) << "n=" << n;
    }
}

TEST(Chowring, NewtonRoundtripRandomRank2) {
    std::mt19937 rng(424242);
    const int N = 6, trunc = 6;
    for (int trial = 0; trial < 100; ++trial) {
        const auto c1 = random_homogeneous(rng, 1, trunc);
        const auto c2 = random_homogeneous(rng, 2, trunc);
        const auto seq = sc::make_rank2(c1, c2);
        const auto back = sc::char_to_chern(sc::chern_to_char(seq, N));
        ASSERT_EQ(back.rank, 2);
        EXPECT_FALSE(back.is_virtual);
        EXPECT_EQ(back.cls(1), c1);
        EXPECT_EQ(back.cls(2), c2);
        for (int j = 3; j <= N; ++j) {
            EXPECT_TRUE(back.cls(j).is_zero()) << "trial " << trial << " j=" << j;
        }
    }
}

TEST(Chowring, NegativeRankRoundtrip) {
    // A virtual bundle of rank -2: the full c_t expansion of -K.
    const int N = 4;
    const auto K = sc::universal_K_chern(2, N);
    sc::ChernSequence neg;
    neg.rank = -2;
    neg.is_virtual = true;
    neg.classes = sc::negative_chern_series(K, N);
    const auto back = sc::char_to_chern(sc::chern_to_char(neg, N));
    EXPECT_EQ(back.rank, -2);
    EXPECT_TRUE(back.is_virtual);
    for (int j = 0; j <= N; ++j) EXPECT_EQ(back.cls(j), neg.cls(j)) << "j=" << j;
    // c_t(F) c_t(-F) = 1 through degree N.
    sc::GradedPoly total(N);
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= N; ++j) total = total + K.cls(i) * neg.cls(j);
    }
    EXPECT_EQ(total, sc::GradedPoly::constant(sc::Rat(1), N));
}

TEST(Chowring, CharToChernRejectsBadRank) {
    sc::ChernCharacter bad;
    bad.ch = {sc::GradedPoly::t1()};  // non-constant ch_0
    EXPECT_THROW(sc::char_to_chern(bad), sc::DomainError);
    bad.ch = {sc::GradedPoly::constant(sc::Rat(3, 2))};  // non-integer rank
    EXPECT_THROW(sc::char_to_chern(bad), sc::DomainError);
    bad.ch = {};
    EXPECT_THROW(sc::char_to_chern(bad), sc::DomainError);
}

TEST(Chowring, GrrPushforwardPinnedValues) {
    const auto t1 = sc::GradedPoly::t1();
    const auto u1 = sc::GradedPoly::u1();
    for (int d : {2, 3, 4, 6}) {
        for (int a : {0, 1, 2}) {
            const auto push = sc::pushforward_K_dual_twist(d, a, 1);
            EXPECT_EQ(push.ch[0],
                      sc::GradedPoly::constant(sc::Rat(d + 2 * a + 2), push.ch[0].truncation()));
            EXPECT_EQ(push.ch[1], -t1 * sc::Rat(a + d + 1) + u1) << "d=" << d << " a=" << a;
        }
    }
    // c1(B_m) = (d - 1 - m) t1 + u1, and the rank of B_m is d + 2m + 2.
    for (int d : {1, 3, 5, 7}) {
        for (int m : {-2, 0, 1, 3}) {
            EXPECT_EQ(sc::c1_Bm(d, m), t1 * sc::Rat(d - 1 - m) + u1)
                << "d=" << d << " m=" << m;
            const auto E = sc::universal_E_chern(d, 2);
            const auto push = sc::grr_pushforward(
                sc::twist_by_line(sc::chern_to_char(E, 2), m));
            EXPECT_EQ(push.ch[0],
                      sc::GradedPoly::constant(sc::Rat(d + 2 * m + 2), 2));
        }
    }
}

TEST(Chowring, GrrLinearityAndFiberIntegration) {
    std::mt19937 rng(99);
    const int trunc = 5;
    for (int trial = 0; trial < 20; ++trial) {
        sc::ChernCharacter x, y, sum;
        for (int n = 0; n <= 4; ++n) {
            x.ch.push_back(random_homogeneous(rng, n, trunc));
            y.ch.push_back(random_homogeneous(rng, n, trunc));
            sum.ch.push_back(x.ch.back() + y.ch.back());
        }
        const auto px = sc::grr_pushforward(x);
        const auto py = sc::grr_pushforward(y);
        const auto ps = sc::grr_pushforward(sum);
        for (int n = 0; n <= 3; ++n) {
            EXPECT_EQ(ps.ch[static_cast<std::size_t>(n)],
                      px.ch[static_cast<std::size_t>(n)] + py.ch[static_cast<std::size_t>(n)]);
        }
        // Bare fiber integration annihilates classes pulled back from the
        // base (no h component).
        sc::ChernCharacter h_free;
        for (int n = 0; n <= 4; ++n) {
            h_free.ch.push_back(random_homogeneous(rng, n, trunc).h_free());
        }
        for (const auto& piece : sc::fiber_integrate(h_free).ch) {
            EXPECT_TRUE(piece.is_zero());
        }
    }
}

TEST(Chowring, PorteousDeterminants) {
    const int trunc = 6;
    const auto cst = [&](int k) { return sc::GradedPoly::constant(sc::Rat(k), trunc); };

    // 1x1: Delta_{p,1} = a_p.
    const std::vector<sc::GradedPoly> series = {cst(1), cst(1), cst(2), cst(6)};
    EXPECT_EQ(sc::porteous(2, 1, series), cst(2));
    EXPECT_EQ(sc::porteous(3, 1, series), cst(6));

    // Geometric series, all coefficients 1: Delta_{2,2} = det[[1,1],[1,1]] = 0.
    const std::vector<sc::GradedPoly> ones(4, cst(1));
    EXPECT_TRUE(sc::porteous(2, 2, ones).is_zero());

    // A row of zeros kills the determinant.
    const std::vector<sc::GradedPoly> zrow = {cst(1), sc::GradedPoly::t1(trunc),
                                              sc::GradedPoly(trunc), sc::GradedPoly(trunc),
                                              sc::GradedPoly(trunc)};
    EXPECT_TRUE(sc::porteous(2, 2, zrow).is_zero());

    // 3x3 with an out-of-range (negative) index entering as zero:
    // Delta_{1,3} of (1,1,2,6) = det[[1,2,6],[1,1,2],[0,1,1]] = 3.
    EXPECT_EQ(sc::porteous(1, 3, series), cst(3));

    EXPECT_THROW(sc::porteous(2, 2, std::vector<sc::GradedPoly>(3, cst(1))),
                 sc::DomainError);  // needs index 3
    EXPECT_THROW(sc::porteous(0, 1, series), sc::DomainError);
    EXPECT_THROW(sc::porteous(1, 0, series), sc::DomainError);
}

TEST(Chowring, StratumClassCodimensionOne) {
    const auto t1 = sc::GradedPoly::t1();
    const auto u1 = sc::GradedPoly::u1();
    EXPECT_EQ(sc::class_R_da(4, 1).to_string(), "6*t1 - 1*u1");
    for (int a = 0; a <= 3; ++a) {
        const int d = 2 * a + 2;  // codimension d - 2a - 1 = 1
        const auto cls = sc::class_R_da(d, a);
        EXPECT_EQ(cls, t1 * sc::Rat(a + d + 1) - u1);
        // The determinant route agrees in codimension 1.
        EXPECT_EQ(sc::class_R_da_porteous(d, a), cls);
        // In the {Y, D} basis the class reads (d-a-1) Y - D, the negative of
        // (a-d+1) Y + D; the magnitudes (|a-d+1|, 1) are asserted.
        const auto yd = sc::basis_change(sc::divisor_from_poly(cls, d), sc::DivisorBasis::YD);
        EXPECT_EQ(yd.first, sc::Rat(d - a - 1));
        EXPECT_EQ(yd.second, sc::Rat(-1));
        const sc::Rat mag = yd.first < 0 ? sc::Rat(-yd.first) : yd.first;
        EXPECT_EQ(mag, sc::Rat(std::abs(a - d + 1)));
    }
    EXPECT_THROW(sc::class_R_da(4, 2), sc::DomainError);   // d = 2a
    EXPECT_THROW(sc::class_R_da(5, 2), sc::DomainError);   // d = 2a + 1
    EXPECT_THROW(sc::class_R_da(0, 0), sc::DomainError);
    EXPECT_THROW(sc::class_R_da(3, -1), sc::DomainError);
}

TEST(Chowring, StratumClassCodimensionTwo) {
    // Hand-derived closed form for the codimension-2 class:
    //   -c_2(push) = -(a+d+1)(a+d)/2 t1^2 + (2(a+d)+1)/2 t1 u1 - 1/2 u1^2
    //                + (3a+d+2)/2 t2.
    const auto t1 = sc::GradedPoly::t1(3);
    const auto u1 = sc::GradedPoly::u1(3);
    const auto t2 = sc::GradedPoly::t2(3);
    for (int a = 0; a <= 2; ++a) {
        const int d = 2 * a + 3;  // codimension 2
        const int s = a + d;
        const auto expected = t1 * t1 * sc::Rat(-s * (s + 1), 2) +
                              t1 * u1 * sc::Rat(2 * s + 1, 2) +
                              u1 * u1 * sc::Rat(-1, 2) + t2 * sc::Rat(3 * a + d + 2, 2);
        const auto got = sc::class_R_da(d, a);
        EXPECT_EQ(got, expected) << "d=" << d << " a=" << a << ": " << got;
        EXPECT_TRUE(got.is_homogeneous(2));
        // The determinant route differs by c_1^2 in codimension 2:
        // Delta_{2,1}(c_t(-B)) = c_1(B)^2 - c_2(B) = c_1^2 + class.
        const auto push = sc::pushforward_K_dual_twist(d, a, 2);
        const auto c1 = push.ch[1];
        EXPECT_EQ(sc::class_R_da_porteous(d, a), c1 * c1 + got);
    }
}

TEST(Chowring, DivisorBasisChanges) {
    // [D] = -2d t1 + u1 = 2d alpha + beta.
    for (int d : {1, 2, 5}) {
        sc::DivisorExpr D{sc::DivisorBasis::YD, sc::Rat(0), sc::Rat(1), d};
        const auto hub = sc::basis_change(D, sc::DivisorBasis::T1U1);
        EXPECT_EQ(hub.first, sc::Rat(-2 * d));
        EXPECT_EQ(hub.second, sc::Rat(1));
        const auto ab = sc::basis_change(D, sc::DivisorBasis::AlphaBeta);
        EXPECT_EQ(ab.first, sc::Rat(2 * d));
        EXPECT_EQ(ab.second, sc::Rat(1));
        // alpha = Y.
        sc::DivisorExpr alpha{sc::DivisorBasis::AlphaBeta, sc::Rat(1), sc::Rat(0), d};
        const auto y = sc::basis_change(alpha, sc::DivisorBasis::YD);
        EXPECT_EQ(y.first, sc::Rat(1));
        EXPECT_EQ(y.second, sc::Rat(0));
    }
    // Round trips through all three bases are the identity.
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coeff(-9, 9);
    const sc::DivisorBasis bases[] = {sc::DivisorBasis::T1U1, sc::DivisorBasis::AlphaBeta,
                                      sc::DivisorBasis::YD};
    for (int trial = 0; trial < 30; ++trial) {
        sc::DivisorExpr e{bases[trial % 3], sc::Rat(coeff(rng)), sc::Rat(coeff(rng)),
                          1 + trial % 4};
        auto walked = e;
        for (const auto b : bases) walked = sc::basis_change(walked, b);
        walked = sc::basis_change(walked, e.basis);
        EXPECT_EQ(walked, e);
    }
    // Serialization.
    sc::DivisorExpr yd{sc::DivisorBasis::YD, sc::Rat(2), sc::Rat(-1), 4};
    EXPECT_EQ(yd.to_string(), "2*Y - 1*D");
    EXPECT_EQ((sc::DivisorExpr{sc::DivisorBasis::AlphaBeta, sc::Rat(0), sc::Rat(0), 1})
                  .to_string(),
              "0");
    // Non-degree-1 polynomials are rejected.
    EXPECT_THROW(sc::divisor_from_poly(sc::GradedPoly::t2(), 2), sc::DomainError);
    EXPECT_THROW(sc::divisor_from_poly(sc::GradedPoly::t1() + sc::GradedPoly::h(), 2),
                 sc::DomainError);
}
