#pragma once

// Universal Chern-class computations for the family of rank-2 subsheaves on
// (base) x P^1:
//
//   * Chern classes of the universal subsheaf K, its rank-2 complement E,
//     and the dual twist K^v (x) O(a);
//   * Chern character <-> Chern class conversions by Newton's identities;
//   * Grothendieck-Riemann-Roch pushforward along the P^1 factor
//     (relative Todd class 1 + h, since h^2 = 0);
//   * Porteous-style determinants Delta_{p,q} of a formal series;
//   * the degeneracy-locus classes of the strata where the subsheaf
//     acquires an unbalanced splitting type, and the divisor basis changes
//     used to express them.
//
// Sign conventions follow the source formulas verbatim, including a twisted
// sequence whose c_2 carries the opposite sign from the honest rank-2 dual
// (its c_3 = a*h*c_2 is then nonzero, so the output is flagged virtual).
// Downstream results are derived from those displays consistently.

#include <string>
#include <vector>

#include "scrollcalc/gradedpoly.hpp"
#include "scrollcalc/numeric.hpp"

namespace scrollcalc {

// ---------------------------------------------------------------------------
// Chern data containers.
// ---------------------------------------------------------------------------

struct ChernSequence {
    int rank = 0;
    // True when classes beyond `rank` may be nonzero (formal differences,
    // or sequences given by a full c_t expansion).
    bool is_virtual = false;
    std::vector<GradedPoly> classes;  // classes[j] = c_j; classes[0] = 1

    // c_j, extended by zero outside the stored range.
    GradedPoly cls(int j) const {
        if (j < 0 || j >= static_cast<int>(classes.size())) {
            return GradedPoly(truncation());
        }
        return classes[static_cast<std::size_t>(j)];
    }

    int truncation() const {
        return classes.empty() ? GradedPoly::kDefaultTruncation
                               : classes.front().truncation();
    }
};

struct ChernCharacter {
    std::vector<GradedPoly> ch;  // ch[n] homogeneous of degree n; ch[0] = rank

    int degree_bound() const { return static_cast<int>(ch.size()) - 1; }
};

inline ChernSequence make_rank2(const GradedPoly& c1, const GradedPoly& c2) {
    ChernSequence s;
    s.rank = 2;
    s.classes = {GradedPoly::constant(Rat(1), c1.truncation()), c1, c2};
    return s;
}

// ---------------------------------------------------------------------------
// The universal bundles.  Kuenneth components: c_i(K) = t_i + h*u_{i-1},
// with the degree-0 component u_0 = -d substituted at construction.
// ---------------------------------------------------------------------------

inline ChernSequence universal_K_chern(int d, int truncation = GradedPoly::kDefaultTruncation) {
    if (d < 1) throw DomainError("universal_K_chern: need d >= 1, got " + std::to_string(d));
    const auto t1 = GradedPoly::t1(truncation);
    const auto u1 = GradedPoly::u1(truncation);
    const auto t2 = GradedPoly::t2(truncation);
    const auto h = GradedPoly::h(truncation);
    return make_rank2(t1 - h * Rat(d), t2 + h * u1);
}

// The rank-2 complement E (Whitney dual of K to degree 2):
// c1(E) = -c1(K), c2(E) = c1(K)^2 - c2(K).
inline ChernSequence universal_E_chern(int d, int truncation = GradedPoly::kDefaultTruncation) {
    const auto K = universal_K_chern(d, truncation);
    return make_rank2(-K.cls(1), K.cls(1) * K.cls(1) - K.cls(2));
}

// Chern classes of the dual twisted by the line class a*h, per the source's
// three displayed formulas:
//   c1' = 2a*h - c1,   c2' = -c2 - a*h*c1,   c3' = a*h*c2.
// An honest rank-2 dual twist would have c2' = c2 - a*h*c1 and c3' = 0; the
// displayed sequence is kept verbatim and flagged virtual when c3' != 0.
inline ChernSequence dualize_twist(const ChernSequence& c, int a) {
    if (c.rank != 2) {
        throw DomainError("dualize_twist: input must have rank 2, got rank " +
                          std::to_string(c.rank));
    }
    const int N = c.truncation();
    const auto h = GradedPoly::h(N);
    const GradedPoly ah = h * Rat(a);
    ChernSequence out;
    out.rank = 2;
    out.classes = {GradedPoly::constant(Rat(1), N),
                   ah * Rat(2) - c.cls(1),
                   -c.cls(2) - ah * c.cls(1),
                   ah * c.cls(2)};
    out.is_virtual = !out.classes[3].is_zero();
    return out;
}

// ---------------------------------------------------------------------------
// Newton's identities: Chern classes <-> Chern character.
// ---------------------------------------------------------------------------

// ch_0 = rank, ch_n = p_n / n! where the power sums satisfy
//   p_n = sum_{r=1}^{n-1} (-1)^{r-1} c_r p_{n-r} + (-1)^{n-1} n c_n.
inline ChernCharacter chern_to_char(const ChernSequence& c, int N) {
    if (N < 0) throw DomainError("chern_to_char: negative degree bound");
    const int trunc = c.truncation();
    ChernCharacter out;
    out.ch.reserve(static_cast<std::size_t>(N) + 1);
    out.ch.push_back(GradedPoly::constant(Rat(c.rank), trunc));
    std::vector<GradedPoly> p;  // power sums, p[n] with p[0] unused
    p.emplace_back(trunc);
    for (int n = 1; n <= N; ++n) {
        GradedPoly pn = c.cls(n) * Rat((n % 2 == 0) ? -n : n);
        for (int r = 1; r <= n - 1; ++r) {
            const GradedPoly term = c.cls(r) * p[static_cast<std::size_t>(n - r)];
            pn = (r % 2 == 1) ? pn + term : pn - term;
        }
        p.push_back(pn);
        out.ch.push_back(pn * Rat(Int(1), factorial(static_cast<unsigned>(n))));
    }
    return out;
}

// Inverse recursion: p_r = r! ch_r, then n c_n = sum_{r=1}^n (-1)^{r-1} p_r c_{n-r}.
// The rank is read off ch_0, which must be a constant integer.
inline ChernSequence char_to_chern(const ChernCharacter& ch) {
    if (ch.ch.empty()) throw DomainError("char_to_chern: empty character");
    const GradedPoly& ch0 = ch.ch.front();
    if (!ch0.is_constant()) {
        throw DomainError("char_to_chern: ch_0 must be constant, got " + ch0.to_string());
    }
    const Rat rank_rat = ch0.constant_value();
    if (boost::multiprecision::denominator(rank_rat) != 1) {
        throw DomainError("char_to_chern: ch_0 must be an integer, got " + rank_rat.str());
    }
    const Int rank_int = boost::multiprecision::numerator(rank_rat);
    const int N = ch.degree_bound();
    const int trunc = ch0.truncation();

    std::vector<GradedPoly> p;  // p[r] = r! * ch_r
    p.emplace_back(trunc);
    for (int r = 1; r <= N; ++r) {
        p.push_back(ch.ch[static_cast<std::size_t>(r)] *
                    Rat(factorial(static_cast<unsigned>(r))));
    }

    ChernSequence out;
    out.rank = static_cast<int>(rank_int);
    out.classes = {GradedPoly::constant(Rat(1), trunc)};
    for (int n = 1; n <= N; ++n) {
        GradedPoly acc(trunc);
        for (int r = 1; r <= n; ++r) {
            const GradedPoly term =
                p[static_cast<std::size_t>(r)] * out.classes[static_cast<std::size_t>(n - r)];
            acc = (r % 2 == 1) ? acc + term : acc - term;
        }
        out.classes.push_back(acc * Rat(Int(1), Int(n)));
    }
    for (int j = std::max(out.rank, 0) + 1; j <= N; ++j) {
        if (!out.classes[static_cast<std::size_t>(j)].is_zero()) {
            out.is_virtual = true;
            break;
        }
    }
    if (out.rank < 0) out.is_virtual = true;
    return out;
}

// ---------------------------------------------------------------------------
// Pushforward along the P^1 factor.
// ---------------------------------------------------------------------------

// Tensoring with the pulled-back line class m*h: ch -> ch * e^{m h}
// = ch * (1 + m h).
inline ChernCharacter twist_by_line(const ChernCharacter& ch, int m) {
    const int N = ch.degree_bound();
    if (N < 0) return ch;
    const int trunc = ch.ch.front().truncation();
    const GradedPoly mh = GradedPoly::h(trunc) * Rat(m);
    ChernCharacter out;
    out.ch.reserve(ch.ch.size());
    for (int n = 0; n <= N; ++n) {
        GradedPoly piece = ch.ch[static_cast<std::size_t>(n)];
        if (n >= 1) piece = piece + mh * ch.ch[static_cast<std::size_t>(n - 1)];
        out.ch.push_back(piece);
    }
    return out;
}

// Bare fiber integration: extracts the h-coefficient of each graded piece
// (degree drops by one; h-free classes integrate to zero along the fiber).
inline ChernCharacter fiber_integrate(const ChernCharacter& ch) {
    if (ch.ch.empty()) throw DomainError("fiber_integrate: empty character");
    ChernCharacter out;
    for (std::size_t n = 1; n < ch.ch.size(); ++n) out.ch.push_back(ch.ch[n].h_coeff());
    return out;
}

// Grothendieck-Riemann-Roch along the P^1 projection: multiply by the
// relative Todd class 1 + h, then integrate along the fiber:
//   ch_n(push) = h_coeff(ch_{n+1}) + h_free(ch_n).
inline ChernCharacter grr_pushforward(const ChernCharacter& ch) {
    if (ch.ch.empty()) throw DomainError("grr_pushforward: empty character");
    ChernCharacter out;
    const int N = ch.degree_bound();
    out.ch.reserve(static_cast<std::size_t>(N));
    for (int n = 0; n + 1 <= N; ++n) {
        out.ch.push_back(ch.ch[static_cast<std::size_t>(n + 1)].h_coeff() +
                         ch.ch[static_cast<std::size_t>(n)].h_free());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Porteous determinants.
// ---------------------------------------------------------------------------

// Delta_{p,q}(a) = det(a_{p+j-i})_{1<=i,j<=q}, with a_k = 0 for k < 0.
// The series must reach index p+q-1 (the top-right entry).
inline GradedPoly porteous(int p, int q, const std::vector<GradedPoly>& ct) {
    if (p < 1 || q < 1) {
        throw DomainError("porteous: indices must be positive, got p=" + std::to_string(p) +
                          ", q=" + std::to_string(q));
    }
    const int max_index = p + q - 1;
    if (max_index >= static_cast<int>(ct.size())) {
        throw DomainError("porteous: series has " + std::to_string(ct.size()) +
                          " coefficients but index " + std::to_string(max_index) +
                          " is required");
    }
    const int trunc = ct.front().truncation();
    const auto entry = [&](int i, int j) -> GradedPoly {  // 0-based
        const int k = p + j - i;
        if (k < 0) return GradedPoly(trunc);
        return ct[static_cast<std::size_t>(k)];
    };
    // Cofactor expansion over the first row; q stays small in practice.
    std::vector<int> cols(static_cast<std::size_t>(q));
    for (int j = 0; j < q; ++j) cols[static_cast<std::size_t>(j)] = j;
    const auto det = [&](auto&& self, int row, std::vector<int>& live) -> GradedPoly {
        if (live.empty()) return GradedPoly::constant(Rat(1), trunc);
        GradedPoly acc(trunc);
        for (std::size_t pos = 0; pos < live.size(); ++pos) {
            const int col = live[pos];
            std::vector<int> rest = live;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
            const GradedPoly minor = self(self, row + 1, rest);
            const GradedPoly term = entry(row, col) * minor;
            acc = (pos % 2 == 0) ? acc + term : acc - term;
        }
        return acc;
    };
    return det(det, 0, cols);
}

// Coefficients of c_t(-F) = 1 / c_t(F) up to degree N.
inline std::vector<GradedPoly> negative_chern_series(const ChernSequence& c, int N) {
    const int trunc = c.truncation();
    std::vector<GradedPoly> b;
    b.push_back(GradedPoly::constant(Rat(1), trunc));
    for (int n = 1; n <= N; ++n) {
        GradedPoly acc(trunc);
        for (int r = 1; r <= n; ++r) {
            acc = acc - c.cls(r) * b[static_cast<std::size_t>(n - r)];
        }
        b.push_back(acc);
    }
    return b;
}

// ---------------------------------------------------------------------------
// The stratum classes.
// ---------------------------------------------------------------------------

// Chern character of the pushforward of K^v (x) O(a) along the P^1 factor,
// with graded pieces up to degree N.
inline ChernCharacter pushforward_K_dual_twist(int d, int a, int N) {
    const auto K = universal_K_chern(d, N + 1);
    const auto twisted = dualize_twist(K, a);
    return grr_pushforward(chern_to_char(twisted, N + 1));
}

inline int stratum_codim(int d, int a) {
    if (d < 1) throw DomainError("need d >= 1, got " + std::to_string(d));
    if (a < 0) throw DomainError("need a >= 0, got " + std::to_string(a));
    return d - 2 * a - 1;
}

namespace detail {

inline void require_proper_stratum(int d, int a) {
    const int c = stratum_codim(d, a);
    if (c < 1) {
        throw DomainError(
            "the splitting types with d = 2a and d = 2a + 1 are the balanced, "
            "dense ones (no proper stratum); need codimension d - 2a - 1 >= 1, got " +
            std::to_string(c) + " for d=" + std::to_string(d) + ", a=" + std::to_string(a));
    }
}

}  // namespace detail

// Fundamental class of the stratum of splitting type (a, d-a):
// -c_{d-2a-1} of the pushforward of K^v (x) O(a).
inline GradedPoly class_R_da(int d, int a) {
    detail::require_proper_stratum(d, a);
    const int c = stratum_codim(d, a);
    const auto push = pushforward_K_dual_twist(d, a, c);
    const auto cs = char_to_chern(push);
    const GradedPoly result = -cs.cls(c);
    if (c == 1) {
        // The two displayed routes must coincide in codimension one:
        // -c_1(push) = Delta_{1,1}(c_t(-push)).
        const GradedPoly via_porteous = porteous(1, 1, negative_chern_series(cs, 1));
        if (!(result == via_porteous)) {
            throw InternalError("codimension-1 stratum class disagrees between -c_1 (" +
                                result.to_string() + ") and the determinant route (" +
                                via_porteous.to_string() + ")");
        }
    }
    return result;
}

// The determinant route: Delta_{c,1} of c_t(-pushforward).  Agrees with
// class_R_da in codimension 1; reported separately in higher codimension,
// where the two displayed formulas genuinely differ.
inline GradedPoly class_R_da_porteous(int d, int a) {
    detail::require_proper_stratum(d, a);
    const int c = stratum_codim(d, a);
    const auto push = pushforward_K_dual_twist(d, a, c);
    const auto cs = char_to_chern(push);
    return porteous(c, 1, negative_chern_series(cs, c));
}

// c_1 of B_m, the pushforward of E (x) O(m) along the P^1 factor; equals
// (d - 1 - m) t1 + u1 (regression-tested against that closed form).
inline GradedPoly c1_Bm(int d, int m) {
    const int N = 2;
    const auto E = universal_E_chern(d, N);
    const auto push = grr_pushforward(twist_by_line(chern_to_char(E, N), m));
    return push.ch.at(1);
}

// ---------------------------------------------------------------------------
// Divisor bases.
// ---------------------------------------------------------------------------

enum class DivisorBasis { T1U1, AlphaBeta, YD };

// A degree-1 class written in one of the three bases:
//   {t1, u1};  {alpha, beta} with alpha = -t1, beta = u1;
//   {Y, D} with Y = -t1 (so alpha = Y) and D = -2d t1 + u1.
struct DivisorExpr {
    DivisorBasis basis = DivisorBasis::T1U1;
    Rat first;   // coefficient of t1 / alpha / Y
    Rat second;  // coefficient of u1 / beta / D
    int d = 0;   // degree parameter entering the {Y, D} change of basis

    bool operator==(const DivisorExpr&) const = default;

    std::string to_string() const {
        static constexpr const char* kNames[3][2] = {
            {"t1", "u1"}, {"alpha", "beta"}, {"Y", "D"}};
        const auto* names = kNames[static_cast<int>(basis)];
        std::string s;
        const Rat* coeffs[2] = {&first, &second};
        for (int i = 0; i < 2; ++i) {
            const Rat& c = *coeffs[i];
            if (c == 0) continue;
            const Rat abs_c = c < 0 ? Rat(-c) : c;
            const std::string body = abs_c.str() + "*" + names[i];
            if (s.empty()) {
                s = (c < 0 ? "-" : "") + body;
            } else {
                s += (c < 0 ? " - " : " + ") + body;
            }
        }
        return s.empty() ? "0" : s;
    }
};

inline DivisorExpr basis_change(const DivisorExpr& e, DivisorBasis target) {
    // Through the {t1, u1} hub.
    Rat x, y;  // coefficients of t1, u1
    switch (e.basis) {
        case DivisorBasis::T1U1:
            x = e.first;
            y = e.second;
            break;
        case DivisorBasis::AlphaBeta:  // alpha = -t1, beta = u1
            x = -e.first;
            y = e.second;
            break;
        case DivisorBasis::YD:  // Y = -t1, D = -2d t1 + u1
            x = -e.first - Rat(2 * e.d) * e.second;
            y = e.second;
            break;
    }
    DivisorExpr out;
    out.basis = target;
    out.d = e.d;
    switch (target) {
        case DivisorBasis::T1U1:
            out.first = x;
            out.second = y;
            break;
        case DivisorBasis::AlphaBeta:
            out.first = -x;
            out.second = y;
            break;
        case DivisorBasis::YD:
            out.second = y;
            out.first = -x - Rat(2 * e.d) * y;
            break;
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const DivisorExpr& e) {
    return os << e.to_string();
}

// Reads a pure degree-1 class in t1, u1 off a GradedPoly.
inline DivisorExpr divisor_from_poly(const GradedPoly& p, int d) {
    DivisorExpr e;
    e.basis = DivisorBasis::T1U1;
    e.d = d;
    ChowMonomial t1_mono, u1_mono;
    t1_mono.exp[0] = 1;
    u1_mono.exp[1] = 1;
    e.first = p.coeff(t1_mono);
    e.second = p.coeff(u1_mono);
    GradedPoly rest = p;
    rest.add_term(t1_mono, -e.first);
    rest.add_term(u1_mono, -e.second);
    if (!rest.is_zero()) {
        throw DomainError("not a degree-1 class in t1, u1: " + p.to_string());
    }
    return e;
}

}  // namespace scrollcalc
