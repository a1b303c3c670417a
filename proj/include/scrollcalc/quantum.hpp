#pragma once

// Small quantum cohomology QH*(G(2,4)) and the Vafa-Intriligator evaluation
// of Quot-scheme degrees.
//
// Products are computed by the rim-hook rule (Bertram / Ciocan-Fontanine /
// Fulton): expand the classical two-row Schur product without truncating to
// the box, then reduce every partition mu with mu_1 > 2 by repeatedly
// removing a 4-rim-hook, each removal contributing one power of q and the
// sign (-1)^(height - 2).  For a two-row mu the possible 4-hooks are
//
//   (A) wrapping both rows:  mu -> (mu_2 - 1, mu_1 - 3), height 2, sign +1;
//   (B) inside row 1 only:   mu -> (mu_1 - 4, mu_2),     height 1, sign -1;
//   (C) inside row 2 only:   mu -> (mu_1, mu_2 - 4),     height 1, sign -1.
//
// The reduction is path-independent (tested), and q has degree 4, so
// homogeneous elements satisfy |lambda| + 4*(q-power) = const.
//
// The Vafa-Intriligator formula is evaluated exactly over Q(i).  The
// Frobenius-algebra spectrum of QH*(G(2,4)) at q = 1 consists of pairs of
// distinct 8th roots of unity zeta with zeta^4 = -1; substituting
// zeta = omega*eta for a fixed primitive 8th root omega turns the standard
// root-of-unity sum into a sum over unordered pairs of distinct 4th roots
// eta in {1, i, -1, -i}:
//
//   <sigma_{l_1}, ..., sigma_{l_m}>_d
//     = (-1)^(d+1) * sum_{eta_1 != eta_2}  eta_1*eta_2*(eta_1 - eta_2)^2 / 16
//                    * prod_j s_{l_j}(eta_1, eta_2),
//
// valid when sum |l_j| = 4d + 4 (the dimension of the degree-d Quot scheme);
// any other total gives 0.  The sum provably simplifies to an integer, and
// the evaluation asserts that it does.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "scrollcalc/numeric.hpp"
#include "scrollcalc/partition.hpp"
#include "scrollcalc/schubert.hpp"

namespace scrollcalc {

// ---------------------------------------------------------------------------
// QElement: exact integer combination of q^m * sigma_lambda.
// ---------------------------------------------------------------------------

class QElement {
public:
    using Key = std::pair<int, Partition>;  // (q-power, class), ordered

    QElement() = default;

    static QElement zero() { return QElement{}; }
    static QElement unit() { return basis_elem(Partition{}); }

    static QElement basis_elem(const Partition& p, int q_power = 0) {
        if (!p.fits_box(2, 2)) {
            throw DomainError("class " + p.to_string() + " is outside the 2x2 box");
        }
        if (q_power < 0) throw DomainError("negative q power");
        QElement e;
        e.coeffs_.emplace(Key{q_power, p}, 1);
        return e;
    }

    static QElement from_classical(const CohomElement& c) {
        QElement e;
        for (const auto& [p, v] : c.coeffs()) e.coeffs_.emplace(Key{0, p}, v);
        return e;
    }

    // q = 0 specialization.
    CohomElement classical_part() const {
        CohomElement c;
        for (const auto& [k, v] : coeffs_) {
            if (k.first == 0) c.add_term(k.second, v);
        }
        return c;
    }

    const std::map<Key, Int>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Int coeff(const Partition& p, int q_power) const {
        auto it = coeffs_.find(Key{q_power, p});
        return it == coeffs_.end() ? Int(0) : it->second;
    }

    void add_term(const Partition& p, int q_power, const Int& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.emplace(Key{q_power, p}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    QElement operator+(const QElement& o) const {
        QElement r = *this;
        for (const auto& [k, v] : o.coeffs_) r.add_term(k.second, k.first, v);
        return r;
    }

    QElement operator-(const QElement& o) const {
        QElement r = *this;
        for (const auto& [k, v] : o.coeffs_) r.add_term(k.second, k.first, -v);
        return r;
    }

    QElement operator*(const Int& s) const {
        QElement r;
        if (s == 0) return r;
        for (const auto& [k, v] : coeffs_) r.coeffs_.emplace(k, v * s);
        return r;
    }

    bool operator==(const QElement& o) const { return coeffs_ == o.coeffs_; }

    // "c*[lambda]" for q^0 terms, "c*q^m*[lambda]" for m >= 1; terms ordered
    // by ascending q-power, then basis order.  "0" when zero.
    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (const auto& [k, v] : coeffs_) {
            if (!s.empty()) s += " + ";
            s += v.str() + "*";
            if (k.first > 0) s += "q^" + std::to_string(k.first) + "*";
            s += k.second.to_string();
        }
        return s;
    }

private:
    std::map<Key, Int> coeffs_;  // no zero coefficients stored
};

// ---------------------------------------------------------------------------
// Rim-hook reduction of a two-row partition that left the box.
// ---------------------------------------------------------------------------

namespace detail {

struct RimHookResult {
    int q_power = 0;
    int sign = 1;
    bool vanishes = false;
};

// Reduces mu = (m1, m2) (two-row, arbitrary m1) in place to a class in the
// box, accumulating one power of q and the sign (-1)^(height - 2) per
// removed 4-hook, or reports that the class vanishes when no hook fits.
// The removal order is immaterial (tested).
inline RimHookResult rimhook_reduce(int& m1, int& m2) {
    RimHookResult r;
    while (m1 > 2) {
        if (m2 >= 1 && m2 - 1 >= m1 - 3 && m1 - 3 >= 0) {
            // (A) wrap around both rows: height 2, sign +1.
            const int n1 = m2 - 1, n2 = m1 - 3;
            m1 = n1;
            m2 = n2;
        } else if (m1 - 4 >= m2) {
            // (B) inside row 1: height 1, sign -1.
            m1 -= 4;
            r.sign = -r.sign;
        } else if (m2 >= 4) {
            // (C) inside row 2: height 1, sign -1.
            m2 -= 4;
            r.sign = -r.sign;
        } else {
            r.vanishes = true;
            return r;
        }
        ++r.q_power;
    }
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Quantum product.
// ---------------------------------------------------------------------------

inline QElement quantum_product(const QElement& a, const QElement& b) {
    QElement result;
    for (const auto& [ka, va] : a.coeffs()) {
        for (const auto& [kb, vb] : b.coeffs()) {
            const Partition &lam = ka.second, &mu = kb.second;
            const int a1 = lam.part(0), a2 = lam.part(1);
            const int b1 = mu.part(0), b2 = mu.part(1);
            const int r = a2 + b2, p = a1 - a2, q = b1 - b2;
            const Int c = va * vb;
            const int base_q = ka.first + kb.first;
            // Classical two-row expansion, kept outside the box, then
            // rim-hook reduced back into it.
            for (int j = 0; j <= std::min(p, q); ++j) {
                int m1 = p + q - j + r;
                int m2 = j + r;
                const auto red = detail::rimhook_reduce(m1, m2);
                if (red.vanishes) continue;
                result.add_term(Partition{m1, m2}, base_q + red.q_power,
                                red.sign > 0 ? c : -c);
            }
        }
    }
    return result;
}

// Quantum Pieri: product with a special class sigma_p, p in {1,2}.
inline QElement quantum_pieri(const QElement& e, int p) {
    if (p != 1 && p != 2) {
        throw DomainError("invalid special class p=" + std::to_string(p) +
                          " (the special Schubert classes are sigma_1 and sigma_2)");
    }
    return quantum_product(e, QElement::basis_elem(Partition{p}));
}

// ---------------------------------------------------------------------------
// Vafa-Intriligator evaluation.
// ---------------------------------------------------------------------------

struct VIConfig {
    // Cap on the total codimension of the insertion list (so on the degree,
    // since sum |l_j| = 4d + 4); bounds runtime for scripted use.
    int max_total_codim = 4 * 12 + 4;
};

namespace detail {

// Two-variable Schur values s_lambda(x, y) for the six box partitions, via
// e1 = x + y, e2 = x*y.
inline GaussRat schur_value(int basis_idx, const GaussRat& e1, const GaussRat& e2) {
    switch (basis_idx) {
        case 0: return GaussRat::of_int(1);      // s_{} = 1
        case 1: return e1;                       // s_1 = e1
        case 2: return e1 * e1 - e2;             // s_2 = e1^2 - e2
        case 3: return e2;                       // s_{1,1} = e2
        case 4: return e1 * e2;                  // s_{2,1} = e1*e2
        case 5: return e2 * e2;                  // s_{2,2} = e2^2
        default: throw InternalError("bad basis index in schur_value");
    }
}

}  // namespace detail

inline Int vafa_intriligator(const std::vector<Partition>& insertions, int d,
                             const VIConfig& config = {}) {
    if (d < 0) throw DomainError("vafa_intriligator: negative degree d=" + std::to_string(d));
    int total = 0;
    for (const auto& p : insertions) {
        if (!p.fits_box(2, 2)) {
            throw DomainError("vafa_intriligator: class " + p.to_string() +
                              " is outside the 2x2 box");
        }
        total += p.weight();
    }
    if (total > config.max_total_codim) {
        throw ResourceError("vafa_intriligator: total codimension " + std::to_string(total) +
                            " exceeds the configured cap " +
                            std::to_string(config.max_total_codim));
    }
    if (total != 4 * d + 4) return 0;  // dimension mismatch: the invariant vanishes

    // The four 4th roots of unity.
    const GaussRat roots[4] = {GaussRat::of_int(1), GaussRat::of_int(0, 1),
                               GaussRat::of_int(-1), GaussRat::of_int(0, -1)};
    GaussRat sum;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const GaussRat& x = roots[i];
            const GaussRat& y = roots[j];
            const GaussRat e1 = x + y;
            const GaussRat e2 = x * y;
            const GaussRat diff = x - y;
            GaussRat term = e2 * (diff * diff) * Rat(1, 16);
            for (const auto& p : insertions) {
                term *= detail::schur_value(basis_index(p), e1, e2);
            }
            sum += term;
        }
    }
    if ((d + 1) % 2 != 0) sum = -sum;
    if (!sum.is_integer()) {
        throw InternalError("vafa_intriligator: root-of-unity sum did not simplify to an "
                            "integer (got " + sum.to_string() + ") for degree d=" +
                            std::to_string(d));
    }
    return sum.to_integer_checked("vafa_intriligator");
}

// Degree P_d of the Quot scheme under the Pluecker-type morphism:
// P_d = <sigma_1, ..., sigma_1>_d with 4d + 4 insertions.
inline Int degree_P(int d, const VIConfig& config = {}) {
    if (d < 0) throw DomainError("degree_P: negative degree d=" + std::to_string(d));
    std::vector<Partition> ins(static_cast<std::size_t>(4 * d + 4), Partition{1});
    return vafa_intriligator(ins, d, config);
}

}  // namespace scrollcalc
