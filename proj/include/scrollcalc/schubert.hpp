#pragma once

// Classical cohomology ring H*(G(2,4), Z) of the Grassmannian of lines in
// P^3, in the Schubert basis over partitions in the 2x2 box.
//
//   - pieri_multiply: product with a special class sigma_p = c_p(Q),
//     p in {1,2}, by adding horizontal p-strips inside the box;
//   - lr_multiply: general products via the Giambelli reduction for two-row
//     partitions, sigma_{(a,b)} = sigma_a^sp * sigma_b^sp
//                               - sigma_{a+1}^sp * sigma_{b-1}^sp,
//     where sigma_p^sp is the Pieri operator (zero for p > 2);
//   - integrate: the degree of the zero-cycle part, i.e. the coefficient of
//     the point class sigma_{2,2};
//   - poincare_dual: box complement, so that the Poincare pairing of
//     sigma_lambda with sigma_mu is 1 exactly when mu is the complement.
//
// Elements serialize as "c*[lambda] + ..." in basis order, "0" when zero.

#include <map>
#include <string>
#include <utility>

#include "scrollcalc/numeric.hpp"
#include "scrollcalc/partition.hpp"

namespace scrollcalc {

class CohomElement {
public:
    CohomElement() = default;

    static CohomElement zero() { return CohomElement{}; }
    static CohomElement unit() { return basis_elem(Partition{}); }

    static CohomElement basis_elem(const Partition& p) {
        if (!p.fits_box(2, 2)) {
            throw DomainError("class " + p.to_string() + " is outside the 2x2 box");
        }
        CohomElement e;
        e.coeffs_.emplace(p, 1);
        return e;
    }

    const std::map<Partition, Int>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Int coeff(const Partition& p) const {
        auto it = coeffs_.find(p);
        return it == coeffs_.end() ? Int(0) : it->second;
    }

    void add_term(const Partition& p, const Int& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    CohomElement operator+(const CohomElement& o) const {
        CohomElement r = *this;
        for (const auto& [p, c] : o.coeffs_) r.add_term(p, c);
        return r;
    }

    CohomElement operator-(const CohomElement& o) const {
        CohomElement r = *this;
        for (const auto& [p, c] : o.coeffs_) r.add_term(p, -c);
        return r;
    }

    CohomElement operator*(const Int& s) const {
        CohomElement r;
        if (s == 0) return r;
        for (const auto& [p, c] : coeffs_) r.coeffs_.emplace(p, c * s);
        return r;
    }

    bool operator==(const CohomElement& o) const { return coeffs_ == o.coeffs_; }

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (const auto& [p, c] : coeffs_) {
            if (!s.empty()) s += " + ";
            s += c.str() + "*" + p.to_string();
        }
        return s;
    }

private:
    std::map<Partition, Int> coeffs_;  // no zero coefficients stored
};

// ---------------------------------------------------------------------------
// Pieri rule: sigma_p * sigma_lambda = sum of sigma_mu over mu in the box
// obtained from lambda by adding a horizontal strip of p boxes (at most one
// box per column, i.e. mu_2 <= lambda_1 for two rows).
// ---------------------------------------------------------------------------

inline CohomElement pieri_multiply(const CohomElement& e, int p) {
    if (p != 1 && p != 2) {
        throw DomainError("invalid special class p=" + std::to_string(p) +
                          " (the special Schubert classes are sigma_1 and sigma_2)");
    }
    CohomElement result;
    for (const auto& [lam, c] : e.coeffs()) {
        const int l1 = lam.part(0), l2 = lam.part(1);
        for (const Partition& mu : schubert_basis()) {
            const int m1 = mu.part(0), m2 = mu.part(1);
            const bool contains = m1 >= l1 && m2 >= l2;
            const bool strip = contains && (m1 + m2 == l1 + l2 + p) && m2 <= l1;
            if (strip) result.add_term(mu, c);
        }
    }
    return result;
}

// Internal Pieri operator extended to p in {0,...}: identity at p = 0 and
// zero for p > 2 (the quotient bundle has rank 2, so c_p(Q) = 0 beyond 2).
// Used by the Giambelli reduction below; not part of the public Pieri API.
namespace detail {
inline CohomElement special_multiply(const CohomElement& e, int p) {
    if (p == 0) return e;
    if (p < 0 || p > 2) return CohomElement::zero();
    return pieri_multiply(e, p);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// General product via Giambelli: for a two-row partition (a, b),
//   sigma_{(a,b)} * x = sigma_a^sp(sigma_b^sp(x)) - sigma_{a+1}^sp(sigma_{b-1}^sp(x)).
// ---------------------------------------------------------------------------

inline CohomElement lr_multiply(const CohomElement& a, const CohomElement& b) {
    CohomElement result;
    for (const auto& [lam, c] : a.coeffs()) {
        const int l1 = lam.part(0), l2 = lam.part(1);
        CohomElement head = detail::special_multiply(detail::special_multiply(b, l2), l1);
        CohomElement tail =
            detail::special_multiply(detail::special_multiply(b, l2 - 1), l1 + 1);
        result = result + (head - tail) * c;
    }
    return result;
}

// Degree of the zero-cycle part: the coefficient of the point class.
inline Int integrate(const CohomElement& e) { return e.coeff(Partition{2, 2}); }

inline Partition poincare_dual(const Partition& p) { return p.box_complement(2, 2); }

// Poincare pairing <a, b> = integral of a*b.
inline Int pairing(const CohomElement& a, const CohomElement& b) {
    return integrate(lr_multiply(a, b));
}

}  // namespace scrollcalc
