#pragma once

// The formal graded ring used for universal Chern-class computations:
//
//   Q[t1, u1, t2, u2, h] / (h^2),   truncated above a configured total degree.
//
// Degrees: t1, u1, h have degree 1; t2, u2 have degree 2.  The generators
// t_i, u_i are the Kuenneth components of the Chern classes of the universal
// subsheaf on (base) x P^1, and h is the hyperplane class of the P^1 factor,
// whence h^2 = 0.  Coefficients are exact rationals.
//
// Everything is commutative (all classes are even-dimensional in the
// intersection-theoretic sense), values are immutable in practice, and the
// monomial order is graded-lex, so printing is deterministic.

#include <array>
#include <map>
#include <ostream>
#include <string>

#include "scrollcalc/numeric.hpp"

namespace scrollcalc {

struct ChowMonomial {
    // Exponents of t1, u1, t2, u2, h, in that order.
    std::array<int, 5> exp{};

    int degree() const { return exp[0] + exp[1] + 2 * exp[2] + 2 * exp[3] + exp[4]; }

    bool operator==(const ChowMonomial&) const = default;

    // Graded-lex: ascending total degree, then descending lex on the
    // exponent tuple, so t1-heavy monomials print first within a degree.
    bool operator<(const ChowMonomial& o) const {
        const int da = degree(), db = o.degree();
        if (da != db) return da < db;
        return exp > o.exp;
    }

    std::string to_string() const {
        static constexpr const char* kNames[5] = {"t1", "u1", "t2", "u2", "h"};
        std::string s;
        for (int v = 0; v < 5; ++v) {
            if (exp[static_cast<std::size_t>(v)] == 0) continue;
            if (!s.empty()) s += "*";
            s += kNames[v];
            if (exp[static_cast<std::size_t>(v)] > 1) {
                s += "^" + std::to_string(exp[static_cast<std::size_t>(v)]);
            }
        }
        return s.empty() ? "1" : s;
    }
};

class GradedPoly {
public:
    static constexpr int kDefaultTruncation = 6;

    explicit GradedPoly(int truncation = kDefaultTruncation) : trunc_(truncation) {
        if (truncation < 0) throw DomainError("negative truncation degree");
    }

    static GradedPoly constant(const Rat& c, int truncation = kDefaultTruncation) {
        GradedPoly p(truncation);
        p.add_term(ChowMonomial{}, c);
        return p;
    }

    // Generator factories; index order matches ChowMonomial::exp.
    static GradedPoly generator(int var, int truncation = kDefaultTruncation) {
        if (var < 0 || var > 4) throw DomainError("generator index out of range");
        GradedPoly p(truncation);
        ChowMonomial m;
        m.exp[static_cast<std::size_t>(var)] = 1;
        p.add_term(m, Rat(1));
        return p;
    }
    static GradedPoly t1(int N = kDefaultTruncation) { return generator(0, N); }
    static GradedPoly u1(int N = kDefaultTruncation) { return generator(1, N); }
    static GradedPoly t2(int N = kDefaultTruncation) { return generator(2, N); }
    static GradedPoly u2(int N = kDefaultTruncation) { return generator(3, N); }
    static GradedPoly h(int N = kDefaultTruncation) { return generator(4, N); }

    int truncation() const { return trunc_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == ChowMonomial{});
    }

    Rat constant_value() const { return coeff(ChowMonomial{}); }

    Rat coeff(const ChowMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    const std::map<ChowMonomial, Rat>& terms() const { return terms_; }

    // Drops the term silently when it violates h^2 = 0 or the truncation;
    // both are ideal relations of the ring, not errors.
    void add_term(const ChowMonomial& m, const Rat& c) {
        if (c == 0 || m.exp[4] >= 2 || m.degree() > trunc_) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    GradedPoly operator+(const GradedPoly& o) const {
        GradedPoly r(std::min(trunc_, o.trunc_));
        for (const auto& [m, c] : terms_) r.add_term(m, c);
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    GradedPoly operator-(const GradedPoly& o) const {
        GradedPoly r(std::min(trunc_, o.trunc_));
        for (const auto& [m, c] : terms_) r.add_term(m, c);
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }

    GradedPoly operator-() const {
        GradedPoly r(trunc_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    GradedPoly operator*(const GradedPoly& o) const {
        GradedPoly r(std::min(trunc_, o.trunc_));
        for (const auto& [ma, ca] : terms_) {
            for (const auto& [mb, cb] : o.terms_) {
                ChowMonomial m;
                for (std::size_t v = 0; v < 5; ++v) m.exp[v] = ma.exp[v] + mb.exp[v];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    GradedPoly operator*(const Rat& s) const {
        GradedPoly r(trunc_);
        if (s == 0) return r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
        return r;
    }

    bool operator==(const GradedPoly& o) const { return terms_ == o.terms_; }

    // Homogeneous degree-n component.
    GradedPoly component(int n) const {
        GradedPoly r(trunc_);
        for (const auto& [m, c] : terms_) {
            if (m.degree() == n) r.terms_.emplace(m, c);
        }
        return r;
    }

    bool is_homogeneous(int n) const {
        for (const auto& [m, c] : terms_) {
            (void)c;
            if (m.degree() != n) return false;
        }
        return true;
    }

    // The part not involving h.
    GradedPoly h_free() const {
        GradedPoly r(trunc_);
        for (const auto& [m, c] : terms_) {
            if (m.exp[4] == 0) r.terms_.emplace(m, c);
        }
        return r;
    }

    // The coefficient of h: terms with h, with the h removed (degree drops
    // by one).
    GradedPoly h_coeff() const {
        GradedPoly r(trunc_);
        for (const auto& [m, c] : terms_) {
            if (m.exp[4] == 1) {
                ChowMonomial stripped = m;
                stripped.exp[4] = 0;
                r.terms_.emplace(stripped, c);
            }
        }
        return r;
    }

    // Deterministic graded-lex print; rationals as "p/q".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            const Rat abs_c = c < 0 ? Rat(-c) : c;
            std::string body = abs_c.str();
            if (!(m == ChowMonomial{})) body += "*" + m.to_string();
            if (s.empty()) {
                s = (c < 0 ? "-" : "") + body;
            } else {
                s += (c < 0 ? " - " : " + ") + body;
            }
        }
        return s;
    }

private:
    int trunc_;
    std::map<ChowMonomial, Rat> terms_;  // no zero coefficients stored
};

inline GradedPoly operator*(const Rat& s, const GradedPoly& p) { return p * s; }

inline std::ostream& operator<<(std::ostream& os, const GradedPoly& p) {
    return os << p.to_string();
}

}  // namespace scrollcalc
