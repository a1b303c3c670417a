#pragma once

// Exact arithmetic foundation shared by every module: arbitrary-precision
// integers and rationals (boost::multiprecision, header-only backends), the
// error taxonomy the CLI maps to exit codes, and a small Gaussian-rational
// type Q(i) used by the Vafa-Intriligator root-of-unity sums.
//
// No floating point is used anywhere in this library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scrollcalc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Error taxonomy.  The CLI maps these to process exit codes:
//   DomainError -> 1, ParseError -> 2, ResourceError -> 3, InternalError -> 4.
// Messages always name the offending input.
// ---------------------------------------------------------------------------

// A structurally valid request whose arguments lie outside the mathematical
// domain of the operation (e.g. a stratum that is not a proper stratum).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input: CLI expressions, insertion lists, cache records.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation that would exceed a configured budget (degree, insertion
// count, memo-table size).  Never silently degrades precision.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal-consistency violation: a value that must be an integer is not,
// two derivations of the same invariant disagree, a cache record conflicts
// with an in-memory value.  Always indicates a bug or corrupted state.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Small integer helpers.
// ---------------------------------------------------------------------------

inline Int int_pow(const Int& base, unsigned exp) {
    Int result = 1;
    Int b = base;
    while (exp != 0) {
        if (exp & 1u) result *= b;
        b *= b;
        exp >>= 1u;
    }
    return result;
}

// Exact binomial coefficient C(n, k); the running product is always
// divisible at each step, so the division below is exact.
inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

inline Int factorial(unsigned n) {
    Int result = 1;
    for (unsigned i = 2; i <= n; ++i) result *= i;
    return result;
}

// Exact integer quotient; throws InternalError when the division is not
// exact.  Used wherever the mathematics guarantees divisibility.
inline Int exact_div(const Int& num, const Int& den, const char* context) {
    if (den == 0) throw InternalError(std::string("exact_div by zero in ") + context);
    Int q = num / den;
    if (q * den != num) {
        throw InternalError(std::string("non-exact division in ") + context + ": " +
                            num.str() + " / " + den.str());
    }
    return q;
}

// ---------------------------------------------------------------------------
// Gaussian rationals a + b*i with exact rational a, b.  Only the operations
// the Vafa-Intriligator evaluation needs.
// ---------------------------------------------------------------------------

struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    static GaussRat of_int(long r, long i = 0) { return GaussRat(Rat(r), Rat(i)); }

    GaussRat operator+(const GaussRat& o) const { return GaussRat(re + o.re, im + o.im); }
    GaussRat operator-(const GaussRat& o) const { return GaussRat(re - o.re, im - o.im); }
    GaussRat operator-() const { return GaussRat(-re, -im); }
    GaussRat operator*(const GaussRat& o) const {
        return GaussRat(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GaussRat& operator+=(const GaussRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRat& operator*=(const GaussRat& o) {
        *this = *this * o;
        return *this;
    }
    GaussRat operator*(const Rat& s) const { return GaussRat(re * s, im * s); }

    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }

    bool is_integer() const {
        return im == 0 && boost::multiprecision::denominator(re) == 1;
    }

    // Only valid after is_integer(); callers assert via to_integer_checked.
    Int to_integer_checked(const char* context) const {
        if (!is_integer()) {
            throw InternalError(std::string("value is not an integer in ") + context);
        }
        return boost::multiprecision::numerator(re);
    }

    std::string to_string() const {
        const Rat abs_im = im < 0 ? Rat(-im) : im;
        return re.str() + (im < 0 ? " - " : " + ") + abs_im.str() + "*i";
    }
};

inline GaussRat pow(GaussRat base, unsigned exp) {
    GaussRat result = GaussRat::of_int(1);
    while (exp != 0) {
        if (exp & 1u) result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

}  // namespace scrollcalc
