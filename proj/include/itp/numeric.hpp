// Exact rational arithmetic and rationals extended with an infinitesimal,
// used to represent strict bounds symbolically.
#pragma once

#include <gmpxx.h>

#include <string>

namespace itp {

using Rational = mpq_class;

inline Rational rat(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// Largest integer <= q.
Rational rat_floor(const Rational& q);
/// Smallest integer >= q.
Rational rat_ceil(const Rational& q);

inline bool rat_is_integer(const Rational& q) { return q.get_den() == 1; }

inline int rat_sign(const Rational& q) { return sgn(q); }

/// lcm of denominators; used to scale coefficient rows to integers.
Rational rat_den_lcm(const Rational& acc, const Rational& q);

std::string rat_to_string(const Rational& q);

/// A member of Q extended with multiples of a positive infinitesimal.
/// The value denoted is real + eps * delta for an arbitrarily small
/// delta > 0.  Ordering is lexicographic on (real, eps).
struct EpsRational {
    Rational real;
    Rational eps;

    EpsRational() = default;
    explicit EpsRational(Rational r) : real(std::move(r)) {}
    EpsRational(Rational r, Rational e) : real(std::move(r)), eps(std::move(e)) {}

    bool is_rational() const { return sgn(eps) == 0; }
    bool is_integer() const { return is_rational() && rat_is_integer(real); }

    EpsRational operator+(const EpsRational& o) const { return {real + o.real, eps + o.eps}; }
    EpsRational operator-(const EpsRational& o) const { return {real - o.real, eps - o.eps}; }
    EpsRational operator-() const { return {-real, -eps}; }
    EpsRational scaled(const Rational& k) const { return {real * k, eps * k}; }

    bool operator==(const EpsRational& o) const { return real == o.real && eps == o.eps; }
    bool operator!=(const EpsRational& o) const { return !(*this == o); }
    bool operator<(const EpsRational& o) const {
        int c = cmp(real, o.real);
        return c < 0 || (c == 0 && eps < o.eps);
    }
    bool operator<=(const EpsRational& o) const { return *this < o || *this == o; }
    bool operator>(const EpsRational& o) const { return o < *this; }
    bool operator>=(const EpsRational& o) const { return o <= *this; }

    static EpsRational zero() { return EpsRational(Rational(0)); }
    /// The bound value q - eps, i.e. "strictly below q".
    static EpsRational just_below(Rational q) { return {std::move(q), Rational(-1)}; }
};

std::string to_string(const EpsRational& v);

}  // namespace itp
