#include "itp/numeric.hpp"

namespace itp {

Rational rat_floor(const Rational& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(r);
}

Rational rat_ceil(const Rational& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(r);
}

Rational rat_den_lcm(const Rational& acc, const Rational& q) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), acc.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(l);
}

std::string rat_to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const EpsRational& v) {
    std::string s = v.real.get_str();
    if (sgn(v.eps) > 0)
        s += "+" + v.eps.get_str() + "eps";
    else if (sgn(v.eps) < 0)
        s += v.eps.get_str() + "eps";
    return s;
}

}  // namespace itp
