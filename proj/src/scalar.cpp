#include "qhcalc/scalar.hpp"

namespace qhcalc {

Field Field::prime(unsigned long p) {
    if (p < 2) throw PreconditionError("BadField", "characteristic must be a prime >= 2");
    mpz_class z(static_cast<unsigned long>(p));
    if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
        throw PreconditionError("BadField", "not a prime: " + std::to_string(p));
    Field f;
    f.kind_ = Kind::Prime;
    f.p_ = p;
    return f;
}

Field Field::parse(const std::string& spec) {
    if (spec == "Q") return rationals();
    if (spec.rfind("Fp:", 0) == 0) {
        unsigned long p = 0;
        try {
            p = std::stoul(spec.substr(3));
        } catch (...) {
            throw ParseError("bad field spec: " + spec);
        }
        return prime(p);
    }
    throw ParseError("bad field spec: " + spec);
}

std::string Field::spec() const {
    return is_rationals() ? "Q" : "Fp:" + std::to_string(p_);
}

Scalar Field::normalize(const Scalar& a) const {
    if (kind_ == Kind::Rationals) {
        Scalar r = a;
        r.canonicalize();
        return r;
    }
    // residue in [0, p): numerator * inverse(denominator) mod p
    mpz_class p(p_);
    mpz_class num = a.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = a.get_den() % p;
    if (den < 0) den += p;
    if (den == 0) throw InternalError("denominator divisible by p in F_p scalar");
    if (den != 1) {
        mpz_class di;
        if (mpz_invert(di.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
            throw InternalError("non-invertible denominator mod p");
        num = (num * di) % p;
    }
    return Scalar(num);
}

Scalar Field::inv(const Scalar& a) const {
    Scalar n = normalize(a);
    if (sgn(n) == 0) throw InternalError("division by zero");
    if (kind_ == Kind::Rationals) return Scalar(1) / n;
    mpz_class p(p_), v = n.get_num(), r;
    if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
        throw InternalError("non-invertible element mod p");
    return Scalar(r);
}

Scalar Field::from_string(const std::string& s) const {
    try {
        Scalar v(s);
        return normalize(v);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad scalar: " + s);
    }
}

} // namespace qhcalc
