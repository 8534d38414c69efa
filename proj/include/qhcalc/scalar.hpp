#ifndef QHCALC_SCALAR_HPP
#define QHCALC_SCALAR_HPP

#include <gmpxx.h>

#include <string>

#include "qhcalc/errors.hpp"

namespace qhcalc {

// Exact field element. Over Q this is an arbitrary-precision rational;
// over F_p it is an integer residue in [0, p) stored in the same type.
using Scalar = mpq_class;

// Coefficient field: the rationals (default) or a prime field F_p.
class Field {
public:
    enum class Kind { Rationals, Prime };

    Field() : kind_(Kind::Rationals), p_(0) {}
    static Field rationals() { return Field(); }
    static Field prime(unsigned long p);

    // Parses "Q" or "Fp:<prime>".
    static Field parse(const std::string& spec);

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::Rationals; }
    unsigned long characteristic() const { return kind_ == Kind::Prime ? p_ : 0; }
    std::string spec() const;

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    Scalar normalize(const Scalar& a) const;
    Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
    Scalar neg(const Scalar& a) const { return normalize(-a); }
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
    bool is_zero(const Scalar& a) const { return sgn(normalize(a)) == 0; }

    Scalar from_long(long v) const { return normalize(Scalar(v)); }
    // Parses "n" or "n/d"; over F_p the value is reduced mod p.
    Scalar from_string(const std::string& s) const;

    static std::string to_string(const Scalar& a) { return a.get_str(); }

private:
    Kind kind_;
    unsigned long p_;
};

} // namespace qhcalc

#endif
