#ifndef MODCRIT_POLYNOMIAL_HPP
#define MODCRIT_POLYNOMIAL_HPP

#include <string>
#include <vector>

#include "modcrit/monomial.hpp"
#include "modcrit/scalar.hpp"

namespace modcrit {

/// Ambient polynomial ring context: coefficient field, variable names, term order.
/// All polynomial values are interpreted relative to one of these.
struct PolyRing {
    FieldSpec field;
    std::vector<std::string> vars;
    MonomialOrder order;

    size_t nvars() const { return vars.size(); }
    int var_index(const std::string& name) const;
    bool operator==(const PolyRing& o) const {
        return field == o.field && vars == o.vars && order == o.order;
    }
};

struct Term {
    Monomial m;
    Scalar c;
};

/// Terms kept sorted descending in the ring order, no zero coefficients.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial zero() { return {}; }
    static Polynomial constant(const PolyRing& R, const Scalar& c);
    static Polynomial one(const PolyRing& R) { return constant(R, Scalar::one(R.field)); }
    static Polynomial variable(const PolyRing& R, size_t i);
    static Polynomial term(const PolyRing& R, Monomial m, Scalar c);
    /// Sorts, merges and drops zeros.
    static Polynomial from_terms(const PolyRing& R, std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading() const { return terms_.front(); }
    uint64_t degree() const;  // total degree, 0 for the zero polynomial

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    friend Polynomial add(const PolyRing&, const Polynomial&, const Polynomial&);
    friend Polynomial sub(const PolyRing&, const Polynomial&, const Polynomial&);
    friend Polynomial neg(const Polynomial&);
    friend Polynomial mul_term(const PolyRing&, const Polynomial&, const Monomial&, const Scalar&);
    friend Polynomial mul(const PolyRing&, const Polynomial&, const Polynomial&);
    friend Polynomial resort(const PolyRing&, const Polynomial&);

    std::vector<Term> terms_;
};

Polynomial add(const PolyRing& R, const Polynomial& a, const Polynomial& b);
Polynomial sub(const PolyRing& R, const Polynomial& a, const Polynomial& b);
Polynomial neg(const Polynomial& a);
Polynomial mul_term(const PolyRing& R, const Polynomial& a, const Monomial& m, const Scalar& c);
Polynomial mul(const PolyRing& R, const Polynomial& a, const Polynomial& b);
Polynomial scale(const PolyRing& R, const Polynomial& a, const Scalar& c);
Polynomial monic(const PolyRing& R, const Polynomial& a);
Polynomial pow(const PolyRing& R, const Polynomial& a, uint64_t n);

/// Formal partial derivative with respect to variable i.
Polynomial derivative(const PolyRing& R, const Polynomial& a, size_t i);

/// Evaluate a at the given variable images (living in ring S).
Polynomial substitute(const PolyRing& source, const Polynomial& a, const PolyRing& S,
                      const std::vector<Polynomial>& images);

/// Re-sorts a polynomial from another ring with the same variables but a
/// different order.
Polynomial resort(const PolyRing& R, const Polynomial& a);

/// Canonical text form: terms descending in R's order, "c*x^a*y^b" joined by
/// " + " / " - " (QQ pulls signs out; F_p prints residues).
std::string to_string(const PolyRing& R, const Polynomial& a);

/// Parses the canonical syntax (plus tolerant whitespace and leading signs).
/// Throws std::invalid_argument with a descriptive message on bad input.
Polynomial parse_polynomial(const PolyRing& R, const std::string& text);

}  // namespace modcrit

#endif
