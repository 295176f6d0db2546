#include "modcrit/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace modcrit {

int PolyRing::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return static_cast<int>(i);
    return -1;
}

Polynomial Polynomial::constant(const PolyRing& R, const Scalar& c) {
    Polynomial p;
    if (!c.is_zero()) p.terms_.push_back({Monomial::unit(R.nvars()), c});
    return p;
}

Polynomial Polynomial::variable(const PolyRing& R, size_t i) {
    Polynomial p;
    p.terms_.push_back({Monomial::var(R.nvars(), i), Scalar::one(R.field)});
    return p;
}

Polynomial Polynomial::term(const PolyRing& R, Monomial m, Scalar c) {
    (void)R;
    Polynomial p;
    if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
}

Polynomial Polynomial::from_terms(const PolyRing& R, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return cmp(R.order, a.m, b.m) > 0; });
    Polynomial p;
    for (auto& t : terms) {
        if (t.c.is_zero()) continue;
        if (!p.terms_.empty() && p.terms_.back().m == t.m) {
            p.terms_.back().c = p.terms_.back().c + t.c;
            if (p.terms_.back().c.is_zero()) p.terms_.pop_back();
        } else {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

uint64_t Polynomial::degree() const {
    uint64_t d = 0;
    for (auto& t : terms_) d = std::max(d, t.m.degree());
    return d;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

Polynomial add(const PolyRing& R, const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        int c = cmp(R.order, a.terms_[i].m, b.terms_[j].m);
        if (c > 0) {
            r.terms_.push_back(a.terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(b.terms_[j++]);
        } else {
            Scalar s = a.terms_[i].c + b.terms_[j].c;
            if (!s.is_zero()) r.terms_.push_back({a.terms_[i].m, std::move(s)});
            ++i, ++j;
        }
    }
    for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
    return r;
}

Polynomial neg(const Polynomial& a) {
    Polynomial r = a;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

Polynomial sub(const PolyRing& R, const Polynomial& a, const Polynomial& b) {
    return add(R, a, neg(b));
}

Polynomial mul_term(const PolyRing& R, const Polynomial& a, const Monomial& m, const Scalar& c) {
    (void)R;
    Polynomial r;
    if (c.is_zero()) return r;
    r.terms_.reserve(a.terms_.size());
    for (auto& t : a.terms_) {
        Scalar s = t.c * c;
        if (!s.is_zero()) r.terms_.push_back({t.m * m, std::move(s)});
    }
    return r;
}

Polynomial mul(const PolyRing& R, const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (auto& t : b.terms()) r = add(R, r, mul_term(R, a, t.m, t.c));
    return r;
}

Polynomial scale(const PolyRing& R, const Polynomial& a, const Scalar& c) {
    return mul_term(R, a, Monomial::unit(R.nvars()), c);
}

Polynomial monic(const PolyRing& R, const Polynomial& a) {
    if (a.is_zero() || a.leading().c.is_one()) return a;
    return scale(R, a, a.leading().c.inverse());
}

Polynomial pow(const PolyRing& R, const Polynomial& a, uint64_t n) {
    Polynomial r = Polynomial::one(R);
    Polynomial base = a;
    while (n) {
        if (n & 1) r = mul(R, r, base);
        n >>= 1;
        if (n) base = mul(R, base, base);
    }
    return r;
}

Polynomial derivative(const PolyRing& R, const Polynomial& a, size_t i) {
    std::vector<Term> out;
    for (auto& t : a.terms()) {
        if (t.m.e[i] == 0) continue;
        Scalar c = t.c * Scalar::from_int(R.field, static_cast<long>(t.m.e[i]));
        if (c.is_zero()) continue;
        Monomial m = t.m;
        m.e[i] -= 1;
        out.push_back({std::move(m), std::move(c)});
    }
    return Polynomial::from_terms(R, std::move(out));
}

Polynomial substitute(const PolyRing& source, const Polynomial& a, const PolyRing& S,
                      const std::vector<Polynomial>& images) {
    Polynomial r;
    for (auto& t : a.terms()) {
        Polynomial prod = Polynomial::constant(S, t.c);
        for (size_t i = 0; i < source.nvars(); ++i) {
            if (t.m.e[i]) prod = mul(S, prod, pow(S, images[i], t.m.e[i]));
        }
        r = add(S, r, prod);
    }
    return r;
}

Polynomial resort(const PolyRing& R, const Polynomial& a) {
    return Polynomial::from_terms(R, a.terms());
}

namespace {

void print_monomial(const PolyRing& R, const Monomial& m, std::ostringstream& os, bool lead_coef_one) {
    bool first = lead_coef_one;
    for (size_t i = 0; i < R.nvars(); ++i) {
        if (!m.e[i]) continue;
        if (!first) os << '*';
        first = false;
        os << R.vars[i];
        if (m.e[i] > 1) os << '^' << m.e[i];
    }
}

}  // namespace

std::string to_string(const PolyRing& R, const Polynomial& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : a.terms()) {
        Scalar c = t.c;
        if (R.field.is_rational()) {
            bool negative = c.rat() < 0;
            if (first) {
                if (negative) os << '-';
            } else {
                os << (negative ? " - " : " + ");
            }
            if (negative) c = -c;
        } else {
            if (!first) os << " + ";
        }
        bool unit_mono = t.m.is_unit();
        if (!c.is_one() || unit_mono) {
            os << c.str();
            if (!unit_mono) os << '*';
            print_monomial(R, t.m, os, true);
        } else {
            print_monomial(R, t.m, os, true);
        }
        first = false;
    }
    return os.str();
}

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("polynomial parse error at offset " + std::to_string(i) +
                                    " in \"" + s + "\": " + why);
    }
    std::string integer() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected an integer");
        return s.substr(start, i - start);
    }
    std::string ident() {
        skip_ws();
        size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
            ++i;
        }
        if (i == start || std::isdigit(static_cast<unsigned char>(s[start]))) fail("expected a variable name");
        return s.substr(start, i - start);
    }
};

}  // namespace

Polynomial parse_polynomial(const PolyRing& R, const std::string& text) {
    Lexer lx{text};
    std::vector<Term> terms;
    bool expect_term = true;
    Scalar sign = Scalar::one(R.field);
    while (!lx.done()) {
        char c = lx.peek();
        if (c == '+' || c == '-') {
            ++lx.i;
            if (c == '-') sign = -sign;
            expect_term = true;
            continue;
        }
        if (!expect_term) lx.fail("expected '+' or '-' between terms");
        // one term: optional coefficient, then *-separated variable powers
        Scalar coef = Scalar::one(R.field);
        Monomial mono = Monomial::unit(R.nvars());
        bool saw_factor = false;
        bool want_factor = true;
        while (want_factor) {
            char f = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(f))) {
                std::string num = lx.integer();
                std::string den;
                if (lx.peek() == '/') {
                    ++lx.i;
                    den = lx.integer();
                    if (mpz_class(den) == 0) lx.fail("zero denominator");
                }
                if (R.field.is_rational()) {
                    mpq_class q(num + (den.empty() ? "" : "/" + den));
                    q.canonicalize();
                    coef = coef * Scalar::rational(q);
                } else {
                    mpz_class n(num);
                    mpz_class v = n % R.field.p;
                    Scalar s = Scalar::residue(R.field.p, v.get_ui());
                    if (!den.empty()) {
                        mpz_class d(den);
                        mpz_class dv = d % R.field.p;
                        if (dv == 0) lx.fail("denominator vanishes in the coefficient field");
                        s = s / Scalar::residue(R.field.p, dv.get_ui());
                    }
                    coef = coef * s;
                }
                saw_factor = true;
            } else if (std::isalpha(static_cast<unsigned char>(f)) || f == '_') {
                std::string name = lx.ident();
                int vi = R.var_index(name);
                if (vi < 0) lx.fail("unknown variable '" + name + "'");
                uint32_t exp = 1;
                if (lx.peek() == '^') {
                    ++lx.i;
                    unsigned long raw = std::stoul(lx.integer());
                    if (raw > 1000000) lx.fail("exponent out of range");
                    exp = static_cast<uint32_t>(raw);
                }
                mono.e[static_cast<size_t>(vi)] += exp;
                saw_factor = true;
            } else {
                lx.fail("expected a coefficient or variable");
            }
            if (lx.peek() == '*') {
                ++lx.i;
                want_factor = true;
            } else {
                want_factor = false;
            }
        }
        if (!saw_factor) lx.fail("empty term");
        terms.push_back({std::move(mono), sign * coef});
        sign = Scalar::one(R.field);
        expect_term = false;
    }
    if (expect_term && !terms.empty()) lx.fail("dangling sign");
    return Polynomial::from_terms(R, std::move(terms));
}

}  // namespace modcrit
