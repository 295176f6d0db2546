#include "modcrit/vecpoly.hpp"

#include <sstream>

namespace modcrit {

int cmp_module(const ModuleOrder& ord, size_t ca, const Monomial& ma, size_t cb, const Monomial& mb) {
    if (ord.elim_vars > 0) {
        uint64_t da = ma.degree_range(0, ord.elim_vars);
        uint64_t db = mb.degree_range(0, ord.elim_vars);
        if (da != db) return da < db ? -1 : 1;
    }
    bool pa = ca < ord.pot_limit, pb = cb < ord.pot_limit;
    if (pa != pb) return pa ? 1 : -1;  // the position-over-term block dominates
    if (pa) {
        if (ca != cb) return ca < cb ? 1 : -1;  // lower component is greater
        return cmp(ord.mono, ma, mb);
    }
    if (int c = cmp(ord.mono, ma, mb)) return c;  // term-over-position block
    if (ca != cb) return ca < cb ? 1 : -1;
    return 0;
}

std::optional<ModTerm> leading(const PolyRing& R, const ModuleOrder& ord, const VecPoly& v) {
    (void)R;
    // within one component the polynomial's own leading term is module
    // maximal (callers keep the ambient block order aligned with elim_vars),
    // so the module maximum is a maximum over component leads
    std::optional<ModTerm> best;
    for (size_t i = 0; i < v.c.size(); ++i) {
        const Polynomial& p = v.c[i];
        if (p.is_zero()) continue;
        if (ord.elim_vars == 0 && i < ord.pot_limit) {
            // in the position-over-term block the first nonzero component wins
            const Term& t = p.leading();
            return ModTerm{i, t.m, t.c};
        }
        const Term& t = p.leading();
        if (!best || cmp_module(ord, i, t.m, best->comp, best->m) > 0)
            best = ModTerm{i, t.m, t.c};
    }
    return best;
}

VecPoly vadd(const PolyRing& R, const VecPoly& a, const VecPoly& b) {
    VecPoly r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = add(R, r.c[i], b.c[i]);
    return r;
}

VecPoly vsub(const PolyRing& R, const VecPoly& a, const VecPoly& b) {
    VecPoly r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = sub(R, r.c[i], b.c[i]);
    return r;
}

VecPoly vneg(const VecPoly& a) {
    VecPoly r = a;
    for (auto& p : r.c) p = neg(p);
    return r;
}

VecPoly vmul_term(const PolyRing& R, const VecPoly& a, const Monomial& m, const Scalar& c) {
    VecPoly r = a;
    for (auto& p : r.c) p = mul_term(R, p, m, c);
    return r;
}

VecPoly vmul(const PolyRing& R, const VecPoly& a, const Polynomial& f) {
    VecPoly r = a;
    for (auto& p : r.c) p = mul(R, p, f);
    return r;
}

VecPoly vmonic(const PolyRing& R, const ModuleOrder& ord, const VecPoly& a) {
    auto lt = leading(R, ord, a);
    if (!lt || lt->c.is_one()) return a;
    Scalar inv = lt->c.inverse();
    VecPoly r = a;
    for (auto& p : r.c) p = scale(R, p, inv);
    return r;
}

std::string to_string(const PolyRing& R, const VecPoly& v) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < v.c.size(); ++i) {
        if (i) os << ", ";
        os << to_string(R, v.c[i]);
    }
    os << ')';
    return os.str();
}

}  // namespace modcrit
