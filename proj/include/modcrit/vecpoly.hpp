#ifndef MODCRIT_VECPOLY_HPP
#define MODCRIT_VECPOLY_HPP

#include <optional>
#include <vector>

#include "modcrit/polynomial.hpp"

namespace modcrit {

/// Element of a free module R^rank; one polynomial per component.
struct VecPoly {
    std::vector<Polynomial> c;

    static VecPoly zero(size_t rank) { return VecPoly{std::vector<Polynomial>(rank)}; }
    static VecPoly unit(const PolyRing& R, size_t rank, size_t i) {
        VecPoly v = zero(rank);
        v.c[i] = Polynomial::one(R);
        return v;
    }

    size_t rank() const { return c.size(); }
    bool is_zero() const {
        for (auto& p : c)
            if (!p.is_zero()) return false;
        return true;
    }
    bool operator==(const VecPoly& o) const { return c == o.c; }
    bool operator!=(const VecPoly& o) const { return !(*this == o); }
};

/// Module order.  Components below pot_limit are position-over-term (lower
/// index dominates) and dominate everything above; components at or above
/// pot_limit are compared term-over-position.  The default is pure
/// position-over-term.  When elim_vars > 0 the grevlex degree on the first
/// elim_vars variables dominates even the component, giving a
/// variable-elimination order on modules.
struct ModuleOrder {
    MonomialOrder mono;
    size_t elim_vars = 0;
    size_t pot_limit = SIZE_MAX;
};

/// Compares module terms (component, monomial).
int cmp_module(const ModuleOrder& ord, size_t ca, const Monomial& ma, size_t cb, const Monomial& mb);

struct ModTerm {
    size_t comp;
    Monomial m;
    Scalar c;
};

/// Leading module term, or nullopt for zero.
std::optional<ModTerm> leading(const PolyRing& R, const ModuleOrder& ord, const VecPoly& v);

VecPoly vadd(const PolyRing& R, const VecPoly& a, const VecPoly& b);
VecPoly vsub(const PolyRing& R, const VecPoly& a, const VecPoly& b);
VecPoly vneg(const VecPoly& a);
VecPoly vmul_term(const PolyRing& R, const VecPoly& a, const Monomial& m, const Scalar& c);
VecPoly vmul(const PolyRing& R, const VecPoly& a, const Polynomial& f);
VecPoly vmonic(const PolyRing& R, const ModuleOrder& ord, const VecPoly& a);

std::string to_string(const PolyRing& R, const VecPoly& v);

}  // namespace modcrit

#endif
