#ifndef MODCRIT_GROEBNER_HPP
#define MODCRIT_GROEBNER_HPP

#include <vector>

#include "modcrit/vecpoly.hpp"

namespace modcrit {

/// Reduced canonical Groebner basis of a submodule of R^rank: monic leads,
/// minimal, fully tail-reduced, sorted descending by leading term.  Unique for
/// a given submodule and order, hence usable as an equality certificate.
struct GroebnerBasis {
    size_t rank = 0;
    std::vector<VecPoly> elems;

    bool is_zero_module() const { return elems.empty(); }
};

/// Remainder of f under the deterministic division algorithm: divisors tried
/// in listed order, every term reduced.  normal_form(f, G) == 0 iff f lies in
/// the submodule generated by G when G is a Groebner basis.
VecPoly normal_form(const PolyRing& R, const ModuleOrder& ord, const VecPoly& f,
                    const std::vector<VecPoly>& basis);

struct DivisionResult {
    VecPoly remainder;
    std::vector<Polynomial> quotients;  // one per divisor, f = sum q_i g_i + remainder
};

DivisionResult divide(const PolyRing& R, const ModuleOrder& ord, const VecPoly& f,
                      const std::vector<VecPoly>& divisors);

/// Buchberger with the classical pair criteria.  The coprime-lead (product)
/// criterion is only sound for ideals and is applied just when rank == 1.
GroebnerBasis buchberger(const PolyRing& R, const ModuleOrder& ord, size_t rank,
                         std::vector<VecPoly> gens);

/// Groebner data for the submodule generated by `gens` of R^rank, augmented by
/// the coordinate components that track expressions over the generators.  One
/// computation yields both membership-with-cofactors and a generating set of
/// the syzygy module.
class AugmentedBasis {
public:
    AugmentedBasis(const PolyRing& R, const ModuleOrder& ord, size_t rank,
                   const std::vector<VecPoly>& gens);

    /// Generators of {u : sum u_i gens_i = 0}, as vectors in R^ngens.
    const std::vector<VecPoly>& syzygies() const { return syzygies_; }

    struct Membership {
        bool member = false;
        std::vector<Polynomial> cofactors;  // over the original generators
        VecPoly remainder;                  // in R^rank
    };
    /// Expresses f over the generators when possible (remainder zero).
    Membership express(const VecPoly& f) const;

private:
    const PolyRing& ring_;
    ModuleOrder ord_;
    size_t rank_, ngens_;
    GroebnerBasis aug_;  // over R^(rank + ngens)
    std::vector<VecPoly> syzygies_;
};

/// Convenience rank-1 wrappers for ideal work.
GroebnerBasis buchberger_ideal(const PolyRing& R, std::vector<Polynomial> gens);
Polynomial normal_form_ideal(const PolyRing& R, const Polynomial& f, const GroebnerBasis& gb);
bool ideal_member(const PolyRing& R, const Polynomial& f, const GroebnerBasis& gb);

inline VecPoly wrap1(Polynomial p) { return VecPoly{{std::move(p)}}; }

}  // namespace modcrit

#endif
