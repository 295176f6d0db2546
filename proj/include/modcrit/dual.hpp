#ifndef MODCRIT_DUAL_HPP
#define MODCRIT_DUAL_HPP

#include "modcrit/flatness.hpp"
#include "modcrit/module.hpp"

namespace modcrit {

/// Symbolic Matlis dual Hom_R(L, E) for E the sum of the injective hulls of
/// the residue fields.  E is never materialized; every predicate is a function
/// of the carrier L through the duality dictionary.
struct DualModule {
    ModulePresentation carrier;
};

struct CoassVerdict {
    std::string prime;
    bool member = false;
    std::string route;  // the Ass-side computation used
};

/// Coass(L^dual) = Ass(L).
CoassVerdict coass_membership(const RingFixture& F, const PrimeDecl& P, const DualModule& D);

/// Hom(L', L^dual) = (L' ⊗ L)^dual and Ext^1(L', L^dual) = Tor_1(L', L)^dual.
DualModule hom_into_dual(const RingFixture& F, const ModulePresentation& Lp, const DualModule& D);
DualModule ext1_into_dual(const RingFixture& F, const ModulePresentation& Lp, const DualModule& D);

struct DualPredicates {
    Verdict3 divisible = Verdict3::Undecidable;
    Verdict3 h_divisible = Verdict3::Undecidable;
    Verdict3 torsion_free = Verdict3::Undecidable;
    Verdict3 injective = Verdict3::Undecidable;
    Verdict3 injective_cogenerator = Verdict3::Undecidable;
    std::string divisible_route;
    std::string injective_route;
    std::string torsion_free_route;
};

DualPredicates dual_predicates(const RingFixture& F, const DualModule& D,
                               const std::vector<const PrimeDecl*>& candidates);

/// Finitely generated divisibility test behind torsion_free(L^dual): L = 0, or
/// √ann(L) equals the intersection of the maximal declared associated primes
/// containing ann(L) (affine rings are Jacobson).
Verdict3 is_divisible_fg(const RingFixture& F, const ModulePresentation& L);

struct InjectivityRow {
    std::string tag;  // a, b, d, f, g, i, ii, iii
    Verdict3 verdict = Verdict3::Undecidable;
    std::string detail;
};

struct InjectivityMatrix {
    bool hypothesis_ok = false;
    std::string failure;
    std::vector<InjectivityRow> rows;
    bool injectivity_rows_consistent = false;  // a = b = d = f = g
    bool cogenerator_rows_consistent = false;  // i = ii = iii
};

/// Equivalence matrix of the reduced injectivity criteria for M = L^dual,
/// evaluated over declared candidate primes and test carriers.
InjectivityMatrix injectivity_matrix(const RingFixture& F, const ModulePresentation& L,
                      const std::vector<const PrimeDecl*>& candidates,
                      const std::vector<const ModulePresentation*>& test_carriers);

struct LocalInjVerdict {
    bool injective_at_m = false;   // Tor_1(R/m, L) = 0
    bool crosscheck_ok = false;    // agrees with the local flatness criterion
};

LocalInjVerdict local_injectivity(const RingFixture& F, const PrimeDecl& m,
                            const ModulePresentation& L,
                            const std::vector<const PrimeDecl*>& candidates);

}  // namespace modcrit

#endif
