#ifndef MODCRIT_DIVISIBILITY_HPP
#define MODCRIT_DIVISIBILITY_HPP

#include "modcrit/module.hpp"
#include "modcrit/ring.hpp"

namespace modcrit {

struct WGeneratorRow {
    std::string gen;
    bool injective = false;
    bool surjective = false;
};

/// Per-generator action table for a finitely generated multiplicative set;
/// aggregates are conjunctions since products of injective (surjective) maps
/// stay injective (surjective).
struct DivisibilityVerdict {
    bool rejected = false;   // full-nzd mode: the f.g. test is the dual route
    bool zero_ring = false;  // 0 ∈ W: W^{-1}R = 0, every flag trivially true
    std::vector<WGeneratorRow> rows;
    bool w_torsion_free = true;
    bool w_divisible = true;
    bool bijective = true;
    /// Decided only when M is W-torsion-free (then it coincides with
    /// W-divisibility); the general question has no finite test here.
    Verdict3 h_divisible = Verdict3::Undecidable;
};

DivisibilityVerdict w_predicates(const RingFixture& F, const ModulePresentation& M,
                                 const MultiplicativeSet& W);

struct Lemma42Result {
    enum class Status { Certified, NotApplicable, ZeroRing } status = Status::NotApplicable;
    std::string failing_row;
    /// Per W-generator, the inverse action matrix columns (w * Y = id mod relations).
    std::vector<std::vector<VecPoly>> inverse_actions;
    bool verified = false;  // exact matrix identities checked
};

/// Constructs the module structure over W^{-1}R when every generator acts
/// bijectively, certifying that M -> W^{-1}M is an isomorphism.
Lemma42Result lemma42_check(const RingFixture& F, const ModulePresentation& M,
                            const MultiplicativeSet& W);

struct TransferWitnessRow {
    size_t generator_index;
    VecPoly y;       // x = (wc+r) y in M
    bool verified;   // (wc+r) y - x reduces to zero
};

struct TransferWitness {
    bool applicable = false;
    std::string failure;
    Polynomial w, r, wc_plus_r;
    std::vector<TransferWitnessRow> rows;  // one per ambient generator of M
};

/// Division transfer: for each generator x of M solves x = (wc+r) y, which
/// certifies x/1 = (c/1)(wy/1) in W^{-1}M.
TransferWitness localized_division_witness(const RingFixture& F, const ModulePresentation& M,
                                           const MultiplicativeSet& W, const Polynomial& c,
                                           const SearchBounds& bounds = {});

}  // namespace modcrit

#endif
