#ifndef MODCRIT_FROBENIUS_HPP
#define MODCRIT_FROBENIUS_HPP

#include "modcrit/flatness.hpp"
#include "modcrit/module.hpp"

namespace modcrit {

/// Ring endomorphism by variable images; Frobenius mode means x_i -> x_i^q
/// with q = p^e over the prime field.
struct EndomorphismSpec {
    std::string label;
    std::vector<Polynomial> images;
    bool frobenius = false;
    uint32_t e = 1;
};

EndomorphismSpec frobenius_endo(const RingFixture& F, uint32_t e);
bool endo_well_defined(const RingFixture& F, const EndomorphismSpec& endo);
Polynomial apply_endo(const RingCtx& R, const EndomorphismSpec& endo, const Polynomial& f);
/// Images of the e-fold composition.
std::vector<Polynomial> endo_power_images(const RingCtx& R, const EndomorphismSpec& endo,
                                          uint32_t e);

struct EndoCheckReport {
    bool well_defined = false;
    bool fixes_prime = false;
    IdealHandle preimage;
    int contracting_n = -1;  // least n <= nmax with phi^n(p) ⊆ p^2 locally, -1 if none
    bool within_bound = false;
    bool lcspec_ok = false;  // sqrt(phi(p)R) = p
};

EndoCheckReport endomorphism_check(const RingFixture& F, const EndomorphismSpec& endo,
                                   const PrimeDecl& P, size_t nmax = 8);

/// F^e(coker A) = coker(phi^e A), entrywise.
ModulePresentation frobenius_functor(const RingFixture& F, const EndomorphismSpec& endo,
                                     uint32_t e, const ModulePresentation& M);

struct JacobianReport {
    bool applicable = false;
    std::string failure;
    IdealHandle singular_locus;
    bool regular_everywhere = false;
    std::vector<std::pair<std::string, bool>> point_verdicts;  // per declared maximal ideal
};

JacobianReport jacobian_oracle(const RingFixture& F);

struct KunzRow {
    std::string max_label;
    bool torsion_free = false;  // regular at m by the criterion
};

struct KunzReport {
    bool applicable = false;
    std::string failure;
    uint32_t e = 1;
    std::vector<KunzRow> rows;
    bool covers_singular_locus = false;  // tested maxes cover V(I + Jacobian) ∩ declared
    bool whole_ring_regular = false;     // claim made only under coverage
    bool general_endo_mode = false;      // labeled with the locally-contracting hypotheses
};

KunzReport kunz_regularity_test(const RingFixture& F, uint32_t e,
                                const std::vector<std::string>& maximal_labels,
                                const EndomorphismSpec* general_endo = nullptr,
                                size_t nmax = 8);

struct PushforwardResult {
    bool applicable = false;
    std::string failure;
    ModulePresentation module;  // eR as a left module
};

/// Presents eR on the monomial generators x^a, a in [0,q)^n, by module
/// elimination in the doubled polynomial ring.
PushforwardResult pushforward_eR(const RingFixture& F, uint32_t e, size_t generator_bound = 16);

/// Declared module-finite ring map into this fixture: base ring, variable
/// images, and the free-module monomial basis of the fixture over the base.
struct RingMapDecl {
    std::string label;
    std::vector<std::string> base_vars;
    std::vector<Polynomial> base_relations;  // over the base ring
    std::vector<Polynomial> images;          // in the fixture ring
    std::vector<Monomial> basis;             // fixture-ring monomials
};

struct AssContractionRow {
    std::string prime_s;
    bool in_ass_s = false;
    std::string contraction;  // canonical generators over the base
    bool contraction_in_ass_r = false;
};

struct AssContractionReport {
    bool applicable = false;
    std::string failure;
    std::vector<AssContractionRow> rows;
    bool image_sets_match = false;  // f*(Ass_S M) = Ass_R M over the candidates
};

AssContractionReport ass_contraction_check(const RingFixture& F, const RingMapDecl& map,
                                           const ModulePresentation& M,
                                           const std::vector<const PrimeDecl*>& candidates_S);

/// Restriction of scalars along the declared map (fixture free over the base
/// on the declared basis).
ModulePresentation restrict_scalars(const RingFixture& F, const RingMapDecl& map,
                                    const ModulePresentation& M, RingCtx& base_out);

}  // namespace modcrit

#endif
