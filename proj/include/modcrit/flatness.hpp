#ifndef MODCRIT_FLATNESS_HPP
#define MODCRIT_FLATNESS_HPP

#include "modcrit/module.hpp"

namespace modcrit {

enum class FlatVerdict { Flat, NotFlat, Inapplicable };

std::string to_string(FlatVerdict v);

struct OracleResult {
    FlatVerdict verdict = FlatVerdict::Inapplicable;
    size_t rank = 0;   // constant rank when flat
    size_t level = 0;  // first non-unit minor level
};

/// Independent ground truth: finitely presented flat = projective = locally
/// free of constant rank over a connected ring, detected through the Fitting
/// ideal jump R -> (0).  Inapplicable on disconnected fixtures.
OracleResult is_flat_oracle(const RingFixture& F, const ModulePresentation& M);

enum class CritStatus { True, False, HypothesisViolation };

std::string to_string(CritStatus s);

struct CriterionResult {
    CritStatus status = CritStatus::HypothesisViolation;
    std::string detail;
};

/// Mode 'd': P ⊗ M torsion-free.  Mode 'e': Tor_1(R/P, M) torsion-free.
/// Requires a reduced fixture; exact torsion computation.
CriterionResult flat_criterion(const RingFixture& F, const ModulePresentation& M,
                               const PrimeDecl& P, char mode);

struct LocalCriterionResult {
    CritStatus status = CritStatus::HypothesisViolation;  // True = M_m free
    bool fitting_crosscheck = false;                      // localized Fitting verdict
    std::string detail;
};

/// Mode 'e': Tor_1(R/m, M) torsion-free (exact).  Mode 'd': m ⊗ M torsion-free
/// interpreted over the localization at m (membership filtering over the
/// declared candidates).  Both verdicts read "M_m free".
LocalCriterionResult local_flat_criterion(const RingFixture& F, const ModulePresentation& M,
                                          const PrimeDecl& m, char mode,
                                          const std::vector<const PrimeDecl*>& candidates);

/// Localized Fitting freeness test: first minor level contained in m must
/// localize to zero at m.
bool locally_free_at(const RingFixture& F, const PrimeDecl& m, const ModulePresentation& M);

struct AssTransportRow {
    std::string prime;
    bool in_ass_l = false;
    bool in_ass_lm = false;  // Ass(L ⊗ M)
};

struct AssTransportReport {
    std::vector<AssTransportRow> rows;
    bool containment = true;  // Ass(L⊗M) ⊆ Ass L over candidates
    bool transport_identity = true;     // Ass(L⊗M) = ∪_{P∈Ass L} Ass(M/PM) over candidates
    std::vector<std::string> transport_identity_detail;
};

AssTransportReport ass_transport_check(const RingFixture& F, const ModulePresentation& L,
                                       const ModulePresentation& M,
                                       const std::vector<const PrimeDecl*>& candidates);

struct FaithfulRow {
    std::string max_label;
    bool equality = false;  // Ass(R/m ⊗ M) = {m} over candidates
};

struct FaithfulResult {
    FlatVerdict oracle = FlatVerdict::Inapplicable;
    bool ann_zero = false;
    bool faithful = false;
    std::vector<FaithfulRow> simple_rows;
};

FaithfulResult is_faithfully_flat(const RingFixture& F, const ModulePresentation& M,
                                  const std::vector<const PrimeDecl*>& candidates);

/// The non-reduced failure mechanism over a fixture with nilpotents: the map
/// J ⊗ M -> M induced by inclusion is zero while J ⊗ M is nonzero, the oracle
/// says not flat, and the membership torsion rows all pass vacuously.
struct NonreducedDemo {
    bool applicable = false;
    std::string failure;
    bool map_is_zero = false;
    bool tensor_nonzero = false;
    OracleResult oracle;
    bool membership_rows_vacuous = false;
};

NonreducedDemo nonreduced_demo(const RingFixture& F, const IdealHandle& J,
                               const ModulePresentation& M,
                               const std::vector<const PrimeDecl*>& candidates);

}  // namespace modcrit

#endif
