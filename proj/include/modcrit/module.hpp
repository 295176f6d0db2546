#ifndef MODCRIT_MODULE_HPP
#define MODCRIT_MODULE_HPP

#include "modcrit/ring.hpp"

namespace modcrit {

/// Finitely presented module coker(A : R^s -> R^t); columns of A are the
/// relation vectors.  Presentations are never compared directly, only through
/// invariants (Fitting ideals, annihilators, zero-ness).
struct ModulePresentation {
    std::string label;
    size_t rank = 0;
    std::vector<VecPoly> relations;

    static ModulePresentation free_module(size_t rank, std::string label = "") {
        return {std::move(label), rank, {}};
    }
    /// R/J for the ideal generated by gens.
    static ModulePresentation cyclic(const RingCtx& R, const std::vector<Polynomial>& gens,
                                     std::string label = "");
};

/// Map between presented modules, given by its matrix columns (image of each
/// source unit vector, as a vector in the target ambient).
struct ModuleMap {
    ModulePresentation source, target;
    std::vector<VecPoly> matrix;
};

/// A submodule of some ambient presentation, via generators plus an abstract
/// presentation of the submodule itself.
struct PresentedSubmodule {
    ModulePresentation pres;
    std::vector<VecPoly> embedding;  // generators inside the host ambient R^t
};

/// I-padding: g * e_j for every defining relation g, so that submodule
/// computations over the quotient ring happen in the polynomial ring.
std::vector<VecPoly> ipad(const RingCtx& R, size_t rank);

const GroebnerBasis relation_gb(const RingCtx& R, const ModulePresentation& M);
bool module_is_zero(const RingCtx& R, const ModulePresentation& M);
VecPoly reduce_vec(const RingCtx& R, const VecPoly& v);
ModulePresentation reduce_presentation(const RingCtx& R, ModulePresentation M);

/// Generators of {u in R^n : sum u_i v_i = 0 over the quotient ring}.
std::vector<VecPoly> syzygies_of(const RingCtx& R, size_t rank, const std::vector<VecPoly>& vectors);

/// Generators of span(U) ∩ span(V) inside R^rank (both spans taken over the
/// quotient ring).
std::vector<VecPoly> intersect_submodules(const RingCtx& R, size_t rank,
                                          const std::vector<VecPoly>& U,
                                          const std::vector<VecPoly>& V);

ModulePresentation direct_sum(const RingCtx& R, const ModulePresentation& a,
                              const ModulePresentation& b);
ModulePresentation tensor(const RingCtx& R, const ModulePresentation& a,
                          const ModulePresentation& b);
/// Presents the ideal as a module on its generators; e_i corresponds to gens[i].
ModulePresentation ideal_as_module(const RingCtx& R, const IdealHandle& J,
                                   std::string label = "");

bool map_compatible(const RingCtx& R, const ModuleMap& f);
PresentedSubmodule kernel_of_map(const RingCtx& R, const ModuleMap& f);
/// Hom(M, R) as a submodule of R^t (kernel of the transposed relation map).
PresentedSubmodule hom_to_ring(const RingCtx& R, const ModulePresentation& M);
/// Kernel of the canonical map M -> Hom(Hom(M,R),R); over a domain this is
/// exactly the torsion submodule.
PresentedSubmodule double_dual_kernel(const RingCtx& R, const ModulePresentation& M);

/// Presentation of the submodule of M generated by the given ambient vectors.
ModulePresentation present_submodule(const RingCtx& R, const ModulePresentation& host,
                                     const std::vector<VecPoly>& gens);
ModulePresentation quotient_presentation(const RingCtx& R, const ModulePresentation& M,
                                         const std::vector<VecPoly>& extra);

/// Tor_1(N, M) from a two-step free resolution of N obtained by syzygies.
ModulePresentation tor1(const RingCtx& R, const ModulePresentation& N,
                        const ModulePresentation& M);

IdealHandle fitting_ideal(const RingCtx& R, const ModulePresentation& M, size_t j);

struct FlatScan {
    bool flat = false;
    size_t rank = 0;              // constant rank when flat
    size_t first_nonunit_level = 0;  // minor size k where Fitt_{t-k} stopped being R
};
/// Scans minor ideals by ascending size; flat iff the first non-unit level is
/// the zero ideal.
FlatScan fitting_flat_scan(const RingCtx& R, const ModulePresentation& M);

IdealHandle annihilator(const RingCtx& R, const ModulePresentation& M);
/// (0 :_M J) as a presented submodule of M.
PresentedSubmodule colon_submodule(const RingCtx& R, const ModulePresentation& M,
                                   const IdealHandle& J);

/// P ∈ Ass M iff ann(0 :_M P) ⊆ P (P assumed prime).
bool ass_membership(const RingCtx& R, const IdealHandle& P, const ModulePresentation& M);

struct TorsionAnalysis {
    bool applicable = false;
    std::string failure;
    bool torsion_free = false;
    std::vector<VecPoly> torsion_gens;  // generators of T(M) in R^t
    ModulePresentation torsion_module;  // presentation of T(M)
};

/// Exact torsion submodule over a reduced fixture with a complete declared
/// minimal-prime list, via the residue-domain double-dual kernels.
TorsionAnalysis torsion_analysis(const RingFixture& F, const ModulePresentation& M);

/// Membership-form torsion-freeness (general rings): every candidate prime
/// associated to M must be contained in a declared associated prime of R.
/// When `localize_at` is set, both sides are filtered to primes contained in it.
struct TfMembershipRow {
    std::string candidate;
    bool in_ass_m = false;
    bool contained_in_ass_r = false;  // meaningful when in_ass_m
};
struct TfMembershipReport {
    bool torsion_free = true;
    std::vector<TfMembershipRow> rows;
};
TfMembershipReport torsion_free_via_ass(const RingFixture& F, const ModulePresentation& M,
                                        const std::vector<const PrimeDecl*>& candidates,
                                        const PrimeDecl* localize_at = nullptr);

}  // namespace modcrit

#endif
