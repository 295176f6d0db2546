#include "modcrit/flatness.hpp"

#include <algorithm>
#include <set>

namespace modcrit {

std::string to_string(FlatVerdict v) {
    switch (v) {
        case FlatVerdict::Flat: return "flat";
        case FlatVerdict::NotFlat: return "not_flat";
        case FlatVerdict::Inapplicable: return "inapplicable";
    }
    return "?";
}

std::string to_string(CritStatus s) {
    switch (s) {
        case CritStatus::True: return "true";
        case CritStatus::False: return "false";
        case CritStatus::HypothesisViolation: return "hypothesis_violation";
    }
    return "?";
}

OracleResult is_flat_oracle(const RingFixture& F, const ModulePresentation& M) {
    OracleResult out;
    if (!F.flags.connected) return out;  // needs no nontrivial idempotents
    FlatScan scan = fitting_flat_scan(F.ctx, reduce_presentation(F.ctx, M));
    out.verdict = scan.flat ? FlatVerdict::Flat : FlatVerdict::NotFlat;
    out.rank = scan.rank;
    out.level = scan.first_nonunit_level;
    return out;
}

CriterionResult flat_criterion(const RingFixture& F, const ModulePresentation& M,
                               const PrimeDecl& P, char mode) {
    CriterionResult out;
    if (!F.flags.reduced) {
        out.detail = "fixture not reduced";
        return out;
    }
    ModulePresentation probe;
    if (mode == 'd') {
        probe = tensor(F.ctx, ideal_as_module(F.ctx, P.ideal), M);
    } else {
        probe = tor1(F.ctx, ModulePresentation::cyclic(F.ctx, P.ideal.gens()), M);
    }
    TorsionAnalysis ta = torsion_analysis(F, probe);
    if (!ta.applicable) {
        out.detail = ta.failure;
        return out;
    }
    out.status = ta.torsion_free ? CritStatus::True : CritStatus::False;
    if (!ta.torsion_free && !ta.torsion_gens.empty())
        out.detail = "torsion witness " + to_string(F.ring(), ta.torsion_gens.front());
    return out;
}

bool locally_free_at(const RingFixture& F, const PrimeDecl& m, const ModulePresentation& M) {
    const RingCtx& R = F.ctx;
    size_t t = M.rank, s = M.relations.size();
    size_t kmax = std::min(t, s);
    for (size_t k = 1; k <= kmax + 1; ++k) {
        if (k > kmax) return true;  // no minors of this size: the level is (0)
        IdealHandle level = fitting_ideal(R, M, t - k);
        bool inside = true;
        for (auto& g : level.gens())
            if (!m.ideal.contains(R, g)) {
                inside = false;
                break;
            }
        if (!inside) continue;
        // level k is the first contained in m; M_m is free iff it localizes to 0
        IdealHandle zero;
        IdealHandle ann = ideal_quotient(R, zero, level);
        for (auto& g : ann.gens())
            if (!m.ideal.contains(R, g)) return true;
        return ann.is_unit_ideal(R);
    }
    return true;
}

LocalCriterionResult local_flat_criterion(const RingFixture& F, const ModulePresentation& M,
                                          const PrimeDecl& m, char mode,
                                          const std::vector<const PrimeDecl*>& candidates) {
    LocalCriterionResult out;
    if (!F.flags.reduced) {
        out.detail = "fixture not reduced";
        return out;
    }
    if (!m.maximal) {
        out.detail = m.label + " is not declared maximal";
        return out;
    }
    out.fitting_crosscheck = locally_free_at(F, m, M);
    if (mode == 'e') {
        ModulePresentation T = tor1(F.ctx, ModulePresentation::cyclic(F.ctx, m.ideal.gens()), M);
        TorsionAnalysis ta = torsion_analysis(F, T);
        if (!ta.applicable) {
            out.detail = ta.failure;
            return out;
        }
        out.status = ta.torsion_free ? CritStatus::True : CritStatus::False;
    } else {
        ModulePresentation T = tensor(F.ctx, ideal_as_module(F.ctx, m.ideal), M);
        TfMembershipReport rep = torsion_free_via_ass(F, T, candidates, &m);
        out.status = rep.torsion_free ? CritStatus::True : CritStatus::False;
        out.detail = "membership route over declared candidates, localized at " + m.label;
    }
    return out;
}

AssTransportReport ass_transport_check(const RingFixture& F, const ModulePresentation& L,
                                       const ModulePresentation& M,
                                       const std::vector<const PrimeDecl*>& candidates) {
    const RingCtx& R = F.ctx;
    AssTransportReport rep;
    ModulePresentation LM = tensor(R, L, M);
    std::set<std::string> ass_lm, union_rhs;
    for (auto* P : candidates) {
        AssTransportRow row;
        row.prime = P->label;
        row.in_ass_l = ass_membership(R, P->ideal, L);
        row.in_ass_lm = ass_membership(R, P->ideal, LM);
        if (row.in_ass_lm) {
            ass_lm.insert(P->label);
            if (!row.in_ass_l) rep.containment = false;
        }
        rep.rows.push_back(row);
    }
    for (auto* P : candidates) {
        bool in_l = false;
        for (auto& r : rep.rows)
            if (r.prime == P->label) in_l = r.in_ass_l;
        if (!in_l) continue;
        std::vector<VecPoly> extra;
        for (auto& g : P->ideal.gens())
            for (size_t j = 0; j < M.rank; ++j) {
                VecPoly v = VecPoly::zero(M.rank);
                v.c[j] = g;
                extra.push_back(std::move(v));
            }
        ModulePresentation MPM = quotient_presentation(R, M, extra);
        for (auto* Q : candidates)
            if (ass_membership(R, Q->ideal, MPM)) {
                union_rhs.insert(Q->label);
                rep.transport_identity_detail.push_back("Ass(M/" + P->label + "M) contains " + Q->label);
            }
    }
    rep.transport_identity = ass_lm == union_rhs;
    return rep;
}

FaithfulResult is_faithfully_flat(const RingFixture& F, const ModulePresentation& M,
                                  const std::vector<const PrimeDecl*>& candidates) {
    const RingCtx& R = F.ctx;
    FaithfulResult out;
    OracleResult oracle = is_flat_oracle(F, M);
    out.oracle = oracle.verdict;
    out.ann_zero = annihilator(R, M).is_zero_ideal(R);
    out.faithful = oracle.verdict == FlatVerdict::Flat && out.ann_zero;
    for (auto* m : F.max_ideals()) {
        std::vector<VecPoly> extra;
        for (auto& g : m->ideal.gens())
            for (size_t j = 0; j < M.rank; ++j) {
                VecPoly v = VecPoly::zero(M.rank);
                v.c[j] = g;
                extra.push_back(std::move(v));
            }
        ModulePresentation MmM = quotient_presentation(R, M, extra);
        bool ok = true;
        for (auto* Q : candidates) {
            bool member = ass_membership(R, Q->ideal, MmM);
            bool expect = ideal_equal(R, Q->ideal, m->ideal);
            if (member != expect) ok = false;
        }
        out.simple_rows.push_back({m->label, ok});
    }
    return out;
}

NonreducedDemo nonreduced_demo(const RingFixture& F, const IdealHandle& J,
                               const ModulePresentation& M,
                               const std::vector<const PrimeDecl*>& candidates) {
    const RingCtx& R = F.ctx;
    NonreducedDemo out;
    if (F.flags.reduced) {
        out.failure = "fixture is reduced; the mechanism needs nilpotents";
        return out;
    }
    out.applicable = true;
    ModulePresentation JM = ideal_as_module(R, J);
    ModulePresentation TM = tensor(R, JM, M);
    out.tensor_nonzero = !module_is_zero(R, TM);

    // induced map J ⊗ M -> M sends e_i ⊗ e_a to g_i * e_a
    GroebnerBasis mgb = relation_gb(R, M);
    out.map_is_zero = true;
    for (auto& g : J.gens())
        for (size_t a = 0; a < M.rank; ++a) {
            VecPoly v = VecPoly::zero(M.rank);
            v.c[a] = g;
            if (!normal_form(R.ring, R.mod_order(), v, mgb.elems).is_zero())
                out.map_is_zero = false;
        }

    out.oracle = is_flat_oracle(F, M);

    out.membership_rows_vacuous = true;
    for (auto* P : candidates) {
        ModulePresentation PM = tensor(R, ideal_as_module(R, P->ideal), M);
        ModulePresentation T1 = tor1(R, ModulePresentation::cyclic(R, P->ideal.gens()), M);
        for (auto* probe : {&PM, &T1}) {
            TfMembershipReport rep = torsion_free_via_ass(F, *probe, candidates);
            if (!rep.torsion_free) out.membership_rows_vacuous = false;
        }
    }
    return out;
}

}  // namespace modcrit
