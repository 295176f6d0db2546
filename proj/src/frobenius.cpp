#include "modcrit/frobenius.hpp"

#include <algorithm>
#include <set>

namespace modcrit {

EndomorphismSpec frobenius_endo(const RingFixture& F, uint32_t e) {
    EndomorphismSpec endo;
    endo.label = "frobenius^" + std::to_string(e);
    endo.frobenius = true;
    endo.e = e;
    uint64_t q = 1;
    for (uint32_t i = 0; i < e; ++i) q *= F.ring().field.p;
    for (size_t i = 0; i < F.ring().nvars(); ++i) {
        endo.images.push_back(Polynomial::term(F.ring(), Monomial::var(F.ring().nvars(), i,
                                                                       static_cast<uint32_t>(q)),
                                               Scalar::one(F.ring().field)));
    }
    return endo;
}

Polynomial apply_endo(const RingCtx& R, const EndomorphismSpec& endo, const Polynomial& f) {
    return R.reduce(substitute(R.ring, f, R.ring, endo.images));
}

std::vector<Polynomial> endo_power_images(const RingCtx& R, const EndomorphismSpec& endo,
                                          uint32_t e) {
    std::vector<Polynomial> imgs = endo.images;
    for (uint32_t k = 1; k < e; ++k) {
        std::vector<Polynomial> next;
        for (auto& f : imgs) next.push_back(substitute(R.ring, f, R.ring, endo.images));
        imgs = std::move(next);
    }
    for (auto& f : imgs) f = R.reduce(f);
    return imgs;
}

bool endo_well_defined(const RingFixture& F, const EndomorphismSpec& endo) {
    if (endo.images.size() != F.ring().nvars()) return false;
    for (auto& g : F.ctx.ideal)
        if (!F.ctx.is_zero(substitute(F.ring(), g, F.ring(), endo.images))) return false;
    return true;
}

EndoCheckReport endomorphism_check(const RingFixture& F, const EndomorphismSpec& endo,
                                   const PrimeDecl& P, size_t nmax) {
    const RingCtx& R = F.ctx;
    EndoCheckReport out;
    out.well_defined = endo_well_defined(F, endo);
    if (!out.well_defined) return out;

    // preimage by elimination, compared with P both ways
    out.preimage = IdealHandle::reduced(R, contract_ideal(R, R, endo.images, P.ideal.gens()));
    out.fixes_prime = ideal_equal(R, out.preimage, P.ideal);

    // contracting at P: some n <= nmax with phi^n(p) ⊆ p^2 after localization,
    // i.e. (p^2 : f) ⊄ p for every generator image f
    IdealHandle p2 = ideal_product(R, P.ideal, P.ideal);
    std::vector<Polynomial> imgs = endo.images;
    for (size_t n = 1; n <= nmax; ++n) {
        bool all_ok = true;
        for (auto& g : P.ideal.gens()) {
            Polynomial f = R.reduce(substitute(R.ring, g, R.ring, imgs));
            if (f.is_zero()) continue;
            IdealHandle colon = ideal_quotient(R, p2, IdealHandle({f}));
            bool escapes = false;
            for (auto& c : colon.gens())
                if (!P.ideal.contains(R, c)) {
                    escapes = true;
                    break;
                }
            if (!escapes) {
                all_ok = false;
                break;
            }
        }
        if (all_ok) {
            out.contracting_n = static_cast<int>(n);
            out.within_bound = true;
            break;
        }
        std::vector<Polynomial> next;
        for (auto& f : imgs) next.push_back(R.reduce(substitute(R.ring, f, R.ring, endo.images)));
        imgs = std::move(next);
    }

    // sqrt(phi(p)R) = p by two-sided radical membership
    std::vector<Polynomial> phi_p;
    for (auto& g : P.ideal.gens()) {
        Polynomial f = R.reduce(substitute(R.ring, g, R.ring, endo.images));
        if (!f.is_zero()) phi_p.push_back(std::move(f));
    }
    IdealHandle phiP(phi_p);
    bool fwd = true, bwd = true;
    for (auto& f : phiP.gens())
        if (!radical_member(R, f, P.ideal)) fwd = false;
    for (auto& g : P.ideal.gens())
        if (!radical_member(R, g, phiP)) bwd = false;
    out.lcspec_ok = fwd && bwd;
    return out;
}

ModulePresentation frobenius_functor(const RingFixture& F, const EndomorphismSpec& endo,
                                     uint32_t e, const ModulePresentation& M) {
    const RingCtx& R = F.ctx;
    std::vector<Polynomial> imgs = endo_power_images(R, endo, e);
    ModulePresentation out;
    out.label = "F^" + std::to_string(e) + "(" + M.label + ")";
    out.rank = M.rank;
    for (auto& col : M.relations) {
        VecPoly v = VecPoly::zero(M.rank);
        for (size_t i = 0; i < M.rank; ++i)
            v.c[i] = R.reduce(substitute(R.ring, col.c[i], R.ring, imgs));
        if (!v.is_zero()) out.relations.push_back(std::move(v));
    }
    return out;
}

JacobianReport jacobian_oracle(const RingFixture& F) {
    const RingCtx& R = F.ctx;
    JacobianReport out;
    if (!F.flags.equidimensional || F.flags.codim < 0) {
        out.failure = "needs an equidimensional fixture with declared codimension";
        return out;
    }
    out.applicable = true;
    size_t c = static_cast<size_t>(F.flags.codim);
    std::vector<Polynomial> gens;
    if (c == 0) {
        gens.push_back(Polynomial::one(R.ring));
    } else {
        // c x c minors of the Jacobian of the defining relations
        ModulePresentation jac;
        jac.rank = R.ideal.size();
        for (size_t j = 0; j < R.ring.nvars(); ++j) {
            VecPoly col = VecPoly::zero(jac.rank);
            for (size_t i = 0; i < R.ideal.size(); ++i)
                col.c[i] = derivative(R.ring, R.ideal[i], j);
            jac.relations.push_back(std::move(col));
        }
        IdealHandle minors = fitting_ideal(R, jac, jac.rank >= c ? jac.rank - c : 0);
        if (jac.rank < c)
            minors = IdealHandle(std::vector<Polynomial>{});  // fewer relations than the codimension: no minors
        gens = minors.gens();
    }
    out.singular_locus = IdealHandle::reduced(R, std::move(gens));
    out.regular_everywhere = out.singular_locus.is_unit_ideal(R);
    for (auto* m : F.max_ideals()) {
        bool regular = false;
        for (auto& e : out.singular_locus.gb(R).elems)
            if (!m->ideal.contains(R, e.c[0])) {
                regular = true;
                break;
            }
        if (out.regular_everywhere) regular = true;
        out.point_verdicts.push_back({m->label, regular});
    }
    return out;
}

KunzReport kunz_regularity_test(const RingFixture& F, uint32_t e,
                                const std::vector<std::string>& maximal_labels,
                                const EndomorphismSpec* general_endo, size_t nmax) {
    KunzReport out;
    out.e = e;
    if (!F.flags.reduced) {
        out.failure = "HYPOTHESIS_VIOLATION: fixture not reduced";
        return out;
    }
    EndomorphismSpec endo;
    if (general_endo) {
        endo = *general_endo;
        out.general_endo_mode = true;
    } else {
        if (F.ring().field.p == 0) {
            out.failure = "Frobenius mode needs positive characteristic";
            return out;
        }
        endo = frobenius_endo(F, 1);
    }
    if (!endo_well_defined(F, endo)) {
        out.failure = "endomorphism not well defined on the fixture";
        return out;
    }
    out.applicable = true;
    for (auto& label : maximal_labels) {
        const PrimeDecl* m = F.find_prime(label);
        if (!m || !m->maximal) {
            out.failure = "unknown maximal ideal " + label;
            out.applicable = false;
            return out;
        }
        if (out.general_endo_mode) {
            EndoCheckReport chk = endomorphism_check(F, endo, *m, nmax);
            if (!chk.fixes_prime || !chk.within_bound) {
                out.failure = "endomorphism is not locally contracting at " + label;
                out.applicable = false;
                return out;
            }
        }
        ModulePresentation mm = ideal_as_module(F.ctx, m->ideal, label);
        ModulePresentation fm = frobenius_functor(F, endo, e, mm);
        TorsionAnalysis ta = torsion_analysis(F, fm);
        if (!ta.applicable) {
            out.failure = ta.failure;
            out.applicable = false;
            return out;
        }
        out.rows.push_back({label, ta.torsion_free});
    }
    // coverage: every declared maximal ideal containing the singular locus is tested
    JacobianReport jac = jacobian_oracle(F);
    if (jac.applicable) {
        out.covers_singular_locus = true;
        for (auto& [label, regular] : jac.point_verdicts) {
            if (regular) continue;
            if (std::find(maximal_labels.begin(), maximal_labels.end(), label) ==
                maximal_labels.end())
                out.covers_singular_locus = false;
        }
        if (jac.regular_everywhere) out.covers_singular_locus = true;
    }
    bool all_regular = true;
    for (auto& row : out.rows) all_regular = all_regular && row.torsion_free;
    out.whole_ring_regular = out.covers_singular_locus && all_regular;
    return out;
}

PushforwardResult pushforward_eR(const RingFixture& F, uint32_t e, size_t generator_bound) {
    const RingCtx& R = F.ctx;
    PushforwardResult out;
    if (R.ring.field.p == 0) {
        out.failure = "needs positive characteristic";
        return out;
    }
    size_t n = R.ring.nvars();
    uint64_t q = 1;
    for (uint32_t i = 0; i < e; ++i) q *= R.ring.field.p;
    uint64_t count = 1;
    for (size_t i = 0; i < n; ++i) {
        count *= q;
        if (count > generator_bound) {
            out.failure = "size bound exceeded (q^n > " + std::to_string(generator_bound) + ")";
            return out;
        }
    }
    out.applicable = true;

    // doubled ring: fixture variables first (to be eliminated), base copies after
    PolyRing E;
    E.field = R.ring.field;
    E.vars = R.ring.vars;
    for (size_t j = 0; j < n; ++j) E.vars.push_back("@b" + std::to_string(j));
    E.order = MonomialOrder::block(n);
    RingCtx Ectx(E, {});

    auto lift = [&](const Polynomial& f) {
        std::vector<Term> terms;
        for (auto& t : f.terms()) {
            Monomial m = Monomial::unit(2 * n);
            for (size_t i = 0; i < n; ++i) m.e[i] = t.m.e[i];
            terms.push_back({std::move(m), t.c});
        }
        return Polynomial::from_terms(E, std::move(terms));
    };

    // generator monomials x^a, a in [0,q)^n, in deterministic lexicographic order
    std::vector<Monomial> gens_mono;
    std::vector<uint32_t> idx(n, 0);
    while (true) {
        Monomial m = Monomial::unit(n);
        for (size_t i = 0; i < n; ++i) m.e[i] = idx[i];
        gens_mono.push_back(std::move(m));
        size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < q) break;
            idx[pos] = 0;
            if (pos == 0) {
                pos = SIZE_MAX;
                break;
            }
        }
        if (pos == SIZE_MAX || n == 0) break;
        if (gens_mono.size() > generator_bound) break;
    }
    size_t G = gens_mono.size();

    // stage 1: syzygies of [x^a row | defining relations | u_i - x_i^q] over E
    std::vector<VecPoly> row;
    for (auto& m : gens_mono) {
        Monomial lifted = Monomial::unit(2 * n);
        for (size_t i = 0; i < n; ++i) lifted.e[i] = m.e[i];
        row.push_back(wrap1(Polynomial::term(E, lifted, Scalar::one(E.field))));
    }
    for (auto& g : R.ideal) row.push_back(wrap1(lift(g)));
    for (size_t j = 0; j < n; ++j) {
        Polynomial xq = Polynomial::term(
            E, Monomial::var(2 * n, j, static_cast<uint32_t>(q)), Scalar::one(E.field));
        row.push_back(wrap1(sub(E, Polynomial::variable(E, n + j), xq)));
    }
    std::vector<VecPoly> syz = syzygies_of(Ectx, 1, row);

    // stage 2: eliminate the fixture variables from the syzygy coordinates
    std::vector<VecPoly> syz_g;
    for (auto& s : syz) {
        VecPoly v = VecPoly::zero(G);
        bool nonzero = false;
        for (size_t i = 0; i < G; ++i) {
            v.c[i] = s.c[i];
            nonzero = nonzero || !v.c[i].is_zero();
        }
        if (nonzero) syz_g.push_back(std::move(v));
    }
    ModuleOrder elim{E.order, n};
    GroebnerBasis egb = GroebnerCache::instance().module_gb(E, elim, G, syz_g);

    ModulePresentation P;
    P.label = "eR(e=" + std::to_string(e) + ")";
    P.rank = G;
    for (auto& g : egb.elems) {
        bool xfree = true;
        for (auto& comp : g.c)
            for (auto& t : comp.terms())
                for (size_t i = 0; i < n && xfree; ++i)
                    if (t.m.e[i]) xfree = false;
        if (!xfree) continue;
        VecPoly col = VecPoly::zero(G);
        for (size_t i = 0; i < G; ++i) {
            std::vector<Term> terms;
            for (auto& t : g.c[i].terms()) {
                Monomial m = Monomial::unit(n);
                for (size_t j = 0; j < n; ++j) m.e[j] = t.m.e[n + j];
                terms.push_back({std::move(m), t.c});
            }
            col.c[i] = R.reduce(Polynomial::from_terms(R.ring, std::move(terms)));
        }
        if (!col.is_zero()) P.relations.push_back(std::move(col));
    }
    out.module = std::move(P);
    return out;
}

ModulePresentation restrict_scalars(const RingFixture& F, const RingMapDecl& map,
                                    const ModulePresentation& M, RingCtx& base_out) {
    const RingCtx& R = F.ctx;
    size_t nt = R.ring.nvars(), ns = map.base_vars.size(), d = map.basis.size();

    PolyRing base;
    base.field = R.ring.field;
    base.vars = map.base_vars;
    base.order = MonomialOrder::grevlex();
    base_out = RingCtx(base, map.base_relations);

    PolyRing E;
    E.field = R.ring.field;
    E.vars = R.ring.vars;
    for (size_t j = 0; j < ns; ++j) E.vars.push_back("@s" + std::to_string(j));
    E.order = MonomialOrder::block(nt);
    RingCtx Ectx(E, [&] {
        std::vector<Polynomial> D;
        auto lift = [&](const Polynomial& f) {
            std::vector<Term> terms;
            for (auto& t : f.terms()) {
                Monomial m = Monomial::unit(nt + ns);
                for (size_t i = 0; i < nt; ++i) m.e[i] = t.m.e[i];
                terms.push_back({std::move(m), t.c});
            }
            return Polynomial::from_terms(E, std::move(terms));
        };
        for (auto& g : R.ideal) D.push_back(lift(g));
        for (size_t j = 0; j < ns; ++j)
            D.push_back(sub(E, Polynomial::variable(E, nt + j), lift(map.images[j])));
        return D;
    }());

    // coordinates of a fixture element over the declared basis
    auto coords = [&](const Polynomial& f) {
        std::vector<Term> lifted;
        for (auto& t : f.terms()) {
            Monomial m = Monomial::unit(nt + ns);
            for (size_t i = 0; i < nt; ++i) m.e[i] = t.m.e[i];
            lifted.push_back({std::move(m), t.c});
        }
        Polynomial nf = Ectx.reduce(Polynomial::from_terms(E, std::move(lifted)));
        std::vector<Polynomial> out_coords(d);
        for (auto& t : nf.terms()) {
            Monomial xpart = Monomial::unit(nt);
            for (size_t i = 0; i < nt; ++i) xpart.e[i] = t.m.e[i];
            size_t which = d;
            for (size_t b = 0; b < d; ++b)
                if (map.basis[b] == xpart) {
                    which = b;
                    break;
                }
            if (which == d)
                throw std::invalid_argument(
                    "restrict_scalars: normal form leaves the declared basis (monomial " +
                    to_string(R.ring, Polynomial::term(R.ring, xpart, Scalar::one(R.ring.field))) +
                    "); the map is not module-finite on this basis");
            Monomial spart = Monomial::unit(ns);
            for (size_t j = 0; j < ns; ++j) spart.e[j] = t.m.e[nt + j];
            out_coords[which] = add(base, out_coords[which],
                                    Polynomial::term(base, spart, t.c));
        }
        for (auto& c : out_coords) c = base_out.reduce(c);
        return out_coords;
    };

    ModulePresentation out;
    out.label = M.label + "|base";
    out.rank = M.rank * d;
    for (auto& col : M.relations) {
        for (size_t l = 0; l < d; ++l) {
            VecPoly v = VecPoly::zero(out.rank);
            bool nonzero = false;
            for (size_t i = 0; i < M.rank; ++i) {
                Polynomial prod = mul(R.ring, col.c[i],
                                      Polynomial::term(R.ring, map.basis[l],
                                                       Scalar::one(R.ring.field)));
                std::vector<Polynomial> cs = coords(prod);
                for (size_t mth = 0; mth < d; ++mth) {
                    v.c[i * d + mth] = cs[mth];
                    nonzero = nonzero || !cs[mth].is_zero();
                }
            }
            if (nonzero) out.relations.push_back(std::move(v));
        }
    }
    return out;
}

AssContractionReport ass_contraction_check(const RingFixture& F, const RingMapDecl& map,
                                           const ModulePresentation& M,
                                           const std::vector<const PrimeDecl*>& candidates_S) {
    const RingCtx& R = F.ctx;
    AssContractionReport out;
    if (map.basis.empty() || map.images.size() != map.base_vars.size()) {
        out.failure = "map is not declared module-finite (no basis) or images mismatch";
        return out;
    }
    RingCtx base;
    ModulePresentation restricted;
    try {
        restricted = restrict_scalars(F, map, M, base);
    } catch (const std::exception& ex) {
        out.failure = ex.what();
        return out;
    }
    out.applicable = true;

    std::set<std::string> images_of_ass, ass_r_hits;
    for (auto* Q : candidates_S) {
        AssContractionRow row;
        row.prime_s = Q->label;
        row.in_ass_s = ass_membership(R, Q->ideal, M);
        IdealHandle contraction =
            IdealHandle::reduced(base, contract_ideal(base, R, map.images, Q->ideal.gens()));
        std::string key;
        for (auto& e : contraction.gb(base).elems)
            key += to_string(base.ring, e.c[0]) + ";";
        row.contraction = key.empty() ? "(0)" : key;
        row.contraction_in_ass_r = ass_membership(base, contraction, restricted);
        if (row.in_ass_s) images_of_ass.insert(key);
        if (row.contraction_in_ass_r) ass_r_hits.insert(key);
        out.rows.push_back(std::move(row));
    }
    out.image_sets_match = images_of_ass == ass_r_hits;
    return out;
}

}  // namespace modcrit
