#include "modcrit/module.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace modcrit {

ModulePresentation ModulePresentation::cyclic(const RingCtx& R,
                                              const std::vector<Polynomial>& gens,
                                              std::string label) {
    ModulePresentation M;
    M.label = std::move(label);
    M.rank = 1;
    for (auto& g : gens) {
        Polynomial r = R.reduce(g);
        if (!r.is_zero()) M.relations.push_back(wrap1(r));
    }
    return M;
}

std::vector<VecPoly> ipad(const RingCtx& R, size_t rank) {
    std::vector<VecPoly> out;
    for (auto& g : R.ideal)
        for (size_t j = 0; j < rank; ++j) {
            VecPoly v = VecPoly::zero(rank);
            v.c[j] = g;
            out.push_back(std::move(v));
        }
    return out;
}

const GroebnerBasis relation_gb(const RingCtx& R, const ModulePresentation& M) {
    std::vector<VecPoly> gens = M.relations;
    auto pad = ipad(R, M.rank);
    gens.insert(gens.end(), pad.begin(), pad.end());
    return GroebnerCache::instance().module_gb(R.ring, R.mod_order(), M.rank, gens);
}

bool module_is_zero(const RingCtx& R, const ModulePresentation& M) {
    if (M.rank == 0) return true;
    GroebnerBasis gb = relation_gb(R, M);
    for (size_t j = 0; j < M.rank; ++j) {
        VecPoly e = VecPoly::unit(R.ring, M.rank, j);
        if (!normal_form(R.ring, R.mod_order(), e, gb.elems).is_zero()) return false;
    }
    return true;
}

VecPoly reduce_vec(const RingCtx& R, const VecPoly& v) {
    VecPoly out = v;
    for (auto& p : out.c) p = R.reduce(p);
    return out;
}

ModulePresentation reduce_presentation(const RingCtx& R, ModulePresentation M) {
    std::vector<VecPoly> kept;
    for (auto& col : M.relations) {
        VecPoly r = reduce_vec(R, col);
        if (!r.is_zero()) kept.push_back(std::move(r));
    }
    M.relations = std::move(kept);
    return M;
}

std::vector<VecPoly> syzygies_of(const RingCtx& R, size_t rank,
                                 const std::vector<VecPoly>& vectors) {
    std::vector<VecPoly> all = vectors;
    auto pad = ipad(R, rank);
    all.insert(all.end(), pad.begin(), pad.end());
    AugmentedBasis aug(R.ring, R.mod_order(), rank, all);
    std::vector<VecPoly> out;
    for (auto& s : aug.syzygies()) {
        VecPoly v = VecPoly::zero(vectors.size());
        bool nonzero = false;
        for (size_t i = 0; i < vectors.size(); ++i) {
            v.c[i] = R.reduce(s.c[i]);
            nonzero = nonzero || !v.c[i].is_zero();
        }
        if (nonzero) out.push_back(std::move(v));
    }
    return out;
}

std::vector<VecPoly> intersect_submodules(const RingCtx& R, size_t rank,
                                          const std::vector<VecPoly>& U,
                                          const std::vector<VecPoly>& V) {
    std::vector<VecPoly> up = U, vp = V;
    auto pad = ipad(R, rank);
    up.insert(up.end(), pad.begin(), pad.end());
    vp.insert(vp.end(), pad.begin(), pad.end());
    std::vector<VecPoly> all = up;
    all.insert(all.end(), vp.begin(), vp.end());
    AugmentedBasis aug(R.ring, R.mod_order(), rank, all);
    std::vector<VecPoly> out;
    std::set<std::string> seen;
    for (auto& s : aug.syzygies()) {
        VecPoly x = VecPoly::zero(rank);
        for (size_t i = 0; i < up.size(); ++i) x = vadd(R.ring, x, vmul(R.ring, up[i], s.c[i]));
        x = reduce_vec(R, x);
        if (x.is_zero()) continue;
        std::string key = to_string(R.ring, x);
        if (seen.insert(key).second) out.push_back(std::move(x));
    }
    return out;
}

ModulePresentation direct_sum(const RingCtx& R, const ModulePresentation& a,
                              const ModulePresentation& b) {
    ModulePresentation M;
    M.rank = a.rank + b.rank;
    for (auto& col : a.relations) {
        VecPoly v = VecPoly::zero(M.rank);
        for (size_t i = 0; i < a.rank; ++i) v.c[i] = col.c[i];
        M.relations.push_back(std::move(v));
    }
    for (auto& col : b.relations) {
        VecPoly v = VecPoly::zero(M.rank);
        for (size_t i = 0; i < b.rank; ++i) v.c[a.rank + i] = col.c[i];
        M.relations.push_back(std::move(v));
    }
    return M;
}

ModulePresentation tensor(const RingCtx& R, const ModulePresentation& a,
                          const ModulePresentation& b) {
    ModulePresentation M;
    M.rank = a.rank * b.rank;
    auto flat = [&](size_t i, size_t j) { return i * b.rank + j; };
    for (auto& col : a.relations)  // A ⊗ 1
        for (size_t j = 0; j < b.rank; ++j) {
            VecPoly v = VecPoly::zero(M.rank);
            for (size_t i = 0; i < a.rank; ++i) v.c[flat(i, j)] = col.c[i];
            M.relations.push_back(std::move(v));
        }
    for (auto& col : b.relations)  // 1 ⊗ B
        for (size_t i = 0; i < a.rank; ++i) {
            VecPoly v = VecPoly::zero(M.rank);
            for (size_t j = 0; j < b.rank; ++j) v.c[flat(i, j)] = col.c[j];
            M.relations.push_back(std::move(v));
        }
    return reduce_presentation(R, std::move(M));
}

ModulePresentation ideal_as_module(const RingCtx& R, const IdealHandle& J, std::string label) {
    ModulePresentation M;
    M.label = std::move(label);
    M.rank = J.gens().size();
    std::vector<VecPoly> row;
    for (auto& g : J.gens()) row.push_back(wrap1(g));
    M.relations = syzygies_of(R, 1, row);
    return reduce_presentation(R, std::move(M));
}

bool map_compatible(const RingCtx& R, const ModuleMap& f) {
    if (f.matrix.size() != f.source.rank) return false;
    for (auto& col : f.matrix)
        if (col.rank() != f.target.rank) return false;
    GroebnerBasis gb = relation_gb(R, f.target);
    for (auto& a : f.source.relations) {
        VecPoly img = VecPoly::zero(f.target.rank);
        for (size_t j = 0; j < f.source.rank; ++j)
            img = vadd(R.ring, img, vmul(R.ring, f.matrix[j], a.c[j]));
        if (!normal_form(R.ring, R.mod_order(), img, gb.elems).is_zero()) return false;
    }
    return true;
}

PresentedSubmodule kernel_of_map(const RingCtx& R, const ModuleMap& f) {
    size_t tM = f.source.rank, tN = f.target.rank;
    // preimage of im(target relations) under the matrix
    std::vector<VecPoly> combined = f.matrix;
    combined.insert(combined.end(), f.target.relations.begin(), f.target.relations.end());
    std::vector<VecPoly> syz = syzygies_of(R, tN, combined);
    GroebnerBasis mgb = relation_gb(R, f.source);
    std::vector<VecPoly> gens;
    std::set<std::string> seen;
    for (auto& s : syz) {
        VecPoly u = VecPoly::zero(tM);
        for (size_t j = 0; j < tM; ++j) u.c[j] = s.c[j];
        u = normal_form(R.ring, R.mod_order(), u, mgb.elems);
        if (u.is_zero()) continue;
        std::string key = to_string(R.ring, u);
        if (seen.insert(key).second) gens.push_back(std::move(u));
    }
    PresentedSubmodule out;
    out.embedding = gens;
    out.pres = present_submodule(R, f.source, gens);
    return out;
}

PresentedSubmodule hom_to_ring(const RingCtx& R, const ModulePresentation& M) {
    size_t t = M.rank, s = M.relations.size();
    ModuleMap f;
    f.source = ModulePresentation::free_module(t);
    f.target = ModulePresentation::free_module(s);
    for (size_t j = 0; j < t; ++j) {
        VecPoly col = VecPoly::zero(s);
        for (size_t i = 0; i < s; ++i) col.c[i] = M.relations[i].c[j];  // transpose
        f.matrix.push_back(std::move(col));
    }
    return kernel_of_map(R, f);
}

ModulePresentation present_submodule(const RingCtx& R, const ModulePresentation& host,
                                     const std::vector<VecPoly>& gens) {
    ModulePresentation P;
    P.rank = gens.size();
    if (gens.empty()) return P;
    std::vector<VecPoly> combined = gens;
    combined.insert(combined.end(), host.relations.begin(), host.relations.end());
    for (auto& s : syzygies_of(R, host.rank, combined)) {
        VecPoly v = VecPoly::zero(P.rank);
        bool nonzero = false;
        for (size_t i = 0; i < P.rank; ++i) {
            v.c[i] = s.c[i];
            nonzero = nonzero || !v.c[i].is_zero();
        }
        if (nonzero) P.relations.push_back(std::move(v));
    }
    return reduce_presentation(R, std::move(P));
}

ModulePresentation quotient_presentation(const RingCtx& R, const ModulePresentation& M,
                                         const std::vector<VecPoly>& extra) {
    ModulePresentation Q = M;
    Q.relations.insert(Q.relations.end(), extra.begin(), extra.end());
    return reduce_presentation(R, std::move(Q));
}

PresentedSubmodule double_dual_kernel(const RingCtx& R, const ModulePresentation& M) {
    PresentedSubmodule everything{M, {}};
    for (size_t j = 0; j < M.rank; ++j)
        everything.embedding.push_back(VecPoly::unit(R.ring, M.rank, j));

    PresentedSubmodule mstar = hom_to_ring(R, M);
    size_t m = mstar.embedding.size();
    if (m == 0) return everything;  // M* = 0, so the canonical map is zero
    PresentedSubmodule mdd = hom_to_ring(R, mstar.pres);
    size_t q = mdd.embedding.size();
    if (q == 0) return everything;

    // evaluation functionals: ev_j(phi_i) = (k_i)_j, expressed over the
    // generators of Hom(M*, R)
    std::vector<VecPoly> L = mdd.embedding;
    auto pad = ipad(R, m);
    L.insert(L.end(), pad.begin(), pad.end());
    AugmentedBasis aug(R.ring, R.mod_order(), m, L);
    ModuleMap canonical;
    canonical.source = M;
    canonical.target = mdd.pres;
    for (size_t j = 0; j < M.rank; ++j) {
        VecPoly ev = VecPoly::zero(m);
        for (size_t i = 0; i < m; ++i) ev.c[i] = mstar.embedding[i].c[j];
        auto mem = aug.express(ev);
        if (!mem.member)
            throw std::logic_error("double_dual_kernel: evaluation functional not in Hom(M*,R)");
        VecPoly col = VecPoly::zero(q);
        for (size_t i = 0; i < q; ++i) col.c[i] = R.reduce(mem.cofactors[i]);
        canonical.matrix.push_back(std::move(col));
    }
    return kernel_of_map(R, canonical);
}

ModulePresentation tor1(const RingCtx& R, const ModulePresentation& N,
                        const ModulePresentation& M) {
    size_t tN = N.rank, sN = N.relations.size(), tA = M.rank;
    if (sN == 0 || tA == 0) return ModulePresentation{};  // free N or zero ambient: Tor1 = 0
    std::vector<VecPoly> C = syzygies_of(R, tN, N.relations);

    auto flat = [&](size_t i, size_t a) { return i * tA + a; };
    // Phi = B ⊗ 1 : R^(sN*tA) -> R^(tN*tA)
    std::vector<VecPoly> phi;
    for (size_t j = 0; j < sN; ++j)
        for (size_t a = 0; a < tA; ++a) {
            VecPoly col = VecPoly::zero(tN * tA);
            for (size_t i = 0; i < tN; ++i) col.c[flat(i, a)] = N.relations[j].c[i];
            phi.push_back(std::move(col));
        }
    // block-diagonal copies of A in the target
    std::vector<VecPoly> blockA_target;
    for (size_t i = 0; i < tN; ++i)
        for (auto& acol : M.relations) {
            VecPoly col = VecPoly::zero(tN * tA);
            for (size_t a = 0; a < tA; ++a) col.c[flat(i, a)] = acol.c[a];
            blockA_target.push_back(std::move(col));
        }

    std::vector<VecPoly> combined = phi;
    combined.insert(combined.end(), blockA_target.begin(), blockA_target.end());
    std::vector<VecPoly> syz = syzygies_of(R, tN * tA, combined);
    std::vector<VecPoly> U;
    std::set<std::string> seen;
    for (auto& s : syz) {
        VecPoly u = VecPoly::zero(sN * tA);
        bool nonzero = false;
        for (size_t k = 0; k < sN * tA; ++k) {
            u.c[k] = s.c[k];
            nonzero = nonzero || !u.c[k].is_zero();
        }
        if (!nonzero) continue;
        std::string key = to_string(R.ring, u);
        if (seen.insert(key).second) U.push_back(std::move(u));
    }

    // denominator: im(C ⊗ 1) + block-diagonal A in R^(sN*tA)
    std::vector<VecPoly> denom;
    for (auto& ccol : C)
        for (size_t a = 0; a < tA; ++a) {
            VecPoly col = VecPoly::zero(sN * tA);
            for (size_t j = 0; j < sN; ++j) col.c[flat(j, a)] = ccol.c[j];
            denom.push_back(std::move(col));
        }
    for (size_t j = 0; j < sN; ++j)
        for (auto& acol : M.relations) {
            VecPoly col = VecPoly::zero(sN * tA);
            for (size_t a = 0; a < tA; ++a) col.c[flat(j, a)] = acol.c[a];
            denom.push_back(std::move(col));
        }

    ModulePresentation host;
    host.rank = sN * tA;
    host.relations = denom;
    return present_submodule(R, host, U);
}

namespace {

struct MinorTable {
    const PolyRing& ring;
    std::vector<std::vector<Polynomial>> entry;  // [row][col], reduced mod I
    std::map<std::pair<uint64_t, uint64_t>, Polynomial> memo;

    Polynomial det(uint64_t rows, uint64_t cols) {
        if (rows == 0) return Polynomial::one(ring);
        auto it = memo.find({rows, cols});
        if (it != memo.end()) return it->second;
        // expand along the highest column
        int clast = 63;
        while (!(cols >> clast & 1)) --clast;
        uint64_t cols_rest = cols & ~(1ULL << clast);
        Polynomial acc;
        int sign = 1;
        int rank = __builtin_popcountll(rows);
        int seen = 0;
        for (int r = 0; r < 64; ++r) {
            if (!(rows >> r & 1)) continue;
            ++seen;
            const Polynomial& e = entry[static_cast<size_t>(r)][static_cast<size_t>(clast)];
            if (!e.is_zero()) {
                Polynomial sub = det(rows & ~(1ULL << r), cols_rest);
                Polynomial termv = mul(ring, e, sub);
                // sign (-1)^{position of r within rows + rank-1}
                if (((rank - seen) % 2) == 1) termv = neg(termv);
                acc = add(ring, acc, termv);
            }
            (void)sign;
        }
        memo.emplace(std::make_pair(rows, cols), acc);
        return acc;
    }
};

void subsets_of_size(size_t n, size_t k, uint64_t cur, size_t start, size_t chosen,
                     std::vector<uint64_t>& out) {
    if (chosen == k) {
        out.push_back(cur);
        return;
    }
    for (size_t i = start; i + (k - chosen) <= n; ++i)
        subsets_of_size(n, k, cur | (1ULL << i), i + 1, chosen + 1, out);
}

std::vector<Polynomial> minors_of_size(const RingCtx& R, MinorTable& table, size_t t, size_t s,
                                       size_t k) {
    std::vector<uint64_t> rowsets, colsets;
    subsets_of_size(t, k, 0, 0, 0, rowsets);
    subsets_of_size(s, k, 0, 0, 0, colsets);
    std::vector<Polynomial> out;
    std::set<std::string> seen;
    for (uint64_t rs : rowsets)
        for (uint64_t cs : colsets) {
            Polynomial d = R.reduce(table.det(rs, cs));
            if (d.is_zero()) continue;
            std::string key = to_string(R.ring, d);
            if (seen.insert(key).second) out.push_back(std::move(d));
        }
    return out;
}

MinorTable make_table(const RingCtx& R, const ModulePresentation& M) {
    MinorTable table{R.ring, {}, {}};
    table.entry.assign(M.rank, std::vector<Polynomial>(M.relations.size()));
    for (size_t i = 0; i < M.rank; ++i)
        for (size_t j = 0; j < M.relations.size(); ++j)
            table.entry[i][j] = R.reduce(M.relations[j].c[i]);
    return table;
}

}  // namespace

IdealHandle fitting_ideal(const RingCtx& R, const ModulePresentation& M, size_t j) {
    size_t t = M.rank, s = M.relations.size();
    if (j >= t) return IdealHandle({Polynomial::one(R.ring)});
    size_t k = t - j;
    if (k > s) return IdealHandle(std::vector<Polynomial>{});
    if (t > 62 || s > 62) throw std::logic_error("fitting_ideal: presentation too large");
    MinorTable table = make_table(R, M);
    return IdealHandle::reduced(R, minors_of_size(R, table, t, s, k));
}

FlatScan fitting_flat_scan(const RingCtx& R, const ModulePresentation& M) {
    size_t t = M.rank, s = M.relations.size();
    if (t > 62 || s > 62) throw std::logic_error("fitting_flat_scan: presentation too large");
    MinorTable table = make_table(R, M);
    for (size_t k = 1; k <= s; ++k) {
        std::vector<Polynomial> minors = minors_of_size(R, table, t, s, k);
        if (minors.empty()) return {true, t - k + 1, k};  // level is the zero ideal
        bool unit = false;
        for (auto& d : minors)
            if (d.size() == 1 && d.leading().m.is_unit()) {
                unit = true;
                break;
            }
        if (!unit) unit = IdealHandle::reduced(R, minors).is_unit_ideal(R);
        if (!unit) return {false, 0, k};
    }
    // all minor levels up to s were unit ideals; level s+1 has no minors
    return {true, t - s, s + 1};
}

IdealHandle annihilator(const RingCtx& R, const ModulePresentation& M) {
    if (M.rank == 0) return IdealHandle({Polynomial::one(R.ring)});
    std::optional<IdealHandle> acc;
    for (size_t j = 0; j < M.rank; ++j) {
        std::vector<VecPoly> combined;
        combined.push_back(VecPoly::unit(R.ring, M.rank, j));
        combined.insert(combined.end(), M.relations.begin(), M.relations.end());
        std::vector<Polynomial> colon_gens;
        for (auto& s : syzygies_of(R, M.rank, combined))
            if (!s.c[0].is_zero()) colon_gens.push_back(s.c[0]);
        IdealHandle colj = IdealHandle::reduced(R, std::move(colon_gens));
        acc = acc ? ideal_intersect(R, *acc, colj) : colj;
    }
    return *acc;
}

PresentedSubmodule colon_submodule(const RingCtx& R, const ModulePresentation& M,
                                   const IdealHandle& J) {
    std::vector<Polynomial> gens;
    for (auto& g : J.gens()) {
        Polynomial r = R.reduce(g);
        if (!r.is_zero()) gens.push_back(std::move(r));
    }
    if (gens.empty()) {
        PresentedSubmodule all{M, {}};
        for (size_t j = 0; j < M.rank; ++j)
            all.embedding.push_back(VecPoly::unit(R.ring, M.rank, j));
        return all;  // (0 : (0)) = M
    }
    ModuleMap f;
    f.source = M;
    f.target = ModulePresentation{};
    f.target.rank = M.rank * gens.size();
    for (size_t i = 0; i < gens.size(); ++i)
        for (auto& col : M.relations) {
            VecPoly v = VecPoly::zero(f.target.rank);
            for (size_t a = 0; a < M.rank; ++a) v.c[i * M.rank + a] = col.c[a];
            f.target.relations.push_back(std::move(v));
        }
    for (size_t j = 0; j < M.rank; ++j) {
        VecPoly col = VecPoly::zero(f.target.rank);
        for (size_t i = 0; i < gens.size(); ++i) col.c[i * M.rank + j] = gens[i];
        f.matrix.push_back(std::move(col));
    }
    return kernel_of_map(R, f);
}

bool ass_membership(const RingCtx& R, const IdealHandle& P, const ModulePresentation& M) {
    PresentedSubmodule K = colon_submodule(R, M, P);
    if (module_is_zero(R, K.pres)) return false;  // ann(0) = R is not inside P
    IdealHandle ann = annihilator(R, K.pres);
    for (auto& g : ann.gens())
        if (!P.contains(R, g)) return false;
    return true;
}

TorsionAnalysis torsion_analysis(const RingFixture& F, const ModulePresentation& M) {
    TorsionAnalysis out;
    if (!F.flags.reduced) {
        out.failure = "HYPOTHESIS_VIOLATION: fixture is not reduced";
        return out;
    }
    if (!F.flags.ass_complete) {
        out.failure = "HYPOTHESIS_VIOLATION: minimal prime list not declared complete";
        return out;
    }
    auto mins = F.min_primes();
    if (mins.empty()) {
        out.failure = "HYPOTHESIS_VIOLATION: no declared minimal primes";
        return out;
    }
    const RingCtx& R = F.ctx;
    out.applicable = true;

    std::optional<std::vector<VecPoly>> T;
    for (auto* P : mins) {
        std::vector<Polynomial> pgens;
        for (auto& e : P->ideal.gb(R).elems) pgens.push_back(e.c[0]);
        RingCtx Rq(R.ring, pgens);
        ModulePresentation Mq = reduce_presentation(Rq, M);
        PresentedSubmodule dd = double_dual_kernel(Rq, Mq);
        std::vector<VecPoly> V = dd.embedding;
        for (auto& g : pgens)
            for (size_t j = 0; j < M.rank; ++j) {
                VecPoly v = VecPoly::zero(M.rank);
                v.c[j] = g;
                V.push_back(std::move(v));
            }
        V.insert(V.end(), M.relations.begin(), M.relations.end());
        T = T ? intersect_submodules(R, M.rank, *T, V) : V;
    }

    GroebnerBasis mgb = relation_gb(R, M);
    std::vector<VecPoly> tors;
    std::set<std::string> seen;
    for (auto& v : *T) {
        VecPoly r = normal_form(R.ring, R.mod_order(), v, mgb.elems);
        if (r.is_zero()) continue;
        std::string key = to_string(R.ring, r);
        if (seen.insert(key).second) tors.push_back(std::move(r));
    }
    out.torsion_free = tors.empty();
    out.torsion_gens = tors;
    out.torsion_module = present_submodule(R, M, tors);
    return out;
}

TfMembershipReport torsion_free_via_ass(const RingFixture& F, const ModulePresentation& M,
                                        const std::vector<const PrimeDecl*>& candidates,
                                        const PrimeDecl* localize_at) {
    const RingCtx& R = F.ctx;
    TfMembershipReport rep;
    auto contained = [&](const IdealHandle& a, const IdealHandle& b) {
        for (auto& g : a.gens())
            if (!b.contains(R, g)) return false;
        return true;
    };
    for (auto* cand : candidates) {
        if (localize_at && !contained(cand->ideal, localize_at->ideal)) continue;
        TfMembershipRow row;
        row.candidate = cand->label;
        row.in_ass_m = ass_membership(R, cand->ideal, M);
        if (row.in_ass_m) {
            for (auto* P : F.ass_primes()) {
                if (localize_at && !contained(P->ideal, localize_at->ideal)) continue;
                if (contained(cand->ideal, P->ideal)) {
                    row.contained_in_ass_r = true;
                    break;
                }
            }
            if (!row.contained_in_ass_r) rep.torsion_free = false;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace modcrit
