#include "modcrit/groebner.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace modcrit {

namespace {

struct PairKey {
    uint64_t lcm_deg;
    std::vector<uint32_t> lcm;
    size_t comp, i, j;

    bool operator<(const PairKey& o) const {
        if (lcm_deg != o.lcm_deg) return lcm_deg < o.lcm_deg;
        if (lcm != o.lcm) return lcm < o.lcm;
        if (comp != o.comp) return comp < o.comp;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

struct Worker {
    const PolyRing& R;
    const ModuleOrder& ord;
    size_t rank;
    bool product_criterion;

    std::vector<VecPoly> G;
    std::vector<ModTerm> lt;
    std::set<PairKey> pairs;
    std::set<std::pair<size_t, size_t>> done;

    void make_pair(size_t i, size_t j) {
        if (lt[i].comp != lt[j].comp) return;
        if (product_criterion && gcd(lt[i].m, lt[j].m).is_unit()) {
            done.insert({i, j});
            return;
        }
        Monomial L = lcm(lt[i].m, lt[j].m);
        pairs.insert({L.degree(), L.e, lt[i].comp, i, j});
    }

    void add_element(VecPoly h) {
        size_t idx = G.size();
        G.push_back(std::move(h));
        lt.push_back(*leading(R, ord, G.back()));
        for (size_t k = 0; k < idx; ++k) make_pair(k, idx);
    }

    bool chain_skip(size_t i, size_t j, const Monomial& L) const {
        for (size_t k = 0; k < G.size(); ++k) {
            if (k == i || k == j) continue;
            if (lt[k].comp != lt[i].comp) continue;
            if (!divides(lt[k].m, L)) continue;
            auto key1 = std::minmax(i, k);
            auto key2 = std::minmax(k, j);
            if (done.count({key1.first, key1.second}) && done.count({key2.first, key2.second}))
                return true;
        }
        return false;
    }

    void run(std::vector<VecPoly> gens) {
        for (auto& g : gens) {
            if (g.is_zero()) continue;
            VecPoly r = normal_form(R, ord, g, G);
            if (!r.is_zero()) add_element(vmonic(R, ord, r));
        }
        while (!pairs.empty()) {
            PairKey pk = *pairs.begin();
            pairs.erase(pairs.begin());
            done.insert({pk.i, pk.j});
            Monomial L{std::vector<uint32_t>(pk.lcm)};
            if (chain_skip(pk.i, pk.j, L)) continue;
            // S-vector of two monic elements
            VecPoly s = vsub(R,
                             vmul_term(R, G[pk.i], quotient(L, lt[pk.i].m), Scalar::one(R.field)),
                             vmul_term(R, G[pk.j], quotient(L, lt[pk.j].m), Scalar::one(R.field)));
            VecPoly r = normal_form(R, ord, s, G);
            if (!r.is_zero()) add_element(vmonic(R, ord, r));
        }
        interreduce();
    }

    void interreduce() {
        // drop elements whose lead is divisible by another lead
        std::vector<VecPoly> minimal;
        for (size_t i = 0; i < G.size(); ++i) {
            bool redundant = false;
            for (size_t j = 0; j < G.size(); ++j) {
                if (i == j) continue;
                if (lt[j].comp != lt[i].comp || !divides(lt[j].m, lt[i].m)) continue;
                if (lt[j].m == lt[i].m && j > i) continue;  // keep the first of equal leads
                redundant = true;
                break;
            }
            if (!redundant) minimal.push_back(G[i]);
        }
        G = std::move(minimal);
        // full tail reduction to the canonical reduced basis
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < G.size(); ++i) {
                std::vector<VecPoly> others;
                others.reserve(G.size() - 1);
                for (size_t j = 0; j < G.size(); ++j)
                    if (j != i) others.push_back(G[j]);
                VecPoly r = vmonic(R, ord, normal_form(R, ord, G[i], others));
                if (r != G[i]) {
                    changed = true;
                    if (r.is_zero()) {
                        G.erase(G.begin() + static_cast<long>(i));
                        --i;
                    } else {
                        G[i] = std::move(r);
                    }
                }
            }
        }
        std::sort(G.begin(), G.end(), [&](const VecPoly& a, const VecPoly& b) {
            auto la = leading(R, ord, a), lb = leading(R, ord, b);
            return cmp_module(ord, la->comp, la->m, lb->comp, lb->m) > 0;
        });
    }
};

}  // namespace

namespace {

/// Division work state: components are consumed front-first through offsets,
/// so moving an irreducible leading term to the remainder costs O(1) instead
/// of rebuilding the polynomial.
struct WorkState {
    const PolyRing& R;
    const ModuleOrder& ord;
    std::vector<std::vector<Term>> live;
    std::vector<size_t> off;
    std::vector<std::vector<Term>> rem;

    WorkState(const PolyRing& R, const ModuleOrder& ord, const VecPoly& f)
        : R(R), ord(ord), off(f.rank(), 0), rem(f.rank()) {
        live.reserve(f.rank());
        for (auto& p : f.c) live.push_back(p.terms());
    }

    std::optional<ModTerm> leading() const {
        std::optional<ModTerm> best;
        for (size_t i = 0; i < live.size(); ++i) {
            if (off[i] >= live[i].size()) continue;
            const Term& t = live[i][off[i]];
            if (ord.elim_vars == 0 && i < ord.pot_limit) return ModTerm{i, t.m, t.c};
            if (!best || cmp_module(ord, i, t.m, best->comp, best->m) > 0)
                best = ModTerm{i, t.m, t.c};
        }
        return best;
    }

    void drop_to_remainder(const ModTerm& lt) {
        rem[lt.comp].push_back(live[lt.comp][off[lt.comp]]);
        ++off[lt.comp];
    }

    /// live -= m * c * g, merging per component.
    void reduce_by(const VecPoly& g, const Monomial& m, const Scalar& c) {
        for (size_t i = 0; i < live.size(); ++i) {
            if (g.c[i].is_zero()) continue;
            Polynomial sub_part = mul_term(R, g.c[i], m, c);
            std::vector<Term> suffix(live[i].begin() + static_cast<long>(off[i]), live[i].end());
            Polynomial merged = sub(R, Polynomial::from_terms(R, std::move(suffix)), sub_part);
            live[i] = merged.terms();
            off[i] = 0;
        }
    }

    VecPoly remainder() {
        VecPoly out = VecPoly::zero(live.size());
        for (size_t i = 0; i < live.size(); ++i)
            out.c[i] = Polynomial::from_terms(R, std::move(rem[i]));
        return out;
    }
};

}  // namespace

VecPoly normal_form(const PolyRing& R, const ModuleOrder& ord, const VecPoly& f,
                    const std::vector<VecPoly>& basis) {
    std::vector<std::optional<ModTerm>> lts;
    lts.reserve(basis.size());
    for (auto& g : basis) lts.push_back(leading(R, ord, g));

    WorkState w(R, ord, f);
    while (true) {
        auto lt = w.leading();
        if (!lt) break;
        bool reduced = false;
        for (size_t i = 0; i < basis.size(); ++i) {
            if (!lts[i] || lts[i]->comp != lt->comp || !divides(lts[i]->m, lt->m)) continue;
            w.reduce_by(basis[i], quotient(lt->m, lts[i]->m), lt->c / lts[i]->c);
            reduced = true;
            break;
        }
        if (!reduced) w.drop_to_remainder(*lt);
    }
    return w.remainder();
}

DivisionResult divide(const PolyRing& R, const ModuleOrder& ord, const VecPoly& f,
                      const std::vector<VecPoly>& divisors) {
    std::vector<std::optional<ModTerm>> lts;
    lts.reserve(divisors.size());
    for (auto& g : divisors) lts.push_back(leading(R, ord, g));

    DivisionResult out;
    out.quotients.assign(divisors.size(), Polynomial::zero());
    WorkState w(R, ord, f);
    while (true) {
        auto lt = w.leading();
        if (!lt) break;
        bool reduced = false;
        for (size_t i = 0; i < divisors.size(); ++i) {
            if (!lts[i] || lts[i]->comp != lt->comp || !divides(lts[i]->m, lt->m)) continue;
            Scalar q = lt->c / lts[i]->c;
            Monomial mq = quotient(lt->m, lts[i]->m);
            out.quotients[i] = add(R, out.quotients[i], Polynomial::term(R, mq, q));
            w.reduce_by(divisors[i], mq, q);
            reduced = true;
            break;
        }
        if (!reduced) w.drop_to_remainder(*lt);
    }
    out.remainder = w.remainder();
    return out;
}

GroebnerBasis buchberger(const PolyRing& R, const ModuleOrder& ord, size_t rank,
                         std::vector<VecPoly> gens) {
    Worker w{R, ord, rank, rank == 1, {}, {}, {}, {}};
    w.run(std::move(gens));
    return GroebnerBasis{rank, std::move(w.G)};
}

AugmentedBasis::AugmentedBasis(const PolyRing& R, const ModuleOrder& ord, size_t rank,
                               const std::vector<VecPoly>& gens)
    : ring_(R), ord_(ord), rank_(rank), ngens_(gens.size()) {
    std::vector<VecPoly> aug;
    aug.reserve(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        VecPoly v = VecPoly::zero(rank_ + ngens_);
        for (size_t j = 0; j < rank_; ++j) v.c[j] = gens[i].c[j];
        v.c[rank_ + i] = Polynomial::one(R);
        aug.push_back(std::move(v));
    }
    // the payload block stays position-over-term and dominant, so elements
    // with a zero payload part generate exactly the syzygy module; the
    // tracking block is term-over-position, which keeps its basis small
    ord_.pot_limit = rank_;
    Worker w{R, ord_, rank_ + ngens_, false, {}, {}, {}, {}};
    w.run(std::move(aug));
    aug_ = GroebnerBasis{rank_ + ngens_, std::move(w.G)};
    for (auto& g : aug_.elems) {
        bool upper_zero = true;
        for (size_t j = 0; j < rank_; ++j)
            if (!g.c[j].is_zero()) {
                upper_zero = false;
                break;
            }
        if (!upper_zero) continue;
        VecPoly s = VecPoly::zero(ngens_);
        for (size_t i = 0; i < ngens_; ++i) s.c[i] = g.c[rank_ + i];
        syzygies_.push_back(std::move(s));
    }
}

AugmentedBasis::Membership AugmentedBasis::express(const VecPoly& f) const {
    assert(f.rank() == rank_);
    VecPoly lifted = VecPoly::zero(rank_ + ngens_);
    for (size_t j = 0; j < rank_; ++j) lifted.c[j] = f.c[j];
    VecPoly r = normal_form(ring_, ord_, lifted, aug_.elems);
    Membership out;
    out.member = true;
    out.remainder = VecPoly::zero(rank_);
    for (size_t j = 0; j < rank_; ++j) {
        out.remainder.c[j] = r.c[j];
        if (!r.c[j].is_zero()) out.member = false;
    }
    out.cofactors.reserve(ngens_);
    for (size_t i = 0; i < ngens_; ++i) out.cofactors.push_back(neg(r.c[rank_ + i]));
    return out;
}

GroebnerBasis buchberger_ideal(const PolyRing& R, std::vector<Polynomial> gens) {
    std::vector<VecPoly> v;
    v.reserve(gens.size());
    for (auto& g : gens) v.push_back(wrap1(std::move(g)));
    return buchberger(R, ModuleOrder{R.order, 0}, 1, std::move(v));
}

Polynomial normal_form_ideal(const PolyRing& R, const Polynomial& f, const GroebnerBasis& gb) {
    return normal_form(R, ModuleOrder{R.order, 0}, wrap1(f), gb.elems).c[0];
}

bool ideal_member(const PolyRing& R, const Polynomial& f, const GroebnerBasis& gb) {
    return normal_form_ideal(R, f, gb).is_zero();
}

}  // namespace modcrit
