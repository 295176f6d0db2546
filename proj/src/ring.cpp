#include "modcrit/ring.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace modcrit {

const GroebnerBasis& RingCtx::ideal_gb() const {
    std::lock_guard<std::mutex> lk(memo_->mu);
    if (!memo_->igb) {
        std::vector<VecPoly> gens;
        for (auto& g : ideal) gens.push_back(wrap1(g));
        memo_->igb = GroebnerCache::instance().module_gb(ring, mod_order(), 1, gens);
    }
    return *memo_->igb;
}

Polynomial RingCtx::reduce(const Polynomial& f) const {
    return normal_form_ideal(ring, f, ideal_gb());
}

IdealHandle IdealHandle::reduced(const RingCtx& R, std::vector<Polynomial> gens) {
    for (auto& g : gens) g = R.reduce(g);
    std::vector<Polynomial> kept;
    for (auto& g : gens)
        if (!g.is_zero()) kept.push_back(std::move(g));
    return IdealHandle(std::move(kept));
}

const GroebnerBasis& IdealHandle::gb(const RingCtx& R) const {
    std::lock_guard<std::mutex> lk(memo_->mu);
    if (!memo_->gb) {
        std::vector<VecPoly> all;
        for (auto& g : gens_) all.push_back(wrap1(g));
        for (auto& g : R.ideal) all.push_back(wrap1(g));
        memo_->gb = GroebnerCache::instance().module_gb(R.ring, R.mod_order(), 1, all);
    }
    return *memo_->gb;
}

bool IdealHandle::is_zero_ideal(const RingCtx& R) const {
    return gb(R).elems == R.ideal_gb().elems;
}

bool IdealHandle::is_unit_ideal(const RingCtx& R) const {
    const auto& B = gb(R);
    return B.elems.size() == 1 && B.elems[0].c[0].size() == 1 &&
           B.elems[0].c[0].leading().m.is_unit();
}

bool ideal_equal(const RingCtx& R, const IdealHandle& a, const IdealHandle& b) {
    return a.gb(R).elems == b.gb(R).elems;
}

namespace {

PolyRing extend_front(const PolyRing& R, const std::vector<std::string>& newvars,
                      MonomialOrder ord) {
    PolyRing E;
    E.field = R.field;
    E.vars = newvars;
    E.vars.insert(E.vars.end(), R.vars.begin(), R.vars.end());
    E.order = ord;
    return E;
}

Polynomial lift_front(const PolyRing& E, const Polynomial& f, size_t shift) {
    std::vector<Term> terms;
    for (auto& t : f.terms()) {
        Monomial m = Monomial::unit(t.m.nvars() + shift);
        for (size_t i = 0; i < t.m.nvars(); ++i) m.e[i + shift] = t.m.e[i];
        terms.push_back({std::move(m), t.c});
    }
    return Polynomial::from_terms(E, std::move(terms));
}

bool front_free(const Polynomial& f, size_t shift) {
    for (auto& t : f.terms())
        for (size_t i = 0; i < shift; ++i)
            if (t.m.e[i]) return false;
    return true;
}

Polynomial drop_front(const PolyRing& R, const Polynomial& f, size_t shift) {
    std::vector<Term> terms;
    for (auto& t : f.terms()) {
        Monomial m = Monomial::unit(t.m.nvars() - shift);
        for (size_t i = shift; i < t.m.nvars(); ++i) m.e[i - shift] = t.m.e[i];
        terms.push_back({std::move(m), t.c});
    }
    return Polynomial::from_terms(R, std::move(terms));
}

/// Generators (in the ambient polynomial ring) of the intersection of the
/// polynomial ideals generated by ga and gb.
std::vector<Polynomial> intersect_raw(const PolyRing& R, const std::vector<Polynomial>& ga,
                                      const std::vector<Polynomial>& gb) {
    PolyRing E = extend_front(R, {"@t"}, MonomialOrder::block(1));
    Polynomial t = Polynomial::variable(E, 0);
    Polynomial one_minus_t = sub(E, Polynomial::one(E), t);
    std::vector<VecPoly> gens;
    for (auto& g : ga) gens.push_back(wrap1(mul(E, t, lift_front(E, g, 1))));
    for (auto& g : gb) gens.push_back(wrap1(mul(E, one_minus_t, lift_front(E, g, 1))));
    GroebnerBasis B = GroebnerCache::instance().module_gb(E, ModuleOrder{E.order, 0}, 1, gens);
    std::vector<Polynomial> out;
    for (auto& e : B.elems) {
        const Polynomial& p = e.c[0];
        if (front_free(p, 1)) out.push_back(drop_front(R, p, 1));
    }
    return out;
}

std::vector<Polynomial> with_ideal(const RingCtx& R, const IdealHandle& a) {
    std::vector<Polynomial> g = a.gens();
    g.insert(g.end(), R.ideal.begin(), R.ideal.end());
    return g;
}

/// Exact division f / b in the polynomial ring; throws if not exact.
Polynomial exact_div(const PolyRing& R, const Polynomial& f, const Polynomial& b) {
    DivisionResult d = divide(R, ModuleOrder{R.order, 0}, wrap1(f), {wrap1(b)});
    if (!d.remainder.is_zero()) throw std::logic_error("exact_div: division not exact");
    return d.quotients[0];
}

}  // namespace

IdealHandle ideal_sum(const RingCtx& R, const IdealHandle& a, const IdealHandle& b) {
    std::vector<Polynomial> g = a.gens();
    g.insert(g.end(), b.gens().begin(), b.gens().end());
    return IdealHandle::reduced(R, std::move(g));
}

IdealHandle ideal_product(const RingCtx& R, const IdealHandle& a, const IdealHandle& b) {
    std::vector<Polynomial> g;
    for (auto& x : a.gens())
        for (auto& y : b.gens()) g.push_back(mul(R.ring, x, y));
    return IdealHandle::reduced(R, std::move(g));
}

IdealHandle ideal_intersect(const RingCtx& R, const IdealHandle& a, const IdealHandle& b) {
    return IdealHandle::reduced(R, intersect_raw(R.ring, with_ideal(R, a), with_ideal(R, b)));
}

IdealHandle ideal_quotient(const RingCtx& R, const IdealHandle& a, const IdealHandle& b) {
    std::vector<Polynomial> bs;
    for (auto& g : b.gens()) {
        Polynomial p = R.reduce(g);
        if (!p.is_zero()) bs.push_back(std::move(p));
    }
    if (bs.empty()) return IdealHandle({Polynomial::one(R.ring)});  // (a : (0)) = R
    std::optional<IdealHandle> acc;
    for (auto& bpoly : bs) {
        std::vector<Polynomial> inter = intersect_raw(R.ring, with_ideal(R, a), {bpoly});
        std::vector<Polynomial> quot;
        for (auto& h : inter) quot.push_back(exact_div(R.ring, h, bpoly));
        IdealHandle part = IdealHandle::reduced(R, std::move(quot));
        acc = acc ? ideal_intersect(R, *acc, part) : part;
    }
    return *acc;
}

IdealHandle ideal_saturate(const RingCtx& R, const IdealHandle& a, const Polynomial& f) {
    IdealHandle cur = a;
    for (int i = 0; i < 256; ++i) {
        IdealHandle next = ideal_quotient(R, cur, IdealHandle({f}));
        if (ideal_equal(R, cur, next)) return cur;
        cur = next;
    }
    throw std::logic_error("ideal_saturate: did not stabilize");
}

IdealHandle ideal_eliminate(const RingCtx& R, const IdealHandle& a,
                            const std::vector<size_t>& eliminate) {
    size_t n = R.ring.nvars();
    std::vector<bool> elim(n, false);
    for (size_t i : eliminate) elim[i] = true;
    std::vector<size_t> perm;  // eliminated first
    for (size_t i = 0; i < n; ++i)
        if (elim[i]) perm.push_back(i);
    size_t nelim = perm.size();
    for (size_t i = 0; i < n; ++i)
        if (!elim[i]) perm.push_back(i);

    PolyRing E;
    E.field = R.ring.field;
    for (size_t i : perm) E.vars.push_back(R.ring.vars[i]);
    E.order = MonomialOrder::block(nelim);

    auto permute = [&](const Polynomial& f, const PolyRing& dst,
                       const std::vector<size_t>& p) {
        std::vector<Term> terms;
        for (auto& t : f.terms()) {
            Monomial m = Monomial::unit(n);
            for (size_t i = 0; i < n; ++i) m.e[i] = t.m.e[p[i]];
            terms.push_back({std::move(m), t.c});
        }
        return Polynomial::from_terms(dst, std::move(terms));
    };
    std::vector<size_t> inv(n);
    for (size_t i = 0; i < n; ++i) inv[i] = perm[i];

    std::vector<VecPoly> gens;
    for (auto& g : with_ideal(R, a)) gens.push_back(wrap1(permute(g, E, inv)));
    GroebnerBasis B = GroebnerCache::instance().module_gb(E, ModuleOrder{E.order, 0}, 1, gens);

    std::vector<size_t> back(n);
    for (size_t i = 0; i < n; ++i) back[perm[i]] = i;
    std::vector<Polynomial> out;
    for (auto& e : B.elems) {
        const Polynomial& p = e.c[0];
        if (front_free(p, nelim)) out.push_back(permute(p, R.ring, back));
    }
    return IdealHandle::reduced(R, std::move(out));
}

bool radical_member(const RingCtx& R, const Polynomial& f, const IdealHandle& a) {
    if (a.contains(R, f)) return true;
    PolyRing E = extend_front(R.ring, {"@t"}, MonomialOrder::block(1));
    std::vector<VecPoly> gens;
    for (auto& g : with_ideal(R, a)) gens.push_back(wrap1(lift_front(E, g, 1)));
    Polynomial probe = sub(E, Polynomial::one(E),
                           mul(E, Polynomial::variable(E, 0), lift_front(E, f, 1)));
    gens.push_back(wrap1(probe));
    GroebnerBasis B = GroebnerCache::instance().module_gb(E, ModuleOrder{E.order, 0}, 1, gens);
    return B.elems.size() == 1 && B.elems[0].c[0].size() == 1 &&
           B.elems[0].c[0].leading().m.is_unit();
}

std::vector<Polynomial> contract_ideal(const RingCtx& source, const RingCtx& target,
                                       const std::vector<Polynomial>& images,
                                       const std::vector<Polynomial>& target_ideal_gens) {
    size_t nt = target.ring.nvars(), ns = source.ring.nvars();
    assert(images.size() == ns);
    PolyRing E;
    E.field = target.ring.field;
    E.vars = target.ring.vars;
    for (size_t j = 0; j < ns; ++j) E.vars.push_back("@s" + std::to_string(j));
    E.order = MonomialOrder::block(nt);

    auto lift_target = [&](const Polynomial& f) {
        std::vector<Term> terms;
        for (auto& t : f.terms()) {
            Monomial m = Monomial::unit(nt + ns);
            for (size_t i = 0; i < nt; ++i) m.e[i] = t.m.e[i];
            terms.push_back({std::move(m), t.c});
        }
        return Polynomial::from_terms(E, std::move(terms));
    };

    std::vector<VecPoly> gens;
    for (auto& g : target_ideal_gens) gens.push_back(wrap1(lift_target(g)));
    for (auto& g : target.ideal) gens.push_back(wrap1(lift_target(g)));
    for (size_t j = 0; j < ns; ++j) {
        Polynomial rel = sub(E, Polynomial::variable(E, nt + j), lift_target(images[j]));
        gens.push_back(wrap1(rel));
    }
    GroebnerBasis B = GroebnerCache::instance().module_gb(E, ModuleOrder{E.order, 0}, 1, gens);

    std::vector<Polynomial> out;
    for (auto& e : B.elems) {
        const Polynomial& p = e.c[0];
        if (!front_free(p, nt)) continue;
        std::vector<Term> terms;
        for (auto& t : p.terms()) {
            Monomial m = Monomial::unit(ns);
            for (size_t j = 0; j < ns; ++j) m.e[j] = t.m.e[nt + j];
            terms.push_back({std::move(m), t.c});
        }
        Polynomial q = source.reduce(Polynomial::from_terms(source.ring, std::move(terms)));
        if (!q.is_zero()) out.push_back(std::move(q));
    }
    return out;
}

const PrimeDecl* RingFixture::find_prime(const std::string& label) const {
    for (auto& p : primes)
        if (p.label == label) return &p;
    return nullptr;
}

std::vector<const PrimeDecl*> RingFixture::ass_primes() const {
    std::vector<const PrimeDecl*> out;
    for (auto& p : primes)
        if (p.section == PrimeDecl::Section::Ass) out.push_back(&p);
    return out;
}

std::vector<const PrimeDecl*> RingFixture::min_primes() const {
    std::vector<const PrimeDecl*> out;
    for (auto& p : primes)
        if (p.section == PrimeDecl::Section::Ass && p.minimal) out.push_back(&p);
    return out;
}

std::vector<const PrimeDecl*> RingFixture::max_ideals() const {
    std::vector<const PrimeDecl*> out;
    for (auto& p : primes)
        if (p.maximal) out.push_back(&p);
    return out;
}

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Certified: return "CERTIFIED";
        case CheckStatus::Trusted: return "TRUSTED";
        case CheckStatus::Refuted: return "REFUTED";
        case CheckStatus::Info: return "INFO";
    }
    return "?";
}

bool ValidationReport::valid() const {
    for (auto& c : checks)
        if (c.status == CheckStatus::Fail) return false;
    return true;
}

ValidationReport validate_fixture(const RingFixture& F) {
    const RingCtx& R = F.ctx;
    ValidationReport rep;
    auto add = [&](std::string name, CheckStatus st, std::string detail = "") {
        rep.checks.push_back({std::move(name), st, std::move(detail)});
    };

    // every declared prime contains I, as polynomial ideals over its own gens;
    // an empty generator list denotes the zero ideal of R, whose preimage is I
    for (auto& P : F.primes) {
        if (P.ideal.gens().empty()) {
            add("prime_contains_I." + P.label, CheckStatus::Pass, "zero ideal: preimage is I");
        } else {
            GroebnerBasis pg = GroebnerCache::instance().module_gb(
                R.ring, R.mod_order(), 1, [&] {
                    std::vector<VecPoly> v;
                    for (auto& g : P.ideal.gens()) v.push_back(wrap1(g));
                    return v;
                }());
            bool ok = true;
            std::string witness;
            for (auto& g : R.ideal) {
                if (!normal_form(R.ring, R.mod_order(), wrap1(g), pg.elems).is_zero()) {
                    ok = false;
                    witness = to_string(R.ring, g);
                    break;
                }
            }
            add("prime_contains_I." + P.label, ok ? CheckStatus::Pass : CheckStatus::Fail,
                ok ? "" : "relation " + witness + " not in (" + P.label + ")");
        }
        add("prime_proper." + P.label,
            P.ideal.is_unit_ideal(R) ? CheckStatus::Fail : CheckStatus::Pass,
            P.ideal.is_unit_ideal(R) ? "declared prime is the unit ideal" : "");
    }

    // sqrt(I) = sqrt(intersection of declared minimal primes)
    auto mins = F.min_primes();
    bool radical_ok = true;
    if (!mins.empty()) {
        std::optional<IdealHandle> inter;
        for (auto* P : mins) inter = inter ? ideal_intersect(R, *inter, P->ideal) : P->ideal;
        IdealHandle I0;  // the zero ideal handle: gb is I itself
        std::string witness;
        std::vector<Polynomial> nilwitness;
        for (auto& e : inter->gb(R).elems) {
            if (!radical_member(R, e.c[0], I0)) {
                radical_ok = false;
                witness = to_string(R.ring, e.c[0]);
                break;
            }
            if (!R.is_zero(e.c[0])) nilwitness.push_back(e.c[0]);
        }
        add("radical_equality", radical_ok ? CheckStatus::Pass : CheckStatus::Fail,
            radical_ok ? "" : witness + " in ∩Min but not in √I");

        if (radical_ok) {
            if (nilwitness.empty()) {
                rep.reduced = CheckStatus::Certified;
                add("reduced", CheckStatus::Certified, "∩Min ⊆ I");
            } else {
                rep.reduced = CheckStatus::Refuted;
                add("reduced", F.flags.reduced ? CheckStatus::Fail : CheckStatus::Refuted,
                    "nilpotent witness " + to_string(R.ring, nilwitness[0]) + " in √I \\ I");
            }
        }
    } else {
        add("radical_equality", CheckStatus::Fail, "no minimal primes declared");
    }
    if (F.flags.reduced && rep.reduced == CheckStatus::Refuted) {
        // already a Fail check above
    } else if (F.flags.reduced && rep.reduced != CheckStatus::Certified) {
        rep.reduced = CheckStatus::Trusted;
    }
    if (!F.flags.reduced && rep.reduced == CheckStatus::Certified) {
        add("flags.reduced", CheckStatus::Info, "fixture does not claim reduced but it is");
    }

    // minimal primes pairwise incomparable
    for (size_t i = 0; i < mins.size(); ++i) {
        for (size_t j = i + 1; j < mins.size(); ++j) {
            auto outside = [&](const PrimeDecl* a, const PrimeDecl* b) {
                for (auto& g : a->ideal.gens())
                    if (!b->ideal.contains(R, g)) return true;
                return false;
            };
            bool ok = outside(mins[i], mins[j]) && outside(mins[j], mins[i]);
            add("min_incomparable." + mins[i]->label + "." + mins[j]->label,
                ok ? CheckStatus::Pass : CheckStatus::Fail);
        }
    }

    // primality: certified only for variable-generated ideals
    for (auto& P : F.primes) {
        const auto& B = P.ideal.gb(R);
        bool vars_only = true;
        size_t nvargens = 0;
        for (auto& e : B.elems) {
            const Polynomial& p = e.c[0];
            if (p.size() != 1 || p.leading().m.degree() != 1 || !p.leading().c.is_one()) {
                vars_only = false;
                break;
            }
            ++nvargens;
        }
        if (vars_only) {
            add("prime." + P.label, CheckStatus::Certified, "generated by variables");
            if (P.maximal && nvargens != R.ring.nvars())
                add("maximal." + P.label, CheckStatus::Fail,
                    "variable-generated but quotient is not a field");
            else if (P.maximal)
                add("maximal." + P.label, CheckStatus::Certified);
        } else {
            add("prime." + P.label, CheckStatus::Trusted);
            if (P.maximal) add("maximal." + P.label, CheckStatus::Trusted);
        }
    }

    // flag consistency
    if (F.flags.reduced) {
        for (auto* P : F.ass_primes())
            if (!P->minimal)
                add("reduced_vs_embedded." + P->label, CheckStatus::Fail,
                    "reduced ring cannot have an embedded associated prime");
    }
    if (F.flags.no_embedded_primes) {
        for (auto* P : F.ass_primes())
            if (!P->minimal)
                add("no_embedded_vs_ass." + P->label, CheckStatus::Fail,
                    "declared embedded prime contradicts no_embedded_primes");
        rep.no_embedded = rep.reduced == CheckStatus::Certified ? CheckStatus::Certified
                                                                : CheckStatus::Trusted;
    } else {
        rep.no_embedded = CheckStatus::Trusted;
    }
    rep.connected = CheckStatus::Trusted;
    return rep;
}

Verdict3 is_nonzerodivisor(const RingFixture& F, const Polynomial& w) {
    Polynomial wr = F.ctx.reduce(w);
    if (wr.is_zero()) return Verdict3::False;
    if (!F.flags.ass_complete) return Verdict3::Undecidable;
    for (auto* P : F.ass_primes())
        if (P->ideal.contains(F.ctx, wr)) return Verdict3::False;
    return Verdict3::True;
}

namespace {

void tuples_of_total(size_t k, size_t total, std::vector<uint32_t>& cur,
                     std::vector<std::vector<uint32_t>>& out) {
    if (cur.size() == k) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (size_t v = 0; v <= total; ++v) {
        cur.push_back(static_cast<uint32_t>(v));
        tuples_of_total(k, total - v, cur, out);
        cur.pop_back();
    }
}

Polynomial monoid_element(const RingCtx& R, const std::vector<Polynomial>& gens,
                          const std::vector<uint32_t>& word) {
    Polynomial w = Polynomial::one(R.ring);
    for (size_t i = 0; i < gens.size(); ++i)
        if (word[i]) w = mul(R.ring, w, pow(R.ring, gens[i], word[i]));
    return R.reduce(w);
}

}  // namespace

Claim1Witness claim1_witness(const RingFixture& F, const MultiplicativeSet& W, const Polynomial& c,
                             const SearchBounds& bounds) {
    const RingCtx& R = F.ctx;
    Claim1Witness out;
    if (W.contains_zero) {
        out.failure = "zero_ring";
        return out;
    }
    if (!F.flags.ass_complete) {
        out.failure = "requires a complete declared associated prime list";
        return out;
    }
    out.no_embedded_hypothesis = F.flags.no_embedded_primes;
    auto mins = F.min_primes();
    std::vector<const PrimeDecl*> X1, X2;
    for (auto* P : mins) {
        bool meets = false;
        for (auto& g : W.gens)
            if (P->ideal.contains(R, g)) {
                meets = true;
                break;
            }
        (meets ? X1 : X2).push_back(P);
    }
    Polynomial cred = R.reduce(c);
    for (auto* Q : X2) {
        if (Q->ideal.contains(R, cred)) {
            out.failure = "c/1 is a zero-divisor of W^{-1}R (c lies in " + Q->label + ")";
            return out;
        }
    }

    // candidate w: monoid words by ascending total length, empty word last
    std::vector<std::vector<uint32_t>> words;
    for (size_t total = 1; total <= bounds.monoid_length; ++total) {
        std::vector<uint32_t> cur;
        tuples_of_total(W.gens.size(), total, cur, words);
    }
    words.push_back(std::vector<uint32_t>(W.gens.size(), 0));

    // candidate r: zero when X2 is empty, else Groebner elements of ∩X2 and
    // small linear combinations of them
    std::vector<Polynomial> rcands;
    if (X2.empty()) {
        rcands.push_back(Polynomial::zero());
    } else {
        std::optional<IdealHandle> inter;
        for (auto* Q : X2) inter = inter ? ideal_intersect(R, *inter, Q->ideal) : Q->ideal;
        std::vector<Polynomial> base;
        for (auto& e : inter->gb(R).elems) base.push_back(e.c[0]);
        rcands = base;
        for (size_t i = 0; i < base.size(); ++i)
            for (size_t j = i + 1; j < base.size(); ++j)
                for (long cc = 1; cc <= bounds.coefficient_pool; ++cc) {
                    rcands.push_back(add(R.ring, base[i],
                                         scale(R.ring, base[j], Scalar::from_int(R.ring.field, cc))));
                    if (R.ring.field.is_rational() || R.ring.field.p > 2)
                        rcands.push_back(sub(R.ring, base[i],
                                             scale(R.ring, base[j], Scalar::from_int(R.ring.field, cc))));
                }
        // last resort, covering the case where the intersection is (0)
        rcands.push_back(Polynomial::zero());
    }

    for (auto& word : words) {
        Polynomial w = monoid_element(R, W.gens, word);
        if (w.is_zero()) continue;
        bool ok = true;
        for (auto* P : X1)
            if (!P->ideal.contains(R, w)) {
                ok = false;
                break;
            }
        for (auto* Q : X2)
            if (ok && Q->ideal.contains(R, w)) ok = false;
        if (!ok) continue;

        for (auto& r0 : rcands) {
            Polynomial r = R.reduce(r0);
            bool avoid = true;
            for (auto* P : X1)
                if (!r.is_zero() && P->ideal.contains(R, r)) {
                    avoid = false;
                    break;
                }
            if (!avoid) continue;
            // find n with (w r)^n = 0 exactly, then pass to w^n, r^n
            Polynomial prod = R.reduce(mul(R.ring, w, r));
            size_t n = 1;
            Polynomial pw = prod;
            bool killed = prod.is_zero();
            while (!killed && n < bounds.nilpotency) {
                ++n;
                pw = R.reduce(mul(R.ring, pw, prod));
                killed = pw.is_zero();
            }
            if (!killed) continue;
            Polynomial wn = n == 1 ? w : R.reduce(pow(R.ring, w, n));
            Polynomial rn = n == 1 ? r : R.reduce(pow(R.ring, r, n));
            Polynomial wcr = R.reduce(add(R.ring, mul(R.ring, wn, cred), rn));
            if (is_nonzerodivisor(F, wcr) != Verdict3::True) continue;
            out.found = true;
            out.w = wn;
            out.r = rn;
            out.monoid_word = word;
            for (auto& e : out.monoid_word) e *= static_cast<uint32_t>(n);
            out.power = n;
            out.wc_plus_r = wcr;
            return out;
        }
    }
    out.failure = "bounded search exhausted (incompleteness, not a refutation)";
    return out;
}

Claim2Certificate claim2_witness(const RingFixture& F, const MultiplicativeSet& W,
                                 const Polynomial& c, const SearchBounds& bounds) {
    Claim2Certificate cert;
    cert.witness = claim1_witness(F, W, c, bounds);
    if (!cert.witness.found) {
        cert.failure = cert.witness.failure;
        return cert;
    }
    const RingCtx& R = F.ctx;
    Polynomial cred = R.reduce(c);
    cert.lhs = R.reduce(mul(R.ring, mul(R.ring, cert.witness.w, cert.witness.w), cred));
    cert.rhs = R.reduce(mul(R.ring, cert.witness.w, cert.witness.wc_plus_r));
    cert.ok = cert.lhs == cert.rhs;
    if (!cert.ok) cert.failure = "identity w^2 c = w(wc+r) failed to verify";
    return cert;
}

}  // namespace modcrit
