#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modcrit/groebner.hpp"
#include "support/oracle.hpp"

using namespace modcrit;

namespace {

PolyRing qring(std::vector<std::string> vars, MonomialOrder ord = MonomialOrder::grevlex()) {
    return PolyRing{FieldSpec{0}, std::move(vars), ord};
}

PolyRing f2ring(std::vector<std::string> vars) {
    return PolyRing{FieldSpec{2}, std::move(vars), MonomialOrder::grevlex()};
}

Polynomial P(const PolyRing& R, const std::string& s) { return parse_polynomial(R, s); }

/// Random polynomial supported on monomials of degree [mindeg, maxdeg].
/// Ideal generators are drawn with mindeg = 1 so the sampled ideals are
/// proper; unit ideals have membership certificates beyond any fixed degree
/// window and would make the bounded oracle incomplete by construction.
Polynomial random_poly(const PolyRing& R, std::mt19937& rng, uint64_t maxdeg, size_t terms,
                       uint64_t mindeg = 0) {
    auto monos = oracle::monomials_up_to(R, maxdeg);
    std::vector<Monomial> pool;
    for (auto& m : monos)
        if (m.degree() >= mindeg) pool.push_back(m);
    std::vector<Term> out;
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (size_t i = 0; i < terms; ++i) out.push_back({pool[pick(rng)], Scalar::one(R.field)});
    return Polynomial::from_terms(R, std::move(out));
}

}  // namespace

TEST_CASE("scalar arithmetic is exact") {
    FieldSpec f7{7};
    Scalar a = Scalar::rational(mpq_class(1, 3));
    Scalar b = Scalar::rational(mpq_class(1, 6));
    CHECK((a + b) == Scalar::rational(mpq_class(1, 2)));
    CHECK((a * b).str() == "1/18");
    CHECK(a.inverse().str() == "3");

    Scalar x = Scalar::residue(7, 3);
    CHECK((x.inverse() * x) == Scalar::one(f7));
    CHECK((x * x).res() == 2);
    CHECK((-x).res() == 4);
}

TEST_CASE("polynomial parse and canonical print round-trip") {
    PolyRing R = qring({"x", "y"});
    CHECK(to_string(R, P(R, "x^2*y - 2*x + 1/3")) == "x^2*y - 2*x + 1/3");
    CHECK(to_string(R, P(R, "-x + y")) == "-x + y");
    CHECK(to_string(R, P(R, "0")) == "0");
    CHECK(to_string(R, P(R, "y + x")) == "x + y");
    CHECK(P(R, "x - x").is_zero());
    CHECK_THROWS_AS(P(R, "z + 1"), std::invalid_argument);

    PolyRing F = f2ring({"x", "y"});
    CHECK(to_string(F, P(F, "x + x")) == "0");
    CHECK(to_string(F, P(F, "-x")) == "x");

    PolyRing F3{FieldSpec{3}, {"x", "y"}, MonomialOrder::grevlex()};
    CHECK(to_string(F3, P(F3, "x - 1")) == "x + 2");
}

TEST_CASE("monomial orders") {
    PolyRing R = qring({"x", "y", "z"});
    Monomial x2 = P(R, "x^2").leading().m;
    Monomial xy = P(R, "x*y").leading().m;
    Monomial yz = P(R, "y*z").leading().m;
    CHECK(greater(MonomialOrder::grevlex(), x2, xy));
    CHECK(greater(MonomialOrder::grevlex(), xy, yz));
    CHECK(greater(MonomialOrder::lex(), x2, xy));
    // block(1): degree in x dominates everything
    CHECK(greater(MonomialOrder::block(1), x2, xy));
    Monomial y5 = P(R, "y^5").leading().m;
    CHECK(greater(MonomialOrder::block(1), xy, y5));
}

TEST_CASE("normal form: the stated division examples") {
    PolyRing R = qring({"x", "y"});
    ModuleOrder ord{R.order, 0};
    // NF(x^2 y, {x^2 - y}) = y^2, one division step
    Polynomial f = P(R, "x^2*y");
    Polynomial g = P(R, "x^2 - y");
    VecPoly rem = normal_form(R, ord, wrap1(f), {wrap1(g)});
    CHECK(to_string(R, rem.c[0]) == "y^2");
    // the division identity is exact: f = q g + r
    DivisionResult d = divide(R, ord, wrap1(f), {wrap1(g)});
    Polynomial rebuilt = add(R, mul(R, d.quotients[0], g), d.remainder.c[0]);
    CHECK(rebuilt == f);

    // empty divisor set is the identity
    CHECK(normal_form(R, ord, wrap1(f), {}).c[0] == f);

    // NF(x^3 - x, GB(x^2 - 1)) = 0 in QQ[x]; oracle: expand the quotient
    PolyRing Rx = qring({"x"});
    GroebnerBasis gb = buchberger_ideal(Rx, {P(Rx, "x^2 - 1")});
    Polynomial h = P(Rx, "x^3 - x");
    DivisionResult dx = divide(Rx, ModuleOrder{Rx.order, 0}, wrap1(h), {gb.elems[0]});
    CHECK(dx.remainder.is_zero());
    CHECK(mul(Rx, dx.quotients[0], gb.elems[0].c[0]) == h);
}

TEST_CASE("normal form is idempotent") {
    PolyRing R = f2ring({"x", "y", "z"});
    ModuleOrder ord{R.order, 0};
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<VecPoly> G;
        for (int i = 0; i < 3; ++i) G.push_back(wrap1(random_poly(R, rng, 3, 3)));
        Polynomial f = random_poly(R, rng, 4, 4);
        VecPoly r1 = normal_form(R, ord, wrap1(f), G);
        VecPoly r2 = normal_form(R, ord, r1, G);
        CHECK(r1 == r2);
    }
}

TEST_CASE("buchberger: the stated basis examples") {
    PolyRing R = qring({"x", "y"});
    GroebnerBasis g1 = buchberger_ideal(R, {P(R, "x")});
    REQUIRE(g1.elems.size() == 1);
    CHECK(to_string(R, g1.elems[0].c[0]) == "x");

    // membership of x^4 - 1 in (x^2 - y, y^2 - 1); the combination is
    // x^4 - 1 = (x^2 + y)(x^2 - y) + (y^2 - 1), verified by expansion
    Polynomial a = P(R, "x^2 - y"), b = P(R, "y^2 - 1");
    Polynomial target = P(R, "x^4 - 1");
    Polynomial expansion = add(R, mul(R, P(R, "x^2 + y"), a), b);
    CHECK(expansion == target);
    GroebnerBasis gb = buchberger_ideal(R, {a, b});
    CHECK(ideal_member(R, target, gb));
    CHECK_FALSE(ideal_member(R, P(R, "x"), gb));
}

TEST_CASE("buchberger: elimination finds the twisted cubic relation") {
    // gens {y - x^2, z - x^3}; an elimination order for {y,z}... the block
    // order with x in the leading block eliminates x; the x-free part must
    // contain z^2 - y^3.  Oracle: it vanishes under y -> x^2, z -> x^3.
    PolyRing E = qring({"x", "y", "z"}, MonomialOrder::block(1));
    GroebnerBasis gb = buchberger_ideal(E, {P(E, "y - x^2"), P(E, "z - x^3")});
    Polynomial rel = P(E, "z^2 - y^3");
    CHECK(ideal_member(E, rel, gb));
    // the canonical monic x-free basis element is y^3 - z^2
    bool found = false;
    for (auto& e : gb.elems) {
        bool xfree = true;
        for (auto& t : e.c[0].terms())
            if (t.m.e[0]) xfree = false;
        if (xfree && e.c[0] == P(E, "y^3 - z^2")) found = true;
    }
    CHECK(found);
    PolyRing Rx = qring({"x"});
    Polynomial check = substitute(E, rel, Rx, {P(Rx, "x"), P(Rx, "x^2"), P(Rx, "x^3")});
    CHECK(check.is_zero());
}

TEST_CASE("syzygies: Koszul pair over QQ[x,y]") {
    PolyRing R = qring({"x", "y"});
    ModuleOrder ord{R.order, 0};
    std::vector<VecPoly> gens = {wrap1(P(R, "x")), wrap1(P(R, "y"))};
    AugmentedBasis aug(R, ord, 1, gens);
    auto syz = aug.syzygies();
    REQUIRE(syz.size() == 1);
    Polynomial combo = add(R, mul(R, syz[0].c[0], P(R, "x")), mul(R, syz[0].c[1], P(R, "y")));
    CHECK(combo.is_zero());
    CHECK((syz[0].c[0] == P(R, "y") || syz[0].c[0] == P(R, "-y")));

    // degree-bounded brute kernel agrees: every kernel element reduces to 0
    // against the module basis of the returned syzygies
    auto brute = oracle::brute_syzygies(R, 1, gens, 3);
    CHECK(!brute.empty());
    GroebnerBasis sgb = buchberger(R, ord, 2, syz);
    for (auto& k : brute) {
        Polynomial combo2 = add(R, mul(R, k.c[0], P(R, "x")), mul(R, k.c[1], P(R, "y")));
        REQUIRE(combo2.is_zero());
        CHECK(normal_form(R, ord, k, sgb.elems).is_zero());
    }

    AugmentedBasis unit(R, ord, 1, {wrap1(Polynomial::one(R))});
    CHECK(unit.syzygies().empty());
}

TEST_CASE("syzygies over the cusp include the curve relation") {
    // inputs (x, y) over F2[x,y]/(y^2 - x^3), lifted with the relation:
    // the syzygies reduce to (y, x) and (x^2, y) modulo the relation
    PolyRing R = f2ring({"x", "y"});
    ModuleOrder ord{R.order, 0};
    Polynomial curve = P(R, "x^3 + y^2");
    std::vector<VecPoly> with_pad = {wrap1(P(R, "x")), wrap1(P(R, "y")), wrap1(curve)};
    AugmentedBasis aug(R, ord, 1, with_pad);
    std::vector<VecPoly> projected;
    for (auto& s : aug.syzygies()) {
        VecPoly v = VecPoly::zero(2);
        v.c[0] = s.c[0];
        v.c[1] = s.c[1];
        if (!v.is_zero()) projected.push_back(v);
    }
    REQUIRE(!projected.empty());
    GroebnerBasis igb = buchberger_ideal(R, {curve});
    for (auto& s : projected) {
        Polynomial combo = add(R, mul(R, s.c[0], P(R, "x")), mul(R, s.c[1], P(R, "y")));
        CHECK(ideal_member(R, combo, igb));
    }
    // hand-checked: x*y + y*x = 0 and x^2*x + y*y = x^3 + y^2 = 0 in R
    CHECK(ideal_member(R, add(R, mul(R, P(R, "y"), P(R, "x")), mul(R, P(R, "x"), P(R, "y"))), igb));
    CHECK(ideal_member(R, add(R, mul(R, P(R, "x^2"), P(R, "x")), mul(R, P(R, "y"), P(R, "y"))), igb));
    // ... and both lie in the module generated by the returned syzygies mod the curve
    std::vector<VecPoly> mod_gens = projected;
    for (size_t j = 0; j < 2; ++j) {
        VecPoly v = VecPoly::zero(2);
        v.c[j] = curve;
        mod_gens.push_back(v);
    }
    GroebnerBasis sgb = buchberger(R, ord, 2, mod_gens);
    VecPoly yx{{P(R, "y"), P(R, "x")}};
    VecPoly x2y{{P(R, "x^2"), P(R, "y")}};
    CHECK(normal_form(R, ord, yx, sgb.elems).is_zero());
    CHECK(normal_form(R, ord, x2y, sgb.elems).is_zero());
}

TEST_CASE("membership agrees with the brute-force oracle on random F2 ideals") {
    PolyRing R = f2ring({"x", "y", "z"});
    std::mt19937 rng(20240803);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Polynomial> gens;
        size_t ngens = 1 + rng() % 3;
        for (size_t i = 0; i < ngens; ++i) gens.push_back(random_poly(R, rng, 3, 3, 1));
        GroebnerBasis gb = buchberger_ideal(R, gens);
        for (int probes = 0; probes < 4; ++probes) {
            Polynomial f = random_poly(R, rng, 3, 3);
            bool nf_member = ideal_member(R, f, gb);
            bool brute = oracle::brute_membership(R, f, gens, 6);
            CHECK(nf_member == brute);
        }
        Polynomial combo;
        for (auto& g : gens) combo = add(R, combo, mul(R, random_poly(R, rng, 2, 2), g));
        CHECK(ideal_member(R, combo, gb));
    }
}

TEST_CASE("reduced basis is canonical under permutation and rescaling") {
    PolyRing R = qring({"x", "y"});
    std::vector<Polynomial> gens = {P(R, "x^2 - y"), P(R, "y^2 - 1"), P(R, "x*y - x")};
    GroebnerBasis reference = buchberger_ideal(R, gens);
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Polynomial> shuffled = gens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (auto& g : shuffled) {
            long num = 1 + static_cast<long>(rng() % 5);
            g = scale(R, g, Scalar::rational(mpq_class(num, 3)));
        }
        GroebnerBasis gb = buchberger_ideal(R, shuffled);
        CHECK(gb.elems == reference.elems);
    }
}

TEST_CASE("augmented membership produces exact cofactors") {
    PolyRing R = qring({"x", "y"});
    ModuleOrder ord{R.order, 0};
    std::vector<VecPoly> gens = {wrap1(P(R, "x^2 - y")), wrap1(P(R, "y^2 - 1"))};
    AugmentedBasis aug(R, ord, 1, gens);
    Polynomial f = P(R, "x^4 - 1");
    auto mem = aug.express(wrap1(f));
    REQUIRE(mem.member);
    Polynomial rebuilt;
    for (size_t i = 0; i < gens.size(); ++i)
        rebuilt = add(R, rebuilt, mul(R, mem.cofactors[i], gens[i].c[0]));
    CHECK(rebuilt == f);

    auto non = aug.express(wrap1(P(R, "x")));
    CHECK_FALSE(non.member);
    Polynomial rebuilt2 = non.remainder.c[0];
    for (size_t i = 0; i < gens.size(); ++i)
        rebuilt2 = add(R, rebuilt2, mul(R, non.cofactors[i], gens[i].c[0]));
    CHECK(rebuilt2 == P(R, "x"));
}

TEST_CASE("module bases are canonical under generator permutation") {
    PolyRing R = f2ring({"x", "y"});
    ModuleOrder ord{R.order, 0};
    std::vector<VecPoly> gens = {
        VecPoly{{P(R, "x"), P(R, "y")}},
        VecPoly{{P(R, "y^2"), P(R, "x")}},
        VecPoly{{P(R, "x + y"), P(R, "1")}},
    };
    GroebnerBasis reference = buchberger(R, ord, 2, gens);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        auto shuffled = gens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(buchberger(R, ord, 2, shuffled).elems == reference.elems);
    }
}
