#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modcrit/fixture.hpp"
#include "modcrit/module.hpp"
#include "support/oracle.hpp"

using namespace modcrit;

namespace {

std::string fx(const std::string& name) { return std::string(MODCRIT_FIXTURE_DIR) + "/" + name; }

Polynomial P(const RingCtx& R, const std::string& s) { return parse_polynomial(R.ring, s); }

IdealHandle H(const RingCtx& R, std::initializer_list<std::string> gens) {
    std::vector<Polynomial> v;
    for (auto& g : gens) v.push_back(parse_polynomial(R.ring, g));
    return IdealHandle::reduced(R, std::move(v));
}

ModulePresentation cyc(const RingCtx& R, std::initializer_list<std::string> gens,
                       std::string label = "") {
    std::vector<Polynomial> v;
    for (auto& g : gens) v.push_back(parse_polynomial(R.ring, g));
    return ModulePresentation::cyclic(R, v, std::move(label));
}

std::string gb_str(const RingCtx& R, const IdealHandle& h) {
    std::string out;
    for (auto& e : h.gb(R).elems) out += to_string(R.ring, e.c[0]) + ";";
    return out;
}

}  // namespace

TEST_CASE("tensor of cyclic modules joins the ideals") {
    RingCtx R(PolyRing{FieldSpec{0}, {"x", "y"}, MonomialOrder::grevlex()}, {});
    ModulePresentation T = tensor(R, cyc(R, {"x"}), cyc(R, {"y"}));
    CHECK(gb_str(R, fitting_ideal(R, T, 0)) == "x;y;");
    CHECK_FALSE(module_is_zero(R, T));
}

TEST_CASE("hom into the ring kills torsion") {
    RingCtx R(PolyRing{FieldSpec{0}, {"x"}, MonomialOrder::grevlex()}, {});
    PresentedSubmodule hom = hom_to_ring(R, cyc(R, {"x"}));
    CHECK(hom.embedding.empty());
    CHECK(module_is_zero(R, hom.pres));
    // Hom of a free module is free of the same rank
    PresentedSubmodule homfree = hom_to_ring(R, ModulePresentation::free_module(2));
    CHECK(homfree.embedding.size() == 2);
    CHECK(homfree.pres.relations.empty());
}

TEST_CASE("ideal_as_module over the node matches the stated syzygies") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingCtx& R = node.fixture.ctx;
    IdealHandle m0 = node.fixture.find_prime("m0")->ideal;
    ModulePresentation M = ideal_as_module(R, m0);
    CHECK(M.rank == 2);
    REQUIRE(!M.relations.empty());
    // every relation column annihilates the generator row (x, y) mod I
    for (auto& col : M.relations) {
        Polynomial combo = add(R.ring, mul(R.ring, col.c[0], P(R, "x")),
                               mul(R.ring, col.c[1], P(R, "y")));
        CHECK(R.is_zero(combo));
    }
    // (y, 0) and (0, x) are node syzygies of (x, y); check membership
    GroebnerBasis sgb = GroebnerCache::instance().module_gb(R.ring, R.mod_order(), 2, [&] {
        auto v = M.relations;
        auto pad = ipad(R, 2);
        v.insert(v.end(), pad.begin(), pad.end());
        return v;
    }());
    CHECK(normal_form(R.ring, R.mod_order(), VecPoly{{P(R, "y"), Polynomial::zero()}}, sgb.elems)
              .is_zero());
    CHECK(normal_form(R.ring, R.mod_order(), VecPoly{{Polynomial::zero(), P(R, "x")}}, sgb.elems)
              .is_zero());
    // degree-bounded brute kernel agreement over the lifted relation set
    std::vector<VecPoly> lifted = {wrap1(P(R, "x")), wrap1(P(R, "y")), wrap1(P(R, "x*y"))};
    auto brute = oracle::brute_syzygies(R.ring, 1, lifted, 3);
    for (auto& k : brute) {
        VecPoly proj = VecPoly::zero(2);
        proj.c[0] = k.c[0];
        proj.c[1] = k.c[1];
        CHECK(normal_form(R.ring, R.mod_order(), proj, sgb.elems).is_zero());
    }
}

TEST_CASE("tor1: Koszul, free, and nilpotent examples") {
    RingCtx Rx(PolyRing{FieldSpec{0}, {"x"}, MonomialOrder::grevlex()}, {});
    ModulePresentation T = tor1(Rx, cyc(Rx, {"x"}), cyc(Rx, {"x"}));
    CHECK(gb_str(Rx, fitting_ideal(Rx, T, 0)) == "x;");
    CHECK(gb_str(Rx, annihilator(Rx, T)) == "x;");

    CHECK(module_is_zero(Rx, tor1(Rx, cyc(Rx, {"x"}), ModulePresentation::free_module(3))));

    FixtureDocument tsq = load_fixture(fx("tsq.fx"));
    const RingCtx& Rt = tsq.fixture.ctx;
    ModulePresentation Tt = tor1(Rt, cyc(Rt, {"t"}), cyc(Rt, {"t"}));
    CHECK_FALSE(module_is_zero(Rt, Tt));
    CHECK(gb_str(Rt, annihilator(Rt, Tt)) == "t;");
}

TEST_CASE("fitting ideals of the stated presentations") {
    RingCtx Rx(PolyRing{FieldSpec{0}, {"x"}, MonomialOrder::grevlex()}, {});
    ModulePresentation M = cyc(Rx, {"x"});
    CHECK(gb_str(Rx, fitting_ideal(Rx, M, 0)) == "x;");
    CHECK(fitting_ideal(Rx, M, 1).is_unit_ideal(Rx));

    ModulePresentation free2 = ModulePresentation::free_module(2);
    CHECK(fitting_ideal(Rx, free2, 1).is_zero_ideal(Rx));
    CHECK(fitting_ideal(Rx, free2, 2).is_unit_ideal(Rx));

    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingCtx& Rn = node.fixture.ctx;
    const ModulePresentation& Mx = *node.find_module("Mx");
    IdealHandle f0 = fitting_ideal(Rn, Mx, 0);
    CHECK_FALSE(f0.is_zero_ideal(Rn));
    CHECK_FALSE(f0.is_unit_ideal(Rn));
    CHECK(gb_str(Rn, f0) == "x;");
}

TEST_CASE("annihilators and colons") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingCtx& R = node.fixture.ctx;
    CHECK(gb_str(R, annihilator(R, *node.find_module("Mx"))) == "x;");

    FixtureDocument tsq = load_fixture(fx("tsq.fx"));
    const RingCtx& Rt = tsq.fixture.ctx;
    PresentedSubmodule K = colon_submodule(Rt, ModulePresentation::free_module(1),
                                           H(Rt, {"t"}));
    // (0 : (t)) in QQ[t]/(t^2) is (t): one generator t
    REQUIRE(K.embedding.size() == 1);
    CHECK(to_string(Rt.ring, K.embedding[0].c[0]) == "t");

    IdealHandle m0 = node.fixture.find_prime("m0")->ideal;
    PresentedSubmodule Z = colon_submodule(R, ModulePresentation::free_module(1), m0);
    CHECK(module_is_zero(R, Z.pres));
}

TEST_CASE("torsion analysis over reduced fixtures") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingFixture& F = node.fixture;

    TorsionAnalysis tf = torsion_analysis(F, *node.find_module("Mx"));
    REQUIRE(tf.applicable);
    CHECK(tf.torsion_free);

    TorsionAnalysis tt = torsion_analysis(F, *node.find_module("Mxmy"));
    REQUIRE(tt.applicable);
    CHECK_FALSE(tt.torsion_free);
    // node/(x-y) is entirely torsion: the class of 1 is a torsion generator
    CHECK_FALSE(module_is_zero(F.ctx, tt.torsion_module));
    bool has_unit_class = false;
    for (auto& g : tt.torsion_gens)
        if (to_string(F.ring(), g.c[0]) == "1") has_unit_class = true;
    CHECK(has_unit_class);

    CHECK(torsion_analysis(F, ModulePresentation::free_module(2)).torsion_free);

    FixtureDocument tsq = load_fixture(fx("tsq.fx"));
    TorsionAnalysis bad = torsion_analysis(tsq.fixture, *tsq.find_module("Mt"));
    CHECK_FALSE(bad.applicable);
    CHECK(bad.failure.find("HYPOTHESIS_VIOLATION") != std::string::npos);
}

TEST_CASE("T(M/T(M)) = 0 and torsion generators are killed by certified nzds") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingFixture& F = node.fixture;
    const RingCtx& R = F.ctx;
    for (auto label : {"Mx", "Mxmy", "My", "MR"}) {
        const ModulePresentation& M = *node.find_module(label);
        TorsionAnalysis ta = torsion_analysis(F, M);
        REQUIRE(ta.applicable);
        ModulePresentation quot = quotient_presentation(R, M, ta.torsion_gens);
        TorsionAnalysis again = torsion_analysis(F, quot);
        REQUIRE(again.applicable);
        CHECK(again.torsion_free);
        // each torsion generator admits a certified non-zerodivisor annihilating it
        GroebnerBasis mgb = relation_gb(R, M);
        for (auto& g : ta.torsion_gens) {
            bool witnessed = false;
            for (auto cand : {"x - y", "x + y", "x - 1", "y - 1", "x + y - 1"}) {
                Polynomial w = P(R, cand);
                if (is_nonzerodivisor(F, w) != Verdict3::True) continue;
                if (normal_form(R.ring, R.mod_order(), vmul(R.ring, g, w), mgb.elems).is_zero()) {
                    witnessed = true;
                    break;
                }
            }
            CHECK(witnessed);
        }
    }
}

TEST_CASE("ass membership over the node") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingCtx& R = node.fixture.ctx;
    IdealHandle px = node.fixture.find_prime("p_x")->ideal;
    IdealHandle m0 = node.fixture.find_prime("m0")->ideal;
    ModulePresentation MR = ModulePresentation::free_module(1);
    CHECK(ass_membership(R, px, MR));
    CHECK_FALSE(ass_membership(R, m0, MR));
    CHECK(ass_membership(R, px, *node.find_module("Mx")));
    // membership forces a nonzero colon
    PresentedSubmodule K = colon_submodule(R, MR, px);
    CHECK_FALSE(module_is_zero(R, K.pres));
}

TEST_CASE("fitting ideals are presentation invariants") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingCtx& R = node.fixture.ctx;
    std::mt19937 rng(2718);
    for (auto label : {"Mx", "Mxmy"}) {
        const ModulePresentation& M = *node.find_module(label);
        std::vector<IdealHandle> reference;
        for (size_t j = 0; j <= M.rank; ++j) reference.push_back(fitting_ideal(R, M, j));
        for (int trial = 0; trial < 10; ++trial) {
            ModulePresentation mut = M;
            // random column operation: add a multiple of one column to another
            if (mut.relations.size() >= 2) {
                size_t a = rng() % mut.relations.size(), b = rng() % mut.relations.size();
                if (a != b)
                    mut.relations[a] = vadd(R.ring, mut.relations[a],
                                            vmul(R.ring, mut.relations[b], P(R, "x + 1")));
            }
            // adjoin a trivial generator with its trivial relation
            ModulePresentation padded;
            padded.rank = mut.rank + 1;
            for (auto& col : mut.relations) {
                VecPoly v = VecPoly::zero(padded.rank);
                for (size_t i = 0; i < mut.rank; ++i) v.c[i] = col.c[i];
                padded.relations.push_back(std::move(v));
            }
            VecPoly trivial = VecPoly::zero(padded.rank);
            trivial.c[mut.rank] = Polynomial::one(R.ring);
            padded.relations.push_back(trivial);
            // a redundant duplicate column changes nothing either
            if (!padded.relations.empty()) padded.relations.push_back(padded.relations.front());
            for (size_t j = 0; j <= M.rank; ++j) {
                // Fitting ideals do not see the presentation, only the module
                IdealHandle fit = fitting_ideal(R, padded, j);
                CHECK(ideal_equal(R, fit, reference[j]));
            }
        }
    }
}

TEST_CASE("Fitt0 within the annihilator within its radical") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingCtx& R = node.fixture.ctx;
    for (auto label : {"Mx", "My", "Mxmy"}) {
        const ModulePresentation& M = *node.find_module(label);
        IdealHandle f0 = fitting_ideal(R, M, 0);
        IdealHandle ann = annihilator(R, M);
        for (auto& g : f0.gens()) CHECK(ann.contains(R, g));
        for (auto& g : ann.gens()) CHECK(radical_member(R, g, f0));
    }
}

TEST_CASE("tensor is symmetric at the level of Fitting ideals") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingCtx& R = node.fixture.ctx;
    std::vector<const ModulePresentation*> mods = {node.find_module("Mx"),
                                                   node.find_module("Mxmy"),
                                                   node.find_module("Mfree2")};
    for (auto* A : mods)
        for (auto* B : mods) {
            ModulePresentation AB = tensor(R, *A, *B);
            ModulePresentation BA = tensor(R, *B, *A);
            for (size_t j = 0; j <= AB.rank; ++j)
                CHECK(ideal_equal(R, fitting_ideal(R, AB, j), fitting_ideal(R, BA, j)));
        }
}

TEST_CASE("kernel_of_map validates compatibility and computes kernels") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingCtx& R = node.fixture.ctx;
    const ModulePresentation& Mx = *node.find_module("Mx");
    // multiplication by y on node/(x) is injective (it is k[y])
    ModuleMap by_y{Mx, Mx, {VecPoly{{P(R, "y")}}}};
    CHECK(map_compatible(R, by_y));
    CHECK(module_is_zero(R, kernel_of_map(R, by_y).pres));
    // multiplication by x is the zero map on node/(x): kernel is everything
    ModuleMap by_x{Mx, Mx, {VecPoly{{P(R, "x")}}}};
    PresentedSubmodule K = kernel_of_map(R, by_x);
    CHECK_FALSE(module_is_zero(R, K.pres));
}
