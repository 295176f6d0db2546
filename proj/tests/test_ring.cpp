#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modcrit/fixture.hpp"
#include "modcrit/ring.hpp"
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

RingCtx qxy() {
    return RingCtx(PolyRing{FieldSpec{0}, {"x", "y"}, MonomialOrder::grevlex()}, {});
}

std::string gb_str(const RingCtx& R, const IdealHandle& h) {
    std::string out;
    for (auto& e : h.gb(R).elems) out += to_string(R.ring, e.c[0]) + ";";
    return out;
}

}  // namespace

TEST_CASE("ideal algebra basics over QQ[x,y]") {
    RingCtx R = qxy();
    CHECK(gb_str(R, ideal_intersect(R, H(R, {"x"}), H(R, {"y"}))) == "x*y;");
    CHECK(gb_str(R, ideal_quotient(R, H(R, {"x*y"}), H(R, {"x"}))) == "y;");
    CHECK(radical_member(R, P(R, "x"), H(R, {"x^2"})));
    CHECK_FALSE(radical_member(R, P(R, "y"), H(R, {"x^2"})));
    CHECK(gb_str(R, ideal_sum(R, H(R, {"x"}), H(R, {"y"}))) == "x;y;");
    CHECK(gb_str(R, ideal_product(R, H(R, {"x", "y"}), H(R, {"x"}))) == "x^2;x*y;");
    IdealHandle a = H(R, {"x^2*y"});
    CHECK(gb_str(R, ideal_saturate(R, a, P(R, "x"))) == "y;");
    IdealHandle tw = H(R, {"y - x^2", "x*y"});
    IdealHandle el = ideal_eliminate(R, tw, {0});
    CHECK(gb_str(R, el) == "y^2;");
}

TEST_CASE("ideal algebra laws on random F2 ideals") {
    RingCtx R(PolyRing{FieldSpec{2}, {"x", "y", "z"}, MonomialOrder::grevlex()}, {});
    std::mt19937 rng(424242);
    auto monos = oracle::monomials_up_to(R.ring, 3);
    auto random_poly = [&] {
        std::vector<Term> t;
        std::uniform_int_distribution<size_t> pick(0, monos.size() - 1);
        for (int i = 0; i < 3; ++i) t.push_back({monos[pick(rng)], Scalar::one(R.ring.field)});
        return Polynomial::from_terms(R.ring, std::move(t));
    };
    for (int trial = 0; trial < 10; ++trial) {
        IdealHandle A({random_poly(), random_poly()});
        IdealHandle B({random_poly()});
        IdealHandle AB = ideal_intersect(R, A, B);
        for (auto& g : AB.gens()) {
            CHECK(A.contains(R, g));
            CHECK(B.contains(R, g));
        }
        IdealHandle Q = ideal_quotient(R, A, B);
        for (auto& q : Q.gens())
            for (auto& b : B.gens()) CHECK(A.contains(R, mul(R.ring, q, b)));
        if (!B.gens().empty()) {
            IdealHandle sat = ideal_saturate(R, A, B.gens()[0]);
            IdealHandle again = ideal_quotient(R, sat, IdealHandle({B.gens()[0]}));
            CHECK(ideal_equal(R, sat, again));
        }
        IdealHandle el = ideal_eliminate(R, A, {0});
        for (auto& g : el.gens()) {
            for (auto& t : g.terms()) CHECK(t.m.e[0] == 0);
            CHECK(A.contains(R, g));
        }
    }
}

TEST_CASE("contract_ideal computes preimages along variable images") {
    RingCtx R(PolyRing{FieldSpec{0}, {"x"}, MonomialOrder::grevlex()}, {});
    auto pre = contract_ideal(R, R, {P(R, "x^2")}, {P(R, "x")});
    IdealHandle h = IdealHandle::reduced(R, pre);
    CHECK(gb_str(R, h) == "x;");
    // the shift x -> x+1 pulls (x) back to (x - 1): f(x+1) ∈ (x) iff f(1) = 0
    auto pre2 = contract_ideal(R, R, {P(R, "x + 1")}, {P(R, "x")});
    IdealHandle h2 = IdealHandle::reduced(R, pre2);
    CHECK(gb_str(R, h2) == "x - 1;");
}

TEST_CASE("fixture validation: corpus passes, corruptions are refuted") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    ValidationReport rep = validate_fixture(node.fixture);
    CHECK(rep.valid());
    CHECK(rep.reduced == CheckStatus::Certified);

    FixtureDocument bad = load_fixture(fx("mutations/node_bad_min.fx"));
    ValidationReport brep = validate_fixture(bad.fixture);
    CHECK_FALSE(brep.valid());

    // t^2 fixture declared reduced must be refuted with the nilpotent witness
    std::string text = serialize_fixture(load_fixture(fx("tsq.fx")));
    auto pos = text.find("reduced: false");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 14, "reduced: true ");
    FixtureDocument lying = parse_fixture(text);
    ValidationReport lrep = validate_fixture(lying.fixture);
    CHECK_FALSE(lrep.valid());
    bool saw_witness = false;
    for (auto& c : lrep.checks)
        if (c.name == "reduced" && c.detail.find("t") != std::string::npos) saw_witness = true;
    CHECK(saw_witness);

    // a declared maximal ideal missing the curve fails containment
    FixtureDocument cusp = load_fixture(fx("cusp_f2.fx"));
    std::string ctext = serialize_fixture(cusp);
    auto mpos = ctext.find("m1: [x + 1, y + 1]");
    REQUIRE(mpos != std::string::npos);
    ctext.replace(mpos, 18, "m1: [x + 1, y]    ");
    FixtureDocument corrupt = parse_fixture(ctext);
    ValidationReport crep = validate_fixture(corrupt.fixture);
    CHECK_FALSE(crep.valid());
}

TEST_CASE("non-zerodivisor detection against declared primes") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingFixture& F = node.fixture;
    CHECK(is_nonzerodivisor(F, P(F.ctx, "x + y")) == Verdict3::True);
    CHECK(is_nonzerodivisor(F, P(F.ctx, "x")) == Verdict3::False);
    CHECK(is_nonzerodivisor(F, P(F.ctx, "x*y")) == Verdict3::False);  // zero in R

    FixtureDocument emb = load_fixture(fx("embedded_q.fx"));
    CHECK(is_nonzerodivisor(emb.fixture, P(emb.fixture.ctx, "y + 1")) == Verdict3::True);
    CHECK(is_nonzerodivisor(emb.fixture, P(emb.fixture.ctx, "y")) == Verdict3::False);

    std::string text = serialize_fixture(node);
    auto pos = text.find("ass_complete: true");
    text.replace(pos, 18, "ass_complete: false");
    FixtureDocument partial = parse_fixture(text);
    CHECK(is_nonzerodivisor(partial.fixture, P(partial.fixture.ctx, "x + y")) ==
          Verdict3::Undecidable);
}

TEST_CASE("nzd agrees with the degree-bounded multiplication kernel") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingFixture& F = node.fixture;
    const RingCtx& R = F.ctx;
    auto kernel_trivial = [&](const Polynomial& w, uint64_t D) {
        auto monos = oracle::monomials_up_to(R.ring, D);
        std::vector<Polynomial> std_monos;
        for (auto& m : monos) {
            Polynomial nf = R.reduce(Polynomial::term(R.ring, m, Scalar::one(R.ring.field)));
            if (!nf.is_zero()) std_monos.push_back(nf);
        }
        auto big = oracle::monomials_up_to(R.ring, D + w.degree());
        oracle::DenseIndex idx(big);
        std::vector<std::vector<Scalar>> work;
        size_t rank = 0;
        for (auto& z : std_monos) {
            std::vector<Scalar> col;
            REQUIRE(oracle::densify(R.ring.field, idx, R.reduce(mul(R.ring, w, z)), col));
            for (auto& piv : work) {
                size_t pr = 0;
                while (pr < piv.size() && piv[pr].is_zero()) ++pr;
                if (pr == piv.size() || col[pr].is_zero()) continue;
                Scalar factor = col[pr] * piv[pr].inverse();
                for (size_t r = 0; r < col.size(); ++r) col[r] = col[r] - factor * piv[r];
            }
            bool nonzero = false;
            for (auto& c : col)
                if (!c.is_zero()) nonzero = true;
            if (nonzero) {
                work.push_back(std::move(col));
                ++rank;
            }
        }
        return rank == std_monos.size();
    };
    CHECK(kernel_trivial(P(R, "x + y"), 3));
    CHECK_FALSE(kernel_trivial(P(R, "x"), 3));
    CHECK((is_nonzerodivisor(F, P(R, "x + y")) == Verdict3::True) ==
          kernel_trivial(P(R, "x + y"), 3));
}

TEST_CASE("claim 1 witnesses: node, domain, symmetric node case") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingFixture& F = node.fixture;
    const RingCtx& R = F.ctx;
    const MultiplicativeSet& Wx = *node.find_multset("Wx");
    const MultiplicativeSet& Wy = *node.find_multset("Wy");

    Claim1Witness w1 = claim1_witness(F, Wx, P(R, "x"));
    REQUIRE(w1.found);
    CHECK(to_string(R.ring, w1.w) == "x");
    CHECK(to_string(R.ring, w1.r) == "y");
    CHECK(to_string(R.ring, w1.wc_plus_r) == "x^2 + y");
    CHECK(R.is_zero(mul(R.ring, w1.w, w1.r)));
    CHECK(is_nonzerodivisor(F, w1.wc_plus_r) == Verdict3::True);
    // the recorded monoid word multiplies out to w
    Polynomial prod = Polynomial::one(R.ring);
    for (size_t i = 0; i < Wx.gens.size(); ++i)
        prod = mul(R.ring, prod, pow(R.ring, Wx.gens[i], w1.monoid_word[i]));
    CHECK(R.reduce(prod) == w1.w);

    Claim1Witness w2 = claim1_witness(F, Wy, P(R, "y"));
    REQUIRE(w2.found);
    CHECK(to_string(R.ring, w2.w) == "y");
    CHECK(to_string(R.ring, w2.r) == "x");

    FixtureDocument dom = load_fixture(fx("qxy.fx"));
    Claim1Witness w3 =
        claim1_witness(dom.fixture, *dom.find_multset("Wx"), P(dom.fixture.ctx, "1"));
    REQUIRE(w3.found);
    CHECK(to_string(dom.fixture.ring(), w3.w) == "x");
    CHECK(w3.r.is_zero());

    // precondition violation: c inside an X2 prime is rejected
    Claim1Witness bad = claim1_witness(F, Wx, P(R, "y"));
    CHECK_FALSE(bad.found);
    CHECK(bad.failure.find("zero-divisor") != std::string::npos);
}

TEST_CASE("claim 2 certifies the invertibility identity") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingCtx& R = node.fixture.ctx;
    Claim2Certificate c2 = claim2_witness(node.fixture, *node.find_multset("Wx"), P(R, "x"));
    REQUIRE(c2.ok);
    // x^2 * x = x(x^2 + y) modulo xy
    CHECK(to_string(R.ring, c2.lhs) == "x^3");
    CHECK(c2.lhs == c2.rhs);

    FixtureDocument dom = load_fixture(fx("qxy.fx"));
    Claim2Certificate d2 =
        claim2_witness(dom.fixture, *dom.find_multset("Wx"), P(dom.fixture.ctx, "1"));
    REQUIRE(d2.ok);
    CHECK(to_string(dom.fixture.ring(), d2.lhs) == "x^2");

    Claim2Certificate n2 = claim2_witness(node.fixture, *node.find_multset("Wy"), P(R, "y"));
    REQUIRE(n2.ok);
    CHECK(to_string(R.ring, n2.lhs) == "y^3");
}

TEST_CASE("claim 1 on the embedded fixture uses the degenerate route") {
    FixtureDocument emb = load_fixture(fx("embedded_q.fx"));
    const RingCtx& R = emb.fixture.ctx;
    Claim1Witness w = claim1_witness(emb.fixture, *emb.find_multset("Wz"), P(R, "1"));
    REQUIRE(w.found);
    CHECK_FALSE(w.no_embedded_hypothesis);
    CHECK(R.is_zero(mul(R.ring, w.w, w.r)));
    CHECK(is_nonzerodivisor(emb.fixture, w.wc_plus_r) == Verdict3::True);
}
