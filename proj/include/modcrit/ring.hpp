#ifndef MODCRIT_RING_HPP
#define MODCRIT_RING_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modcrit/cache.hpp"
#include "modcrit/groebner.hpp"

namespace modcrit {

/// Polynomial ring together with the defining ideal of an affine quotient.
/// The computational substrate shared by fixtures and derived quotients.
class RingCtx {
public:
    RingCtx() : memo_(std::make_shared<Memo>()) {}
    RingCtx(PolyRing ring, std::vector<Polynomial> ideal)
        : ring(std::move(ring)), ideal(std::move(ideal)), memo_(std::make_shared<Memo>()) {}

    PolyRing ring;
    std::vector<Polynomial> ideal;

    const GroebnerBasis& ideal_gb() const;
    Polynomial reduce(const Polynomial& f) const;
    bool is_zero(const Polynomial& f) const { return reduce(f).is_zero(); }
    ModuleOrder mod_order() const { return ModuleOrder{ring.order, 0}; }

private:
    struct Memo {
        std::mutex mu;
        std::optional<GroebnerBasis> igb;
    };
    std::shared_ptr<Memo> memo_;
};

/// Finitely generated ideal of the quotient ring, with the reduced Groebner
/// basis of (generators + defining ideal) cached in the ambient polynomial
/// ring.  Two handles are equal as ideals iff their bases coincide.
class IdealHandle {
public:
    IdealHandle() : memo_(std::make_shared<Memo>()) {}
    explicit IdealHandle(std::vector<Polynomial> gens)
        : gens_(std::move(gens)), memo_(std::make_shared<Memo>()) {}

    static IdealHandle reduced(const RingCtx& R, std::vector<Polynomial> gens);

    const std::vector<Polynomial>& gens() const { return gens_; }
    const GroebnerBasis& gb(const RingCtx& R) const;

    bool contains(const RingCtx& R, const Polynomial& f) const {
        return ideal_member(R.ring, f, gb(R));
    }
    bool is_zero_ideal(const RingCtx& R) const;
    bool is_unit_ideal(const RingCtx& R) const;

private:
    struct Memo {
        std::mutex mu;
        std::optional<GroebnerBasis> gb;
    };
    std::vector<Polynomial> gens_;
    std::shared_ptr<Memo> memo_;
};

bool ideal_equal(const RingCtx& R, const IdealHandle& a, const IdealHandle& b);

IdealHandle ideal_sum(const RingCtx& R, const IdealHandle& a, const IdealHandle& b);
IdealHandle ideal_product(const RingCtx& R, const IdealHandle& a, const IdealHandle& b);
IdealHandle ideal_intersect(const RingCtx& R, const IdealHandle& a, const IdealHandle& b);
/// (a : b) computed by the elimination/colon method.
IdealHandle ideal_quotient(const RingCtx& R, const IdealHandle& a, const IdealHandle& b);
/// (a : f^inf) by iterated colon until stable.
IdealHandle ideal_saturate(const RingCtx& R, const IdealHandle& a, const Polynomial& f);
/// Generators of a ∩ k[vars outside `eliminate`], as an ideal of the same ring.
IdealHandle ideal_eliminate(const RingCtx& R, const IdealHandle& a, const std::vector<size_t>& eliminate);
/// f ∈ √a, by the auxiliary-variable trick on 1 - t*f.
bool radical_member(const RingCtx& R, const Polynomial& f, const IdealHandle& a);

/// Contraction of the target ideal (gens + target defining ideal) along the
/// ring map source -> target sending source variable i to images[i].
std::vector<Polynomial> contract_ideal(const RingCtx& source, const RingCtx& target,
                                       const std::vector<Polynomial>& images,
                                       const std::vector<Polynomial>& target_ideal_gens);

/// --- fixtures ---

struct PrimeDecl {
    enum class Section { Ass, Max, Extra };
    std::string label;
    IdealHandle ideal;
    Section section = Section::Extra;
    bool minimal = false;
    bool maximal = false;
};

struct FixtureFlags {
    bool reduced = false;
    bool connected = false;
    bool no_embedded_primes = false;
    bool ass_complete = false;
    bool equidimensional = false;
    int codim = -1;  // undeclared when negative
};

struct RingFixture {
    RingCtx ctx;
    std::vector<PrimeDecl> primes;
    FixtureFlags flags;

    const PolyRing& ring() const { return ctx.ring; }
    const PrimeDecl* find_prime(const std::string& label) const;
    std::vector<const PrimeDecl*> ass_primes() const;
    std::vector<const PrimeDecl*> min_primes() const;
    std::vector<const PrimeDecl*> max_ideals() const;
};

struct MultiplicativeSet {
    std::string label;
    bool full_nzd = false;           // W = all non-zerodivisors
    bool contains_zero = false;      // explicit 0 ∈ W flag (zero localization)
    std::vector<Polynomial> gens;    // finitely generated mode
};

/// --- validation ---

enum class CheckStatus { Pass, Fail, Certified, Trusted, Refuted, Info };

std::string to_string(CheckStatus s);

struct ValidationCheck {
    std::string name;
    CheckStatus status;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    CheckStatus reduced = CheckStatus::Trusted;
    CheckStatus no_embedded = CheckStatus::Trusted;
    CheckStatus connected = CheckStatus::Trusted;

    bool valid() const;
};

ValidationReport validate_fixture(const RingFixture& F);

/// --- zero divisors and the constructive localization witnesses ---

enum class Verdict3 { True, False, Undecidable };

/// w avoids every declared associated prime.  Requires the ass_complete flag.
Verdict3 is_nonzerodivisor(const RingFixture& F, const Polynomial& w);

struct SearchBounds {
    size_t monoid_length = 4;    // max total degree of W-monoid words searched
    size_t nilpotency = 64;      // bound on n with (wr)^n = 0
    long coefficient_pool = 2;   // k-linear combinations use coefficients in [-pool, pool]
};

/// Witness for the prime-avoidance claim: w in the W-monoid and r with
/// w*r = 0 exactly and w*c + r a non-zerodivisor.  The monoid word for w is
/// recorded as generator exponents.
struct Claim1Witness {
    bool found = false;
    std::string failure;  // set when not found (reported as incompleteness)
    Polynomial w, r;
    std::vector<uint32_t> monoid_word;  // exponent per W generator
    size_t power = 1;                   // n with the original (w0 r0)^n = 0
    Polynomial wc_plus_r;
    /// The proof's hypothesis; when false the witness still stands on its own
    /// certificates (wr = 0 exactly, wc+r avoids every declared Ass prime).
    bool no_embedded_hypothesis = false;
};

Claim1Witness claim1_witness(const RingFixture& F, const MultiplicativeSet& W, const Polynomial& c,
                             const SearchBounds& bounds = {});

/// Certifies the invertibility identity w^2 c = w(wc + r) behind the
/// localization isomorphism W^{-1}Q(R) = Q(W^{-1}R).
struct Claim2Certificate {
    bool ok = false;
    std::string failure;
    Claim1Witness witness;
    Polynomial lhs, rhs;  // reduced forms of w^2 c and w(wc+r)
};

Claim2Certificate claim2_witness(const RingFixture& F, const MultiplicativeSet& W, const Polynomial& c,
                                 const SearchBounds& bounds = {});

}  // namespace modcrit

#endif
