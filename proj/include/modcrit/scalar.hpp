#ifndef MODCRIT_SCALAR_HPP
#define MODCRIT_SCALAR_HPP

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace modcrit {

/// Coefficient field: characteristic 0 means QQ, otherwise the prime field F_p.
struct FieldSpec {
    uint32_t p = 0;

    bool is_rational() const { return p == 0; }
    bool operator==(const FieldSpec& o) const { return p == o.p; }
    bool operator!=(const FieldSpec& o) const { return p != o.p; }
};

bool is_prime_u32(uint32_t n);

/// Exact field element: a rational in lowest terms (char 0) or a residue in [0, p).
class Scalar {
public:
    Scalar() = default;

    static Scalar rational(mpq_class v) {
        Scalar s;
        s.p_ = 0;
        v.canonicalize();
        s.q_ = std::move(v);
        return s;
    }
    static Scalar residue(uint32_t p, uint64_t v) {
        assert(p > 0);
        Scalar s;
        s.p_ = p;
        s.r_ = v % p;
        return s;
    }
    static Scalar zero(const FieldSpec& f) {
        return f.is_rational() ? rational(0) : residue(f.p, 0);
    }
    static Scalar one(const FieldSpec& f) {
        return f.is_rational() ? rational(1) : residue(f.p, 1);
    }
    static Scalar from_int(const FieldSpec& f, long v) {
        if (f.is_rational()) return rational(mpq_class(v));
        long m = v % static_cast<long>(f.p);
        if (m < 0) m += f.p;
        return residue(f.p, static_cast<uint64_t>(m));
    }

    uint32_t characteristic() const { return p_; }
    bool is_zero() const { return p_ ? r_ == 0 : q_ == 0; }
    bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }

    const mpq_class& rat() const {
        assert(p_ == 0);
        return q_;
    }
    uint64_t res() const {
        assert(p_ > 0);
        return r_;
    }

    Scalar operator-() const {
        if (p_ == 0) return rational(-q_);
        return residue(p_, r_ == 0 ? 0 : p_ - r_);
    }
    Scalar operator+(const Scalar& o) const {
        check(o);
        if (p_ == 0) return rational(q_ + o.q_);
        return residue(p_, r_ + o.r_);
    }
    Scalar operator-(const Scalar& o) const {
        check(o);
        if (p_ == 0) return rational(q_ - o.q_);
        return residue(p_, r_ + (p_ - o.r_));
    }
    Scalar operator*(const Scalar& o) const {
        check(o);
        if (p_ == 0) return rational(q_ * o.q_);
        return residue(p_, r_ * o.r_);  // p < 2^31, so the product fits in 64 bits
    }
    Scalar inverse() const;
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    bool operator==(const Scalar& o) const {
        check(o);
        return p_ ? r_ == o.r_ : q_ == o.q_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical text: "n" or "n/d" with d > 0 for QQ, the residue for F_p.
    std::string str() const;

private:
    void check(const Scalar& o) const {
        if (p_ != o.p_) throw std::invalid_argument("scalar field mismatch");
    }

    uint32_t p_ = 0;
    uint64_t r_ = 0;
    mpq_class q_;
};

}  // namespace modcrit

#endif
