#ifndef MODCRIT_MONOMIAL_HPP
#define MODCRIT_MONOMIAL_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace modcrit {

/// Exponent vector; length always equals the ambient variable count.
struct Monomial {
    std::vector<uint32_t> e;

    static Monomial unit(size_t nvars) { return Monomial{std::vector<uint32_t>(nvars, 0)}; }
    static Monomial var(size_t nvars, size_t i, uint32_t exp = 1) {
        Monomial m = unit(nvars);
        m.e[i] = exp;
        return m;
    }

    size_t nvars() const { return e.size(); }
    uint64_t degree() const { return std::accumulate(e.begin(), e.end(), uint64_t{0}); }
    uint64_t degree_range(size_t lo, size_t hi) const {
        uint64_t d = 0;
        for (size_t i = lo; i < hi && i < e.size(); ++i) d += e[i];
        return d;
    }
    bool is_unit() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
    return r;
}

inline bool divides(const Monomial& a, const Monomial& b) {
    // a | b
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

inline Monomial quotient(const Monomial& b, const Monomial& a) {
    // b / a, assuming a | b
    Monomial r = b;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] -= a.e[i];
    return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (size_t i = 0; i < r.e.size(); ++i)
        if (b.e[i] > r.e[i]) r.e[i] = b.e[i];
    return r;
}

inline Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (size_t i = 0; i < r.e.size(); ++i)
        if (b.e[i] < r.e[i]) r.e[i] = b.e[i];
    return r;
}

/// Term orders. Block orders compare grevlex on the leading variable block
/// first (elimination of the first `split` variables), then grevlex on the rest.
struct MonomialOrder {
    enum class Kind { Lex, Grevlex, Block };
    Kind kind = Kind::Grevlex;
    size_t split = 0;

    static MonomialOrder lex() { return {Kind::Lex, 0}; }
    static MonomialOrder grevlex() { return {Kind::Grevlex, 0}; }
    static MonomialOrder block(size_t split) { return {Kind::Block, split}; }

    bool operator==(const MonomialOrder& o) const { return kind == o.kind && split == o.split; }
};

/// Returns <0, 0, >0 as a is smaller, equal, greater than b.
int cmp(const MonomialOrder& ord, const Monomial& a, const Monomial& b);

inline bool greater(const MonomialOrder& ord, const Monomial& a, const Monomial& b) {
    return cmp(ord, a, b) > 0;
}

}  // namespace modcrit

#endif
