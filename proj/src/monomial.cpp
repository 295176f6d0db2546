#include "modcrit/monomial.hpp"

#include <cassert>

namespace modcrit {

namespace {

int cmp_lex(const Monomial& a, const Monomial& b, size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
    }
    return 0;
}

int cmp_grevlex(const Monomial& a, const Monomial& b, size_t lo, size_t hi) {
    uint64_t da = a.degree_range(lo, hi), db = b.degree_range(lo, hi);
    if (da != db) return da < db ? -1 : 1;
    // ties: the last variable with differing exponent, smaller exponent wins
    for (size_t i = hi; i-- > lo;) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
}

}  // namespace

int cmp(const MonomialOrder& ord, const Monomial& a, const Monomial& b) {
    assert(a.nvars() == b.nvars());
    size_t n = a.nvars();
    switch (ord.kind) {
        case MonomialOrder::Kind::Lex:
            return cmp_lex(a, b, 0, n);
        case MonomialOrder::Kind::Grevlex:
            return cmp_grevlex(a, b, 0, n);
        case MonomialOrder::Kind::Block: {
            size_t s = ord.split < n ? ord.split : n;
            if (int c = cmp_grevlex(a, b, 0, s)) return c;
            return cmp_grevlex(a, b, s, n);
        }
    }
    return 0;
}

}  // namespace modcrit
