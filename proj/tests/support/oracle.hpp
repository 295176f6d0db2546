// Independent degree-bounded linear-algebra oracles used to validate the
// Groebner kernel.  Everything here works on dense coefficient vectors and
// never calls the division/Buchberger machinery it checks.
#ifndef MODCRIT_TESTS_ORACLE_HPP
#define MODCRIT_TESTS_ORACLE_HPP

#include <map>
#include <optional>
#include <vector>

#include "modcrit/polynomial.hpp"
#include "modcrit/vecpoly.hpp"

namespace modcrit::oracle {

inline void collect_monomials(size_t nvars, uint64_t maxdeg, Monomial& cur, size_t pos,
                              std::vector<Monomial>& out) {
    if (pos == nvars) {
        out.push_back(cur);
        return;
    }
    cur.e[pos] = 0;
    uint64_t used = cur.degree();  // degree of the other positions
    for (uint32_t e = 0; used + e <= maxdeg; ++e) {
        cur.e[pos] = e;
        collect_monomials(nvars, maxdeg, cur, pos + 1, out);
    }
    cur.e[pos] = 0;
}

inline std::vector<Monomial> monomials_up_to(const PolyRing& R, uint64_t maxdeg) {
    std::vector<Monomial> out;
    Monomial cur = Monomial::unit(R.nvars());
    collect_monomials(R.nvars(), maxdeg, cur, 0, out);
    return out;
}

struct DenseIndex {
    std::map<std::vector<uint32_t>, size_t> index;
    size_t size = 0;

    explicit DenseIndex(const std::vector<Monomial>& monos) {
        for (auto& m : monos) index.emplace(m.e, size++);
    }
    std::optional<size_t> find(const Monomial& m) const {
        auto it = index.find(m.e);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

/// Writes f into a dense coefficient vector; returns false if a term of f
/// falls outside the index.
inline bool densify(const FieldSpec& field, const DenseIndex& idx, const Polynomial& f,
                    std::vector<Scalar>& out) {
    out.assign(idx.size, Scalar::zero(field));
    for (auto& t : f.terms()) {
        auto pos = idx.find(t.m);
        if (!pos) return false;
        out[*pos] = t.c;
    }
    return true;
}

/// Gaussian elimination: is target in the span of the columns?
inline bool in_span(const FieldSpec& field, std::vector<std::vector<Scalar>> cols,
                    std::vector<Scalar> target) {
    (void)field;
    size_t rows = target.size();
    size_t prow = 0;  // pivots occupy rows [0, prow)
    for (size_t c = 0; c < cols.size() && prow < rows; ++c) {
        size_t pr = prow;
        while (pr < rows && cols[c][pr].is_zero()) ++pr;
        if (pr == rows) continue;
        for (auto& col : cols) std::swap(col[prow], col[pr]);
        std::swap(target[prow], target[pr]);
        Scalar inv = cols[c][prow].inverse();
        for (size_t r = 0; r < rows; ++r) {
            if (r == prow || cols[c][r].is_zero()) continue;
            Scalar factor = cols[c][r] * inv;
            for (size_t c2 = c; c2 < cols.size(); ++c2)
                cols[c2][r] = cols[c2][r] - factor * cols[c2][prow];
            target[r] = target[r] - factor * target[prow];
        }
        ++prow;
    }
    for (size_t r = prow; r < rows; ++r)
        if (!target[r].is_zero()) return false;
    return true;
}

/// Membership of f in span{m * g_i : deg(m g_i) <= D} over the coefficient field.
inline bool brute_membership(const PolyRing& R, const Polynomial& f,
                             const std::vector<Polynomial>& gens, uint64_t D) {
    std::vector<Monomial> monos = monomials_up_to(R, D);
    DenseIndex idx(monos);
    std::vector<std::vector<Scalar>> cols;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        uint64_t dg = g.degree();
        if (dg > D) continue;
        for (auto& m : monomials_up_to(R, D - dg)) {
            Polynomial prod = mul_term(R, g, m, Scalar::one(R.field));
            std::vector<Scalar> col;
            if (densify(R.field, idx, prod, col)) cols.push_back(std::move(col));
        }
    }
    std::vector<Scalar> target;
    if (!densify(R.field, idx, f, target)) return false;
    return in_span(R.field, std::move(cols), std::move(target));
}

/// Kernel basis of the map (u_i) -> sum u_i v_i, coefficients of the u_i
/// bounded by total degree D.  Returned as vectors over the generators.
inline std::vector<VecPoly> brute_syzygies(const PolyRing& R, size_t rank,
                                           const std::vector<VecPoly>& vectors, uint64_t D) {
    uint64_t target_deg = D;
    for (auto& v : vectors)
        for (auto& p : v.c) target_deg = std::max(target_deg, D + p.degree());
    std::vector<Monomial> target_monos = monomials_up_to(R, target_deg);
    DenseIndex idx(target_monos);
    std::vector<Monomial> coef_monos = monomials_up_to(R, D);

    struct Unknown {
        size_t vec;
        Monomial m;
    };
    std::vector<Unknown> unknowns;
    std::vector<std::vector<Scalar>> cols;
    for (size_t i = 0; i < vectors.size(); ++i) {
        for (auto& m : coef_monos) {
            std::vector<Scalar> col(idx.size * rank, Scalar::zero(R.field));
            for (size_t comp = 0; comp < rank; ++comp) {
                Polynomial prod = mul_term(R, vectors[i].c[comp], m, Scalar::one(R.field));
                std::vector<Scalar> dense;
                if (!densify(R.field, idx, prod, dense)) {
                    col.clear();
                    break;
                }
                for (size_t k = 0; k < idx.size; ++k) col[comp * idx.size + k] = dense[k];
            }
            if (col.empty()) continue;
            unknowns.push_back({i, m});
            cols.push_back(std::move(col));
        }
    }
    // kernel of the column matrix by Gaussian elimination on the transpose
    size_t ncols = cols.size(), nrows = idx.size * rank;
    std::vector<ssize_t> pivot_col_of_row(nrows, -1);
    std::vector<size_t> pivot_cols;
    std::vector<std::vector<Scalar>> work = cols;
    std::vector<std::vector<Scalar>> record(ncols);
    for (size_t c = 0; c < ncols; ++c) {
        record[c].assign(ncols, Scalar::zero(R.field));
        record[c][c] = Scalar::one(R.field);
    }
    std::vector<VecPoly> kernel;
    for (size_t c = 0; c < ncols; ++c) {
        // reduce column c by earlier pivots
        for (size_t r = 0; r < nrows; ++r) {
            if (pivot_col_of_row[r] < 0 || work[c][r].is_zero()) continue;
            size_t pc = static_cast<size_t>(pivot_col_of_row[r]);
            Scalar factor = work[c][r] * work[pc][r].inverse();
            for (size_t rr = 0; rr < nrows; ++rr)
                work[c][rr] = work[c][rr] - factor * work[pc][rr];
            for (size_t cc = 0; cc < ncols; ++cc)
                record[c][cc] = record[c][cc] - factor * record[pc][cc];
        }
        size_t r = 0;
        while (r < nrows && work[c][r].is_zero()) ++r;
        if (r < nrows) {
            pivot_col_of_row[r] = static_cast<ssize_t>(c);
        } else {
            // a kernel vector: c-th combo of the generators vanishes
            VecPoly u = VecPoly::zero(vectors.size());
            for (size_t cc = 0; cc < ncols; ++cc) {
                if (record[c][cc].is_zero()) continue;
                u.c[unknowns[cc].vec] =
                    add(R, u.c[unknowns[cc].vec],
                        Polynomial::term(R, unknowns[cc].m, record[c][cc]));
            }
            kernel.push_back(std::move(u));
        }
    }
    return kernel;
}

}  // namespace modcrit::oracle

#endif
