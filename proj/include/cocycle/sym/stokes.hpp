#pragma once

#include <array>
#include <optional>
#include <set>

#include "cocycle/sym/calculus.hpp"

namespace cocycle::sym {

namespace detail {

/// Multilinearity signature: occurrence counts of A, x, y, z with the
/// d-variants folded onto their base. d preserves the signature (d omega =
/// omega omega only changes the omega count), so the Stokes span splits by
/// signature and only the target's signatures can contribute.
using Signature = std::array<int, 4>; // counts of A, x, y, z

inline Signature word_signature(const TraceWord& w)
{
    Signature s{0, 0, 0, 0};
    for (AtomId a : w.atoms) {
        switch (atom_base(a)) {
            case atom::A: ++s[0]; break;
            case atom::x: ++s[1]; break;
            case atom::y: ++s[2]; break;
            case atom::z: ++s[3]; break;
            default: break;
        }
    }
    return s;
}

inline void distinct_arrangements(std::vector<AtomId> multiset, std::set<TraceWord>& out)
{
    std::sort(multiset.begin(), multiset.end());
    do {
        auto [word, sign] = canonicalize_word(multiset);
        if (sign != 0 && !word.atoms.empty())
            out.insert(word);
    } while (std::next_permutation(multiset.begin(), multiset.end()));
}

} // namespace detail

/// All degree-(D-1) cyclic words, up to max_len atoms, whose signature
/// matches a signature present in the target expression. Their
/// differentials span the Stokes-exact subspace relevant to the target.
inline std::vector<TraceWord> exact_span_generators(const SymExpr& target, int max_len = 8)
{
    const int gen_degree = domain_degree(target.domain) - 1;
    std::set<detail::Signature> sigs;
    for (const auto& [w, c] : target.terms)
        sigs.insert(detail::word_signature(w));

    std::set<TraceWord> words;
    for (const auto& sig : sigs) {
        // variant choices per occurrence: A can appear as A (1) or dA (2),
        // a field as p (0) or dp (1)
        std::vector<AtomId> base_atoms;
        for (int k = 0; k < sig[0]; ++k)
            base_atoms.push_back(atom::A);
        for (int k = 0; k < sig[1]; ++k)
            base_atoms.push_back(atom::x);
        for (int k = 0; k < sig[2]; ++k)
            base_atoms.push_back(atom::y);
        for (int k = 0; k < sig[3]; ++k)
            base_atoms.push_back(atom::z);

        const std::size_t F = base_atoms.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << F); ++mask) {
            std::vector<AtomId> atoms;
            int deg = 0;
            for (std::size_t i = 0; i < F; ++i) {
                AtomId b = base_atoms[i];
                if (mask & (std::size_t(1) << i)) {
                    AtomId d = (b == atom::A)   ? atom::dA
                               : (b == atom::x) ? atom::dx
                               : (b == atom::y) ? atom::dy
                                                : atom::dz;
                    atoms.push_back(d);
                    deg += atom_degree(d);
                } else {
                    atoms.push_back(b);
                    deg += atom_degree(b);
                }
            }
            int k = gen_degree - deg;
            if (k < 0 || int(atoms.size()) + k > max_len)
                continue;
            for (int j = 0; j < k; ++j)
                atoms.push_back(atom::w);
            detail::distinct_arrangements(atoms, words);
        }
    }
    return {words.begin(), words.end()};
}

struct ExactSpan {
    std::vector<TraceWord> generators; // sorted canonical words W
    std::vector<SymExpr> images;       // canonical d(W), nonzero
};

inline ExactSpan build_exact_span(const SymExpr& target, int max_len = 8)
{
    ExactSpan span;
    for (const auto& w : exact_span_generators(target, max_len)) {
        SymExpr gen;
        gen.domain = target.domain;
        gen.add_word(w.atoms, GRat(1));
        SymExpr img = differentiate(gen);
        if (img.is_zero())
            continue;
        span.generators.push_back(w);
        span.images.push_back(std::move(img));
    }
    return span;
}

/// Solve target = sum_j c_j * images[j] exactly. Returns the coefficient
/// vector (free variables pinned to zero) or nullopt when the target is not
/// in the span. Deterministic: fixed row/column orders, first-nonzero pivot.
inline std::optional<std::vector<GRat>> solve_in_span(const ExactSpan& span,
                                                      const SymExpr& target)
{
    std::map<TraceWord, std::size_t> row_of;
    auto touch = [&](const TraceWord& w) {
        if (!row_of.count(w)) {
            std::size_t id = row_of.size();
            row_of.emplace(w, id);
        }
    };
    for (const auto& img : span.images)
        for (const auto& [w, c] : img.terms)
            touch(w);
    for (const auto& [w, c] : target.terms)
        touch(w);

    const std::size_t R = row_of.size(), C = span.images.size();
    if (R == 0)
        return std::vector<GRat>(C, GRat(0));
    std::vector<std::vector<GRat>> m(R, std::vector<GRat>(C + 1, GRat(0)));
    for (std::size_t j = 0; j < C; ++j)
        for (const auto& [w, c] : span.images[j].terms)
            m[row_of.at(w)][j] = c;
    for (const auto& [w, c] : target.terms)
        m[row_of.at(w)][C] = c;

    std::vector<long> pivot_col_of_row(R, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < C && rank < R; ++col) {
        std::size_t sel = R;
        for (std::size_t r = rank; r < R; ++r)
            if (!m[r][col].is_zero()) {
                sel = r;
                break;
            }
        if (sel == R)
            continue;
        std::swap(m[rank], m[sel]);
        GRat inv = GRat(1) / m[rank][col];
        for (std::size_t j = col; j <= C; ++j)
            m[rank][j] = m[rank][j] * inv;
        for (std::size_t r = 0; r < R; ++r) {
            if (r == rank || m[r][col].is_zero())
                continue;
            GRat factor = m[r][col];
            for (std::size_t j = col; j <= C; ++j)
                m[r][j] -= factor * m[rank][j];
        }
        pivot_col_of_row[rank] = long(col);
        ++rank;
    }
    for (std::size_t r = rank; r < R; ++r)
        if (!m[r][C].is_zero())
            return std::nullopt; // inconsistent: target not in the span

    std::vector<GRat> c(C, GRat(0));
    for (std::size_t r = 0; r < rank; ++r)
        c[std::size_t(pivot_col_of_row[r])] = m[r][C];
    return c;
}

struct ExactDecomposition {
    std::vector<std::pair<TraceWord, GRat>> terms; // sum c * d(word)
};

/// Decide e1 == e2 modulo Stokes-exact integrands on a closed domain; on
/// success the decomposition exhibits the difference as sum c_i d(W_i).
inline std::pair<bool, ExactDecomposition> equal_mod_exact(const SymExpr& e1, const SymExpr& e2,
                                                           int max_len = 8)
{
    if (e1.domain != e2.domain)
        throw std::invalid_argument("equal_mod_exact: domain mismatch");
    SymExpr diff = e1 - e2;
    ExactDecomposition dec;
    if (diff.is_zero())
        return {true, dec};
    ExactSpan span = build_exact_span(diff, max_len);
    auto sol = solve_in_span(span, diff);
    if (!sol)
        return {false, dec};
    for (std::size_t j = 0; j < span.generators.size(); ++j)
        if (!(*sol)[j].is_zero())
            dec.terms.emplace_back(span.generators[j], (*sol)[j]);
    return {true, dec};
}

/// Replay an exact decomposition through the kernel: e1 - e2 - sum c d(W)
/// must cancel to the empty expression.
inline bool replay_decomposition(const SymExpr& e1, const SymExpr& e2,
                                 const ExactDecomposition& dec)
{
    SymExpr acc = e1 - e2;
    for (const auto& [w, c] : dec.terms) {
        SymExpr gen;
        gen.domain = e1.domain;
        gen.add_word(w.atoms, GRat(1));
        acc -= differentiate(gen).scaled(c);
    }
    return acc.is_zero();
}

struct StokesReduction {
    SymExpr remainder;                  // canonical representative mod exact
    ExactDecomposition exact_part;      // e - remainder = sum c d(W)
    std::optional<SymExpr> boundary;    // B3 only: sum c W on the S2 boundary
};

/// Quotient by the Stokes-exact span. On closed domains the boundary is
/// absent; on B3 the removed exact part reappears as an S2 integrand.
inline StokesReduction stokes_reduce(const SymExpr& e, int max_len = 8)
{
    StokesReduction out;
    out.remainder.domain = e.domain;
    if (e.is_zero())
        return out;

    ExactSpan span = build_exact_span(e, max_len);

    // row-reduce the span images over word space to an echelon basis, with
    // bookkeeping of the generator combination behind every basis row
    std::map<TraceWord, std::size_t> col_of;
    for (const auto& img : span.images)
        for (const auto& [w, c] : img.terms)
            if (!col_of.count(w)) {
                std::size_t id = col_of.size();
                col_of.emplace(w, id);
            }
    struct Row {
        std::map<TraceWord, GRat> expr;
        std::map<std::size_t, GRat> combo; // generator index -> coefficient
    };
    std::vector<Row> basis;
    for (std::size_t j = 0; j < span.images.size(); ++j) {
        Row row;
        row.expr = span.images[j].terms;
        row.combo[j] = GRat(1);
        // reduce against current basis
        for (const auto& b : basis) {
            const TraceWord& lead = b.expr.begin()->first;
            auto it = row.expr.find(lead);
            if (it == row.expr.end())
                continue;
            GRat factor = it->second; // basis lead coefficient is 1
            for (const auto& [w, c] : b.expr) {
                auto jt = row.expr.find(w);
                if (jt == row.expr.end()) {
                    row.expr.emplace(w, -(factor * c));
                } else {
                    jt->second -= factor * c;
                    if (jt->second.is_zero())
                        row.expr.erase(jt);
                }
            }
            for (const auto& [g, c] : b.combo) {
                row.combo[g] -= factor * c;
                if (row.combo[g].is_zero())
                    row.combo.erase(g);
            }
        }
        if (row.expr.empty())
            continue;
        GRat inv = GRat(1) / row.expr.begin()->second;
        for (auto& [w, c] : row.expr)
            c = c * inv;
        for (auto& [g, c] : row.combo)
            c = c * inv;
        basis.push_back(std::move(row));
        // keep basis ordered by leading word for deterministic reduction
        std::sort(basis.begin(), basis.end(),
                  [](const Row& a, const Row& b) { return a.expr.begin()->first < b.expr.begin()->first; });
    }

    // reduce the target by the echelon basis
    std::map<TraceWord, GRat> rem = e.terms;
    std::map<std::size_t, GRat> used;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& b : basis) {
            const TraceWord& lead = b.expr.begin()->first;
            auto it = rem.find(lead);
            if (it == rem.end())
                continue;
            GRat factor = it->second;
            for (const auto& [w, c] : b.expr) {
                auto jt = rem.find(w);
                if (jt == rem.end()) {
                    rem.emplace(w, -(factor * c));
                } else {
                    jt->second -= factor * c;
                    if (jt->second.is_zero())
                        rem.erase(jt);
                }
            }
            for (const auto& [g, c] : b.combo) {
                used[g] += factor * c;
                if (used[g].is_zero())
                    used.erase(g);
            }
            changed = true;
        }
    }

    out.remainder.terms = std::move(rem);
    for (const auto& [g, c] : used)
        out.exact_part.terms.emplace_back(span.generators[g], c);

    if (e.domain == Domain::b3_with_boundary) {
        SymExpr b;
        b.domain = Domain::s2_closed;
        for (const auto& [w, c] : out.exact_part.terms)
            b.add_word(w.atoms, c);
        out.boundary = std::move(b);
    }
    return out;
}

} // namespace cocycle::sym
