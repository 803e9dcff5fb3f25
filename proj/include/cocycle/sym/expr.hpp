#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cocycle/sym/rational.hpp"

namespace cocycle::sym {

// ---------------------------------------------------------------------------
// Atoms. A fixed global table; the declared order is also the order used for
// canonical rotations, so normal forms are reproducible by construction.
//
//   id   name  degree  kind
//   0    A     1       potential
//   1    dA    2       potential (d-applied)
//   2    w     1       Maurer-Cartan form (omega)
//   3/4  x/dx  0/1     field
//   5/6  y/dy  0/1     field
//   7/8  z/dz  0/1     field
//   9    f     0       conjugator
//   10   fi    0       conjugator inverse
// ---------------------------------------------------------------------------

using AtomId = std::uint8_t;

namespace atom {
inline constexpr AtomId A = 0, dA = 1, w = 2, x = 3, dx = 4, y = 5, dy = 6, z = 7, dz = 8,
                        f = 9, fi = 10;
inline constexpr int count = 11;
} // namespace atom

inline constexpr std::array<int, atom::count> kAtomDegree = {1, 2, 1, 0, 1, 0, 1, 0, 1, 0, 0};

inline constexpr std::array<const char*, atom::count> kAtomName = {
    "A", "dA", "w", "x", "dx", "y", "dy", "z", "dz", "f", "fi"};

inline int atom_degree(AtomId a) { return kAtomDegree[a]; }
inline const char* atom_name(AtomId a) { return kAtomName[a]; }

/// Base field of a differentiated atom (dx -> x); atoms without a base map
/// to themselves.
inline AtomId atom_base(AtomId a)
{
    switch (a) {
        case atom::dA: return atom::A;
        case atom::dx: return atom::x;
        case atom::dy: return atom::y;
        case atom::dz: return atom::z;
        default: return a;
    }
}

inline bool atom_is_field(AtomId a)
{
    AtomId b = atom_base(a);
    return b == atom::x || b == atom::y || b == atom::z;
}

// ---------------------------------------------------------------------------
// TraceWord: a cyclic word of atoms under the graded trace. Stored in the
// canonical rotation; construction goes through canonicalize_word below.
// ---------------------------------------------------------------------------

struct TraceWord {
    std::vector<AtomId> atoms;

    int total_degree() const
    {
        int d = 0;
        for (AtomId a : atoms)
            d += atom_degree(a);
        return d;
    }

    bool operator<(const TraceWord& o) const { return atoms < o.atoms; }
    bool operator==(const TraceWord& o) const { return atoms == o.atoms; }

    std::string str() const
    {
        if (atoms.empty())
            return "1";
        std::string s;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (i)
                s += ' ';
            s += atom_name(atoms[i]);
        }
        return s;
    }
};

namespace detail {

/// Remove cyclically adjacent f fi / fi f pairs (conjugators have degree 0,
/// so no Koszul signs are involved).
inline void cancel_conjugators(std::vector<AtomId>& w)
{
    bool changed = true;
    auto inverse_pair = [](AtomId a, AtomId b) {
        return (a == atom::f && b == atom::fi) || (a == atom::fi && b == atom::f);
    };
    while (changed && w.size() >= 2) {
        changed = false;
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::size_t j = (i + 1) % w.size();
            if (inverse_pair(w[i], w[j])) {
                if (j > i) {
                    w.erase(w.begin() + long(i), w.begin() + long(j) + 1);
                } else { // wrap-around pair (last, first)
                    w.erase(w.begin() + long(i));
                    w.erase(w.begin());
                }
                changed = true;
                break;
            }
        }
    }
}

} // namespace detail

/// Canonicalize a raw cyclic word: cancel conjugator pairs, then pick the
/// lexicographically minimal rotation, folding the Koszul rotation sign into
/// the returned coefficient. Words that map to themselves with sign -1 under
/// some rotation vanish identically (e.g. tr w^2); those return sign 0.
inline std::pair<TraceWord, int> canonicalize_word(std::vector<AtomId> raw)
{
    detail::cancel_conjugators(raw);
    TraceWord word;
    if (raw.empty())
        return {word, 1}; // tr(1): the unit word
    const std::size_t len = raw.size();
    int total = 0;
    for (AtomId a : raw)
        total += atom_degree(a);

    // materialize every rotation with its accumulated Koszul sign
    std::vector<std::pair<std::vector<AtomId>, int>> rots;
    rots.reserve(len);
    std::vector<AtomId> cur = raw;
    int sign = 1;
    rots.emplace_back(cur, sign);
    for (std::size_t r = 1; r < len; ++r) {
        int d0 = atom_degree(cur[0]);
        if ((d0 * (total - d0)) % 2 != 0)
            sign = -sign;
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        rots.emplace_back(cur, sign);
    }

    const std::vector<AtomId>* best = &rots[0].first;
    for (const auto& [seq, s] : rots)
        if (seq < *best)
            best = &seq;

    int best_sign = 0;
    for (const auto& [seq, s] : rots) {
        if (seq == *best) {
            if (best_sign == 0)
                best_sign = s;
            else if (best_sign != s)
                return {word, 0}; // tr(W) = -tr(W): the word vanishes
        }
    }
    word.atoms = *best;
    return {word, best_sign};
}

// ---------------------------------------------------------------------------
// SymExpr: exact linear combination of canonical trace words, all of one
// total degree, tagged with the integration domain.
// ---------------------------------------------------------------------------

enum class Domain { s1_closed, s2_closed, s3_closed, b3_with_boundary };

inline const char* domain_name(Domain d)
{
    switch (d) {
        case Domain::s1_closed: return "S1";
        case Domain::s2_closed: return "S2";
        case Domain::s3_closed: return "S3";
        case Domain::b3_with_boundary: return "B3";
    }
    return "?";
}

/// Top form degree integrable on the domain.
inline int domain_degree(Domain d)
{
    switch (d) {
        case Domain::s1_closed: return 1;
        case Domain::s2_closed: return 2;
        case Domain::s3_closed: return 3;
        case Domain::b3_with_boundary: return 3;
    }
    return -1;
}

struct SymExpr {
    Domain domain = Domain::s3_closed;
    std::map<TraceWord, GRat> terms;

    bool is_zero() const { return terms.empty(); }

    void add_word(std::vector<AtomId> raw, const GRat& coeff)
    {
        if (coeff.is_zero())
            return;
        auto [word, sign] = canonicalize_word(std::move(raw));
        if (sign == 0)
            return;
        if (!terms.empty()) {
            int d = terms.begin()->first.total_degree();
            if (word.total_degree() != d)
                throw std::invalid_argument("SymExpr: mixed total degree");
        }
        GRat c = (sign == 1) ? coeff : -coeff;
        auto it = terms.find(word);
        if (it == terms.end()) {
            terms.emplace(std::move(word), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms.erase(it);
        }
    }

    SymExpr& operator+=(const SymExpr& o)
    {
        if (o.domain != domain && !o.is_zero() && !is_zero())
            throw std::invalid_argument("SymExpr: domain mismatch");
        for (const auto& [w, c] : o.terms)
            add_word(w.atoms, c);
        return *this;
    }
    SymExpr& operator-=(const SymExpr& o)
    {
        if (o.domain != domain && !o.is_zero() && !is_zero())
            throw std::invalid_argument("SymExpr: domain mismatch");
        for (const auto& [w, c] : o.terms)
            add_word(w.atoms, -c);
        return *this;
    }
    friend SymExpr operator+(SymExpr a, const SymExpr& b) { return a += b; }
    friend SymExpr operator-(SymExpr a, const SymExpr& b) { return a -= b; }

    SymExpr scaled(const GRat& k) const
    {
        SymExpr r;
        r.domain = domain;
        if (k.is_zero())
            return r;
        for (const auto& [w, c] : terms)
            r.terms.emplace(w, c * k);
        return r;
    }

    int degree() const
    {
        return terms.empty() ? -1 : terms.begin()->first.total_degree();
    }

    std::string str() const
    {
        if (terms.empty())
            return "0";
        std::string s;
        bool first = true;
        for (const auto& [w, c] : terms) {
            if (!first)
                s += "  +  ";
            first = false;
            s += c.str() + " " + w.str();
        }
        return s;
    }
};

/// Re-canonicalize an expression (idempotent; exists mostly so tests can
/// assert idempotence and so callers can normalize hand-built expressions).
inline SymExpr canonicalize(const SymExpr& e)
{
    SymExpr r;
    r.domain = e.domain;
    for (const auto& [w, c] : e.terms)
        r.add_word(w.atoms, c);
    return r;
}

} // namespace cocycle::sym
