#pragma once

#include <map>

#include "cocycle/sym/expr.hpp"

namespace cocycle::sym {

namespace detail {

/// d on a single atom: list of (coefficient, replacement sequence).
/// Rules: d x = dx, d(dx) = 0, d w = w w, d A = dA, d f = w f,
/// d f^-1 = -f^-1 w.
inline const std::vector<std::pair<int, std::vector<AtomId>>>& atom_differential(AtomId a)
{
    using Img = std::vector<std::pair<int, std::vector<AtomId>>>;
    static const std::map<AtomId, Img> table = {
        {atom::A, {{1, {atom::dA}}}},
        {atom::dA, {}},
        {atom::w, {{1, {atom::w, atom::w}}}},
        {atom::x, {{1, {atom::dx}}}},
        {atom::dx, {}},
        {atom::y, {{1, {atom::dy}}}},
        {atom::dy, {}},
        {atom::z, {{1, {atom::dz}}}},
        {atom::dz, {}},
        {atom::f, {{1, {atom::w, atom::f}}}},
        {atom::fi, {{-1, {atom::fi, atom::w}}}},
    };
    return table.at(a);
}

} // namespace detail

/// Graded Leibniz differential of an integrand.
inline SymExpr differentiate(const SymExpr& e)
{
    if (!e.is_zero() && e.degree() > 3)
        throw std::invalid_argument("differentiate: degree overflow");
    SymExpr r;
    r.domain = e.domain;
    for (const auto& [word, coeff] : e.terms) {
        int prefix_degree = 0;
        for (std::size_t i = 0; i < word.atoms.size(); ++i) {
            const AtomId a = word.atoms[i];
            for (const auto& [s, img] : detail::atom_differential(a)) {
                std::vector<AtomId> nw;
                nw.reserve(word.atoms.size() + img.size());
                nw.insert(nw.end(), word.atoms.begin(), word.atoms.begin() + long(i));
                nw.insert(nw.end(), img.begin(), img.end());
                nw.insert(nw.end(), word.atoms.begin() + long(i) + 1, word.atoms.end());
                GRat c = coeff * GRat(s);
                if (prefix_degree % 2 != 0)
                    c = -c;
                r.add_word(std::move(nw), c);
            }
            prefix_degree += atom_degree(a);
        }
    }
    return r;
}

/// Right conjugation by f: A -> f^-1 A f + f^-1 w f (= f^-1(A + w)f since
/// w = df f^-1), p -> f^-1 p f for fields, dp -> d(f^-1 p f) expanded.
inline SymExpr substitute_action(const SymExpr& e)
{
    using Img = std::vector<std::pair<int, std::vector<AtomId>>>;
    auto field_image = [](AtomId base, AtomId dbase) {
        return std::pair<Img, Img>{
            {{1, {atom::fi, base, atom::f}}},
            {{1, {atom::fi, dbase, atom::f}},
             {1, {atom::fi, base, atom::w, atom::f}},
             {-1, {atom::fi, atom::w, base, atom::f}}}};
    };
    static const auto x_img = field_image(atom::x, atom::dx);
    static const auto y_img = field_image(atom::y, atom::dy);
    static const auto z_img = field_image(atom::z, atom::dz);
    static const Img a_img = {{1, {atom::fi, atom::A, atom::f}}, {1, {atom::fi, atom::w, atom::f}}};

    auto image_of = [&](AtomId a) -> const Img* {
        switch (a) {
            case atom::A: return &a_img;
            case atom::x: return &x_img.first;
            case atom::dx: return &x_img.second;
            case atom::y: return &y_img.first;
            case atom::dy: return &y_img.second;
            case atom::z: return &z_img.first;
            case atom::dz: return &z_img.second;
            case atom::w:
            case atom::f:
            case atom::fi:
            case atom::dA:
                throw std::invalid_argument(
                    "substitute_action: expression already contains action atoms");
            default: return nullptr;
        }
    };

    SymExpr r;
    r.domain = e.domain;
    for (const auto& [word, coeff] : e.terms) {
        // product expansion over the per-atom images
        std::vector<std::pair<GRat, std::vector<AtomId>>> acc = {{coeff, {}}};
        for (AtomId a : word.atoms) {
            const Img* img = image_of(a);
            std::vector<std::pair<GRat, std::vector<AtomId>>> next;
            for (const auto& [c, w] : acc) {
                for (const auto& [s, seq] : *img) {
                    std::vector<AtomId> nw = w;
                    nw.insert(nw.end(), seq.begin(), seq.end());
                    next.emplace_back(c * GRat(s), std::move(nw));
                }
            }
            acc = std::move(next);
        }
        for (auto& [c, w] : acc)
            r.add_word(std::move(w), c);
    }
    return r;
}

/// Simultaneous substitution of field placeholders. Each replacement is a
/// degree-0 polynomial in field atoms; the d-variant of a replaced atom gets
/// the Leibniz differential of the replacement.
struct FieldSubstitution {
    // base field atom (x, y or z) -> replacement polynomial
    std::map<AtomId, std::vector<std::pair<GRat, std::vector<AtomId>>>> map;

    void set(AtomId base, std::vector<std::pair<GRat, std::vector<AtomId>>> repl)
    {
        for (const auto& [c, w] : repl)
            for (AtomId a : w)
                if (atom_degree(a) != 0)
                    throw std::invalid_argument("FieldSubstitution: replacement not degree 0");
        map[base] = std::move(repl);
    }

    void rename(AtomId base, AtomId to) { set(base, {{GRat(1), {to}}}); }
};

inline SymExpr substitute_fields(const SymExpr& e, const FieldSubstitution& subst)
{
    auto d_of_poly = [](const std::vector<std::pair<GRat, std::vector<AtomId>>>& poly) {
        std::vector<std::pair<GRat, std::vector<AtomId>>> out;
        for (const auto& [c, w] : poly) {
            for (std::size_t i = 0; i < w.size(); ++i) {
                for (const auto& [s, img] : detail::atom_differential(w[i])) {
                    std::vector<AtomId> nw;
                    nw.insert(nw.end(), w.begin(), w.begin() + long(i));
                    nw.insert(nw.end(), img.begin(), img.end());
                    nw.insert(nw.end(), w.begin() + long(i) + 1, w.end());
                    out.emplace_back(c * GRat(s), std::move(nw));
                }
            }
        }
        return out;
    };

    SymExpr r;
    r.domain = e.domain;
    for (const auto& [word, coeff] : e.terms) {
        std::vector<std::pair<GRat, std::vector<AtomId>>> acc = {{coeff, {}}};
        for (AtomId a : word.atoms) {
            const AtomId base = atom_base(a);
            auto it = subst.map.find(base);
            std::vector<std::pair<GRat, std::vector<AtomId>>> img;
            if (it == subst.map.end() || !atom_is_field(a)) {
                img = {{GRat(1), {a}}};
            } else if (a == base) {
                img = it->second;
            } else {
                img = d_of_poly(it->second);
            }
            std::vector<std::pair<GRat, std::vector<AtomId>>> next;
            for (const auto& [c, w] : acc) {
                for (const auto& [s, seq] : img) {
                    std::vector<AtomId> nw = w;
                    nw.insert(nw.end(), seq.begin(), seq.end());
                    next.emplace_back(c * s, std::move(nw));
                }
            }
            acc = std::move(next);
        }
        for (auto& [c, w] : acc)
            r.add_word(std::move(w), c);
    }
    return r;
}

/// Module action L_p on the potential: a derivation replacing each A by
/// [A, p] + dp and killing A-free words. The argument p must be x, y or z.
inline SymExpr lie_derivative_potential(const SymExpr& e, AtomId p)
{
    if (p != atom::x && p != atom::y && p != atom::z)
        throw std::invalid_argument("lie_derivative_potential: argument must be a field atom");
    const AtomId dp = (p == atom::x) ? atom::dx : (p == atom::y ? atom::dy : atom::dz);
    SymExpr r;
    r.domain = e.domain;
    for (const auto& [word, coeff] : e.terms) {
        for (std::size_t i = 0; i < word.atoms.size(); ++i) {
            if (word.atoms[i] != atom::A)
                continue;
            const std::vector<std::pair<int, std::vector<AtomId>>> images = {
                {1, {atom::A, p}}, {-1, {p, atom::A}}, {1, {dp}}};
            for (const auto& [s, img] : images) {
                std::vector<AtomId> nw;
                nw.insert(nw.end(), word.atoms.begin(), word.atoms.begin() + long(i));
                nw.insert(nw.end(), img.begin(), img.end());
                nw.insert(nw.end(), word.atoms.begin() + long(i) + 1, word.atoms.end());
                r.add_word(std::move(nw), coeff * GRat(s));
            }
        }
    }
    return r;
}

/// CE coboundary of a 1-cochain lambda(A; z) with placeholder z:
/// (d lambda)(A; x, y) = L_x lambda(A;y) - L_y lambda(A;x) - lambda(A;[x,y]).
/// The Maurer-Cartan background w is held fixed by L.
inline SymExpr ce_coboundary_sym(const SymExpr& lambda)
{
    FieldSubstitution to_y, to_x, to_bracket;
    to_y.rename(atom::z, atom::y);
    to_x.rename(atom::z, atom::x);
    to_bracket.set(atom::z, {{GRat(1), {atom::x, atom::y}}, {GRat(-1), {atom::y, atom::x}}});

    SymExpr r = lie_derivative_potential(substitute_fields(lambda, to_y), atom::x);
    r -= lie_derivative_potential(substitute_fields(lambda, to_x), atom::y);
    r -= substitute_fields(lambda, to_bracket);
    return r;
}

/// CE coboundary of a 2-cochain theta(A; x, y):
/// (d theta)(A;x,y,z) = L_x th(y,z) - L_y th(x,z) + L_z th(x,y)
///                      - th([x,y],z) + th([x,z],y) - th([y,z],x).
inline SymExpr ce2_coboundary_sym(const SymExpr& theta)
{
    auto args = [&](std::vector<std::pair<GRat, std::vector<AtomId>>> first,
                    std::vector<std::pair<GRat, std::vector<AtomId>>> second) {
        FieldSubstitution s;
        s.set(atom::x, std::move(first));
        s.set(atom::y, std::move(second));
        return substitute_fields(theta, s);
    };
    auto single = [](AtomId a) {
        return std::vector<std::pair<GRat, std::vector<AtomId>>>{{GRat(1), {a}}};
    };
    auto br = [](AtomId a, AtomId b) {
        return std::vector<std::pair<GRat, std::vector<AtomId>>>{{GRat(1), {a, b}},
                                                                 {GRat(-1), {b, a}}};
    };

    SymExpr r = lie_derivative_potential(args(single(atom::y), single(atom::z)), atom::x);
    r -= lie_derivative_potential(args(single(atom::x), single(atom::z)), atom::y);
    r += lie_derivative_potential(args(single(atom::x), single(atom::y)), atom::z);
    r -= args(br(atom::x, atom::y), single(atom::z));
    r += args(br(atom::x, atom::z), single(atom::y));
    r -= args(br(atom::y, atom::z), single(atom::x));
    return r;
}

} // namespace cocycle::sym
