#pragma once

#include <array>
#include <nlohmann/json.hpp>

#include "cocycle/sym/parse.hpp"
#include "cocycle/sym/stokes.hpp"

namespace cocycle::sym {

using nlohmann::json;

// The appendix displays, transcribed in the parser grammar (w = omega).
namespace paper {

inline constexpr const char* mf_cocycle = "int tr A [dx, dy]";

inline constexpr const char* lambda1 = "int tr A w [w, z]";
inline constexpr const char* lambda2 = "int tr [w, A] dz";
inline constexpr const char* lambda3 = "int tr w^3 z";

inline constexpr const char* theta_f_display =
    "int tr A[dx,dy] - A w [x,y] w"
    " + A(x w dy - y w dx - x w^2 y + y w^2 x - dx w y + dy w x)"
    " + (A w + w A)(x w y - y w x) - A w (x dy - y dx) + w A (dx y - dy x)"
    " + 2 w^2 (x w y - y w x)"
    " - w (dx w y - dy w x + x w^2 y - y w^2 x - x w dy + y w dx)"
    " + w^2 (dx y - dy x - x dy - y dx) + w [dx,dy] - w^3 [x,y]";

// the three coboundary displays, in print order; the paper labels the
// second and third both as "delta lambda_3"
inline constexpr const char* coboundary_display_1 =
    "int tr A(x w^2 y - y w^2 x) - w^2 (x dy - y dx) + A w [x,y] w"
    " - (A w + w A)(x w y - y w x) + w (x w dy - y w dx)";
inline constexpr const char* coboundary_display_2 =
    "int tr A(dx w y - dy w x) - w A (dx y - dy x) - A(x w dy - y w dx)"
    " + A w (x dy - y dx) + 2 w [dx, dy]";
inline constexpr const char* coboundary_display_3 = "int tr w^3 [x,y]";

inline constexpr const char* a_free_remainder_display =
    "int tr w^2 (x w y - y w x) - w [dx,dy] - w^3 [x,y]";

// section 3 boundary term, literal signs as printed
inline constexpr const char* boundary_term_x = "int tr x [dy, dz]";
inline constexpr const char* boundary_term_y = "int tr y [dz, dx]";
inline constexpr const char* boundary_term_z = "int tr z [dx, dy]";
inline constexpr std::array<int, 3> boundary_display_signs = {+1, -1, +1};

} // namespace paper

namespace detail {

inline json coeff_to_json(const GRat& c)
{
    auto num = [](const Rat& r) -> json {
        auto n = boost::multiprecision::numerator(r);
        auto d = boost::multiprecision::denominator(r);
        // stays well inside int64 for every certificate this kernel emits
        return json::array({json(std::int64_t(n)), json(std::int64_t(d))});
    };
    json j = json::array();
    for (const auto& v : num(c.re))
        j.push_back(v);
    for (const auto& v : num(c.im))
        j.push_back(v);
    return j;
}

inline json decomposition_to_json(const ExactDecomposition& dec)
{
    json arr = json::array();
    for (const auto& [w, c] : dec.terms)
        arr.push_back(json{{"word", w.str()}, {"coeff", coeff_to_json(c)}});
    return arr;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Appendix A.1: theta^f - theta + sum_i s_i * delta(lambda_i) == 0 modulo
// Stokes-exact integrands, for exactly one (bracket convention, sign
// assignment). The search also reconciles the paper's three coboundary
// displays with the computed coboundaries and reports a term diff for the
// printed theta^f expansion.
// ---------------------------------------------------------------------------

struct DisplayMatch {
    std::string display;
    bool matched = false;
    int lambda_index = -1; // 0-based
    int sign = 0;
};

struct A1Certificate {
    bool verified = false;
    int candidate_count = 0;
    BracketConv bracket = BracketConv::matrix_commutator;
    std::array<int, 3> signs{0, 0, 0};
    ExactDecomposition decomposition;

    SymExpr theta, theta_f;
    std::array<SymExpr, 3> dlambda;

    std::vector<DisplayMatch> pairing;
    bool theta_f_matches_display_mod_exact = false;
    std::string theta_f_diff;
    int theta_f_word_count = 0;
    bool a_free_remainder_matches = false;
};

inline A1Certificate verify_appendix_A1(int max_len = 8)
{
    A1Certificate cert;
    struct Candidate {
        BracketConv conv;
        std::array<int, 3> signs;
        ExactDecomposition dec;
        SymExpr theta, theta_f;
        std::array<SymExpr, 3> dlambda;
    };
    std::vector<Candidate> found;

    for (BracketConv conv : {BracketConv::matrix_commutator, BracketConv::graded_commutator}) {
        SymExpr theta = parse(paper::mf_cocycle, conv, Domain::s3_closed);
        SymExpr theta_f = substitute_action(theta);
        std::array<SymExpr, 3> dl;
        dl[0] = ce_coboundary_sym(parse(paper::lambda1, conv, Domain::s3_closed));
        dl[1] = ce_coboundary_sym(parse(paper::lambda2, conv, Domain::s3_closed));
        dl[2] = ce_coboundary_sym(parse(paper::lambda3, conv, Domain::s3_closed));

        for (int mask = 0; mask < 8; ++mask) {
            std::array<int, 3> s{(mask & 1) ? 1 : -1, (mask & 2) ? 1 : -1,
                                 (mask & 4) ? 1 : -1};
            SymExpr target = theta_f - theta;
            for (int i = 0; i < 3; ++i)
                target += dl[std::size_t(i)].scaled(GRat(s[std::size_t(i)]));
            SymExpr zero;
            zero.domain = Domain::s3_closed;
            auto [ok, dec] = equal_mod_exact(target, zero, max_len);
            if (ok)
                found.push_back({conv, s, dec, theta, theta_f, dl});
        }
    }

    cert.candidate_count = int(found.size());
    if (found.size() != 1) {
        cert.verified = false;
        return cert;
    }
    const Candidate& c = found.front();
    cert.verified = true;
    cert.bracket = c.conv;
    cert.signs = c.signs;
    cert.decomposition = c.dec;
    cert.theta = c.theta;
    cert.theta_f = c.theta_f;
    cert.dlambda = c.dlambda;

    // replay guard: the decomposition must reproduce zero through the kernel
    SymExpr identity = c.theta_f - c.theta;
    for (int i = 0; i < 3; ++i)
        identity += c.dlambda[std::size_t(i)].scaled(GRat(c.signs[std::size_t(i)]));
    SymExpr zero;
    zero.domain = Domain::s3_closed;
    if (!replay_decomposition(identity, zero, cert.decomposition))
        throw std::logic_error("verify_appendix_A1: certificate replay failed");

    // reconcile the printed coboundary displays against the computed ones
    const std::array<const char*, 3> displays = {
        paper::coboundary_display_1, paper::coboundary_display_2, paper::coboundary_display_3};
    for (const char* text : displays) {
        DisplayMatch dm;
        dm.display = text;
        SymExpr d = parse(text, cert.bracket, Domain::s3_closed);
        for (int i = 0; i < 3 && !dm.matched; ++i) {
            for (int s : {1, -1}) {
                auto [ok, dec] =
                    equal_mod_exact(d, cert.dlambda[std::size_t(i)].scaled(GRat(s)), max_len);
                if (ok) {
                    dm.matched = true;
                    dm.lambda_index = i;
                    dm.sign = s;
                    break;
                }
            }
        }
        cert.pairing.push_back(std::move(dm));
    }

    // printed theta^f expansion: report, do not assert
    SymExpr printed = parse(paper::theta_f_display, cert.bracket, Domain::s3_closed);
    cert.theta_f_word_count = int(printed.terms.size());
    auto [same, dec2] = equal_mod_exact(cert.theta_f, printed, max_len);
    cert.theta_f_matches_display_mod_exact = same;
    SymExpr diff = cert.theta_f - printed;
    cert.theta_f_diff = diff.str();

    // the A-free part of theta^f reduces to the printed remainder
    SymExpr a_free;
    a_free.domain = Domain::s3_closed;
    for (const auto& [w, co] : cert.theta_f.terms) {
        bool has_a = false;
        for (AtomId a : w.atoms)
            if (atom_base(a) == atom::A)
                has_a = true;
        if (!has_a)
            a_free.add_word(w.atoms, co);
    }
    SymExpr remainder_display =
        parse(paper::a_free_remainder_display, cert.bracket, Domain::s3_closed);
    cert.a_free_remainder_matches = equal_mod_exact(a_free, remainder_display, max_len).first;

    return cert;
}

inline json to_json(const A1Certificate& cert)
{
    json pairing = json::array();
    for (const auto& dm : cert.pairing)
        pairing.push_back(json{{"display", dm.display},
                               {"matched", dm.matched},
                               {"lambda", dm.matched ? json(dm.lambda_index + 1) : json()},
                               {"sign", dm.matched ? json(dm.sign) : json()}});
    return json{
        {"identity", "theta^f - theta + s1*d(lambda1) + s2*d(lambda2) + s3*d(lambda3) == 0 "
                     "(mod Stokes-exact, S3)"},
        {"verified", cert.verified},
        {"candidate_count", cert.candidate_count},
        {"conventions",
         {{"bracket", bracket_conv_name(cert.bracket)},
          {"signs", cert.signs},
          {"lambda_pairing", pairing}}},
        {"exact_decomposition", detail::decomposition_to_json(cert.decomposition)},
        {"paper_theta_f",
         {{"matches_mod_exact", cert.theta_f_matches_display_mod_exact},
          {"display_word_count", cert.theta_f_word_count},
          {"term_diff", cert.theta_f_diff},
          {"a_free_remainder_matches", cert.a_free_remainder_matches}}}};
}

// ---------------------------------------------------------------------------
// Section 3 boundary term: on B3 the coboundary of the MF integrand reduces
// to a pure surface expression; resolve its signs against the printed
// display.
// ---------------------------------------------------------------------------

struct BoundaryCertificate {
    bool verified = false;
    bool interior_remainder_zero = false;
    bool a_terms_cancel_pointwise = false;
    std::array<int, 3> resolved_signs{0, 0, 0};
    bool paper_display_matches = false;
    int candidate_count = 0;
    SymExpr delta_theta;
    SymExpr boundary;
    ExactDecomposition decomposition;
};

inline BoundaryCertificate certify_boundary_term(BracketConv conv, int max_len = 8)
{
    BoundaryCertificate cert;
    SymExpr theta = parse(paper::mf_cocycle, conv, Domain::b3_with_boundary);
    SymExpr dtheta = ce2_coboundary_sym(theta);
    cert.delta_theta = dtheta;

    cert.a_terms_cancel_pointwise = true;
    for (const auto& [w, c] : dtheta.terms)
        for (AtomId a : w.atoms)
            if (atom_base(a) == atom::A)
                cert.a_terms_cancel_pointwise = false;

    StokesReduction red = stokes_reduce(dtheta, max_len);
    cert.interior_remainder_zero = red.remainder.is_zero();
    cert.decomposition = red.exact_part;
    if (!red.boundary)
        return cert;
    cert.boundary = *red.boundary;

    const std::array<const char*, 3> terms = {paper::boundary_term_x, paper::boundary_term_y,
                                              paper::boundary_term_z};
    std::array<SymExpr, 3> t;
    for (int i = 0; i < 3; ++i)
        t[std::size_t(i)] = parse(terms[std::size_t(i)], conv, Domain::s2_closed);

    std::vector<std::array<int, 3>> matches;
    for (int mask = 0; mask < 8; ++mask) {
        std::array<int, 3> s{(mask & 1) ? 1 : -1, (mask & 2) ? 1 : -1, (mask & 4) ? 1 : -1};
        SymExpr combo;
        combo.domain = Domain::s2_closed;
        for (int i = 0; i < 3; ++i)
            combo += t[std::size_t(i)].scaled(GRat(s[std::size_t(i)]));
        if (equal_mod_exact(cert.boundary, combo, max_len).first)
            matches.push_back(s);
    }
    cert.candidate_count = int(matches.size());
    if (matches.size() == 1) {
        cert.resolved_signs = matches.front();
        cert.verified = cert.interior_remainder_zero;
        cert.paper_display_matches = (cert.resolved_signs == paper::boundary_display_signs);
    }
    return cert;
}

inline json to_json(const BoundaryCertificate& cert)
{
    return json{
        {"identity", "delta(theta_MF) on B3 == surface term on S2 (prefactor carried "
                     "linearly; displays compared at prefactor 1)"},
        {"verified", cert.verified},
        {"interior_remainder_zero", cert.interior_remainder_zero},
        {"a_terms_cancel_pointwise", cert.a_terms_cancel_pointwise},
        {"resolved_signs", cert.resolved_signs},
        {"paper_display_signs", paper::boundary_display_signs},
        {"paper_display_matches", cert.paper_display_matches},
        {"candidate_count", cert.candidate_count},
        {"boundary", cert.boundary.str()},
        {"exact_decomposition", detail::decomposition_to_json(cert.decomposition)}};
}

} // namespace cocycle::sym
