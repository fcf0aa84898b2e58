#pragma once

/**
 * @file repr.hpp
 * @brief Compiling a recurrence into div-mod and mod-mod closed forms.
 *
 * With A~(x) = x^d A(1/x) and B~(x) = x^d B(1/x):
 *
 *   div-mod:  t(n) = floor(c^(n^2) A~(c^n) / B~(c^n)) mod c^n
 *   mod-mod:  t(n) = (-1 - s)/2 + (((-s e^(n^2) A~(e^n)) mod B~(e^n)) mod e^n) / |alpha_d|
 *
 * where alpha_d is the free term of B~ (equal to a_d) and s = sign(alpha_d).
 * Integer-valued sequences are represented through s(n) = t(n) + h^(n+1).
 *
 * A~ is the single source of truth for the numerator: its coefficient of x^k
 * is the coefficient of base^(n^2 + k n). exp_terms() exposes that view to
 * the renderers.
 */

#include "crec/bigint.hpp"
#include "crec/bigpoly.hpp"
#include "crec/bounds.hpp"
#include "crec/recurrence.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace crec {

/// The identically zero sequence.
struct ZeroRepr {
    friend bool operator==(const ZeroRepr&, const ZeroRepr&) = default;
};

struct DivModRepr {
    CertifiedBase base;
    IntPoly atilde;
    IntPoly btilde;
    std::size_t order = 0;

    friend bool operator==(const DivModRepr&, const DivModRepr&) = default;
};

struct ModModRepr {
    CertifiedBase base;
    IntPoly atilde;
    IntPoly btilde;
    std::size_t order = 0;
    BigInt alpha_d;   // free term of btilde
    int sign = -1;    // sign(alpha_d)
    int offset = 0;   // (-1 - sign) / 2
    BigInt divisor;   // |alpha_d|

    friend bool operator==(const ModModRepr&, const ModModRepr&) = default;
};

/// t(n) = inner(n) - h^(n+1).
struct ShiftedRepr {
    ModModRepr inner;
    BigInt h;

    friend bool operator==(const ShiftedRepr&, const ShiftedRepr&) = default;
};

using Repr = std::variant<ZeroRepr, DivModRepr, ModModRepr, ShiftedRepr>;

struct DeriveOptions {
    std::optional<BigInt> base;  // asserted base; skips certification
    bool force = false;          // accept recurrences whose naturality check is rejected
    std::size_t naturality_prefix = 64;
    SearchOptions search;
    std::optional<BigInt> shift_h;  // derive_shifted only; defaults to growth_bound
};

/// One term coeff * base^(quadratic*n^2 + k*n).
struct ExpTerm {
    BigInt coeff;
    std::size_t k;
};

/// Nonzero terms of p in descending power order.
inline std::vector<ExpTerm> exp_terms(const IntPoly& p) {
    std::vector<ExpTerm> out;
    for (std::size_t k = p.coeffs().size(); k-- > 0;)
        if (sgn(p.coeffs()[k]) != 0) out.push_back({p.coeffs()[k], k});
    return out;
}

namespace detail {

inline void require_derivable(const Recurrence& rec, const DeriveOptions& opts) {
    if (opts.force) return;
    auto cert = naturality(rec, opts.naturality_prefix);
    if (cert.status == NaturalityStatus::rejected)
        throw std::invalid_argument("sequence takes a negative value at n = " +
                                    std::to_string(*cert.first_negative) +
                                    "; use the shifted representation or --force");
}

inline ModModRepr make_modmod(const Recurrence& rec, CertifiedBase base) {
    const std::size_t d = rec.order();
    ModModRepr r;
    r.base = std::move(base);
    r.atilde = reciprocal(numerator_from_initial(rec), d);
    r.btilde = reciprocal(denominator(rec), d);
    r.order = d;
    r.alpha_d = rec.last_coeff();
    r.sign = sgn(r.alpha_d) > 0 ? 1 : -1;
    r.offset = (-1 - r.sign) / 2;
    r.divisor = abs(r.alpha_d);
    return r;
}

}  // namespace detail

inline Repr derive_divmod(const Recurrence& rec, const DeriveOptions& opts = {}) {
    detail::require_derivable(rec, opts);
    if (rec.is_zero_sequence()) return ZeroRepr{};
    const std::size_t d = rec.order();
    CertifiedBase base =
        opts.base ? asserted_base(rec, *opts.base) : divmod_base(rec, growth_bound(rec), opts.search);
    return DivModRepr{std::move(base), reciprocal(numerator_from_initial(rec), d),
                      reciprocal(denominator(rec), d), d};
}

inline Repr derive_modmod(const Recurrence& rec, const DeriveOptions& opts = {}) {
    detail::require_derivable(rec, opts);
    if (rec.is_zero_sequence()) return ZeroRepr{};
    if (opts.base) return detail::make_modmod(rec, asserted_base(rec, *opts.base));
    CertifiedBase c0 = divmod_base(rec, growth_bound(rec), opts.search);
    return detail::make_modmod(rec, modmod_base(rec, rec.last_coeff(), c0, opts.search));
}

/// Mod-mod form of s(n) = t(n) + h^(n+1) for a sequence with negative terms.
inline Repr derive_shifted(const Recurrence& rec, const DeriveOptions& opts = {}) {
    auto cert = naturality(rec, opts.naturality_prefix);
    if (cert.status != NaturalityStatus::rejected)
        throw std::invalid_argument("sequence has no negative terms (" + std::string(to_string(cert.status)) +
                                    "); use the mod-mod representation directly");
    const BigInt h = opts.shift_h.value_or(growth_bound(rec));
    Recurrence shifted = shift_to_natural(rec, h);
    DeriveOptions inner_opts = opts;
    inner_opts.force = false;
    Repr inner = derive_modmod(shifted, inner_opts);
    return ShiftedRepr{std::get<ModModRepr>(std::move(inner)), h};
}

// ---------------------------------------------------------------------------
// Rendering

enum class RenderFormat { text, latex, json };

namespace detail {

inline std::string text_power(const std::string& b, std::size_t k, bool quadratic) {
    if (!quadratic) {
        if (k == 0) return "";
        if (k == 1) return b + "^n";
        return b + "^(" + std::to_string(k) + "n)";
    }
    if (k == 0) return b + "^(n^2)";
    if (k == 1) return b + "^(n^2+n)";
    return b + "^(n^2+" + std::to_string(k) + "n)";
}

inline std::string latex_power(const std::string& b, std::size_t k, bool quadratic) {
    if (!quadratic) {
        if (k == 0) return "";
        if (k == 1) return b + "^n";
        return b + "^{" + std::to_string(k) + "n}";
    }
    if (k == 0) return b + "^{n^2}";
    if (k == 1) return b + "^{n^2 + n}";
    return b + "^{n^2 + " + std::to_string(k) + "n}";
}

// Sum of terms, sign-folded into " + " / " - " separators; `negate` flips
// every coefficient.
inline std::string exp_poly(const IntPoly& p, const std::string& base, bool quadratic, bool latex,
                            bool negate = false) {
    std::string out;
    bool first = true;
    for (const auto& term : exp_terms(p)) {
        BigInt c = negate ? BigInt(-term.coeff) : term.coeff;
        const bool neg = sgn(c) < 0;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        const BigInt m = abs(c);
        const std::string pw = latex ? latex_power(base, term.k, quadratic) : text_power(base, term.k, quadratic);
        if (pw.empty())
            out += to_string(m);
        else if (m == 1)
            out += pw;
        else
            out += to_string(m) + (latex ? " \\cdot " : "*") + pw;
    }
    return out.empty() ? "0" : out;
}

inline std::string render_text(const ModModRepr& r) {
    const std::string e = to_string(r.base.base);
    std::string num = exp_poly(r.atilde, e, true, false);
    if (r.sign > 0) num = "-(" + num + ")";
    const std::string body =
        "((" + num + ") mod (" + exp_poly(r.btilde, e, false, false) + ")) mod " + e + "^n";
    std::string out = r.divisor == 1 ? body : "(1/" + to_string(r.divisor) + ")*(" + body + ")";
    if (r.offset != 0) out = "-1 + " + (r.divisor == 1 ? "(" + out + ")" : out);
    return out;
}

inline std::string render_latex(const ModModRepr& r) {
    const std::string e = to_string(r.base.base);
    const bool negate = r.sign > 0;
    std::string num = exp_poly(r.atilde, e, true, true, negate);
    if (negate || exp_terms(r.atilde).size() > 1) num = "(" + num + ")";
    std::string core = "\\left( " + num + " \\bmod (" + exp_poly(r.btilde, e, false, true) + ") \\right) \\bmod " +
                       e + "^n";
    if (r.divisor != 1)
        core = "\\frac{1}{" + to_string(r.divisor) + "} \\cdot \\left( " + core + " \\right)";
    else if (r.offset != 0)
        core = "\\left( " + core + " \\right)";
    if (r.offset != 0) core += " - 1";
    return core;
}

inline std::string render_text(const DivModRepr& r) {
    const std::string c = to_string(r.base.base);
    return "floor((" + exp_poly(r.atilde, c, true, false) + ") / (" + exp_poly(r.btilde, c, false, false) +
           ")) mod " + c + "^n";
}

inline std::string render_latex(const DivModRepr& r) {
    const std::string c = to_string(r.base.base);
    return "\\left\\lfloor \\frac{" + exp_poly(r.atilde, c, true, true) + "}{" + exp_poly(r.btilde, c, false, true) +
           "} \\right\\rfloor \\bmod " + c + "^n";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline void put_base(nlohmann::json& j, const CertifiedBase& b) {
    j["base"] = to_string(b.base);
    j["mode"] = to_string(b.mode);
    j["g"] = to_string(b.growth);
    j["cutoff"] = b.cutoff;
    j["root_bound"] = to_string(b.root_bound);
}

inline CertifiedBase get_base(const nlohmann::json& j) {
    CertifiedBase b;
    b.base = bigint_from_json(j.at("base"));
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "certified")
        b.mode = BaseMode::certified;
    else if (mode == "asserted")
        b.mode = BaseMode::asserted;
    else
        throw std::invalid_argument("unknown base mode '" + mode + "'");
    b.growth = bigint_from_json(j.at("g"));
    b.cutoff = j.at("cutoff").get<std::size_t>();
    b.root_bound = bigint_from_json(j.at("root_bound"));
    if (b.base < 2) throw std::invalid_argument("base must be at least 2");
    return b;
}

inline nlohmann::json modmod_json(const ModModRepr& r, const std::optional<BigInt>& h) {
    nlohmann::json j;
    j["kind"] = "modmod";
    put_base(j, r.base);
    j["order"] = r.order;
    j["atilde"] = r.atilde;
    j["btilde"] = r.btilde;
    j["alpha_d"] = to_string(r.alpha_d);
    j["sign"] = r.sign;
    j["offset"] = r.offset;
    j["divisor"] = to_string(r.divisor);
    j["shift_h"] = h ? nlohmann::json(to_string(*h)) : nlohmann::json(nullptr);
    return j;
}

}  // namespace detail

inline nlohmann::json to_json(const Repr& repr) {
    struct Visitor {
        nlohmann::json operator()(const ZeroRepr&) const { return {{"kind", "zero"}}; }
        nlohmann::json operator()(const DivModRepr& r) const {
            nlohmann::json j;
            j["kind"] = "divmod";
            detail::put_base(j, r.base);
            j["order"] = r.order;
            j["atilde"] = r.atilde;
            j["btilde"] = r.btilde;
            return j;
        }
        nlohmann::json operator()(const ModModRepr& r) const { return detail::modmod_json(r, std::nullopt); }
        nlohmann::json operator()(const ShiftedRepr& r) const { return detail::modmod_json(r.inner, r.h); }
    };
    return std::visit(Visitor{}, repr);
}

/// Inverse of to_json. Checks the structural invariants of each kind.
inline Repr repr_from_json(const nlohmann::json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "zero") return ZeroRepr{};

    const std::size_t order = j.at("order").get<std::size_t>();
    IntPoly atilde = j.at("atilde").get<IntPoly>();
    IntPoly btilde = j.at("btilde").get<IntPoly>();
    if (order == 0 || btilde.degree() != order || btilde.leading() != 1)
        throw std::invalid_argument("btilde must be monic of degree " + std::to_string(order));
    if (atilde.is_zero() || *atilde.degree() > order)
        throw std::invalid_argument("atilde must be nonzero with degree <= order");

    if (kind == "divmod") return DivModRepr{detail::get_base(j), std::move(atilde), std::move(btilde), order};
    if (kind != "modmod") throw std::invalid_argument("unknown representation kind '" + kind + "'");

    ModModRepr r;
    r.base = detail::get_base(j);
    r.atilde = std::move(atilde);
    r.btilde = std::move(btilde);
    r.order = order;
    r.alpha_d = bigint_from_json(j.at("alpha_d"));
    r.sign = j.at("sign").get<int>();
    r.offset = j.at("offset").get<int>();
    r.divisor = bigint_from_json(j.at("divisor"));
    if (sgn(r.alpha_d) == 0 || r.alpha_d != r.btilde.free_term())
        throw std::invalid_argument("alpha_d must equal the nonzero free term of btilde");
    if (r.sign != sgn(r.alpha_d) || r.offset != (-1 - r.sign) / 2 || r.divisor != abs(r.alpha_d))
        throw std::invalid_argument("sign/offset/divisor inconsistent with alpha_d");

    const auto& h = j.at("shift_h");
    if (h.is_null()) return r;
    BigInt hv = bigint_from_json(h);
    if (hv < 1) throw std::invalid_argument("shift_h must be positive");
    return ShiftedRepr{std::move(r), std::move(hv)};
}

inline std::string render(const Repr& repr, RenderFormat format) {
    if (format == RenderFormat::json) return to_json(repr).dump(2);
    const bool latex = format == RenderFormat::latex;
    struct Visitor {
        bool latex;
        std::string operator()(const ZeroRepr&) const { return "0"; }
        std::string operator()(const DivModRepr& r) const {
            return latex ? detail::render_latex(r) : detail::render_text(r);
        }
        std::string operator()(const ModModRepr& r) const {
            return latex ? detail::render_latex(r) : detail::render_text(r);
        }
        std::string operator()(const ShiftedRepr& r) const {
            const std::string h = to_string(r.h);
            return (*this)(r.inner) + (latex ? " - " + h + "^{n+1}" : " - " + h + "^(n+1)");
        }
    };
    return std::visit(Visitor{latex}, repr);
}

inline const char* kind_name(const Repr& repr) {
    static constexpr const char* names[] = {"zero", "divmod", "modmod", "shifted"};
    return names[repr.index()];
}

}  // namespace crec
