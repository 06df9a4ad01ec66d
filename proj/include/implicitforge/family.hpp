#ifndef IMPLICITFORGE_FAMILY_HPP
#define IMPLICITFORGE_FAMILY_HPP

// The implicit family
//
//   F(x,y,z) = sum_i prod_m ((A/D) * (B/E)) * (C/F_elem) - d
//
// with, per factor (i, m),
//   A = P1^l1                 D = P2^l2
//   B = Ht(P3^l3)^mu1         E = Ht(P4^l4)^mu2
//   C = Gt(Ht(P5^l5 / P6^l6))^mu3
//   F_elem = Gt(Ht(P7^l7 / P8^l8))^mu4
// where P1..P8 are power sums and Ht, Gt are trigonometric or inverse trigonometric
// wrappers. Any of A..F_elem may be replaced by its absolute value. The sixth element
// is called F_elem here because F already names the whole function.

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "implicitforge/constituents.hpp"
#include "implicitforge/error.hpp"
#include "implicitforge/expr.hpp"

namespace implicitforge {

enum class Wrapper { identity, sin, cos, tan, cot, asin, acos, atan, arccot };

inline constexpr std::array<std::string_view, 9> kWrapperNames = {"identity", "sin",  "cos",  "tan",   "cot",
                                                                  "asin",     "acos", "atan", "arccot"};

inline std::string_view wrapper_name(Wrapper w) { return kWrapperNames[static_cast<int>(w)]; }

inline Wrapper wrapper_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kWrapperNames.size(); ++i)
        if (kWrapperNames[i] == name) return static_cast<Wrapper>(i);
    throw InvalidArgument("unknown wrapper '" + std::string(name) + "'");
}

using PowerSum = std::vector<PowerTerm>;

enum Element : int { kA = 0, kB, kC, kD, kE, kF };

struct FamilyFactor {
    /// P1..P8. Default: the constant 1.
    std::array<PowerSum, 8> p;
    std::array<double, 8> lambda;
    std::array<double, 4> mu;
    Wrapper ht = Wrapper::identity;
    Wrapper gt = Wrapper::identity;
    /// Absolute-value flags for A, B, C, D, E, F_elem (indexed by Element).
    std::array<bool, 6> abs = {};

    FamilyFactor() {
        p.fill(PowerSum{PowerTerm{1.0, 0.0, 0.0, 0.0, false}});
        lambda.fill(1.0);
        mu.fill(1.0);
    }
};

struct FamilyConfig {
    double d = 0.0;
    /// Outer list: sum over i. Inner list: product over m.
    std::vector<std::vector<FamilyFactor>> terms;
};

namespace detail {

inline Expr raise(Expr base, double exponent) {
    if (exponent == 1.0) return base;
    return fn::pow(std::move(base), exponent);
}

inline Expr wrap(Wrapper w, Expr e) {
    switch (w) {
        case Wrapper::identity: return e;
        case Wrapper::sin: return fn::sin(std::move(e));
        case Wrapper::cos: return fn::cos(std::move(e));
        case Wrapper::tan: return fn::tan(std::move(e));
        case Wrapper::cot: return fn::cot(std::move(e));
        case Wrapper::asin: return fn::asin(std::move(e));
        case Wrapper::acos: return fn::acos(std::move(e));
        case Wrapper::atan: return fn::atan(std::move(e));
        case Wrapper::arccot: return fn::arccot(std::move(e));
    }
    return e;
}

inline Expr build_factor(const FamilyFactor& f) {
    auto P = [&](int k) { return raise(power_sum(f.p[k]), f.lambda[k]); };
    auto maybe_abs = [&](Element el, Expr e) { return f.abs[el] ? fn::abs(std::move(e)) : e; };

    Expr a = maybe_abs(kA, P(0));
    Expr d = maybe_abs(kD, P(1));
    Expr b = maybe_abs(kB, raise(wrap(f.ht, P(2)), f.mu[0]));
    Expr e = maybe_abs(kE, raise(wrap(f.ht, P(3)), f.mu[1]));
    Expr c = maybe_abs(kC, raise(wrap(f.gt, wrap(f.ht, P(4) / P(5))), f.mu[2]));
    Expr f_elem = maybe_abs(kF, raise(wrap(f.gt, wrap(f.ht, P(6) / P(7))), f.mu[3]));
    return ((a / d) * (b / e)) * (c / f_elem);
}

}  // namespace detail

inline void validate(const FamilyConfig& cfg) {
    if (!std::isfinite(cfg.d)) throw InvalidArgument("family constant d must be finite");
    if (cfg.terms.empty()) throw InvalidArgument("family needs at least one term");
    for (const auto& factors : cfg.terms) {
        if (factors.empty()) throw InvalidArgument("every family term needs at least one factor");
        for (const auto& f : factors) {
            for (double l : f.lambda)
                if (!std::isfinite(l)) throw InvalidArgument("family exponents must be finite");
            for (double m : f.mu)
                if (!std::isfinite(m)) throw InvalidArgument("family exponents must be finite");
        }
    }
}

inline Expr build_family(const FamilyConfig& cfg) {
    validate(cfg);
    std::vector<Expr> sum;
    for (const auto& factors : cfg.terms) {
        Expr product = detail::build_factor(factors.front());
        for (std::size_t m = 1; m < factors.size(); ++m) product = product * detail::build_factor(factors[m]);
        sum.push_back(product);
    }
    return detail::sum_of(std::move(sum)) - Expr::constant(cfg.d);
}

// JSON form:
//   {"d": real, "terms": [[factor, ...], ...]}
//   factor = {"P1".."P8": [[a, b, c, d] or [a, b, c, d, abs], ...],
//             "l1".."l8": real, "mu1".."mu4": real,
//             "Ht": wrapper, "Gt": wrapper, "abs": ["A", ..., "F"]}
// Omitted keys keep the FamilyFactor defaults. Unknown keys are rejected.

namespace detail {

inline double json_real(const nlohmann::json& j, const std::string& what) {
    if (!j.is_number()) throw InvalidArgument(what + " must be a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) throw InvalidArgument(what + " must be finite");
    return v;
}

inline PowerSum power_sum_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array()) throw InvalidArgument(what + " must be a list of power terms");
    PowerSum out;
    for (const auto& t : j) {
        if (!t.is_array() || (t.size() != 4 && t.size() != 5))
            throw InvalidArgument(what + " terms must be [a, b, c, d] or [a, b, c, d, abs]");
        PowerTerm term{json_real(t[0], what), json_real(t[1], what), json_real(t[2], what), json_real(t[3], what),
                       false};
        if (t.size() == 5) {
            if (!t[4].is_boolean()) throw InvalidArgument(what + " abs flag must be a boolean");
            term.abs_base = t[4].get<bool>();
        }
        out.push_back(term);
    }
    return out;
}

inline FamilyFactor factor_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgument("family factor must be an object");
    FamilyFactor f;
    for (const auto& [key, value] : j.items()) {
        if (key.size() == 2 && key[0] == 'P' && key[1] >= '1' && key[1] <= '8') {
            f.p[key[1] - '1'] = power_sum_from_json(value, key);
        } else if (key.size() == 2 && key[0] == 'l' && key[1] >= '1' && key[1] <= '8') {
            f.lambda[key[1] - '1'] = json_real(value, key);
        } else if (key.size() == 3 && key.starts_with("mu") && key[2] >= '1' && key[2] <= '4') {
            f.mu[key[2] - '1'] = json_real(value, key);
        } else if (key == "Ht" || key == "Gt") {
            if (!value.is_string()) throw InvalidArgument(key + " must be a wrapper name");
            (key == "Ht" ? f.ht : f.gt) = wrapper_from_name(value.get<std::string>());
        } else if (key == "abs") {
            if (!value.is_array()) throw InvalidArgument("abs must be a list of element letters");
            for (const auto& letter : value) {
                static constexpr std::string_view letters = "ABCDEF";
                auto s = letter.is_string() ? letter.get<std::string>() : std::string();
                auto pos = s.size() == 1 ? letters.find(s[0]) : std::string_view::npos;
                if (pos == std::string_view::npos) throw InvalidArgument("abs entries must be one of A..F");
                f.abs[pos] = true;
            }
        } else {
            throw InvalidArgument("unknown family factor key '" + key + "'");
        }
    }
    return f;
}

}  // namespace detail

inline FamilyConfig family_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgument("family config must be a JSON object");
    FamilyConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "d") {
            cfg.d = detail::json_real(value, "d");
        } else if (key == "terms") {
            if (!value.is_array()) throw InvalidArgument("terms must be a list");
            for (const auto& term : value) {
                if (!term.is_array()) throw InvalidArgument("each term must be a list of factors");
                std::vector<FamilyFactor> factors;
                for (const auto& f : term) factors.push_back(detail::factor_from_json(f));
                cfg.terms.push_back(std::move(factors));
            }
        } else {
            throw InvalidArgument("unknown family config key '" + key + "'");
        }
    }
    validate(cfg);
    return cfg;
}

inline FamilyConfig family_from_json_text(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(std::string("family config is not valid JSON: ") + e.what());
    }
    return family_from_json(j);
}

}  // namespace implicitforge

#endif
