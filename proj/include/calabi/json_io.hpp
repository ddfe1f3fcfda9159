#pragma once

// JSON wire formats. Exact scalars serialize as exact fraction strings;
// decimal strings are only ever emitted next to a certified enclosure.
//
//   Rational        {"rat":"p/q"}
//   Log3Linear      {"a":"p/q","b":"p/q"}            value a + b ln3
//   PiGraded        {"coeff":{...},"two_pi_pow":n}
//   Interval        {"lo":"p/q","hi":"p/q"}
//   LaurentPoly     {"var":"u=1+tau","terms":[{"exp":e,"coeff":<scalar>},...]}
//   Scenario        {"case":"general|even|odd","k":n,"m1":n,"m2":n,"alpha1":"p/q"}

#include "calabi/profile.hpp"
#include "calabi/reconstruct.hpp"
#include "calabi/scenario.hpp"

#include "json.hpp"

#include <string>

namespace calabi {

using nlohmann::json;

// --- scalars -----------------------------------------------------------------

inline json to_json(const Rational& q) { return json{{"rat", to_frac_string(q)}}; }
inline json to_json(const Log3Linear& x) {
    return json{{"a", to_frac_string(x.a)}, {"b", to_frac_string(x.b)}};
}
inline json to_json(const PiGraded& x) {
    return json{{"coeff", to_json(x.coeff)}, {"two_pi_pow", x.two_pi_pow}};
}
inline json to_json(const Interval& v) {
    return json{{"lo", to_frac_string(v.lo)}, {"hi", to_frac_string(v.hi)}};
}

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    return parse_rational(j.at("rat").get<std::string>());
}
inline Log3Linear log3_from_json(const json& j) {
    return Log3Linear(parse_rational(j.at("a").get<std::string>()),
                      parse_rational(j.at("b").get<std::string>()));
}
inline PiGraded pigraded_from_json(const json& j) {
    return PiGraded(log3_from_json(j.at("coeff")), j.at("two_pi_pow").get<int>());
}
inline Interval interval_from_json(const json& j) {
    return Interval(parse_rational(j.at("lo").get<std::string>()),
                    parse_rational(j.at("hi").get<std::string>()));
}

inline json scalar_to_json(const Rational& q) { return to_json(q); }
inline json scalar_to_json(const Log3Linear& x) { return to_json(x); }
inline json scalar_to_json(const Interval& v) { return to_json(v); }

// --- polynomials ---------------------------------------------------------------

template <class C>
json to_json(const LaurentPoly<C>& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms) terms.push_back(json{{"exp", e}, {"coeff", scalar_to_json(c)}});
    return json{{"var", "u=1+tau"}, {"terms", terms}};
}

inline LaurentPoly<Log3Linear> log3_poly_from_json(const json& j) {
    LaurentPoly<Log3Linear> p;
    for (const auto& t : j.at("terms")) {
        const json& c = t.at("coeff");
        if (c.contains("rat"))
            p.set(t.at("exp").get<int>(), Log3Linear(rational_from_json(c)));
        else
            p.set(t.at("exp").get<int>(), log3_from_json(c));
    }
    return p;
}

// --- scenario -------------------------------------------------------------------

inline json to_json(const Scenario& s) {
    json j{{"case", case_name(s.kind)}, {"k", s.k}, {"alpha1", to_frac_string(s.alpha1)}};
    if (s.kind == AnsatzCase::General) {
        j["m1"] = s.m1.str();
        j["m2"] = s.m2.str();
    }
    return j;
}

inline Scenario scenario_from_json(const json& j) {
    std::string c = j.at("case").get<std::string>();
    long k = j.at("k").get<long>();
    Rational a1 = j.contains("alpha1") ? parse_rational(j.at("alpha1").get<std::string>())
                                       : Rational(1);
    if (c == "even") return Scenario::even(k, a1);
    if (c == "odd") return Scenario::odd(k, a1);
    if (c == "general") {
        auto read_int = [&](const char* key) {
            const json& v = j.at(key);
            return v.is_string() ? Int(v.get<std::string>()) : Int(v.get<long>());
        };
        return Scenario::general(k, read_int("m1"), read_int("m2"), a1);
    }
    throw ScenarioError("scenario_from_json: unknown case '" + c + "'");
}

// --- derived values -------------------------------------------------------------

inline json to_json(const Log3Ratio& r, const Rational& width) {
    return json{{"num", to_json(r.num)},
                {"den", to_json(r.den)},
                {"enclosure", to_json(r.eval(width))}};
}

inline json to_json(const ScaledConstant& c, const Rational& width) {
    json j{{"base", to_json(c.base)}, {"ratio_pow", c.ratio_pow}};
    if (c.ratio_pow != 0) j["ratio"] = to_json(c.ratio, width);
    Interval e = c.eval(width);
    j["enclosure"] = to_json(e);
    j["decimal"] = decimal_string(e.mid(), 12);
    j["symbolic"] = c.str();
    return j;
}

inline json constants_json(const Scenario& s, const ConstantSet& c, const Rational& width) {
    json j;
    j["scenario"] = to_json(s);
    j["C_k"] = to_json(c.C_k);
    j["R_k"] = to_json(c.R_k);
    j["lambda"] = to_json(c.lambda, width);
    json ct{{"one", to_json(c.c_tilde.one)},
            {"a_sq", to_json(c.c_tilde.asq)},
            {"b_sq", to_json(c.c_tilde.bsq)}};
    if (c.ab) {
        ct["enclosure"] = to_json(c.c_tilde.eval(c.ab->first, c.ab->second, width));
        j["a_k"] = to_json(c.ab->first, width);
        j["b_k"] = to_json(c.ab->second, width);
    } else {
        ct["enclosure"] = to_json(c.c_tilde.one.eval(width));
    }
    j["C_tilde"] = ct;
    j["coupling_ratio"] = to_json(c.coupling, width);
    return j;
}

inline json to_json(const SignCertificate& c) {
    json j;
    switch (c.verdict) {
        case SignCertificate::Verdict::PositiveOnDomain: j["verdict"] = "positive_on_domain"; break;
        case SignCertificate::Verdict::NegativeOnDomain: j["verdict"] = "negative_on_domain"; break;
        case SignCertificate::Verdict::SignChange: j["verdict"] = "sign_change"; break;
    }
    j["method"] = c.method == SignCertificate::Method::Sturm ? "sturm" : "interval_subdivision";
    if (c.verdict == SignCertificate::Verdict::SignChange)
        j["witness_u"] = json{{"lo", to_frac_string(c.witness_lo)},
                              {"hi", to_frac_string(c.witness_hi)}};
    return j;
}

inline json to_json(const BoundaryReport& b) {
    json arr = json::array();
    for (const auto& e : b.entries)
        arr.push_back(json{{"condition", e.name}, {"pass", e.pass}, {"residue", e.residue}});
    return arr;
}

inline json report_json(const SolvabilityReport& r, const Rational& width) {
    json j;
    j["scenario"] = to_json(r.scen);
    j["verdict"] = r.solvable() ? "solvable" : "no_solution";
    j[r.solvable() ? "coupling_ratio" : "pseudo_constraint"] = to_json(r.coupling, width);
    j["positivity"] = to_json(r.positivity);
    if (r.boundary) j["boundary"] = to_json(*r.boundary);
    if (r.profile) {
        json p{{"Q_shape", to_json(r.profile->q.shape)},
               {"Q_prefactor", to_json(r.profile->q.prefactor)},
               {"Q_times_bsq", r.profile->q.times_bsq},
               {"N_poly", to_json(r.profile->N_poly)},
               {"N_log_coeff", to_json(r.profile->N_log)}};
        if (r.profile->phi_is_rational()) {
            json tc = json::array();
            for (const auto& c : to_tau_basis(to_rational_poly(r.profile->N_poly)))
                tc.push_back(to_frac_string(c));
            p["N_tau_coeffs"] = tc;
        }
        j["profile"] = p;
    }
    return j;
}

}  // namespace calabi
