#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "padic/errors.hpp"
#include "padic/psi.hpp"
#include "padic/rational.hpp"

namespace padic {

// psi-spec document format. Rationals are strings "num/den" in lowest terms;
// anything non-reduced or negative is rejected so that parsing is bit-exact.
//
//   {"kind":"table","entries":[[4,"4/9"],[6,"1/2"]]}
//   {"kind":"rule","name":"constant","c":"1/2"}
//   {"kind":"rule","name":"psi_k","p":2,"k":1}
//   {"kind":"rule","name":"psi_prime","p":2}
//   {"kind":"rule","name":"psi_prime_k","p":3,"k":2}
//   {"kind":"rule","name":"psi_x","p":2,"bits":[1,0,1]}
//   {"kind":"rule","name":"scaled","c":"1/2","base":{...}}
//   {"kind":"rule","name":"restricted","p":3,"base":{...}}

namespace detail {

inline Rational parse_psi_rational(const nlohmann::json& j, const char* field) {
    if (!j.is_string()) throw domain_error(std::string("psi spec: field '") + field + "' must be a \"num/den\" string");
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos)
        throw domain_error("psi spec: rational '" + s + "' must be written as \"num/den\"");
    const Rational value = parse_fraction(s);
    if (value < 0) throw domain_error("psi spec: rational '" + s + "' must be non-negative");
    return value;
}

inline std::int64_t parse_psi_prime_field(const nlohmann::json& j) {
    if (!j.contains("p") || !j["p"].is_number_integer())
        throw domain_error("psi spec: rule requires an integer field 'p'");
    return j["p"].get<std::int64_t>();
}

}  // namespace detail

inline PsiSpec psi_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind")) throw domain_error("psi spec: expected an object with 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "table") {
        if (!j.contains("entries") || !j["entries"].is_array())
            throw domain_error("psi spec: table requires an 'entries' array");
        std::map<std::int64_t, Rational> entries;
        for (const auto& row : j["entries"]) {
            if (!row.is_array() || row.size() != 2 || !row[0].is_number_integer())
                throw domain_error("psi spec: table entries must be [n, \"num/den\"] pairs");
            const std::int64_t n = row[0].get<std::int64_t>();
            if (entries.count(n)) throw domain_error("psi spec: duplicate table entry for n");
            entries[n] = detail::parse_psi_rational(row[1], "entries");
        }
        return PsiSpec::table(std::move(entries));
    }
    if (kind != "rule") throw domain_error("psi spec: kind must be 'table' or 'rule'");
    if (!j.contains("name")) throw domain_error("psi spec: rule requires 'name'");
    const std::string name = j["name"].get<std::string>();
    if (name == "constant") return PsiSpec::constant(detail::parse_psi_rational(j.at("c"), "c"));
    if (name == "psi_k") return PsiSpec::psi_k(detail::parse_psi_prime_field(j), j.at("k").get<int>());
    if (name == "psi_prime") return PsiSpec::psi_prime(detail::parse_psi_prime_field(j));
    if (name == "psi_prime_k")
        return PsiSpec::psi_prime_k(detail::parse_psi_prime_field(j), j.at("k").get<int>());
    if (name == "psi_x") {
        if (!j.contains("bits") || !j["bits"].is_array())
            throw domain_error("psi spec: psi_x requires a 'bits' array");
        std::vector<int> bits;
        for (const auto& b : j["bits"]) bits.push_back(b.get<int>());
        return PsiSpec::psi_x(detail::parse_psi_prime_field(j), std::move(bits));
    }
    if (name == "scaled")
        return PsiSpec::scaled(psi_from_json(j.at("base")), detail::parse_psi_rational(j.at("c"), "c"));
    if (name == "restricted")
        return PsiSpec::restricted(psi_from_json(j.at("base")), detail::parse_psi_prime_field(j));
    throw domain_error("psi spec: unknown rule name '" + name + "'");
}

inline nlohmann::ordered_json psi_to_json(const PsiSpec& spec) {
    using nlohmann::ordered_json;
    ordered_json j;
    switch (spec.kind()) {
        case PsiSpec::Kind::Table: {
            j["kind"] = "table";
            auto rows = ordered_json::array();
            for (const auto& [n, v] : spec.entries()) rows.push_back({n, to_fraction_string(v)});
            j["entries"] = std::move(rows);
            break;
        }
        case PsiSpec::Kind::Constant:
            j["kind"] = "rule";
            j["name"] = "constant";
            j["c"] = to_fraction_string(spec.scalar());
            break;
        case PsiSpec::Kind::PsiK:
            j["kind"] = "rule";
            j["name"] = "psi_k";
            j["p"] = spec.prime();
            j["k"] = spec.k();
            break;
        case PsiSpec::Kind::PsiPrime:
            j["kind"] = "rule";
            j["name"] = "psi_prime";
            j["p"] = spec.prime();
            break;
        case PsiSpec::Kind::PsiPrimeK:
            j["kind"] = "rule";
            j["name"] = "psi_prime_k";
            j["p"] = spec.prime();
            j["k"] = spec.k();
            break;
        case PsiSpec::Kind::PsiX:
            j["kind"] = "rule";
            j["name"] = "psi_x";
            j["p"] = spec.prime();
            j["bits"] = spec.bits();
            break;
        case PsiSpec::Kind::Scaled:
            j["kind"] = "rule";
            j["name"] = "scaled";
            j["c"] = to_fraction_string(spec.scalar());
            j["base"] = psi_to_json(spec.base());
            break;
        case PsiSpec::Kind::Restricted:
            j["kind"] = "rule";
            j["name"] = "restricted";
            j["p"] = spec.prime();
            j["base"] = psi_to_json(spec.base());
            break;
    }
    return j;
}

inline PsiSpec psi_from_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw domain_error(std::string("psi spec: invalid JSON: ") + e.what());
    }
    return psi_from_json(j);
}

}  // namespace padic
