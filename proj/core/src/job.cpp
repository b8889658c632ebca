#include "subdyn/job.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace subdyn {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& msg) {
    throw ParseError("job file: " + msg);
}

const json& require(const json& j, const char* key, const char* ctx) {
    auto it = j.find(key);
    if (it == j.end()) schema_fail(std::string("missing field '") + key + "' in " + ctx);
    return *it;
}

FieldPtr parse_field(const json& jf) {
    if (!jf.is_object()) schema_fail("'field' must be an object");
    std::string type = require(jf, "type", "'field'").get<std::string>();
    if (type == "rationals") return FieldDesc::rationals();
    if (type == "prime") {
        const json& jp = require(jf, "p", "'field'");
        if (!jp.is_number_unsigned()) schema_fail("'field.p' must be a positive integer");
        return FieldDesc::prime(jp.get<unsigned long>());
    }
    if (type == "parameters") {
        const json& names = require(jf, "names", "'field'");
        if (!names.is_array() || names.empty())
            schema_fail("'field.names' must be a non-empty array of parameter names");
        std::vector<std::string> params;
        for (const auto& n : names) {
            if (!n.is_string()) schema_fail("'field.names' entries must be strings");
            params.push_back(n.get<std::string>());
        }
        FieldPtr base = FieldDesc::rationals();
        if (jf.contains("base")) {
            const json& jb = jf["base"];
            if (jb.is_string() && jb.get<std::string>() == "rationals") {
                base = FieldDesc::rationals();
            } else if (jb.is_object()) {
                base = parse_field(jb);
                if (base->kind == FieldKind::Function)
                    schema_fail("'field.base' cannot itself be a parameter field");
            } else {
                schema_fail("'field.base' must be \"rationals\" or a field object");
            }
        }
        return FieldDesc::function(std::move(params), base);
    }
    schema_fail("unknown field type '" + type + "' (expected rationals|prime|parameters)");
}

} // namespace

JobFile parse_job_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("job file: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) schema_fail("top level must be an object");

    JobFile job;
    const json& ja = require(j, "ambient", "the job");
    if (!ja.is_number_unsigned() || ja.get<unsigned long>() < 1)
        schema_fail("'ambient' must be a positive integer (the N of P^N)");
    job.ambient = ja.get<unsigned>();

    job.field = parse_field(require(j, "field", "the job"));

    const json& jv = require(j, "variables", "the job");
    if (!jv.is_array()) schema_fail("'variables' must be an array of names");
    std::vector<std::string> vars;
    for (const auto& v : jv) {
        if (!v.is_string()) schema_fail("'variables' entries must be strings");
        vars.push_back(v.get<std::string>());
    }
    if (vars.size() != job.ambient + 1)
        schema_fail("'variables' must list exactly ambient+1 = " +
                    std::to_string(job.ambient + 1) + " names, got " +
                    std::to_string(vars.size()));
    try {
        job.ring = PolyRing::make(job.field, vars, MonomialOrder::GrevLex);
    } catch (const MathError& e) {
        schema_fail(e.what());
    }

    auto parse_polys = [&](const json& arr, const char* what) {
        if (!arr.is_array() || arr.empty())
            schema_fail(std::string("'") + what + "' must be a non-empty array of polynomials");
        std::vector<Polynomial> out;
        for (const auto& s : arr) {
            if (!s.is_string())
                schema_fail(std::string("'") + what + "' entries must be polynomial strings");
            try {
                out.push_back(parse_poly(s.get<std::string>(), job.ring));
            } catch (const ParseError& e) {
                throw ParseError(std::string("job file: in '") + what + "' entry \"" +
                                 s.get<std::string>() + "\": " + e.what());
            }
        }
        return out;
    };

    if (j.contains("morphism")) {
        job.morphism_text.clear();
        for (const auto& s : j["morphism"])
            if (s.is_string()) job.morphism_text.push_back(s.get<std::string>());
        std::vector<Polynomial> coords = parse_polys(j["morphism"], "morphism");
        if (coords.size() != job.ambient + 1)
            schema_fail("'morphism' must list exactly ambient+1 coordinates");
        job.morphism = Morphism::make(job.ring, std::move(coords));
    }
    if (j.contains("variety")) {
        job.variety_text.clear();
        for (const auto& s : j["variety"])
            if (s.is_string()) job.variety_text.push_back(s.get<std::string>());
        job.variety = Subvariety::make(job.ring, parse_polys(j["variety"], "variety"));
    }

    static const char* known[] = {"ambient", "field", "variables", "morphism", "variety",
                                  "options", "comment"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok |= it.key() == k;
        if (!ok) schema_fail("unknown key '" + it.key() + "'");
    }
    return job;
}

JobFile load_job(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("job file: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_job_text(ss.str());
}

} // namespace subdyn
