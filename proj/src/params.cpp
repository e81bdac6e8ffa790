#include "mdsc/params.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mdsc/errors.hpp"

namespace mdsc {

EnsembleParams::EnsembleParams(int dl, int dr, int L1, int gamma1,
                               int L2, int gamma2, double T, std::optional<int> M)
    : dl(dl), dr(dr), L1(L1), gamma1(gamma1), L2(L2), gamma2(gamma2), T(T), M(M) {
    validate();
}

void EnsembleParams::validate() const {
    auto fail = [](const std::string& msg) { throw PreconditionViolated("ensemble params: " + msg); };
    if (dl < 1 || dr < 1) fail("node degrees must be positive");
    if (L1 < 1 || L2 < 1) fail("coupling lengths must be positive");
    if (gamma1 < 1 || gamma1 > L1) fail("need 1 <= gamma1 <= L1");
    if (gamma2 < 1 || gamma2 > L2) fail("need 1 <= gamma2 <= L2");
    if (!(T >= 0.0 && T <= 1.0)) fail("need 0 <= T <= 1");
    if (gamma2 == 1 && T > 0.0)
        throw DegenerateCoupling("ensemble params: T > 0 requires gamma2 >= 2");
    if (M) {
        if (*M < 1) fail("section size must be positive");
        cns_per_section(*M);
    }
}

int EnsembleParams::cns_per_section(int M) const {
    long long edges = static_cast<long long>(M) * dl;
    if (edges % dr != 0)
        throw PreconditionViolated("section size: dr must divide M*dl (M=" + std::to_string(M) + ")");
    return static_cast<int>(edges / dr);
}

namespace {

int require_int(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw PreconditionViolated(std::string("params json: missing key '") + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number_integer())
        throw PreconditionViolated(std::string("params json: key '") + key + "' must be an integer");
    return v.get<int>();
}

} // namespace

EnsembleParams params_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw PreconditionViolated(std::string("params json: ") + e.what());
    }
    if (!j.is_object()) throw PreconditionViolated("params json: top level must be an object");

    static const char* known[] = {"dl", "dr", "L1", "gamma1", "L2", "gamma2", "T", "M"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw PreconditionViolated("params json: unknown key '" + it.key() + "'");
    }

    EnsembleParams p;
    p.dl = require_int(j, "dl");
    p.dr = require_int(j, "dr");
    p.L1 = require_int(j, "L1");
    p.gamma1 = require_int(j, "gamma1");
    p.L2 = require_int(j, "L2");
    p.gamma2 = require_int(j, "gamma2");
    if (!j.contains("T") || !j.at("T").is_number())
        throw PreconditionViolated("params json: key 'T' must be a number");
    p.T = j.at("T").get<double>();
    if (j.contains("M")) p.M = require_int(j, "M");
    p.validate();
    return p;
}

EnsembleParams params_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionViolated("params json: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return params_from_json_text(ss.str());
}

} // namespace mdsc
