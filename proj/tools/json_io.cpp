#include "json_io.hpp"

#include <algorithm>

namespace matchfree::io {

Json set_to_json(SetMask m) {
    Json a = Json::array();
    for (int k : elements_of(m)) a.push_back(k);
    return a;
}

Json sets_to_json(std::span<const SetMask> sets) {
    Json a = Json::array();
    for (SetMask m : sets) a.push_back(set_to_json(m));
    return a;
}

Json family_to_json(const Family& f) {
    Json j;
    j["n"] = f.n();
    j["sets"] = sets_to_json(f.members());
    return j;
}

Family family_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("sets")) {
        throw InputError("family document needs \"n\" and \"sets\"");
    }
    if (!j["n"].is_number_integer()) throw InputError("\"n\" must be an integer");
    const auto n = j["n"].get<std::int64_t>();
    if (n < 0 || n > kMaxGround) throw InputError("\"n\" must lie in [0, 62]");
    if (!j["sets"].is_array()) throw InputError("\"sets\" must be an array");
    std::vector<SetMask> sets;
    for (const auto& s : j["sets"]) {
        if (!s.is_array()) throw InputError("each set must be an array of integers");
        SetMask m = 0;
        for (const auto& e : s) {
            if (!e.is_number_integer()) throw InputError("set elements must be integers");
            const auto k = e.get<std::int64_t>();
            if (k < 1 || k > n) throw InputError("element " + std::to_string(k) + " outside [1, n]");
            const SetMask bit = element_bit(static_cast<int>(k));
            if (m & bit) throw InputError("element " + std::to_string(k) + " repeated within a set");
            m |= bit;
        }
        sets.push_back(m);
    }
    return Family(static_cast<int>(n), std::move(sets));
}

Family parse_family(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return family_from_json(j);
}

Json rational_to_json(const Rational& r) {
    Json j;
    j["num"] = r.num();
    j["den"] = r.den();
    return j;
}

Rational rational_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den") || !j["num"].is_number_integer() ||
        !j["den"].is_number_integer()) {
        throw InputError("rational needs integer \"num\" and \"den\"");
    }
    const auto den = j["den"].get<std::int64_t>();
    if (den == 0) throw InputError("zero denominator");
    return Rational(j["num"].get<std::int64_t>(), den);
}

Json params_to_json(const Params& p) {
    Json j;
    j["s"] = p.s;
    j["c"] = p.c;
    j["l"] = p.l;
    j["n"] = p.n;
    return j;
}

Json report_to_json(const BoundReport& r) {
    Json j;
    j["kind"] = "bound";
    j["name"] = r.name;
    j["hypothesis_ok"] = r.hypothesis_ok;
    j["bound"] = rational_to_json(r.bound);
    j["observed"] = r.observed;
    j["holds"] = r.holds;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json estimate_to_json(const McEstimate& e) {
    Json j;
    j["trials"] = e.trials;
    j["hits"] = e.hits;
    j["estimate"] = rational_to_json(e.estimate);
    j["target"] = rational_to_json(e.target);
    j["z_score"] = e.z_score;
    return j;
}

Json oracle_to_json(const OracleResult& r) {
    Json j;
    j["n"] = r.n;
    j["s"] = r.s;
    j["mode"] = std::string(mode_name(r.mode));
    j["max_layer"] = r.max_layer;
    j["value"] = r.value;
    j["universe"] = r.universe;
    j["iterations"] = r.iterations;
    j["constraints"] = r.constraints;
    j["blocker"] = family_to_json(r.blocker);
    return j;
}

}  // namespace matchfree::io
