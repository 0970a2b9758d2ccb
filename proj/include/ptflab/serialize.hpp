#pragma once

#include <string>

#include <json.hpp>

#include "ptflab/boolean.hpp"
#include "ptflab/gf2.hpp"
#include "ptflab/ptf.hpp"
#include "ptflab/winnow.hpp"

namespace ptflab {

using json = nlohmann::ordered_json;

// Canonical JSON for concept types. Variables are 1-based in serialized form
// (matching written reports), 0-based in memory.

inline json to_json(const DecisionList& L) {
    json j;
    j["kind"] = "decision_list";
    j["n"] = L.n;
    j["items"] = json::array();
    for (const auto& [lit, b] : L.items)
        j["items"].push_back({lit.var + 1, lit.negated, b});
    j["default"] = L.default_label;
    return j;
}

inline json to_json(const ModifiedDecisionList& f) {
    json j;
    j["kind"] = "modified_decision_list";
    j["n"] = f.n;
    j["items"] = json::array();
    for (const auto& [lit, b] : f.items)
        j["items"].push_back({lit.var + 1, lit.negated, b});
    return j;
}

inline json to_json(const RDecisionList& L) {
    json j;
    j["kind"] = "r_decision_list";
    j["n"] = L.n;
    j["r"] = L.r;
    j["items"] = json::array();
    for (const auto& [c, b] : L.items) {
        json lits = json::array();
        for (const auto& l : c.lits) lits.push_back({l.var + 1, l.negated});
        j["items"].push_back({lits, b});
    }
    j["default"] = L.default_label;
    return j;
}

inline json to_json(const ParityFunction& p) {
    json j;
    j["kind"] = "parity";
    j["n"] = p.n;
    j["support"] = json::array();
    for (auto v : p.support) j["support"].push_back(v + 1);
    return j;
}

inline DecisionList decision_list_from_json(const json& j) {
    DecisionList L;
    L.n = j.at("n").get<std::uint32_t>();
    for (const auto& it : j.at("items"))
        L.items.push_back({Literal{it.at(0).get<std::uint32_t>() - 1, it.at(1).get<bool>()},
                           it.at(2).get<int>()});
    L.default_label = j.at("default").get<int>();
    return L;
}

inline ParityFunction parity_from_json(const json& j) {
    ParityFunction p;
    p.n = j.at("n").get<std::uint32_t>();
    for (const auto& v : j.at("support"))
        p.support.push_back(v.get<std::uint32_t>() - 1);
    std::sort(p.support.begin(), p.support.end());
    return p;
}

inline json to_json(const VerifyReport& r) {
    json j;
    j["domain_size"] = std::uint64_t(1) << r.n;
    j["n"] = r.n;
    j["mismatches"] = r.mismatches;
    j["sign_zero_hits"] = r.sign_zero_hits;
    if (r.first_witness)
        j["first_witness"] = bits_to_string(mask_to_bits(*r.first_witness, r.n));
    j["degree"] = r.degree;
    j["weight"] = r.weight.get_str();
    j["verified"] = r.valid();
    return j;
}

inline json to_json(const PtfInfo& info) {
    json j;
    j["construction"] = info.construction;
    j["h"] = info.h;
    j["cheb_degree"] = info.cheb_degree;
    j["exponent"] = info.exponent;
    j["C"] = info.scale_c.get_str();
    j["degree"] = info.degree;
    j["weight"] = info.weight.get_str();
    return j;
}

inline json to_json(const MistakeRecord& r) {
    json j;
    j["trials"] = r.trials;
    j["mistakes"] = r.mistakes;
    j["mistake_trials"] = r.mistake_trials;
    j["final_consistent"] = r.final_consistent;
    j["consistency_checked"] = r.consistency_checked;
    j["d"] = r.d;
    j["alpha"] = r.alpha.get_str();
    j["theta"] = r.theta.get_str();
    j["seed"] = r.seed;
    return j;
}

inline std::string tradeoff_csv(const std::vector<TradeoffRow>& rows) {
    std::string out = "k,h,degree,log2_weight,bound_log2_weight,verified\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%zu,%u,%zu,%.6f,%.6f,%d\n", r.k, r.h,
                      r.degree, r.log2_weight, r.bound_log2_weight, int(r.verified));
        out += buf;
    }
    return out;
}

inline json to_json(const std::vector<TradeoffRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json j;
        j["k"] = r.k;
        j["h"] = r.h;
        j["degree"] = r.degree;
        j["log2_weight"] = r.log2_weight;
        j["bound_log2_weight"] = r.bound_log2_weight;
        j["verified"] = r.verified;
        arr.push_back(j);
    }
    return arr;
}

// Sample files: one example per line, "bits label" with bits as a 0/1
// string (x_1 leftmost) and label +1 / -1.
inline std::string sample_to_text(const LabeledSample& S) {
    std::string out;
    for (const auto& [x, label] : S.examples) {
        out += bits_to_string(x);
        out += label > 0 ? " +1\n" : " -1\n";
    }
    return out;
}

inline LabeledSample sample_from_text(const std::string& text) {
    LabeledSample S;
    std::istringstream is(text);
    std::string bits, label;
    while (is >> bits >> label) {
        BitVec x = bits_from_string(bits);
        if (S.examples.empty())
            S.n = std::uint32_t(x.size());
        else
            check_dim(x.size(), S.n);
        if (label != "+1" && label != "-1" && label != "1")
            throw std::invalid_argument("sample label must be +1 or -1");
        S.examples.push_back({std::move(x), label == "-1" ? -1 : +1});
    }
    return S;
}

} // namespace ptflab
