#include "pchain/core.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pchain {

namespace {

std::string twist_label(int j, int i)
{
    return "(j=" + std::to_string(j) + ", i=" + std::to_string(i) + ")";
}

int as_int(const nlohmann::json& value, const std::string& what)
{
    if (!value.is_number_integer())
        throw SpecError(what + " must be an integer, got " + value.dump());
    const auto wide = value.get<long long>();
    if (wide < -1'000'000'000LL || wide > 1'000'000'000LL)
        throw SpecError(what + " out of supported range: " + value.dump());
    return static_cast<int>(wide);
}

}  // namespace

ChainSpec::ChainSpec(std::vector<int> weights, const TwistMap& twists)
    : weights_(std::move(weights))
{
    if (weights_.empty())
        throw SpecError("ell must be at least 1");
    const int ell = static_cast<int>(weights_.size());
    twists_.assign(weights_.size() * weights_.size(), 0);
    for (const auto& [key, value] : twists) {
        const auto [j, i] = key;
        if (i >= j)
            throw SpecError("upper-triangular twist " + twist_label(j, i) +
                            ": c_ji requires j > i");
        if (i < 1 || j > ell)
            throw SpecError("twist index out of range " + twist_label(j, i) +
                            " for ell=" + std::to_string(ell));
        twists_[static_cast<std::size_t>(j - 1) * weights_.size() +
                static_cast<std::size_t>(i - 1)] = value;
    }
}

ChainSpec::TwistMap ChainSpec::nonzero_twists() const
{
    TwistMap out;
    for (std::size_t j = 0; j < length(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (const int c = twist(j, i); c != 0)
                out[{static_cast<int>(j + 1), static_cast<int>(i + 1)}] = c;
    return out;
}

bool ChainSpec::is_product() const
{
    for (std::size_t j = 0; j < length(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (twist(j, i) != 0)
                return false;
    return true;
}

ChainSpec parse_chain_spec(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("malformed spec: ") + e.what());
    }
    if (!doc.is_object())
        throw SpecError("malformed spec: top level must be an object");
    for (const char* key : {"ell", "l"})
        if (!doc.contains(key))
            throw SpecError(std::string("malformed spec: missing field '") + key + "'");
    for (const auto& item : doc.items())
        if (item.key() != "ell" && item.key() != "c" && item.key() != "l")
            throw SpecError("malformed spec: unknown field '" + item.key() + "'");

    const int ell = as_int(doc["ell"], "ell");
    if (ell < 1)
        throw SpecError("ell must be at least 1");

    const auto& l = doc["l"];
    if (!l.is_array())
        throw SpecError("malformed spec: 'l' must be an array");
    if (l.size() != static_cast<std::size_t>(ell))
        throw SpecError("length mismatch: ell=" + std::to_string(ell) + " but l has " +
                        std::to_string(l.size()) + " entries");
    std::vector<int> weights;
    weights.reserve(l.size());
    for (std::size_t k = 0; k < l.size(); ++k)
        weights.push_back(as_int(l[k], "l[" + std::to_string(k + 1) + "]"));

    ChainSpec::TwistMap twists;
    if (doc.contains("c")) {
        const auto& c = doc["c"];
        if (!c.is_array())
            throw SpecError("malformed spec: 'c' must be an array");
        for (const auto& entry : c) {
            if (!entry.is_object() || !entry.contains("j") || !entry.contains("i") ||
                !entry.contains("v") || entry.size() != 3)
                throw SpecError("malformed twist entry " + entry.dump() +
                                ": expected {j, i, v}");
            const int j = as_int(entry["j"], "twist j");
            const int i = as_int(entry["i"], "twist i");
            const int v = as_int(entry["v"], "twist v");
            if (!twists.emplace(std::pair{j, i}, v).second)
                throw SpecError("duplicate twist " + twist_label(j, i));
        }
    }
    return ChainSpec(std::move(weights), twists);
}

ChainSpec load_chain_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SpecError("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_chain_spec(buf.str());
}

std::string serialize(const ChainSpec& spec)
{
    nlohmann::ordered_json doc;
    doc["ell"] = spec.length();
    doc["c"] = nlohmann::ordered_json::array();
    for (const auto& [key, value] : spec.nonzero_twists()) {
        nlohmann::ordered_json entry;
        entry["j"] = key.first;
        entry["i"] = key.second;
        entry["v"] = value;
        doc["c"].push_back(entry);
    }
    doc["l"] = spec.weights();
    return doc.dump();
}

Diagnostics validate(const ChainSpec& spec)
{
    Diagnostics diag;
    for (std::size_t i = 0; i < spec.length(); ++i) {
        const int l = spec.weight(i);
        const std::string name = "l_" + std::to_string(i + 1);
        if (l == 0)
            diag.warnings.push_back(name + " = 0: positivity theorem hypothesis fails");
        else if (l < 0)
            diag.warnings.push_back(name + " = " + std::to_string(l) +
                                    ": negative weight: positivity will fail");
    }
    return diag;
}

}  // namespace pchain
