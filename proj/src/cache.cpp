#include "hookrec/cache.hpp"

#include <cstdlib>
#include <fstream>

#include <unistd.h>

namespace hookrec {

nlohmann::json CacheEntry::to_json() const {
    if (!seq.key)
        throw std::logic_error("CacheEntry: sequence has no key");
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : seq.terms)
        terms.push_back(t.str());
    nlohmann::json j = {
        {"version", version},
        {"key", {{"k", seq.key->k}, {"l", seq.key->l}, {"z", seq.key->z}}},
        {"start", seq.start},
        {"terms", terms},
        {"direct_terms", direct},
        {"operator", nullptr},
        {"expansion", nullptr},
    };
    if (op)
        j["operator"] = op->to_json();
    if (expansion) {
        nlohmann::json e = expansion->to_json();
        e["constant"] = constant;
        j["expansion"] = e;
    }
    return j;
}

CacheEntry CacheEntry::from_json(const nlohmann::json& j) {
    CacheEntry e;
    e.version = j.at("version").get<std::string>();
    const auto& k = j.at("key");
    e.seq.key = SequenceKey{k.at("k").get<uint32_t>(), k.at("l").get<uint32_t>(),
                            k.at("z").get<int>()};
    e.seq.start = j.at("start").get<int64_t>();
    for (const auto& t : j.at("terms"))
        e.seq.terms.emplace_back(t.get<std::string>());
    e.direct = j.at("direct_terms").get<int64_t>();
    if (!j.at("operator").is_null())
        e.op = RecurrenceOperator::from_json(j.at("operator"));
    if (!j.at("expansion").is_null()) {
        const auto& ej = j.at("expansion");
        e.expansion = AsymptoticExpansion::from_json(ej);
        e.constant = ej.value("constant", nlohmann::json(nullptr));
    }
    return e;
}

std::filesystem::path Cache::resolve_dir(const std::string& flag_value) {
    if (!flag_value.empty())
        return flag_value;
    if (const char* env = std::getenv("HOOKREC_CACHE_DIR"); env && *env)
        return env;
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "hookrec";
    return ".hookrec-cache";
}

std::filesystem::path Cache::path_for(const SequenceKey& key) const {
    return dir_ / ("s_k" + std::to_string(key.k) + "_l" + std::to_string(key.l) +
                   "_z" + std::to_string(key.z) + ".json");
}

std::optional<CacheEntry> Cache::load(const SequenceKey& key) const {
    const auto path = path_for(key);
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    try {
        CacheEntry e = CacheEntry::from_json(nlohmann::json::parse(in));
        if (e.version != kToolVersion || !e.seq.key || !(*e.seq.key == key))
            return std::nullopt;
        if (e.direct < 0 || e.direct > static_cast<int64_t>(e.seq.terms.size()))
            return std::nullopt;
        if (e.op) {
            // a stored operator must annihilate the stored terms
            const int64_t lo = std::max(e.op->valid_from, e.seq.start);
            const int64_t hi = e.seq.last_index() - e.op->order();
            if (hi < lo)
                return std::nullopt;
            for (int64_t n = lo; n <= hi; ++n)
                if (apply(*e.op, e.seq, n) != 0)
                    return std::nullopt;
        }
        return e;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void Cache::store(const CacheEntry& entry) const {
    if (!entry.seq.key)
        throw std::logic_error("Cache::store: sequence has no key");
    std::filesystem::create_directories(dir_);
    const auto path = path_for(*entry.seq.key);
    auto tmp = path;
    tmp += ".tmp-" + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        out.exceptions(std::ofstream::failbit | std::ofstream::badbit);
        out << entry.to_json().dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

} // namespace hookrec
