#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "hookrec/asymptotics.hpp"
#include "hookrec/recurrence.hpp"
#include "hookrec/sequence.hpp"

namespace hookrec {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything the CLI persists for one (k,l,z): the exact terms plus
/// whatever downstream results have been computed. Integers and rationals
/// serialize as decimal strings, so any consumer can read them without
/// integer-width assumptions.
struct CacheEntry {
    SequenceRecord seq; // seq.key must be set
    // Terms up to index seq.start + direct - 1 came from enumeration; any
    // beyond were extended through the operator. Fitting and holdout
    // verification only ever consume the direct prefix.
    int64_t direct = 0;
    std::optional<RecurrenceOperator> op;
    std::optional<AsymptoticExpansion> expansion;
    nlohmann::json constant = nullptr; // rendered constant block, if any
    std::string version = kToolVersion;

    nlohmann::json to_json() const;
    static CacheEntry from_json(const nlohmann::json& j);
};

/// One JSON file per key under a directory. Writes land in a temp file and
/// are renamed into place, so concurrent writers never expose a torn file.
class Cache {
public:
    explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// Directory precedence: explicit flag, then HOOKREC_CACHE_DIR, then
    /// ~/.cache/hookrec, then ./.hookrec-cache.
    static std::filesystem::path resolve_dir(const std::string& flag_value);

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(const SequenceKey& key) const;

    /// A missing, unreadable, mismatched-version, or internally inconsistent
    /// file (stored operator failing against stored terms) reads as a miss.
    std::optional<CacheEntry> load(const SequenceKey& key) const;
    void store(const CacheEntry& entry) const;

private:
    std::filesystem::path dir_;
};

} // namespace hookrec
