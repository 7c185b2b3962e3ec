#pragma once

// Enumeration cache: one gzip-compressed JSON-lines file per (kind, shape,
// version). The last line is a footer with the element count and a crc32
// of the preceding lines; anything that fails to verify is ignored.

#include <optional>
#include <string>
#include <vector>

namespace sofree_cli {

struct CacheKey {
    std::string kind;
    int m = 0, n = 0, k = 0;
    std::string version;
    std::string file_name() const;
};

class Cache {
public:
    explicit Cache(std::string dir) : dir_(std::move(dir)) {}
    std::optional<std::vector<std::string>> load(const CacheKey& key) const;
    // Writes to a temporary file, then renames. Failures are reported, not thrown.
    bool store(const CacheKey& key, const std::vector<std::string>& lines, std::string* error = nullptr) const;
    std::string path(const CacheKey& key) const;

private:
    std::string dir_;
};

unsigned long crc32_of(const std::string& s);

}  // namespace sofree_cli
