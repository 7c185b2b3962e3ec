#include "cache.hpp"

#include <cstdio>
#include <filesystem>
#include <system_error>

#include <unistd.h>
#include <zlib.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace sofree_cli {

unsigned long crc32_of(const std::string& s) {
    return crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(s.data()), static_cast<uInt>(s.size()));
}

std::string CacheKey::file_name() const {
    std::string name = kind + "_" + std::to_string(m) + "x" + std::to_string(n);
    if (k > 0) name += "_k" + std::to_string(k);
    return name + "_v" + version + ".jsonl.gz";
}

std::string Cache::path(const CacheKey& key) const { return (fs::path(dir_) / key.file_name()).string(); }

std::optional<std::vector<std::string>> Cache::load(const CacheKey& key) const {
    gzFile f = gzopen(path(key).c_str(), "rb");
    if (!f) return std::nullopt;
    std::string text;
    char buf[1 << 14];
    int got;
    while ((got = gzread(f, buf, sizeof buf)) > 0) text.append(buf, static_cast<std::size_t>(got));
    int err = 0;
    gzerror(f, &err);
    gzclose(f);
    if (got < 0 || (err != Z_OK && err != Z_STREAM_END)) return std::nullopt;

    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string::npos) return std::nullopt;  // every line, footer included, ends in '\n'
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty()) return std::nullopt;
    auto footer = nlohmann::json::parse(lines.back(), nullptr, false);
    lines.pop_back();
    if (footer.is_discarded() || !footer.is_object() || !footer.contains("footer")) return std::nullopt;
    const auto& ft = footer["footer"];
    if (!ft.contains("count") || !ft.contains("crc") || !ft["count"].is_number_unsigned() || !ft["crc"].is_number_unsigned())
        return std::nullopt;
    if (ft["count"].get<std::size_t>() != lines.size()) return std::nullopt;
    unsigned long crc = crc32(0L, Z_NULL, 0);
    for (const auto& l : lines) {
        std::string row = l + "\n";
        crc = crc32(crc, reinterpret_cast<const Bytef*>(row.data()), static_cast<uInt>(row.size()));
    }
    if (ft["crc"].get<unsigned long>() != crc) return std::nullopt;
    return lines;
}

bool Cache::store(const CacheKey& key, const std::vector<std::string>& lines, std::string* error) const {
    auto fail = [&](const std::string& msg) {
        if (error) *error = msg;
        return false;
    };
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) return fail("cannot create " + dir_ + ": " + ec.message());
    std::string final_path = path(key);
    std::string tmp = final_path + ".tmp." + std::to_string(getpid());
    gzFile f = gzopen(tmp.c_str(), "wb");
    if (!f) return fail("cannot write " + tmp);
    unsigned long crc = crc32(0L, Z_NULL, 0);
    bool ok = true;
    auto put = [&](const std::string& row) {
        if (ok && gzwrite(f, row.data(), static_cast<unsigned>(row.size())) != static_cast<int>(row.size())) ok = false;
    };
    for (const auto& l : lines) {
        std::string row = l + "\n";
        crc = crc32(crc, reinterpret_cast<const Bytef*>(row.data()), static_cast<uInt>(row.size()));
        put(row);
    }
    nlohmann::json footer = {{"footer", {{"count", lines.size()}, {"crc", crc}}}};
    put(footer.dump() + "\n");
    if (gzclose(f) != Z_OK) ok = false;
    if (!ok) {
        fs::remove(tmp, ec);
        return fail("write failed for " + tmp);
    }
    fs::rename(tmp, final_path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        return fail("cannot rename into " + final_path);
    }
    return true;
}

}  // namespace sofree_cli
