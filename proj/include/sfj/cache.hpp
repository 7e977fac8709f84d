#pragma once

// On-disk coefficient cache for Siegel lift tables: one JSON object per
// line, UTF-8, first line a header object, then entries sorted by (m, n, r)
// ascending. Values are exact canonical rational strings ("p" or "p/q"), so
// round trips are bit-exact. Writers take an exclusive lock file; readers
// never block. The loader is strict: unknown fields, unsorted or duplicate
// keys, non-reduced keys, and non-canonical literals are all rejected.

#include <fcntl.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "arith.hpp"
#include "errors.hpp"
#include "qforms.hpp"
#include "siegel.hpp"

namespace sfj {

inline std::string rational_to_string(const Rational& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// strict inverse of rational_to_string: the literal must round-trip exactly
inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw cache_error("empty rational literal");
    Rational v;
    try {
        v = Rational(s);
    } catch (const std::exception&) {
        throw cache_error("unparsable rational literal: " + s);
    }
    if (rational_to_string(v) != s) throw cache_error("non-canonical rational literal: " + s);
    return v;
}

// RAII exclusive lock file next to the cache being written
class cache_lock {
  public:
    explicit cache_lock(const std::string& target) : path_(target + ".lock") {
        int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd < 0) throw cache_error("cache is locked by another writer: " + path_);
        ::close(fd);
    }
    ~cache_lock() { ::unlink(path_.c_str()); }
    cache_lock(const cache_lock&) = delete;
    cache_lock& operator=(const cache_lock&) = delete;

  private:
    std::string path_;
};

inline std::string default_cache_dir() {
    const char* env = std::getenv("SFJ_CACHE_DIR");
    return (env != nullptr && *env != '\0') ? std::string(env) : std::string(".");
}

inline std::string cache_path(const std::string& dir, const std::string& form_id) {
    return dir + "/" + form_id + ".jsonl";
}

inline void cache_write(const std::string& path, const siegel_form& F) {
    cache_lock lock(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw cache_error("cannot open cache for writing: " + path);
    nlohmann::json header;
    header["form"] = F.label();
    header["kind"] = "siegel_lift";
    header["max_disc"] = F.max_disc();
    header["weight"] = F.weight();
    out << header.dump() << '\n';
    for (const auto& e : F.entries()) {
        nlohmann::json j;
        j["m"] = e.c;
        j["n"] = e.a;
        j["r"] = e.b;
        j["v"] = rational_to_string(e.v);
        out << j.dump() << '\n';
    }
    out.flush();
    if (!out) throw cache_error("write failure: " + path);
}

namespace detail {

inline nlohmann::json parse_cache_line(const std::string& line, size_t lineno) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw cache_error("bad JSON object at line " + std::to_string(lineno));
    return j;
}

inline int64_t require_int(const nlohmann::json& j, const char* key, size_t lineno) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw cache_error(std::string("missing or non-integer field '") + key + "' at line " +
                          std::to_string(lineno));
    return j[key].get<int64_t>();
}

}  // namespace detail

inline siegel_form cache_load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cache_error("cannot open cache: " + path);
    std::string line;
    if (!std::getline(in, line)) throw cache_error("empty cache file: " + path);

    nlohmann::json h = detail::parse_cache_line(line, 1);
    for (const auto& item : h.items())
        if (item.key() != "form" && item.key() != "kind" && item.key() != "max_disc" &&
            item.key() != "weight")
            throw cache_error("unknown header field: " + item.key());
    if (!h.contains("form") || !h["form"].is_string())
        throw cache_error("header lacks a form id");
    if (!h.contains("kind") || h["kind"] != "siegel_lift")
        throw cache_error("header kind is not siegel_lift");
    std::string form_id = h["form"].get<std::string>();
    int64_t max_disc = detail::require_int(h, "max_disc", 1);
    int64_t weight = detail::require_int(h, "weight", 1);
    if (max_disc < 3 || weight < 4) throw cache_error("implausible header bounds");

    std::vector<siegel_form::entry> entries;
    std::tuple<int64_t, int64_t, int64_t> prev{-1, -1, -1};
    bool have_prev = false;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        nlohmann::json j = detail::parse_cache_line(line, lineno);
        for (const auto& item : j.items())
            if (item.key() != "m" && item.key() != "n" && item.key() != "r" && item.key() != "v")
                throw cache_error("unknown entry field '" + item.key() + "' at line " +
                                  std::to_string(lineno));
        int64_t m = detail::require_int(j, "m", lineno);
        int64_t n = detail::require_int(j, "n", lineno);
        int64_t r = detail::require_int(j, "r", lineno);
        if (!j.contains("v") || !j["v"].is_string())
            throw cache_error("missing value string at line " + std::to_string(lineno));
        Rational v = rational_from_string(j["v"].get<std::string>());

        quad_form q{n, r, m};
        if (!q.is_positive_definite() || !q.is_reduced())
            throw cache_error("non-canonical key at line " + std::to_string(lineno));
        if (q.disc() > max_disc)
            throw cache_error("entry beyond declared bound at line " + std::to_string(lineno));
        std::tuple<int64_t, int64_t, int64_t> key{m, n, r};
        if (have_prev && !(prev < key))
            throw cache_error("entries not strictly sorted by (m, n, r) at line " +
                              std::to_string(lineno));
        prev = key;
        have_prev = true;
        entries.push_back({static_cast<int32_t>(n), static_cast<int32_t>(r),
                           static_cast<int32_t>(m), std::move(v)});
    }
    return siegel_form(std::move(form_id), static_cast<int>(weight), max_disc,
                       std::move(entries));
}

}  // namespace sfj
