#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ringends/errors.hpp"
#include "ringends/group.hpp"
#include "ringends/sha256.hpp"

namespace ringends {

struct CatalogEntry {
    std::string name;
    int order = 1;
    int index_in_order = 0; // position within the order file
    FiniteGroup group;
};

struct Catalog {
    std::vector<CatalogEntry> entries;  // sorted by (order, index)
    int declared_complete_through = 0;  // manifest claim
    int complete_through = 0;           // orders actually covered after validation
    std::vector<std::string> warnings;  // skipped/corrupt entries
};

/// Parses a single group object: {"name", "permutations"} or
/// {"name", "table"}; any group-axiom failure surfaces as a parse error
/// naming the axiom.
inline FiniteGroup group_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw parse_error("group data: not a JSON object");
    if (j.contains("permutations")) {
        std::vector<std::vector<int>> perms = j.at("permutations");
        return FiniteGroup::from_permutations(perms, FiniteGroup::kDefaultBound);
    }
    if (j.contains("table")) {
        std::vector<std::vector<int>> table = j.at("table");
        return FiniteGroup::from_table(std::move(table));
    }
    throw parse_error("group data: neither \"permutations\" nor \"table\" present");
}

/// Loads a single-group data file.
inline FiniteGroup load_group_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open group file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw parse_error("group file " + path + ": " + ex.what());
    }
    return group_from_json(j);
}

/// Default catalog directory: $RINGENDS_CATALOG, else the compiled-in path.
inline std::string default_catalog_dir() {
    if (const char* env = std::getenv("RINGENDS_CATALOG")) return env;
#ifdef RINGENDS_CATALOG_DIR
    return RINGENDS_CATALOG_DIR;
#else
    return "data/catalog";
#endif
}

/// Loads the bundled catalog. Integrity checks: per-file sha256 against the
/// manifest, group-axiom validation, per-order counts. Corrupt entries are
/// skipped with a warning; completeness is reported accordingly.
inline Catalog load_catalog(const std::string& dir = default_catalog_dir()) {
    namespace fs = std::filesystem;
    Catalog cat;
    fs::path root(dir);
    std::ifstream mf(root / "manifest.json");
    if (!mf) throw parse_error("catalog: cannot open manifest in " + dir);
    nlohmann::json manifest;
    try {
        mf >> manifest;
    } catch (const std::exception& ex) {
        throw parse_error(std::string("catalog manifest: ") + ex.what());
    }
    int max_order = manifest.at("max_order");
    cat.declared_complete_through = manifest.at("complete_through");
    cat.complete_through = cat.declared_complete_through;
    for (int n = 1; n <= max_order; ++n) {
        char fname[32];
        std::snprintf(fname, sizeof fname, "order%02d.json", n);
        std::ifstream in(root / fname, std::ios::binary);
        if (!in) {
            cat.warnings.push_back(std::string("missing catalog file ") + fname);
            cat.complete_through = std::min(cat.complete_through, n - 1);
            continue;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        if (manifest.contains("files") && manifest["files"].contains(fname)) {
            std::string want = manifest["files"][fname]["sha256"];
            if (sha256_hex(text) != want) {
                cat.warnings.push_back(std::string("checksum mismatch for ") + fname +
                                       "; file skipped");
                cat.complete_through = std::min(cat.complete_through, n - 1);
                continue;
            }
        }
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const std::exception& ex) {
            cat.warnings.push_back(std::string(fname) + ": " + ex.what());
            cat.complete_through = std::min(cat.complete_through, n - 1);
            continue;
        }
        int idx = 0;
        for (const auto& gj : doc.at("groups")) {
            ++idx;
            try {
                CatalogEntry e;
                e.name = gj.at("name");
                e.order = n;
                e.index_in_order = idx;
                e.group = group_from_json(gj);
                if (e.group.order() != n)
                    throw parse_error("entry order mismatch: got " +
                                      std::to_string(e.group.order()));
                cat.entries.push_back(std::move(e));
            } catch (const std::exception& ex) {
                cat.warnings.push_back(std::string(fname) + " entry " + std::to_string(idx) +
                                       ": " + ex.what());
                cat.complete_through = std::min(cat.complete_through, n - 1);
            }
        }
    }
    return cat;
}

} // namespace ringends
