#pragma once

#include <atomic>
#include <chrono>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ringends/amalgam.hpp"
#include "ringends/catalog.hpp"
#include "ringends/chartab.hpp"
#include "ringends/dsl.hpp"
#include "ringends/ends.hpp"
#include "ringends/version.hpp"
#include "ringends/wedderburn.hpp"

namespace ringends {

using ordered_json = nlohmann::ordered_json;

/// Report options. Timing is off by default so identical inputs give
/// byte-identical documents; --timing trades that away explicitly.
struct ReportOptions {
    bool include_timing = false;
};

namespace report_detail {

inline ordered_json tool_json() {
    ordered_json t;
    t["name"] = "ringends";
    t["version"] = RINGENDS_VERSION;
    return t;
}

inline ordered_json group_json(const std::string& spec, const FiniteGroup& g) {
    ordered_json j;
    j["spec"] = spec;
    j["order"] = g.order();
    j["exponent"] = g.exponent();
    j["abelian"] = g.is_abelian();
    j["classes"] = conjugacy_classes(g).count();
    return j;
}

inline ordered_json field_json(const FieldDescriptor& f) {
    ordered_json j;
    j["label"] = f.str();
    j["degree"] = f.degree();
    j["n1"] = f.n1();
    j["n2"] = f.n2();
    j["conductor"] = f.field.conductor;
    j["unit_rank"] = unit_rank(f);
    return j;
}

inline ordered_json places_json(const std::vector<Place>& ps) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : ps) arr.push_back(p.str());
    return arr;
}

inline ordered_json component_json(const WedderburnComponent& c) {
    ordered_json j;
    j["kind"] = kind_name(c.kind);
    j["display"] = c.str();
    j["reduced_degree"] = c.reduced_degree;
    j["center"] = field_json(c.center);
    j["dim_over_center"] = c.q_dim_over_center();
    j["dim_over_field"] = c.dim_over_field;
    j["orbit_size"] = static_cast<long>(c.orbit.members.size());
    j["fs_indicator"] = c.orbit.fs;
    if (c.quaternion) {
        ordered_json q;
        q["a"] = c.quaternion->a.get_str();
        q["b"] = c.quaternion->b.get_str();
        q["recognized_a"] = c.quaternion->found_a.get_str();
        q["recognized_b"] = c.quaternion->found_b.get_str();
        q["ramified"] = places_json(c.quaternion->ramified);
        j["quaternion"] = q;
    }
    return j;
}

inline ordered_json decomposition_json(const Decomposition& dec) {
    ordered_json j;
    ordered_json comps = ordered_json::array();
    long dim = 0;
    for (const auto& c : dec.components) {
        comps.push_back(component_json(c));
        dim += c.dim_over_field;
    }
    j["components"] = comps;
    j["component_count"] = static_cast<long>(dec.components.size());
    j["total_dim_over_field"] = dim;
    return j;
}

inline ordered_json ends_json(const EndsReport& r) {
    ordered_json j;
    j["ends"] = ends_name(r.ends);
    ordered_json flags;
    flags["virtually_ginfty"] = r.virtually_ginfty;
    flags["virtually_free"] = r.virtually_free;
    flags["z_by_finite"] = r.z_by_finite;
    flags["abelian_by_finite"] = r.abelian_by_finite;
    flags["cut"] = r.cut;
    j["flags"] = flags;
    j["rule"] = r.rule;
    j["total_rank"] = r.total_rank;
    ordered_json cert = ordered_json::array();
    for (const auto& v : r.certificate) {
        ordered_json c;
        c["index"] = v.index;
        c["component"] = v.component;
        c["verdict"] = component_ends_name(v.verdict);
        c["reason"] = v.reason;
        cert.push_back(c);
    }
    j["certificate"] = cert;
    ordered_json ledger = ordered_json::array();
    for (const auto& e : r.rank_ledger) {
        ordered_json l;
        l["index"] = e.index;
        l["center"] = e.center;
        l["rank"] = e.rank;
        l["sl1_finite"] = e.sl1_finite;
        ledger.push_back(l);
    }
    j["rank_ledger"] = ledger;
    ordered_json rams = ordered_json::array();
    for (const auto& ram : r.quaternion_ramified) rams.push_back(places_json(ram));
    j["quaternion_ramified"] = rams;
    return j;
}

inline ordered_json chartab_json(const CharacterTable& t) {
    ordered_json j;
    ordered_json classes = ordered_json::array();
    for (int c = 0; c < t.classes.count(); ++c) {
        ordered_json cj;
        cj["size"] = t.classes.sizes[c];
        cj["representative_order"] = t.group.element_order(t.classes.representatives[c]);
        classes.push_back(cj);
    }
    j["exponent"] = t.exponent;
    j["classes"] = classes;
    ordered_json chars = ordered_json::array();
    for (int i = 0; i < t.count(); ++i) {
        ordered_json cj;
        cj["degree"] = t.degrees[i];
        cj["fs_indicator"] = fs_indicator(t, i);
        ordered_json vals = ordered_json::array();
        for (const auto& v : t.chars[i]) vals.push_back(v.minimized().str());
        cj["values"] = vals;
        chars.push_back(cj);
    }
    j["characters"] = chars;
    return j;
}

} // namespace report_detail

/// Full classify pipeline document: group -> character table ->
/// decomposition -> ends report.
inline ordered_json classify_document(const std::string& group_spec, const FiniteGroup& g,
                                      const FieldSpec& field, const ReportOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    ordered_json doc;
    doc["tool"] = report_detail::tool_json();
    doc["group"] = report_detail::group_json(group_spec, g);
    doc["field"] = field.canonical;
    Decomposition dec = decompose(g, field.field);
    doc["decomposition"] = report_detail::decomposition_json(dec);
    EndsReport ends = classify_decomposition(dec);
    doc["ends"] = report_detail::ends_json(ends);
    if (opt.include_timing) {
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        doc["timing"] = ordered_json{{"seconds", dt}};
    }
    return doc;
}

inline ordered_json wedderburn_document(const std::string& group_spec, const FiniteGroup& g,
                                        const FieldSpec& field, const ReportOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    ordered_json doc;
    doc["tool"] = report_detail::tool_json();
    doc["group"] = report_detail::group_json(group_spec, g);
    doc["field"] = field.canonical;
    doc["decomposition"] = report_detail::decomposition_json(decompose(g, field.field));
    if (opt.include_timing) {
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        doc["timing"] = ordered_json{{"seconds", dt}};
    }
    return doc;
}

inline ordered_json chartab_document(const std::string& group_spec, const FiniteGroup& g,
                                     const ReportOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    ordered_json doc;
    doc["tool"] = report_detail::tool_json();
    doc["group"] = report_detail::group_json(group_spec, g);
    doc["character_table"] = report_detail::chartab_json(character_table(g));
    if (opt.include_timing) {
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        doc["timing"] = ordered_json{{"seconds", dt}};
    }
    return doc;
}

/// Catalog scan: one report per group of order <= max_order, plus a summary
/// partitioning groups by ends class and flags. Reports stream in
/// (order, catalog index) order.
inline ordered_json scan_document(const Catalog& cat, int max_order, const FieldSpec& field,
                                  const ReportOptions& opt = {}) {
    ordered_json doc;
    doc["tool"] = report_detail::tool_json();
    ordered_json header;
    header["max_order"] = max_order;
    header["field"] = field.canonical;
    header["catalog_complete_through"] = cat.complete_through;
    header["catalog_covers_scan"] = cat.complete_through >= max_order;
    ordered_json warn = ordered_json::array();
    for (const auto& w : cat.warnings) warn.push_back(w);
    header["warnings"] = warn;
    doc["scan"] = header;

    // classify in parallel; the report stream stays in (order, catalog
    // index) order regardless of completion order
    std::vector<const CatalogEntry*> selected;
    for (const auto& e : cat.entries)
        if (e.order <= max_order) selected.push_back(&e);
    std::vector<ordered_json> docs(selected.size());
    {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= selected.size()) return;
                const CatalogEntry& e = *selected[i];
                try {
                    docs[i] = classify_document(e.name, e.group, field, opt);
                } catch (const unsupported_error& ex) {
                    ordered_json r;
                    r["tool"] = report_detail::tool_json();
                    r["group"] = report_detail::group_json(e.name, e.group);
                    r["field"] = field.canonical;
                    r["undecidable"] = ex.what();
                    docs[i] = std::move(r);
                }
            }
        };
        unsigned hw = std::thread::hardware_concurrency();
        std::size_t nthreads = std::min<std::size_t>(hw ? hw : 1, selected.size());
        std::vector<std::thread> pool;
        for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }
    ordered_json reports = ordered_json::array();
    std::map<std::string, std::vector<std::string>> by_ends;
    std::vector<std::string> ginfty, cut, undecided;
    long count = 0;
    for (std::size_t i = 0; i < selected.size(); ++i) {
        const std::string& name = selected[i]->name;
        ordered_json& r = docs[i];
        ++count;
        if (r.contains("undecidable")) {
            undecided.push_back(name);
        } else {
            by_ends[r["ends"]["ends"]].push_back(name);
            if (r["ends"]["flags"]["virtually_ginfty"]) ginfty.push_back(name);
            if (r["ends"]["flags"]["cut"]) cut.push_back(name);
        }
        reports.push_back(std::move(r));
    }
    doc["reports"] = reports;
    ordered_json summary;
    summary["group_count"] = count;
    ordered_json be;
    for (const char* key : {"0", "1", "2", "infinity"}) {
        ordered_json arr = ordered_json::array();
        for (const auto& n : by_ends[key]) arr.push_back(n);
        be[key] = arr;
    }
    summary["by_ends"] = be;
    ordered_json gj = ordered_json::array();
    for (const auto& n : ginfty) gj.push_back(n);
    summary["virtually_ginfty"] = gj;
    ordered_json cj = ordered_json::array();
    for (const auto& n : cut) cj.push_back(n);
    summary["cut_groups"] = cj;
    ordered_json uj = ordered_json::array();
    for (const auto& n : undecided) uj.push_back(n);
    summary["undecidable"] = uj;
    doc["summary"] = summary;
    return doc;
}

inline ordered_json amalgam_document(const FiniteSplitting& s, const std::string& what) {
    ordered_json doc;
    doc["tool"] = report_detail::tool_json();
    ordered_json sj;
    sj["type"] = s.type == FiniteSplitting::Type::Amalgam ? "amalgam" : "hnn";
    sj["factor_a_order"] = s.A.order();
    if (s.type == FiniteSplitting::Type::Amalgam) sj["factor_b_order"] = s.B.order();
    sj["edge_order"] = s.C.order();
    doc["splitting"] = sj;
    if (what == "ends" || what == "all")
        doc["ends"] = splitting_ends(s) == SplittingEnds::Two ? "2" : "infinity";
    if (what == "chi" || what == "all") doc["euler_characteristic"] = euler_char(s).str();
    return doc;
}

inline ordered_json complement_rank_document(const Rational& chi, long quotient_order,
                                             long index) {
    ordered_json doc;
    doc["tool"] = report_detail::tool_json();
    doc["chi"] = chi.str();
    doc["quotient_order"] = quotient_order;
    doc["index"] = index;
    doc["free_rank"] = complement_rank(chi, quotient_order, index);
    return doc;
}

// --- text projection --------------------------------------------------------
// The human-readable form is always derived from the JSON document, never
// computed separately.

inline std::string render_text(const ordered_json& doc) {
    std::ostringstream os;
    if (doc.contains("group")) {
        os << "group " << doc["group"]["spec"].get<std::string>() << " (order "
           << doc["group"]["order"] << ")";
        if (doc.contains("field")) os << " over " << doc["field"].get<std::string>();
        os << "\n";
    }
    if (doc.contains("undecidable")) {
        os << "  undecidable: " << doc["undecidable"].get<std::string>() << "\n";
        return os.str();
    }
    if (doc.contains("decomposition")) {
        os << "  components:\n";
        for (const auto& c : doc["decomposition"]["components"])
            os << "    - " << c["display"].get<std::string>()
               << " (reduced degree " << c["reduced_degree"] << ", dim "
               << c["dim_over_field"] << ")\n";
    }
    if (doc.contains("ends") && doc["ends"].is_object()) {
        const auto& e = doc["ends"];
        os << "  ends: " << e["ends"].get<std::string>() << "  [" << e["rule"].get<std::string>()
           << "]\n";
        os << "  flags:";
        for (auto& [k, v] : e["flags"].items())
            if (v.get<bool>()) os << " " << k;
        os << "\n  total unit rank: " << e["total_rank"] << "\n";
        if (!e["quaternion_ramified"].empty()) {
            os << "  quaternion ramification:";
            for (const auto& ram : e["quaternion_ramified"]) {
                os << " {";
                bool first = true;
                for (const auto& p : ram) {
                    if (!first) os << ",";
                    first = false;
                    os << p.get<std::string>();
                }
                os << "}";
            }
            os << "\n";
        }
    }
    if (doc.contains("character_table")) {
        const auto& t = doc["character_table"];
        os << "  classes:";
        for (const auto& c : t["classes"]) os << " " << c["size"];
        os << "\n";
        for (const auto& ch : t["characters"]) {
            os << "  chi (deg " << ch["degree"] << ", fs " << ch["fs_indicator"] << "):";
            for (const auto& v : ch["values"]) os << " " << v.get<std::string>();
            os << "\n";
        }
    }
    if (doc.contains("scan")) {
        os << "scan through order " << doc["scan"]["max_order"] << " over "
           << doc["scan"]["field"].get<std::string>() << "\n";
        os << "  catalog complete through order " << doc["scan"]["catalog_complete_through"]
           << (doc["scan"]["catalog_covers_scan"].get<bool>() ? " (covers the scan)"
                                                              : " (INCOMPLETE for this scan)")
           << "\n";
        for (const auto& w : doc["scan"]["warnings"])
            os << "  warning: " << w.get<std::string>() << "\n";
        const auto& s = doc["summary"];
        os << "  groups scanned: " << s["group_count"] << "\n";
        for (auto& [k, v] : s["by_ends"].items()) {
            os << "  ends " << k << " (" << v.size() << "):";
            for (const auto& n : v) os << " " << n.get<std::string>();
            os << "\n";
        }
        os << "  virtually G-infinity:";
        for (const auto& n : s["virtually_ginfty"]) os << " " << n.get<std::string>();
        os << "\n  cut groups:";
        for (const auto& n : s["cut_groups"]) os << " " << n.get<std::string>();
        os << "\n";
        if (!s["undecidable"].empty()) {
            os << "  undecidable:";
            for (const auto& n : s["undecidable"]) os << " " << n.get<std::string>();
            os << "\n";
        }
    }
    if (doc.contains("splitting")) {
        os << "splitting: " << doc["splitting"]["type"].get<std::string>() << " with |A| = "
           << doc["splitting"]["factor_a_order"];
        if (doc["splitting"].contains("factor_b_order"))
            os << ", |B| = " << doc["splitting"]["factor_b_order"];
        os << ", |C| = " << doc["splitting"]["edge_order"] << "\n";
        if (doc.contains("ends") && doc["ends"].is_string())
            os << "  ends: " << doc["ends"].get<std::string>() << "\n";
        if (doc.contains("euler_characteristic"))
            os << "  chi: " << doc["euler_characteristic"].get<std::string>() << "\n";
    }
    if (doc.contains("free_rank"))
        os << "free rank: " << doc["free_rank"] << " (chi = " << doc["chi"].get<std::string>()
           << ", quotient order " << doc["quotient_order"] << ", index " << doc["index"] << ")\n";
    return os.str();
}

} // namespace ringends
