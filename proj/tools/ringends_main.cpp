// ringends: Wedderburn decompositions of group algebras and the
// classification of unit groups of group rings by number of ends.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ringends/ringends.hpp"

using namespace ringends;

namespace {

struct CommonOpts {
    std::string format = "text";
    bool json_flag = false;
    bool timing = false;

    bool json() const { return json_flag || format == "json"; }
    ReportOptions report_options() const { return ReportOptions{timing}; }
};

void add_format_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--json", opts.json_flag, "Shorthand for --format json");
    cmd->add_flag("--timing", opts.timing,
                  "Include wall-clock timing in the report (breaks byte-identical reruns)");
}

void emit(const ordered_json& doc, const CommonOpts& opts) {
    if (opts.json()) std::cout << doc.dump(2) << "\n";
    else std::cout << render_text(doc);
}

// --group accepts a DSL spec or a path to a JSON group file
std::pair<std::string, FiniteGroup> resolve_group(const std::string& arg) {
    namespace fs = std::filesystem;
    if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json") {
        FiniteGroup g = load_group_file(arg);
        return {arg, g};
    }
    if (fs::exists(arg) && fs::is_regular_file(arg)) {
        FiniteGroup g = load_group_file(arg);
        return {arg, g};
    }
    GroupSpec spec = parse_group_spec(arg);
    return {spec.canonical, spec.group};
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw parse_error("cannot parse rational number '" + s + "'");
    }
}

FiniteSplitting load_splitting(const std::string& path) {
    if (path == "gl2z") return gl2z_model().splitting;
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open splitting file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw parse_error(std::string("splitting file: ") + ex.what());
    }
    std::string type = j.at("type");
    FiniteGroup a = group_from_json(j.at("A"));
    FiniteGroup c = group_from_json(j.at("C"));
    std::vector<int> ea = j.at("embed_a").get<std::vector<int>>();
    std::vector<int> eb = j.at("embed_b").get<std::vector<int>>();
    if (type == "amalgam") {
        FiniteGroup b = group_from_json(j.at("B"));
        return make_amalgam(std::move(a), std::move(b), std::move(c), std::move(ea), std::move(eb));
    }
    if (type == "hnn") return make_hnn(std::move(a), std::move(c), std::move(ea), std::move(eb));
    throw parse_error("splitting file: type must be \"amalgam\" or \"hnn\"");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wedderburn decompositions and ends of unit groups of group rings"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("ringends ") + RINGENDS_VERSION);

    std::string group_arg, field_arg = "Q", spec_arg, chi_arg;
    int max_order = 16;
    long quotient_order = 1, index_arg = 1;
    CommonOpts opts;

    auto* c_classify = app.add_subcommand("classify", "Classify U(RG) by number of ends");
    c_classify->add_option("--group", group_arg, "Group DSL spec or JSON group file")->required();
    c_classify->add_option("--field", field_arg, "Field spec: Q, Q(i), Q(zeta_m), Q(sqrt,-d)");
    add_format_options(c_classify, opts);

    auto* c_wedd = app.add_subcommand("wedderburn", "Wedderburn decomposition of F G");
    c_wedd->add_option("--group", group_arg, "Group DSL spec or JSON group file")->required();
    c_wedd->add_option("--field", field_arg, "Field spec");
    add_format_options(c_wedd, opts);

    auto* c_chartab = app.add_subcommand("chartab", "Exact character table");
    c_chartab->add_option("--group", group_arg, "Group DSL spec or JSON group file")->required();
    add_format_options(c_chartab, opts);

    auto* c_scan = app.add_subcommand("scan", "Classify every catalog group up to an order");
    c_scan->add_option("--max-order", max_order, "Largest group order to scan")->required();
    c_scan->add_option("--field", field_arg, "Field spec");
    add_format_options(c_scan, opts);

    auto* c_amalgam = app.add_subcommand("amalgam", "Ends / Euler characteristic of a splitting");
    std::string amalgam_what;
    c_amalgam->add_option("what", amalgam_what, "ends or chi")
        ->required()
        ->check(CLI::IsMember({"ends", "chi"}));
    c_amalgam->add_option("--spec", spec_arg, "Splitting JSON file, or 'gl2z'")->required();
    add_format_options(c_amalgam, opts);

    auto* c_rank = app.add_subcommand("complement-rank",
                                      "Free rank of a normal complement from chi-multiplicativity");
    c_rank->add_option("--chi", chi_arg, "Euler characteristic of the splitting, e.g. -1/24")
        ->required();
    c_rank->add_option("--quotient-order", quotient_order, "Order of the finite quotient")
        ->required();
    c_rank->add_option("--index", index_arg, "Index of the finite-index subgroup")->required();
    add_format_options(c_rank, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_classify->parsed()) {
            auto [name, g] = resolve_group(group_arg);
            emit(classify_document(name, g, parse_field_spec(field_arg), opts.report_options()),
                 opts);
        } else if (c_wedd->parsed()) {
            auto [name, g] = resolve_group(group_arg);
            emit(wedderburn_document(name, g, parse_field_spec(field_arg), opts.report_options()),
                 opts);
        } else if (c_chartab->parsed()) {
            auto [name, g] = resolve_group(group_arg);
            emit(chartab_document(name, g, opts.report_options()), opts);
        } else if (c_scan->parsed()) {
            Catalog cat = load_catalog();
            if (max_order > cat.declared_complete_through)
                throw unsupported_error(
                    "scan: catalog only covers orders up to " +
                    std::to_string(cat.declared_complete_through));
            // corrupt entries have been skipped with warnings; the summary
            // header declares whether the scan is still complete
            ordered_json doc =
                scan_document(cat, max_order, parse_field_spec(field_arg), opts.report_options());
            emit(doc, opts);
            if (!cat.warnings.empty()) return 2;
        } else if (c_amalgam->parsed()) {
            emit(amalgam_document(load_splitting(spec_arg), amalgam_what), opts);
        } else if (c_rank->parsed()) {
            emit(complement_rank_document(parse_rational(chi_arg), quotient_order, index_arg),
                 opts);
        }
    } catch (const parse_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const unsupported_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    } catch (const internal_error& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return 4;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return 4;
    }
    return 0;
}
