// Regenerates the bundled group catalog: every group of order <= 32 up to
// isomorphism, as permutation generators of the regular representation.
//
// Construction: every group of order n <= 32 is solvable, so it has a normal
// subgroup of prime index p. Conversely each such group is a cyclic
// extension datum (N, alpha, m0) with alpha in Aut(N), alpha(m0) = m0 and
// alpha^p = conjugation by m0, multiplied by
//   (x, i)(y, j) = (x alpha^i(y) m0^[(i+j)/p], (i+j) mod p).
// Enumerating all data over all N of order n/p and deduplicating up to
// isomorphism therefore yields the complete list; the per-order counts are
// cross-checked against the known census.
//
// Usage: catalog_gen <output-dir>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ringends/group.hpp"
#include "ringends/numtheory.hpp"
#include "ringends/sha256.hpp"

using namespace ringends;
using nlohmann::ordered_json;

namespace {

// A000001 through order 32.
const std::map<int, int> kCensus = {
    {1, 1},  {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},  {7, 1},  {8, 5},
    {9, 2},  {10, 2}, {11, 1}, {12, 5}, {13, 1}, {14, 2}, {15, 1}, {16, 14},
    {17, 1}, {18, 5}, {19, 1}, {20, 5}, {21, 2}, {22, 2}, {23, 1}, {24, 15},
    {25, 2}, {26, 2}, {27, 5}, {28, 4}, {29, 1}, {30, 4}, {31, 1}, {32, 51}};

std::string fingerprint(const FiniteGroup& g) {
    std::ostringstream os;
    os << g.order() << "|";
    for (auto [o, c] : g.order_statistics()) os << o << ":" << c << ",";
    auto cd = conjugacy_classes(g);
    // class profile: (size, element order, power classes) sorted
    std::vector<std::string> profile;
    for (int c = 0; c < cd.count(); ++c) {
        std::ostringstream p;
        long m = g.element_order(cd.representatives[c]);
        p << cd.sizes[c] << "/" << m;
        for (long k = 2; k <= m; ++k) {
            int pc = cd.power_class(g, c, k);
            p << "." << cd.sizes[pc] << "-" << g.element_order(cd.representatives[pc]);
        }
        profile.push_back(p.str());
    }
    std::sort(profile.begin(), profile.end());
    os << "|";
    for (auto& p : profile) os << p << ";";
    os << "|z" << g.center().size();
    auto der = g.commutator_subgroup();
    os << "|d" << der.size();
    auto [ab, proj] = g.quotient(der);
    os << "|ab";
    for (long f : ab.abelian_invariants()) os << f << ".";
    os << "|e" << g.exponent();
    return os.str();
}

// Minimal generating sequence with the closure sizes of its prefixes.
struct GenData {
    std::vector<int> gens;
    std::vector<int> prefix_sizes;
};

GenData generating_data(const FiniteGroup& g) {
    GenData d;
    std::vector<int> gens;
    std::set<int> have{g.identity()};
    while (static_cast<int>(have.size()) < g.order()) {
        int best = -1;
        std::size_t best_size = have.size();
        std::vector<int> best_cl;
        for (int x = 0; x < g.order(); ++x) {
            if (have.count(x)) continue;
            auto cand = gens;
            cand.push_back(x);
            auto cl = g.closure_from(cand);
            if (cl.size() > best_size) {
                best = x;
                best_size = cl.size();
                best_cl = cl;
            }
        }
        gens.push_back(best);
        have = std::set<int>(best_cl.begin(), best_cl.end());
        d.prefix_sizes.push_back(static_cast<int>(best_size));
    }
    d.gens = gens;
    if (d.gens.empty()) {
        d.gens.push_back(g.identity());
        d.prefix_sizes.push_back(1);
    }
    return d;
}

// Expression of every element as a word in the generators, for extending a
// generator map to the whole group: elem = parent * gens[gen_index].
struct WordTree {
    std::vector<int> parent;    // -1 for identity
    std::vector<int> gen_index;
    std::vector<int> bfs_order; // identity first
};

WordTree word_tree(const FiniteGroup& g, const std::vector<int>& gens) {
    WordTree w;
    w.parent.assign(g.order(), -2);
    w.gen_index.assign(g.order(), -1);
    w.parent[g.identity()] = -1;
    w.bfs_order.push_back(g.identity());
    for (std::size_t head = 0; head < w.bfs_order.size(); ++head) {
        int x = w.bfs_order[head];
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            int y = g.mul(x, gens[gi]);
            if (w.parent[y] != -2) continue;
            w.parent[y] = x;
            w.gen_index[y] = static_cast<int>(gi);
            w.bfs_order.push_back(y);
        }
    }
    return w;
}

// Extends a candidate generator-image tuple to the full map, or fails.
bool extend_map(const FiniteGroup& g, const FiniteGroup& h, const WordTree& wt,
                const std::vector<int>& images, std::vector<int>& out) {
    out.assign(g.order(), -1);
    out[g.identity()] = h.identity();
    for (int x : wt.bfs_order) {
        if (x == g.identity()) continue;
        out[x] = h.mul(out[wt.parent[x]], images[wt.gen_index[x]]);
    }
    // homomorphism check
    for (int x = 0; x < g.order(); ++x)
        for (int y = 0; y < g.order(); ++y)
            if (out[g.mul(x, y)] != h.mul(out[x], out[y])) return false;
    // bijectivity
    std::vector<bool> seen(h.order(), false);
    for (int v : out) {
        if (v < 0 || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

// Depth-first search over order-matched generator images with prefix-closure
// pruning. Calls visit(map) for each isomorphism found; visit returns false
// to stop the search.
template <class Visit>
void search_isomorphisms(const FiniteGroup& g, const FiniteGroup& h, Visit visit) {
    if (g.order() != h.order()) return;
    GenData gd = generating_data(g);
    WordTree wt = word_tree(g, gd.gens);
    std::vector<int> images(gd.gens.size(), -1);
    std::vector<std::vector<int>> candidates(gd.gens.size());
    for (std::size_t i = 0; i < gd.gens.size(); ++i)
        for (int y = 0; y < h.order(); ++y)
            if (h.element_order(y) == g.element_order(gd.gens[i])) candidates[i].push_back(y);

    std::vector<int> chosen;
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (stop) return;
        if (depth == gd.gens.size()) {
            std::vector<int> full;
            if (extend_map(g, h, wt, images, full))
                if (!visit(full)) stop = true;
            return;
        }
        for (int y : candidates[depth]) {
            images[depth] = y;
            // prefix closure size must match
            std::vector<int> prefix(images.begin(), images.begin() + static_cast<long>(depth) + 1);
            if (static_cast<int>(h.closure_from(prefix).size()) != gd.prefix_sizes[depth])
                continue;
            rec(depth + 1);
            if (stop) return;
        }
    };
    rec(0);
}

bool isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
    bool found = false;
    search_isomorphisms(g, h, [&](const std::vector<int>&) {
        found = true;
        return false;
    });
    return found;
}

std::vector<std::vector<int>> automorphisms(const FiniteGroup& g) {
    std::vector<std::vector<int>> auts;
    search_isomorphisms(g, g, [&](const std::vector<int>& map) {
        auts.push_back(map);
        return true;
    });
    return auts;
}

// All cyclic extension tables of N by C_p.
std::vector<FiniteGroup> extensions(const FiniteGroup& n, int p) {
    std::vector<FiniteGroup> out;
    auto auts = automorphisms(n);
    int nn = n.order();
    for (const auto& alpha : auts) {
        // alpha^p as a map
        std::vector<int> ap(nn);
        for (int x = 0; x < nn; ++x) {
            int v = x;
            for (int k = 0; k < p; ++k) v = alpha[v];
            ap[x] = v;
        }
        for (int m0 = 0; m0 < nn; ++m0) {
            if (alpha[m0] != m0) continue;
            bool ok = true;
            for (int x = 0; x < nn && ok; ++x)
                if (ap[x] != n.mul(n.mul(m0, x), n.inv(m0))) ok = false;
            if (!ok) continue;
            // build the table on pairs (x, i) -> x + nn * i
            int total = nn * p;
            std::vector<std::vector<int>> table(total, std::vector<int>(total));
            // alpha^i precomputed
            std::vector<std::vector<int>> alph(p, std::vector<int>(nn));
            for (int x = 0; x < nn; ++x) alph[0][x] = x;
            for (int i = 1; i < p; ++i)
                for (int x = 0; x < nn; ++x) alph[i][x] = alpha[alph[i - 1][x]];
            for (int x = 0; x < nn; ++x)
                for (int i = 0; i < p; ++i)
                    for (int y = 0; y < nn; ++y)
                        for (int j = 0; j < p; ++j) {
                            int z = n.mul(x, alph[i][y]);
                            if (i + j >= p) z = n.mul(z, m0);
                            table[x + nn * i][y + nn * j] = z + nn * ((i + j) % p);
                        }
            out.push_back(FiniteGroup::from_table(std::move(table)));
        }
    }
    return out;
}

// --- naming ---------------------------------------------------------------

struct Entry {
    FiniteGroup group;
    std::string fp;
    std::string name;
};

std::string abelian_name(const FiniteGroup& g) {
    if (g.order() == 1) return "C1";
    auto inv = g.abelian_invariants();
    // atoms ascending, collapsed into powers
    std::map<long, int> counts;
    for (long f : inv) ++counts[f];
    std::string s;
    for (auto [f, c] : counts) {
        if (!s.empty()) s += "x";
        s += "C" + std::to_string(f);
        if (c > 1) s += "^" + std::to_string(c);
    }
    return s;
}

std::string combine_names(const std::string& a, const std::string& b) {
    // split into atoms with powers, merge, re-render: nonabelian atoms first
    auto split = [](const std::string& s) {
        std::map<std::string, int> atoms;
        std::size_t i = 0;
        while (i < s.size()) {
            std::size_t j = s.find('x', i);
            std::string tok = s.substr(i, j == std::string::npos ? j : j - i);
            i = j == std::string::npos ? s.size() : j + 1;
            std::size_t h = tok.find('^');
            int cnt = 1;
            if (h != std::string::npos) {
                cnt = std::stoi(tok.substr(h + 1));
                tok = tok.substr(0, h);
            }
            atoms[tok] += cnt;
        }
        return atoms;
    };
    auto atoms = split(a);
    for (auto& [k, v] : split(b)) atoms[k] += v;
    auto is_cyclic = [](const std::string& t) { return t.size() > 1 && t[0] == 'C' && t.find(':') == std::string::npos; };
    std::vector<std::pair<std::string, int>> nonab, ab;
    for (auto& [k, v] : atoms)
        (is_cyclic(k) ? ab : nonab).push_back({k, v});
    std::sort(ab.begin(), ab.end(), [](auto& x, auto& y) {
        return std::stol(x.first.substr(1)) < std::stol(y.first.substr(1));
    });
    std::string s;
    for (auto& lst : {nonab, ab})
        for (auto& [k, v] : lst) {
            if (!s.empty()) s += "x";
            s += k;
            if (v > 1) s += "^" + std::to_string(v);
        }
    return s;
}

void assign_names(std::map<int, std::vector<Entry>>& catalog, int order) {
    auto& entries = catalog[order];
    // deterministic order inside each order: by fingerprint
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.fp < b.fp; });
    for (auto& e : entries) {
        if (e.group.is_abelian()) {
            e.name = abelian_name(e.group);
            continue;
        }
        if (order % 2 == 0 && order >= 6 && isomorphic(e.group, FiniteGroup::dihedral(order))) {
            e.name = "D" + std::to_string(order);
            continue;
        }
        if (order % 4 == 0 && isomorphic(e.group, FiniteGroup::dicyclic(order / 4))) {
            e.name = order == 8 ? "Q8" : "Dic" + std::to_string(order / 4);
            continue;
        }
        if (order == 16 && isomorphic(e.group, FiniteGroup::c4_semidirect_c4())) {
            e.name = "C4:C4";
            continue;
        }
        // direct products of already-named smaller groups
        bool named = false;
        for (int d = 2; d * d <= order && !named; ++d) {
            if (order % d) continue;
            for (const auto& h : catalog[d]) {
                for (const auto& k : catalog[order / d]) {
                    if (h.name.empty() || k.name.empty()) continue;
                    if (h.name.substr(0, 1) == "G" || k.name.substr(0, 1) == "G") continue;
                    if (!isomorphic(e.group, direct_product(h.group, k.group))) continue;
                    e.name = combine_names(h.name, k.name);
                    named = true;
                    break;
                }
                if (named) break;
            }
        }
    }
    // leftover names G<order>.<i>, and uniqueness check
    int idx = 0;
    std::set<std::string> used;
    for (auto& e : entries) {
        ++idx;
        if (e.name.empty()) e.name = "G" + std::to_string(order) + "." + std::to_string(idx);
        if (!used.insert(e.name).second) {
            // collision between a product name and another entry: fall back
            e.name = "G" + std::to_string(order) + "." + std::to_string(idx);
            if (!used.insert(e.name).second)
                throw internal_error("catalog_gen: cannot uniquify name " + e.name);
        }
    }
}

std::vector<std::vector<int>> regular_generators(const FiniteGroup& g) {
    std::vector<std::vector<int>> perms;
    for (int gen : g.generators()) {
        std::vector<int> p(g.order());
        for (int x = 0; x < g.order(); ++x) p[x] = g.mul(gen, x) + 1;
        perms.push_back(std::move(p));
    }
    return perms;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: catalog_gen <output-dir>\n");
        return 1;
    }
    std::filesystem::path outdir(argv[1]);
    std::filesystem::create_directories(outdir);

    std::map<int, std::vector<Entry>> catalog;
    catalog[1].push_back({FiniteGroup::trivial(), fingerprint(FiniteGroup::trivial()), "C1"});

    for (int n = 2; n <= 32; ++n) {
        std::map<std::string, std::vector<std::size_t>> buckets; // fp -> entry indices
        auto& entries = catalog[n];
        auto consider = [&](FiniteGroup g) {
            std::string fp = fingerprint(g);
            auto& bucket = buckets[fp];
            for (std::size_t idx : bucket)
                if (isomorphic(g, entries[idx].group)) return;
            bucket.push_back(entries.size());
            entries.push_back({std::move(g), std::move(fp), ""});
        };
        for (auto [p, e] : factorize(n)) {
            (void)e;
            for (const auto& sub : catalog[n / p])
                for (auto& ext : extensions(sub.group, static_cast<int>(p))) consider(std::move(ext));
        }
        if (static_cast<int>(entries.size()) != kCensus.at(n)) {
            std::fprintf(stderr, "census mismatch at order %d: got %zu, expected %d\n", n,
                         entries.size(), kCensus.at(n));
            return 2;
        }
        assign_names(catalog, n);
        std::fprintf(stderr, "order %2d: %zu groups\n", n, entries.size());
    }

    ordered_json manifest;
    manifest["format"] = 1;
    manifest["max_order"] = 32;
    manifest["complete_through"] = 32;
    ordered_json census_json;
    for (auto [n, c] : kCensus) census_json[std::to_string(n)] = c;
    manifest["census"] = census_json;
    ordered_json files;
    for (int n = 1; n <= 32; ++n) {
        char fname[32];
        std::snprintf(fname, sizeof fname, "order%02d.json", n);
        ordered_json doc;
        doc["order"] = n;
        doc["count"] = catalog[n].size();
        ordered_json groups = ordered_json::array();
        for (const auto& e : catalog[n]) {
            // round-trip audit: the regular representation must rebuild an
            // isomorphic group
            auto perms = regular_generators(e.group);
            FiniteGroup check = FiniteGroup::from_permutations(perms, 64);
            if (check.order() != e.group.order() || !isomorphic(check, e.group))
                throw internal_error("catalog_gen: regular representation audit failed for " +
                                     e.name);
            ordered_json ge;
            ge["name"] = e.name;
            ge["permutations"] = perms;
            groups.push_back(ge);
        }
        doc["groups"] = groups;
        std::string text = doc.dump(1) + "\n";
        std::ofstream out(outdir / fname, std::ios::binary);
        out << text;
        ordered_json finfo;
        finfo["count"] = catalog[n].size();
        finfo["sha256"] = sha256_hex(text);
        files[fname] = finfo;
    }
    manifest["files"] = files;
    std::ofstream mf(outdir / "manifest.json", std::ios::binary);
    mf << manifest.dump(1) << "\n";
    std::fprintf(stderr, "catalog written to %s\n", outdir.string().c_str());
    return 0;
}
