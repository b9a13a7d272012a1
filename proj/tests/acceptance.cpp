// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every tolerance is exact; time budgets are wall clock.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ringends/ringends.hpp"

using namespace ringends;

namespace {

int failures = 0;

std::pair<int, std::string> run_cli(const std::string& args) {
    std::string cmd = std::string(RINGENDS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw error("cannot spawn the CLI");
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

void run(int number, const std::string& title, double budget_seconds,
         const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
        body();
    } catch (const std::exception& ex) {
        verdict = "FAIL";
        detail = ex.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (verdict == "PASS" && budget_seconds > 0 && dt > budget_seconds) {
        verdict = "FAIL";
        detail = "time budget exceeded: " + std::to_string(dt) + " s > " +
                 std::to_string(budget_seconds) + " s";
    }
    std::printf("[%s] %d. %s (%.2f s)%s%s\n", verdict.c_str(), number, title.c_str(), dt,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (verdict == "FAIL") ++failures;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw error(msg);
}

std::multiset<std::string> component_summary(const Decomposition& d) {
    std::multiset<std::string> out;
    for (const auto& c : d.components) out.insert(c.str());
    return out;
}

std::string show(const std::multiset<std::string>& s) {
    std::string out = "[";
    for (const auto& x : s) out += x + ", ";
    return out + "]";
}

// structural fingerprint used to identify Q8 x C2^n entries independently of
// the classifier
std::string struct_fp(const FiniteGroup& g) {
    std::ostringstream os;
    os << g.order() << "/";
    for (auto [o, c] : g.order_statistics()) os << o << ":" << c << ",";
    os << "/c" << conjugacy_classes(g).count() << "/z" << g.center().size() << "/ab";
    auto [ab, proj] = g.quotient(g.commutator_subgroup());
    for (long f : ab.abelian_invariants()) os << f << ".";
    return os.str();
}

} // namespace

int main() {
    const Catalog catalog = load_catalog(RINGENDS_CATALOG_DIR);
    const FieldSpec rationals = parse_field_spec("Q");

    // 1. the four decomposition tables, exact, < 1 s per group
    run(1, "Wedderburn tables for D6, D8, Dic3, C4:C4 over Q", 4.0, [&] {
        struct Row {
            const char* spec;
            std::multiset<std::string> expect;
        };
        std::vector<Row> rows{
            {"D6", {"Q", "Q", "M2(Q)"}},
            {"D8", {"Q", "Q", "Q", "Q", "M2(Q)"}},
            {"Dic3", {"Q", "Q", "Q(i)", "(-1,-3 / Q)", "M2(Q)"}},
            {"C4:C4", {"Q", "Q", "Q", "Q", "Q(i)", "Q(i)", "(-1,-1 / Q)", "M2(Q)"}},
        };
        for (const auto& row : rows) {
            auto t0 = std::chrono::steady_clock::now();
            auto got = component_summary(decompose(parse_group_spec(row.spec).group));
            double dt =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            require(got == row.expect,
                    std::string(row.spec) + ": got " + show(got) + ", expected " +
                        show(row.expect));
            require(dt < 1.0, std::string(row.spec) + ": took " + std::to_string(dt) + " s");
            // the wedderburn CLI command reports the same components
            auto [code, out] = run_cli("wedderburn --group '" + std::string(row.spec) +
                                       "' --field Q --json");
            require(code == 0, std::string(row.spec) + ": CLI exit " + std::to_string(code));
            auto cli_doc = nlohmann::json::parse(out);
            std::multiset<std::string> cli_got;
            for (const auto& c : cli_doc["decomposition"]["components"])
                cli_got.insert(c["display"].get<std::string>());
            require(cli_got == row.expect, std::string(row.spec) + ": CLI component mismatch");
        }
    });

    // 2. infinite-ends list over the bundled catalog through order 16
    run(2, "scan --max-order 16 --field Q: ends = infinity exactly on {D6, D8, Dic3, C4:C4}",
        30.0, [&] {
            auto doc = scan_document(catalog, 16, rationals);
            std::set<std::string> got;
            for (const auto& n : doc["summary"]["by_ends"]["infinity"])
                got.insert(n.get<std::string>());
            std::set<std::string> expect{"D6", "D8", "Dic3", "C4:C4"};
            require(got == expect, "infinity row mismatch");
            // the literal CLI command agrees
            auto [code, out] = run_cli("scan --max-order 16 --field Q --json");
            require(code == 0, "scan CLI exit " + std::to_string(code));
            auto cli_doc = nlohmann::json::parse(out);
            std::set<std::string> cli_got;
            for (const auto& n : cli_doc["summary"]["by_ends"]["infinity"])
                cli_got.insert(n.get<std::string>());
            require(cli_got == expect, "scan CLI infinity row mismatch");
            // the four names really denote the intended groups
            for (const auto& name : expect) {
                auto it = std::find_if(catalog.entries.begin(), catalog.entries.end(),
                                       [&](const CatalogEntry& e) { return e.name == name; });
                require(it != catalog.entries.end(), "catalog entry missing: " + name);
                require(struct_fp(it->group) == struct_fp(parse_group_spec(name).group),
                        "catalog entry " + name + " does not match its DSL group");
            }
        });

    // 3. two-ends list over cyclic groups through order 30
    run(3, "two ends over Q exactly for C5, C8, C12 among cyclic groups n <= 30", 10.0, [&] {
        std::set<int> got;
        for (int n = 1; n <= 30; ++n)
            if (classify(FiniteGroup::cyclic(n)).ends == EndsClass::Two) got.insert(n);
        require(got == std::set<int>{5, 8, 12}, "two-ends set mismatch");
    });

    // 4. zero-ends row through order 32 equals the structural list
    run(4, "zero ends exactly for abelian exponent | 4 or 6 and Q8 x C2^n (order <= 32)", 60.0,
        [&] {
            // independent expected set: abelian groups by exponent, plus
            // entries structurally matching an explicit Q8 x C2^n
            std::set<std::string> expect;
            std::map<std::string, std::string> q8fps;
            FiniteGroup q8 = FiniteGroup::quaternion8();
            FiniteGroup g8 = q8;
            for (int n = 0; 8 * (1 << n) <= 32; ++n) {
                q8fps[struct_fp(g8)] = "Q8 x C2^" + std::to_string(n);
                g8 = direct_product(g8, FiniteGroup::cyclic(2));
            }
            int hamiltonian_matches = 0;
            for (const auto& e : catalog.entries) {
                if (e.group.is_abelian()) {
                    long x = e.group.exponent();
                    if (4 % x == 0 || 6 % x == 0) expect.insert(e.name);
                } else if (q8fps.count(struct_fp(e.group))) {
                    expect.insert(e.name);
                    ++hamiltonian_matches;
                }
            }
            require(hamiltonian_matches == 3, "expected exactly Q8, Q8xC2, Q8xC2^2 to match");
            std::set<std::string> got;
            for (const auto& e : catalog.entries)
                if (classify(e.group).ends == EndsClass::Zero) got.insert(e.name);
            require(got == expect, "zero-ends set mismatch");
        });

    // 5. quaternion parameters and cut flag in positive verdicts
    run(5, "positive virtually-Ginfty verdicts: ramified sets in {{2,inf},{3,inf}}, cut = true",
        120.0, [&] {
            int positives = 0;
            for (const auto& e : catalog.entries) {
                auto r = classify(e.group);
                if (!r.virtually_ginfty) continue;
                ++positives;
                require(r.cut, e.name + ": positive verdict without cut");
                for (const auto& ram : r.quaternion_ramified) {
                    std::string p = places_str(ram);
                    require(p == "{2,inf}" || p == "{3,inf}",
                            e.name + ": ramified set " + p + " in a positive verdict");
                }
            }
            require(positives >= 4, "suspiciously few positive verdicts");
        });

    // 6. exactness suite over the full catalog
    run(6, "exact orthogonality, idempotents, dimension audit, Perlis-Walker agreement "
           "(order <= 32)", 0.0, [&] {
        for (const auto& e : catalog.entries) {
            auto dec = decompose(e.group);
            const auto& t = dec.table;
            const int r = t.count();
            // row orthogonality, re-verified here
            for (int x = 0; x < r; ++x)
                for (int y = x; y < r; ++y) {
                    CycNumber acc;
                    for (int i = 0; i < r; ++i)
                        acc += t.chars[x][i] * t.chars[y][i].conjugate() *
                               Rational(t.classes.sizes[i]);
                    require(acc == CycNumber(Rational(x == y ? e.group.order() : 0)),
                            e.name + ": row orthogonality");
                }
            // column orthogonality
            for (int i = 0; i < r; ++i)
                for (int j = i; j < r; ++j) {
                    CycNumber acc;
                    for (int x = 0; x < r; ++x) acc += t.chars[x][i] * t.chars[x][j].conjugate();
                    require(acc == CycNumber(Rational(
                                       i == j ? e.group.order() / t.classes.sizes[i] : 0)),
                            e.name + ": column orthogonality");
                }
            // idempotent suite
            GroupAlgebraElement sum;
            for (std::size_t i = 0; i < dec.components.size(); ++i) {
                const auto& ei = dec.components[i].idempotent;
                require(ga_is_central(e.group, ei), e.name + ": idempotent not central");
                for (std::size_t j = 0; j < dec.components.size(); ++j) {
                    auto prod = ga_mul(e.group, ei, dec.components[j].idempotent);
                    if (i == j) require(prod == ei, e.name + ": idempotent not idempotent");
                    else require(prod.is_zero(), e.name + ": idempotents not orthogonal");
                }
                sum = ga_add(sum, ei);
            }
            require(sum == ga_one(e.group), e.name + ": idempotents do not sum to 1");
            // dimension audit
            long dim = 0;
            for (const auto& c : dec.components) dim += c.dim_over_field;
            require(dim == e.group.order(), e.name + ": dimension audit");
            // Perlis-Walker agreement on abelian groups
            if (e.group.is_abelian()) {
                auto pw = perlis_walker(e.group);
                auto ct = field_multiset(dec);
                std::map<AbelianField, long> mpw, mct;
                for (auto& [f, m] : pw) mpw[f.field] += m;
                for (auto& [f, m] : ct) mct[f.field] += m;
                require(mpw == mct, e.name + ": Perlis-Walker disagrees with character route");
            }
        }
    });

    // 7. Hilbert symbol suite
    run(7, "Hilbert symbols: bimultiplicativity + product formula on 1000 seeded pairs; "
           "named ramified sets", 30.0, [&] {
        std::mt19937 rng(0x48696c62u);
        std::vector<long> sqfree;
        for (long v = 1; v <= 60; ++v)
            if (squarefree_part(Integer(v)) == v) {
                sqfree.push_back(v);
                sqfree.push_back(-v);
            }
        for (int trial = 0; trial < 1000; ++trial) {
            long a = sqfree[rng() % sqfree.size()];
            long b = sqfree[rng() % sqfree.size()];
            long c = sqfree[rng() % sqfree.size()];
            std::vector<Place> places{Place::infinity()};
            for (long p : prime_divisors(Integer(2 * a * b * c)))
                places.push_back(Place::prime(p));
            int prod = 1;
            for (const auto& v : places) {
                int sab = hilbert_symbol(Rational(a), Rational(b), v);
                require(sab == hilbert_symbol(Rational(b), Rational(a), v), "symmetry");
                require(hilbert_symbol(Rational(a * c), Rational(b), v) ==
                            sab * hilbert_symbol(Rational(c), Rational(b), v),
                        "bimultiplicativity");
            }
            std::vector<Place> ab_places{Place::infinity()};
            for (long p : prime_divisors(Integer(2 * a * b)))
                ab_places.push_back(Place::prime(p));
            for (const auto& v : ab_places)
                prod *= hilbert_symbol(Rational(a), Rational(b), v);
            require(prod == 1, "product formula");
        }
        require(places_str(ramified_places(Rational(-1), Rational(-1))) == "{2,inf}",
                "(-1,-1) ramification");
        require(places_str(ramified_places(Rational(-1), Rational(-3))) == "{3,inf}",
                "(-1,-3) ramification");
        auto r25 = ramified_places(Rational(-2), Rational(-5));
        require(r25.size() % 2 == 0, "(-2,-5) ramified set has odd cardinality");
        require(std::find(r25.begin(), r25.end(), Place::infinity()) != r25.end(),
                "(-2,-5) not ramified at infinity");
    });

    // 8. amalgam suite
    run(8, "GL2(Z) model, complement ranks, normal-form uniqueness through length 6", 10.0, [&] {
        auto m = gl2z_model();
        require(euler_char(m.splitting) == Rational(-1, 24), "chi(GL2(Z) model) != -1/24");
        require(splitting_ends(m.splitting) == SplittingEnds::Infinity, "model not inf-ended");
        require(m.edge.size() == 4, "edge group order != 4");
        for (const auto& x : m.edge)
            require(x.det() == 1 || x.det() == -1, "edge witness not in GL2(Z)");
        require(complement_rank(Rational(-1, 24), 1, 24) == 2, "complement rank");
        bool threw = false;
        try {
            complement_rank(Rational(-1, 24), 1, 23);
        } catch (const unsupported_error&) {
            threw = true;
        }
        require(threw, "integrality failure not reported for index 23");

        // normal-form uniqueness: every normal form of syllable length <= 6
        // evaluates to a distinct matrix, and random words agree with their
        // normal forms under evaluation
        AmalgamWords words(m.splitting);
        std::map<Mat2, int> ia, ib;
        FiniteGroup fa = detail::group_from_matrices(m.factor_a, &ia);
        FiniteGroup fb = detail::group_from_matrices(m.factor_b, &ib);
        std::map<int, Mat2> mat_a, mat_b;
        for (const auto& [mat, i] : ia) mat_a[i] = mat;
        for (const auto& [mat, i] : ib) mat_b[i] = mat;
        auto eval = [&](const AmalgamWord& w) {
            Mat2 acc;
            for (auto [f, elt] : words.to_letters(w)) acc = acc * (f == 0 ? mat_a[elt] : mat_b[elt]);
            return acc;
        };
        // enumerate all normal forms up to length 6
        std::vector<int> reps[2];
        for (int f = 0; f < 2; ++f) {
            std::set<int> rs;
            for (int a = 0; a < m.splitting.factor(f).order(); ++a) {
                auto w = words.from_factor(f, a);
                if (w.length() == 1) rs.insert(w.syllables[0].second);
            }
            reps[f] = std::vector<int>(rs.begin(), rs.end());
        }
        std::vector<AmalgamWord> forms;
        for (int c = 0; c < m.splitting.C.order(); ++c) {
            AmalgamWord w;
            w.head = c;
            forms.push_back(w);
        }
        std::size_t start = 0;
        for (int len = 1; len <= 6; ++len) {
            std::size_t end = forms.size();
            for (std::size_t i = start; i < end; ++i)
                for (int f = 0; f < 2; ++f) {
                    if (!forms[i].syllables.empty() && forms[i].syllables.back().first == f)
                        continue;
                    for (int t : reps[f]) {
                        AmalgamWord w = forms[i];
                        w.syllables.emplace_back(f, t);
                        forms.push_back(w);
                    }
                }
            start = end;
        }
        std::map<Mat2, AmalgamWord> seen;
        for (const auto& w : forms) {
            // each enumerated form is already in normal form
            require(words.normal_form(words.to_letters(w)) == w,
                    "enumerated normal form is not canonical");
            Mat2 v = eval(w);
            auto [it, fresh] = seen.emplace(v, w);
            require(fresh, "two distinct normal forms evaluate to the same matrix");
        }
        // random words reduce to equivalent normal forms
        std::mt19937 rng(0xa41a15u);
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<std::pair<int, int>> letters;
            int len = static_cast<int>(rng() % 7);
            for (int i = 0; i < len; ++i) {
                int f = static_cast<int>(rng() % 2);
                letters.emplace_back(f, static_cast<int>(rng() % m.splitting.factor(f).order()));
            }
            Mat2 direct;
            for (auto [f, elt] : letters) direct = direct * (f == 0 ? mat_a[elt] : mat_b[elt]);
            auto nf = words.normal_form(letters);
            require(eval(nf) == direct, "normal form changes the group element");
            require(nf.length() <= 6, "reduced length exceeded the input length");
        }
    });

    // 9. Cohn-Livingstone divisibility through order 16
    run(9, "Cohn-Livingstone: |He| divides |Ge| in every component (order <= 16)", 0.0, [&] {
        for (const auto& e : catalog.entries) {
            if (e.order > 16) continue;
            auto dec = decompose(e.group);
            for (const auto& comp : dec.components) {
                auto ge = projection_order(e.group, comp.idempotent);
                // H = G itself
                require(ge.order % ge.order == 0, "trivial divisibility");
                // H = <g> for every group element, embedded in V(ZG)
                for (int x = 0; x < e.group.order(); ++x) {
                    auto he = projection_subgroup_order(e.group, comp.idempotent, {ga_basis(x)});
                    require(ge.order % he.order == 0,
                            e.name + ": |He| does not divide |Ge| for a cyclic subgroup");
                }
            }
        }
        // a conjugated fixture with a nontrivial unit: u = 1 + (1-a) b ahat
        auto d6 = FiniteGroup::dihedral(6);
        int a = -1, b = -1;
        for (int x = 0; x < d6.order(); ++x) {
            if (d6.element_order(x) == 3 && a < 0) a = x;
            if (d6.element_order(x) == 2 && b < 0) b = x;
        }
        GroupAlgebraElement ahat;
        for (int k = 0, x = d6.identity(); k < 3; ++k, x = d6.mul(x, a)) ahat.add(x, Rational(1));
        auto one = ga_one(d6);
        auto u = ga_add(one, ga_mul(d6, ga_sub(one, ga_basis(a)), ga_mul(d6, ga_basis(b), ahat)));
        auto u_inv = ga_sub(one, ga_mul(d6, ga_sub(one, ga_basis(a)), ga_mul(d6, ga_basis(b), ahat)));
        require(ga_mul(d6, u, u_inv) == one, "bicyclic unit is not a unit");
        for (const auto& comp : decompose(d6).components) {
            auto ge = projection_order(d6, comp.idempotent);
            auto gen = ga_mul(d6, ga_mul(d6, u_inv, ga_basis(a)), u);
            auto he = projection_subgroup_order(d6, comp.idempotent, {gen});
            require(ge.order % he.order == 0, "conjugated fixture fails divisibility");
        }
    });

    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
