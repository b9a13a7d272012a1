#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringends/errors.hpp"
#include "ringends/fields.hpp"
#include "ringends/group.hpp"
#include "ringends/wedderburn.hpp"

namespace ringends {

enum class EndsClass { Zero, One, Two, Infinity };

inline std::string ends_name(EndsClass e) {
    switch (e) {
        case EndsClass::Zero: return "0";
        case EndsClass::One: return "1";
        case EndsClass::Two: return "2";
        case EndsClass::Infinity: return "infinity";
    }
    return "?";
}

/// Coarse unit-group verdict for one simple component:
///  - FiniteUnits: orders have finite unit groups (rank-0 field, or totally
///    definite quaternion with rank-0 center).
///  - InfiniteEnds: M_2(Q), the unique component type with infinitely-ended
///    unit groups.
///  - Excluded: field/TDQ type with positive center rank (infinite abelian
///    part; rules the component out of the finite and G-infinity tests).
///  - OneEnd: everything else (higher matrix components etc.).
enum class ComponentUnitEnds { FiniteUnits, InfiniteEnds, OneEnd, Excluded };

inline std::string component_ends_name(ComponentUnitEnds v) {
    switch (v) {
        case ComponentUnitEnds::FiniteUnits: return "FiniteUnits";
        case ComponentUnitEnds::InfiniteEnds: return "InfiniteEnds";
        case ComponentUnitEnds::OneEnd: return "OneEnd";
        case ComponentUnitEnds::Excluded: return "Excluded";
    }
    return "?";
}

/// Per-component certificate line.
struct ComponentVerdict {
    int index = 0;
    std::string component;
    std::string center;
    ComponentUnitEnds verdict = ComponentUnitEnds::OneEnd;
    bool abelian_type = false;  // field or totally definite quaternion
    bool allowed_ginfty = false;
    long rank = -1;             // center unit rank for abelian-type components
    std::string reason;
};

struct RankLedgerEntry {
    int index = 0;
    std::string center;
    long rank = 0;
    bool sl1_finite = false;
};

struct EndsReport {
    EndsClass ends = EndsClass::Zero;
    bool virtually_ginfty = false;
    bool virtually_free = false;
    bool z_by_finite = false;
    bool abelian_by_finite = false;
    bool cut = false;
    long total_rank = 0;
    std::string rule;
    std::vector<ComponentVerdict> certificate;
    std::vector<RankLedgerEntry> rank_ledger;
    std::vector<std::vector<Place>> quaternion_ramified;
};

/// Structural test for finite unit groups of Z G: abelian of exponent
/// dividing 4 or 6, or a Hamiltonian 2-group of exponent 4 (Q8 x C2^n),
/// detected by the element-order and commutator fingerprint.
inline bool higman_check(const FiniteGroup& g) {
    if (g.is_abelian()) {
        long e = g.exponent();
        return 4 % e == 0 || 6 % e == 0;
    }
    long n = g.order();
    while (n % 2 == 0) n /= 2;
    if (n != 1) return false;                       // 2-group
    if (g.exponent() != 4) return false;            // exponent 4
    if (g.commutator_subgroup().size() != 2) return false;
    return all_cyclic_subgroups_normal(g);          // Hamiltonian
}

namespace detail {

inline ComponentVerdict assess_component(int index, const WedderburnComponent& c) {
    ComponentVerdict v;
    v.index = index;
    v.component = c.str();
    v.center = c.center.str();
    long center_rank = unit_rank(c.center);
    switch (c.kind) {
        case ComponentKind::Field:
            v.abelian_type = true;
            v.rank = center_rank;
            if (center_rank == 0) {
                v.verdict = ComponentUnitEnds::FiniteUnits;
                v.allowed_ginfty = true;
                v.reason = "rank-0 field (Q or imaginary quadratic); finite unit group";
            } else {
                v.verdict = ComponentUnitEnds::Excluded;
                v.reason = "field of unit rank " + std::to_string(center_rank);
            }
            break;
        case ComponentKind::TotallyDefiniteQuaternion:
            v.abelian_type = true;
            v.rank = 0;
            v.verdict = ComponentUnitEnds::FiniteUnits;
            v.allowed_ginfty = true;
            v.reason = "totally definite quaternion algebra over Q; SL1 of an order is finite";
            break;
        case ComponentKind::OtherDivision:
            // totally definite quaternion over a larger totally real center:
            // SL1 finite, center units of positive rank
            v.abelian_type = true;
            v.rank = center_rank;
            v.verdict = ComponentUnitEnds::Excluded;
            v.reason = "totally definite quaternion over " + c.center.str() +
                       "; finite SL1 but center unit rank " + std::to_string(center_rank);
            break;
        case ComponentKind::SplitMatrix2OverQ:
            v.verdict = ComponentUnitEnds::InfiniteEnds;
            v.allowed_ginfty = true;
            v.reason = "M2(Q): GL2(Z) splits over a finite subgroup";
            break;
        case ComponentKind::IndefiniteQuaternionDivision:
            v.verdict = ComponentUnitEnds::OneEnd;
            v.reason = "indefinite quaternion division algebra; infinite one-ended unit groups";
            break;
        case ComponentKind::OtherMatrix:
            v.verdict = ComponentUnitEnds::OneEnd;
            v.reason = "reduced degree " + std::to_string(c.reduced_degree) + " over " +
                       c.center.str() + "; infinite unit groups, not M2(Q)";
            break;
    }
    return v;
}

} // namespace detail

/// Unit-ends verdict for a single fully classified component.
inline ComponentUnitEnds component_unit_ends(const WedderburnComponent& c) {
    return detail::assess_component(0, c).verdict;
}

/// True when the group is a cut group: every component center of Q G is Q or
/// imaginary quadratic (equivalently, of unit rank 0).
inline bool is_cut_group(const Decomposition& over_q) {
    for (const auto& c : over_q.components)
        if (unit_rank(c.center) != 0) return false;
    return true;
}

/// Full classification of the unit group of R G by number of ends. Complete
/// for F = Q or abelian G; other combinations are unsupported rather than
/// guessed.
inline EndsReport classify_decomposition(const Decomposition& dec,
                                         const std::optional<Decomposition>& over_q_opt = {}) {
    const FiniteGroup& g = dec.group;
    bool over_q = dec.base_field.degree() == 1;
    if (!over_q && !g.is_abelian())
        throw unsupported_error(
            "ends classification for a non-abelian group over an extension field is "
            "undecidable with supported field arithmetic; use F = Q or an abelian group");

    EndsReport r;
    bool all_finite = true, all_abelian_type = true, all_allowed = true;
    int split_count = 0, infinite_components = 0;
    long total_rank = 0;
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
        const auto& c = dec.components[i];
        auto v = detail::assess_component(static_cast<int>(i), c);
        if (v.verdict != ComponentUnitEnds::FiniteUnits) ++infinite_components;
        if (v.verdict == ComponentUnitEnds::InfiniteEnds) ++split_count;
        all_finite = all_finite && v.verdict == ComponentUnitEnds::FiniteUnits;
        all_abelian_type = all_abelian_type && v.abelian_type;
        all_allowed = all_allowed && v.allowed_ginfty;
        if (v.abelian_type) {
            total_rank += v.rank;
            r.rank_ledger.push_back({static_cast<int>(i), v.center, v.rank,
                                     v.verdict == ComponentUnitEnds::FiniteUnits ||
                                         c.kind != ComponentKind::Field});
        }
        if (c.quaternion && !c.quaternion->ramified.empty())
            r.quaternion_ramified.push_back(c.quaternion->ramified);
        r.certificate.push_back(std::move(v));
    }
    r.total_rank = total_rank;

    // rule order: Zero -> Two -> Infinity -> One (mutually exclusive by the
    // rank ledger; the order only affects certificate wording)
    if (all_finite) {
        r.ends = EndsClass::Zero;
        r.rule = "all components have finite unit groups";
    } else if (all_abelian_type && total_rank == 1) {
        r.ends = EndsClass::Two;
        r.rule = "abelian-by-finite with total unit rank exactly 1";
    } else if (split_count == 1 && infinite_components == 1) {
        r.ends = EndsClass::Infinity;
        r.rule = "exactly one M2(Q) component, every other component finite";
    } else {
        r.ends = EndsClass::One;
        r.rule = "infinite unit group, neither Z-by-finite nor a single M2(Q) splitter";
    }

    // structural cross-check over Q: the zero-ends verdict must agree with
    // the abelian-exponent / Hamiltonian fingerprint test
    if (over_q && higman_check(g) != (r.ends == EndsClass::Zero))
        throw internal_error("classify: rank ledger disagrees with the structural zero-ends test");

    r.virtually_ginfty = all_allowed && split_count >= 1;
    r.virtually_free = r.ends != EndsClass::One;
    r.z_by_finite = r.ends == EndsClass::Two;
    r.abelian_by_finite = all_abelian_type;
    if (over_q) r.cut = is_cut_group(dec);
    else if (over_q_opt) r.cut = is_cut_group(*over_q_opt);
    else r.cut = is_cut_group(decompose(g));

    if (r.virtually_ginfty) {
        if (!over_q)
            throw internal_error("classify: virtually-Ginfty positive over F != Q");
        if (!r.cut) throw internal_error("classify: virtually-Ginfty positive for a non-cut group");
        for (const auto& ram : r.quaternion_ramified) {
            bool two_inf = ram.size() == 2 && ram[0] == Place::prime(2) && ram[1] == Place::infinity();
            bool three_inf =
                ram.size() == 2 && ram[0] == Place::prime(3) && ram[1] == Place::infinity();
            if (!two_inf && !three_inf)
                throw internal_error(
                    "classify: quaternion parameters outside {(-1,-1),(-1,-3)} in a positive "
                    "virtually-Ginfty verdict (ramified " + places_str(ram) + ")");
        }
    }
    if (r.ends == EndsClass::Infinity && !r.virtually_ginfty)
        throw internal_error("classify: infinitely many ends without the G-infinity certificate");
    return r;
}

inline EndsReport classify(const FiniteGroup& g, const AbelianField& F = rationals_field()) {
    return classify_decomposition(decompose(g, F));
}

/// Virtually-G-infinity test with certificate: every component a rank-0
/// field, an allowed totally definite quaternion, or M2(Q), with at least
/// one M2(Q).
struct GinftyCertificate {
    bool verdict = false;
    std::vector<ComponentVerdict> components;
    std::vector<std::vector<Place>> quaternion_ramified;
    std::string reason;
};

inline GinftyCertificate virtually_ginfty(const FiniteGroup& g,
                                          const AbelianField& F = rationals_field()) {
    Decomposition dec = decompose(g, F);
    GinftyCertificate cert;
    bool all_allowed = true;
    int split_count = 0;
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
        auto v = detail::assess_component(static_cast<int>(i), dec.components[i]);
        all_allowed = all_allowed && v.allowed_ginfty;
        if (v.verdict == ComponentUnitEnds::InfiniteEnds) ++split_count;
        if (dec.components[i].quaternion && !dec.components[i].quaternion->ramified.empty())
            cert.quaternion_ramified.push_back(dec.components[i].quaternion->ramified);
        cert.components.push_back(std::move(v));
    }
    cert.verdict = all_allowed && split_count >= 1;
    if (cert.verdict) {
        if (F.degree() != 1)
            throw internal_error("virtually_ginfty: positive verdict over F != Q");
        for (const auto& ram : cert.quaternion_ramified) {
            bool ok = ram.size() == 2 && ram[1] == Place::infinity() &&
                      (ram[0] == Place::prime(2) || ram[0] == Place::prime(3));
            if (!ok)
                throw internal_error("virtually_ginfty: impossible quaternion parameters " +
                                     places_str(ram) + " in a positive verdict");
        }
        cert.reason = "every component is a rank-0 field, an allowed totally definite "
                      "quaternion, or M2(Q), and M2(Q) occurs";
    } else if (split_count == 0) {
        cert.reason = "no M2(Q) component";
    } else {
        cert.reason = "a component outside the allowed list is present";
    }
    return cert;
}

/// Two-ends verdict usable for every supported (G, F): non-abelian groups
/// over extension fields are never Z-by-finite, since their noncommutative
/// components are neither fields nor totally definite quaternion algebras
/// over the (imaginary) extension.
inline bool is_two_ended(const FiniteGroup& g, const AbelianField& F = rationals_field()) {
    if (F.degree() != 1 && !g.is_abelian()) return false;
    return classify(g, F).ends == EndsClass::Two;
}

/// Scan for groups whose unit group is Z-by-finite: cyclic groups through
/// n_max plus the supplied catalog groups (cyclic catalog entries are
/// covered by the cyclic sweep and skipped).
inline std::vector<std::string> two_ends_scan(
    int n_max, const AbelianField& F,
    const std::vector<std::pair<std::string, FiniteGroup>>& catalog_groups = {}) {
    std::vector<std::string> out;
    for (int n = 1; n <= n_max; ++n)
        if (is_two_ended(FiniteGroup::cyclic(n), F)) out.push_back("C" + std::to_string(n));
    for (const auto& [name, g] : catalog_groups) {
        if (g.order() > n_max) continue;
        bool cyclic = false;
        for (int x = 0; x < g.order(); ++x)
            if (g.element_order(x) == g.order()) cyclic = true;
        if (cyclic) continue;
        if (is_two_ended(g, F)) out.push_back(name);
    }
    return out;
}

} // namespace ringends
