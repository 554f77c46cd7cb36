#include "arpshield/lattice.hpp"

namespace arpshield {

namespace {

std::size_t index_of(AttackElement element)
{
    return static_cast<std::size_t>(element);
}

AttackElement element_at(std::size_t index)
{
    return static_cast<AttackElement>(index);
}

// Unique minimum / maximum of a candidate set under the relation, if one
// exists. Used for bound-set enumeration.
std::optional<AttackElement> unique_least(const CausalRelation& relation,
                                          const std::vector<AttackElement>& set)
{
    for (AttackElement candidate : set) {
        bool below_all = true;
        for (AttackElement other : set) {
            if (!relation.contains(candidate, other)) {
                below_all = false;
                break;
            }
        }
        if (below_all) {
            return candidate;
        }
    }
    return std::nullopt;
}

std::optional<AttackElement> unique_greatest(
    const CausalRelation& relation, const std::vector<AttackElement>& set)
{
    for (AttackElement candidate : set) {
        bool above_all = true;
        for (AttackElement other : set) {
            if (!relation.contains(other, candidate)) {
                above_all = false;
                break;
            }
        }
        if (above_all) {
            return candidate;
        }
    }
    return std::nullopt;
}

std::vector<AttackElement> upper_bounds(const CausalRelation& relation,
                                        AttackElement x, AttackElement y)
{
    std::vector<AttackElement> bounds;
    for (AttackElement z : all_attack_elements()) {
        if (relation.contains(x, z) && relation.contains(y, z)) {
            bounds.push_back(z);
        }
    }
    return bounds;
}

std::vector<AttackElement> lower_bounds(const CausalRelation& relation,
                                        AttackElement x, AttackElement y)
{
    std::vector<AttackElement> bounds;
    for (AttackElement z : all_attack_elements()) {
        if (relation.contains(z, x) && relation.contains(z, y)) {
            bounds.push_back(z);
        }
    }
    return bounds;
}

}  // namespace

const char* to_string(AttackElement element)
{
    switch (element) {
        case AttackElement::S: return "S";
        case AttackElement::CS: return "CS";
        case AttackElement::AS: return "AS";
        case AttackElement::BA: return "BA";
        case AttackElement::PA: return "PA";
        case AttackElement::CP: return "CP";
        case AttackElement::DoS: return "DoS";
        case AttackElement::DDoS: return "DDoS";
    }
    return "?";
}

std::optional<AttackElement> attack_element_from_string(const std::string& text)
{
    for (AttackElement element : all_attack_elements()) {
        if (text == to_string(element)) {
            return element;
        }
    }
    return std::nullopt;
}

std::array<AttackElement, kAttackElementCount> all_attack_elements()
{
    std::array<AttackElement, kAttackElementCount> elements{};
    for (std::size_t i = 0; i < kAttackElementCount; ++i) {
        elements[i] = element_at(i);
    }
    return elements;
}

void CausalRelation::add(AttackElement lower, AttackElement upper)
{
    matrix_[index_of(lower)][index_of(upper)] = true;
}

bool CausalRelation::contains(AttackElement lower, AttackElement upper) const
{
    return matrix_[index_of(lower)][index_of(upper)];
}

bool CausalRelation::is_reflexive() const
{
    for (std::size_t i = 0; i < kAttackElementCount; ++i) {
        if (!matrix_[i][i]) {
            return false;
        }
    }
    return true;
}

bool CausalRelation::is_antisymmetric() const
{
    for (std::size_t i = 0; i < kAttackElementCount; ++i) {
        for (std::size_t j = 0; j < kAttackElementCount; ++j) {
            if (i != j && matrix_[i][j] && matrix_[j][i]) {
                return false;
            }
        }
    }
    return true;
}

bool CausalRelation::is_transitive() const
{
    for (std::size_t i = 0; i < kAttackElementCount; ++i) {
        for (std::size_t j = 0; j < kAttackElementCount; ++j) {
            if (!matrix_[i][j]) {
                continue;
            }
            for (std::size_t k = 0; k < kAttackElementCount; ++k) {
                if (matrix_[j][k] && !matrix_[i][k]) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::vector<ElementPair> CausalRelation::pairs() const
{
    std::vector<ElementPair> result;
    for (std::size_t i = 0; i < kAttackElementCount; ++i) {
        for (std::size_t j = 0; j < kAttackElementCount; ++j) {
            if (matrix_[i][j]) {
                result.emplace_back(element_at(i), element_at(j));
            }
        }
    }
    return result;
}

std::vector<ElementPair> canonical_hasse_edges()
{
    using E = AttackElement;
    return {
        {E::S, E::CS},   {E::S, E::AS},   {E::CS, E::BA},  {E::AS, E::BA},
        {E::CS, E::PA},  {E::CS, E::CP},  {E::PA, E::DoS}, {E::CP, E::DoS},
        {E::DoS, E::DDoS}, {E::BA, E::DDoS},
    };
}

CausalRelation closure(const std::vector<ElementPair>& edges)
{
    CausalRelation relation;
    for (AttackElement element : all_attack_elements()) {
        relation.add(element, element);
    }
    for (const auto& [lower, upper] : edges) {
        relation.add(lower, upper);
    }

    // Warshall's transitive closure over the 8x8 matrix.
    for (AttackElement k : all_attack_elements()) {
        for (AttackElement i : all_attack_elements()) {
            if (!relation.contains(i, k)) {
                continue;
            }
            for (AttackElement j : all_attack_elements()) {
                if (relation.contains(k, j)) {
                    relation.add(i, j);
                }
            }
        }
    }

    if (!relation.is_antisymmetric()) {
        throw CycleDetectedError(
            "edge set closes into a cycle; causality must be acyclic");
    }
    return relation;
}

bool is_poset(const CausalRelation& relation)
{
    return relation.is_reflexive() && relation.is_antisymmetric() &&
           relation.is_transitive();
}

bool is_lattice(const CausalRelation& relation)
{
    if (!is_poset(relation)) {
        throw NotAPosetError("relation violates a partial-order axiom");
    }
    for (AttackElement x : all_attack_elements()) {
        for (AttackElement y : all_attack_elements()) {
            if (!unique_least(relation, upper_bounds(relation, x, y))) {
                return false;
            }
            if (!unique_greatest(relation, lower_bounds(relation, x, y))) {
                return false;
            }
        }
    }
    return true;
}

std::optional<Lattice> Lattice::build(const CausalRelation& relation)
{
    if (!is_poset(relation) || !is_lattice(relation)) {
        return std::nullopt;
    }

    Lattice lattice;
    lattice.relation_ = relation;
    for (AttackElement x : all_attack_elements()) {
        for (AttackElement y : all_attack_elements()) {
            auto join = unique_least(relation, upper_bounds(relation, x, y));
            auto meet =
                unique_greatest(relation, lower_bounds(relation, x, y));
            lattice.join_table_[index_of(x)][index_of(y)] = *join;
            lattice.meet_table_[index_of(x)][index_of(y)] = *meet;
        }
    }

    // A finite lattice always has a bottom and a top.
    auto elements = all_attack_elements();
    AttackElement bottom = elements[0];
    AttackElement top = elements[0];
    for (AttackElement element : elements) {
        bottom = lattice.meet_table_[index_of(bottom)][index_of(element)];
        top = lattice.join_table_[index_of(top)][index_of(element)];
    }
    lattice.bottom_ = bottom;
    lattice.top_ = top;
    return lattice;
}

const Lattice& Lattice::canonical()
{
    static const Lattice instance = *Lattice::build(closure(canonical_hasse_edges()));
    return instance;
}

AttackElement Lattice::lub(AttackElement x, AttackElement y) const
{
    return join_table_[index_of(x)][index_of(y)];
}

AttackElement Lattice::glb(AttackElement x, AttackElement y) const
{
    return meet_table_[index_of(x)][index_of(y)];
}

bool Lattice::leq(AttackElement lower, AttackElement upper) const
{
    return relation_.contains(lower, upper);
}

CoverageAnswer Lattice::coverage_query(const std::set<AttackElement>& detected,
                                       AttackElement target) const
{
    if (detected.empty()) {
        throw std::invalid_argument("coverage query needs a non-empty set");
    }

    CoverageAnswer answer;
    bool consequence = false;
    bool cause = false;
    for (AttackElement d : detected) {
        consequence = consequence || relation_.contains(d, target);
        cause = cause || relation_.contains(target, d);
        for (AttackElement z : all_attack_elements()) {
            if (relation_.contains(z, d)) {
                answer.root_causes.insert(z);
            }
            if (relation_.contains(d, z)) {
                answer.consequences.insert(z);
            }
        }
    }

    if (consequence) {
        answer.relation = CoverageRelation::Consequence;
    } else if (cause) {
        answer.relation = CoverageRelation::Cause;
    } else {
        answer.relation = CoverageRelation::Incomparable;
    }
    return answer;
}

}  // namespace arpshield
