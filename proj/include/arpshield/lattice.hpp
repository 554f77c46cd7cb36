#ifndef ARPSHIELD_LATTICE_HPP
#define ARPSHIELD_LATTICE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arpshield {

// The eight attack activities ordered by causality. S (sniffing) is the
// root activity; DDoS is the top. The set is closed.
enum class AttackElement : std::uint8_t {
    S = 0,     // Sniffing
    CS = 1,    // Content Sniffing
    AS = 2,    // ARP Sniffing
    BA = 3,    // Broadcast Attacks
    PA = 4,    // Phishing Attacks
    CP = 5,    // ARP Cache Poisoning
    DoS = 6,   // Denial of Service
    DDoS = 7,  // Distributed Denial of Service
};

inline constexpr std::size_t kAttackElementCount = 8;

const char* to_string(AttackElement element);
std::optional<AttackElement> attack_element_from_string(const std::string&);

std::array<AttackElement, kAttackElementCount> all_attack_elements();

using ElementPair = std::pair<AttackElement, AttackElement>;

class CycleDetectedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotAPosetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A binary relation over the eight elements, held as an 8x8 incidence
// matrix. contains(x, y) reads as "x <= y", i.e. x causes y directly or
// indirectly.
class CausalRelation {
public:
    CausalRelation() = default;

    void add(AttackElement lower, AttackElement upper);
    bool contains(AttackElement lower, AttackElement upper) const;

    bool is_reflexive() const;
    bool is_antisymmetric() const;
    bool is_transitive() const;

    std::vector<ElementPair> pairs() const;

private:
    std::array<std::array<bool, kAttackElementCount>, kAttackElementCount>
        matrix_{};
};

// Covering edges of the causal order: S->CS, S->AS, CS->BA, AS->BA,
// CS->PA, CS->CP, PA->DoS, CP->DoS, DoS->DDoS, BA->DDoS.
std::vector<ElementPair> canonical_hasse_edges();

// Reflexive-transitive closure of an edge set. Throws CycleDetectedError
// when the closure would violate antisymmetry.
CausalRelation closure(const std::vector<ElementPair>& edges);

// Exhaustive check of the three partial-order axioms.
bool is_poset(const CausalRelation& relation);

// True iff every pair of elements has a unique least upper bound and a
// unique greatest lower bound, found by enumerating bound sets. Throws
// NotAPosetError when the relation is not a poset.
bool is_lattice(const CausalRelation& relation);

// How a query target relates to a set of detected attack elements.
enum class CoverageRelation {
    Consequence,   // some detected element causes the target
    Cause,         // the target causes some detected element
    Incomparable,  // neither direction holds
};

struct CoverageAnswer {
    CoverageRelation relation = CoverageRelation::Incomparable;
    std::set<AttackElement> root_causes;   // downward closure of detected
    std::set<AttackElement> consequences;  // upward closure of detected
};

// Validated order with precomputed join/meet tables. Construction fails
// (returns nullopt) unless the relation is a bounded lattice.
class Lattice {
public:
    static std::optional<Lattice> build(const CausalRelation& relation);
    static const Lattice& canonical();

    AttackElement lub(AttackElement x, AttackElement y) const;
    AttackElement glb(AttackElement x, AttackElement y) const;
    bool leq(AttackElement lower, AttackElement upper) const;

    AttackElement bottom() const { return bottom_; }
    AttackElement top() const { return top_; }
    const CausalRelation& relation() const { return relation_; }

    CoverageAnswer coverage_query(const std::set<AttackElement>& detected,
                                  AttackElement target) const;

private:
    Lattice() = default;

    CausalRelation relation_;
    std::array<std::array<AttackElement, kAttackElementCount>,
               kAttackElementCount>
        join_table_{};
    std::array<std::array<AttackElement, kAttackElementCount>,
               kAttackElementCount>
        meet_table_{};
    AttackElement bottom_ = AttackElement::S;
    AttackElement top_ = AttackElement::DDoS;
};

}  // namespace arpshield

#endif  // ARPSHIELD_LATTICE_HPP
