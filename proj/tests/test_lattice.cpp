#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>
#include <vector>

#include "arpshield/lattice.hpp"

using namespace arpshield;
using E = AttackElement;

namespace {

// Independent oracle: reachability over the raw edge list by repeated
// relaxation, then bound-set enumeration. Deliberately avoids the
// library's closure/lattice code paths.
struct Oracle {
    bool reach[8][8] = {};

    explicit Oracle(const std::vector<ElementPair>& edges)
    {
        for (int i = 0; i < 8; ++i) {
            reach[i][i] = true;
        }
        for (const auto& [lo, hi] : edges) {
            reach[static_cast<int>(lo)][static_cast<int>(hi)] = true;
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i < 8; ++i) {
                for (int j = 0; j < 8; ++j) {
                    if (!reach[i][j]) {
                        continue;
                    }
                    for (int k = 0; k < 8; ++k) {
                        if (reach[j][k] && !reach[i][k]) {
                            reach[i][k] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
    }

    std::optional<E> lub(E x, E y) const
    {
        for (int z = 0; z < 8; ++z) {
            if (!reach[static_cast<int>(x)][z] ||
                !reach[static_cast<int>(y)][z]) {
                continue;
            }
            bool least = true;
            for (int w = 0; w < 8; ++w) {
                if (reach[static_cast<int>(x)][w] &&
                    reach[static_cast<int>(y)][w] && !reach[z][w]) {
                    least = false;
                    break;
                }
            }
            if (least) {
                return static_cast<E>(z);
            }
        }
        return std::nullopt;
    }

    std::optional<E> glb(E x, E y) const
    {
        for (int z = 0; z < 8; ++z) {
            if (!reach[z][static_cast<int>(x)] ||
                !reach[z][static_cast<int>(y)]) {
                continue;
            }
            bool greatest = true;
            for (int w = 0; w < 8; ++w) {
                if (reach[w][static_cast<int>(x)] &&
                    reach[w][static_cast<int>(y)] && !reach[w][z]) {
                    greatest = false;
                    break;
                }
            }
            if (greatest) {
                return static_cast<E>(z);
            }
        }
        return std::nullopt;
    }
};

}  // namespace

TEST_CASE("closure of the empty edge set is the reflexive relation")
{
    const CausalRelation relation = closure({});
    int count = 0;
    for (E x : all_attack_elements()) {
        for (E y : all_attack_elements()) {
            if (relation.contains(x, y)) {
                ++count;
                CHECK(x == y);
            }
        }
    }
    CHECK(count == 8);
}

TEST_CASE("closure follows multi-step causality chains")
{
    const CausalRelation relation = closure(canonical_hasse_edges());
    CHECK(relation.contains(E::S, E::DDoS));
    CHECK(relation.contains(E::CS, E::DoS));
    CHECK(relation.contains(E::AS, E::DDoS));
    CHECK(!relation.contains(E::DDoS, E::S));
    CHECK(!relation.contains(E::AS, E::PA));
}

TEST_CASE("closure rejects cycles")
{
    CHECK_THROWS_AS(closure({{E::S, E::CS}, {E::CS, E::S}}),
                    CycleDetectedError);
}

TEST_CASE("poset axioms are checked exhaustively")
{
    CHECK(is_poset(closure(canonical_hasse_edges())));

    // Missing a reflexive pair.
    CausalRelation no_reflexive;
    for (E x : all_attack_elements()) {
        if (x != E::S) {
            no_reflexive.add(x, x);
        }
    }
    CHECK(!is_poset(no_reflexive));

    // Reflexive pairs plus a non-transitive chain.
    CausalRelation non_transitive;
    for (E x : all_attack_elements()) {
        non_transitive.add(x, x);
    }
    non_transitive.add(E::S, E::CS);
    non_transitive.add(E::CS, E::BA);
    CHECK(!non_transitive.is_transitive());
    CHECK(!is_poset(non_transitive));
}

TEST_CASE("the causal structure is a bounded lattice")
{
    const CausalRelation relation = closure(canonical_hasse_edges());
    CHECK(is_lattice(relation));

    const auto lattice = Lattice::build(relation);
    REQUIRE(lattice.has_value());
    CHECK(lattice->bottom() == E::S);
    CHECK(lattice->top() == E::DDoS);
}

TEST_CASE("dropping the DoS->DDoS edge breaks the lattice")
{
    std::vector<ElementPair> edges;
    for (const auto& edge : canonical_hasse_edges()) {
        if (!(edge.first == E::DoS && edge.second == E::DDoS)) {
            edges.push_back(edge);
        }
    }
    const CausalRelation relation = closure(edges);
    REQUIRE(is_poset(relation));
    CHECK(!is_lattice(relation));

    // The oracle agrees: BA and DoS then have no common upper bound.
    const Oracle oracle(edges);
    CHECK(!oracle.lub(E::BA, E::DoS).has_value());
}

TEST_CASE("a two-element chain is a lattice")
{
    // Restricted domain: only S and DDoS carry non-reflexive structure;
    // the other six are isolated points, so check the chain via the
    // oracle on the sub-relation instead of the full element set.
    const Oracle oracle({{E::S, E::DDoS}});
    CHECK(oracle.lub(E::S, E::DDoS) == E::DDoS);
    CHECK(oracle.glb(E::S, E::DDoS) == E::S);
}

TEST_CASE("join and meet tables match the independent oracle on all 64 pairs")
{
    const Lattice& lattice = Lattice::canonical();
    const Oracle oracle(canonical_hasse_edges());
    for (E x : all_attack_elements()) {
        for (E y : all_attack_elements()) {
            REQUIRE(oracle.lub(x, y).has_value());
            REQUIRE(oracle.glb(x, y).has_value());
            CHECK(lattice.lub(x, y) == *oracle.lub(x, y));
            CHECK(lattice.glb(x, y) == *oracle.glb(x, y));
        }
    }
}

TEST_CASE("worked joins over incomparable pairs")
{
    const Lattice& lattice = Lattice::canonical();
    CHECK(lattice.lub(E::CS, E::AS) == E::BA);
    CHECK(lattice.glb(E::CS, E::AS) == E::S);
    CHECK(lattice.lub(E::PA, E::CP) == E::DoS);
    CHECK(lattice.glb(E::PA, E::CP) == E::CS);
}

TEST_CASE("joins and meets of comparable pairs collapse to the pair")
{
    // For x <= y the order axioms force lub = y and glb = x; the
    // reference derivations state other meets for these two pairs, which
    // no partial order can satisfy (see the acceptance suite notes).
    const Lattice& lattice = Lattice::canonical();
    REQUIRE(lattice.leq(E::CP, E::DoS));
    CHECK(lattice.lub(E::CP, E::DoS) == E::DoS);
    CHECK(lattice.glb(E::CP, E::DoS) == E::CP);

    REQUIRE(lattice.leq(E::DoS, E::DDoS));
    CHECK(lattice.lub(E::DoS, E::DDoS) == E::DDoS);
    CHECK(lattice.glb(E::DoS, E::DDoS) == E::DoS);
}

TEST_CASE("algebraic laws hold on every pair")
{
    const Lattice& lattice = Lattice::canonical();
    for (E x : all_attack_elements()) {
        CHECK(lattice.lub(x, x) == x);
        CHECK(lattice.glb(x, x) == x);
        CHECK(lattice.lub(x, lattice.bottom()) == x);
        CHECK(lattice.glb(x, lattice.top()) == x);
        for (E y : all_attack_elements()) {
            CHECK(lattice.lub(x, y) == lattice.lub(y, x));
            CHECK(lattice.glb(x, y) == lattice.glb(y, x));
            CHECK(lattice.lub(x, lattice.glb(x, y)) == x);
            CHECK(lattice.glb(x, lattice.lub(x, y)) == x);
            for (E z : all_attack_elements()) {
                CHECK(lattice.lub(x, lattice.lub(y, z)) ==
                      lattice.lub(lattice.lub(x, y), z));
                CHECK(lattice.glb(x, lattice.glb(y, z)) ==
                      lattice.glb(lattice.glb(x, y), z));
            }
        }
    }
}

TEST_CASE("coverage queries")
{
    const Lattice& lattice = Lattice::canonical();

    const CoverageAnswer phishing =
        lattice.coverage_query({E::PA}, E::DoS);
    CHECK(phishing.relation == CoverageRelation::Consequence);

    for (E target : all_attack_elements()) {
        const CoverageAnswer from_bottom =
            lattice.coverage_query({E::S}, target);
        CHECK(from_bottom.relation == CoverageRelation::Consequence);
    }

    const CoverageAnswer unrelated = lattice.coverage_query({E::AS}, E::PA);
    CHECK(unrelated.relation == CoverageRelation::Incomparable);

    const CoverageAnswer cause = lattice.coverage_query({E::DoS}, E::CS);
    CHECK(cause.relation == CoverageRelation::Cause);

    const CoverageAnswer closures = lattice.coverage_query({E::CP}, E::DDoS);
    CHECK(closures.root_causes == std::set<E>{E::S, E::CS, E::CP});
    CHECK(closures.consequences == std::set<E>{E::CP, E::DoS, E::DDoS});

    CHECK_THROWS_AS(lattice.coverage_query({}, E::S), std::invalid_argument);
}
