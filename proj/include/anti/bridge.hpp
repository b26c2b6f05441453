#pragma once

#include "anti/algebra.hpp"
#include "anti/axioms.hpp"

namespace anti {

// Presentation of the even part of the bridge superalgebra: the symmetric
// square of the odd part over the even part. Generators are unordered pairs of
// odd basis vectors; relators identify (alpha a) . b with a . (alpha b).
struct SymSquarePresentation {
    std::vector<std::size_t> odd;                    // ambient indices of the odd basis
    std::vector<std::pair<std::size_t, std::size_t>> gens; // positions into odd, i <= j, lex order
    Subspace relators;                               // subspace of the generator space
    std::vector<std::size_t> rep_gens;               // complement generator positions (quotient basis)

    std::size_t gen_index(std::size_t oi, std::size_t oj) const;
    // symmetrized product into generator coordinates: u (x) v + v (x) u, for
    // ambient odd-part vectors u, v
    Vec sym(const Vec& u, const Vec& v, long field_d) const;
    Vec project(Vec gen_vec) const; // quotient coordinates (length rep_gens.size())
};

struct BridgeResult {
    GradedAlgebra superalgebra; // bracket table on (quotient gens; odd part)
    SymSquarePresentation presentation;
};

// Superalgebra on a1 + S^2_{a0}(a1) with the bracket determined by
// [a.b, c] = a(bc) + b(ac), its Leibniz extension on even pairs, and
// [a, b] = a.b. Requires a total algebra passing the antialgebra axioms.
BridgeResult build_ga(const GradedAlgebra& alg);

struct THomResult {
    std::vector<SuperLinearMap> ops; // one per superalgebra basis element
    bool all_derivations = false;
    bool bracket_homomorphism = false;
    std::optional<std::pair<std::size_t, std::size_t>> hom_witness;
};

// The canonical action of the bridge superalgebra on the algebra: odd
// generators act by right multiplication, even classes a.b by
// x -> (x a) b + (x b) a.
THomResult t_homomorphism(const GradedAlgebra& alg, const BridgeResult& bridge);

struct DerResult {
    GradedAlgebra bracket_algebra;   // abstract bracket table of Der(alg)
    std::vector<SuperLinearMap> ops; // canonical basis of derivations
};

// Basis of all (even and odd) derivations, with the super-commutator bracket
// expanded on that basis (closure verified).
DerResult compute_der(const GradedAlgebra& alg);

// Expand a matrix in the span of the given operator basis; nullopt when it is
// not in the span.
std::optional<Vec> expand_in_operator_basis(const std::vector<SuperLinearMap>& basis,
                                            const Mat<RatField>& m, long field_d);

} // namespace anti
