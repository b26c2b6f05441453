#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "anti/algebra.hpp"

namespace anti {

enum class IdentityStatus { Pass, Fail, Partial };

struct IdentityReport {
    std::string identity;
    IdentityStatus status = IdentityStatus::Pass;
    std::size_t checked = 0, skipped = 0;
    std::optional<std::array<std::size_t, 3>> witness;
    std::string lhs, rhs; // rendered sides at the witness
    bool clean() const { return status != IdentityStatus::Fail; }
};

// Per-identity verdicts for the Lie antialgebra axioms plus the auxiliary
// identities used in the equivalence discussion. Overall pass means the four
// defining identities hold (Partial with zero failures counts on windows).
struct AxiomReport {
    IdentityReport assoc_even;        // alpha(beta gamma) = (alpha beta) gamma
    IdentityReport half_action;       // alpha(beta a) = 1/2 (alpha beta) a
    IdentityReport odd_leibniz;       // alpha(a b) = (alpha a) b + a (alpha b)
    IdentityReport odd_jacobi;        // a(bc) + b(ca) + c(ab) = 0
    IdentityReport weak_half_action;  // (alpha beta) a = alpha(beta a) + beta(alpha a)
    IdentityReport even_mult_commute; // multiplication by even elements commutes on a1
    IdentityReport ta_derivation;     // every right multiplication T_a is an odd derivation
    bool overall_pass = false;
    std::vector<const IdentityReport*> all() const {
        return {&assoc_even, &half_action,      &odd_leibniz, &odd_jacobi,
                &weak_half_action, &even_mult_commute, &ta_derivation};
    }
};

AxiomReport check_antialgebra(const GradedAlgebra& alg);

struct EquivalenceReport {
    bool weak_set_holds = false;   // {weak_half_action, odd_leibniz, odd_jacobi} all clean
    bool ta_derivation_holds = false;
    bool equivalence_witnessed = false; // both sides agree
    bool ample = false;
    bool assoc_even_holds = false;
    bool ample_implication_holds = false; // ample & {3,4,5} clean => assoc_even clean
};

EquivalenceReport check_equivalences(const GradedAlgebra& alg);

struct SuperReport {
    IdentityReport anticommutativity; // storage-rule spot check on the stored table
    IdentityReport jacobi;            // graded Jacobi identity on all defined triples
    bool overall_pass = false;
};

// Lie superalgebra axioms for a bracket table (alg.bracket must be set).
SuperReport check_superalgebra(const GradedAlgebra& alg);

} // namespace anti
