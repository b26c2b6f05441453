#pragma once

#include "anti/algebra.hpp"

namespace anti {

struct NotACocycle : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotUnital : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class ExtType { I, II };

// Even symmetric 2-cocycle. Type I pairs an even with an odd argument (values
// in the odd central line); type II pairs even/even symmetrically and odd/odd
// skew-symmetrically (even central line).
struct Cocycle {
    ExtType type = ExtType::I;
    // coefficient vector in the canonical coordinate layout of the type (see
    // cocycle_coords); kept flat so cocycles are also plain linear-algebra data
    Vec coeffs;
};

// Coordinate layout of the cocycle space for an algebra:
//  type I:  one slot per (even i, odd j) pair, lex in (i, j)
//  type II: slots for even pairs i <= j (symmetric), then odd pairs i < j (skew)
struct CocycleLayout {
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    std::size_t size() const { return slots.size(); }
    long index(std::size_t i, std::size_t j) const; // -1 when the pair has no slot
};
CocycleLayout cocycle_layout(const GradedAlgebra& alg, ExtType type);

// Value C(x_i, x_j) of a cocycle on a basis pair, with the symmetry applied.
Scalar cocycle_value(const GradedAlgebra& alg, const Cocycle& c, std::size_t i, std::size_t j);

struct CocycleSpace {
    ExtType type = ExtType::I;
    CocycleLayout layout;
    Subspace cocycles;     // Z, in layout coordinates
    Subspace coboundaries; // B
    std::size_t dim_z() const { return cocycles.dim(); }
    std::size_t dim_b() const { return coboundaries.dim(); }
    std::size_t dim_h() const { return dim_z() - dim_b(); }
};

CocycleSpace cocycle_space(const GradedAlgebra& alg, ExtType type);

// Does the coefficient vector satisfy the defining identities?
bool is_cocycle(const GradedAlgebra& alg, const Cocycle& c);

// One-dimensional central extension along the cocycle; the adjunct is odd for
// type I, even for type II. Quotient by its span returns the input.
GradedAlgebra extend_central(const GradedAlgebra& alg, const Cocycle& c,
                             const std::string& central_label = "z");

struct UnitalSplitResult {
    GradedAlgebra abar; // center-complement subalgebra
    Subspace center;
    std::size_t dim_h_type1 = 0, dim_h_type2 = 0; // of abar; both must be zero
};

// Split a unital antialgebra into abar + center and certify that abar has no
// nontrivial one-dimensional central extensions of either type.
UnitalSplitResult unital_split(const GradedAlgebra& alg);

} // namespace anti
