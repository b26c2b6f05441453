#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "anti/algebra.hpp"

namespace anti {

// Variable universe: even variables admit Laurent exponents, odd variables are
// Grassmann (square zero).
struct PolyRing {
    std::vector<std::string> even_names, odd_names;
    long field_d = 0;
    bool operator==(const PolyRing&) const = default;
};
using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::string> even_names, std::vector<std::string> odd_names,
                  long field_d = 0);

namespace conv {
// Super-sign convention of the engine (wedge symmetry, coefficient moves,
// Lie-derivative twist, contraction exponents). The values are fixed by the
// published order-1 bracket tables and bivector invariances; the calibration
// battery in the test suite pins them.
extern int mixed_swap, coeff_move, lie_twist;
extern int alpha[6];
extern int odd_prefactor, const_half;
} // namespace conv

struct Mono {
    std::vector<long> exp;   // per even variable, may be negative
    std::uint32_t mask = 0;  // odd subset
    auto operator<=>(const Mono&) const = default;
};

class GrassmannPoly {
  public:
    GrassmannPoly() = default;
    explicit GrassmannPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static GrassmannPoly constant(RingPtr ring, const Scalar& c);
    static GrassmannPoly var_even(RingPtr ring, std::size_t i, long exp = 1);
    static GrassmannPoly var_odd(RingPtr ring, std::size_t j);
    static GrassmannPoly monomial(RingPtr ring, Mono m, const Scalar& c);

    const RingPtr& ring() const { return ring_; }
    const std::map<Mono, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GrassmannPoly operator+(const GrassmannPoly& o) const;
    GrassmannPoly operator-(const GrassmannPoly& o) const;
    GrassmannPoly operator*(const GrassmannPoly& o) const; // Koszul signs
    GrassmannPoly operator-() const;
    GrassmannPoly scaled(const Scalar& c) const;
    bool operator==(const GrassmannPoly& o) const;

    GrassmannPoly partial_even(std::size_t i) const;
    GrassmannPoly partial_odd(std::size_t j) const; // left derivative
    GrassmannPoly partial(int dir) const;           // dir < n_even: even, else odd

    // parity of a homogeneous polynomial; throws for mixed parities
    Parity parity() const;
    std::optional<Parity> parity_opt() const;

    // substitute each variable by a linear combination of target-ring
    // variables (even rows x even target vars; odd rows x odd target vars).
    // Even substitution requires nonnegative exponents unless the row is a
    // unit monomial.
    GrassmannPoly substitute_linear(RingPtr target, const std::vector<Vec>& even_rows,
                                    const std::vector<Vec>& odd_rows) const;

    std::string str() const;

  private:
    RingPtr ring_;
    std::map<Mono, Scalar> terms_;
    void add_term(Mono m, Scalar c);
    friend class PolyVectorField;
};

// Polyvector field: sum of coeff * d_{u1} ^ ... ^ d_{uk} with the super-wedge
// normalization d_u ^ d_v = -(-1)^{p(u)p(v)} d_v ^ d_u (so equal odd directions
// survive). Directions: 0..n_even-1 even, n_even.. odd.
class PolyVectorField {
  public:
    PolyVectorField() = default;
    PolyVectorField(RingPtr ring, int degree) : ring_(std::move(ring)), degree_(degree) {}

    const RingPtr& ring() const { return ring_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, GrassmannPoly>& terms() const { return terms_; }

    static PolyVectorField single(RingPtr ring, GrassmannPoly coeff, std::vector<int> dirs);

    void add(GrassmannPoly coeff, std::vector<int> dirs); // canonicalizes
    PolyVectorField operator+(const PolyVectorField& o) const;
    PolyVectorField operator-(const PolyVectorField& o) const;
    PolyVectorField scaled(const Scalar& c) const;
    bool operator==(const PolyVectorField& o) const;

    Parity parity() const; // homogeneous fields only

    GrassmannPoly apply(const GrassmannPoly& f) const; // degree-1 fields

    std::string str() const;

    int dir_parity(int dir) const;

  private:
    RingPtr ring_;
    int degree_ = 1;
    std::map<std::vector<int>, GrassmannPoly> terms_;
};

PolyVectorField wedge(const PolyVectorField& a, const PolyVectorField& b);

enum class CommutatorSign { Super, Anticommutator };
// [X, Y] = X Y -+ (-1)^{p(X)p(Y)} Y X as first-order operators; throws when the
// second-order residue does not cancel (the anticommutator of non-tangent
// fields need not be a vector field).
PolyVectorField vf_commutator(const PolyVectorField& x, const PolyVectorField& y,
                              CommutatorSign sign);

// L_X extended to polyvectors by the signed Leibniz rule
// L_X(A ^ B) = [X, A] ^ B + (-1)^{p(X)p(A)} A ^ [X, B].
PolyVectorField lie_derivative(const PolyVectorField& x, const PolyVectorField& lambda);

enum class BracketConvention { Odd, Even };
// Bracket of two homogeneous functions from a bivector: the contraction
// <c d_u ^ d_v, dF ^ dG> = c [ (-1)^{p(u)p(F)+p(v)p(G)} d_uF d_vG
//                              - (-1)^{p(u)p(v)+p(v)p(F)+p(u)p(G)} d_vF d_uG ],
// with prefactor (-1)^{p(F)}/2 in the odd convention and 1 in the even one.
// The sign rule is calibrated against the published order-1 tables.
GrassmannPoly bracket_from_bivector(const PolyVectorField& lambda, const GrassmannPoly& f,
                                    const GrassmannPoly& g, BracketConvention convention);

// Hamiltonian vector field of h for an even Poisson bivector: X_h(z) = {h, z}.
PolyVectorField hamiltonian_field(const PolyVectorField& poisson, const GrassmannPoly& h);

// --- canonical structures -----------------------------------------------------

RingPtr ring_k21(long field_d = 0); // evens p, q; odd tau
RingPtr ring_k11(long field_d = 0); // even x; odd xi
RingPtr ring_k42(long field_d = 0); // evens p1, q1, p2, q2; odds tau1, tau2

PolyVectorField poisson_bivector(const RingPtr& r21);     // d_p^d_q + 1/2 d_tau^d_tau
PolyVectorField odd_bivector(const RingPtr& r21);         // d_tau^E + tau d_p^d_q
PolyVectorField euler_field(const RingPtr& ring);         // sum z dz over all variables
PolyVectorField contact_field(const RingPtr& r11);        // D = 1/2 (d_xi + xi d_x)
std::vector<PolyVectorField> osp12_fields(const RingPtr& r21); // five generators
PolyVectorField complex_odd_bivector(const RingPtr& r42);      // rank-2 odd bivector
PolyVectorField complex_rotation_field(const RingPtr& r42);    // the J field

// Basis of bivectors with coefficients of degree <= 1 and the given parity,
// annihilated by L_X for every X in the action.
std::vector<PolyVectorField> invariant_bivector_space(const std::vector<PolyVectorField>& action,
                                                      Parity parity, const RingPtr& ring);

// Homogeneous lift of f(x, xi): monomial x^a xi^b -> p^{lambda-a-b} q^a tau^b.
// lambda rational; every lifted exponent must be an integer.
GrassmannPoly lift(const GrassmannPoly& f, const mpq_class& lambda, const RingPtr& r21);

// chi_f = f D on the contact line and the operator-true smooth product of the
// window algebra: [chi_f, chi_g]_+ = chi_{f*g} holds exactly for it.
PolyVectorField contact_tangent(const GrassmannPoly& f);
GrassmannPoly ak1_smooth_product(const GrassmannPoly& f, const GrassmannPoly& g);

// --- canonical linear bivector of an algebra ------------------------------------

struct LinearBivector {
    PolyVectorField field; // on the parity-reversed dual coordinates
    // provenance: source basis in order (ring even vars = odd basis, ring odd
    // vars = even basis)
    std::string source_name;
    long source_field_d = 0;
    std::vector<std::string> source_labels;
    std::vector<Parity> source_parities;
};

LinearBivector lambda_of_algebra(const GradedAlgebra& alg);
GradedAlgebra recover_algebra(const LinearBivector& lb);

// --- window realization report ---------------------------------------------------

struct RealizeLine {
    std::string family;
    std::size_t checked = 0;
    std::size_t matched = 0;
    // when every mismatch is the expected value scaled by one constant, that
    // constant (actual/expected); meaningless when matched == checked
    std::optional<Scalar> uniform_ratio;
    bool exact() const { return checked > 0 && matched == checked; }
};

struct RealizeReport {
    std::vector<RealizeLine> lines;
    const RealizeLine* find(const std::string& family) const;
};

// Pairwise brackets of lifted Taylor / x / xi window bases against the
// tabulated structure constants, plus the contraction identity relating the
// tangent action to the lifted bracket.
RealizeReport realize_brackets(long N);

} // namespace anti
