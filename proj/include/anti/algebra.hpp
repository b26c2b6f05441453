#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "anti/linalg.hpp"
#include "anti/scalar.hpp"

namespace anti {

enum class Parity : unsigned char { Even = 0, Odd = 1 };

inline Parity operator+(Parity x, Parity y) {
    return static_cast<Parity>((static_cast<int>(x) + static_cast<int>(y)) & 1);
}

using Vec = std::vector<Scalar>;

struct Term {
    std::size_t k;
    Scalar c;
    bool operator==(const Term&) const = default;
};

// Window of an infinite graded algebra: which basis pairs have a defined
// product. Kinds: "ak1" (eps_n |n|<=2N, a_{2i} odd |2i|<=2N), "ak1_plus"
// (eps_n 0..2N, a_{2i} in -1..2N-1), "k1" (x_n |n|<=2N, xi_{2i} |2i|<=2N).
struct Window {
    std::string kind;
    long N = 0;
    bool operator==(const Window&) const = default;
};

// Z2-graded algebra given by structure constants on an ordered basis.
// Products are stored for index pairs i <= j only; the other order follows
// from the sign rule: plain algebras are super-commutative, bracket tables
// are super-anticommutative.
class GradedAlgebra {
  public:
    std::string name;
    long field_d = 0;
    std::vector<std::string> labels;
    std::vector<Parity> parities;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Term>> table;
    std::optional<Window> window;
    bool bracket = false;

    void validate() const; // grading + storage shape; throws on violation
    std::size_t dim() const { return labels.size(); }
    std::pair<std::size_t, std::size_t> graded_dims() const;
    std::vector<std::size_t> even_indices() const;
    std::vector<std::size_t> odd_indices() const;
    bool windowed() const { return window.has_value(); }

    bool defined(std::size_t i, std::size_t j) const;
    // e_i * e_j with the sign rule applied; requires defined(i, j).
    std::vector<Term> basis_product(std::size_t i, std::size_t j) const;
    // Bilinear extension; nullopt when a needed pair is undefined.
    std::optional<Vec> product(const Vec& u, const Vec& v) const;

    Vec basis_vector(std::size_t i) const;
    Vec zero_vector() const { return Vec(dim(), Scalar::zero(field_d)); }
    RatField field() const { return RatField{field_d}; }

    // left-multiplication operator L_x : y -> x * y (total algebras only)
    Mat<RatField> left_mult(const Vec& x) const;

    bool same_structure(const GradedAlgebra& o) const; // exact table equality
    GradedAlgebra with_field(long d) const;            // retag scalars into Q(sqrt(d))

    long label_index(const std::string& label) const; // -1 when absent
};

// Subspace of the ambient algebra in RREF-canonical form; equality is
// representation equality.
class Subspace {
  public:
    Subspace() = default;
    Subspace(std::size_t ambient, long field_d) : ambient_(ambient), field_{field_d} {}
    static Subspace span(std::size_t ambient, long field_d, const std::vector<Vec>& vectors);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<Vec>& basis() const { return rows_; }
    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;
    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && rows_ == o.rows_; }

    // graded dims, given the ambient parity assignment (only meaningful when
    // every basis vector is parity-homogeneous)
    std::pair<std::size_t, std::size_t> graded_dims(const std::vector<Parity>& parities) const;

  private:
    std::size_t ambient_ = 0;
    RatField field_{0};
    std::vector<Vec> rows_;
};

// Parity-graded linear map; columns are images of source basis vectors.
// Even maps preserve parity, odd maps flip it.
struct SuperLinearMap {
    std::vector<Parity> src_parities, tgt_parities;
    Parity map_parity = Parity::Even;
    std::vector<Vec> cols;
    long field_d = 0;

    void validate() const; // block structure vs declared parity
    std::size_t src_dim() const { return src_parities.size(); }
    std::size_t tgt_dim() const { return tgt_parities.size(); }
    Vec apply(const Vec& v) const;
    Mat<RatField> matrix() const;

    static SuperLinearMap from_matrix(const Mat<RatField>& m, const std::vector<Parity>& src,
                                      const std::vector<Parity>& tgt, Parity p, long field_d);
};

// --- operations --------------------------------------------------------------

struct NotAnIdeal : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct WindowedInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class ClosureMode { Ideal, Subalgebra };
Subspace closure(const GradedAlgebra& alg, const Subspace& seed, ClosureMode mode);

struct QuotientResult {
    GradedAlgebra algebra;
    SuperLinearMap projection;
    std::vector<std::size_t> representative_indices; // ambient indices of the complement basis
};
QuotientResult quotient(const GradedAlgebra& alg, const Subspace& ideal);

enum class ComposeMode { DirectSum, TensorCommutative };
GradedAlgebra compose(ComposeMode mode, const GradedAlgebra& a, const GradedAlgebra& b);

struct PencilForm {
    std::size_t even_index;               // which a0 basis vector
    std::vector<Vec> omega;               // skew matrix on a1 (rows over odd basis)
    std::size_t rank = 0;
};

struct UnitalSplit {
    Vec unit;
    Subspace half_eigenspace; // ad_eps = 1/2 on a1
    Subspace zero_eigenspace; // ad_eps = 0 on a1
};

struct Fingerprint {
    std::pair<std::size_t, std::size_t> dims;
    std::multiset<std::size_t> pencil_ranks;
    std::pair<std::size_t, std::size_t> center_dims;
    bool ample = false;
    std::vector<bool> even_generator_nilpotent;
    bool operator==(const Fingerprint&) const = default;
};

struct StructureReport {
    std::size_t rank = 0; // dim a0
    std::vector<PencilForm> pencil;
    Subspace kernel_ideal; // joint kernel of the pencil, as ambient vectors
    Subspace center;
    bool ample = false;
    std::optional<UnitalSplit> unital;
    Fingerprint fingerprint;
};

StructureReport analyze(const GradedAlgebra& alg);

struct SimpleOutcome {
    enum class Kind { Simple, NotSimple, Unknown } kind = Kind::Unknown;
    std::uint64_t certifying_prime = 0; // for Simple
    Subspace witness;                   // proper nonzero ideal, for NotSimple
};
SimpleOutcome is_simple(const GradedAlgebra& alg, const std::vector<std::uint64_t>& primes);

enum class MapKind { Homomorphism, Derivation };
struct MapCheck {
    bool pass = false;
    std::size_t checked = 0, skipped = 0;
    std::optional<std::pair<std::size_t, std::size_t>> witness; // basis pair
    std::string lhs, rhs;                                       // rendered sides at the witness
};
MapCheck check_linear_map(const SuperLinearMap& f, const GradedAlgebra& a, const GradedAlgebra& b,
                          MapKind kind);

// ad_x as a SuperLinearMap on the algebra (total algebras).
SuperLinearMap ad_operator(const GradedAlgebra& alg, const Vec& x);

} // namespace anti
