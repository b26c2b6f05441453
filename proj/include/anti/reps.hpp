#pragma once

#include <json.hpp>

#include "anti/algebra.hpp"
#include "anti/axioms.hpp"
#include "anti/bridge.hpp"

namespace anti {

struct Carrier {
    std::vector<std::string> labels;
    std::vector<Parity> parities;
    long field_d = 0;
    std::size_t dim() const { return labels.size(); }
    std::pair<std::size_t, std::size_t> graded_dims() const;
};

// Operator on a finite carrier window; a missing column means the image of
// that basis vector escapes the window.
struct PartialOp {
    Parity parity = Parity::Even;
    std::vector<std::optional<Vec>> cols;
    bool total() const;
    // image of a carrier vector; nullopt when any needed column is missing
    std::optional<Vec> apply(const Vec& v, long field_d) const;
    static PartialOp compose(const PartialOp& f, const PartialOp& g, long field_d); // f after g
    static PartialOp zero(Parity p, std::size_t dim);
};

struct Representation {
    GradedAlgebra algebra;
    Carrier carrier;
    std::vector<PartialOp> ops; // one per algebra basis element
    bool windowed() const;
};

struct RepCheck {
    bool pass = true;
    std::size_t checked = 0, skipped = 0;
    std::optional<std::pair<std::size_t, std::size_t>> witness; // algebra basis pair
    std::string detail;
};

// chi_{x y} = chi_x chi_y + (-1)^{p(x)p(y)} chi_y chi_x on every basis pair and
// carrier vector with no truncation loss, plus commuting even images.
RepCheck check_representation(const Representation& rep);

struct ExtendResult {
    Representation rep; // of the bridge superalgebra
    bool well_defined = false;        // relators act as zero
    bool bracket_homomorphism = false;
    std::size_t checked = 0, skipped = 0;
};

// chi_{a.b} := chi_a chi_b + chi_b chi_a on the quotient basis.
ExtendResult extend_to_ga(const Representation& rep, const BridgeResult& bridge);

struct NoInvariantForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CasimirResult {
    Mat<RatField> form;       // the invariant supersymmetric form used
    PartialOp op;             // evaluated Casimir operator on the carrier
    std::size_t interior = 0; // carrier vectors with a defined image
    bool zero_on_interior = true;
    bool commutes_with_action = true; // on fully defined instances
};

// Quadratic Casimir of a bracket algebra evaluated in a representation of it.
CasimirResult casimir(const Representation& rep_of_bracket_algebra);

struct K3RelReport {
    bool relations_hold = true; // AB - BA = E, AE + EA = A, BE + EB = B, E^2 = E
    bool e_is_parity_projector = true;
    std::size_t checked = 0, skipped = 0;
    std::string detail;
};

// The defining operator relations of a representation of the tiny Kaplansky
// algebra with basis (eps; a, b).
K3RelReport k3_rep_relations(const Representation& rep);

// Tensor-density window: carrier f_m (|m| <= 2N, even), phi_{2i} (odd).
struct DensityPair {
    Representation k1_action;      // of the Neveu-Schwarz window (bracket table)
    Representation ak1_candidate;  // odd images are the xi operators; even images
                                   // forced by the anticommutator identity
};
DensityPair density_rep(const mpq_class& lambda, long N);

// Representation of the windowed antialgebra by tangent fields f D on the
// polynomial carrier x^m, xi x^m (|m| <= 2N).
Representation make_tangent_representation(long N);

// --- modules -----------------------------------------------------------------

struct ModuleAction {
    GradedAlgebra algebra; // total
    Carrier carrier;
    std::vector<PartialOp> rho; // total operators
};

GradedAlgebra build_semidirect(const ModuleAction& action, bool koszul_sign = true);

struct ModuleCheck {
    bool pass = false;
    AxiomReport semidirect_report;
};
ModuleCheck check_module(const ModuleAction& action, bool koszul_sign = true);

ModuleAction adjoint_action(const GradedAlgebra& alg);
ModuleAction coadjoint_action(const GradedAlgebra& alg);

// adjoint of a bracket algebra as a Representation (for the Casimir)
Representation adjoint_representation(const GradedAlgebra& bracket_alg);

// --- JSON --------------------------------------------------------------------

nlohmann::json representation_to_json(const Representation& rep);
Representation representation_from_json(const nlohmann::json& j);

} // namespace anti
