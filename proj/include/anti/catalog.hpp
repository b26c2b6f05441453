#pragma once

#include <string>
#include <vector>

#include "anti/algebra.hpp"

namespace anti {

struct UnknownName : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BadParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BuiltinParams {
    long n = 1;     // family size (ah, aaf, abelian even dim)
    long N = 1;     // window radius
    long kappa = 1; // twisted Heisenberg sign, +1 or -1
    long q = 0;     // abelian odd dim
};

// Named algebras:
//  k3           tiny Kaplansky superalgebra (1|2)
//  k3c          k3 tensored with the 2-dimensional algebra Q[s]/(s^2+1) (2|4 over Q)
//  ak1          windowed full derivation antialgebra (eps_n, a_{2i})
//  ak1_plus     its nonnegative-index subalgebra window
//  kk1          windowed Neveu-Schwarz bracket table (x_n, xi_{2i})
//  osp12        osp(1|2) bracket table on (a.a, a.b, b.b; a, b)
//  ah           Heisenberg antialgebra ah_n (1|2n)
//  ah_twisted   twisted Heisenberg, kappa = +-1 (1|2)
//  aaf          affine antialgebra aaf(n) (1|n)
//  ah_hat       central extension of ah_1 (1|3)
//  ah_hat_hat   central extension of ah_hat (1|4)
//  b2           a rank-1 representative with nonzero nilpotent ad_alpha (1|2)
//  abelian      zero-product algebra of dims n|q
//  dual_numbers Q[t]/(t^2), purely even
//  gauss        Q[s]/(s^2+1), purely even
GradedAlgebra builtin(const std::string& name, const BuiltinParams& params = {});

// Total antialgebras exercised by the cross-cutting property tests.
std::vector<GradedAlgebra> catalog_property_set();

} // namespace anti
