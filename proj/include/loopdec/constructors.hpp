#pragma once

#include "loopdec/pdcomplex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace loopdec {

/// Total space of an S^(n-m)-bundle over S^m (the twisted flag only labels
/// provenance; the homology and structure flags agree for both).
/// Requires 2 <= m < n-1.
PDComplex sphere_bundle(int m, int n, bool twisted);

/// Product of two spheres, S^a x S^b.
PDComplex sphere_product(int a, int b);

/// Connected sum: homology added below the top, one top class.  The
/// bottom-cell retraction flag propagates when one operand has integral
/// evidence, the other a co-H skeleton, and connectivities are ordered;
/// both operand orders are tried.
PDComplex connected_sum(const PDComplex& a, const PDComplex& b);

/// Gyration with parameter k >= 2; tau is an opaque label recorded in the
/// provenance (the structural results do not depend on it).  The skeleton
/// expands as M-bar v (M-bar smash S^(k-1)); dimension n+k-1, connectivity
/// unchanged, skeleton class and bottom-cell retraction preserved.
PDComplex gyration(const PDComplex& m, int k, const std::string& tau_label);

/// Five-dimensional building blocks: "W" (H2 = Z/2), "M_<k>" (H2 = (Z/k)^2,
/// k >= 2), "X_<2^i>" (H2 = (Z/2^i)^2), "S2xS3", "S2xtS3".
PDComplex barden(const std::string& block);

struct DuanSpec {
    int r = 0;                    // copies of G^2_0(S^2 x S^3)
    std::vector<long long> ks;    // torsion blocks M_k, each k >= 2
    std::optional<std::string> h; // extra block, one of W / S2xtS3 / X_<2^i>
    bool w2_nonzero = false;      // requires h
};

/// Simply-connected 6-manifold family:
/// (S^3 x S^3) # r * G^2_0(S^2 x S^3) # G^2_1(M_k1) # ... [# G^2_1(H)].
/// r = 0 with no blocks gives S^3 x S^3 alone.
PDComplex duan(const DuanSpec& spec);

/// Constructor syntax used by the catalog and the CLI:
///   product:S2xS3 | bundle:2,5[,twisted] | barden:W |
///   gyr:k=2,tau=1,of=<spec> | duan:r=1;ks=2,4;H=W
PDComplex build_from_spec(const std::string& spec);

} // namespace loopdec
