#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "efinv/dense_core.hpp"
#include "efinv/ef_inverse.hpp"
#include "efinv/subspace.hpp"

namespace efinv {

/// Named composite inverses, each an EF-inverse for a specific (E, F).
/// The first twelve are generalized bilateral inverses; the rest are not.
enum class InverseName {
    Gmp,     // core
    Mpg,     // dual core
    Dmp,
    Mpd,
    Cmp,
    Mpcep,
    Cepmp,   // *CEPMP
    Wgmp,
    Mpwg,
    Omp,
    Mpo,
    Mpomp,
    Bt,
    Cep,     // core-EP
    DualCep, // *CEP
    Wg,
    Gg,
    MWg,     // m-WG
    MWc,     // m-WC
    KOmp,    // k-OMP
    KMpo,    // k-MPO
};

std::span<const InverseName> all_inverse_names();
std::string_view canonical_name(InverseName name);

/// Case-insensitive; accepts the canonical names plus "core" and "dual-core".
InverseName parse_inverse_name(std::string_view text);

bool is_bilateral(InverseName name);
bool needs_subspaces(InverseName name);
bool needs_power(InverseName name);
bool allows_rectangular(InverseName name);

struct CatalogEntry {
    InverseName name = InverseName::Dmp;
    std::optional<int> m;
    std::optional<Subspace> t;
    std::optional<Subspace> s;

    /// Throws BadParams on missing subspaces or a power m < 1.
    void validate() const;
};

struct CatalogResult {
    ComplexMatrix x;
    ComplexMatrix e;
    ComplexMatrix f;
    Certificate certificate;
    bool bilateral = false;
    std::string formula_id;
    /// Ind(A); absent for rectangular inputs.
    std::optional<int> index;
    /// Defining properties beyond the EF system (AX^2 = X for the WG inverse).
    std::vector<ResidualCheck> extra;
};

/// Evaluates the closed form for `entry`, assembles (E, F) from the table row,
/// and certifies X as A^(E,F).
CatalogResult named_inverse(const ComplexMatrix& a, const CatalogEntry& entry, const ToleranceContext& tol = {});

struct CrosscheckReport {
    CatalogResult named;
    BilateralResult bilateral;
    std::string outer_factor;  // which outer inverse played X1
    BilateralOrder order = BilateralOrder::OuterFirst;
    double distance = 0.0;
    bool pass = false;
};

/// Rebuilds a bilateral catalog entry as X1 A X2 or X2 A X1 with X2 = A^dagger
/// and compares with named_inverse. Throws BadParams for non-bilateral names.
CrosscheckReport catalog_crosscheck(const ComplexMatrix& a, const CatalogEntry& entry,
                                    const ToleranceContext& tol = {});

/// Core-EP inverse A^d P_{A^k}.
ComplexMatrix core_ep_inverse(const ComplexMatrix& a, const ToleranceContext& tol = {});

} // namespace efinv
