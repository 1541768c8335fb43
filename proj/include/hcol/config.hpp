#pragma once

#include <cstddef>
#include <cstdint>

namespace hcol {

/// Size ceilings guarding the exponential searches. All are configuration; the
/// CLI exposes each as a flag with an HCOL_ environment override.
struct Ceilings {
    std::size_t oracle_vertices = 20000; // homomorphism oracle, source graph size
    std::size_t witness_vertices = 64;   // witness_number
    std::size_t core_vertices = 12;      // compute_core
    std::size_t bml_m = 7;               // find_b_ml_copy
    std::size_t gadget_vertices = 7;     // find_edge_gadget enumeration
    std::size_t field_degree = 8;        // extension degree of generated fields
    std::size_t ortho_vertices = 5000;   // ortho_graph enumeration
    std::size_t subset_count = 2000000;  // combinatorial kernel subset enumeration
    std::size_t nae_vars = 24;           // nae_sat_brute
    std::size_t clique_vertices = 4096;  // clique_number branch and bound
    std::size_t retry_cap = 64;          // sample-and-verify loops
};

inline const Ceilings& default_ceilings()
{
    static const Ceilings c{};
    return c;
}

} // namespace hcol
