/**
 * @file sgmod/homological.hpp
 * @brief Free resolutions, syzygies, Ext/Tor, extension classes, and
 *        verification of periodic complexes.
 *
 * Resolutions are minimal (covers built from minimal generators) and cached
 * per module.  Ext and Tor return full modules so callers can enumerate
 * elements; extension classes come with constructed middle terms whose
 * exactness is verified at construction time.
 *
 * @copyright Apache License 2.0
 */
#pragma once

#include "sgmod/finite_module.hpp"
#include "sgmod/module_ops.hpp"

#include <string>
#include <vector>

namespace sgmod {

/// Minimal free resolution F_d -> ... -> F_0 ->> M.
struct FreeResolution {
    ModulePtr target;
    std::vector<ModulePtr> frees;        ///< F_0 .. F_d
    ModuleMap augmentation;              ///< F_0 ->> M
    std::vector<ModuleMap> differentials; ///< entry j is d_{j+1}: F_{j+1} -> F_j
    bool minimal;                        ///< every kernel lies in J * F
};

FreeResolution free_resolution(const ModulePtr& m, std::size_t depth, const Caps& caps);

/// The i-th syzygy in the minimal resolution; syzygy(m, 0) is m itself.
ModulePtr syzygy(const ModulePtr& m, std::size_t i, const Caps& caps);

/// The i-th syzygy (i >= 1) together with its inclusion into F_{i-1}.
SubmoduleWithMap syzygy_with_inclusion(const ModulePtr& m, std::size_t i, const Caps& caps);

/// Ext^i(M, N) for i >= 1, as cohomology of Hom(F*, N).
ModulePtr ext(const ModulePtr& m, const ModulePtr& n, std::size_t i, const Caps& caps);

/// Ext^i computed from a caller-supplied resolution (used to confirm
/// independence of the chosen resolution).
ModulePtr ext_from(const FreeResolution& res, const ModulePtr& n, std::size_t i);

/// Tor_i(M, N) for i >= 1, as homology of F* tensor N.
ModulePtr tor(const ModulePtr& m, const ModulePtr& n, std::size_t i, const Caps& caps);

/// Hom(-, N) functoriality: f: A -> B induces Hom(B,N) -> Hom(A,N).
ModuleMap hom_restriction(const HomModule& hom_b, const HomModule& hom_a, const ModuleMap& f);

/// (-) tensor N functoriality: f: A -> B induces A tensor N -> B tensor N.
ModuleMap tensor_induced(const TensorModule& ta, const TensorModule& tb, const ModuleMap& f);

/// One element of Ext^1(M, N) together with the short exact sequence
/// 0 -> N -> E -> M -> 0 it classifies.
struct ExtensionClass {
    ModulePtr m;
    ModulePtr n;
    ModuleMap cocycle; ///< representative syzygy(M,1) -> N
    ModulePtr middle;
    ModuleMap inj;     ///< N -> E
    ModuleMap proj;    ///< E ->> M
};

/// All of Ext^1(M, N) as explicit extensions, zero class first; throws
/// CapExceeded when the class count exceeds caps.ext_classes.
std::vector<ExtensionClass> ext1_classes(const ModulePtr& m, const ModulePtr& n,
                                         const Caps& caps);

/// A cyclic complex P_0 .. P_{p-1} of projective modules with
/// d_i: P_i -> P_{i-1 mod p}; the designated module is Im(d_0).
struct PeriodicComplex {
    std::vector<ModulePtr> modules;
    std::vector<ModuleMap> differentials;

    std::size_t period() const { return modules.size(); }
};

/// Validating factory: checks shapes, one ring, d compose d = 0 around the
/// cycle, and projectivity of every module.
PeriodicComplex make_periodic(std::vector<ModulePtr> modules,
                              std::vector<ModuleMap> differentials, const Caps& caps);

struct Certificate {
    Verdict verdict;
    std::string reason;
};

/// Exactness at every index of the cycle.
Certificate verify_periodic_exact(const PeriodicComplex& c);

/// Exact and Hom(-, R)-exact; testing against R suffices for finitely
/// generated projectives.
Certificate verify_complete_projective(const PeriodicComplex& c, const Caps& caps);

/// Exact and (- tensor R*)-exact, where R* is the Matlis dual of R; must
/// agree with verify_complete_projective by duality.
Certificate verify_complete_flat(const PeriodicComplex& c, const Caps& caps);

} // namespace sgmod
