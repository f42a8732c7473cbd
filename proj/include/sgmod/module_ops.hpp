/**
 * @file sgmod/module_ops.hpp
 * @brief Hom, tensor, Matlis duality and the module-level predicates.
 *
 * The predicates return three-valued certificates.  Yes and No always carry
 * enough data to recheck the claim (a section, an isomorphism, an exhausted
 * search); Unknown only ever means a configured cap was reached.
 *
 * @copyright Apache License 2.0
 */
#pragma once

#include "sgmod/caps.hpp"
#include "sgmod/finite_module.hpp"

#include <optional>
#include <string>

namespace sgmod {

enum class Verdict { Yes, No, Unknown };

std::string to_string(Verdict v);

/// Hom_R(M, N) as a module: elements are tuples of generator images.
struct HomModule {
    ModulePtr mod;
    ModulePtr source_m;
    ModulePtr target_n;
    ResidueMatrix realize;   ///< internal coords -> tuple in (dim N * t_M) coords
    ResidueMatrix tuple_rel; ///< U_N per tuple slot; tuples equal mod this lattice

    /// The R-linear map an element stands for.
    ModuleMap element_to_map(const Row& h) const;
    /// Internal coordinates of a map; throws if f is not M -> N.
    Row map_to_element(const ModuleMap& f) const;
};

HomModule hom_module(const ModulePtr& m, const ModulePtr& n);

/// M (x)_R N via the standard presentation on pairwise generators.
struct TensorModule {
    ModulePtr mod;
    ModulePtr left;
    ModulePtr right;

    /// Internal coordinates of v (x) w.
    Row pure(const Row& v, const Row& w) const;
};

TensorModule tensor(const ModulePtr& m, const ModulePtr& n);

/// Character dual Hom_{Z/m}(M, Z/m) with the transposed action.
struct DualModule {
    ModulePtr mod;
    ModulePtr primal;
    ResidueMatrix realize; ///< dual coords -> character vector in (Z/m)^dim(primal)

    /// <d, x>: the value of the character d at the element x.
    std::uint64_t pairing(const Row& d, const Row& x) const;
};

DualModule matlis_dual(const ModulePtr& m);

/// Contravariant functoriality: f: M -> N yields f*: N* -> M*.
ModuleMap dual_map(const ModuleMap& f, const DualModule& dual_target, const DualModule& dual_source);

/// The canonical evaluation M -> M**; an isomorphism for every finite module.
ModuleMap bidual_map(const ModulePtr& m, const DualModule& dual, const DualModule& double_dual);

struct ProjectivityCertificate {
    Verdict verdict;
    std::string reason;
    std::optional<ModuleMap> cover;   ///< minimal free cover F ->> M
    std::optional<ModuleMap> section; ///< s: M -> F with s then cover = id
};

/// Projectivity via a section of the minimal free cover, decided by one
/// linear solve over Z/m.  Never Unknown.
ProjectivityCertificate is_projective(const ModulePtr& m, const Caps& caps);

struct InjectivityCertificate {
    Verdict verdict;
    std::string reason;
    std::optional<ProjectivityCertificate> dual_projectivity;
};

/// Injective iff the Matlis dual is projective.
InjectivityCertificate is_injective(const ModulePtr& m, const Caps& caps);

struct FlatnessCertificate {
    Verdict verdict;
    std::string reason;
    std::optional<ProjectivityCertificate> projectivity;
};

/// Finitely presented flat = projective over these rings; delegates.
FlatnessCertificate is_flat(const ModulePtr& m, const Caps& caps);

struct IsoCertificate {
    Verdict verdict;
    std::string reason;
    std::optional<ModuleMap> iso;
};

/// Three-stage isomorphism test: invariant fingerprints (conclusive No),
/// Hom enumeration under the cap (conclusive either way), then seeded
/// random probing (Yes or Unknown).
IsoCertificate is_isomorphic(const ModulePtr& m, const ModulePtr& n, const Caps& caps);

/// Smallest size of a generating set: max over local factors of mu_e.
std::size_t min_generators(const ModulePtr& m, const Caps& caps);

/// Minimal free cover F ->> M built from minimal generators.
ModuleMap minimal_free_cover(const ModulePtr& m, const Caps& caps);

bool is_bijective_map(const ModuleMap& f);

/// Inverse of a bijective map; nullopt when f is not bijective.
std::optional<ModuleMap> inverse_of(const ModuleMap& f);

} // namespace sgmod
