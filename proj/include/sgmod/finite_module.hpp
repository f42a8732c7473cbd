/**
 * @file sgmod/finite_module.hpp
 * @brief Finitely presented modules over a FiniteRing, with exact maps.
 *
 * A module is always R^t / U: t generators, and a Howell-reduced relation
 * lattice U inside the coordinate space (Z/m)^(k*t), where k is the ring
 * rank.  An element is a coordinate row; chunk i of length k holds the ring
 * coefficient of generator i.  The ring acts chunkwise by ring
 * multiplication, so the relation lattice must be (and is kept) stable under
 * that action.  Reading the rows of U back in chunks of k gives a
 * presentation matrix over R for the same module.
 *
 * Canonical representatives modulo U make element equality, caching and
 * serialization deterministic.
 *
 * @copyright Apache License 2.0
 */
#pragma once

#include "sgmod/finite_ring.hpp"
#include "sgmod/howell.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace sgmod {

class FiniteModule;
using ModulePtr = std::shared_ptr<const FiniteModule>;

/// Minimal generator data, one entry per local factor of the ring.
struct MinimalGenerators {
    std::vector<std::size_t> per_factor; ///< mu_e = dim (eM / J_e eM) over the residue field
    std::vector<std::vector<Row>> factor_rows; ///< per factor, mu_e elements of eM
    std::vector<Row> rows; ///< max_e mu_e combined generators of M
};

class FiniteModule : public std::enable_shared_from_this<FiniteModule> {
  public:
    /// relations: rows over R, each a vector of t ring elements.
    static ModulePtr from_presentation(RingPtr ring, const std::vector<std::vector<Row>>& relations,
                                       std::size_t t);
    /// lattice: rows in (Z/m)^(k*t); closed under the ring action before use.
    static ModulePtr from_relation_lattice(RingPtr ring, std::size_t t, ResidueMatrix lattice);
    static ModulePtr free(RingPtr ring, std::size_t n);

    const RingPtr& ring() const { return ring_; }
    std::size_t generators() const { return t_; }
    std::size_t dim() const { return t_ * ring_->rank(); }
    std::uint64_t mod() const { return ring_->characteristic(); }
    /// Howell relation lattice U in (Z/m)^(k*t).
    const ResidueMatrix& relations() const { return rel_; }
    const OrderCount& order() const { return order_; }
    bool is_zero() const { return order_.is_one(); }

    Row canonical(const Row& v) const;
    bool same_element(const Row& a, const Row& b) const;
    bool is_zero_element(const Row& v) const;
    Row zero_element() const { return Row(dim(), 0); }

    /// Coordinates of generator i (the identity in chunk i).
    Row generator_row(std::size_t i) const;
    /// r . v, chunkwise ring multiplication.
    Row act(const Row& r, const Row& v) const;
    /// Block-diagonal matrix of act(r, -) on the coordinate space.
    ResidueMatrix action_matrix(const Row& r) const;
    Row add(const Row& a, const Row& b) const { return row_add(a, b, mod()); }

    /// Canonical representatives of all elements; throws CapExceeded.
    std::vector<Row> elements(std::uint64_t cap) const;

    /// Relation lattice rows read back as a presentation matrix over R.
    std::vector<std::vector<Row>> presentation_rows() const;

    /// Full preimage lattice of J(R).M (contains U).
    ResidueMatrix radical_lattice(std::uint64_t cap) const;
    /// Full preimage lattice of the socle {x : J(R) x = 0}.
    ResidueMatrix socle_lattice(std::uint64_t cap) const;
    /// Full preimage lattice of e.M + U for a ring element e.
    ResidueMatrix component_lattice(const Row& e) const;

    const MinimalGenerators& minimal_generators(std::uint64_t cap) const;

    std::string canonical_key() const;

  private:
    FiniteModule(RingPtr ring, std::size_t t, ResidueMatrix rel);

    RingPtr ring_;
    std::size_t t_;
    ResidueMatrix rel_;
    OrderCount order_;

    mutable std::mutex mu_;
    mutable std::optional<MinimalGenerators> mingen_;
};

/// Additive span closure under the ring action; returns a Howell basis.
ResidueMatrix ring_closure(const RingPtr& ring, std::size_t t, const ResidueMatrix& lattice);

class ModuleMap {
  public:
    /// Validates R-linearity and well-definedness (U_src f inside U_dst).
    ModuleMap(ModulePtr src, ModulePtr dst, ResidueMatrix f);

    /// Skips validation; for maps that are valid by construction (identity
    /// blocks, sums of validated maps, converted Hom elements).
    static ModuleMap unchecked(ModulePtr src, ModulePtr dst, ResidueMatrix f);

    const ModulePtr& source() const { return src_; }
    const ModulePtr& target() const { return dst_; }
    const ResidueMatrix& matrix() const { return f_; }

    Row apply(const Row& v) const { return dst_->canonical(vec_mat(v, f_)); }

    bool is_zero_map() const;
    bool equals(const ModuleMap& other) const;

  private:
    struct Raw {};
    ModuleMap(Raw, ModulePtr src, ModulePtr dst, ResidueMatrix f);

    ModulePtr src_;
    ModulePtr dst_;
    ResidueMatrix f_;
};

ModuleMap identity_map(const ModulePtr& m);
ModuleMap zero_map(const ModulePtr& src, const ModulePtr& dst);
ModuleMap compose(const ModuleMap& first, const ModuleMap& then);
ModuleMap map_add(const ModuleMap& a, const ModuleMap& b);
ModuleMap map_sub(const ModuleMap& a, const ModuleMap& b);

/// A coordinate space with a ring action, the ambient of a subquotient.
struct ModuleHost {
    RingPtr ring;
    std::size_t dim;
    std::vector<ResidueMatrix> actions; ///< one per ring basis element
};

ModuleHost standard_host(const ModulePtr& m);
ModuleHost transposed_host(const ModuleHost& h);

/// A module presented from a subquotient span(sub)/span(rel) of a host,
/// together with the realization: internal coordinates c of mod map to the
/// host coset c * realize + span(rel).
struct Presented {
    ModulePtr mod;
    ResidueMatrix realize;
};

/// Present span(sub + rel)/span(rel) as a standalone module.  Both lattices
/// must be stable under the host action (checked).
Presented present_subquotient(const ModuleHost& host, const ResidueMatrix& sub,
                              const ResidueMatrix& rel);

struct SubmoduleWithMap {
    ModulePtr mod;
    ModuleMap map;
};

/// Kernel with its inclusion into source(f).
SubmoduleWithMap kernel_of(const ModuleMap& f);
/// Image with its inclusion into target(f).
SubmoduleWithMap image_of(const ModuleMap& f);
/// Cokernel with the projection from target(f).
SubmoduleWithMap cokernel_of(const ModuleMap& f);
/// Corestriction source(f) ->> image, composing with the inclusion gives f.
ModuleMap onto_image(const ModuleMap& f, const SubmoduleWithMap& image);

struct DirectSum {
    ModulePtr mod;
    std::vector<ModuleMap> injections;
    std::vector<ModuleMap> projections;
};

DirectSum direct_sum(const std::vector<ModulePtr>& parts);

/// Pull a submodule lattice (full preimage containing U) back to a module
/// with its inclusion map.
SubmoduleWithMap submodule_from_lattice(const ModulePtr& m, const ResidueMatrix& lattice);

} // namespace sgmod
