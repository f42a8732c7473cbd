/**
 * @file sgmod/gorenstein.hpp
 * @brief Strongly Gorenstein deciders and Gorenstein projectivity
 *        certification for finitely generated modules.
 *
 * A module is strongly Gorenstein projective when it fits a self-extension
 * 0 -> M -> P -> M -> 0 with projective middle and Ext^1(M, R) = 0; the
 * injective and flat variants replace the middle property and the vanishing
 * group (Ext^1(R*, M) and Tor_1(M, R*)).  Yes verdicts carry a witness that
 * can be rechecked from scratch; No verdicts carry a finite disproof (a
 * nonvanishing order, or an exhausted search); Unknown only ever reports a
 * cap.
 *
 * @copyright Apache License 2.0
 */
#pragma once

#include "sgmod/homological.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sgmod {

enum class SGFlavor { Projective, Injective, Flat };

std::string to_string(SGFlavor f);

/// A verified self-extension 0 -> M -> middle -> M -> 0.  For the injective
/// flavor the attached periodic complex certifies the Matlis dual (the
/// projective side); for the other flavors it is the period-one splice of
/// the sequence itself.
struct SGWitness {
    ModulePtr m;
    SGFlavor flavor;
    ModulePtr middle;
    ModuleMap inj;  ///< M -> middle
    ModuleMap proj; ///< middle ->> M
    std::string middle_reason;  ///< why the middle has the flavor property
    std::string vanishing;      ///< the one-sided vanishing that was checked
    std::optional<PeriodicComplex> complex;
};

/// Full recheck of a witness: exactness, the middle property, and the
/// attached complex.
Certificate verify_sg_witness(const SGWitness& w, const Caps& caps);

struct SGCertificate {
    Verdict verdict;
    std::string reason;
    std::optional<SGWitness> witness;
};

SGCertificate is_sg_projective_fg(const ModulePtr& m, const Caps& caps);
SGCertificate is_sg_injective_fg(const ModulePtr& m, const Caps& caps);
SGCertificate is_sg_flat_fg(const ModulePtr& m, const Caps& caps);

/// Direct route (vanishing gate plus extension-class search on M itself);
/// cross-checks the Matlis-dual route of is_sg_injective_fg.
SGCertificate is_sg_injective_direct(const ModulePtr& m, const Caps& caps);

/// The split self-extension 0 -> P -> P (+) P -> P -> 0 with the shift
/// differential; throws NotProjective when P is not projective.
SGWitness build_sg_witness_for_projective(const ModulePtr& p, const Caps& caps);

/// M ->> a strongly Gorenstein projective module built from a complete
/// complex: N = (+)_i Im(d_i) is SG-projective and the designated image
/// Im(d_0) splits off it.
struct SummandWitness {
    ModulePtr n;
    SGWitness n_witness;
    ModuleMap injection;  ///< Im(d_0) -> N, split
    ModuleMap retraction; ///< N -> Im(d_0), retraction of the injection
};

/// Throws NotComplete unless verify_complete_projective(c) says Yes.
SummandWitness summand_witness_from_periodic(const PeriodicComplex& c, const Caps& caps);

/// A complete projective resolution exhibiting M as Im(d_0).
struct GWitness {
    ModulePtr m;
    PeriodicComplex complex;
    ModuleMap iso; ///< M -> Im(d_0), bijective
};

Certificate verify_g_witness(const GWitness& w, const Caps& caps);

/// Yes with a witness, or Unknown; certification never returns No.
struct GCertificate {
    Verdict verdict;
    std::string reason;
    std::optional<GWitness> witness;
};

/// Searches for a periodic complete resolution anchored at M itself:
/// projective modules get the split witness, otherwise syzygy repetition
/// M = Omega^p(M) within period_cap is spliced into a cycle and verified.
GCertificate certify_g_projective(const ModulePtr& m, std::size_t period_cap,
                                  std::size_t depth_cap, const Caps& caps);

/// |Tor_1(M, R*)| against |Ext^1(M, R)|; the two orders agree for every
/// finitely generated module by Matlis duality.
struct DualityReport {
    OrderCount tor_order;
    OrderCount ext_order;
    bool agrees;
};

DualityReport duality_check(const ModulePtr& m, const Caps& caps);

/// Freeness certificate: conclusive both ways for these rings (a projective
/// module is free iff its local multiplicities all agree).
struct FreeCertificate {
    Verdict verdict;
    std::string reason;
};

FreeCertificate is_free(const ModulePtr& m, const Caps& caps);

struct Classification {
    ProjectivityCertificate projective;
    InjectivityCertificate injective;
    FlatnessCertificate flat;
    FreeCertificate free_module;
    SGCertificate sg_projective;
    SGCertificate sg_injective;
    SGCertificate sg_flat;
    GCertificate g_projective_certified;
    /// Violated implications (projective => sg_projective and so on);
    /// nonempty means an internal fault, not a property of the module.
    std::vector<std::string> violations;
};

Classification classify(const ModulePtr& m, const Caps& caps);

} // namespace sgmod
