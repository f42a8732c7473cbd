/**
 * @file module_ops.cpp
 * @copyright Apache License 2.0
 */
#include "sgmod/module_ops.hpp"

#include "sgmod/errors.hpp"

#include <algorithm>
#include <random>

namespace sgmod {

namespace {

Row chunk_of(const Row& v, std::size_t i, std::size_t k) {
    return Row(v.begin() + i * k, v.begin() + (i + 1) * k);
}

void require_same_ring(const ModulePtr& m, const ModulePtr& n) {
    if (!structurally_equal(*m->ring(), *n->ring()))
        throw InvalidInput("operation across different rings");
}

ResidueMatrix block_diagonal(const ResidueMatrix& b, std::size_t copies) {
    ResidueMatrix out(b.mod(), b.rows() * copies, b.cols() * copies);
    for (std::size_t t = 0; t < copies; ++t)
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c)
                out.set(t * b.rows() + r, t * b.cols() + c, b.at(r, c));
    return out;
}

} // namespace

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
    }
}

HomModule hom_module(const ModulePtr& m, const ModulePtr& n) {
    require_same_ring(m, n);
    const RingPtr& ring = m->ring();
    const std::size_t k = ring->rank();
    const std::uint64_t mod = m->mod();
    const std::size_t tm = m->generators();
    const std::size_t dn = n->dim();
    const ResidueMatrix& um = m->relations();
    const ResidueMatrix& un = n->relations();

    ModuleHost host{ring, tm * dn, {}};
    for (std::size_t a = 0; a < k; ++a) {
        Row ba(k, 0);
        ba[a] = 1;
        host.actions.push_back(block_diagonal(n->action_matrix(ba), tm));
    }

    // Tuples (y_1..y_tm) with sum_i y_i act(u_i) in U_N for every relation
    // row u of M.
    ResidueMatrix kset(mod, 0, 0);
    if (um.rows() == 0) {
        kset = ResidueMatrix::identity(mod, tm * dn);
    } else {
        ResidueMatrix cons(mod, tm * dn, um.rows() * dn);
        for (std::size_t r = 0; r < um.rows(); ++r) {
            Row u = um.row(r);
            for (std::size_t i = 0; i < tm; ++i) {
                ResidueMatrix a = n->action_matrix(chunk_of(u, i, k));
                for (std::size_t c = 0; c < dn; ++c)
                    for (std::size_t cc = 0; cc < dn; ++cc)
                        cons.set(i * dn + c, r * dn + cc, a.at(c, cc));
            }
        }
        ResidueMatrix wbig(mod, um.rows() * un.rows(), um.rows() * dn);
        for (std::size_t r = 0; r < um.rows(); ++r)
            for (std::size_t s = 0; s < un.rows(); ++s)
                for (std::size_t c = 0; c < dn; ++c)
                    wbig.set(r * un.rows() + s, r * dn + c, un.at(s, c));
        kset = kernel_mod(cons, wbig);
    }

    ResidueMatrix trel(mod, tm * un.rows(), tm * dn);
    for (std::size_t i = 0; i < tm; ++i)
        for (std::size_t s = 0; s < un.rows(); ++s)
            for (std::size_t c = 0; c < dn; ++c)
                trel.set(i * un.rows() + s, i * dn + c, un.at(s, c));

    Presented p = present_subquotient(host, kset, trel);
    return HomModule{p.mod, m, n, p.realize, howell_basis(trel)};
}

ModuleMap HomModule::element_to_map(const Row& h) const {
    const std::size_t k = source_m->ring()->rank();
    const std::size_t dn = target_n->dim();
    Row y = vec_mat(h, realize);
    ResidueMatrix f(source_m->mod(), source_m->dim(), dn);
    for (std::size_t i = 0; i < source_m->generators(); ++i) {
        Row yi = chunk_of(y, i, dn);
        for (std::size_t j = 0; j < k; ++j) {
            Row bj(k, 0);
            bj[j] = 1;
            f.set_row(i * k + j, target_n->act(bj, yi));
        }
    }
    return ModuleMap::unchecked(source_m, target_n, std::move(f));
}

Row HomModule::map_to_element(const ModuleMap& f) const {
    if (f.source().get() != source_m.get() || f.target().get() != target_n.get())
        throw InvalidInput("map does not belong to this Hom module");
    const std::size_t dn = target_n->dim();
    Row tuple(source_m->generators() * dn, 0);
    for (std::size_t i = 0; i < source_m->generators(); ++i) {
        Row yi = vec_mat(source_m->generator_row(i), f.matrix());
        std::copy(yi.begin(), yi.end(), tuple.begin() + i * dn);
    }
    auto h = solve_mod(realize, tuple_rel, tuple);
    if (!h) throw InvalidInput("map is not represented in the Hom module");
    return mod->canonical(*h);
}

TensorModule tensor(const ModulePtr& m, const ModulePtr& n) {
    require_same_ring(m, n);
    const RingPtr& ring = m->ring();
    const std::size_t k = ring->rank();
    const std::uint64_t md = m->mod();
    const std::size_t tm = m->generators(), tn = n->generators();
    const std::size_t tt = tm * tn;
    const ResidueMatrix& um = m->relations();
    const ResidueMatrix& un = n->relations();

    ResidueMatrix rel(md, um.rows() * tn + un.rows() * tm, tt * k);
    std::size_t rr = 0;
    for (std::size_t r = 0; r < um.rows(); ++r) {
        Row u = um.row(r);
        for (std::size_t l = 0; l < tn; ++l, ++rr)
            for (std::size_t i = 0; i < tm; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    rel.set(rr, (i * tn + l) * k + j, u[i * k + j]);
    }
    for (std::size_t r = 0; r < un.rows(); ++r) {
        Row v = un.row(r);
        for (std::size_t i = 0; i < tm; ++i, ++rr)
            for (std::size_t l = 0; l < tn; ++l)
                for (std::size_t j = 0; j < k; ++j)
                    rel.set(rr, (i * tn + l) * k + j, v[l * k + j]);
    }
    ModulePtr t = FiniteModule::from_relation_lattice(ring, tt, std::move(rel));
    return TensorModule{std::move(t), m, n};
}

Row TensorModule::pure(const Row& v, const Row& w) const {
    const RingPtr& ring = left->ring();
    const std::size_t k = ring->rank();
    const std::size_t tn = right->generators();
    Row out(mod->dim(), 0);
    for (std::size_t i = 0; i < left->generators(); ++i) {
        Row vi = chunk_of(v, i, k);
        for (std::size_t l = 0; l < tn; ++l) {
            Row prod = ring->mul(vi, chunk_of(w, l, k));
            std::copy(prod.begin(), prod.end(), out.begin() + (i * tn + l) * k);
        }
    }
    return mod->canonical(out);
}

DualModule matlis_dual(const ModulePtr& m) {
    ModuleHost host = transposed_host(standard_host(m));
    ResidueMatrix s = kernel(m->relations().transpose());
    ResidueMatrix w(m->mod(), 0, m->dim());
    Presented p = present_subquotient(host, s, w);
    return DualModule{p.mod, m, p.realize};
}

std::uint64_t DualModule::pairing(const Row& d, const Row& x) const {
    const std::uint64_t md = primal->mod();
    Row y = vec_mat(d, realize);
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < y.size(); ++c) acc = addm(acc, mulm(y[c], x[c], md), md);
    return acc;
}

ModuleMap dual_map(const ModuleMap& f, const DualModule& dual_target,
                   const DualModule& dual_source) {
    if (dual_target.primal.get() != f.target().get() ||
        dual_source.primal.get() != f.source().get())
        throw InvalidInput("dual_map got duals of the wrong modules");
    RowSolver solver(dual_source.realize);
    ResidueMatrix ft = f.matrix().transpose();
    ResidueMatrix g(f.source()->mod(), dual_target.mod->dim(), dual_source.mod->dim());
    for (std::size_t c = 0; c < dual_target.mod->dim(); ++c) {
        Row character = vec_mat(dual_target.realize.row(c), ft);
        auto coords = solver.solve(character);
        if (!coords) throw InvalidInput("dual character fell outside the dual module");
        g.set_row(c, *coords);
    }
    return ModuleMap(dual_target.mod, dual_source.mod, std::move(g));
}

ModuleMap bidual_map(const ModulePtr& m, const DualModule& dual, const DualModule& double_dual) {
    if (dual.primal.get() != m.get() || double_dual.primal.get() != dual.mod.get())
        throw InvalidInput("bidual_map got mismatched duals");
    RowSolver solver(double_dual.realize);
    ResidueMatrix rt = dual.realize.transpose();
    ResidueMatrix g(m->mod(), m->dim(), double_dual.mod->dim());
    for (std::size_t c = 0; c < m->dim(); ++c) {
        auto coords = solver.solve(rt.row(c));
        if (!coords) throw InvalidInput("evaluation character fell outside the double dual");
        g.set_row(c, *coords);
    }
    return ModuleMap(m, double_dual.mod, std::move(g));
}

std::size_t min_generators(const ModulePtr& m, const Caps& caps) {
    return m->minimal_generators(caps.ring_elements).rows.size();
}

ModuleMap minimal_free_cover(const ModulePtr& m, const Caps& caps) {
    const auto& mg = m->minimal_generators(caps.ring_elements);
    const RingPtr& ring = m->ring();
    const std::size_t k = ring->rank();
    ModulePtr f = FiniteModule::free(ring, mg.rows.size());
    ResidueMatrix p(m->mod(), f->dim(), m->dim());
    for (std::size_t s = 0; s < mg.rows.size(); ++s)
        for (std::size_t j = 0; j < k; ++j) {
            Row bj(k, 0);
            bj[j] = 1;
            p.set_row(s * k + j, m->act(bj, mg.rows[s]));
        }
    if (row_span_order(span_add(m->relations(), p)) !=
        OrderCount::of(m->mod()).pow(m->dim()))
        throw InvalidInput("minimal generators failed to generate");
    return ModuleMap(f, m, std::move(p));
}

ProjectivityCertificate is_projective(const ModulePtr& m, const Caps& caps) {
    ModuleMap cover = minimal_free_cover(m, caps);
    const ModulePtr& f = cover.source();
    const RingPtr& ring = m->ring();
    const std::size_t k = ring->rank();
    const std::uint64_t md = m->mod();
    const std::size_t tm = m->generators();
    const std::size_t df = f->dim(), dm = m->dim();
    const ResidueMatrix& um = m->relations();
    const ResidueMatrix& p = cover.matrix();

    // Unknowns: generator images y_i in F, flattened (i, c) -> i*df + c.
    // Conditions: relations of M map to zero in F (F is free), and
    // y_i * p = g_i modulo U_M (the section property).
    const std::size_t off = um.rows() * df;
    const std::size_t cols = off + tm * dm;
    ResidueMatrix b(md, tm * df, cols);
    for (std::size_t r = 0; r < um.rows(); ++r) {
        Row u = um.row(r);
        for (std::size_t i = 0; i < tm; ++i) {
            ResidueMatrix a = f->action_matrix(chunk_of(u, i, k));
            for (std::size_t c = 0; c < df; ++c)
                for (std::size_t cc = 0; cc < df; ++cc)
                    b.set(i * df + c, r * df + cc, a.at(c, cc));
        }
    }
    for (std::size_t i = 0; i < tm; ++i)
        for (std::size_t c = 0; c < df; ++c)
            for (std::size_t cc = 0; cc < dm; ++cc)
                b.set(i * df + c, off + i * dm + cc, p.at(c, cc));

    ResidueMatrix w(md, tm * um.rows(), cols);
    for (std::size_t i = 0; i < tm; ++i)
        for (std::size_t s = 0; s < um.rows(); ++s)
            for (std::size_t c = 0; c < dm; ++c)
                w.set(i * um.rows() + s, off + i * dm + c, um.at(s, c));

    Row target(cols, 0);
    for (std::size_t i = 0; i < tm; ++i) {
        Row g = m->generator_row(i);
        std::copy(g.begin(), g.end(), target.begin() + off + i * dm);
    }

    auto y = solve_mod(b, w, target);
    if (!y)
        return ProjectivityCertificate{Verdict::No,
                                       "the minimal free cover admits no R-linear section",
                                       std::move(cover), std::nullopt};

    ResidueMatrix s(md, dm, df);
    for (std::size_t i = 0; i < tm; ++i) {
        Row yi = chunk_of(*y, i, df);
        for (std::size_t j = 0; j < k; ++j) {
            Row bj(k, 0);
            bj[j] = 1;
            s.set_row(i * k + j, f->act(bj, yi));
        }
    }
    ModuleMap section(m, f, std::move(s));
    if (!compose(section, cover).equals(identity_map(m)))
        throw InvalidInput("section verification failed");
    return ProjectivityCertificate{Verdict::Yes, "section of the minimal free cover",
                                   std::move(cover), std::move(section)};
}

InjectivityCertificate is_injective(const ModulePtr& m, const Caps& caps) {
    DualModule d = matlis_dual(m);
    ProjectivityCertificate pc = is_projective(d.mod, caps);
    InjectivityCertificate out{pc.verdict, "", std::move(pc)};
    out.reason = out.dual_projectivity->verdict == Verdict::Yes
                     ? "Matlis dual is projective"
                     : "Matlis dual is not projective";
    return out;
}

FlatnessCertificate is_flat(const ModulePtr& m, const Caps& caps) {
    ProjectivityCertificate pc = is_projective(m, caps);
    FlatnessCertificate out{pc.verdict, "", std::move(pc)};
    out.reason = out.projectivity->verdict == Verdict::Yes
                     ? "projective, hence flat"
                     : "finitely presented and not projective, hence not flat";
    return out;
}

bool is_bijective_map(const ModuleMap& f) {
    const ModulePtr& src = f.source();
    const ModulePtr& dst = f.target();
    if (src->order() != dst->order()) return false;
    const OrderCount full = OrderCount::of(dst->mod()).pow(dst->dim());
    return row_span_order(span_add(dst->relations(), f.matrix())) == full;
}

std::optional<ModuleMap> inverse_of(const ModuleMap& f) {
    if (!is_bijective_map(f)) return std::nullopt;
    const ModulePtr& src = f.source();
    const ModulePtr& dst = f.target();
    ResidueMatrix g(dst->mod(), dst->dim(), src->dim());
    for (std::size_t c = 0; c < dst->dim(); ++c) {
        Row e(dst->dim(), 0);
        e[c] = 1;
        auto x = solve_mod(f.matrix(), dst->relations(), e);
        if (!x) return std::nullopt;
        g.set_row(c, *x);
    }
    return ModuleMap(dst, src, std::move(g));
}

namespace {

OrderCount quotient_order(const ModulePtr& m, const ResidueMatrix& full_preimage) {
    return row_span_order(full_preimage).divided_by(row_span_order(m->relations()));
}

std::optional<std::string> fingerprint_mismatch(const ModulePtr& m, const ModulePtr& n,
                                                const Caps& caps) {
    if (m->order() != n->order()) return "orders differ";
    const auto& mgm = m->minimal_generators(caps.ring_elements);
    const auto& mgn = n->minimal_generators(caps.ring_elements);
    if (mgm.per_factor != mgn.per_factor) return "per-factor minimal generator counts differ";
    if (quotient_order(m, m->radical_lattice(caps.ring_elements)) !=
        quotient_order(n, n->radical_lattice(caps.ring_elements)))
        return "radical submodule orders differ";
    if (quotient_order(m, m->socle_lattice(caps.ring_elements)) !=
        quotient_order(n, n->socle_lattice(caps.ring_elements)))
        return "socle orders differ";
    const std::uint64_t md = m->mod();
    const OrderCount char_order = OrderCount::of(md);
    for (const auto& [prime, exp] : char_order.factors()) {
        std::uint64_t q = 1;
        for (std::uint64_t i = 1; i <= exp; ++i) {
            q *= prime;
            ResidueMatrix scaled = ResidueMatrix::identity(md, m->dim()).scaled(q);
            ResidueMatrix scaledn = ResidueMatrix::identity(md, n->dim()).scaled(q);
            if (quotient_order(m, span_add(m->relations(), scaled)) !=
                quotient_order(n, span_add(n->relations(), scaledn)))
                return "scalar multiple layer orders differ";
        }
    }
    return std::nullopt;
}

} // namespace

IsoCertificate is_isomorphic(const ModulePtr& m, const ModulePtr& n, const Caps& caps) {
    require_same_ring(m, n);
    if (m->generators() == n->generators() && m->relations() == n->relations())
        return IsoCertificate{Verdict::Yes, "identical presentations",
                              ModuleMap(m, n, ResidueMatrix::identity(m->mod(), m->dim()))};

    if (auto why = fingerprint_mismatch(m, n, caps))
        return IsoCertificate{Verdict::No, *why, std::nullopt};

    HomModule hmn = hom_module(m, n);
    HomModule hnm = hom_module(n, m);
    if (hmn.mod->order() != hnm.mod->order())
        return IsoCertificate{Verdict::No, "Hom set sizes differ between directions", std::nullopt};
    HomModule hmm = hom_module(m, m);
    if (hmm.mod->order() != hom_module(n, n).mod->order())
        return IsoCertificate{Verdict::No, "endomorphism ring sizes differ", std::nullopt};
    if (hmm.mod->order() != hmn.mod->order())
        return IsoCertificate{Verdict::No, "Hom sizes incompatible with an isomorphism",
                              std::nullopt};

    if (hmn.mod->order().fits_u64() && hmn.mod->order().as_u64() <= caps.hom_enumeration) {
        for (const Row& h : hmn.mod->elements(caps.hom_enumeration)) {
            ModuleMap f = hmn.element_to_map(h);
            if (is_bijective_map(f))
                return IsoCertificate{Verdict::Yes, "isomorphism found by Hom enumeration",
                                      std::move(f)};
        }
        return IsoCertificate{Verdict::No, "no isomorphism in the full Hom set", std::nullopt};
    }

    std::mt19937_64 rng(caps.seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<std::uint64_t> dist(0, m->mod() - 1);
    const std::uint64_t probes = std::min<std::uint64_t>(caps.hom_enumeration, 2048);
    for (std::uint64_t trial = 0; trial < probes; ++trial) {
        Row h(hmn.mod->dim());
        for (auto& v : h) v = dist(rng);
        ModuleMap f = hmn.element_to_map(h);
        if (is_bijective_map(f))
            return IsoCertificate{Verdict::Yes, "isomorphism found by random probing",
                                  std::move(f)};
    }
    return IsoCertificate{Verdict::Unknown,
                          "Hom set exceeds the enumeration cap and probing found no isomorphism",
                          std::nullopt};
}

} // namespace sgmod
