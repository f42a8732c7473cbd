/**
 * @file finite_module.cpp
 * @copyright Apache License 2.0
 */
#include "sgmod/finite_module.hpp"

#include "sgmod/errors.hpp"

#include <algorithm>
#include <sstream>

namespace sgmod {

ResidueMatrix ring_closure(const RingPtr& ring, std::size_t t, const ResidueMatrix& lattice) {
    const std::size_t k = ring->rank();
    const std::uint64_t m = ring->characteristic();
    if (lattice.cols() != t * k) throw InvalidInput("relation lattice has wrong width");
    ResidueMatrix cur = howell_basis(lattice);
    for (;;) {
        ResidueMatrix grown = cur;
        for (std::size_t a = 0; a < k; ++a) {
            ResidueMatrix mapped(m, cur.rows(), cur.cols());
            Row ba(k, 0);
            ba[a] = 1;
            for (std::size_t r = 0; r < cur.rows(); ++r) {
                Row v = cur.row(r);
                Row out(t * k, 0);
                for (std::size_t i = 0; i < t; ++i) {
                    Row chunk(v.begin() + i * k, v.begin() + (i + 1) * k);
                    Row prod = ring->mul(chunk, ba);
                    std::copy(prod.begin(), prod.end(), out.begin() + i * k);
                }
                mapped.set_row(r, out);
            }
            grown = span_add(grown, mapped);
        }
        if (grown == cur) return cur;
        cur = std::move(grown);
    }
}

FiniteModule::FiniteModule(RingPtr ring, std::size_t t, ResidueMatrix rel)
    : ring_(std::move(ring)), t_(t), rel_(std::move(rel)),
      order_(OrderCount::of(ring_->characteristic())
                 .pow(t_ * ring_->rank())
                 .divided_by(row_span_order(rel_))) {}

ModulePtr FiniteModule::from_relation_lattice(RingPtr ring, std::size_t t, ResidueMatrix lattice) {
    ResidueMatrix closed = ring_closure(ring, t, lattice);
    return ModulePtr(new FiniteModule(std::move(ring), t, std::move(closed)));
}

ModulePtr FiniteModule::from_presentation(RingPtr ring, const std::vector<std::vector<Row>>& relations,
                                          std::size_t t) {
    const std::size_t k = ring->rank();
    const std::uint64_t m = ring->characteristic();
    ResidueMatrix flat(m, relations.size(), t * k);
    for (std::size_t r = 0; r < relations.size(); ++r) {
        if (relations[r].size() != t) throw InvalidInput("presentation row has wrong length");
        Row out(t * k, 0);
        for (std::size_t i = 0; i < t; ++i) {
            if (relations[r][i].size() != k) throw InvalidInput("presentation entry has wrong rank");
            for (std::size_t j = 0; j < k; ++j) out[i * k + j] = relations[r][i][j] % m;
        }
        flat.set_row(r, out);
    }
    return from_relation_lattice(std::move(ring), t, std::move(flat));
}

ModulePtr FiniteModule::free(RingPtr ring, std::size_t n) {
    const std::size_t k = ring->rank();
    const std::uint64_t m = ring->characteristic();
    return ModulePtr(new FiniteModule(std::move(ring), n, ResidueMatrix(m, 0, n * k)));
}

Row FiniteModule::canonical(const Row& v) const {
    if (v.size() != dim()) throw InvalidInput("element row has wrong length");
    return canonical_rep(rel_, v);
}

bool FiniteModule::same_element(const Row& a, const Row& b) const {
    return canonical(a) == canonical(b);
}

bool FiniteModule::is_zero_element(const Row& v) const { return row_is_zero(canonical(v)); }

Row FiniteModule::generator_row(std::size_t i) const {
    Row out(dim(), 0);
    const Row& one = ring_->identity();
    const std::size_t k = ring_->rank();
    for (std::size_t j = 0; j < k; ++j) out[i * k + j] = one[j];
    return out;
}

Row FiniteModule::act(const Row& r, const Row& v) const {
    const std::size_t k = ring_->rank();
    Row out(dim(), 0);
    for (std::size_t i = 0; i < t_; ++i) {
        Row chunk(v.begin() + i * k, v.begin() + (i + 1) * k);
        Row prod = ring_->mul(chunk, r);
        std::copy(prod.begin(), prod.end(), out.begin() + i * k);
    }
    return out;
}

ResidueMatrix FiniteModule::action_matrix(const Row& r) const {
    const std::size_t k = ring_->rank();
    ResidueMatrix rm = ring_->right_mult_matrix(r);
    ResidueMatrix out(mod(), dim(), dim());
    for (std::size_t i = 0; i < t_; ++i)
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) out.set(i * k + a, i * k + b, rm.at(a, b));
    return out;
}

std::vector<Row> FiniteModule::elements(std::uint64_t cap) const {
    return enumerate_cosets(dim(), rel_, cap);
}

std::vector<std::vector<Row>> FiniteModule::presentation_rows() const {
    const std::size_t k = ring_->rank();
    std::vector<std::vector<Row>> out;
    for (std::size_t r = 0; r < rel_.rows(); ++r) {
        Row v = rel_.row(r);
        std::vector<Row> row(t_);
        for (std::size_t i = 0; i < t_; ++i)
            row[i] = Row(v.begin() + i * k, v.begin() + (i + 1) * k);
        out.push_back(std::move(row));
    }
    return out;
}

ResidueMatrix FiniteModule::component_lattice(const Row& e) const {
    return span_add(rel_, action_matrix(e));
}

ResidueMatrix FiniteModule::radical_lattice(std::uint64_t cap) const {
    const ResidueMatrix& j = ring_->nilradical(cap);
    ResidueMatrix acc = rel_;
    for (std::size_t r = 0; r < j.rows(); ++r) acc = span_add(acc, action_matrix(j.row(r)));
    return acc;
}

ResidueMatrix FiniteModule::socle_lattice(std::uint64_t cap) const {
    const ResidueMatrix& j = ring_->nilradical(cap);
    if (j.rows() == 0) return ResidueMatrix::identity(mod(), dim());
    // {x : x j_r in U for all r}: kernel of the stacked actions modulo U^r.
    ResidueMatrix stacked(mod(), dim(), 0);
    for (std::size_t r = 0; r < j.rows(); ++r) stacked = stacked.hstack(action_matrix(j.row(r)));
    // The target lattice is U x U x ... in the stacked coordinates.
    ResidueMatrix bigrel(mod(), rel_.rows() * j.rows(), dim() * j.rows());
    for (std::size_t r = 0; r < j.rows(); ++r)
        for (std::size_t s = 0; s < rel_.rows(); ++s) {
            Row v = rel_.row(s);
            for (std::size_t c = 0; c < dim(); ++c) bigrel.set(r * rel_.rows() + s, r * dim() + c, v[c]);
        }
    return kernel_mod(stacked, bigrel);
}

const MinimalGenerators& FiniteModule::minimal_generators(std::uint64_t cap) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (mingen_) return *mingen_;

    const auto& dec = ring_->local_decomposition(cap);
    const std::size_t k = ring_->rank();
    MinimalGenerators mg;

    for (const auto& f : dec.factors) {
        // S = eM + U, T = J_e M + U; the quotient S/T is a vector space over
        // the factor's residue field of order q.
        ResidueMatrix s = component_lattice(f.idempotent);
        ResidueMatrix jpar = factor_radical_in_parent(f, cap);
        ResidueMatrix t = rel_;
        for (std::size_t r = 0; r < jpar.rows(); ++r)
            t = span_add(t, action_matrix(jpar.row(r)));

        const OrderCount qorder = f.ring->order().divided_by(row_span_order(f.ring->nilradical(cap)));
        if (!qorder.fits_u64()) throw CapExceeded("residue field too large");
        const std::uint64_t q = qorder.as_u64();

        OrderCount ratio = row_span_order(s).divided_by(row_span_order(t));
        std::size_t mu = 0;
        while (!ratio.is_one()) {
            ratio = ratio.divided_by(qorder);
            ++mu;
        }

        std::vector<Row> chosen;
        ResidueMatrix cur = t;
        OrderCount cur_order = row_span_order(cur);
        for (std::size_t r = 0; r < s.rows() && chosen.size() < mu; ++r) {
            Row v = s.row(r);
            // Add the whole R-orbit of v so the quotient gain is a full
            // residue-field line, not just a prime-field one.
            ResidueMatrix orbit(mod(), k, dim());
            for (std::size_t a = 0; a < k; ++a) {
                Row ba(k, 0);
                ba[a] = 1;
                orbit.set_row(a, act(ba, v));
            }
            ResidueMatrix next = span_add(cur, orbit);
            OrderCount next_order = row_span_order(next);
            if (next_order == cur_order.times(OrderCount::of(q))) {
                chosen.push_back(canonical(v));
                cur = std::move(next);
                cur_order = std::move(next_order);
            }
        }
        if (chosen.size() != mu) throw InvalidInput("minimal generator extraction failed");
        mg.per_factor.push_back(mu);
        mg.factor_rows.push_back(std::move(chosen));
    }

    std::size_t total = 0;
    for (std::size_t mu : mg.per_factor) total = std::max(total, mu);
    for (std::size_t sidx = 0; sidx < total; ++sidx) {
        Row combined(dim(), 0);
        for (std::size_t e = 0; e < mg.factor_rows.size(); ++e)
            if (sidx < mg.factor_rows[e].size())
                combined = add(combined, mg.factor_rows[e][sidx]);
        mg.rows.push_back(canonical(combined));
    }
    mingen_ = std::move(mg);
    return *mingen_;
}

std::string FiniteModule::canonical_key() const {
    std::ostringstream out;
    out << "module;" << ring_->canonical_key() << ";t=" << t_ << ";u=";
    for (std::size_t r = 0; r < rel_.rows(); ++r) {
        for (std::uint64_t v : rel_.row(r)) out << v << ",";
        out << "/";
    }
    return out.str();
}

ModuleMap::ModuleMap(ModulePtr src, ModulePtr dst, ResidueMatrix f)
    : src_(std::move(src)), dst_(std::move(dst)), f_(std::move(f)) {
    if (!structurally_equal(*src_->ring(), *dst_->ring()))
        throw InvalidInput("module map across different rings");
    if (f_.rows() != src_->dim() || f_.cols() != dst_->dim())
        throw InvalidInput("module map matrix has wrong shape");
    // Well-defined: U_src maps into U_dst.
    const ResidueMatrix& u = src_->relations();
    for (std::size_t r = 0; r < u.rows(); ++r)
        if (!in_span(dst_->relations(), vec_mat(u.row(r), f_)))
            throw InvalidInput("map does not kill the source relations");
    // R-linear: action then map equals map then action, per basis element.
    const std::size_t k = src_->ring()->rank();
    for (std::size_t a = 0; a < k; ++a) {
        Row ba(k, 0);
        ba[a] = 1;
        ResidueMatrix lhs = src_->action_matrix(ba) * f_;
        ResidueMatrix rhs = f_ * dst_->action_matrix(ba);
        ResidueMatrix diff = lhs - rhs;
        for (std::size_t r = 0; r < diff.rows(); ++r)
            if (!in_span(dst_->relations(), diff.row(r)))
                throw InvalidInput("map is not R-linear");
    }
}

ModuleMap::ModuleMap(Raw, ModulePtr src, ModulePtr dst, ResidueMatrix f)
    : src_(std::move(src)), dst_(std::move(dst)), f_(std::move(f)) {}

ModuleMap ModuleMap::unchecked(ModulePtr src, ModulePtr dst, ResidueMatrix f) {
    return ModuleMap(Raw{}, std::move(src), std::move(dst), std::move(f));
}

bool ModuleMap::is_zero_map() const {
    for (std::size_t r = 0; r < f_.rows(); ++r)
        if (!dst_->is_zero_element(f_.row(r))) return false;
    return true;
}

bool ModuleMap::equals(const ModuleMap& other) const {
    if (src_.get() != other.src_.get() || dst_.get() != other.dst_.get()) return false;
    ResidueMatrix diff = f_ - other.f_;
    for (std::size_t r = 0; r < diff.rows(); ++r)
        if (!dst_->is_zero_element(diff.row(r))) return false;
    return true;
}

ModuleMap identity_map(const ModulePtr& m) {
    return ModuleMap::unchecked(m, m, ResidueMatrix::identity(m->mod(), m->dim()));
}

ModuleMap zero_map(const ModulePtr& src, const ModulePtr& dst) {
    if (!structurally_equal(*src->ring(), *dst->ring()))
        throw InvalidInput("module map across different rings");
    return ModuleMap::unchecked(src, dst, ResidueMatrix(src->mod(), src->dim(), dst->dim()));
}

ModuleMap compose(const ModuleMap& first, const ModuleMap& then) {
    if (first.target().get() != then.source().get() &&
        !(structurally_equal(*first.target()->ring(), *then.source()->ring()) &&
          first.target()->relations() == then.source()->relations() &&
          first.target()->generators() == then.source()->generators()))
        throw InvalidInput("composition through mismatched modules");
    return ModuleMap(first.source(), then.target(), first.matrix() * then.matrix());
}

ModuleMap map_add(const ModuleMap& a, const ModuleMap& b) {
    return ModuleMap(a.source(), a.target(), a.matrix() + b.matrix());
}

ModuleMap map_sub(const ModuleMap& a, const ModuleMap& b) {
    return ModuleMap(a.source(), a.target(), a.matrix() - b.matrix());
}

ModuleHost standard_host(const ModulePtr& m) {
    ModuleHost h{m->ring(), m->dim(), {}};
    const std::size_t k = m->ring()->rank();
    for (std::size_t a = 0; a < k; ++a) {
        Row ba(k, 0);
        ba[a] = 1;
        h.actions.push_back(m->action_matrix(ba));
    }
    return h;
}

ModuleHost transposed_host(const ModuleHost& h) {
    ModuleHost out{h.ring, h.dim, {}};
    for (const auto& a : h.actions) out.actions.push_back(a.transpose());
    return out;
}

namespace {

bool lattice_stable(const ModuleHost& host, const ResidueMatrix& l) {
    for (const auto& a : host.actions)
        for (std::size_t r = 0; r < l.rows(); ++r)
            if (!in_span(l, vec_mat(l.row(r), a))) return false;
    return true;
}

} // namespace

Presented present_subquotient(const ModuleHost& host, const ResidueMatrix& sub,
                              const ResidueMatrix& rel) {
    const std::uint64_t m = host.ring->characteristic();
    const std::size_t k = host.ring->rank();
    ResidueMatrix s = span_add(sub, rel);
    ResidueMatrix w = howell_basis(rel);
    if (!lattice_stable(host, s) || !lattice_stable(host, w))
        throw InvalidInput("subquotient lattices are not ring-stable");

    const std::size_t t = s.rows();
    ResidueMatrix realize(m, t * k, host.dim);
    for (std::size_t i = 0; i < t; ++i) {
        Row si = s.row(i);
        for (std::size_t a = 0; a < k; ++a) realize.set_row(i * k + a, vec_mat(si, host.actions[a]));
    }
    ResidueMatrix u = kernel_mod(realize, w);
    ModulePtr mod = FiniteModule::from_relation_lattice(host.ring, t, std::move(u));
    return Presented{std::move(mod), std::move(realize)};
}

SubmoduleWithMap kernel_of(const ModuleMap& f) {
    const ModulePtr& src = f.source();
    ResidueMatrix s = kernel_mod(f.matrix(), f.target()->relations());
    Presented p = present_subquotient(standard_host(src), s, src->relations());
    ModuleMap incl(p.mod, src, p.realize);
    return SubmoduleWithMap{p.mod, std::move(incl)};
}

SubmoduleWithMap image_of(const ModuleMap& f) {
    const ModulePtr& dst = f.target();
    Presented p = present_subquotient(standard_host(dst), howell_basis(f.matrix()),
                                      dst->relations());
    ModuleMap incl(p.mod, dst, p.realize);
    return SubmoduleWithMap{p.mod, std::move(incl)};
}

SubmoduleWithMap cokernel_of(const ModuleMap& f) {
    const ModulePtr& dst = f.target();
    ResidueMatrix u = span_add(dst->relations(), f.matrix());
    ModulePtr coker = FiniteModule::from_relation_lattice(dst->ring(), dst->generators(), u);
    ModuleMap proj =
        ModuleMap::unchecked(dst, coker, ResidueMatrix::identity(dst->mod(), dst->dim()));
    return SubmoduleWithMap{coker, std::move(proj)};
}

ModuleMap onto_image(const ModuleMap& f, const SubmoduleWithMap& image) {
    const ModulePtr& src = f.source();
    const ModulePtr& img = image.mod;
    ResidueMatrix g(src->mod(), src->dim(), img->dim());
    for (std::size_t r = 0; r < src->dim(); ++r) {
        Row b(src->dim(), 0);
        b[r] = 1;
        auto c = solve_mod(image.map.matrix(), f.target()->relations(), vec_mat(b, f.matrix()));
        if (!c) throw InvalidInput("image does not contain the map image");
        g.set_row(r, *c);
    }
    return ModuleMap(src, img, std::move(g));
}

DirectSum direct_sum(const std::vector<ModulePtr>& parts) {
    if (parts.empty()) throw InvalidInput("direct sum of nothing");
    const RingPtr ring = parts[0]->ring();
    const std::uint64_t m = ring->characteristic();
    std::size_t t = 0, d = 0;
    for (const auto& p : parts) {
        if (!structurally_equal(*p->ring(), *ring)) throw InvalidInput("direct sum across rings");
        t += p->generators();
        d += p->dim();
    }
    std::size_t relrows = 0;
    for (const auto& p : parts) relrows += p->relations().rows();
    ResidueMatrix u(m, relrows, d);
    std::size_t roff = 0, coff = 0;
    for (const auto& p : parts) {
        const ResidueMatrix& pu = p->relations();
        for (std::size_t r = 0; r < pu.rows(); ++r)
            for (std::size_t c = 0; c < pu.cols(); ++c) u.set(roff + r, coff + c, pu.at(r, c));
        roff += pu.rows();
        coff += pu.cols();
    }
    ModulePtr sum = FiniteModule::from_relation_lattice(ring, t, std::move(u));

    DirectSum out{sum, {}, {}};
    coff = 0;
    for (const auto& p : parts) {
        ResidueMatrix inj(m, p->dim(), d);
        ResidueMatrix prj(m, d, p->dim());
        for (std::size_t c = 0; c < p->dim(); ++c) {
            inj.set(c, coff + c, 1);
            prj.set(coff + c, c, 1);
        }
        out.injections.push_back(ModuleMap::unchecked(p, sum, std::move(inj)));
        out.projections.push_back(ModuleMap::unchecked(sum, p, std::move(prj)));
        coff += p->dim();
    }
    return out;
}

SubmoduleWithMap submodule_from_lattice(const ModulePtr& m, const ResidueMatrix& lattice) {
    Presented p = present_subquotient(standard_host(m), lattice, m->relations());
    ModuleMap incl(p.mod, m, p.realize);
    return SubmoduleWithMap{p.mod, std::move(incl)};
}

} // namespace sgmod
