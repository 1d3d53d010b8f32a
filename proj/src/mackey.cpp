#include "mackeylab/mackey.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mackeylab {

namespace {

bool mask_contains(const Mask& big, const Mask& small) {
    return mask_and(big, small) == small;
}

std::vector<int> subs_in(const GroupContext& ctx, const Mask& big) {
    std::vector<int> out;
    for (int i = 0; i < int(ctx.subgroups.size()); ++i)
        if (mask_contains(big, ctx.subgroups[i].mask)) out.push_back(i);
    return out;
}

void add_block(Mat& dst, int r0, int c0, const Mat& m, const Rat& c) {
    for (int r = 0; r < m.rows; ++r)
        for (int j = 0; j < m.cols; ++j)
            if (m.at(r, j) != 0) dst.at(r0 + r, c0 + j) += c * m.at(r, j);
}

bool vec_in_span(const FpModule& mod, const std::vector<Rat>& v) {
    if (mod.relations.cols == 0) {
        for (const Rat& x : v)
            if (mod.ring.normalize(x) != 0) return false;
        return true;
    }
    return solve_colspan(mod.relations, v, mod.ring).has_value();
}

std::shared_ptr<const LocalLattice> shared_lattice(const GroupContext& ctx) {
    return std::make_shared<const LocalLattice>(build_local_lattice(ctx));
}

const std::string& clabel(const GroupContext& ctx, int cid) { return ctx.classes[cid].label; }

}  // namespace

LocalLattice build_local_lattice(const GroupContext& ctx) {
    const FiniteGroup& g = ctx.group;
    int nc = int(ctx.classes.size());
    int ns = int(ctx.subgroups.size());
    LocalLattice lat;
    lat.locals.resize(nc);
    lat.local_of.assign(nc, std::vector<std::pair<int, int>>(ns, {-1, -1}));
    for (int i = 0; i < nc; ++i) {
        const Subgroup& rep = ctx.subgroups[ctx.classes[i].rep_subgroup];
        for (int u : subs_in(ctx, rep.mask)) {
            if (lat.local_of[i][u].first >= 0) continue;
            int pos = int(lat.locals[i].size());
            lat.locals[i].push_back(u);
            for (int h : rep.elems) {
                int v = ctx.subgroup_index(conjugate_mask(g, ctx.subgroups[u].mask, h));
                if (lat.local_of[i][v].first < 0) lat.local_of[i][v] = {pos, h};
            }
        }
    }
    return lat;
}

ModuleMap conj_map(const MackeyFunctor& m, int sub, int gel) {
    const GroupContext& ctx = *m.ctx;
    const FiniteGroup& g = ctx.group;
    const Subgroup& su = ctx.subgroups[sub];
    int cls = su.class_id;
    int sub2 = ctx.subgroup_index(conjugate_mask(g, su.mask, gel));
    int n = g.mul(g.mul(g.inv(ctx.subgroups[sub2].witness), gel), su.witness);
    int w = ctx.classes[cls].weyl_coset_of[n];
    if (w < 0) throw DomainError("conjugation transport left the normalizer");
    return m.weyl[cls][w];
}

ModuleMap res_map(const MackeyFunctor& m, int big, int small) {
    const GroupContext& ctx = *m.ctx;
    const FiniteGroup& g = ctx.group;
    const Subgroup& b = ctx.subgroups[big];
    const Subgroup& s = ctx.subgroups[small];
    if (!mask_contains(b.mask, s.mask)) throw InputError("restriction needs nested subgroups");
    int j = b.class_id;
    int u2 = ctx.subgroup_index(conjugate_mask(g, s.mask, g.inv(b.witness)));
    auto [l, h] = m.lat->find(j, u2);
    ModuleMap out = conj_map(m, m.lat->locals[j][l], h).compose(m.res[j][l]);
    return conj_map(m, u2, b.witness).compose(out);
}

ModuleMap tr_map(const MackeyFunctor& m, int big, int small) {
    const GroupContext& ctx = *m.ctx;
    const FiniteGroup& g = ctx.group;
    const Subgroup& b = ctx.subgroups[big];
    const Subgroup& s = ctx.subgroups[small];
    if (!mask_contains(b.mask, s.mask)) throw InputError("transfer needs nested subgroups");
    int j = b.class_id;
    int u2 = ctx.subgroup_index(conjugate_mask(g, s.mask, g.inv(b.witness)));
    auto [l, h] = m.lat->find(j, u2);
    ModuleMap in = conj_map(m, u2, g.inv(h)).compose(conj_map(m, small, g.inv(b.witness)));
    return m.tr[j][l].compose(in);
}

MackeyFunctor zero_mackey(std::shared_ptr<const GroupContext> ctx, const CoeffRing& ring) {
    MackeyFunctor m;
    m.ctx = ctx;
    m.lat = shared_lattice(*ctx);
    m.ring = ring;
    int nc = int(ctx->classes.size());
    m.value.assign(nc, FpModule::zero(ring));
    m.weyl.resize(nc);
    m.res.resize(nc);
    m.tr.resize(nc);
    for (int i = 0; i < nc; ++i) {
        m.weyl[i].assign(ctx->classes[i].weyl.order, ModuleMap::identity(m.value[i]));
        int nl = int(m.lat->locals[i].size());
        for (int l = 0; l < nl; ++l) {
            int j = ctx->subgroups[m.lat->locals[i][l]].class_id;
            m.res[i].push_back(ModuleMap::zero_map(m.value[i], m.value[j]));
            m.tr[i].push_back(ModuleMap::zero_map(m.value[j], m.value[i]));
        }
    }
    return m;
}

MackeyFunctor burnside_mackey(std::shared_ptr<const GroupContext> ctx, const CoeffRing& ring) {
    const FiniteGroup& g = ctx->group;
    MackeyFunctor m;
    m.ctx = ctx;
    m.lat = shared_lattice(*ctx);
    m.ring = ring;
    int nc = int(ctx->classes.size());
    const LocalLattice& lat = *m.lat;
    for (int i = 0; i < nc; ++i)
        m.value.push_back(FpModule::free_module(ring, int(lat.locals[i].size())));
    m.weyl.resize(nc);
    m.res.resize(nc);
    m.tr.resize(nc);
    for (int i = 0; i < nc; ++i) {
        const SubgroupClass& cls = ctx->classes[i];
        const Subgroup& hsub = ctx->subgroups[cls.rep_subgroup];
        int rank = int(lat.locals[i].size());
        for (int w = 0; w < cls.weyl.order; ++w) {
            int n = cls.weyl_rep[w];
            Mat wm(rank, rank);
            for (int col = 0; col < rank; ++col) {
                int v = ctx->subgroup_index(
                    conjugate_mask(g, ctx->subgroups[lat.locals[i][col]].mask, n));
                wm.at(lat.local_of[i][v].first, col) = 1;
            }
            m.weyl[i].emplace_back(m.value[i], m.value[i], wm);
        }
        for (int l = 0; l < rank; ++l) {
            const Subgroup& k = ctx->subgroups[lat.locals[i][l]];
            int j = k.class_id;
            int jrank = int(lat.locals[j].size());
            Mat rm(jrank, rank);
            for (int col = 0; col < rank; ++col) {
                const Subgroup& u = ctx->subgroups[lat.locals[i][col]];
                std::vector<char> vis(g.order, 0);
                for (int h : hsub.elems) {
                    if (vis[h]) continue;
                    for (int ke : k.elems)
                        for (int ue : u.elems) vis[g.mul(g.mul(ke, h), ue)] = 1;
                    Mask st = mask_and(k.mask, conjugate_mask(g, u.mask, h));
                    int v = ctx->subgroup_index(conjugate_mask(g, st, g.inv(k.witness)));
                    rm.at(lat.local_of[j][v].first, col) += 1;
                }
            }
            m.res[i].emplace_back(m.value[i], m.value[j], rm);
            Mat tm(rank, jrank);
            for (int col = 0; col < jrank; ++col) {
                Mask w = conjugate_mask(g, ctx->subgroups[lat.locals[j][col]].mask, k.witness);
                tm.at(lat.local_of[i][ctx->subgroup_index(w)].first, col) = 1;
            }
            m.tr[i].emplace_back(m.value[j], m.value[i], tm);
        }
    }
    return m;
}

MackeyFunctor fixed_point_mackey(std::shared_ptr<const GroupContext> ctx, int fixed_class,
                                 const CoeffRing& ring) {
    const FiniteGroup& g = ctx->group;
    const Mask h0 = ctx->subgroups[ctx->classes[fixed_class].rep_subgroup].mask;
    const std::vector<int>& h0e = ctx->subgroups[ctx->classes[fixed_class].rep_subgroup].elems;
    MackeyFunctor m;
    m.ctx = ctx;
    m.lat = shared_lattice(*ctx);
    m.ring = ring;
    int nc = int(ctx->classes.size());
    const LocalLattice& lat = *m.lat;

    // coset decompositions of G by every subgroup, and their fixed cosets
    int ns = int(ctx->subgroups.size());
    std::vector<CosetDecomp> cos(ns);
    std::vector<std::vector<int>> fixed(ns);  // fixed coset indices, ascending
    std::vector<std::vector<int>> pos(ns);    // coset -> basis position or -1
    for (int s = 0; s < ns; ++s) {
        cos[s] = left_cosets(g, ctx->subgroups[s].mask);
        pos[s].assign(cos[s].reps.size(), -1);
        for (int c = 0; c < int(cos[s].reps.size()); ++c) {
            bool fix = true;
            for (int x : h0e)
                if (cos[s].coset_of[g.mul(x, cos[s].reps[c])] != c) {
                    fix = false;
                    break;
                }
            if (fix) {
                pos[s][c] = int(fixed[s].size());
                fixed[s].push_back(c);
            }
        }
    }

    for (int i = 0; i < nc; ++i) {
        int hi = ctx->classes[i].rep_subgroup;
        m.value.push_back(FpModule::free_module(ring, int(fixed[hi].size())));
    }
    m.weyl.resize(nc);
    m.res.resize(nc);
    m.tr.resize(nc);
    for (int i = 0; i < nc; ++i) {
        const SubgroupClass& cls = ctx->classes[i];
        int hi = cls.rep_subgroup;
        int rank = int(fixed[hi].size());
        for (int w = 0; w < cls.weyl.order; ++w) {
            int n = cls.weyl_rep[w];
            Mat wm(rank, rank);
            for (int col = 0; col < rank; ++col) {
                int r = cos[hi].reps[fixed[hi][col]];
                wm.at(pos[hi][cos[hi].coset_of[g.mul(r, g.inv(n))]], col) = 1;
            }
            m.weyl[i].emplace_back(m.value[i], m.value[i], wm);
        }
        for (int l = 0; l < int(lat.locals[i].size()); ++l) {
            int ki = lat.locals[i][l];
            const Subgroup& k = ctx->subgroups[ki];
            int j = k.class_id;
            int ji = ctx->classes[j].rep_subgroup;
            Mat rm(int(fixed[ji].size()), rank);
            for (int y : fixed[ki]) {
                int s = cos[ki].reps[y];
                int col = pos[hi][cos[hi].coset_of[s]];
                int row = pos[ji][cos[ji].coset_of[g.mul(s, k.witness)]];
                rm.at(row, col) += 1;
            }
            m.res[i].emplace_back(m.value[i], m.value[j], rm);
            Mat tm(rank, int(fixed[ji].size()));
            for (int col = 0; col < int(fixed[ji].size()); ++col) {
                int t = cos[ji].reps[fixed[ji][col]];
                int row = pos[hi][cos[hi].coset_of[g.mul(t, g.inv(k.witness))]];
                tm.at(row, col) = 1;
            }
            m.tr[i].emplace_back(m.value[j], m.value[i], tm);
        }
    }
    return m;
}

Evaluation evaluate(const MackeyFunctor& m, const GSet& s) {
    if (s.g != &m.ctx->group) throw InputError("set is not over the functor's group");
    Evaluation ev;
    ev.orbs = orbits(s);
    int gens = 0, relc = 0;
    for (const auto& o : ev.orbs) {
        int c = m.ctx->class_of_mask(stabilizer_mask(s, o[0]));
        ev.cls.push_back(c);
        ev.offset.push_back(gens);
        gens += m.value[c].gens;
        relc += m.value[c].relations.cols;
    }
    Mat rel(gens, relc);
    int c0 = 0;
    for (size_t o = 0; o < ev.orbs.size(); ++o) {
        const Mat& r = m.value[ev.cls[o]].relations;
        add_block(rel, ev.offset[o], c0, r, 1);
        c0 += r.cols;
    }
    ev.module = FpModule(m.ring, gens, rel);
    return ev;
}

ModuleMap apply_span(const MackeyFunctor& m, const BurnsideElement& a) {
    const GroupContext& ctx = *m.ctx;
    const FiniteGroup& g = ctx.group;
    Evaluation evs = evaluate(m, a.source);
    Evaluation evt = evaluate(m, a.target);
    std::vector<int> orb_s = orbit_of_point(a.source);
    std::vector<int> orb_t = orbit_of_point(a.target);
    Mat total(evt.module.gens, evs.module.gens);
    for (const auto& [key, coeff] : a.coeffs) {
        int o1 = orb_s[key.p1], o2 = orb_t[key.p2];
        int m1 = evs.orbs[o1][0], m2 = evt.orbs[o2][0];
        int g1 = 0, g2 = 0;
        while (a.source.apply(g1, m1) != key.p1) ++g1;
        while (a.target.apply(g2, m2) != key.p2) ++g2;
        int sm1 = ctx.subgroup_index(stabilizer_mask(a.source, m1));
        int sp1 = ctx.subgroup_index(stabilizer_mask(a.source, key.p1));
        int sm2 = ctx.subgroup_index(stabilizer_mask(a.target, m2));
        int sp2 = ctx.subgroup_index(stabilizer_mask(a.target, key.p2));
        int u = ctx.subgroup_index(key.stab);
        ModuleMap f = res_map(m, sp1, u).compose(conj_map(m, sm1, g1));
        f = tr_map(m, sp2, u).compose(f);
        f = conj_map(m, sp2, g.inv(g2)).compose(f);
        add_block(total, evt.offset[o2], evs.offset[o1], f.matrix, Rat(coeff));
    }
    return ModuleMap(evs.module, evt.module, total);
}

ModuleMap burnside_action(const MackeyFunctor& m, const GSet& s, const std::vector<Int>& a) {
    const GroupContext& ctx = *m.ctx;
    if (int(a.size()) != int(ctx.classes.size()))
        throw InputError("coefficient vector does not match the subgroup classes");
    BurnsideElement e = zero_element(s, s);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            e = add(e, scale(a[i], central_spans(ctx, s, standard_orbit(ctx, int(i)))));
    return apply_span(m, e);
}

std::vector<ModuleMap> burnside_action_levels(const MackeyFunctor& m, const std::vector<Int>& a) {
    std::vector<ModuleMap> out;
    for (int i = 0; i < m.classes(); ++i) {
        GSet s = standard_orbit(*m.ctx, i);
        ModuleMap f = burnside_action(m, s, a);
        out.emplace_back(m.value[i], m.value[i], f.matrix);
    }
    return out;
}

std::vector<std::string> mackey_structural_violations(const MackeyFunctor& m) {
    std::vector<std::string> out;
    const GroupContext& ctx = *m.ctx;
    const LocalLattice& lat = *m.lat;
    int nc = int(ctx.classes.size());
    if (m.classes() != nc || int(m.weyl.size()) != nc || int(m.res.size()) != nc ||
        int(m.tr.size()) != nc) {
        out.push_back("malformed: level count does not match the subgroup classes");
        return out;
    }
    for (int i = 0; i < nc; ++i) {
        const std::string& lb = clabel(ctx, i);
        if (!(m.value[i].ring == m.ring)) out.push_back("malformed: ring mismatch at " + lb);
        if (int(m.weyl[i].size()) != ctx.classes[i].weyl.order)
            out.push_back("malformed: Weyl family size at " + lb);
        for (const ModuleMap& w : m.weyl[i])
            if (w.matrix.rows != m.value[i].gens || w.matrix.cols != m.value[i].gens)
                out.push_back("malformed: Weyl matrix shape at " + lb);
        int nl = int(lat.locals[i].size());
        if (int(m.res[i].size()) != nl || int(m.tr[i].size()) != nl) {
            out.push_back("malformed: edge count at " + lb);
            continue;
        }
        for (int l = 0; l < nl; ++l) {
            int j = ctx.subgroups[lat.locals[i][l]].class_id;
            if (m.res[i][l].matrix.rows != m.value[j].gens ||
                m.res[i][l].matrix.cols != m.value[i].gens)
                out.push_back("malformed: restriction shape at " + lb + ", local " +
                              std::to_string(l));
            if (m.tr[i][l].matrix.rows != m.value[i].gens ||
                m.tr[i][l].matrix.cols != m.value[j].gens)
                out.push_back("malformed: transfer shape at " + lb + ", local " +
                              std::to_string(l));
        }
    }
    return out;
}

std::vector<std::string> mackey_class_violations(const MackeyFunctor& m, int cls, int stage) {
    std::vector<std::string> out;
    auto fail = [&](const std::string& s) { out.push_back(s); };
    const GroupContext& ctx = *m.ctx;
    const FiniteGroup& g = ctx.group;
    const LocalLattice& lat = *m.lat;
    const int i = cls;
    const std::string& lb = clabel(ctx, i);

    if (stage == 0) {
        const FiniteGroup& w = ctx.classes[i].weyl;
        if (!m.weyl[i][0].equals(ModuleMap::identity(m.value[i])))
            fail("Weyl identity at " + lb);
        for (int w1 = 0; w1 < w.order; ++w1)
            for (int w2 = 0; w2 < w.order; ++w2)
                if (!m.weyl[i][w1].compose(m.weyl[i][w2]).equals(m.weyl[i][w.mul(w1, w2)]))
                    fail("Weyl homomorphism at (" + lb + ", " + std::to_string(w1) + ", " +
                         std::to_string(w2) + ")");
        int lself = int(lat.locals[i].size()) - 1;
        if (!m.res[i][lself].equals(ModuleMap::identity(m.value[i])))
            fail("self restriction at " + lb);
        if (!m.tr[i][lself].equals(ModuleMap::identity(m.value[i])))
            fail("self transfer at " + lb);
        return out;
    }

    const SubgroupClass& sc = ctx.classes[i];
    int hidx = sc.rep_subgroup;
    const Mask hmask = ctx.subgroups[hidx].mask;
    std::vector<int> inside = subs_in(ctx, hmask);
    auto lbl = [&](int sub) { return clabel(ctx, ctx.subgroups[sub].class_id); };

    // the derived maps repeat across the loops below; build each pair once
    std::map<std::pair<int, int>, ModuleMap> rcache, tcache;
    auto resm = [&](int big, int small) -> const ModuleMap& {
        auto it = rcache.find({big, small});
        if (it == rcache.end())
            it = rcache.emplace(std::make_pair(big, small), res_map(m, big, small)).first;
        return it->second;
    };
    auto trm = [&](int big, int small) -> const ModuleMap& {
        auto it = tcache.find({big, small});
        if (it == tcache.end())
            it = tcache.emplace(std::make_pair(big, small), tr_map(m, big, small)).first;
        return it->second;
    };

    for (int v : inside) {
        for (int u : inside) {
            if (!mask_contains(ctx.subgroups[v].mask, ctx.subgroups[u].mask)) continue;
            if (!resm(hidx, u).equals(resm(v, u).compose(resm(hidx, v))))
                fail("restriction transitivity at (H=" + lb + ", V=" + lbl(v) +
                     ", U=" + lbl(u) + ")");
            if (!trm(hidx, u).equals(trm(hidx, v).compose(trm(v, u))))
                fail("transfer transitivity at (H=" + lb + ", V=" + lbl(v) +
                     ", U=" + lbl(u) + ")");
        }
    }

    for (int wi = 0; wi < sc.weyl.order; ++wi) {
        int n = sc.weyl_rep[wi];
        for (int u : inside) {
            int nu = ctx.subgroup_index(conjugate_mask(g, ctx.subgroups[u].mask, n));
            ModuleMap lhs = conj_map(m, u, n).compose(resm(hidx, u));
            ModuleMap rhs = resm(hidx, nu).compose(m.weyl[i][wi]);
            if (!lhs.equals(rhs))
                fail("restriction equivariance at (H=" + lb + ", w=" + std::to_string(wi) +
                     ", U=" + lbl(u) + ")");
            ModuleMap lht = m.weyl[i][wi].compose(trm(hidx, u));
            ModuleMap rht = trm(hidx, nu).compose(conj_map(m, u, n));
            if (!lht.equals(rht))
                fail("transfer equivariance at (H=" + lb + ", w=" + std::to_string(wi) +
                     ", U=" + lbl(u) + ")");
        }
    }

    for (int hp : inside) {
        for (int hpp : inside) {
            ModuleMap lhs = resm(hidx, hp).compose(trm(hidx, hpp));
            ModuleMap rhs = ModuleMap::zero_map(m.value[ctx.subgroups[hpp].class_id],
                                                m.value[ctx.subgroups[hp].class_id]);
            for (const DoubleCoset& dc :
                 double_cosets(ctx, ctx.subgroups[hp].mask, ctx.subgroups[hpp].mask, hmask)) {
                int d = ctx.subgroup_index(dc.stab);
                int e = ctx.subgroup_index(conjugate_mask(g, dc.stab, g.inv(dc.witness)));
                ModuleMap term = conj_map(m, e, dc.witness).compose(resm(hpp, e));
                term = trm(hp, d).compose(term);
                rhs = rhs.add(term);
            }
            if (!lhs.equals(rhs))
                fail("double coset at (H=" + lb + ", H'=" + lbl(hp) + ", H''=" + lbl(hpp) +
                     ")");
        }
    }
    return out;
}

AxiomReport check_mackey_axioms(const MackeyFunctor& m) {
    AxiomReport rep;
    rep.violations = mackey_structural_violations(m);
    if (!rep.violations.empty()) {
        rep.pass = false;
        return rep;
    }
    int nc = int(m.ctx->classes.size());
    for (int stage = 0; stage < 2; ++stage) {
        for (int i = 0; i < nc; ++i) {
            std::vector<std::string> v = mackey_class_violations(m, i, stage);
            rep.violations.insert(rep.violations.end(), v.begin(), v.end());
        }
        if (!rep.violations.empty()) {
            rep.pass = false;
            return rep;
        }
    }
    return rep;
}

AxiomReport check_mackey_morphism(const MackeyMorphism& f) {
    AxiomReport rep;
    auto fail = [&](const std::string& s) {
        rep.pass = false;
        rep.violations.push_back(s);
    };
    const MackeyFunctor& a = f.source;
    const MackeyFunctor& b = f.target;
    if (a.ctx->group.mul_table != b.ctx->group.mul_table || !(a.ring == b.ring)) {
        fail("malformed: source and target live over different theories");
        return rep;
    }
    const GroupContext& ctx = *a.ctx;
    int nc = int(ctx.classes.size());
    if (int(f.comp.size()) != nc) {
        fail("malformed: component count");
        return rep;
    }
    for (int i = 0; i < nc; ++i)
        if (f.comp[i].matrix.rows != b.value[i].gens || f.comp[i].matrix.cols != a.value[i].gens) {
            fail("malformed: component shape at " + clabel(ctx, i));
            return rep;
        }
    for (int i = 0; i < nc; ++i) {
        const std::string& lb = clabel(ctx, i);
        for (int w = 0; w < int(a.weyl[i].size()); ++w)
            if (!f.comp[i].compose(a.weyl[i][w]).equals(b.weyl[i][w].compose(f.comp[i])))
                fail("morphism Weyl at (" + lb + ", " + std::to_string(w) + ")");
        for (int l = 0; l < int(a.res[i].size()); ++l) {
            int j = ctx.subgroups[a.lat->locals[i][l]].class_id;
            if (!b.res[i][l].compose(f.comp[i]).equals(f.comp[j].compose(a.res[i][l])))
                fail("morphism restriction at (" + lb + ", local " + std::to_string(l) + ")");
            if (!b.tr[i][l].compose(f.comp[j]).equals(f.comp[i].compose(a.tr[i][l])))
                fail("morphism transfer at (" + lb + ", local " + std::to_string(l) + ")");
        }
    }
    return rep;
}

MackeyFunctor mackey_kernel(const MackeyMorphism& f) {
    const MackeyFunctor& a = f.source;
    MackeyFunctor k;
    k.ctx = a.ctx;
    k.lat = a.lat;
    k.ring = a.ring;
    int nc = a.classes();
    std::vector<SubmoduleResult> kr;
    for (int i = 0; i < nc; ++i) {
        kr.push_back(map_kernel(f.comp[i]));
        k.value.push_back(kr[i].module);
    }
    k.weyl.resize(nc);
    k.res.resize(nc);
    k.tr.resize(nc);
    for (int i = 0; i < nc; ++i) {
        for (const ModuleMap& w : a.weyl[i])
            k.weyl[i].push_back(factor_through(kr[i].inclusion, w.compose(kr[i].inclusion)));
        for (int l = 0; l < int(a.res[i].size()); ++l) {
            int j = a.ctx->subgroups[a.lat->locals[i][l]].class_id;
            k.res[i].push_back(
                factor_through(kr[j].inclusion, a.res[i][l].compose(kr[i].inclusion)));
            k.tr[i].push_back(
                factor_through(kr[i].inclusion, a.tr[i][l].compose(kr[j].inclusion)));
        }
    }
    return k;
}

MackeyFunctor mackey_cokernel(const MackeyMorphism& f) {
    const MackeyFunctor& b = f.target;
    MackeyFunctor c;
    c.ctx = b.ctx;
    c.lat = b.lat;
    c.ring = b.ring;
    int nc = b.classes();
    for (int i = 0; i < nc; ++i) c.value.push_back(map_cokernel(f.comp[i]).module);
    c.weyl.resize(nc);
    c.res.resize(nc);
    c.tr.resize(nc);
    for (int i = 0; i < nc; ++i) {
        for (const ModuleMap& w : b.weyl[i])
            c.weyl[i].emplace_back(c.value[i], c.value[i], w.matrix);
        for (int l = 0; l < int(b.res[i].size()); ++l) {
            int j = b.ctx->subgroups[b.lat->locals[i][l]].class_id;
            c.res[i].emplace_back(c.value[i], c.value[j], b.res[i][l].matrix);
            c.tr[i].emplace_back(c.value[j], c.value[i], b.tr[i][l].matrix);
        }
    }
    return c;
}

MackeyMorphism mackey_compose(const MackeyMorphism& g, const MackeyMorphism& f) {
    MackeyMorphism out;
    out.source = f.source;
    out.target = g.target;
    for (int i = 0; i < int(f.comp.size()); ++i) out.comp.push_back(g.comp[i].compose(f.comp[i]));
    return out;
}

bool mackey_literal_equal(const MackeyFunctor& a, const MackeyFunctor& b) {
    if (!(a.ring == b.ring)) return false;
    if (a.ctx->group.order != b.ctx->group.order ||
        a.ctx->group.mul_table != b.ctx->group.mul_table)
        return false;
    if (a.classes() != b.classes()) return false;
    for (int i = 0; i < a.classes(); ++i) {
        if (a.value[i].gens != b.value[i].gens || !(a.value[i].relations == b.value[i].relations))
            return false;
        if (a.weyl[i].size() != b.weyl[i].size() || a.res[i].size() != b.res[i].size() ||
            a.tr[i].size() != b.tr[i].size())
            return false;
        for (size_t w = 0; w < a.weyl[i].size(); ++w)
            if (!(a.weyl[i][w].matrix == b.weyl[i][w].matrix)) return false;
        for (size_t l = 0; l < a.res[i].size(); ++l)
            if (!(a.res[i][l].matrix == b.res[i][l].matrix) ||
                !(a.tr[i][l].matrix == b.tr[i][l].matrix))
                return false;
    }
    return true;
}

namespace {

std::string map_profile(const ModuleMap& f) {
    return "k=" + map_kernel(f).module.pretty() + " i=" + map_image(f).module.pretty() +
           " c=" + map_cokernel(f).module.pretty();
}

std::string functor_profile(const MackeyFunctor& m) {
    const GroupContext& ctx = *m.ctx;
    std::vector<std::string> per_class;
    for (int i = 0; i < m.classes(); ++i) {
        std::ostringstream os;
        os << "|H|=" << ctx.classes[i].order << " value=" << m.value[i].pretty();
        std::vector<std::string> edges;
        for (size_t l = 0; l < m.res[i].size(); ++l) {
            int u = m.lat->locals[i][l];
            edges.push_back("local(" + std::to_string(ctx.subgroups[u].order) + ") r{" +
                            map_profile(m.res[i][l]) + "} t{" + map_profile(m.tr[i][l]) + "}");
        }
        std::sort(edges.begin(), edges.end());
        for (const auto& e : edges) os << " " << e;
        std::vector<std::string> wp;
        for (const ModuleMap& w : m.weyl[i]) {
            ModuleMap d = w.sub(ModuleMap::identity(m.value[i]));
            wp.push_back("w{k=" + map_kernel(d).module.pretty() +
                         " c=" + map_cokernel(d).module.pretty() + "}");
        }
        std::sort(wp.begin(), wp.end());
        for (const auto& e : wp) os << " " << e;
        per_class.push_back(os.str());
    }
    std::sort(per_class.begin(), per_class.end());
    std::string out = "order=" + std::to_string(ctx.group.order) +
                      " ring=" + m.ring.to_string() + "\n";
    for (const auto& s : per_class) out += s + "\n";
    return out;
}

}  // namespace

bool mackey_profile_equal(const MackeyFunctor& a, const MackeyFunctor& b, std::string* why) {
    std::string pa = functor_profile(a), pb = functor_profile(b);
    if (pa == pb) return true;
    if (why) *why = "profiles differ\nfirst:\n" + pa + "second:\n" + pb;
    return false;
}

MackeyFunctor geometric_fixed_points_inner(const MackeyFunctor& m, int cid) {
    const GroupContext& ctx = *m.ctx;
    const FiniteGroup& g = ctx.group;
    const SubgroupClass& ncls = ctx.classes[cid];
    const Mask hp = ctx.subgroups[ncls.rep_subgroup].mask;
    auto wctx = std::make_shared<const GroupContext>(make_context(ncls.weyl));

    auto preimage = [&](const Mask& wm) {
        Mask out = mask_empty();
        for (int x = 0; x < g.order; ++x) {
            int w = ncls.weyl_coset_of[x];
            if (w >= 0 && mask_get(wm, w)) mask_set(out, x);
        }
        return out;
    };

    MackeyFunctor out;
    out.ctx = wctx;
    out.lat = shared_lattice(*wctx);
    out.ring = m.ring;
    int nw = int(wctx->classes.size());
    std::vector<int> pre(nw);  // subgroup index in ctx of the preimage of each class rep
    for (int i = 0; i < nw; ++i) {
        int kidx = ctx.subgroup_index(
            preimage(wctx->subgroups[wctx->classes[i].rep_subgroup].mask));
        pre[i] = kidx;
        const FpModule& base = m.value[ctx.subgroups[kidx].class_id];
        Mat killed(base.gens, 0);
        for (int u : subs_in(ctx, ctx.subgroups[kidx].mask))
            if (!mask_contains(ctx.subgroups[u].mask, hp))
                killed = killed.hstack(tr_map(m, kidx, u).matrix);
        if (killed.cols == 0 || killed.is_zero())
            out.value.push_back(base);
        else
            out.value.push_back(FpModule(m.ring, base.gens, base.relations.hstack(killed)).pruned());
    }
    out.weyl.resize(nw);
    out.res.resize(nw);
    out.tr.resize(nw);
    for (int i = 0; i < nw; ++i) {
        const SubgroupClass& wcls = wctx->classes[i];
        for (int w = 0; w < wcls.weyl.order; ++w) {
            int n = ncls.weyl_rep[wcls.weyl_rep[w]];
            out.weyl[i].emplace_back(out.value[i], out.value[i],
                                     conj_map(m, pre[i], n).matrix);
        }
        for (int l = 0; l < int(out.lat->locals[i].size()); ++l) {
            const Subgroup& wl = wctx->subgroups[out.lat->locals[i][l]];
            int j = wl.class_id;
            int lpre = ctx.subgroup_index(preimage(wl.mask));
            int n = ncls.weyl_rep[wl.witness];
            ModuleMap down = conj_map(m, lpre, g.inv(n)).compose(res_map(m, pre[i], lpre));
            out.res[i].emplace_back(out.value[i], out.value[j], down.matrix);
            ModuleMap up = tr_map(m, pre[i], lpre).compose(conj_map(m, pre[j], n));
            out.tr[i].emplace_back(out.value[j], out.value[i], up.matrix);
        }
    }
    return out;
}

MackeyFunctor geometric_fixed_points(const MackeyFunctor& m, int normal_cid) {
    if (!m.ctx->classes[normal_cid].is_normal)
        throw DomainError("geometric fixed points need a normal subgroup class");
    return geometric_fixed_points_inner(m, normal_cid);
}

CategoricalFP categorical_fixed_points(const MackeyFunctor& m, int cid) {
    const GroupContext& ctx = *m.ctx;
    const FiniteGroup& g = ctx.group;
    const SubgroupClass& hcls = ctx.classes[cid];
    auto hctx = std::make_shared<const GroupContext>(make_context(hcls.sub));

    auto lift = [&](const Mask& hm) {
        Mask out = mask_empty();
        for (int e = 0; e < hcls.sub.order; ++e)
            if (mask_get(hm, e)) mask_set(out, hcls.sub_elem[e]);
        return out;
    };

    CategoricalFP fp;
    MackeyFunctor& out = fp.fun;
    out.ctx = hctx;
    out.lat = shared_lattice(*hctx);
    out.ring = m.ring;
    int nh = int(hctx->classes.size());
    std::vector<int> up(nh);
    for (int i = 0; i < nh; ++i) {
        up[i] = ctx.subgroup_index(lift(hctx->subgroups[hctx->classes[i].rep_subgroup].mask));
        out.value.push_back(m.value[ctx.subgroups[up[i]].class_id]);
    }
    out.weyl.resize(nh);
    out.res.resize(nh);
    out.tr.resize(nh);
    for (int i = 0; i < nh; ++i) {
        const SubgroupClass& icls = hctx->classes[i];
        for (int w = 0; w < icls.weyl.order; ++w) {
            int n = hcls.sub_elem[icls.weyl_rep[w]];
            out.weyl[i].emplace_back(out.value[i], out.value[i], conj_map(m, up[i], n).matrix);
        }
        for (int l = 0; l < int(out.lat->locals[i].size()); ++l) {
            const Subgroup& hl = hctx->subgroups[out.lat->locals[i][l]];
            int j = hl.class_id;
            int vpre = ctx.subgroup_index(lift(hl.mask));
            int h = hcls.sub_elem[hl.witness];
            ModuleMap down = conj_map(m, vpre, g.inv(h)).compose(res_map(m, up[i], vpre));
            out.res[i].emplace_back(out.value[i], out.value[j], down.matrix);
            ModuleMap upm = tr_map(m, up[i], vpre).compose(conj_map(m, up[j], h));
            out.tr[i].emplace_back(out.value[j], out.value[i], upm.matrix);
        }
    }

    Mask zmask = ctx.subgroups[hcls.centralizer_sub].mask;
    fp.central_action.resize(nh);
    for (int i = 0; i < nh; ++i) {
        Mask umask = ctx.subgroups[up[i]].mask;
        for (int z = 0; z < g.order; ++z) {
            if (!mask_get(zmask, z)) continue;
            if (!(conjugate_mask(g, umask, z) == umask)) continue;
            fp.central_action[i].emplace_back(z, conj_map(m, up[i], z).matrix);
        }
    }
    return fp;
}

MackeyFunctor inflation(std::shared_ptr<const GroupContext> ctx, int normal_cid,
                        const MackeyFunctor& m_over_w) {
    const GroupContext& gctx = *ctx;
    const FiniteGroup& g = gctx.group;
    const SubgroupClass& ncls = gctx.classes[normal_cid];
    if (!ncls.is_normal) throw DomainError("inflation needs a normal subgroup class");
    if (m_over_w.ctx->group.order != ncls.weyl.order ||
        m_over_w.ctx->group.mul_table != ncls.weyl.mul_table)
        throw InputError("inflation input must live over the quotient group");
    const GroupContext& wctx = *m_over_w.ctx;
    const FiniteGroup& w = wctx.group;
    const Mask nmask = gctx.subgroups[ncls.rep_subgroup].mask;

    auto bar = [&](const Mask& gm) {
        Mask out = mask_empty();
        for (int x = 0; x < g.order; ++x)
            if (mask_get(gm, x)) mask_set(out, ncls.weyl_coset_of[x]);
        return out;
    };

    MackeyFunctor out;
    out.ctx = ctx;
    out.lat = shared_lattice(gctx);
    out.ring = m_over_w.ring;
    int nc = int(gctx.classes.size());
    std::vector<int> down(nc, -1);  // W subgroup index of the image of each class rep
    for (int i = 0; i < nc; ++i) {
        Mask k = gctx.subgroups[gctx.classes[i].rep_subgroup].mask;
        if (!mask_contains(k, nmask)) {
            out.value.push_back(FpModule::zero(out.ring));
            continue;
        }
        down[i] = wctx.subgroup_index(bar(k));
        out.value.push_back(m_over_w.value[wctx.subgroups[down[i]].class_id]);
    }
    out.weyl.resize(nc);
    out.res.resize(nc);
    out.tr.resize(nc);
    for (int i = 0; i < nc; ++i) {
        const SubgroupClass& cls = gctx.classes[i];
        for (int wi = 0; wi < cls.weyl.order; ++wi) {
            if (down[i] < 0) {
                out.weyl[i].push_back(ModuleMap::identity(out.value[i]));
                continue;
            }
            int nbar = ncls.weyl_coset_of[cls.weyl_rep[wi]];
            out.weyl[i].emplace_back(out.value[i], out.value[i],
                                     conj_map(m_over_w, down[i], nbar).matrix);
        }
        for (int l = 0; l < int(out.lat->locals[i].size()); ++l) {
            const Subgroup& lsub = gctx.subgroups[out.lat->locals[i][l]];
            int j = lsub.class_id;
            if (down[i] < 0 || !mask_contains(lsub.mask, nmask)) {
                out.res[i].push_back(ModuleMap::zero_map(out.value[i], out.value[j]));
                out.tr[i].push_back(ModuleMap::zero_map(out.value[j], out.value[i]));
                continue;
            }
            int lbar = wctx.subgroup_index(bar(lsub.mask));
            int gl = ncls.weyl_coset_of[lsub.witness];
            ModuleMap dn = conj_map(m_over_w, lbar, w.inv(gl))
                               .compose(res_map(m_over_w, down[i], lbar));
            out.res[i].emplace_back(out.value[i], out.value[j], dn.matrix);
            ModuleMap upm =
                tr_map(m_over_w, down[i], lbar).compose(conj_map(m_over_w, down[j], gl));
            out.tr[i].emplace_back(out.value[j], out.value[i], upm.matrix);
        }
    }
    return out;
}

MackeyMorphism inflation_unit(const MackeyFunctor& m, int normal_cid) {
    const GroupContext& ctx = *m.ctx;
    const FiniteGroup& g = ctx.group;
    const SubgroupClass& ncls = ctx.classes[normal_cid];
    const Mask nmask = ctx.subgroups[ncls.rep_subgroup].mask;
    MackeyFunctor phi = geometric_fixed_points(m, normal_cid);
    MackeyFunctor infl = inflation(m.ctx, normal_cid, phi);
    const GroupContext& wctx = *phi.ctx;

    MackeyMorphism unit;
    unit.source = m;
    unit.target = infl;
    for (int i = 0; i < m.classes(); ++i) {
        Mask k = ctx.subgroups[ctx.classes[i].rep_subgroup].mask;
        if (!mask_contains(k, nmask)) {
            unit.comp.push_back(ModuleMap::zero_map(m.value[i], infl.value[i]));
            continue;
        }
        Mask kbar = mask_empty();
        for (int x = 0; x < g.order; ++x)
            if (mask_get(k, x)) mask_set(kbar, ncls.weyl_coset_of[x]);
        int q = ncls.weyl_rep[wctx.subgroups[wctx.subgroup_index(kbar)].witness];
        Mat u = conj_map(m, ctx.classes[i].rep_subgroup, g.inv(q)).matrix;
        unit.comp.emplace_back(m.value[i], infl.value[i], u);
    }
    return unit;
}

MackeyMorphism phi_burnside_comparison(const MackeyFunctor& phi_a, int normal_cid,
                                       const GroupContext& gctx) {
    const FiniteGroup& g = gctx.group;
    const SubgroupClass& ncls = gctx.classes[normal_cid];
    const Mask nmask = gctx.subgroups[ncls.rep_subgroup].mask;
    const GroupContext& wctx = *phi_a.ctx;
    LocalLattice latg = build_local_lattice(gctx);
    MackeyFunctor aw = burnside_mackey(phi_a.ctx, phi_a.ring);

    auto preimage = [&](const Mask& wm) {
        Mask out = mask_empty();
        for (int x = 0; x < g.order; ++x) {
            int w = ncls.weyl_coset_of[x];
            if (w >= 0 && mask_get(wm, w)) mask_set(out, x);
        }
        return out;
    };
    auto bar = [&](const Mask& gm) {
        Mask out = mask_empty();
        for (int x = 0; x < g.order; ++x)
            if (mask_get(gm, x)) mask_set(out, ncls.weyl_coset_of[x]);
        return out;
    };

    MackeyMorphism cmp;
    cmp.source = phi_a;
    cmp.target = aw;
    for (int i = 0; i < int(wctx.classes.size()); ++i) {
        int k0 = gctx.subgroup_index(
            preimage(wctx.subgroups[wctx.classes[i].rep_subgroup].mask));
        int jg = gctx.subgroups[k0].class_id;
        int wit = gctx.subgroups[k0].witness;
        Mat mt(aw.value[i].gens, phi_a.value[i].gens);
        for (int col = 0; col < int(latg.locals[jg].size()); ++col) {
            Mask v = conjugate_mask(g, gctx.subgroups[latg.locals[jg][col]].mask, wit);
            if (!mask_contains(v, nmask)) continue;
            int vbar = wctx.subgroup_index(bar(v));
            mt.at(phi_a.lat->local_of[i][vbar].first, col) = 1;
        }
        cmp.comp.emplace_back(phi_a.value[i], aw.value[i], mt);
    }
    return cmp;
}

bool phi_psi_commute_check(const MackeyFunctor& m, int h_cid, int hp_cid, std::string* why) {
    const GroupContext& ctx = *m.ctx;
    const SubgroupClass& hcls = ctx.classes[h_cid];
    const Mask hmask = ctx.subgroups[hcls.rep_subgroup].mask;
    const Subgroup& hpsub = ctx.subgroups[ctx.classes[hp_cid].rep_subgroup];
    if (!mask_contains(hmask, hpsub.mask))
        throw DomainError("the second representative must sit inside the first");

    CategoricalFP psi = categorical_fixed_points(m, h_cid);
    Mask local = mask_empty();
    for (int x : hpsub.elems) mask_set(local, hcls.sub_index_of[x]);
    MackeyFunctor lhs =
        geometric_fixed_points_inner(psi.fun, psi.fun.ctx->class_of_mask(local));

    MackeyFunctor phi = geometric_fixed_points_inner(m, hp_cid);
    const std::vector<int>& into_w = ctx.classes[hp_cid].weyl_coset_of;
    Mask sbar = mask_empty();
    for (int x : ctx.subgroups[hcls.rep_subgroup].elems)
        if (into_w[x] >= 0) mask_set(sbar, into_w[x]);
    MackeyFunctor rhs = categorical_fixed_points(phi, phi.ctx->class_of_mask(sbar)).fun;

    if (lhs.ctx->group.order != rhs.ctx->group.order) {
        if (why) *why = "the two composites live over groups of different order";
        return false;
    }
    return mackey_profile_equal(lhs, rhs, why);
}

GreenPairing burnside_green(std::shared_ptr<const GroupContext> ctx, const CoeffRing& ring) {
    GreenPairing p;
    p.m1 = burnside_mackey(ctx, ring);
    p.m2 = p.m1;
    p.m3 = p.m1;
    const LocalLattice& lat = *p.m1.lat;
    for (int i = 0; i < int(ctx->classes.size()); ++i) {
        const Mask hmask = ctx->subgroups[ctx->classes[i].rep_subgroup].mask;
        int rank = int(lat.locals[i].size());
        Mat mu(rank, rank * rank);
        for (int a = 0; a < rank; ++a)
            for (int b = 0; b < rank; ++b)
                for (const DoubleCoset& dc :
                     double_cosets(*ctx, ctx->subgroups[lat.locals[i][a]].mask,
                                   ctx->subgroups[lat.locals[i][b]].mask, hmask)) {
                    int v = ctx->subgroup_index(dc.stab);
                    mu.at(lat.local_of[i][v].first, a * rank + b) += 1;
                }
        p.mu.push_back(mu);
    }
    return p;
}

AxiomReport check_green(const GreenPairing& p) {
    AxiomReport rep;
    auto fail = [&](const std::string& s) {
        rep.pass = false;
        rep.violations.push_back(s);
    };
    const GroupContext& ctx = *p.m1.ctx;
    int nc = int(ctx.classes.size());
    if (int(p.mu.size()) != nc) {
        fail("malformed: pairing family size");
        return rep;
    }
    for (int i = 0; i < nc; ++i)
        if (p.mu[i].rows != p.m3.value[i].gens ||
            p.mu[i].cols != p.m1.value[i].gens * p.m2.value[i].gens) {
            fail("malformed: pairing shape at " + clabel(ctx, i));
            return rep;
        }

    auto col = [&](const Mat& mu, int g2, int a, int b) { return mu.col(a * g2 + b); };

    for (int i = 0; i < nc; ++i) {
        int g1 = p.m1.value[i].gens, g2 = p.m2.value[i].gens;
        const std::string& lb = clabel(ctx, i);
        for (int l = 0; l < int(p.m1.res[i].size()); ++l) {
            int j = ctx.subgroups[p.m1.lat->locals[i][l]].class_id;
            int h1 = p.m1.value[j].gens, h2 = p.m2.value[j].gens;
            const Mat& r1 = p.m1.res[i][l].matrix;
            const Mat& r2 = p.m2.res[i][l].matrix;
            const Mat& r3 = p.m3.res[i][l].matrix;
            const Mat& t1 = p.m1.tr[i][l].matrix;
            const Mat& t2 = p.m2.tr[i][l].matrix;
            const Mat& t3 = p.m3.tr[i][l].matrix;
            std::string at = " at (" + lb + ", local " + std::to_string(l) + ")";

            for (int a = 0; a < g1; ++a)
                for (int b = 0; b < g2; ++b) {
                    Mat lhs = r3.mul(col(p.mu[i], g2, a, b));
                    Mat rhs(p.m3.value[j].gens, 1);
                    for (int x = 0; x < h1; ++x) {
                        if (r1.at(x, a) == 0) continue;
                        for (int y = 0; y < h2; ++y) {
                            if (r2.at(y, b) == 0) continue;
                            add_block(rhs, 0, 0, col(p.mu[j], h2, x, y),
                                      r1.at(x, a) * r2.at(y, b));
                        }
                    }
                    if (!vec_in_span(p.m3.value[j], lhs.sub(rhs).col_vec(0)))
                        fail("product restriction" + at + " pair (" + std::to_string(a) + ", " +
                             std::to_string(b) + ")");
                }

            for (int ap = 0; ap < h1; ++ap)
                for (int b = 0; b < g2; ++b) {
                    Mat lhs(p.m3.value[i].gens, 1);
                    for (int x = 0; x < g1; ++x)
                        if (t1.at(x, ap) != 0)
                            add_block(lhs, 0, 0, col(p.mu[i], g2, x, b), t1.at(x, ap));
                    Mat inner(p.m3.value[j].gens, 1);
                    for (int y = 0; y < h2; ++y)
                        if (r2.at(y, b) != 0)
                            add_block(inner, 0, 0, col(p.mu[j], h2, ap, y), r2.at(y, b));
                    Mat rhs = t3.mul(inner);
                    if (!vec_in_span(p.m3.value[i], lhs.sub(rhs).col_vec(0)))
                        fail("projection formula" + at + " pair (" + std::to_string(ap) + ", " +
                             std::to_string(b) + ")");
                }

            for (int a = 0; a < g1; ++a)
                for (int bp = 0; bp < h2; ++bp) {
                    Mat lhs(p.m3.value[i].gens, 1);
                    for (int y = 0; y < g2; ++y)
                        if (t2.at(y, bp) != 0)
                            add_block(lhs, 0, 0, col(p.mu[i], g2, a, y), t2.at(y, bp));
                    Mat inner(p.m3.value[j].gens, 1);
                    for (int x = 0; x < h1; ++x)
                        if (r1.at(x, a) != 0)
                            add_block(inner, 0, 0, col(p.mu[j], h2, x, bp), r1.at(x, a));
                    Mat rhs = t3.mul(inner);
                    if (!vec_in_span(p.m3.value[i], lhs.sub(rhs).col_vec(0)))
                        fail("dual projection formula" + at + " pair (" + std::to_string(a) +
                             ", " + std::to_string(bp) + ")");
                }
        }
    }
    return rep;
}

}  // namespace mackeylab
