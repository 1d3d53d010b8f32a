#include "mackeylab/burnside.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mackeylab {

static std::vector<int> mask_elems(const Mask& m, int order) {
    std::vector<int> v;
    for (int i = 0; i < order; ++i)
        if (mask_get(m, i)) v.push_back(i);
    return v;
}

SpanKey canonical_span(const GroupContext& ctx, const GSet& s1, const GSet& s2, int p1, int p2,
                       Mask u) {
    const FiniteGroup& g = ctx.group;
    Mask st = mask_and(stabilizer_mask(s1, p1), stabilizer_mask(s2, p2));
    if (mask_and(u, st) != u) throw InputError("span subgroup does not stabilize the pair");
    SpanKey best;
    bool have = false;
    for (int x = 0; x < g.order; ++x) {
        SpanKey cand;
        cand.p1 = s1.apply(x, p1);
        cand.p2 = s2.apply(x, p2);
        cand.stab = conjugate_mask(g, u, x);
        cand.stab_elems = mask_elems(cand.stab, g.order);
        if (!have || cand < best) {
            best = std::move(cand);
            have = true;
        }
    }
    return best;
}

bool same_gset(const GSet& a, const GSet& b) {
    return a.g == b.g && a.n == b.n && a.act == b.act;
}

BurnsideElement zero_element(const GSet& s1, const GSet& s2) {
    BurnsideElement e;
    e.source = s1;
    e.target = s2;
    return e;
}

BurnsideElement basis_span(const GroupContext& ctx, const GSet& s1, const GSet& s2,
                           const SpanKey& k) {
    BurnsideElement e = zero_element(s1, s2);
    e.coeffs[canonical_span(ctx, s1, s2, k.p1, k.p2, k.stab)] = 1;
    return e;
}

BurnsideElement identity_element(const GroupContext& ctx, const GSet& s) {
    BurnsideElement e = zero_element(s, s);
    for (const auto& orb : orbits(s)) {
        int p = orb.front();
        e.coeffs[canonical_span(ctx, s, s, p, p, stabilizer_mask(s, p))] += 1;
    }
    return e;
}

static void prune(BurnsideElement& e) {
    for (auto it = e.coeffs.begin(); it != e.coeffs.end();)
        it = it->second == 0 ? e.coeffs.erase(it) : std::next(it);
}

BurnsideElement add(const BurnsideElement& a, const BurnsideElement& b) {
    if (!same_gset(a.source, b.source) || !same_gset(a.target, b.target))
        throw InputError("sum of spans with different ends");
    BurnsideElement e = a;
    for (const auto& [k, c] : b.coeffs) e.coeffs[k] += c;
    prune(e);
    return e;
}

BurnsideElement scale(const Int& c, const BurnsideElement& a) {
    BurnsideElement e = a;
    for (auto& [k, v] : e.coeffs) v *= c;
    prune(e);
    return e;
}

bool equal_elements(const BurnsideElement& a, const BurnsideElement& b) {
    if (!same_gset(a.source, b.source) || !same_gset(a.target, b.target)) return false;
    BurnsideElement x = a, y = b;
    prune(x);
    prune(y);
    return x.coeffs == y.coeffs;
}

std::vector<SpanKey> hom_basis(const GroupContext& ctx, const GSet& s1, const GSet& s2) {
    std::map<SpanKey, char> seen;
    GSet prod = product(s1, s2);
    for (const auto& orb : orbits(prod)) {
        int x = orb.front();
        int p1 = x / s2.n, p2 = x % s2.n;
        Mask st = stabilizer_mask(prod, x);
        for (const auto& sub : ctx.subgroups)
            if (mask_and(sub.mask, st) == sub.mask)
                seen[canonical_span(ctx, s1, s2, p1, p2, sub.mask)] = 1;
    }
    std::vector<SpanKey> out;
    for (const auto& [k, v] : seen) out.push_back(k);
    return out;
}

Span realize_span(const GroupContext& ctx, const GSet& s1, const GSet& s2, const SpanKey& k) {
    const FiniteGroup& g = ctx.group;
    // cosets of the stabilizing subgroup, minimal representatives first
    std::vector<int> coset_of(g.order, -1), coset_rep;
    for (int x = 0; x < g.order; ++x) {
        if (coset_of[x] >= 0) continue;
        int c = int(coset_rep.size());
        coset_rep.push_back(x);
        for (int u : k.stab_elems) coset_of[g.mul(x, u)] = c;
    }
    Span sp;
    sp.middle.g = &ctx.group;
    sp.middle.n = int(coset_rep.size());
    sp.middle.name = "G/" + ctx.classes[ctx.class_of_mask(k.stab)].label;
    sp.middle.act.resize(size_t(g.order) * sp.middle.n);
    for (int a = 0; a < g.order; ++a)
        for (int p = 0; p < sp.middle.n; ++p)
            sp.middle.act[size_t(a) * sp.middle.n + p] = coset_of[g.mul(a, coset_rep[p])];
    sp.left.source = sp.middle;
    sp.left.target = s1;
    sp.right.source = sp.middle;
    sp.right.target = s2;
    for (int p = 0; p < sp.middle.n; ++p) {
        sp.left.f.push_back(s1.apply(coset_rep[p], k.p1));
        sp.right.f.push_back(s2.apply(coset_rep[p], k.p2));
    }
    return sp;
}

static BurnsideElement compose_basis(const GroupContext& ctx, const GSet& s1, const GSet& s2,
                                     const GSet& s3, const SpanKey& a, const SpanKey& b) {
    Span sa = realize_span(ctx, s1, s2, a);
    Span sb = realize_span(ctx, s2, s3, b);
    FiberedProduct fp = fibered_product(sa.right, sb.left);
    BurnsideElement out = zero_element(s1, s3);
    for (const auto& orb : orbits(fp.set)) {
        int i = orb.front();
        int ta = fp.pts[i].first, tb = fp.pts[i].second;
        out.coeffs[canonical_span(ctx, s1, s3, sa.left.f[ta], sb.right.f[tb],
                                  stabilizer_mask(fp.set, i))] += 1;
    }
    return out;
}

BurnsideElement span_compose(const GroupContext& ctx, const BurnsideElement& a,
                             const BurnsideElement& b) {
    if (!same_gset(a.target, b.source))
        throw InputError("span composition with mismatched middle object");
    BurnsideElement out = zero_element(a.source, b.target);
    for (const auto& [ka, ca] : a.coeffs)
        for (const auto& [kb, cb] : b.coeffs) {
            BurnsideElement piece = compose_basis(ctx, a.source, a.target, b.target, ka, kb);
            for (const auto& [k, c] : piece.coeffs) out.coeffs[k] += ca * cb * c;
        }
    prune(out);
    return out;
}

BurnsideElement central_spans(const GroupContext& ctx, const GSet& s, const GSet& s0) {
    GSet prod = product(s, s0);
    BurnsideElement out = zero_element(s, s);
    for (const auto& orb : orbits(prod)) {
        int x = orb.front();
        int p = x / s0.n;
        out.coeffs[canonical_span(ctx, s, s, p, p, stabilizer_mask(prod, x))] += 1;
    }
    prune(out);
    return out;
}

std::vector<Int> a_coeffs(const GroupContext& ctx, const BurnsideElement& e) {
    if (e.source.n != 1 || e.target.n != 1)
        throw InputError("orbit-basis coefficients need a one-point source and target");
    std::vector<Int> out(ctx.classes.size(), 0);
    for (const auto& [k, c] : e.coeffs) out[ctx.class_of_mask(k.stab)] += c;
    return out;
}

BurnsideElement a_element(const GroupContext& ctx, const std::vector<Int>& by_class) {
    if (by_class.size() != ctx.classes.size()) throw InputError("coefficient vector has wrong size");
    GSet pt = one_point(ctx);
    BurnsideElement e = zero_element(pt, pt);
    for (int cid = 0; cid < int(ctx.classes.size()); ++cid) {
        if (by_class[cid] == 0) continue;
        SpanKey k;
        k.p1 = k.p2 = 0;
        k.stab = ctx.subgroups[ctx.classes[cid].rep_subgroup].mask;
        k.stab_elems = ctx.subgroups[ctx.classes[cid].rep_subgroup].elems;
        e.coeffs[k] = by_class[cid];
    }
    return e;
}

BurnsideElement of_gset(const GroupContext& ctx, const GSet& s) {
    std::vector<Int> v(ctx.classes.size(), 0);
    for (int cid : orbit_form(ctx, s)) v[cid] += 1;
    return a_element(ctx, v);
}

std::vector<Int> burnside_product_with(const RingConstants& cc, const std::vector<Int>& a,
                                       const std::vector<Int>& b) {
    int nc = int(cc.size());
    if (int(a.size()) != nc || int(b.size()) != nc)
        throw InputError("coefficient vector has wrong size");
    std::vector<Int> out(nc, 0);
    for (int i = 0; i < nc; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < nc; ++j) {
            if (b[j] == 0) continue;
            for (const auto& [k, c] : cc[i][j]) out[k] += a[i] * b[j] * c;
        }
    }
    return out;
}

std::vector<Int> burnside_product(const GroupContext& ctx, const std::vector<Int>& a,
                                  const std::vector<Int>& b) {
    return burnside_product_with(burnside_ring_constants(ctx), a, b);
}

RingConstants burnside_ring_constants(const GroupContext& ctx) {
    int nc = int(ctx.classes.size());
    Mask full = ctx.subgroups[ctx.classes[nc - 1].rep_subgroup].mask;
    RingConstants out(nc, std::vector<std::vector<std::pair<int, Int>>>(nc));
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j) {
            std::map<int, Int> acc;
            auto dcs = double_cosets(ctx, ctx.subgroups[ctx.classes[i].rep_subgroup].mask,
                                     ctx.subgroups[ctx.classes[j].rep_subgroup].mask, full);
            for (const auto& dc : dcs) acc[ctx.class_of_mask(dc.stab)] += 1;
            for (const auto& [k, c] : acc) out[i][j].push_back({k, c});
        }
    return out;
}

MarksTable table_of_marks(const GroupContext& ctx) {
    int nc = int(ctx.classes.size());
    MarksTable t;
    t.entries.assign(nc, std::vector<Int>(nc, 0));
    for (int k = 0; k < nc; ++k) {
        GSet orb = standard_orbit(ctx, k);
        for (int h = 0; h < nc; ++h)
            t.entries[k][h] = Int(fixed_points(ctx, orb, h).points.size());
    }
    return t;
}

std::vector<Int> ghost(const GroupContext& ctx, const MarksTable& marks,
                       const std::vector<Int>& a) {
    int nc = int(ctx.classes.size());
    if (int(a.size()) != nc) throw InputError("coefficient vector has wrong size");
    std::vector<Int> out(nc, 0);
    for (int h = 0; h < nc; ++h)
        for (int k = 0; k < nc; ++k) out[h] += a[k] * marks.entries[k][h];
    return out;
}

std::string a_to_string(const GroupContext& ctx, const std::vector<Int>& a) {
    std::ostringstream os;
    bool first = true;
    for (int cid = 0; cid < int(a.size()); ++cid) {
        if (a[cid] == 0) continue;
        Int c = a[cid];
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Int mag = c < 0 ? Int(-c) : c;
        if (mag != 1) os << mag.str();
        os << "[G/" << ctx.classes[cid].label << "]";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::string marks_to_string(const GroupContext& ctx, const MarksTable& marks) {
    int nc = int(ctx.classes.size());
    std::vector<std::string> row_labels(nc), col_labels(nc);
    size_t rw = 0;
    for (int i = 0; i < nc; ++i) {
        row_labels[i] = "[G/" + ctx.classes[i].label + "]";
        col_labels[i] = ctx.classes[i].label;
        rw = std::max(rw, row_labels[i].size());
    }
    std::vector<size_t> cw(nc);
    for (int h = 0; h < nc; ++h) {
        cw[h] = col_labels[h].size();
        for (int k = 0; k < nc; ++k) cw[h] = std::max(cw[h], marks.entries[k][h].str().size());
    }
    std::ostringstream os;
    os << std::string(rw, ' ');
    for (int h = 0; h < nc; ++h)
        os << "  " << std::string(cw[h] - col_labels[h].size(), ' ') << col_labels[h];
    os << "\n";
    for (int k = 0; k < nc; ++k) {
        os << row_labels[k] << std::string(rw - row_labels[k].size(), ' ');
        for (int h = 0; h < nc; ++h) {
            std::string v = marks.entries[k][h].str();
            os << "  " << std::string(cw[h] - v.size(), ' ') << v;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace mackeylab
