#include "mackeylab/groups.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace mackeylab {

static std::vector<int> mask_elems(const Mask& m, int order) {
    std::vector<int> v;
    for (int i = 0; i < order; ++i)
        if (mask_get(m, i)) v.push_back(i);
    return v;
}

int FiniteGroup::element_order(int a) const {
    int k = 1, x = a;
    while (x != 0) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

long group_order_bound() {
    long bound = 96;
    if (const char* env = std::getenv("MACKEYLAB_MAX_GROUP_ORDER")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) bound = v;
    }
    return std::min(bound, 128L);
}

static void check_order(long n) {
    if (n < 1) throw InputError("group order must be positive");
    if (n > group_order_bound())
        throw DomainError("group order " + std::to_string(n) + " exceeds bound " +
                          std::to_string(group_order_bound()));
}

FiniteGroup make_cyclic(int n) {
    check_order(n);
    FiniteGroup g;
    g.order = n;
    g.name = "cyclic:" + std::to_string(n);
    g.mul_table.resize(size_t(n) * n);
    g.inv_table.resize(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) g.mul_table[size_t(a) * n + b] = (a + b) % n;
        g.inv_table[a] = (n - a) % n;
    }
    return g;
}

FiniteGroup make_from_table(const std::vector<std::vector<int>>& mul) {
    int n = int(mul.size());
    check_order(n);
    FiniteGroup g;
    g.order = n;
    g.name = "table:" + std::to_string(n);
    g.mul_table.resize(size_t(n) * n);
    for (int a = 0; a < n; ++a) {
        if (int(mul[a].size()) != n) throw InputError("multiplication table is not square");
        for (int b = 0; b < n; ++b) {
            int v = mul[a][b];
            if (v < 0 || v >= n) throw InputError("multiplication table entry out of range");
            g.mul_table[size_t(a) * n + b] = v;
        }
    }
    for (int a = 0; a < n; ++a)
        if (g.mul(0, a) != a || g.mul(a, 0) != a)
            throw InputError("element 0 is not an identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw InputError("multiplication table is not associative");
    g.inv_table.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (g.mul(a, b) == 0 && g.mul(b, a) == 0) {
                g.inv_table[a] = b;
                break;
            }
        if (g.inv_table[a] < 0) throw InputError("element has no inverse");
    }
    return g;
}

FiniteGroup make_from_perms(int degree, const std::vector<std::vector<int>>& gens) {
    if (degree < 1) throw InputError("permutation degree must be positive");
    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);
    for (const auto& p : gens) {
        if (int(p.size()) != degree) throw InputError("generator has wrong degree");
        std::vector<char> seen(degree, 0);
        for (int v : p) {
            if (v < 0 || v >= degree || seen[v]) throw InputError("generator is not a permutation");
            seen[v] = 1;
        }
    }
    std::set<std::vector<int>> elems{id};
    std::vector<std::vector<int>> queue{id};
    long bound = group_order_bound();
    while (!queue.empty()) {
        std::vector<int> cur = queue.back();
        queue.pop_back();
        for (const auto& p : gens) {
            std::vector<int> next(degree);
            for (int x = 0; x < degree; ++x) next[x] = p[cur[x]];
            if (elems.insert(next).second) {
                if (long(elems.size()) > bound)
                    throw DomainError("permutation group order exceeds bound " +
                                      std::to_string(bound));
                queue.push_back(next);
            }
        }
    }
    std::vector<std::vector<int>> list(elems.begin(), elems.end());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < int(list.size()); ++i) index[list[i]] = i;
    int n = int(list.size());
    FiniteGroup g;
    g.order = n;
    g.name = "perm:" + std::to_string(degree);
    g.mul_table.resize(size_t(n) * n);
    g.inv_table.resize(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            std::vector<int> prod(degree);
            for (int x = 0; x < degree; ++x) prod[x] = list[a][list[b][x]];
            g.mul_table[size_t(a) * n + b] = index.at(prod);
        }
        std::vector<int> iv(degree);
        for (int x = 0; x < degree; ++x) iv[list[a][x]] = x;
        g.inv_table[a] = index.at(iv);
    }
    return g;
}

FiniteGroup make_dihedral(int n) {
    if (n < 2) throw InputError("dihedral parameter must be at least 2");
    if (n == 2) {
        // two independent swaps; on 2 points the reflection would collapse
        FiniteGroup g = make_from_perms(4, {{1, 0, 2, 3}, {0, 1, 3, 2}});
        g.name = "dihedral:2";
        return g;
    }
    std::vector<int> rot(n), refl(n);
    for (int x = 0; x < n; ++x) {
        rot[x] = (x + 1) % n;
        refl[x] = (n - x) % n;
    }
    FiniteGroup g = make_from_perms(n, {rot, refl});
    g.name = "dihedral:" + std::to_string(n);
    return g;
}

FiniteGroup make_klein() {
    FiniteGroup g = make_dihedral(2);
    g.name = "klein";
    return g;
}

FiniteGroup make_q8() {
    // elements: 1, -1, i, -i, j, -j, k, -k as signed basis pairs
    auto enc = [](int sign, int axis) { return axis * 2 + (sign < 0 ? 1 : 0); };
    auto sign_of = [](int e) { return e % 2 ? -1 : 1; };
    auto axis_of = [](int e) { return e / 2; };
    // axis product table over 1,i,j,k with resulting sign
    static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sg[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    std::vector<std::vector<int>> mul(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int s = sign_of(a) * sign_of(b) * sg[axis_of(a)][axis_of(b)];
            mul[a][b] = enc(s, ax[axis_of(a)][axis_of(b)]);
        }
    FiniteGroup g = make_from_table(mul);
    g.name = "q8";
    return g;
}

FiniteGroup make_sym(int n) {
    if (n < 1 || n > 5) throw InputError("symmetric group parameter must be 1..5");
    if (n == 1) {
        FiniteGroup g = make_cyclic(1);
        g.name = "sym:1";
        return g;
    }
    std::vector<int> swap01(n), cyc(n);
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    for (int x = 0; x < n; ++x) cyc[x] = (x + 1) % n;
    FiniteGroup g = make_from_perms(n, {swap01, cyc});
    g.name = "sym:" + std::to_string(n);
    return g;
}

Mask closure_mask(const FiniteGroup& g, const std::vector<int>& gens) {
    Mask m = mask_empty();
    mask_set(m, 0);
    std::vector<int> have{0}, queue{0};
    for (int x : gens)
        if (!mask_get(m, x)) {
            mask_set(m, x);
            have.push_back(x);
            queue.push_back(x);
        }
    while (!queue.empty()) {
        int x = queue.back();
        queue.pop_back();
        size_t known = have.size();
        for (size_t i = 0; i < known; ++i) {
            for (int p : {g.mul(x, have[i]), g.mul(have[i], x)}) {
                if (!mask_get(m, p)) {
                    mask_set(m, p);
                    have.push_back(p);
                    queue.push_back(p);
                }
            }
        }
    }
    return m;
}

Mask conjugate_mask(const FiniteGroup& g, const Mask& m, int by) {
    Mask r = mask_empty();
    for (int x = 0; x < g.order; ++x)
        if (mask_get(m, x)) mask_set(r, g.conj(by, x));
    return r;
}

Mask normalizer_mask(const FiniteGroup& g, const Mask& m) {
    Mask r = mask_empty();
    for (int x = 0; x < g.order; ++x)
        if (conjugate_mask(g, m, x) == m) mask_set(r, x);
    return r;
}

Mask centralizer_mask(const FiniteGroup& g, const Mask& m) {
    Mask r = mask_empty();
    for (int x = 0; x < g.order; ++x) {
        bool central = true;
        for (int y = 0; y < g.order && central; ++y)
            if (mask_get(m, y) && g.mul(x, y) != g.mul(y, x)) central = false;
        if (central) mask_set(r, x);
    }
    return r;
}

static FiniteGroup subgroup_as_group(const FiniteGroup& g, const std::vector<int>& elems,
                                     std::vector<int>& index_of) {
    int n = int(elems.size());
    index_of.assign(g.order, -1);
    for (int i = 0; i < n; ++i) index_of[elems[i]] = i;
    FiniteGroup h;
    h.order = n;
    h.mul_table.resize(size_t(n) * n);
    h.inv_table.resize(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) h.mul_table[size_t(a) * n + b] = index_of[g.mul(elems[a], elems[b])];
        h.inv_table[a] = index_of[g.inv(elems[a])];
    }
    return h;
}

// Quotient N/H by cosets; coset 0 contains the identity, cosets sorted by
// minimal representative.
static FiniteGroup coset_group(const FiniteGroup& g, const std::vector<int>& n_elems,
                               const Mask& h, std::vector<int>& coset_of,
                               std::vector<int>& coset_rep) {
    coset_of.assign(g.order, -1);
    coset_rep.clear();
    for (int x : n_elems) {
        if (coset_of[x] >= 0) continue;
        int c = int(coset_rep.size());
        coset_rep.push_back(x);
        for (int u = 0; u < g.order; ++u)
            if (mask_get(h, u)) coset_of[g.mul(x, u)] = c;
    }
    int q = int(coset_rep.size());
    FiniteGroup w;
    w.order = q;
    w.mul_table.resize(size_t(q) * q);
    w.inv_table.resize(q);
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b)
            w.mul_table[size_t(a) * q + b] = coset_of[g.mul(coset_rep[a], coset_rep[b])];
        w.inv_table[a] = coset_of[g.inv(coset_rep[a])];
    }
    return w;
}

CosetDecomp left_cosets(const FiniteGroup& g, const Mask& h) {
    CosetDecomp d;
    d.coset_of.assign(g.order, -1);
    for (int x = 0; x < g.order; ++x) {
        if (d.coset_of[x] >= 0) continue;
        int c = int(d.reps.size());
        d.reps.push_back(x);
        for (int u = 0; u < g.order; ++u)
            if (mask_get(h, u)) d.coset_of[g.mul(x, u)] = c;
    }
    return d;
}

static bool subgroup_is_cyclic(const FiniteGroup& g, const std::vector<int>& elems) {
    for (int x : elems)
        if (g.element_order(x) == int(elems.size())) return true;
    return false;
}

GroupContext make_context(FiniteGroup grp) {
    GroupContext ctx;
    ctx.group = std::move(grp);
    const FiniteGroup& g = ctx.group;

    // all subgroups, by breadth-first closure over added generators
    std::set<Mask> seen;
    Mask triv = mask_empty();
    mask_set(triv, 0);
    seen.insert(triv);
    std::vector<Mask> queue{triv};
    while (!queue.empty()) {
        Mask cur = queue.back();
        queue.pop_back();
        std::vector<int> gens = mask_elems(cur, g.order);
        for (int x = 0; x < g.order; ++x) {
            if (mask_get(cur, x)) continue;
            gens.push_back(x);
            Mask next = closure_mask(g, gens);
            gens.pop_back();
            if (seen.insert(next).second) queue.push_back(next);
        }
    }

    for (const Mask& m : seen) {
        Subgroup s;
        s.mask = m;
        s.elems = mask_elems(m, g.order);
        s.order = int(s.elems.size());
        ctx.subgroups.push_back(std::move(s));
    }
    std::sort(ctx.subgroups.begin(), ctx.subgroups.end(),
              [](const Subgroup& a, const Subgroup& b) {
                  if (a.order != b.order) return a.order < b.order;
                  return a.elems < b.elems;
              });
    for (int i = 0; i < int(ctx.subgroups.size()); ++i)
        ctx.subgroup_of_mask[ctx.subgroups[i].mask] = i;

    // conjugacy classes, each keyed by its minimal member
    std::vector<int> class_of(ctx.subgroups.size(), -1);
    for (int i = 0; i < int(ctx.subgroups.size()); ++i) {
        if (class_of[i] >= 0) continue;
        SubgroupClass cls;
        cls.rep_subgroup = i;
        cls.order = ctx.subgroups[i].order;
        int cid = int(ctx.classes.size());
        for (int x = 0; x < g.order; ++x) {
            Mask cm = conjugate_mask(g, ctx.subgroups[i].mask, x);
            int j = ctx.subgroup_of_mask.at(cm);
            if (class_of[j] < 0) {
                class_of[j] = cid;
                ctx.subgroups[j].class_id = cid;
                ctx.subgroups[j].witness = x;
                cls.members.push_back(j);
            }
        }
        std::sort(cls.members.begin(), cls.members.end());
        ctx.classes.push_back(std::move(cls));
    }

    // per-class structure
    std::map<std::string, int> label_uses;
    for (auto& cls : ctx.classes) {
        const Subgroup& rep = ctx.subgroups[cls.rep_subgroup];
        Mask nm = normalizer_mask(g, rep.mask);
        Mask zm = centralizer_mask(g, rep.mask);
        cls.normalizer_sub = ctx.subgroup_of_mask.at(nm);
        cls.centralizer_sub = ctx.subgroup_of_mask.at(zm);
        cls.is_normal = mask_count(nm) == g.order;
        cls.weyl = coset_group(g, ctx.subgroups[cls.normalizer_sub].elems, rep.mask,
                               cls.weyl_coset_of, cls.weyl_rep);
        cls.sub = subgroup_as_group(g, rep.elems, cls.sub_index_of);
        cls.sub_elem = rep.elems;
        cls.sub.name = g.name + "|sub";

        std::string base;
        if (cls.order == 1)
            base = "e";
        else if (subgroup_is_cyclic(g, rep.elems))
            base = "C" + std::to_string(cls.order);
        else if (cls.order == 4)
            base = "V4";
        else
            base = "H" + std::to_string(cls.order);
        int uses = label_uses[base]++;
        cls.label = base + std::string(uses, '\'');
        cls.weyl.name = g.name + "|W(" + cls.label + ")";
        cls.sub.name = g.name + "|" + cls.label;
    }
    return ctx;
}

int GroupContext::subgroup_index(const Mask& m) const {
    auto it = subgroup_of_mask.find(m);
    if (it == subgroup_of_mask.end()) throw DomainError("not a subgroup");
    return it->second;
}

int GroupContext::class_of_mask(const Mask& m) const {
    return subgroups[subgroup_index(m)].class_id;
}

int GroupContext::class_by_label(const std::string& l) const {
    for (int i = 0; i < int(classes.size()); ++i)
        if (classes[i].label == l) return i;
    throw DomainError("no subgroup class labeled " + l);
}

GSet validate_gset(GSet s) {
    if (!s.g) throw InputError("action over no group");
    if (int(s.act.size()) != s.g->order * s.n) throw InputError("action table has wrong size");
    for (int v : s.act)
        if (v < 0 || v >= s.n) throw InputError("action table entry out of range");
    for (int p = 0; p < s.n; ++p)
        if (s.apply(0, p) != p) throw InputError("identity does not act trivially");
    for (int a = 0; a < s.g->order; ++a)
        for (int b = 0; b < s.g->order; ++b) {
            int ab = s.g->mul(a, b);
            for (int p = 0; p < s.n; ++p)
                if (s.apply(a, s.apply(b, p)) != s.apply(ab, p))
                    throw InputError("action table is not associative");
        }
    return s;
}

GMap validate_gmap(GMap m) {
    if (m.source.g != m.target.g) throw InputError("map between sets over different groups");
    if (int(m.f.size()) != m.source.n) throw InputError("map has wrong size");
    for (int v : m.f)
        if (v < 0 || v >= m.target.n) throw InputError("map value out of range");
    for (int a = 0; a < m.source.g->order; ++a)
        for (int p = 0; p < m.source.n; ++p)
            if (m.f[m.source.apply(a, p)] != m.target.apply(a, m.f[p]))
                throw InputError("map is not equivariant");
    return m;
}

std::vector<std::vector<int>> orbits(const GSet& s) {
    std::vector<int> owner = orbit_of_point(s);
    int k = owner.empty() ? 0 : *std::max_element(owner.begin(), owner.end()) + 1;
    std::vector<std::vector<int>> out(k);
    for (int p = 0; p < s.n; ++p) out[owner[p]].push_back(p);
    return out;
}

std::vector<int> orbit_of_point(const GSet& s) {
    std::vector<int> owner(s.n, -1);
    int k = 0;
    for (int p = 0; p < s.n; ++p) {
        if (owner[p] >= 0) continue;
        for (int a = 0; a < s.g->order; ++a) owner[s.apply(a, p)] = k;
        ++k;
    }
    return owner;
}

Mask stabilizer_mask(const GSet& s, int p) {
    Mask m = mask_empty();
    for (int a = 0; a < s.g->order; ++a)
        if (s.apply(a, p) == p) mask_set(m, a);
    return m;
}

std::vector<int> orbit_form(const GroupContext& ctx, const GSet& s) {
    std::vector<int> form;
    for (const auto& orb : orbits(s))
        form.push_back(ctx.class_of_mask(stabilizer_mask(s, orb.front())));
    std::sort(form.begin(), form.end());
    return form;
}

std::vector<OrbitPiece> orbit_decompose(const GroupContext& ctx, const GSet& s) {
    std::vector<int> form = orbit_form(ctx, s);
    std::vector<OrbitPiece> out;
    for (int cid : form) {
        if (!out.empty() && out.back().class_id == cid)
            ++out.back().count;
        else
            out.push_back({cid, 1});
    }
    return out;
}

GSet standard_orbit(const GroupContext& ctx, int class_id) {
    const FiniteGroup& g = ctx.group;
    const Mask& h = ctx.subgroups[ctx.classes[class_id].rep_subgroup].mask;
    std::vector<int> coset_of, coset_rep;
    std::vector<int> all(g.order);
    std::iota(all.begin(), all.end(), 0);
    coset_group(g, all, h, coset_of, coset_rep);  // left cosets of h in g
    GSet s;
    s.g = &ctx.group;
    s.n = int(coset_rep.size());
    s.name = "G/" + ctx.classes[class_id].label;
    s.act.resize(size_t(g.order) * s.n);
    for (int a = 0; a < g.order; ++a)
        for (int p = 0; p < s.n; ++p) s.act[size_t(a) * s.n + p] = coset_of[g.mul(a, coset_rep[p])];
    return s;
}

GSet from_orbit_pieces(const GroupContext& ctx, const std::vector<OrbitPiece>& pieces) {
    GSet out;
    out.g = &ctx.group;
    out.n = 0;
    bool first = true;
    for (const auto& piece : pieces) {
        if (piece.count < 0) throw InputError("negative orbit multiplicity");
        GSet orb = standard_orbit(ctx, piece.class_id);
        for (int i = 0; i < piece.count; ++i) {
            if (first) {
                out = orb;
                first = false;
            } else {
                out = disjoint_union(out, orb);
            }
        }
    }
    if (first) {
        out.act.clear();
        out.name = "0";
    }
    return out;
}

GSet disjoint_union(const GSet& a, const GSet& b) {
    if (a.g != b.g) throw InputError("union of sets over different groups");
    GSet s;
    s.g = a.g;
    s.n = a.n + b.n;
    s.name = a.name + " + " + b.name;
    s.act.resize(size_t(a.g->order) * s.n);
    for (int x = 0; x < a.g->order; ++x) {
        for (int p = 0; p < a.n; ++p) s.act[size_t(x) * s.n + p] = a.apply(x, p);
        for (int p = 0; p < b.n; ++p) s.act[size_t(x) * s.n + a.n + p] = a.n + b.apply(x, p);
    }
    return s;
}

GSet product(const GSet& a, const GSet& b) {
    if (a.g != b.g) throw InputError("product of sets over different groups");
    GSet s;
    s.g = a.g;
    s.n = a.n * b.n;
    s.name = "(" + a.name + ")x(" + b.name + ")";
    s.act.resize(size_t(a.g->order) * s.n);
    for (int x = 0; x < a.g->order; ++x)
        for (int p = 0; p < a.n; ++p)
            for (int q = 0; q < b.n; ++q)
                s.act[size_t(x) * s.n + p * b.n + q] = a.apply(x, p) * b.n + b.apply(x, q);
    return s;
}

GSet one_point(const GroupContext& ctx) {
    GSet s;
    s.g = &ctx.group;
    s.n = 1;
    s.name = "pt";
    s.act.assign(ctx.group.order, 0);
    return s;
}

FixedPointSet fixed_points(const GroupContext& ctx, const GSet& s, int class_id) {
    const SubgroupClass& cls = ctx.classes[class_id];
    const std::vector<int>& helems = ctx.subgroups[cls.rep_subgroup].elems;
    FixedPointSet out;
    for (int p = 0; p < s.n; ++p) {
        bool fixed = true;
        for (int h : helems)
            if (s.apply(h, p) != p) {
                fixed = false;
                break;
            }
        if (fixed) out.points.push_back(p);
    }
    std::vector<int> local(s.n, -1);
    for (int i = 0; i < int(out.points.size()); ++i) local[out.points[i]] = i;
    out.set.g = &cls.weyl;
    out.set.n = int(out.points.size());
    out.set.name = "(" + s.name + ")^" + cls.label;
    out.set.act.resize(size_t(cls.weyl.order) * out.set.n);
    for (int w = 0; w < cls.weyl.order; ++w) {
        int rep = cls.weyl_rep[w];
        for (int i = 0; i < out.set.n; ++i) {
            int q = local[s.apply(rep, out.points[i])];
            if (q < 0) throw DomainError("normalizer does not preserve the fixed points");
            out.set.act[size_t(w) * out.set.n + i] = q;
        }
    }
    return out;
}

FiberedProduct fibered_product(const GMap& f, const GMap& h) {
    if (f.source.g != h.source.g) throw InputError("fibered product over different groups");
    if (f.target.n != h.target.n) throw InputError("fibered product over different targets");
    FiberedProduct out;
    for (int p = 0; p < f.source.n; ++p)
        for (int q = 0; q < h.source.n; ++q)
            if (f.f[p] == h.f[q]) out.pts.push_back({p, q});
    std::map<std::pair<int, int>, int> index;
    for (int i = 0; i < int(out.pts.size()); ++i) index[out.pts[i]] = i;
    out.set.g = f.source.g;
    out.set.n = int(out.pts.size());
    out.set.name = "(" + f.source.name + ")x_B(" + h.source.name + ")";
    out.set.act.resize(size_t(f.source.g->order) * out.set.n);
    for (int a = 0; a < f.source.g->order; ++a)
        for (int i = 0; i < out.set.n; ++i)
            out.set.act[size_t(a) * out.set.n + i] =
                index.at({f.source.apply(a, out.pts[i].first), h.source.apply(a, out.pts[i].second)});
    out.proj1.source = out.set;
    out.proj1.target = f.source;
    out.proj2.source = out.set;
    out.proj2.target = h.source;
    for (const auto& pq : out.pts) {
        out.proj1.f.push_back(pq.first);
        out.proj2.f.push_back(pq.second);
    }
    return out;
}

std::vector<DoubleCoset> double_cosets(const GroupContext& ctx, const Mask& hp, const Mask& hpp,
                                       const Mask& h) {
    const FiniteGroup& g = ctx.group;
    if (mask_and(hp, h) != hp || mask_and(hpp, h) != hpp)
        throw InputError("double cosets require subgroups of the ambient subgroup");
    std::vector<char> taken(g.order, 0);
    std::vector<int> hp_elems = mask_elems(hp, g.order), hpp_elems = mask_elems(hpp, g.order);
    std::vector<DoubleCoset> out;
    for (int s = 0; s < g.order; ++s) {
        if (!mask_get(h, s) || taken[s]) continue;
        DoubleCoset dc;
        dc.witness = s;
        dc.size = 0;
        for (int a : hp_elems)
            for (int b : hpp_elems) {
                int x = g.mul(g.mul(a, s), b);
                if (!taken[x]) {
                    taken[x] = 1;
                    ++dc.size;
                }
            }
        dc.stab = mask_and(hp, conjugate_mask(g, hpp, s));
        out.push_back(dc);
    }
    return out;
}

GSet induce(const GroupContext& ctx, int class_id, const GSet& s_over_sub) {
    const SubgroupClass& cls = ctx.classes[class_id];
    if (s_over_sub.g != &cls.sub) throw InputError("induction needs a set over the subgroup");
    const FiniteGroup& g = ctx.group;
    int ns = s_over_sub.n;
    // pairs (g, s) / (gh, s) ~ (g, h s); class representative = minimal pair
    std::vector<int> owner(size_t(g.order) * ns, -1);
    std::vector<int> reps;
    for (int x = 0; x < g.order; ++x)
        for (int p = 0; p < ns; ++p) {
            size_t idx = size_t(x) * ns + p;
            if (owner[idx] >= 0) continue;
            int c = int(reps.size());
            reps.push_back(int(idx));
            for (int hi = 0; hi < cls.sub.order; ++hi) {
                int gh = g.mul(x, g.inv(cls.sub_elem[hi]));
                int hs = s_over_sub.apply(hi, p);
                owner[size_t(gh) * ns + hs] = c;
            }
        }
    GSet out;
    out.g = &ctx.group;
    out.n = int(reps.size());
    out.name = "ind_" + cls.label + "(" + s_over_sub.name + ")";
    out.act.resize(size_t(g.order) * out.n);
    for (int a = 0; a < g.order; ++a)
        for (int i = 0; i < out.n; ++i) {
            int x = reps[i] / ns, p = reps[i] % ns;
            out.act[size_t(a) * out.n + i] = owner[size_t(g.mul(a, x)) * ns + p];
        }
    return out;
}

GSet restrict_to(const GroupContext& ctx, int class_id, const GSet& s) {
    const SubgroupClass& cls = ctx.classes[class_id];
    if (s.g != &ctx.group) throw InputError("restriction needs a set over the ambient group");
    GSet out;
    out.g = &cls.sub;
    out.n = s.n;
    out.name = "res_" + cls.label + "(" + s.name + ")";
    out.act.resize(size_t(cls.sub.order) * s.n);
    for (int hi = 0; hi < cls.sub.order; ++hi)
        for (int p = 0; p < s.n; ++p) out.act[size_t(hi) * s.n + p] = s.apply(cls.sub_elem[hi], p);
    return out;
}

GMap coset_projection(const GroupContext& ctx, int small_class, int big_class) {
    const Mask& hs = ctx.subgroups[ctx.classes[small_class].rep_subgroup].mask;
    const Mask& hb = ctx.subgroups[ctx.classes[big_class].rep_subgroup].mask;
    if (mask_and(hs, hb) != hs)
        throw DomainError("projection needs nested representative subgroups");
    GMap m;
    m.source = standard_orbit(ctx, small_class);
    m.target = standard_orbit(ctx, big_class);
    m.f.assign(m.source.n, -1);
    for (int g = 0; g < ctx.group.order; ++g) {
        int p = m.source.apply(g, 0);
        if (m.f[p] < 0) m.f[p] = m.target.apply(g, 0);
    }
    return validate_gmap(std::move(m));
}

long hom_count(const GSet& s, const GSet& t) {
    if (s.g != t.g) throw InputError("hom count between sets over different groups");
    long total = 1;
    for (const auto& orb : orbits(s)) {
        Mask stab = stabilizer_mask(s, orb.front());
        std::vector<int> stab_elems = mask_elems(stab, s.g->order);
        long fixed = 0;
        for (int q = 0; q < t.n; ++q) {
            bool ok = true;
            for (int u : stab_elems)
                if (t.apply(u, q) != q) {
                    ok = false;
                    break;
                }
            if (ok) ++fixed;
        }
        total *= fixed;
    }
    return total;
}

}  // namespace mackeylab
