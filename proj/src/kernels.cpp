#include "mackeylab/kernels.hpp"

namespace mackeylab {

MarksTable table_of_marks_parallel(const GroupContext& ctx) {
    int nc = int(ctx.classes.size());
    MarksTable t;
    t.entries.assign(nc, std::vector<Int>(nc, 0));
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < nc; ++k) {
        GSet orb = standard_orbit(ctx, k);
        for (int h = 0; h < nc; ++h)
            t.entries[k][h] = Int(fixed_points(ctx, orb, h).points.size());
    }
    return t;
}

RingConstants burnside_ring_constants_parallel(const GroupContext& ctx) {
    int nc = int(ctx.classes.size());
    Mask full = ctx.subgroups[ctx.classes[nc - 1].rep_subgroup].mask;
    RingConstants out(nc, std::vector<std::vector<std::pair<int, Int>>>(nc));
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < nc * nc; ++p) {
        int i = p / nc, j = p % nc;
        std::map<int, Int> acc;
        auto dcs = double_cosets(ctx, ctx.subgroups[ctx.classes[i].rep_subgroup].mask,
                                 ctx.subgroups[ctx.classes[j].rep_subgroup].mask, full);
        for (const auto& dc : dcs) acc[ctx.class_of_mask(dc.stab)] += 1;
        for (const auto& [k, c] : acc) out[i][j].push_back({k, c});
    }
    return out;
}

AxiomReport check_mackey_axioms_parallel(const MackeyFunctor& m) {
    AxiomReport rep;
    rep.violations = mackey_structural_violations(m);
    if (!rep.violations.empty()) {
        rep.pass = false;
        return rep;
    }
    int nc = int(m.ctx->classes.size());
    for (int stage = 0; stage < 2; ++stage) {
        std::vector<std::vector<std::string>> per(nc);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < nc; ++i) per[i] = mackey_class_violations(m, i, stage);
        for (const auto& v : per)
            rep.violations.insert(rep.violations.end(), v.begin(), v.end());
        if (!rep.violations.empty()) {
            rep.pass = false;
            return rep;
        }
    }
    return rep;
}

std::vector<ModInvariants> dbh_degree_table_serial(long n, const std::vector<long>& s,
                                                   const std::vector<long>& sp,
                                                   long max_degree) {
    if (max_degree < 0) throw InputError("negative homology degree");
    PermModule pm = dbh_perm_module(n, s, sp, CoeffRing::Z());
    std::vector<ModInvariants> out(size_t(max_degree) + 1);
    for (long d = 0; d <= max_degree; ++d)
        out[size_t(d)] = cyclic_homology(n, pm.module, pm.sigma, d).invariants();
    return out;
}

std::vector<ModInvariants> dbh_degree_table(long n, const std::vector<long>& s,
                                            const std::vector<long>& sp, long max_degree) {
    if (max_degree < 0) throw InputError("negative homology degree");
    PermModule pm = dbh_perm_module(n, s, sp, CoeffRing::Z());
    std::vector<ModInvariants> out(size_t(max_degree) + 1);
#pragma omp parallel for schedule(dynamic)
    for (long d = 0; d <= max_degree; ++d)
        out[size_t(d)] = cyclic_homology(n, pm.module, pm.sigma, d).invariants();
    return out;
}

}  // namespace mackeylab
