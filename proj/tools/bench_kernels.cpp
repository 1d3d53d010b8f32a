// Times the thread-parallel kernels against their serial references and
// verifies they agree on the benchmarked inputs.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mackeylab/kernels.hpp"

using namespace mackeylab;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return seconds(t0, t1);
}

void row(const char* name, double ser, double par, bool agree) {
    std::printf("%-34s %9.3fs %9.3fs %7.2fx   %s\n", name, ser, par,
                par > 0 ? ser / par : 0.0, agree ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-34s %10s %10s %8s   %s\n", "kernel", "serial", "parallel", "speedup",
                "agree");
    bool all = true;

    {
        GroupContext ctx = make_context(make_dihedral(48));
        MarksTable ser, par;
        double ts = timed([&] { ser = table_of_marks(ctx); });
        double tp = timed([&] { par = table_of_marks_parallel(ctx); });
        bool ok = ser.entries == par.entries;
        all = all && ok;
        row("marks table, dihedral order 96", ts, tp, ok);

        RingConstants cser, cpar;
        double cs = timed([&] { cser = burnside_ring_constants(ctx); });
        double cp = timed([&] { cpar = burnside_ring_constants_parallel(ctx); });
        bool cok = cser == cpar;
        all = all && cok;
        row("structure constants, order 96", cs, cp, cok);
    }
    {
        auto ctx = std::make_shared<GroupContext>(make_context(make_sym(4)));
        MackeyFunctor a = burnside_mackey(ctx, CoeffRing::Z());
        AxiomReport ser, par;
        double ts = timed([&] { ser = check_mackey_axioms(a); });
        double tp = timed([&] { par = check_mackey_axioms_parallel(a); });
        bool ok = ser.pass && par.pass && ser.violations == par.violations;
        all = all && ok;
        row("axiom check, spans of sym(4)", ts, tp, ok);
    }
    {
        std::vector<long> s = {1, 2, 3}, sp = {1, 2, 3};
        std::vector<ModInvariants> ser, par;
        double ts = timed([&] { ser = dbh_degree_table_serial(12, s, sp, 7); });
        double tp = timed([&] { par = dbh_degree_table(12, s, sp, 7); });
        bool ok = ser == par;
        all = all && ok;
        row("homology degrees 0..7, index 12", ts, tp, ok);
    }

    std::printf("%s\n", all ? "all kernels agree" : "KERNEL MISMATCH");
    return all ? 0 : 1;
}
