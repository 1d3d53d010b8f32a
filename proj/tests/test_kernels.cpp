#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mackeylab/kernels.hpp"

using namespace mackeylab;

namespace {

std::shared_ptr<GroupContext> ctx_of(FiniteGroup g) {
    return std::make_shared<GroupContext>(make_context(std::move(g)));
}

void check_same_report(const AxiomReport& a, const AxiomReport& b) {
    CHECK(a.pass == b.pass);
    REQUIRE(a.violations.size() == b.violations.size());
    for (size_t i = 0; i < a.violations.size(); ++i) CHECK(a.violations[i] == b.violations[i]);
}

}  // namespace

TEST_CASE("parallel marks table matches the serial one") {
    for (auto mk : {make_cyclic(12), make_dihedral(6), make_sym(4)}) {
        GroupContext ctx = make_context(mk);
        MarksTable ser = table_of_marks(ctx);
        MarksTable par = table_of_marks_parallel(ctx);
        CHECK(ser.entries == par.entries);
    }
}

TEST_CASE("parallel structure constants match the serial ones") {
    for (auto mk : {make_cyclic(8), make_dihedral(6), make_q8()}) {
        GroupContext ctx = make_context(mk);
        RingConstants ser = burnside_ring_constants(ctx);
        RingConstants par = burnside_ring_constants_parallel(ctx);
        CHECK(ser == par);
    }
}

TEST_CASE("parallel axiom checker agrees on valid functors") {
    for (auto mk : {make_cyclic(4), make_sym(3), make_dihedral(4)}) {
        auto ctx = ctx_of(mk);
        MackeyFunctor a = burnside_mackey(ctx, CoeffRing::Z());
        check_same_report(check_mackey_axioms(a), check_mackey_axioms_parallel(a));
        MackeyFunctor t = fixed_point_mackey(ctx, 0, CoeffRing::Zmod(4));
        check_same_report(check_mackey_axioms(t), check_mackey_axioms_parallel(t));
    }
}

TEST_CASE("parallel axiom checker agrees on a corrupted transfer") {
    auto ctx = ctx_of(make_cyclic(4));
    MackeyFunctor a = burnside_mackey(ctx, CoeffRing::Z());
    Mat bad = a.tr[2][1].matrix;
    bad.at(0, 0) += 1;
    a.tr[2][1] = ModuleMap(a.value[1], a.value[2], bad);
    AxiomReport ser = check_mackey_axioms(a);
    AxiomReport par = check_mackey_axioms_parallel(a);
    CHECK_FALSE(ser.pass);
    check_same_report(ser, par);
}

TEST_CASE("parallel axiom checker agrees on a corrupted Weyl action") {
    auto ctx = ctx_of(make_cyclic(6));
    MackeyFunctor t = fixed_point_mackey(ctx, 0, CoeffRing::Z());
    t.weyl[0][1] = ModuleMap::identity(t.value[0]);
    AxiomReport ser = check_mackey_axioms(t);
    AxiomReport par = check_mackey_axioms_parallel(t);
    CHECK_FALSE(ser.pass);
    CHECK_FALSE(ser.violations.empty());
    check_same_report(ser, par);
}

TEST_CASE("parallel axiom checker agrees on malformed shapes") {
    auto ctx = ctx_of(make_cyclic(4));
    MackeyFunctor a = burnside_mackey(ctx, CoeffRing::Z());
    a.res[1].pop_back();
    AxiomReport ser = check_mackey_axioms(a);
    AxiomReport par = check_mackey_axioms_parallel(a);
    CHECK_FALSE(ser.pass);
    CHECK(ser.violations[0].find("malformed") == 0);
    check_same_report(ser, par);
}

TEST_CASE("degree table from the resolution matches the closed form") {
    std::vector<long> s = {1, 2}, sp = {1, 3};
    for (long n : {1L, 4L, 6L}) {
        std::vector<ModInvariants> ser = dbh_degree_table_serial(n, s, sp, 4);
        std::vector<ModInvariants> par = dbh_degree_table(n, s, sp, 4);
        REQUIRE(ser.size() == 5);
        CHECK(ser == par);
        for (long d = 0; d <= 4; ++d)
            CHECK(ser[size_t(d)] == derived_burnside_homology(n, s, sp, d));
    }
    CHECK_THROWS_AS(dbh_degree_table(6, s, sp, -1), InputError);
    CHECK_THROWS_AS(dbh_degree_table_serial(6, s, sp, -1), InputError);
}
