#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "mackeylab/zhat.hpp"

using namespace mackeylab;

namespace {

/// System of a single finite orbit of size d: level l carries the free module
/// on the l cosets when l divides d and vanishes otherwise, with the evident
/// rotation, fiber sum, and reindexing maps.  Finitely supported by
/// construction.
ZMackeyTrunc point_truncation(long d, long bound, const CoeffRing& ring) {
    ZMackeyTrunc m;
    m.ring = ring;
    m.bound = bound;
    for (long l = 1; l <= bound; ++l) {
        m.levels.push_back(l);
        int rank = d % l == 0 ? int(l) : 0;
        m.value.push_back(FpModule::free_module(ring, rank));
        Mat sg(rank, rank);
        for (int j = 0; j < rank; ++j) sg.at((j + 1) % rank, j) = 1;
        m.sigma.emplace_back(m.value.back(), m.value.back(), sg);
    }
    for (long a = 1; a <= bound; ++a)
        for (long b = 1; b <= a; ++b) {
            if (a % b != 0) continue;
            const FpModule& ma = m.at(a);
            const FpModule& mb = m.at(b);
            Mat vm(mb.gens, ma.gens), fm(ma.gens, mb.gens);
            if (ma.gens > 0 && mb.gens > 0) {
                for (long x = 0; x < a; ++x) vm.at(int(x % b), int(x)) = 1;
                for (long x = 0; x < b; ++x)
                    for (long j = 0; j < a / b; ++j) fm.at(int((x + j * b) % a), int(x)) = 1;
            }
            m.push.emplace(std::make_pair(a, b), ModuleMap(ma, mb, vm));
            m.pull.emplace(std::make_pair(a, b), ModuleMap(mb, ma, fm));
        }
    return m;
}

/// Three levels {1,2,3} of rank one with pushforwards 1 and pullbacks a;
/// consistent on its own but its joining level 6 falls outside the bound.
ZMackeyTrunc cramped_system() {
    ZMackeyTrunc m;
    m.ring = CoeffRing::Z();
    m.bound = 3;
    m.levels = {1, 2, 3};
    for (int i = 0; i < 3; ++i) {
        m.value.push_back(FpModule::free_module(m.ring, 1));
        m.sigma.push_back(ModuleMap::identity(m.value.back()));
    }
    auto one = [&](long a, long b, long fv) {
        Mat v(1, 1), f(1, 1);
        v.at(0, 0) = 1;
        f.at(0, 0) = fv;
        m.push.emplace(std::make_pair(a, b), ModuleMap(m.at(a), m.at(b), v));
        m.pull.emplace(std::make_pair(a, b), ModuleMap(m.at(b), m.at(a), f));
    };
    one(1, 1, 1);
    one(2, 2, 1);
    one(3, 3, 1);
    one(2, 1, 2);
    one(3, 1, 3);
    return m;
}

long odd_part(long n) {
    while (n % 2 == 0) n /= 2;
    return n;
}

}  // namespace

TEST_CASE("class multiplication rules") {
    CHECK(witt_product(witt_basis(2), witt_basis(3)) == witt_basis(6));
    CHECK(witt_product(witt_basis(2), witt_basis(4)) == witt_scale(witt_basis(4), 2));
    for (long i = 1; i <= 12; ++i)
        CHECK(witt_product(witt_basis(i), witt_basis(i)) == witt_scale(witt_basis(i), i));
    WittElement a = witt_add(witt_basis(2), witt_scale(witt_basis(3), Rat(-1) / 2));
    CHECK(witt_product(witt_unit(), a) == a);
    CHECK(witt_truncate(a, 2) == witt_basis(2));
}

TEST_CASE("ghost components are multiplicative") {
    for (long i = 1; i <= 8; ++i)
        for (long n = 1; n <= 24; ++n)
            CHECK(ghost_component(witt_basis(i), n) == (n % i == 0 ? Rat(i) : Rat(0)));
    WittElement a = witt_add(witt_basis(2), witt_scale(witt_basis(5), Rat(1) / 3));
    WittElement b = witt_add(witt_unit(), witt_scale(witt_basis(6), -2));
    WittElement ab = witt_product(a, b);
    for (long n = 1; n <= 24; ++n)
        CHECK(ghost_component(ab, n) == ghost_component(a, n) * ghost_component(b, n));
    std::vector<Rat> g = ghost_components(witt_basis(2), 4);
    CHECK(g == std::vector<Rat>{0, 2, 0, 2});
}

TEST_CASE("printing and parsing classes") {
    WittElement w = witt_add(witt_unit(), witt_add(witt_scale(witt_basis(3), Rat(-1) / 3),
                                                   witt_scale(witt_basis(5), Rat(-1) / 5)));
    CHECK(witt_print(w) == "1 - 1/3*e3 - 1/5*e5");
    CHECK(witt_parse("1 - 1/3*e3 - 1/5*e5") == w);
    CHECK(witt_print(WittElement{}) == "0");
    CHECK(witt_print(witt_basis(4)) == "e4");
    CHECK(witt_print(witt_scale(witt_basis(4), -1)) == "-e4");
    CHECK(witt_parse("-e2 + 3") == witt_add(witt_scale(witt_basis(2), -1), witt_scale(witt_unit(), 3)));
    CHECK(witt_parse("2*e4-1/2") ==
          witt_add(witt_scale(witt_basis(4), 2), witt_scale(witt_unit(), Rat(-1) / 2)));
    for (const WittElement& s :
         {w, witt_basis(7), witt_scale(witt_unit(), Rat(-2) / 7), WittElement{}})
        CHECK(witt_parse(witt_print(s)) == s);
    CHECK_THROWS_AS(witt_parse("foo"), InputError);
    CHECK_THROWS_AS(witt_parse("2**e3"), InputError);
    CHECK_THROWS_AS(witt_parse("e"), InputError);
    CHECK_THROWS_AS(witt_parse("3*e0"), InputError);
    CHECK_THROWS_AS(witt_parse(""), InputError);
}

TEST_CASE("orbit ring truncation satisfies the level relations") {
    for (const CoeffRing& r : {CoeffRing::Z(), CoeffRing::Qp(2)}) {
        ZMackeyTrunc m = burnside_truncation(12, r);
        AxiomReport rep = check_zmackey(m);
        CHECK(rep.pass);
        CHECK(rep.violations.empty());
    }
    CHECK(check_zmackey(burnside_truncation(6, CoeffRing::Zmod(6))).pass);
    ZMackeyTrunc m = burnside_truncation(6, CoeffRing::Z());
    for (long l = 1; l <= 6; ++l) CHECK(m.at(l).gens == int(6 / l));
    Mat f = m.pull_map(2, 1).matrix;
    Mat expect(3, 6);
    expect.at(0, 0) = 1;  // b1 -> b2
    expect.at(0, 1) = 2;  // b2 -> 2 b2
    expect.at(2, 2) = 1;  // b3 -> b6
    expect.at(1, 3) = 2;  // b4 -> 2 b4
    expect.at(2, 5) = 2;  // b6 -> 2 b6; b5 joins past the bound
    CHECK(f == expect);
}

TEST_CASE("a finite orbit system satisfies the level relations") {
    CHECK(check_zmackey(point_truncation(6, 6, CoeffRing::Z())).pass);
    CHECK(check_zmackey(point_truncation(4, 8, CoeffRing::Z())).pass);
    CHECK(check_zmackey(cramped_system()).pass);
}

TEST_CASE("the level checker rejects a lazy system") {
    ZMackeyTrunc m;
    m.ring = CoeffRing::Z();
    m.bound = 2;
    m.levels = {1, 2};
    for (int i = 0; i < 2; ++i) {
        m.value.push_back(FpModule::free_module(m.ring, 1));
        m.sigma.push_back(ModuleMap::identity(m.value.back()));
    }
    for (auto [a, b] : {std::pair<long, long>{1, 1}, {2, 2}, {2, 1}}) {
        m.push.emplace(std::make_pair(a, b), ModuleMap::identity(m.value[0]));
        m.pull.emplace(std::make_pair(a, b), ModuleMap::identity(m.value[0]));
    }
    AxiomReport rep = check_zmackey(m);
    CHECK_FALSE(rep.pass);
    bool dc = false;
    for (const auto& v : rep.violations)
        if (v.find("double coset at (2, 1)") != std::string::npos) dc = true;
    CHECK(dc);

    ZMackeyTrunc gap = burnside_truncation(4, CoeffRing::Z());
    gap.push.erase({4, 2});
    rep = check_zmackey(gap);
    REQUIRE_FALSE(rep.pass);
    CHECK(rep.violations[0] == "malformed: edge set");

    ZMackeyTrunc holes = burnside_truncation(4, CoeffRing::Z());
    holes.levels = {1, 2, 4};
    rep = check_zmackey(holes);
    REQUIRE_FALSE(rep.pass);
    CHECK(rep.violations[0] == "malformed: level count");
}

TEST_CASE("single class actions on the orbit ring") {
    ZMackeyTrunc m = burnside_truncation(4, CoeffRing::Z());
    CHECK(eps_action(m, 1, 2).equals(ModuleMap::identity(m.at(2))));
    Mat e4 = eps_action(m, 4, 2).matrix;
    Mat expect(2, 2);
    expect.at(1, 0) = 2;  // b2 -> 2 b4
    expect.at(1, 1) = 4;  // b4 -> 4 b4
    CHECK(e4 == expect);

    ZMackeyTrunc m6 = burnside_truncation(6, CoeffRing::Z());
    CHECK_THROWS_AS(eps_action(m6, 5, 2), DomainError);
    // the bottom level action is multiplication in the truncated ring
    for (long k = 1; k <= 8; ++k)
        for (long n = 1; n <= 8; ++n) {
            ZMackeyTrunc m8 = burnside_truncation(8, CoeffRing::Z());
            WittElement prod = witt_truncate(witt_product(witt_basis(k), witt_basis(n)), 8);
            Mat col = eps_action(m8, k, 1).matrix;
            for (long r = 1; r <= 8; ++r) {
                Rat want = 0;
                auto it = prod.coeffs.find(r);
                if (it != prod.coeffs.end()) want = it->second;
                CHECK(col.at(int(r - 1), int(n - 1)) == want);
            }
        }
}

TEST_CASE("combined actions respect the coefficient ring") {
    WittElement idem = p_local_idempotent(2, 1, 6);
    ZMackeyTrunc over_z = burnside_truncation(6, CoeffRing::Z());
    CHECK_THROWS_AS(witt_action(over_z, idem, 1), InputError);
    ZMackeyTrunc local = burnside_truncation(6, CoeffRing::Qp(2));
    ModuleMap a = witt_action(local, idem, 1);
    CHECK(a.compose(a).equals(a));
}

TEST_CASE("canonical filtration of the orbit ring") {
    ZMackeyTrunc m = burnside_truncation(6, CoeffRing::Z());
    Mat f = canonical_filtration(m, 2, 1);
    FpModule q = filtration_quotient(m, 2, 1);
    CHECK(q.invariants().free_rank == 2);
    // the filtration piece is spanned by the classes past the divisors of 2
    FpModule piece(CoeffRing::Z(), 6, Mat(6, 0));
    CHECK(f.rows == 6);
    for (long n = 1; n <= 6; ++n) {
        std::vector<Rat> basis(6, 0);
        basis[size_t(n - 1)] = 1;
        bool inside = solve_colspan(f, basis, CoeffRing::Z()).has_value();
        CHECK(inside == (n != 1 && n != 2));
    }
    auto divisors = [](long n) {
        long d = 0;
        for (long k = 1; k <= n; ++k)
            if (n % k == 0) ++d;
        return d;
    };
    for (long n = 1; n <= 6; ++n)
        CHECK(filtration_quotient(m, n, 1).invariants().free_rank == divisors(n));
    CHECK_THROWS_AS(canonical_filtration(m, 3, 2), InputError);
}

TEST_CASE("level fixed points recover the finite orbit rings") {
    ZMackeyTrunc m = burnside_truncation(12, CoeffRing::Z());
    for (long n : {1L, 2L, 3L, 4L, 6L}) {
        LevelFixedPoints lf = level_fixed_points(m, n);
        CHECK(lf.truncation_exact);
        CHECK(check_mackey_axioms(lf.fun).pass);
        CHECK(mackey_profile_equal(lf.fun, burnside_mackey(lf.fun.ctx, m.ring)));
    }
    CHECK_THROWS_AS(level_fixed_points(m, 13), InputError);
}

TEST_CASE("level fixed points flag descent lost to the truncation") {
    LevelFixedPoints lf = level_fixed_points(cramped_system(), 2);
    CHECK_FALSE(lf.truncation_exact);
    LevelFixedPoints ok = level_fixed_points(point_truncation(6, 6, CoeffRing::Z()), 6);
    CHECK(ok.truncation_exact);
    CHECK(check_mackey_axioms(ok.fun).pass);
}

TEST_CASE("roundtrip through the filtration quotients") {
    ZMackeyTrunc m = burnside_truncation(12, CoeffRing::Z());
    RoundtripReport rep = normal_system_roundtrip(m, 1);
    CHECK(rep.n_star == 12);
    CHECK(rep.surjective);
    CHECK_FALSE(rep.injective);
    CHECK(map_kernel(rep.canonical).module.invariants().free_rank == 6);

    for (long l = 1; l <= 6; ++l) {
        RoundtripReport pt = normal_system_roundtrip(point_truncation(6, 6, CoeffRing::Z()), l);
        CHECK(pt.surjective);
        CHECK(pt.injective);
    }
    for (long l : {1L, 2L, 4L}) {
        RoundtripReport pt = normal_system_roundtrip(point_truncation(4, 8, CoeffRing::Z()), l);
        CHECK(pt.surjective);
        CHECK(pt.injective);
    }
}

TEST_CASE("local idempotents of the truncated ring") {
    CHECK(witt_print(p_local_idempotent(2, 1, 5)) == "1 - 1/3*e3 - 1/5*e5");
    for (long p : {2L, 3L}) {
        std::vector<WittElement> parts;
        for (long l = 1; l <= 12; ++l)
            if (l % p != 0) parts.push_back(p_local_idempotent(p, l, 12));
        WittElement sum;
        for (const WittElement& e : parts) {
            CHECK(witt_truncate(witt_product(e, e), 12) == e);
            sum = witt_add(sum, e);
        }
        CHECK(sum == witt_unit());
        for (size_t i = 0; i < parts.size(); ++i)
            for (size_t j = i + 1; j < parts.size(); ++j)
                CHECK(witt_truncate(witt_product(parts[i], parts[j]), 12) == WittElement{});
    }
    for (long l : {1L, 3L, 5L})
        for (long n = 1; n <= 12; ++n)
            CHECK(ghost_component(p_local_idempotent(2, l, 12), n) ==
                  (odd_part(n) == l ? Rat(1) : Rat(0)));
    CHECK_THROWS_AS(p_local_idempotent(4, 1, 6), InputError);
    CHECK_THROWS_AS(p_local_idempotent(2, 2, 6), InputError);
    CHECK_THROWS_AS(p_local_idempotent(2, 7, 6), InputError);
}

TEST_CASE("local splitting of the orbit ring levels") {
    ZMackeyTrunc m6 = burnside_truncation(6, CoeffRing::Qp(2));
    PTypicalReport rep = p_typical_reconstruct_check(m6, 2, 1);
    CHECK(rep.decomposes);
    CHECK(rep.parts == std::vector<long>{1, 3, 5});
    CHECK(rep.ranks == std::vector<long>{3, 2, 1});

    ZMackeyTrunc m12 = burnside_truncation(12, CoeffRing::Qp(2));
    PTypicalReport rep2 = p_typical_reconstruct_check(m12, 2, 2);
    CHECK(rep2.decomposes);
    CHECK(rep2.parts == std::vector<long>{1, 3, 5});
    CHECK(rep2.ranks == std::vector<long>{3, 2, 1});
    long total = std::accumulate(rep2.ranks.begin(), rep2.ranks.end(), 0L);
    CHECK(total == m12.at(2).invariants().free_rank);

    PTypicalReport rep3 = p_typical_reconstruct_check(burnside_truncation(12, CoeffRing::Qp(3)), 3, 1);
    CHECK(rep3.decomposes);
}

TEST_CASE("homology of the pair module in closed form") {
    ModInvariants h0 = derived_burnside_homology(4, {1}, {1}, 0);
    CHECK(h0.free_rank == 1);
    CHECK(h0.torsion.empty());
    ModInvariants h1 = derived_burnside_homology(4, {1}, {1}, 1);
    CHECK(h1.free_rank == 0);
    CHECK(h1.torsion == std::vector<Int>{4});
    ModInvariants h2 = derived_burnside_homology(4, {1}, {1}, 2);
    CHECK(h2.free_rank == 0);
    CHECK(h2.torsion.empty());

    // coprime cyclic pieces merge into the divisibility chain
    ModInvariants mix = derived_burnside_homology(6, {1, 2}, {1}, 1);
    CHECK(mix.torsion == std::vector<Int>{3, 6});
}

TEST_CASE("closed form homology matches the resolution") {
    std::vector<long> s = {1, 2}, sp = {1, 3};
    for (long n : {1L, 2L, 3L, 4L, 6L, 12L})
        for (long deg = 0; deg <= 4; ++deg) {
            PermModule pm = dbh_perm_module(n, s, sp, CoeffRing::Z());
            ModInvariants slow = cyclic_homology(n, pm.module, pm.sigma, deg).invariants();
            CHECK(derived_burnside_homology(n, s, sp, deg) == slow);
        }
}

TEST_CASE("gluing germs of the orbit ring") {
    ZMackeyTrunc m = burnside_truncation(12, CoeffRing::Z());

    GluingValue diag = gluing_value(m, 3, 3);
    CHECK(diag.diagonal);
    CHECK(diag.even.invariants().free_rank == 4);
    CHECK(diag.odd.is_zero());

    GluingValue g21 = gluing_value(m, 2, 1);
    CHECK_FALSE(g21.diagonal);
    ModInvariants even = g21.even.invariants();
    CHECK(even.free_rank == 0);
    CHECK(even.torsion == std::vector<Int>(6, Int(2)));
    CHECK(g21.odd.is_zero());
    CHECK(g21.residual_even.equals(ModuleMap::identity(g21.even)));

    GluingValue comp = gluing_value(m, 4, 1);
    CHECK(comp.even.is_zero());
    CHECK(comp.odd.is_zero());

    GluingValue g124 = gluing_value(m, 12, 4);
    CHECK(g124.even.invariants().torsion == std::vector<Int>{3});
    CHECK(g124.odd.is_zero());

    CHECK_THROWS_AS(gluing_value(m, 6, 4), InputError);

    // parity pieces agree with the two periodic complex
    for (auto [n, l] : {std::pair<long, long>{2, 1}, {6, 3}, {12, 4}, {10, 5}}) {
        long q = n / l;
        ModuleMap tau = m.sigma[size_t(m.pos(n))].pow(l);
        TateResult t = cyclic_tate(q, m.at(n), tau);
        GluingValue g = gluing_value(m, n, l);
        CHECK(g.even.invariants() == t.even.invariants());
        CHECK(g.odd.invariants() == t.odd.invariants());
    }
    // and on a system with a genuine rotation
    ZMackeyTrunc pt = point_truncation(4, 4, CoeffRing::Z());
    GluingValue gp = gluing_value(pt, 4, 2);
    ModuleMap tau = pt.sigma[size_t(pt.pos(4))].pow(2);
    TateResult t = cyclic_tate(2, pt.at(4), tau);
    CHECK(gp.even.invariants() == t.even.invariants());
    CHECK(gp.odd.invariants() == t.odd.invariants());
}
