#include "mackeylab/zhat.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "mackeylab/error.hpp"

namespace mackeylab {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

std::string pair_label(long a, long b) {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

/// Divisibility chain of a list of cyclic orders, largest factor last.
ModInvariants chain_invariants(long free_rank, const std::vector<long>& orders) {
    std::map<long, std::vector<long>> powers;  // prime -> prime power list
    for (long o : orders) {
        long x = o;
        for (long q = 2; q * q <= x; ++q)
            if (x % q == 0) {
                long pw = 1;
                while (x % q == 0) {
                    pw *= q;
                    x /= q;
                }
                powers[q].push_back(pw);
            }
        if (x > 1) powers[x].push_back(x);
    }
    size_t depth = 0;
    for (auto& [q, v] : powers) {
        std::sort(v.rbegin(), v.rend());
        depth = std::max(depth, v.size());
    }
    ModInvariants inv;
    inv.free_rank = free_rank;
    inv.torsion.assign(depth, Int(1));
    for (const auto& [q, v] : powers)
        for (size_t j = 0; j < v.size(); ++j) inv.torsion[j] *= Int(v[j]);
    std::reverse(inv.torsion.begin(), inv.torsion.end());
    return inv;
}

}  // namespace

void WittElement::add_term(long idx, const Rat& c) {
    if (idx < 1) throw InputError("class index must be positive");
    if (c == 0) return;
    Rat& slot = coeffs[idx];
    slot += c;
    if (slot == 0) coeffs.erase(idx);
}

WittElement witt_unit() { return witt_basis(1); }

WittElement witt_basis(long i) {
    WittElement w;
    w.add_term(i, 1);
    return w;
}

WittElement witt_add(const WittElement& a, const WittElement& b) {
    WittElement out = a;
    for (const auto& [i, c] : b.coeffs) out.add_term(i, c);
    return out;
}

WittElement witt_scale(const WittElement& a, const Rat& c) {
    WittElement out;
    for (const auto& [i, x] : a.coeffs) out.add_term(i, x * c);
    return out;
}

WittElement witt_product(const WittElement& a, const WittElement& b) {
    WittElement out;
    for (const auto& [i, x] : a.coeffs)
        for (const auto& [j, y] : b.coeffs)
            out.add_term(std::lcm(i, j), x * y * std::gcd(i, j));
    return out;
}

WittElement witt_truncate(const WittElement& a, long bound) {
    WittElement out;
    for (const auto& [i, c] : a.coeffs)
        if (i <= bound) out.add_term(i, c);
    return out;
}

Rat ghost_component(const WittElement& a, long n) {
    if (n < 1) throw InputError("ghost index must be positive");
    Rat g = 0;
    for (const auto& [i, c] : a.coeffs)
        if (n % i == 0) g += c * i;
    return g;
}

std::vector<Rat> ghost_components(const WittElement& a, long n) {
    std::vector<Rat> out;
    out.reserve(size_t(n));
    for (long k = 1; k <= n; ++k) out.push_back(ghost_component(a, k));
    return out;
}

std::string witt_print(const WittElement& a) {
    if (a.coeffs.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : a.coeffs) {
        Rat ab = c < 0 ? Rat(-c) : c;
        if (first)
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (i == 1)
            out += rat_to_string(ab);
        else if (ab == 1)
            out += "e" + std::to_string(i);
        else
            out += rat_to_string(ab) + "*e" + std::to_string(i);
        first = false;
    }
    return out;
}

WittElement witt_parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw InputError("empty class combination");
    WittElement out;
    size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term = s.substr(pos, end - pos);
        if (term.empty()) throw InputError("cannot parse class combination: " + text);
        size_t e = term.find('e');
        long idx = 1;
        Rat coef = 1;
        if (e == std::string::npos) {
            coef = rat_from_string(term);
        } else {
            std::string tail = term.substr(e + 1);
            if (tail.empty() ||
                tail.find_first_not_of("0123456789") != std::string::npos)
                throw InputError("cannot parse class combination: " + text);
            idx = std::stol(tail);
            if (e == 0) {
                coef = 1;
            } else {
                if (term[e - 1] != '*')
                    throw InputError("cannot parse class combination: " + text);
                coef = rat_from_string(term.substr(0, e - 1));
            }
        }
        out.add_term(idx, coef * sign);
        pos = end;
    }
    return out;
}

int ZMackeyTrunc::pos(long l) const {
    auto it = std::lower_bound(levels.begin(), levels.end(), l);
    if (it == levels.end() || *it != l)
        throw InputError("level " + std::to_string(l) + " is outside the truncation");
    return int(it - levels.begin());
}

const ModuleMap& ZMackeyTrunc::push_map(long a, long b) const {
    auto it = push.find({a, b});
    if (it == push.end()) throw InputError("missing pushforward at " + pair_label(a, b));
    return it->second;
}

const ModuleMap& ZMackeyTrunc::pull_map(long a, long b) const {
    auto it = pull.find({a, b});
    if (it == pull.end()) throw InputError("missing pullback at " + pair_label(a, b));
    return it->second;
}

AxiomReport check_zmackey(const ZMackeyTrunc& m) {
    AxiomReport rep;
    auto fail = [&](const std::string& what) {
        rep.pass = false;
        rep.violations.push_back(what);
    };

    const auto& ls = m.levels;
    if (ls.empty() || !std::is_sorted(ls.begin(), ls.end()) ||
        std::adjacent_find(ls.begin(), ls.end()) != ls.end()) {
        fail("malformed: levels must be ascending and distinct");
        return rep;
    }
    for (long l : ls) {
        if (l < 1 || l > m.bound) {
            fail("malformed: level beyond the bound");
            return rep;
        }
        for (long d = 1; d <= l; ++d)
            if (l % d == 0 && !std::binary_search(ls.begin(), ls.end(), d)) {
                fail("malformed: levels not divisor closed");
                return rep;
            }
    }
    if (m.value.size() != ls.size() || m.sigma.size() != ls.size()) {
        fail("malformed: level count");
        return rep;
    }
    for (size_t i = 0; i < ls.size(); ++i) {
        if (!(m.value[i].ring == m.ring)) {
            fail("malformed: ring mismatch at level " + std::to_string(ls[i]));
            return rep;
        }
        if (m.sigma[i].matrix.rows != m.value[i].gens ||
            m.sigma[i].matrix.cols != m.value[i].gens) {
            fail("malformed: translation shape at level " + std::to_string(ls[i]));
            return rep;
        }
    }
    size_t pairs = 0;
    for (long a : ls)
        for (long b : ls)
            if (b <= a && a % b == 0) {
                ++pairs;
                auto pit = m.push.find({a, b});
                auto fit = m.pull.find({a, b});
                if (pit == m.push.end() || fit == m.pull.end()) {
                    fail("malformed: edge set");
                    return rep;
                }
                if (pit->second.matrix.rows != m.at(b).gens ||
                    pit->second.matrix.cols != m.at(a).gens) {
                    fail("malformed: pushforward shape at " + pair_label(a, b));
                    return rep;
                }
                if (fit->second.matrix.rows != m.at(a).gens ||
                    fit->second.matrix.cols != m.at(b).gens) {
                    fail("malformed: pullback shape at " + pair_label(a, b));
                    return rep;
                }
            }
    if (m.push.size() != pairs || m.pull.size() != pairs) {
        fail("malformed: edge set");
        return rep;
    }

    for (size_t i = 0; i < ls.size(); ++i) {
        long l = ls[i];
        if (!m.push_map(l, l).equals(ModuleMap::identity(m.value[i])) ||
            !m.pull_map(l, l).equals(ModuleMap::identity(m.value[i])))
            fail("self maps at level " + std::to_string(l));
        if (!m.sigma[i].pow(l).equals(ModuleMap::identity(m.value[i])))
            fail("translation order at level " + std::to_string(l));
    }
    for (long a : ls)
        for (long b : ls) {
            if (b > a || a % b != 0) continue;
            for (long c : ls)
                if (c <= b && b % c == 0) {
                    if (!m.push_map(b, c).compose(m.push_map(a, b)).equals(m.push_map(a, c)))
                        fail("pushforward transitivity at (" + std::to_string(a) + ", " +
                             std::to_string(b) + ", " + std::to_string(c) + ")");
                    if (!m.pull_map(a, b).compose(m.pull_map(b, c)).equals(m.pull_map(a, c)))
                        fail("pullback transitivity at (" + std::to_string(a) + ", " +
                             std::to_string(b) + ", " + std::to_string(c) + ")");
                }
            const ModuleMap& sa = m.sigma[size_t(m.pos(a))];
            const ModuleMap& sb = m.sigma[size_t(m.pos(b))];
            if (!sb.compose(m.push_map(a, b)).equals(m.push_map(a, b).compose(sa)) ||
                !sa.compose(m.pull_map(a, b)).equals(m.pull_map(a, b).compose(sb)))
                fail("equivariance at " + pair_label(a, b));
            ModuleMap rhs = ModuleMap::zero_map(m.at(a), m.at(a));
            for (long j = 0; j < a / b; ++j) rhs = rhs.add(sa.pow(j * b));
            if (!m.pull_map(a, b).compose(m.push_map(a, b)).equals(rhs))
                fail("double coset at " + pair_label(a, b));
        }
    for (long b : ls)
        for (long x : ls) {
            if (x % b != 0) continue;
            for (long y : ls) {
                if (y % b != 0) continue;
                long g = std::gcd(x, y);
                long join = std::lcm(x, y);
                if (!std::binary_search(ls.begin(), ls.end(), join)) continue;
                ModuleMap lhs = m.pull_map(y, b).compose(m.push_map(x, b));
                ModuleMap rhs = ModuleMap::zero_map(m.at(x), m.at(y));
                const ModuleMap& sj = m.sigma[size_t(m.pos(join))];
                for (long j = 0; j < g / b; ++j)
                    rhs = rhs.add(
                        m.push_map(join, y).compose(sj.pow(j * b)).compose(m.pull_map(join, x)));
                if (!lhs.equals(rhs))
                    fail("double coset at " + pair_label(x, y) + " over " + std::to_string(b));
            }
        }
    return rep;
}

ZMackeyTrunc burnside_truncation(long bound, const CoeffRing& ring) {
    if (bound < 1) throw InputError("truncation bound must be positive");
    ZMackeyTrunc m;
    m.ring = ring;
    m.bound = bound;
    for (long l = 1; l <= bound; ++l) {
        m.levels.push_back(l);
        m.value.push_back(FpModule::free_module(ring, int(bound / l)));
        m.sigma.push_back(ModuleMap::identity(m.value.back()));
    }
    for (long a = 1; a <= bound; ++a)
        for (long b = 1; b <= a; ++b) {
            if (a % b != 0) continue;
            const FpModule& ma = m.at(a);
            const FpModule& mb = m.at(b);
            Mat vm(mb.gens, ma.gens), fm(ma.gens, mb.gens);
            for (long n = a; n <= bound; n += a) vm.at(int(n / b - 1), int(n / a - 1)) = 1;
            for (long n = b; n <= bound; n += b) {
                long join = std::lcm(n, a);
                if (join > bound) continue;
                fm.at(int(join / a - 1), int(n / b - 1)) = Rat(std::gcd(n, a)) / b;
            }
            m.push.emplace(std::make_pair(a, b), ModuleMap(ma, mb, vm));
            m.pull.emplace(std::make_pair(a, b), ModuleMap(mb, ma, fm));
        }
    return m;
}

ModuleMap eps_action(const ZMackeyTrunc& m, long k, long l) {
    if (k < 1) throw InputError("class index must be positive");
    m.pos(l);
    long join = std::lcm(k, l);
    if (!std::binary_search(m.levels.begin(), m.levels.end(), join))
        throw DomainError("the class action leaves the truncation");
    return m.push_map(join, l).compose(m.pull_map(join, l)).scale(Rat(std::gcd(k, l)));
}

ModuleMap witt_action(const ZMackeyTrunc& m, const WittElement& w, long l, bool drop_outside) {
    const FpModule& ml = m.at(l);
    ModuleMap out = ModuleMap::zero_map(ml, ml);
    for (const auto& [k, c] : w.coeffs) {
        if (!m.ring.contains(c))
            throw InputError("coefficient " + rat_to_string(c) + " lies outside the ring");
        if (drop_outside &&
            !std::binary_search(m.levels.begin(), m.levels.end(), std::lcm(k, l)))
            continue;
        out = out.add(eps_action(m, k, l).scale(c));
    }
    return out;
}

Mat canonical_filtration(const ZMackeyTrunc& m, long n, long l) {
    int li = m.pos(l);
    if (n < 1 || n % l != 0)
        throw InputError("the filtration index must be a multiple of the level");
    Mat f(m.value[size_t(li)].gens, 0);
    for (long k : m.levels)
        if (k % l == 0 && n % k != 0) f = f.hstack(m.push_map(k, l).matrix);
    return f;
}

FpModule filtration_quotient(const ZMackeyTrunc& m, long n, long l) {
    const FpModule& ml = m.at(l);
    return FpModule(m.ring, ml.gens, ml.relations.hstack(canonical_filtration(m, n, l)));
}

LevelFixedPoints level_fixed_points(const ZMackeyTrunc& m, long n) {
    m.pos(n);
    LevelFixedPoints out;
    auto ctx = std::make_shared<const GroupContext>(make_context(make_cyclic(int(n))));
    auto lat = std::make_shared<const LocalLattice>(build_local_lattice(*ctx));
    MackeyFunctor& fun = out.fun;
    fun.ctx = ctx;
    fun.lat = lat;
    fun.ring = m.ring;
    int nc = int(ctx->classes.size());
    std::vector<long> level_of(nc);
    for (int i = 0; i < nc; ++i) {
        level_of[i] = n / ctx->subgroups[ctx->classes[i].rep_subgroup].order;
        fun.value.push_back(filtration_quotient(m, n, level_of[i]));
    }
    auto descend = [&](const Mat& mat, const FpModule& src, const FpModule& tgt) {
        try {
            return ModuleMap(src, tgt, mat);
        } catch (const DomainError&) {
            out.truncation_exact = false;
            return ModuleMap(src, tgt, mat, false);
        }
    };
    for (int i = 0; i < nc; ++i) {
        long t = level_of[i];
        const ModuleMap& s = m.sigma[size_t(m.pos(t))];
        std::vector<ModuleMap> ws;
        for (int w = 0; w < ctx->classes[i].weyl.order; ++w)
            ws.push_back(descend(s.pow(ctx->classes[i].weyl_rep[w]).matrix, fun.value[i],
                                 fun.value[i]));
        fun.weyl.push_back(std::move(ws));
        std::vector<ModuleMap> rs, ts;
        for (int sub : lat->locals[i]) {
            int j = ctx->subgroups[sub].class_id;
            rs.push_back(descend(m.pull_map(level_of[j], t).matrix, fun.value[i], fun.value[j]));
            ts.push_back(descend(m.push_map(level_of[j], t).matrix, fun.value[j], fun.value[i]));
        }
        fun.res.push_back(std::move(rs));
        fun.tr.push_back(std::move(ts));
    }
    return out;
}

RoundtripReport normal_system_roundtrip(const ZMackeyTrunc& m, long l) {
    const FpModule& ml = m.at(l);
    RoundtripReport rep;
    rep.n_star = l * (m.bound / l);
    FpModule q = filtration_quotient(m, rep.n_star, l);
    rep.canonical = ModuleMap(ml, q, Mat::identity(ml.gens));
    rep.surjective = map_cokernel(rep.canonical).module.is_zero();
    rep.injective = map_kernel(rep.canonical).module.is_zero();
    return rep;
}

WittElement p_local_idempotent(long p, long l, long bound) {
    if (!is_prime(p)) throw InputError("the localization index must be prime");
    if (l < 1 || l > bound) throw InputError("the part index exceeds the bound");
    if (l % p == 0) throw InputError("the part index must be coprime to the prime");
    WittElement e = witt_scale(witt_basis(l), Rat(1) / l);
    for (long i = 2; i <= bound; ++i) {
        if (i % p == 0 || l % i == 0) continue;
        WittElement factor = witt_add(witt_unit(), witt_scale(witt_basis(i), Rat(-1) / i));
        e = witt_truncate(witt_product(e, factor), bound);
    }
    return e;
}

PTypicalReport p_typical_reconstruct_check(const ZMackeyTrunc& m, long p, long n) {
    if (!is_prime(p)) throw InputError("the localization index must be prime");
    const FpModule& mn = m.at(n);
    PTypicalReport rep;
    std::vector<ModuleMap> comps;
    ModuleMap total = ModuleMap::zero_map(mn, mn);
    bool ok = true;
    for (long l = 1; l <= m.bound; ++l) {
        if (l % p == 0) continue;
        ModuleMap a = witt_action(m, p_local_idempotent(p, l, m.bound), n, true);
        if (!a.compose(a).equals(a)) ok = false;
        for (const ModuleMap& b : comps)
            if (!a.compose(b).is_zero_map() || !b.compose(a).is_zero_map()) ok = false;
        total = total.add(a);
        if (!a.is_zero_map()) {
            rep.parts.push_back(l);
            rep.ranks.push_back(map_image(a).module.invariants().free_rank);
        }
        comps.push_back(std::move(a));
    }
    rep.decomposes = ok && total.equals(ModuleMap::identity(mn));
    return rep;
}

ModInvariants derived_burnside_homology(long n, const std::vector<long>& s,
                                        const std::vector<long>& sp, long degree) {
    if (n < 1) throw InputError("the group index must be positive");
    if (degree < 0) throw InputError("negative homology degree");
    long free_rank = 0;
    std::vector<long> orders;
    for (long a : s)
        for (long b : sp) {
            if (a < 1 || b < 1) throw InputError("orbit index must be positive");
            long g = std::gcd(a, b);
            long join = std::lcm(a, b);
            if (n % join != 0) continue;
            if (degree == 0) {
                free_rank += g;
            } else if (degree % 2 == 1) {
                long h = n / join;
                if (h > 1) orders.insert(orders.end(), size_t(g), h);
            }
        }
    return chain_invariants(free_rank, orders);
}

PermModule dbh_perm_module(long n, const std::vector<long>& s, const std::vector<long>& sp,
                           const CoeffRing& ring) {
    if (n < 1) throw InputError("the group index must be positive");
    std::vector<long> cycles;
    for (long a : s)
        for (long b : sp) {
            if (a < 1 || b < 1) throw InputError("orbit index must be positive");
            long g = std::gcd(a, b);
            long join = std::lcm(a, b);
            if (n % join != 0) continue;
            cycles.insert(cycles.end(), size_t(g), join);
        }
    int total = 0;
    for (long c : cycles) total += int(c);
    PermModule out;
    out.module = FpModule::free_module(ring, total);
    Mat sg(total, total);
    long off = 0;
    for (long c : cycles) {
        for (long j = 0; j < c; ++j) sg.at(int(off + (j + 1) % c), int(off + j)) = 1;
        off += c;
    }
    out.sigma = ModuleMap(out.module, out.module, sg);
    return out;
}

GluingValue gluing_value(const ZMackeyTrunc& m, long n, long l) {
    int ni = m.pos(n);
    m.pos(l);
    if (n % l != 0) throw InputError("the germ level must divide the index");
    GluingValue out;
    const FpModule& mn = m.value[size_t(ni)];
    const ModuleMap& s = m.sigma[size_t(ni)];
    long q = n / l;
    if (q == 1) {
        out.diagonal = true;
        out.even = mn;
        out.odd = FpModule::zero(m.ring);
        out.residual_even = s;
        out.residual_odd = ModuleMap::identity(out.odd);
        return out;
    }
    if (!is_prime(q)) {
        out.even = FpModule::zero(m.ring);
        out.odd = FpModule::zero(m.ring);
        out.residual_even = ModuleMap::identity(out.even);
        out.residual_odd = ModuleMap::identity(out.odd);
        return out;
    }
    ModuleMap tau = s.pow(l);
    ModuleMap dec = tau.sub(ModuleMap::identity(mn));
    ModuleMap norm = ModuleMap::zero_map(mn, mn);
    for (long j = 0; j < q; ++j) norm = norm.add(tau.pow(j));

    SubmoduleResult ker_dec = map_kernel(dec);
    ModuleMap norm_in = factor_through(ker_dec.inclusion, norm);
    QuotientResult even = map_cokernel(norm_in);
    ModuleMap s_even = factor_through(ker_dec.inclusion, s.compose(ker_dec.inclusion));
    out.even = even.module;
    out.residual_even = ModuleMap(out.even, out.even, s_even.matrix);

    SubmoduleResult ker_norm = map_kernel(norm);
    ModuleMap dec_in = factor_through(ker_norm.inclusion, dec);
    QuotientResult odd = map_cokernel(dec_in);
    ModuleMap s_odd = factor_through(ker_norm.inclusion, s.compose(ker_norm.inclusion));
    out.odd = odd.module;
    out.residual_odd = ModuleMap(out.odd, out.odd, s_odd.matrix);
    return out;
}

}  // namespace mackeylab
