// Command line front end: every invocation reads files or inline JSON,
// computes with exact arithmetic, and prints a deterministic text table or
// JSON document.  Exit codes: 0 success, 1 domain error, 2 malformed input.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mackeylab/json_io.hpp"
#include "mackeylab/kernels.hpp"

using namespace mackeylab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read \"" + path + "\"");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Inline JSON when the argument starts with a brace, a file path otherwise.
Json load_json(const std::string& arg) {
    std::string text = (!arg.empty() && arg[0] == '{') ? arg : slurp(arg);
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("not valid JSON: " + arg.substr(0, 40));
    return j;
}

FiniteGroup group_arg(const std::string& s) {
    if (s.size() > 5 && s.rfind(".json") == s.size() - 5) return group_from_json(load_json(s));
    return group_from_spec(s);
}

std::vector<Int> int_list(const std::string& s) {
    std::vector<Int> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (tok.empty()) throw InputError("empty entry in integer list");
        try {
            out.emplace_back(tok);
        } catch (const std::exception&) {
            throw InputError("bad integer \"" + tok + "\"");
        }
    }
    if (out.empty()) throw InputError("empty integer list");
    return out;
}

std::vector<long> long_list(const std::string& s) {
    std::vector<long> out;
    for (const Int& v : int_list(s)) out.push_back(long(v));
    return out;
}

Json int_to_json(const Int& v) {
    std::string s = v.str();
    try {
        size_t used = 0;
        long long x = std::stoll(s, &used);
        if (used == s.size()) return Json(x);
    } catch (const std::exception&) {
    }
    return Json(s);
}

int resolve_class(const GroupContext& ctx, const std::string& s) {
    try {
        size_t used = 0;
        int cid = std::stoi(s, &used);
        if (used == s.size()) {
            if (cid < 0 || cid >= int(ctx.classes.size()))
                throw InputError("class index out of range");
            return cid;
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
    }
    return ctx.class_by_label(s);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string functor_text(const MackeyFunctor& m) {
    std::ostringstream os;
    for (int i = 0; i < m.classes(); ++i)
        os << m.ctx->classes[i].label << ": " << m.value[i].pretty() << "\n";
    return os.str();
}

Json report_json(const AxiomReport& rep) {
    return Json{{"pass", rep.pass}, {"violations", rep.violations}};
}

void print_report(const AxiomReport& rep, bool json) {
    if (json) {
        emit(report_json(rep));
        return;
    }
    if (rep.pass) {
        std::cout << "pass\n";
    } else {
        std::cout << "fail\n";
        for (const std::string& v : rep.violations) std::cout << "  " << v << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for orbit rings and equivariant module systems"};
    app.set_version_flag("--version", "mackeylab 1.0.0");
    app.require_subcommand(1);

    // ---- burnside verbs ------------------------------------------------
    std::string g_spec;
    bool as_json = false;
    std::string bmul_a, bmul_b, homs_from, homs_to;

    auto* c_marks = app.add_subcommand("marks", "table of fixed point counts of the orbits");
    c_marks->add_option("group,--group", g_spec, "cyclic:n, dihedral:n, sym:n, klein, q8, or JSON")
        ->required();
    c_marks->add_flag("--json", as_json);
    c_marks->callback([&] {
        GroupContext ctx = make_context(group_arg(g_spec));
        MarksTable t = table_of_marks_parallel(ctx);
        if (as_json) {
            Json labels = Json::array(), rows = Json::array();
            for (const auto& c : ctx.classes) labels.push_back(c.label);
            for (const auto& row : t.entries) {
                Json r = Json::array();
                for (const Int& v : row) r.push_back(int_to_json(v));
                rows.push_back(std::move(r));
            }
            emit(Json{{"classes", labels}, {"marks", rows}});
        } else {
            std::cout << marks_to_string(ctx, t);
        }
    });

    auto* c_bmul = app.add_subcommand("bmul", "product of two orbit ring elements");
    c_bmul->add_option("group,--group", g_spec)->required();
    c_bmul->add_option("--a", bmul_a, "coefficients per subgroup class, like 1,0,2")->required();
    c_bmul->add_option("--b", bmul_b)->required();
    c_bmul->add_flag("--json", as_json);
    c_bmul->callback([&] {
        GroupContext ctx = make_context(group_arg(g_spec));
        RingConstants cc = burnside_ring_constants_parallel(ctx);
        std::vector<Int> out = burnside_product_with(cc, int_list(bmul_a), int_list(bmul_b));
        if (as_json) {
            Json coeffs = Json::array();
            for (const Int& v : out) coeffs.push_back(int_to_json(v));
            emit(Json{{"coeffs", coeffs}});
        } else {
            std::cout << a_to_string(ctx, out) << "\n";
        }
    });

    auto* c_homs = app.add_subcommand("homs", "span basis of the morphisms between two sets");
    c_homs->add_option("group,--group", g_spec)->required();
    c_homs->add_option("--from", homs_from, "{\"orbits\":[{\"stabilizer\":i,\"count\":k}]}")
        ->required();
    c_homs->add_option("--to", homs_to)->required();
    c_homs->add_flag("--json", as_json);
    c_homs->callback([&] {
        GroupContext ctx = make_context(group_arg(g_spec));
        GSet s = gset_from_json(ctx, load_json(homs_from));
        GSet t = gset_from_json(ctx, load_json(homs_to));
        std::vector<SpanKey> basis = hom_basis(ctx, s, t);
        if (as_json) {
            Json spans = Json::array();
            for (const SpanKey& k : basis)
                spans.push_back(Json{{"p1", k.p1},
                                     {"p2", k.p2},
                                     {"stab", ctx.classes[ctx.class_of_mask(k.stab)].label}});
            emit(Json{{"count", basis.size()}, {"spans", spans}});
        } else {
            std::cout << basis.size() << " spans\n";
            for (const SpanKey& k : basis)
                std::cout << "  p1=" << k.p1 << " p2=" << k.p2
                          << " stab=" << ctx.classes[ctx.class_of_mask(k.stab)].label << "\n";
        }
    });

    // ---- mackey verbs --------------------------------------------------
    auto* c_mackey = app.add_subcommand("mackey", "operations on equivariant module systems");
    c_mackey->require_subcommand(1);
    std::string mk_file, mk_class, mk_group, mk_normal, mk_set;

    auto* m_check = c_mackey->add_subcommand("check", "verify the structure laws");
    m_check->add_option("file", mk_file, "system JSON (path or inline)")->required();
    m_check->add_flag("--json", as_json);
    m_check->callback([&] {
        MackeyFunctor m = mackey_from_json(load_json(mk_file));
        print_report(check_mackey_axioms_parallel(m), as_json);
    });

    auto* m_phi = c_mackey->add_subcommand("phi", "geometric fixed points at a normal class");
    m_phi->add_option("file", mk_file)->required();
    m_phi->add_option("--class", mk_class, "subgroup class index or label")->required();
    m_phi->add_flag("--json", as_json);
    m_phi->callback([&] {
        MackeyFunctor m = mackey_from_json(load_json(mk_file));
        MackeyFunctor out = geometric_fixed_points(m, resolve_class(*m.ctx, mk_class));
        if (as_json)
            emit(mackey_to_json(out));
        else
            std::cout << functor_text(out);
    });

    auto* m_psi = c_mackey->add_subcommand("psi", "categorical fixed points at a class");
    m_psi->add_option("file", mk_file)->required();
    m_psi->add_option("--class", mk_class)->required();
    m_psi->add_flag("--json", as_json);
    m_psi->callback([&] {
        MackeyFunctor m = mackey_from_json(load_json(mk_file));
        CategoricalFP out = categorical_fixed_points(m, resolve_class(*m.ctx, mk_class));
        if (as_json)
            emit(mackey_to_json(out.fun));
        else
            std::cout << functor_text(out.fun);
    });

    auto* m_infl = c_mackey->add_subcommand("infl", "inflation along a quotient");
    m_infl->add_option("file", mk_file, "system over the quotient group")->required();
    m_infl->add_option("--group", mk_group, "the covering group")->required();
    m_infl->add_option("--normal", mk_normal, "normal class in the covering group")->required();
    m_infl->add_flag("--json", as_json);
    m_infl->callback([&] {
        MackeyFunctor m = mackey_from_json(load_json(mk_file));
        auto ctx = std::make_shared<GroupContext>(make_context(group_arg(mk_group)));
        MackeyFunctor out = inflation(ctx, resolve_class(*ctx, mk_normal), m);
        if (as_json)
            emit(mackey_to_json(out));
        else
            std::cout << functor_text(out);
    });

    auto* m_eval = c_mackey->add_subcommand("eval", "value on a finite set");
    m_eval->add_option("file", mk_file)->required();
    m_eval->add_option("--set", mk_set, "{\"orbits\":[{\"stabilizer\":i,\"count\":k}]}")
        ->required();
    m_eval->add_flag("--json", as_json);
    m_eval->callback([&] {
        MackeyFunctor m = mackey_from_json(load_json(mk_file));
        GSet s = gset_from_json(*m.ctx, load_json(mk_set));
        Evaluation ev = evaluate(m, s);
        if (as_json)
            emit(Json{{"orbits", ev.orbs.size()},
                      {"module", module_to_json(ev.module)},
                      {"invariants", ev.module.pretty()}});
        else
            std::cout << ev.orbs.size() << " orbits\nvalue: " << ev.module.pretty() << "\n";
    });

    // ---- procyclic verbs -----------------------------------------------
    auto* c_zhat = app.add_subcommand("zhat", "completed orbit ring and level systems");
    c_zhat->require_subcommand(1);
    std::string z_expr, z_ring = "Z";
    long z_bound = 0, z_p = 0, z_l = 0, z_n = 0, z_deg = 0;
    std::string dbh_s = "1", dbh_sp = "1", glue_system = "aZ";

    auto* z_mul = c_zhat->add_subcommand("mul", "evaluate an orbit class expression");
    z_mul->add_option("expr", z_expr, "like \"e2*e3\" or \"2*e4 - 1/2\"")->required();
    z_mul->add_option("-N", z_bound, "truncate past this level");
    z_mul->add_flag("--json", as_json);
    z_mul->callback([&] {
        WittElement w = witt_eval(z_expr);
        if (z_bound > 0) w = witt_truncate(w, z_bound);
        if (as_json)
            emit(witt_to_json(w));
        else
            std::cout << witt_print(w) << "\n";
    });

    auto* z_ghost = c_zhat->add_subcommand("ghost", "fixed point functionals of an expression");
    z_ghost->add_option("expr", z_expr)->required();
    z_ghost->add_option("-N", z_bound, "components 1..N")->required();
    z_ghost->add_flag("--json", as_json);
    z_ghost->callback([&] {
        if (z_bound <= 0) throw InputError("the component bound must be positive");
        std::vector<Rat> gs = ghost_components(witt_eval(z_expr), z_bound);
        if (as_json) {
            Json arr = Json::array();
            for (const Rat& g : gs) arr.push_back(rat_to_string(g));
            emit(Json{{"ghost", arr}});
        } else {
            for (size_t i = 0; i < gs.size(); ++i)
                std::cout << "g" << (i + 1) << " = " << rat_to_string(gs[i]) << "\n";
        }
    });

    auto* z_idem = c_zhat->add_subcommand("idem", "p-local part idempotent");
    z_idem->add_option("-p", z_p, "prime")->required();
    z_idem->add_option("-l", z_l, "part index coprime to p")->required();
    z_idem->add_option("-N", z_bound, "truncation bound")->required();
    z_idem->add_flag("--json", as_json);
    z_idem->callback([&] {
        WittElement w = p_local_idempotent(z_p, z_l, z_bound);
        if (as_json)
            emit(witt_to_json(w));
        else
            std::cout << witt_print(w) << "\n";
    });

    auto* z_ptyp = c_zhat->add_subcommand("ptypical", "split a level by the part idempotents");
    z_ptyp->add_option("-p", z_p, "prime")->required();
    z_ptyp->add_option("-n", z_n, "level")->required();
    z_ptyp->add_option("-N", z_bound, "truncation bound")->required();
    z_ptyp->add_option("--ring", z_ring, "coefficients (default Z_(p))");
    z_ptyp->add_flag("--json", as_json);
    z_ptyp->callback([&] {
        CoeffRing ring = z_ring == "Z" ? CoeffRing::Qp(z_p) : ring_from_string(z_ring);
        ZMackeyTrunc m = burnside_truncation(z_bound, ring);
        PTypicalReport rep = p_typical_reconstruct_check(m, z_p, z_n);
        if (as_json) {
            emit(Json{{"parts", rep.parts}, {"ranks", rep.ranks}, {"decomposes", rep.decomposes}});
        } else {
            for (size_t i = 0; i < rep.parts.size(); ++i)
                std::cout << "part " << rep.parts[i] << ": rank " << rep.ranks[i] << "\n";
            std::cout << "decomposes: " << (rep.decomposes ? "yes" : "no") << "\n";
        }
    });

    auto* z_filt = c_zhat->add_subcommand("filt", "canonical filtration quotients");
    z_filt->add_option("-n", z_n, "index of the closed subgroup")->required();
    z_filt->add_option("-l", z_l, "single level (default: all levels)");
    z_filt->add_option("-N", z_bound, "truncation bound")->required();
    z_filt->add_option("--ring", z_ring);
    z_filt->add_flag("--json", as_json);
    z_filt->callback([&] {
        ZMackeyTrunc m = burnside_truncation(z_bound, ring_from_string(z_ring));
        std::vector<long> ls = z_l > 0 ? std::vector<long>{z_l} : m.levels;
        Json rows = Json::array();
        for (long l : ls) {
            if (z_n % l != 0) continue;
            FpModule q = filtration_quotient(m, z_n, l);
            if (as_json)
                rows.push_back(Json{{"level", l}, {"quotient", q.pretty()}});
            else
                std::cout << "level " << l << ": " << q.pretty() << "\n";
        }
        if (as_json) emit(Json{{"index", z_n}, {"quotients", rows}});
    });

    auto* z_phi = c_zhat->add_subcommand("phi", "fixed points at a closed subgroup");
    z_phi->add_option("-n", z_n, "index of the closed subgroup")->required();
    z_phi->add_option("-N", z_bound, "truncation bound")->required();
    z_phi->add_option("--ring", z_ring);
    z_phi->add_flag("--json", as_json);
    z_phi->callback([&] {
        ZMackeyTrunc m = burnside_truncation(z_bound, ring_from_string(z_ring));
        LevelFixedPoints fp = level_fixed_points(m, z_n);
        if (as_json) {
            Json j = mackey_to_json(fp.fun);
            j["truncation_exact"] = fp.truncation_exact;
            emit(j);
        } else {
            std::cout << functor_text(fp.fun)
                      << "truncation_exact: " << (fp.truncation_exact ? "yes" : "no") << "\n";
        }
    });

    // ---- homology and gluing (also reachable as zhat subcommands) -------
    auto add_dbh = [&](CLI::App* sc) {
        sc->add_option("-N", z_bound, "compute for every index n <= N")->required();
        sc->add_option("--deg", z_deg, "homology degree")->required();
        sc->add_option("--s", dbh_s, "orbit sizes of the first set (default 1)");
        sc->add_option("--sp", dbh_sp, "orbit sizes of the second set (default 1)");
        sc->add_flag("--json", as_json);
        sc->callback([&] {
            if (z_bound <= 0) throw InputError("the index bound must be positive");
            std::vector<long> s = long_list(dbh_s), sp = long_list(dbh_sp);
            Json rows = Json::array();
            for (long n = 1; n <= z_bound; ++n) {
                std::vector<ModInvariants> table = dbh_degree_table(n, s, sp, z_deg);
                std::string inv = table[size_t(z_deg)].to_string(CoeffRing::Z());
                if (as_json)
                    rows.push_back(Json{{"n", n}, {"h", inv}});
                else
                    std::cout << n << ": " << inv << "\n";
            }
            if (as_json) emit(Json{{"degree", z_deg}, {"values", rows}});
        });
    };
    add_dbh(app.add_subcommand("dbh", "homology of the pair permutation modules"));
    add_dbh(c_zhat->add_subcommand("dbh", "homology of the pair permutation modules"));

    auto add_glue = [&](CLI::App* sc) {
        sc->add_option("--n", z_n, "index of the covering level")->required();
        sc->add_option("--l", z_l, "germ level")->required();
        sc->add_option("-N", z_bound, "truncation bound (for the built-in system)");
        sc->add_option("--system", glue_system, "aZ (default) or a system JSON file");
        sc->add_option("--ring", z_ring);
        sc->add_flag("--json", as_json);
        sc->callback([&] {
            ZMackeyTrunc m;
            if (glue_system == "aZ") {
                if (z_bound <= 0) throw InputError("-N is required with the built-in system");
                m = burnside_truncation(z_bound, ring_from_string(z_ring));
            } else {
                m = zmackey_from_json(load_json(glue_system));
            }
            GluingValue g = gluing_value(m, z_n, z_l);
            std::string kind = g.diagonal ? "diagonal" : (g.even.is_zero() && g.odd.is_zero()
                                                              ? "zero"
                                                              : "prime cover");
            if (z_l != z_n && z_n % z_l == 0) {
                long q = z_n / z_l;
                bool prime = q >= 2;
                for (long d = 2; d * d <= q; ++d)
                    if (q % d == 0) prime = false;
                if (prime) kind = "prime cover";
            }
            if (as_json) {
                emit(Json{{"case", kind},
                          {"even", module_to_json(g.even)},
                          {"odd", module_to_json(g.odd)},
                          {"even_invariants", g.even.pretty()},
                          {"odd_invariants", g.odd.pretty()},
                          {"residual_even", mat_to_json(g.residual_even.matrix)},
                          {"residual_odd", mat_to_json(g.residual_odd.matrix)}});
            } else {
                std::cout << "case: " << kind << "\neven: " << g.even.pretty()
                          << "\nodd: " << g.odd.pretty() << "\n";
            }
        });
    };
    add_glue(app.add_subcommand("glue", "germ of the gluing datum at a level"));
    add_glue(c_zhat->add_subcommand("glue", "germ of the gluing datum at a level"));

    // ---- tate ------------------------------------------------------------
    std::string tate_module = "trivZ";
    long tate_n = 0;
    auto* c_tate = app.add_subcommand("tate", "two periodic cohomology of a cyclic action");
    c_tate->add_option("--n", tate_n, "order of the acting group")->required();
    c_tate->add_option("--module", tate_module,
                       "trivZ or {\"module\":…,\"sigma\":…} (path or inline)");
    c_tate->add_flag("--json", as_json);
    c_tate->callback([&] {
        FpModule m;
        ModuleMap sigma = ModuleMap::identity(m);
        if (tate_module == "trivZ") {
            m = FpModule::free_module(CoeffRing::Z(), 1);
            sigma = ModuleMap::identity(m);
        } else {
            Json j = load_json(tate_module);
            m = module_from_json(j.contains("module") ? j.at("module") : j);
            if (j.contains("sigma"))
                sigma = ModuleMap(m, m, mat_from_json(j.at("sigma"), m.gens, m.gens));
            else
                sigma = ModuleMap::identity(m);
        }
        TateResult t = cyclic_tate(tate_n, m, sigma);
        if (as_json)
            emit(Json{{"even", module_to_json(t.even)},
                      {"odd", module_to_json(t.odd)},
                      {"even_invariants", t.even.pretty()},
                      {"odd_invariants", t.odd.pretty()}});
        else
            std::cout << "even: " << t.even.pretty() << "\nodd: " << t.odd.pretty() << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const DomainError& e) {
        emit(Json{{"error", "domain"}, {"message", e.what()}});
        return 1;
    } catch (const InputError& e) {
        emit(Json{{"error", "input"}, {"message", e.what()}});
        return 2;
    } catch (const Json::exception& e) {
        emit(Json{{"error", "input"}, {"message", e.what()}});
        return 2;
    }
    return 0;
}
