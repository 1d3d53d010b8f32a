#include "mackeylab/json_io.hpp"

#include <cctype>
#include <set>

#include "mackeylab/error.hpp"

namespace mackeylab {

namespace {

Json rat_to_json(const Rat& x) {
    std::string s = rat_to_string(x);
    if (s.find('/') == std::string::npos) {
        try {
            size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used == s.size()) return Json(v);
        } catch (const std::exception&) {
        }
    }
    return Json(s);
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw InputError("expected an exact number: integer or \"a/b\" string");
}

long require_long(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw InputError(std::string("expected an integer ") + what);
    return j.get<long>();
}

const Json& require_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

CoeffRing ring_from_string(const std::string& s) {
    if (s == "Z") return CoeffRing::Z();
    if (s == "Q") return CoeffRing::Q();
    if (s.rfind("Z/", 0) == 0) {
        try {
            return CoeffRing::Zmod(std::stol(s.substr(2)));
        } catch (const std::exception&) {
        }
    }
    if (s.rfind("Z_(", 0) == 0 && s.back() == ')') {
        try {
            return CoeffRing::Qp(std::stol(s.substr(3, s.size() - 4)));
        } catch (const std::exception&) {
        }
    }
    throw InputError("unknown ring \"" + s + "\" (expected Z, Q, Z/m, or Z_(p))");
}

Json mat_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows; ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(rat_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_from_json(const Json& j, int rows, int cols) {
    if (!j.is_array()) throw InputError("matrix must be an array of rows");
    if (j.empty() && rows != 0 && cols != 0)
        throw InputError("matrix shape: expected " + std::to_string(rows) + " rows");
    if (!j.empty() && int(j.size()) != rows)
        throw InputError("matrix shape: expected " + std::to_string(rows) + " rows, got " +
                         std::to_string(j.size()));
    Mat m(rows, cols);
    for (int r = 0; r < int(j.size()); ++r) {
        const Json& row = j.at(r);
        if (!row.is_array() || int(row.size()) != cols)
            throw InputError("matrix shape: expected rows of length " + std::to_string(cols));
        for (int c = 0; c < cols; ++c) m.at(r, c) = rat_from_json(row.at(c));
    }
    return m;
}

Mat mat_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("matrix must be an array of rows");
    int rows = int(j.size());
    int cols = rows == 0 ? 0 : (j.at(0).is_array() ? int(j.at(0).size())
                                                   : throw InputError("matrix rows must be arrays"));
    return mat_from_json(j, rows, cols);
}

Json module_to_json(const FpModule& m) {
    Json rels = Json::array();
    for (int c = 0; c < m.relations.cols; ++c) {
        Json rel = Json::array();
        for (int r = 0; r < m.gens; ++r) rel.push_back(rat_to_json(m.relations.at(r, c)));
        rels.push_back(std::move(rel));
    }
    return Json{{"ring", m.ring.to_string()}, {"gens", m.gens}, {"relations", std::move(rels)}};
}

FpModule module_from_json(const Json& j) {
    CoeffRing ring = ring_from_string(require_field(j, "ring").get<std::string>());
    long gens = require_long(require_field(j, "gens"), "generator count");
    if (gens < 0) throw InputError("generator count must not be negative");
    const Json& rels = require_field(j, "relations");
    if (!rels.is_array()) throw InputError("relations must be an array of vectors");
    Mat rel(int(gens), int(rels.size()));
    for (int c = 0; c < int(rels.size()); ++c) {
        const Json& v = rels.at(c);
        if (!v.is_array() || long(v.size()) != gens)
            throw InputError("relation vectors must have length gens");
        for (int r = 0; r < int(gens); ++r) rel.at(r, c) = rat_from_json(v.at(r));
    }
    return FpModule(ring, int(gens), std::move(rel));
}

FiniteGroup group_from_json(const Json& j) {
    std::string kind = require_field(j, "kind").get<std::string>();
    if (kind == "cyclic") return make_cyclic(int(require_long(require_field(j, "n"), "order")));
    if (kind == "table") {
        const Json& mul = require_field(j, "mul");
        if (!mul.is_array()) throw InputError("mul must be a square array");
        std::vector<std::vector<int>> rows;
        for (const Json& r : mul) {
            if (!r.is_array()) throw InputError("mul must be a square array");
            rows.push_back(r.get<std::vector<int>>());
        }
        return make_from_table(rows);
    }
    if (kind == "perm") {
        long degree = require_long(require_field(j, "degree"), "degree");
        const Json& gens = require_field(j, "gens");
        if (!gens.is_array()) throw InputError("gens must be an array of permutations");
        std::vector<std::vector<int>> perms;
        for (const Json& p : gens) perms.push_back(p.get<std::vector<int>>());
        return make_from_perms(int(degree), perms);
    }
    throw InputError("unknown group kind \"" + kind + "\"");
}

Json group_to_json(const FiniteGroup& g) {
    Json mul = Json::array();
    for (int a = 0; a < g.order; ++a) {
        Json row = Json::array();
        for (int b = 0; b < g.order; ++b) row.push_back(g.mul(a, b));
        mul.push_back(std::move(row));
    }
    return Json{{"kind", "table"}, {"mul", std::move(mul)}};
}

FiniteGroup group_from_spec(const std::string& s) {
    if (!s.empty() && s[0] == '{') {
        Json j = Json::parse(s, nullptr, false);
        if (j.is_discarded()) throw InputError("group spec is not valid JSON");
        return group_from_json(j);
    }
    auto colon = s.find(':');
    std::string head = s.substr(0, colon);
    auto arg = [&]() -> int {
        if (colon == std::string::npos)
            throw InputError("group \"" + head + "\" needs a size, like \"" + head + ":4\"");
        try {
            return std::stoi(s.substr(colon + 1));
        } catch (const std::exception&) {
            throw InputError("bad group size in \"" + s + "\"");
        }
    };
    if (head == "cyclic") return make_cyclic(arg());
    if (head == "dihedral") return make_dihedral(arg());
    if (head == "sym") return make_sym(arg());
    if (s == "klein") return make_klein();
    if (s == "q8") return make_q8();
    throw InputError("unknown group \"" + s +
                     "\" (expected cyclic:n, dihedral:n, sym:n, klein, q8, or JSON)");
}

GSet gset_from_json(const GroupContext& ctx, const Json& j) {
    const Json& orbits = require_field(j, "orbits");
    if (!orbits.is_array()) throw InputError("orbits must be an array");
    GSet out{&ctx.group, 0, {}, "set"};
    bool first = true;
    for (const Json& o : orbits) {
        long cid = require_long(require_field(o, "stabilizer"), "stabilizer class");
        long count = o.contains("count") ? require_long(o.at("count"), "count") : 1;
        if (cid < 0 || cid >= long(ctx.classes.size()))
            throw InputError("stabilizer class out of range");
        if (count < 0) throw InputError("count must not be negative");
        for (long k = 0; k < count; ++k) {
            GSet orb = standard_orbit(ctx, int(cid));
            out = first ? orb : disjoint_union(out, orb);
            first = false;
        }
    }
    return out;
}

Json mackey_to_json(const MackeyFunctor& m) {
    Json classes = Json::array();
    for (int i = 0; i < m.classes(); ++i) {
        Json weyl = Json::array();
        for (const ModuleMap& w : m.weyl[i]) weyl.push_back(mat_to_json(w.matrix));
        classes.push_back(Json{{"module", module_to_json(m.value[i])}, {"weyl", std::move(weyl)}});
    }
    Json res = Json::array(), tr = Json::array();
    for (int i = 0; i < m.classes(); ++i)
        for (int l = 0; l < int(m.res[i].size()); ++l) {
            res.push_back(Json{{"edge", Json::array({i, l})}, {"matrix", mat_to_json(m.res[i][l].matrix)}});
            tr.push_back(Json{{"edge", Json::array({i, l})}, {"matrix", mat_to_json(m.tr[i][l].matrix)}});
        }
    return Json{{"ring", m.ring.to_string()},
                {"group", group_to_json(m.ctx->group)},
                {"classes", std::move(classes)},
                {"res", std::move(res)},
                {"tr", std::move(tr)}};
}

MackeyFunctor mackey_from_json(const Json& j) {
    auto ctx = std::make_shared<GroupContext>(make_context(group_from_json(require_field(j, "group"))));
    auto lat = std::make_shared<LocalLattice>(build_local_lattice(*ctx));
    MackeyFunctor m;
    m.ctx = ctx;
    m.lat = lat;
    m.ring = ring_from_string(require_field(j, "ring").get<std::string>());
    int nc = int(ctx->classes.size());
    const Json& classes = require_field(j, "classes");
    if (!classes.is_array() || int(classes.size()) != nc)
        throw InputError("classes: expected one entry per subgroup class (" +
                         std::to_string(nc) + ")");
    m.value.reserve(nc);
    for (int i = 0; i < nc; ++i) {
        const Json& c = classes.at(i);
        m.value.push_back(module_from_json(require_field(c, "module")));
        const Json& weyl = require_field(c, "weyl");
        if (!weyl.is_array() || int(weyl.size()) != ctx->classes[i].weyl.order)
            throw InputError("weyl: expected one matrix per Weyl element at class " +
                             std::to_string(i));
        std::vector<ModuleMap> ws;
        int g = m.value[i].gens;
        for (const Json& w : weyl) ws.emplace_back(m.value[i], m.value[i], mat_from_json(w, g, g));
        m.weyl.push_back(std::move(ws));
    }
    m.res.assign(nc, {});
    m.tr.assign(nc, {});
    for (int i = 0; i < nc; ++i) {
        int nl = int(lat->locals[i].size());
        m.res[i].assign(nl, ModuleMap::zero_map(m.value[i], m.value[i]));
        m.tr[i].assign(nl, ModuleMap::zero_map(m.value[i], m.value[i]));
    }
    auto load_edges = [&](const char* key, bool is_res) {
        const Json& edges = require_field(j, key);
        if (!edges.is_array()) throw InputError(std::string(key) + " must be an array");
        std::set<std::pair<int, int>> seen;
        for (const Json& e : edges) {
            const Json& edge = require_field(e, "edge");
            if (!edge.is_array() || edge.size() != 2) throw InputError("edge must be [class, local]");
            int i = int(require_long(edge.at(0), "class"));
            int l = int(require_long(edge.at(1), "local"));
            if (i < 0 || i >= nc || l < 0 || l >= int(lat->locals[i].size()))
                throw InputError("edge out of range");
            if (!seen.insert({i, l}).second) throw InputError("duplicate edge");
            int tgt = ctx->subgroups[lat->locals[i][l]].class_id;
            const FpModule& lo = m.value[tgt];
            const FpModule& hi = m.value[i];
            const Json& mat = require_field(e, "matrix");
            if (is_res)
                m.res[i][l] = ModuleMap(hi, lo, mat_from_json(mat, lo.gens, hi.gens));
            else
                m.tr[i][l] = ModuleMap(lo, hi, mat_from_json(mat, hi.gens, lo.gens));
        }
        for (int i = 0; i < nc; ++i)
            for (int l = 0; l < int(lat->locals[i].size()); ++l)
                if (!seen.count({i, l}))
                    throw InputError(std::string(key) + ": missing edge [" + std::to_string(i) +
                                     ", " + std::to_string(l) + "]");
    };
    load_edges("res", true);
    load_edges("tr", false);
    return m;
}

Json witt_to_json(const WittElement& w) {
    Json terms = Json::array();
    for (const auto& [i, c] : w.coeffs)
        terms.push_back(Json{{"index", i}, {"coeff", rat_to_string(c)}});
    return Json{{"terms", std::move(terms)}};
}

WittElement witt_from_json(const Json& j) {
    const Json& terms = require_field(j, "terms");
    if (!terms.is_array()) throw InputError("terms must be an array");
    WittElement w;
    for (const Json& t : terms) {
        long i = require_long(require_field(t, "index"), "orbit index");
        if (i <= 0) throw InputError("orbit index must be positive");
        w.add_term(i, rat_from_json(require_field(t, "coeff")));
    }
    return w;
}

namespace {

struct WittLexer {
    const std::string& s;
    size_t p = 0;

    void skip() {
        while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
    }
    bool eat(char c) {
        skip();
        if (p < s.size() && s[p] == c) {
            ++p;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return p < s.size() ? s[p] : '\0';
    }
    std::string number() {
        skip();
        size_t q = p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (q == p) throw InputError("expected a number at position " + std::to_string(q));
        return s.substr(q, p - q);
    }
};

WittElement parse_expr(WittLexer& lx);

WittElement parse_factor(WittLexer& lx) {
    if (lx.eat('(')) {
        WittElement e = parse_expr(lx);
        if (!lx.eat(')')) throw InputError("missing closing parenthesis");
        return e;
    }
    char c = lx.peek();
    if (c == 'e') {
        ++lx.p;
        long idx = std::stol(lx.number());
        if (idx <= 0) throw InputError("orbit index must be positive");
        return witt_basis(idx);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num = lx.number();
        if (lx.eat('/')) num += "/" + lx.number();
        return witt_scale(witt_unit(), rat_from_string(num));
    }
    throw InputError("expected a number, an orbit class, or \"(\" at position " +
                     std::to_string(lx.p));
}

WittElement parse_term(WittLexer& lx) {
    WittElement e = parse_factor(lx);
    while (lx.peek() == '*') {
        ++lx.p;
        e = witt_product(e, parse_factor(lx));
    }
    return e;
}

WittElement parse_expr(WittLexer& lx) {
    bool neg = false;
    if (lx.eat('-'))
        neg = true;
    else
        lx.eat('+');
    WittElement e = parse_term(lx);
    if (neg) e = witt_scale(e, Rat(-1));
    for (;;) {
        char c = lx.peek();
        if (c != '+' && c != '-') break;
        ++lx.p;
        WittElement t = parse_term(lx);
        e = witt_add(e, c == '-' ? witt_scale(t, Rat(-1)) : t);
    }
    return e;
}

}  // namespace

WittElement witt_eval(const std::string& expr) {
    WittLexer lx{expr};
    WittElement e = parse_expr(lx);
    lx.skip();
    if (lx.p != expr.size())
        throw InputError("trailing input at position " + std::to_string(lx.p));
    return e;
}

Json zmackey_to_json(const ZMackeyTrunc& m) {
    Json value = Json::array(), sigma = Json::array();
    for (const FpModule& v : m.value) value.push_back(module_to_json(v));
    for (const ModuleMap& s : m.sigma) sigma.push_back(mat_to_json(s.matrix));
    Json push = Json::array(), pull = Json::array();
    for (const auto& [e, f] : m.push)
        push.push_back(Json{{"edge", Json::array({e.first, e.second})}, {"matrix", mat_to_json(f.matrix)}});
    for (const auto& [e, f] : m.pull)
        pull.push_back(Json{{"edge", Json::array({e.first, e.second})}, {"matrix", mat_to_json(f.matrix)}});
    return Json{{"ring", m.ring.to_string()}, {"bound", m.bound},
                {"levels", m.levels},        {"value", std::move(value)},
                {"sigma", std::move(sigma)}, {"push", std::move(push)},
                {"pull", std::move(pull)}};
}

ZMackeyTrunc zmackey_from_json(const Json& j) {
    ZMackeyTrunc m;
    m.ring = ring_from_string(require_field(j, "ring").get<std::string>());
    m.bound = require_long(require_field(j, "bound"), "bound");
    const Json& levels = require_field(j, "levels");
    if (!levels.is_array()) throw InputError("levels must be an array");
    for (const Json& l : levels) m.levels.push_back(require_long(l, "level"));
    const Json& value = require_field(j, "value");
    const Json& sigma = require_field(j, "sigma");
    if (!value.is_array() || value.size() != m.levels.size())
        throw InputError("value: expected one module per level");
    if (!sigma.is_array() || sigma.size() != m.levels.size())
        throw InputError("sigma: expected one matrix per level");
    for (const Json& v : value) m.value.push_back(module_from_json(v));
    for (size_t i = 0; i < m.levels.size(); ++i) {
        int g = m.value[i].gens;
        m.sigma.emplace_back(m.value[i], m.value[i], mat_from_json(sigma.at(i), g, g));
    }
    auto load = [&](const char* key, std::map<std::pair<long, long>, ModuleMap>& out,
                    bool from_big) {
        const Json& edges = require_field(j, key);
        if (!edges.is_array()) throw InputError(std::string(key) + " must be an array");
        for (const Json& e : edges) {
            const Json& edge = require_field(e, "edge");
            if (!edge.is_array() || edge.size() != 2) throw InputError("edge must be [a, b]");
            long a = require_long(edge.at(0), "level"), b = require_long(edge.at(1), "level");
            const FpModule& ma = m.at(a);
            const FpModule& mb = m.at(b);
            const FpModule& src = from_big ? ma : mb;
            const FpModule& tgt = from_big ? mb : ma;
            out.emplace(std::make_pair(a, b),
                        ModuleMap(src, tgt,
                                  mat_from_json(require_field(e, "matrix"), tgt.gens, src.gens)));
        }
    };
    load("push", m.push, true);
    load("pull", m.pull, false);
    return m;
}

}  // namespace mackeylab
