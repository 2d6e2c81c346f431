#include "shrub/interp.hpp"

namespace shrub {

Logic Interpretation::logic() const { return std::max(logic_of(domain), logic_of(edge)); }

InterpretResult apply_interpretation(const Interpretation& I, const Structure& s, EvalOptions opt) {
    int n = s.n, d = I.dim;
    long long total = 1;
    for (int i = 0; i < d; ++i) {
        total *= n;
        if (total > 1000000) throw ResourceGuard("interpretation universe too large");
    }
    InterpretResult out;
    Evaluator dom(s, I.domain, I.x, {}, opt);
    std::vector<int> tup(d);
    for (long long idx = 0; idx < total; ++idx) {
        long long r = idx;
        for (int i = d - 1; i >= 0; --i) {
            tup[i] = (int)(r % n);
            r /= n;
        }
        if (dom(tup)) out.tuples.push_back(tup);
    }
    std::vector<std::string> params = I.x;
    params.insert(params.end(), I.y.begin(), I.y.end());
    Evaluator ed(s, I.edge, params, {}, opt);
    int N = (int)out.tuples.size();
    out.g = Graph(N);
    std::vector<int> args(2 * d);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i == j || out.g.adj(i, j)) continue;
            std::copy(out.tuples[i].begin(), out.tuples[i].end(), args.begin());
            std::copy(out.tuples[j].begin(), out.tuples[j].end(), args.begin() + d);
            if (ed(args)) out.g.add_edge(i, j);
        }
    return out;
}

InterpretResult apply_interpretation(const Interpretation& I, const Graph& g, EvalOptions opt) {
    return apply_interpretation(I, to_structure(g), opt);
}

std::vector<std::string> tuple_vars(const Interpretation& I, const std::string& v) {
    if (I.dim == 1) return {v};
    std::vector<std::string> out;
    for (int i = 1; i <= I.dim; ++i) out.push_back(v + "." + std::to_string(i));
    return out;
}

namespace {

struct Rewriter {
    const Interpretation& I;
    bool trivial_domain;

    Formula domain_at(const std::vector<std::string>& vs) {
        std::map<std::string, std::string> m;
        for (int i = 0; i < I.dim; ++i) m[I.x[i]] = vs[i];
        return substitute(I.domain, m);
    }

    Formula edge_at(const std::vector<std::string>& us, const std::vector<std::string>& vs) {
        std::map<std::string, std::string> m1, m2;
        for (int i = 0; i < I.dim; ++i) {
            m1[I.x[i]] = us[i];
            m1[I.y[i]] = vs[i];
            m2[I.x[i]] = vs[i];
            m2[I.y[i]] = us[i];
        }
        return conj({disj({substitute(I.edge, m1), substitute(I.edge, m2)}), neg(same(us, vs))});
    }

    Formula same(const std::vector<std::string>& us, const std::vector<std::string>& vs) {
        std::vector<Formula> e;
        for (int i = 0; i < I.dim; ++i) e.push_back(eq(us[i], vs[i]));
        return conj(e);
    }

    Formula subset_guard(const std::string& X) {
        std::string u = fresh_name("g");
        return forall(u, implies(in(X, u), domain_at({u})));
    }

    Formula rw(const Formula& f) {
        auto tv = [&](const std::string& v) { return tuple_vars(I, v); };
        switch (f->op) {
            case Op::True:
            case Op::False: return f;
            case Op::Rel:
                if (f->name != "E") throw FormulaError("relation " + f->name + " is not produced by " + I.name);
                return edge_at(tv(f->vars[0]), tv(f->vars[1]));
            case Op::Eq: return same(tv(f->vars[0]), tv(f->vars[1]));
            case Op::Color: throw FormulaError("colours are not produced by " + I.name);
            case Op::In:
            case Op::Card:
                if (I.dim != 1) throw FormulaError("set variables need a 1-dimensional interpretation");
                return f;
            case Op::Not: return neg(rw(f->kids[0]));
            case Op::And:
            case Op::Or: {
                std::vector<Formula> ks;
                for (auto& k : f->kids) ks.push_back(rw(k));
                return f->op == Op::And ? conj(ks) : disj(ks);
            }
            case Op::Implies: return implies(rw(f->kids[0]), rw(f->kids[1]));
            case Op::Iff: return iff(rw(f->kids[0]), rw(f->kids[1]));
            case Op::Xor: return fxor(rw(f->kids[0]), rw(f->kids[1]));
            case Op::Exists:
            case Op::Forall: {
                auto vs = tv(f->name);
                Formula body = rw(f->kids[0]);
                if (!trivial_domain)
                    body = f->op == Op::Exists ? conj({domain_at(vs), body}) : implies(domain_at(vs), body);
                for (int i = I.dim - 1; i >= 0; --i)
                    body = f->op == Op::Exists ? exists(vs[i], body) : forall(vs[i], body);
                return body;
            }
            case Op::ExistsSet:
            case Op::ForallSet: {
                if (I.dim != 1) throw FormulaError("set quantifiers need a 1-dimensional interpretation");
                Formula body = rw(f->kids[0]);
                if (f->op == Op::ExistsSet) {
                    if (!trivial_domain) body = conj({subset_guard(f->name), body});
                    return exists_set(f->name, body);
                }
                if (!trivial_domain) body = implies(subset_guard(f->name), body);
                return forall_set(f->name, body);
            }
            case Op::Conn: {
                if (I.dim != 1) throw FormulaError("connectivity needs a 1-dimensional interpretation");
                const auto& v = f->vars;
                Formula body = rw(f->kids[0]);
                if (!trivial_domain) body = conj({domain_at({v[2]}), domain_at({v[3]}), body});
                return conn(v[0], v[1], v[2], v[3], body);
            }
        }
        throw FormulaError("unknown node");
    }
};

}  // namespace

Formula rewrite_through(const Interpretation& I, const Formula& phi) {
    if (I.dim > 1 && logic_of(phi) != Logic::FO)
        throw FormulaError("MSO rewriting needs a 1-dimensional interpretation");
    Rewriter r{I, I.domain->op == Op::True};
    return r.rw(phi);
}

InterpretResult apply_transduction(const Transduction& T, const Graph& g, const std::vector<Bits>& coloring,
                                   EvalOptions opt) {
    if ((int)coloring.size() != T.k) throw FormulaError("transduction expects " + std::to_string(T.k) + " colours");
    return apply_interpretation(T.interp, to_structure(ColoredGraph{g, coloring}), opt);
}

void enumerate_transduction(const Transduction& T, const Graph& g,
                            const std::function<bool(const std::vector<Bits>&, const InterpretResult&)>& f) {
    int bits = g.n() * T.k;
    if (bits > kTransductionCap) throw ResourceGuard("transduction enumeration over 2^" + std::to_string(bits));
    for (long long mask = 0; mask < (1LL << bits); ++mask) {
        std::vector<Bits> col(T.k, Bits(g.n()));
        for (int b = 0; b < bits; ++b)
            if (mask >> b & 1) col[b / g.n()].set(b % g.n());
        if (!f(col, apply_transduction(T, g, col))) return;
    }
}

// ---------------------------------------------------------------- built-ins

namespace {

std::string tw(const std::string& a, const std::string& b, const std::string& z) {
    return "(forall " + z + " (implies (and (not (= " + z + " " + a + ")) (not (= " + z + " " + b + "))) (iff (E " +
           z + " " + a + ") (E " + z + " " + b + "))))";
}

Interpretation one_dim(std::string name, const std::string& domain, const std::string& edge) {
    return {std::move(name), 1, {"x"}, {"y"}, parse_formula(domain), parse_formula(edge)};
}

std::string sw_delta(const std::string& v) {
    return "(forall w (implies (not (= " + v + " w)) (not " + tw(v, "w", "z") + ")))";
}
std::string sw_sigma(const std::string& v) { return "(not " + sw_delta(v) + ")"; }
std::string sw_pi(const std::string& a, const std::string& b) {
    return "(forall p (implies (and (not (= p " + a + ")) (not (= p " + b + ")) " + sw_sigma("p") + ") (iff (E " + a +
           " p) (E " + b + " p))))";
}
std::string sw_edge() {
    return "(xor (E x y) (exists q (and " + sw_sigma("q") + " " + sw_pi("q", "y") + " (E x q))))";
}

std::string hg_delta(const std::string& v) {
    return "(and (exists y1 (exists y2 (and (not (= y1 y2)) " + tw("y1", "y2", "z") + " (not (E y1 " + v +
           ")) (not (E y2 " + v + ")))))"
           " (exists y3 (exists y4 (and (not (= y3 y4)) " + tw("y3", "y4", "z") + " (E y3 " + v + ") (E y4 " + v +
           ")))))";
}
// N(b) \ {a} inside N(a)
std::string hg_sigma(const std::string& a, const std::string& b) {
    return "(and (not (= " + a + " " + b + ")) (forall z (implies (and (not (= z " + a + ")) (E " + b + " z)) (E " +
           a + " z))))";
}
std::string hg_succ(const std::string& a, const std::string& b) {
    return "(and " + hg_sigma(b, a) + " (not (exists r (and " + hg_delta("r") + " " + hg_sigma(b, "r") + " " +
           hg_sigma("r", a) + "))))";
}

std::string distinct(const std::vector<std::string>& vs) {
    std::string s = "(and";
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j) s += " (not (= " + vs[i] + " " + vs[j] + "))";
    return s + ")";
}

// At least k distinct vertices with a twin.
std::string at_least_twin_having(int k) {
    std::vector<std::string> vs;
    for (int i = 1; i <= k; ++i) vs.push_back("h" + std::to_string(i));
    std::string body = distinct(vs);
    for (int i = k; i >= 1; --i) {
        const std::string& v = vs[i - 1];
        body = "(exists " + v + " (and (exists o (and (not (= " + v + " o)) " + tw(v, "o", "z") + ")) " + body + "))";
    }
    return body;
}

}  // namespace

const Interpretation& identity_interpretation() {
    static Interpretation I = one_dim("identity", "true", "(E x y)");
    return I;
}

const Interpretation& complement_interpretation() {
    static Interpretation I = one_dim("complement", "true", "(and (not (E x y)) (not (= x y)))");
    return I;
}

const Interpretation& order_to_path_interpretation() {
    static Interpretation I =
        one_dim("order-to-path", "true", "(and (< x y) (not (exists z (and (< x z) (< z y)))))");
    return I;
}

const Interpretation& swimlane_interpretation() {
    static Interpretation I = one_dim("swimlane", sw_delta("x"), sw_edge());
    return I;
}

const Interpretation& halfgraph_interpretation() {
    static Interpretation I =
        one_dim("halfgraph", hg_delta("x"), "(or " + hg_succ("x", "y") + " " + hg_succ("y", "x") + ")");
    return I;
}

const Interpretation& combined_path_interpretation() {
    static Interpretation I = [] {
        auto small = parse_formula("(not (exists c1 (exists c2 (exists c3 (exists c4 " +
                                   distinct({"c1", "c2", "c3", "c4"}) + ")))))");
        auto four = parse_formula("(and " + at_least_twin_having(4) + " (not " + at_least_twin_having(5) + "))");
        const auto& hg = halfgraph_interpretation();
        const auto& sw = swimlane_interpretation();
        auto big = neg(small);
        Formula domain = disj({small, conj({big, four, hg.domain}), conj({big, neg(four), sw.domain})});
        Formula e = disj({conj({small, edge("x", "y")}), conj({big, four, hg.edge}),
                             conj({big, neg(four), sw.edge})});
        return Interpretation{"combined", 1, {"x"}, {"y"}, domain, e};
    }();
    return I;
}

const Transduction& three_path_transduction() {
    static Transduction T{3, one_dim("three-path", "(color 1 x)",
                                     "(xor (E x y) (exists z (and (color 2 z)"
                                     " (forall w (implies (color 3 w) (iff (E y w) (E z w)))) (E x z))))")};
    return T;
}

namespace {

Formula is_min(const std::string& v) { return neg(exists("z", rel("<", "z", v))); }
Formula is_max(const std::string& v) { return neg(exists("z", rel("<", v, "z"))); }

// pattern over {*,0,1}^5: 0 = minimum, 1 = maximum
Formula delta_s(const std::vector<std::string>& v, const std::string& pattern) {
    std::vector<Formula> cs;
    for (int i = 0; i < 5; ++i) {
        if (pattern[i] == '0') cs.push_back(is_min(v[i]));
        if (pattern[i] == '1') cs.push_back(is_max(v[i]));
    }
    return conj(cs);
}

Interpretation make_hstar(Flavor f) {
    std::vector<std::string> x, y;
    for (int i = 1; i <= 5; ++i) {
        x.push_back("x" + std::to_string(i));
        y.push_back("y" + std::to_string(i));
    }
    auto A = [](const std::vector<std::string>& v) { return delta_s(v, "*0000"); };
    auto B = [](const std::vector<std::string>& v) { return delta_s(v, "*1111"); };
    auto L = [](const std::vector<std::string>& v) { return disj({delta_s(v, "10100"), delta_s(v, "10101")}); };
    auto R = [](const std::vector<std::string>& v) { return delta_s(v, "10110"); };
    std::vector<Formula> phi{conj({A(x), B(y), disj({rel("<", x[0], y[0]), eq(x[0], y[0])})}),
                             conj({A(x), R(y)})};
    if (f.aa) phi.push_back(conj({A(x), A(y)}));
    if (f.bb) phi.push_back(conj({disj({B(x), L(x), R(x)}), disj({B(y), L(y), R(y)})}));
    return {"hstar-" + f.name(), 5, x, y, disj({A(x), B(x), L(x), R(x)}), disj(phi)};
}

std::string df_diff(const std::string& w) {
    return "(and (not (= " + w + " a)) (not (= " + w + " b)) (xor (E a " + w + ") (E b " + w + ")))";
}

// Neighbourhoods of a and b disagree on at most 4 vertices outside {a, b}.
Formula deflip_pi() {
    std::vector<std::string> w{"w1", "w2", "w3", "w4", "w5"};
    std::string body = "true";
    for (int i = 4; i >= 0; --i) {
        std::vector<std::string> prev(w.begin(), w.begin() + i + 1);
        body = "(exists " + w[i] + " (and " + (i > 0 ? distinct(prev) : "true") + " " + df_diff(w[i]) + " " + body +
               "))";
    }
    return parse_formula("(not " + body + ")");
}

}  // namespace

const Interpretation& order_to_hstar_interpretation(Flavor f) {
    static const Interpretation I[4] = {make_hstar({false, false}), make_hstar({true, false}),
                                        make_hstar({false, true}), make_hstar({true, true})};
    return I[(f.aa ? 1 : 0) + (f.bb ? 2 : 0)];
}

const Interpretation& deflip_nibble_interpretation() {
    static Interpretation I = [] {
        auto pi = deflip_pi();
        auto pi_at = [&](const std::string& a) { return substitute(pi, {{"a", a}, {"b", "y"}}); };
        // x has at least three neighbours in the part of y
        Formula plus = exists(
            "z1", conj({edge("x", "z1"), pi_at("z1"),
                        exists("z2", conj({neg(eq("z2", "z1")), edge("x", "z2"), pi_at("z2"),
                                           exists("z3", conj({neg(eq("z3", "z1")), neg(eq("z3", "z2")),
                                                              edge("x", "z3"), pi_at("z3")}))}))}));
        return Interpretation{"deflip", 1, {"x"}, {"y"}, f_true(), fxor(edge("x", "y"), plus)};
    }();
    return I;
}

Formula sep_tpt_sentence() {
    static Formula f = rewrite_through(deflip_nibble_interpretation(), phi_same_parity());
    return f;
}

const Interpretation* builtin_interpretation(const std::string& name) {
    if (name == "identity") return &identity_interpretation();
    if (name == "complement") return &complement_interpretation();
    if (name == "order-to-path") return &order_to_path_interpretation();
    if (name == "swimlane") return &swimlane_interpretation();
    if (name == "halfgraph") return &halfgraph_interpretation();
    if (name == "combined") return &combined_path_interpretation();
    if (name == "three-path") return &three_path_transduction().interp;
    if (name == "deflip") return &deflip_nibble_interpretation();
    for (auto f : Flavor::all())
        if (name == "hstar-" + f.name()) return &order_to_hstar_interpretation(f);
    return nullptr;
}

std::vector<std::string> builtin_interpretation_names() {
    std::vector<std::string> out{"identity", "complement", "order-to-path", "swimlane", "halfgraph",
                                 "combined", "three-path", "deflip"};
    for (auto f : Flavor::all()) out.push_back("hstar-" + f.name());
    return out;
}

std::vector<int> swimlane_core_subset(const PatternCoordinates& c) {
    if (c.kind != PatternKind::MPt || c.m < 5) throw GraphError("swimlane core needs a flipped 5P_t");
    if (c.t < 4) throw GraphError("swimlane core needs t >= 4");
    std::vector<int> out;
    for (int i = 1; i <= c.t; ++i) out.push_back(c.at(1, i));
    for (int i = 1; i <= c.t; ++i) {
        int p = i % 2 == 1 ? 2 : 4;
        out.push_back(c.at(p, i));
        out.push_back(c.at(p + 1, i));
    }
    return out;
}

std::vector<int> halfgraph_core_subset(const PatternCoordinates& c) {
    if (c.kind != PatternKind::HalfGraph || c.t < 4) throw GraphError("half-graph core needs H_{t+3}, t >= 1");
    std::vector<int> out;
    for (int i = 3; i <= c.t - 1; ++i) out.push_back(c.at(0, i));
    for (int j = 1; j <= c.t; ++j) out.push_back(c.at(1, j));
    return out;
}

std::vector<Bits> three_path_coloring(const PatternCoordinates& c) {
    if (c.kind != PatternKind::MPt || c.m < 3) throw GraphError("three-path colouring needs m >= 3");
    int n = (int)c.coord.size();
    std::vector<Bits> col(3, Bits(n));
    for (int p = 1; p <= 3; ++p)
        for (int j = 1; j <= c.t; ++j) col[p - 1].set(c.at(p, j));
    return col;
}

}  // namespace shrub
